//! Reference systems and graphs.
//!
//! Vertex order for the ADE graphs is fixed:
//!
//! * `A_l`: the path `0 - 1 - ... - (l-1)`.
//! * `D_l`: the path `0 - 1 - ... - (l-2)` plus vertex `l-1` attached to `l-3`.
//! * `E_l` (`l = 6, 7, 8`): the path `0 - 1 - ... - (l-2)` plus vertex `l-1`
//!   attached to vertex 2.
//!
//! The affine graph appends the extension vertex `*` as the last index. It is
//! joined to vertex 1 for `D`, to vertex 5 for `E6`, to vertex 0 for `E7`, to
//! vertex 6 for `E8`, and to both ends of the path for `A_l` (a doubled edge
//! to the single vertex for `A_1`).

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::fusion::{BraidedSystem, FusionRules, FusionSystem};
use crate::twist::Twist;

/// SU(2) at level `k`: labels `0..=k` (twice the spin), truncated Clebsch-Gordan
/// fusion and twists `j(j+2) / (4(k+2))`.
pub fn gen_su2(k: usize) -> Result<BraidedSystem> {
    if k == 0 {
        return Err(Error::Invalid("SU(2) level must be at least 1".into()));
    }
    let n = k + 1;
    let n1 = path_adjacency(n);
    // Chebyshev recursion N_{j+1} = N_1 N_j - N_{j-1}
    let mut mats: Vec<DMatrix<i64>> = vec![DMatrix::identity(n, n), n1.clone()];
    for j in 1..k {
        let next = &n1 * &mats[j] - &mats[j - 1];
        mats.push(next);
    }
    let names = (0..n).map(|j| j.to_string()).collect();
    let rules = FusionRules::from_fn(names, (0..n).collect(), |a, b, c| {
        let v = mats[a][(b, c)];
        debug_assert!(v >= 0);
        v as u32
    })?;
    let twists = (0..n as i64)
        .map(|j| Twist::new(j * (j + 2), 4 * (k as i64 + 2)))
        .collect::<Result<Vec<_>>>()?;
    BraidedSystem::new(format!("su2_{k}"), FusionSystem::new(rules)?, twists)
}

/// Cyclic group `Z_n` with the given twists (`twists[0]` must be 0).
pub fn gen_cyclic(n: usize, twists: Vec<Twist>) -> Result<BraidedSystem> {
    if n == 0 {
        return Err(Error::Invalid("cyclic order must be at least 1".into()));
    }
    let rules = FusionRules::from_fn(
        (0..n).map(|a| a.to_string()).collect(),
        (0..n).map(|a| (n - a) % n).collect(),
        |a, b, c| u32::from((a + b) % n == c),
    )?;
    BraidedSystem::new(format!("Z{n}"), FusionSystem::new(rules)?, twists)
}

/// `Z_n` with quadratic twists `t_a = num * a^2 / den`.
pub fn gen_cyclic_quadratic(n: usize, num: i64, den: i64) -> Result<BraidedSystem> {
    let twists = (0..n as i64)
        .map(|a| Twist::new(num * a * a, den))
        .collect::<Result<Vec<_>>>()?;
    for a in 0..n {
        let b = (n - a) % n;
        if twists[a] != twists[b] {
            return Err(Error::Invalid(format!(
                "twist {num}a^2/{den} is not well defined on Z_{n}"
            )));
        }
    }
    if n > 0 {
        // t_{a+n} = t_a
        let shift = Twist::new(num * (n as i64) * (n as i64), den)?;
        let cross = Twist::new(2 * num * (n as i64), den)?;
        if !shift.is_zero() || !cross.is_zero() {
            return Err(Error::Invalid(format!(
                "twist {num}a^2/{den} is not well defined on Z_{n}"
            )));
        }
    }
    let mut sys = gen_cyclic(n, twists)?;
    sys.name = format!("Z{n}[{num}/{den}]");
    Ok(sys)
}

fn path_adjacency(n: usize) -> DMatrix<i64> {
    DMatrix::from_fn(n, n, |i, j| i64::from(i.abs_diff(j) == 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dynkin {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl Dynkin {
    pub fn rank(&self) -> usize {
        match *self {
            Dynkin::A(l) | Dynkin::D(l) => l,
            Dynkin::E6 => 6,
            Dynkin::E7 => 7,
            Dynkin::E8 => 8,
        }
    }

    pub fn coxeter_number(&self) -> usize {
        match *self {
            Dynkin::A(l) => l + 1,
            Dynkin::D(l) => 2 * l - 2,
            Dynkin::E6 => 12,
            Dynkin::E7 => 18,
            Dynkin::E8 => 30,
        }
    }

    pub fn exponents(&self) -> Vec<usize> {
        match *self {
            Dynkin::A(l) => (1..=l).collect(),
            Dynkin::D(l) => {
                let mut e: Vec<usize> = (0..l - 1).map(|i| 2 * i + 1).collect();
                e.push(l - 1);
                e.sort_unstable();
                e
            }
            Dynkin::E6 => vec![1, 4, 5, 7, 8, 11],
            Dynkin::E7 => vec![1, 5, 7, 9, 11, 13, 17],
            Dynkin::E8 => vec![1, 7, 11, 13, 17, 19, 23, 29],
        }
    }

    /// Order of the finite subgroup of SU(2) attached by the McKay correspondence.
    pub fn group_order(&self) -> usize {
        match *self {
            Dynkin::A(l) => l + 1,
            Dynkin::D(l) => 4 * l - 8,
            Dynkin::E6 => 24,
            Dynkin::E7 => 48,
            Dynkin::E8 => 120,
        }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let l = self.rank();
        match *self {
            Dynkin::A(_) => (1..l).map(|i| (i - 1, i)).collect(),
            Dynkin::D(_) => {
                let mut e: Vec<_> = (1..l - 1).map(|i| (i - 1, i)).collect();
                e.push((l - 3, l - 1));
                e
            }
            Dynkin::E6 | Dynkin::E7 | Dynkin::E8 => {
                let mut e: Vec<_> = (1..l - 1).map(|i| (i - 1, i)).collect();
                e.push((2, l - 1));
                e
            }
        }
    }

    /// Ordinary vertex joined to `*` in the affine extension (the iota-vertex).
    pub fn iota_vertex(&self) -> usize {
        match *self {
            Dynkin::A(_) => 0,
            Dynkin::D(_) => 1,
            Dynkin::E6 => 5,
            Dynkin::E7 => 0,
            Dynkin::E8 => 6,
        }
    }

    /// Every graph the catalog knows with rank up to `max_rank` for the infinite series.
    pub fn all_up_to(max_rank: usize) -> Vec<Dynkin> {
        let mut v: Vec<Dynkin> = (1..=max_rank).map(Dynkin::A).collect();
        v.extend((4..=max_rank).map(Dynkin::D));
        v.extend([Dynkin::E6, Dynkin::E7, Dynkin::E8]);
        v
    }
}

impl fmt::Display for Dynkin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dynkin::A(l) => write!(f, "A{l}"),
            Dynkin::D(l) => write!(f, "D{l}"),
            Dynkin::E6 => f.write_str("E6"),
            Dynkin::E7 => f.write_str("E7"),
            Dynkin::E8 => f.write_str("E8"),
        }
    }
}

impl FromStr for Dynkin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase().replace('_', "");
        let bad = || Error::UnknownGraph(s.to_string());
        let (head, tail) = t.split_at(t.chars().next().map(|c| c.len_utf8()).ok_or_else(bad)?);
        let l: usize = tail.parse().map_err(|_| bad())?;
        match (head, l) {
            ("A", l) if l >= 1 => Ok(Dynkin::A(l)),
            ("D", l) if l >= 4 => Ok(Dynkin::D(l)),
            ("E", 6) => Ok(Dynkin::E6),
            ("E", 7) => Ok(Dynkin::E7),
            ("E", 8) => Ok(Dynkin::E8),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub name: String,
    pub dynkin: Dynkin,
    pub affine: bool,
    pub adjacency: DMatrix<i64>,
    /// index of `*` (affine graphs only, always the last vertex)
    pub extension: Option<usize>,
    /// ordinary vertex adjacent to `*`
    pub iota: usize,
}

impl Graph {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.nrows()
    }

    /// Edge count with multiplicity.
    pub fn edge_count(&self) -> i64 {
        let n = self.vertex_count();
        let mut e = 0;
        for i in 0..n {
            for j in i + 1..n {
                e += self.adjacency[(i, j)];
            }
        }
        e
    }
}

pub fn ade_graph(dynkin: Dynkin) -> Graph {
    let l = dynkin.rank();
    let mut adj = DMatrix::<i64>::zeros(l, l);
    for (i, j) in dynkin.edges() {
        adj[(i, j)] = 1;
        adj[(j, i)] = 1;
    }
    Graph {
        name: dynkin.to_string(),
        dynkin,
        affine: false,
        adjacency: adj,
        extension: None,
        iota: dynkin.iota_vertex(),
    }
}

pub fn affine_ade(dynkin: Dynkin) -> Graph {
    let ord = ade_graph(dynkin);
    let l = ord.vertex_count();
    let star = l;
    let mut adj = DMatrix::<i64>::zeros(l + 1, l + 1);
    adj.view_mut((0, 0), (l, l)).copy_from(&ord.adjacency);
    match dynkin {
        Dynkin::A(1) => {
            adj[(0, star)] = 2;
            adj[(star, 0)] = 2;
        }
        Dynkin::A(_) => {
            for v in [0, l - 1] {
                adj[(v, star)] = 1;
                adj[(star, v)] = 1;
            }
        }
        _ => {
            let v = dynkin.iota_vertex();
            adj[(v, star)] = 1;
            adj[(star, v)] = 1;
        }
    }
    Graph {
        name: format!("{dynkin}~"),
        dynkin,
        affine: true,
        adjacency: adj,
        extension: Some(star),
        iota: dynkin.iota_vertex(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMeta {
    pub coxeter: usize,
    pub exponents: Vec<usize>,
    pub group_order: usize,
    pub level: usize,
}

pub fn graph_meta(dynkin: Dynkin) -> GraphMeta {
    let h = dynkin.coxeter_number();
    GraphMeta {
        coxeter: h,
        exponents: dynkin.exponents(),
        group_order: dynkin.group_order(),
        level: h - 2,
    }
}

/// Names accepted by `catalog list`.
pub fn catalog_listing() -> Vec<String> {
    let mut out = vec![
        "system su2 --level K          SU(2)_K, labels 0..K, twists j(j+2)/(4(K+2))".to_string(),
        "system cyclic:N:P/Q           Z_N with twists P a^2 / Q".to_string(),
    ];
    for g in Dynkin::all_up_to(8) {
        let m = graph_meta(g);
        out.push(format!(
            "graph  {:<4} h = {:<3} #G = {:<4} exponents {:?}",
            g.to_string(),
            m.coxeter,
            m.group_order,
            m.exponents
        ));
    }
    out.push("graph  A<l> (l >= 1) and D<l> (l >= 4) at any rank".into());
    out
}
