//! Finite fusion systems: labels, fusion coefficients, conjugation and the
//! Perron-Frobenius dimension data derived from them.

use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::twist::Twist;

/// Label 0 is always the identity sector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Label {
    pub index: usize,
    pub name: String,
}

/// Fusion coefficients without any derived data. Axioms are not assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRules {
    names: Vec<String>,
    /// dense `n^3` tensor, `coeffs[(a * n + b) * n + c] = N^c_{a,b}`
    coeffs: Vec<u32>,
    conjugation: Vec<usize>,
}

impl FusionRules {
    pub fn new(names: Vec<String>, coeffs: Vec<u32>, conjugation: Vec<usize>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Invalid("fusion rules need at least one label".into()));
        }
        if coeffs.len() != n * n * n {
            return Err(Error::Invalid(format!(
                "fusion tensor has {} entries, expected {}",
                coeffs.len(),
                n * n * n
            )));
        }
        if conjugation.len() != n || conjugation.iter().any(|&c| c >= n) {
            return Err(Error::Invalid("conjugation is not a map on the label set".into()));
        }
        Ok(FusionRules { names, coeffs, conjugation })
    }

    /// Builds rules from a closure `(a, b, c) -> N^c_{a,b}`.
    pub fn from_fn(
        names: Vec<String>,
        conjugation: Vec<usize>,
        f: impl Fn(usize, usize, usize) -> u32,
    ) -> Result<Self> {
        let n = names.len();
        let mut coeffs = vec![0; n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    coeffs[(a * n + b) * n + c] = f(a, b, c);
                }
            }
        }
        Self::new(names, coeffs, conjugation)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn labels(&self) -> Vec<Label> {
        self.names
            .iter()
            .enumerate()
            .map(|(index, name)| Label { index, name: name.clone() })
            .collect()
    }

    /// `N^c_{a,b}`
    #[inline]
    pub fn n(&self, a: usize, b: usize, c: usize) -> u32 {
        let n = self.rank();
        self.coeffs[(a * n + b) * n + c]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, value: u32) {
        let n = self.rank();
        self.coeffs[(a * n + b) * n + c] = value;
    }

    #[inline]
    pub fn conj(&self, a: usize) -> usize {
        self.conjugation[a]
    }

    pub fn conjugation(&self) -> &[usize] {
        &self.conjugation
    }

    /// `(N_a)_{b,c} = N^c_{a,b}`
    pub fn fusion_matrix(&self, a: usize) -> DMatrix<i64> {
        let n = self.rank();
        DMatrix::from_fn(n, n, |b, c| self.n(a, b, c) as i64)
    }

    /// Nonzero coefficients as `(a, b, c, N)` in lexicographic order.
    pub fn sparse(&self) -> Vec<[u32; 4]> {
        let n = self.rank();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = self.n(a, b, c);
                    if v != 0 {
                        out.push([a as u32, b as u32, c as u32, v]);
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    ConjugationInvolution,
    LeftUnit,
    RightUnit,
    Associativity,
    Commutativity,
    FrobeniusReciprocity,
    /// `N^0_{a,b} = delta_{b, conj(a)}`
    Conjugation,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::ConjugationInvolution => "conjugation is an involution fixing 0",
            Axiom::LeftUnit => "left unit N^c_{0,b} = delta_{b,c}",
            Axiom::RightUnit => "right unit N^c_{a,0} = delta_{a,c}",
            Axiom::Associativity => "associativity",
            Axiom::Commutativity => "commutativity N^c_{a,b} = N^c_{b,a}",
            Axiom::FrobeniusReciprocity => "Frobenius reciprocity",
            Axiom::Conjugation => "conjugation N^0_{a,b} = delta_{b,conj(a)}",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at {:?}", self.axiom, self.witness)
    }
}

/// Lists every axiom violation with witness indices; an empty list means the
/// rules define a (commutative) fusion ring.
pub fn verify_fusion_axioms(rules: &FusionRules) -> Vec<AxiomViolation> {
    let n = rules.rank();
    let mut out = Vec::new();
    let mut push = |axiom, witness: Vec<usize>| out.push(AxiomViolation { axiom, witness });

    if rules.conj(0) != 0 {
        push(Axiom::ConjugationInvolution, vec![0]);
    }
    for a in 0..n {
        if rules.conj(rules.conj(a)) != a {
            push(Axiom::ConjugationInvolution, vec![a]);
        }
    }
    for b in 0..n {
        for c in 0..n {
            let delta = u32::from(b == c);
            if rules.n(0, b, c) != delta {
                push(Axiom::LeftUnit, vec![b, c]);
            }
            if rules.n(b, 0, c) != delta {
                push(Axiom::RightUnit, vec![b, c]);
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let expected = u32::from(b == rules.conj(a));
            if rules.n(a, b, 0) != expected {
                push(Axiom::Conjugation, vec![a, b]);
            }
            for c in 0..n {
                if rules.n(a, b, c) != rules.n(b, a, c) {
                    push(Axiom::Commutativity, vec![a, b, c]);
                }
                let v = rules.n(a, b, c);
                let ab = rules.conj(a);
                let bb = rules.conj(b);
                if ab < n && bb < n && (v != rules.n(ab, c, b) || v != rules.n(c, bb, a)) {
                    push(Axiom::FrobeniusReciprocity, vec![a, b, c]);
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for f in 0..n {
                    let lhs: u64 = (0..n).map(|e| rules.n(a, b, e) as u64 * rules.n(e, c, f) as u64).sum();
                    let rhs: u64 = (0..n).map(|e| rules.n(b, c, e) as u64 * rules.n(a, e, f) as u64).sum();
                    if lhs != rhs {
                        push(Axiom::Associativity, vec![a, b, c, f]);
                    }
                }
            }
        }
    }
    out
}

pub const PF_TOLERANCE: f64 = 1e-13;
pub const PF_MAX_ITER: usize = 100_000;

/// Perron-Frobenius dimensions: the common positive eigenvector of all fusion
/// matrices, normalised so that `d_0 = 1`.
///
/// The iteration runs on `1 + sum_a N_a`, which is strictly positive for any
/// fusion ring; a zero entry there means the fusion graph is reducible.
pub fn quantum_dimensions(rules: &FusionRules) -> Result<Vec<f64>> {
    let n = rules.rank();
    let mut total = DMatrix::<f64>::identity(n, n);
    for a in 0..n {
        total += rules.fusion_matrix(a).map(|x| x as f64);
    }
    if let Some(((b, c), _)) = total.iter().enumerate().map(|(i, v)| ((i % n, i / n), v)).find(|(_, &v)| v == 0.0) {
        return Err(Error::DegenerateFusion(format!(
            "fusion graph is reducible: no label fuses {b} into {c}"
        )));
    }

    let mut v = DVector::<f64>::from_element(n, 1.0);
    let mut rayleigh = 0.0;
    let mut converged = false;
    for _ in 0..PF_MAX_ITER {
        let w = &total * &v;
        let next = w.dot(&v) / v.dot(&v);
        let norm = w.norm();
        v = w / norm;
        if (next - rayleigh).abs() <= PF_TOLERANCE * next.abs() {
            converged = true;
            break;
        }
        rayleigh = next;
    }
    if !converged {
        return Err(Error::DegenerateFusion("power iteration did not converge".into()));
    }
    // polish: a few extra sweeps once the eigenvalue has settled
    for _ in 0..50 {
        let w = &total * &v;
        v = &w / w.norm();
    }
    let d: Vec<f64> = v.iter().map(|x| x / v[0]).collect();

    for a in 0..n {
        for b in 0..n {
            let rhs: f64 = (0..n).map(|c| rules.n(a, b, c) as f64 * d[c]).sum();
            let lhs = d[a] * d[b];
            if (lhs - rhs).abs() > 1e-10 * (1.0 + lhs) {
                return Err(Error::DegenerateFusion(format!(
                    "dimension vector is not a character at ({a},{b}): {lhs} vs {rhs}"
                )));
            }
        }
    }
    Ok(d)
}

pub fn global_index(dims: &[f64]) -> f64 {
    dims.iter().map(|d| d * d).sum()
}

/// Validated fusion rules together with their dimension data. Immutable.
#[derive(Clone, Debug)]
pub struct FusionSystem {
    rules: FusionRules,
    dims: Vec<f64>,
    global_index: f64,
}

impl FusionSystem {
    pub fn new(rules: FusionRules) -> Result<Self> {
        let violations = verify_fusion_axioms(&rules);
        if let Some(v) = violations.first() {
            return Err(Error::Invalid(format!(
                "{} fusion axiom violation(s), first: {v}",
                violations.len()
            )));
        }
        let dims = quantum_dimensions(&rules)?;
        let global_index = global_index(&dims);
        Ok(FusionSystem { rules, dims, global_index })
    }

    pub fn rules(&self) -> &FusionRules {
        &self.rules
    }

    pub fn rank(&self) -> usize {
        self.rules.rank()
    }

    pub fn dims(&self) -> &[f64] {
        &self.dims
    }

    pub fn dim(&self, a: usize) -> f64 {
        self.dims[a]
    }

    pub fn global_index(&self) -> f64 {
        self.global_index
    }

    #[inline]
    pub fn n(&self, a: usize, b: usize, c: usize) -> u32 {
        self.rules.n(a, b, c)
    }

    #[inline]
    pub fn conj(&self, a: usize) -> usize {
        self.rules.conj(a)
    }

    pub fn names(&self) -> &[String] {
        self.rules.names()
    }

    /// Conjugation as a permutation matrix, `C_{a,b} = delta_{b, conj(a)}`.
    pub fn conjugation_matrix(&self) -> DMatrix<i64> {
        let n = self.rank();
        DMatrix::from_fn(n, n, |a, b| i64::from(b == self.conj(a)))
    }
}

/// Fusion system with a statistics phase per label.
#[derive(Clone, Debug)]
pub struct BraidedSystem {
    pub name: String,
    pub fusion: FusionSystem,
    pub twists: Vec<Twist>,
}

impl BraidedSystem {
    pub fn new(name: impl Into<String>, fusion: FusionSystem, twists: Vec<Twist>) -> Result<Self> {
        if twists.len() != fusion.rank() {
            return Err(Error::Invalid(format!(
                "{} twists for {} labels",
                twists.len(),
                fusion.rank()
            )));
        }
        if !twists[0].is_zero() {
            return Err(Error::Invalid("the identity sector must have twist 0".into()));
        }
        Ok(BraidedSystem { name: name.into(), fusion, twists })
    }

    pub fn rank(&self) -> usize {
        self.fusion.rank()
    }

    /// Tensor product of two systems: label `(a, b)` has index `a * n2 + b`,
    /// fusion multiplies coefficients and twists add.
    pub fn tensor(&self, other: &BraidedSystem) -> Result<BraidedSystem> {
        let (r1, r2) = (self.fusion.rules(), other.fusion.rules());
        let (n1, n2) = (r1.rank(), r2.rank());
        let mut names = Vec::with_capacity(n1 * n2);
        let mut conj = Vec::with_capacity(n1 * n2);
        let mut twists = Vec::with_capacity(n1 * n2);
        for a in 0..n1 {
            for b in 0..n2 {
                names.push(format!("({},{})", r1.names()[a], r2.names()[b]));
                conj.push(r1.conj(a) * n2 + r2.conj(b));
                twists.push(self.twists[a] + other.twists[b]);
            }
        }
        let rules = FusionRules::from_fn(names, conj, |x, y, z| {
            r1.n(x / n2, y / n2, z / n2) * r2.n(x % n2, y % n2, z % n2)
        })?;
        BraidedSystem::new(
            format!("{}x{}", self.name, other.name),
            FusionSystem::new(rules)?,
            twists,
        )
    }
}
