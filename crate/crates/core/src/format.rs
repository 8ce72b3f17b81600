//! Versioned JSON files for fusion systems, modular data, invariant catalogs
//! and graphs. Readers reject files whose major version they do not know.

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::catalog::{graph_meta, Graph};
use crate::error::{Error, Result};
use crate::fusion::{BraidedSystem, FusionRules, FusionSystem};
use crate::invariant::{CouplingMatrix, IMatrix, InvariantRecord, Structure};
use crate::modular::{split_complex, ModularData};
use crate::twist::Twist;

pub const FORMAT_VERSION: &str = "1.0";
const MAJOR: u64 = 1;

fn check_version(version: &str) -> Result<()> {
    let major = version
        .split('.')
        .next()
        .and_then(|m| m.parse::<u64>().ok())
        .ok_or_else(|| Error::Format(format!("malformed version `{version}`")))?;
    if major != MAJOR {
        return Err(Error::Format(format!("unsupported major version {major} (expected {MAJOR})")));
    }
    Ok(())
}

fn matrix_rows(m: &IMatrix) -> Vec<Vec<i64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

fn rows_matrix(rows: &[Vec<i64>]) -> Result<IMatrix> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return Err(Error::Format("ragged matrix".into()));
    }
    Ok(IMatrix::from_fn(r, c, |i, j| rows[i][j]))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemFile {
    pub version: String,
    pub name: String,
    pub labels: Vec<String>,
    /// `[lambda, mu, rho, N]`, zero entries omitted
    pub fusion: Vec<[u32; 4]>,
    pub conjugation: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twists: Option<Vec<Twist>>,
    #[serde(rename = "S_re", default, skip_serializing_if = "Option::is_none")]
    pub s_re: Option<Vec<Vec<f64>>>,
    #[serde(rename = "S_im", default, skip_serializing_if = "Option::is_none")]
    pub s_im: Option<Vec<Vec<f64>>>,
}

impl SystemFile {
    pub fn from_system(sys: &BraidedSystem) -> Self {
        let rules = sys.fusion.rules();
        SystemFile {
            version: FORMAT_VERSION.into(),
            name: sys.name.clone(),
            labels: rules.names().to_vec(),
            fusion: rules.sparse(),
            conjugation: rules.conjugation().to_vec(),
            twists: Some(sys.twists.clone()),
            s_re: None,
            s_im: None,
        }
    }

    pub fn from_modular(md: &ModularData) -> Self {
        let mut f = Self::from_system(&md.system);
        let (re, im) = split_complex(&md.s);
        f.s_re = Some(re);
        f.s_im = Some(im);
        f
    }

    pub fn fusion_system(&self) -> Result<FusionSystem> {
        check_version(&self.version)?;
        let n = self.labels.len();
        let mut coeffs = vec![0u32; n * n * n];
        for &[a, b, c, v] in &self.fusion {
            let (a, b, c) = (a as usize, b as usize, c as usize);
            if a >= n || b >= n || c >= n {
                return Err(Error::Format(format!("fusion entry [{a},{b},{c}] out of range")));
            }
            coeffs[(a * n + b) * n + c] = v;
        }
        FusionSystem::new(FusionRules::new(self.labels.clone(), coeffs, self.conjugation.clone())?)
    }

    pub fn braided_system(&self) -> Result<BraidedSystem> {
        let fusion = self.fusion_system()?;
        let twists = self
            .twists
            .clone()
            .ok_or_else(|| Error::Format("system file has no twists".into()))?;
        BraidedSystem::new(self.name.clone(), fusion, twists)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphMetaFile {
    pub coxeter: usize,
    pub exponents: Vec<usize>,
    pub group_order: usize,
    pub level: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub version: String,
    pub name: String,
    pub affine: bool,
    pub adjacency: Vec<Vec<i64>>,
    /// index of `*`
    pub extension: Option<usize>,
    pub iota: usize,
    pub meta: GraphMetaFile,
}

impl GraphFile {
    pub fn from_graph(g: &Graph) -> Self {
        let m = graph_meta(g.dynkin);
        GraphFile {
            version: FORMAT_VERSION.into(),
            name: g.name.clone(),
            affine: g.affine,
            adjacency: matrix_rows(&g.adjacency),
            extension: g.extension,
            iota: g.iota,
            meta: GraphMetaFile {
                coxeter: m.coxeter,
                exponents: m.exponents,
                group_order: m.group_order,
                level: m.level,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogHeader {
    pub system: String,
    pub level: Option<usize>,
    pub tolerance: f64,
    pub tool_version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordFlags {
    pub symmetric: bool,
    pub permutation: bool,
    pub vacuum_symmetric: bool,
    pub self_conjugate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    TypeI { b: Vec<Vec<i64>> },
    Twist { parent: usize, b: Vec<Vec<i64>>, theta: Vec<usize> },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantEntry {
    pub index: usize,
    pub z: Vec<Vec<i64>>,
    pub flags: RecordFlags,
    pub structure: String,
    pub trace: i64,
    pub sum_of_squares: i64,
    pub witness: Witness,
}

impl InvariantEntry {
    pub fn from_record(r: &InvariantRecord) -> Self {
        let witness = match &r.structure {
            Structure::TypeI { b } => Witness::TypeI { b: matrix_rows(b) },
            Structure::TwistedCandidate { parent, b, theta } => Witness::Twist {
                parent: *parent,
                b: matrix_rows(b),
                theta: theta.clone(),
            },
            Structure::Unresolved => Witness::None,
        };
        InvariantEntry {
            index: r.index,
            z: r.matrix.rows(),
            flags: RecordFlags {
                symmetric: r.flags.symmetric,
                permutation: r.flags.permutation,
                vacuum_symmetric: r.flags.vacuum_symmetric,
                self_conjugate: r.flags.self_conjugate,
            },
            structure: r.structure.label().into(),
            trace: r.counts.trace,
            sum_of_squares: r.counts.sum_of_squares,
            witness,
        }
    }

    pub fn matrix(&self) -> Result<CouplingMatrix> {
        Ok(CouplingMatrix::new(rows_matrix(&self.z)?))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogFile {
    pub version: String,
    pub header: CatalogHeader,
    pub records: Vec<InvariantEntry>,
}

impl CatalogFile {
    pub fn new(header: CatalogHeader, records: &[InvariantRecord]) -> Self {
        CatalogFile {
            version: FORMAT_VERSION.into(),
            header,
            records: records.iter().map(InvariantEntry::from_record).collect(),
        }
    }

    pub fn matrices(&self) -> Result<Vec<CouplingMatrix>> {
        self.records.iter().map(InvariantEntry::matrix).collect()
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Format(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

trait Versioned {
    fn version(&self) -> &str;
}

impl Versioned for SystemFile {
    fn version(&self) -> &str {
        &self.version
    }
}
impl Versioned for GraphFile {
    fn version(&self) -> &str {
        &self.version
    }
}
impl Versioned for CatalogFile {
    fn version(&self) -> &str {
        &self.version
    }
}

fn parse<T: DeserializeOwned + Versioned>(text: &str) -> Result<T> {
    // peek at the version first so a future layout gives a version error,
    // not a field error
    let raw: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let v = raw
        .get("version")
        .and_then(|v| v.as_str())
        .ok_or_else(|| Error::Format("missing version field".into()))?;
    check_version(v)?;
    let out: T = serde_json::from_value(raw).map_err(|e| Error::Format(e.to_string()))?;
    check_version(out.version())?;
    Ok(out)
}

pub fn parse_system(text: &str) -> Result<SystemFile> {
    parse(text)
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    parse(text)
}

pub fn parse_catalog(text: &str) -> Result<CatalogFile> {
    parse(text)
}
