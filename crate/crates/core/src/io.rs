//! JSON and LaTeX serialization of representations.
//!
//! The JSON layout is stable: keys appear in a fixed order, vertices and
//! arrows in quiver order, and every rational is written as `p/q` with
//! `q > 0` and `gcd(p, q) = 1`, so equal inputs give byte-identical files.

use std::fmt::Write as _;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::builder::Method;
use crate::error::{Error, Result};
use crate::field::Rational;
use crate::grading::WeightSpec;
use crate::matrix::Matrix;
use crate::quiver::{CanonicalQuiver, Representation};
use crate::sheaf::CokernelDatum;

#[derive(Serialize, Deserialize)]
struct ArrowRecord {
    id: String,
    from: String,
    to: String,
}

/// The cokernel datum a file was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumRecord {
    pub y: String,
    pub arms: Vec<usize>,
    pub powers: Vec<i64>,
    pub mu: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
}

impl DatumRecord {
    pub fn from_cokernel(c: &CokernelDatum, method: Option<Method>) -> Self {
        DatumRecord {
            y: c.y().to_string(),
            arms: c.arms().to_vec(),
            powers: c.powers().to_vec(),
            mu: c.mu().iter().map(Rational::to_canonical).collect(),
            method: method.map(|m| m.to_string()),
        }
    }

    pub fn for_index_set(y: &crate::grading::GroupElement, arms: &[usize], powers: &[i64], mu: &[Rational]) -> Self {
        DatumRecord {
            y: y.to_string(),
            arms: arms.to_vec(),
            powers: powers.to_vec(),
            mu: mu.iter().map(Rational::to_canonical).collect(),
            method: None,
        }
    }

    /// The three-arm datum, when the record has one.
    pub fn to_cokernel(&self, spec: &WeightSpec) -> Result<CokernelDatum> {
        let y = spec.parse_element(&self.y)?;
        let arms: [usize; 3] =
            self.arms.clone().try_into().map_err(|_| Error::LengthMismatch { expected: 3, got: self.arms.len() })?;
        let powers: [i64; 3] = self
            .powers
            .clone()
            .try_into()
            .map_err(|_| Error::LengthMismatch { expected: 3, got: self.powers.len() })?;
        let mu = self.mu.iter().map(|s| s.parse()).collect::<Result<Vec<Rational>>>()?;
        let mu: [Rational; 3] = mu.try_into().map_err(|_| Error::LengthMismatch { expected: 3, got: self.mu.len() })?;
        CokernelDatum::with_mu(y, arms, powers, mu)
    }
}

#[derive(Serialize, Deserialize)]
struct RepresentationFile {
    weights: Vec<i64>,
    lambdas: Vec<String>,
    vertices: Vec<String>,
    dims: IndexMap<String, usize>,
    arrows: Vec<ArrowRecord>,
    matrices: IndexMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    datum: Option<DatumRecord>,
}

pub fn to_json(rep: &Representation, datum: Option<&DatumRecord>) -> String {
    let q = rep.quiver();
    let spec = q.spec();
    let file = RepresentationFile {
        weights: spec.weights().to_vec(),
        lambdas: spec.lambdas().iter().map(Rational::to_canonical).collect(),
        vertices: q.vertices().iter().map(|v| v.id()).collect(),
        dims: q.vertices().iter().zip(rep.dim_vector()).map(|(v, &d)| (v.id(), d)).collect(),
        arrows: q.arrows().iter().map(|a| ArrowRecord { id: a.id(), from: a.source.id(), to: a.target.id() }).collect(),
        matrices: q
            .arrows()
            .iter()
            .zip(rep.matrices())
            .map(|(a, m)| (a.id(), m.entries().iter().map(Rational::to_canonical).collect()))
            .collect(),
        datum: datum.cloned(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("plain data serializes");
    s.push('\n');
    s
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Reads a representation file. Shapes are checked against the canonical
/// quiver; relations are left to [`Representation::validate`].
pub fn from_json(s: &str) -> Result<(Representation, Option<DatumRecord>)> {
    let file: RepresentationFile = serde_json::from_str(s).map_err(|e| parse_err(e.to_string()))?;
    let lambdas = file.lambdas.iter().map(|l| l.parse()).collect::<Result<Vec<Rational>>>()?;
    let spec = WeightSpec::new(file.weights, Some(lambdas))?;
    let quiver = Arc::new(CanonicalQuiver::new(&spec));

    let ids: Vec<String> = quiver.vertices().iter().map(|v| v.id()).collect();
    if file.vertices != ids {
        return Err(parse_err(format!("vertex list {:?} does not match the quiver {:?}", file.vertices, ids)));
    }
    for a in quiver.arrows() {
        if !file.arrows.iter().any(|r| r.id == a.id() && r.from == a.source.id() && r.to == a.target.id()) {
            return Err(parse_err(format!("arrow {a} missing or misdirected")));
        }
    }
    if file.arrows.len() != quiver.arrows().len() {
        return Err(parse_err(format!("expected {} arrows, got {}", quiver.arrows().len(), file.arrows.len())));
    }
    let dims = ids
        .iter()
        .map(|id| file.dims.get(id).copied().ok_or_else(|| parse_err(format!("no dimension for vertex {id}"))))
        .collect::<Result<Vec<usize>>>()?;
    let mut mats = Vec::with_capacity(quiver.arrows().len());
    for a in quiver.arrows() {
        let (rows, cols) = (dims[quiver.index_of(a.source)], dims[quiver.index_of(a.target)]);
        let entries = file.matrices.get(&a.id()).ok_or_else(|| parse_err(format!("no matrix for arrow {a}")))?;
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch { arrow: a.id(), expected: (rows, cols), got: (entries.len(), 1) });
        }
        let data = entries.iter().map(|e| e.parse()).collect::<Result<Vec<Rational>>>()?;
        mats.push(Matrix::from_vec(rows, cols, data));
    }
    Ok((Representation::new(quiver, dims, mats)?, file.datum))
}

fn latex_entry(v: &Rational, spec: &WeightSpec) -> String {
    let plain = v.is_zero() || v.is_one() || (-v).is_one();
    if !plain {
        for (k, l) in spec.lambdas().iter().enumerate() {
            if v == l {
                return format!("\\lambda_{{{}}}", k + 3);
            }
            if *v == -l {
                return format!("-\\lambda_{{{}}}", k + 3);
            }
        }
    }
    if v.is_integer() {
        return v.to_string();
    }
    let s = v.to_canonical();
    let (num, den) = s.split_once('/').expect("canonical form has a slash");
    match num.strip_prefix('-') {
        Some(n) => format!("-\\frac{{{n}}}{{{den}}}"),
        None => format!("\\frac{{{num}}}{{{den}}}"),
    }
}

/// One `pmatrix` per arrow with a nonempty matrix. Entries equal to `±λ_i`
/// other than `±1` are written symbolically.
pub fn to_latex(rep: &Representation) -> String {
    let q = rep.quiver();
    let spec = q.spec();
    let mut out = String::new();
    let weights: Vec<String> = spec.weights().iter().map(i64::to_string).collect();
    let _ = writeln!(out, "% weights ({})", weights.join(","));
    let dims: Vec<String> = q.vertices().iter().zip(rep.dim_vector()).map(|(v, d)| format!("{v}:{d}")).collect();
    let _ = writeln!(out, "% dims {}", dims.join(" "));
    for (a, m) in q.arrows().iter().zip(rep.matrices()) {
        if m.rows() == 0 || m.cols() == 0 {
            let _ = writeln!(out, "% {a}: {}x{} (empty)", m.rows(), m.cols());
            continue;
        }
        let _ = writeln!(out, "% {a}: {} <- {}", a.source, a.target);
        let _ = writeln!(out, "\\[ M_{{\\alpha^{{({})}}_{{{}}}}} = \\begin{{pmatrix}}", a.arm, a.step);
        for r in 0..m.rows() {
            let row: Vec<String> = m.row(r).iter().map(|v| latex_entry(v, spec)).collect();
            let sep = if r + 1 < m.rows() { " \\\\" } else { "" };
            let _ = writeln!(out, "  {}{sep}", row.join(" & "));
        }
        let _ = writeln!(out, "\\end{{pmatrix}} \\]");
    }
    out
}
