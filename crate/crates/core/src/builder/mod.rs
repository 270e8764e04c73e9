//! Construction of extension modules: line bundle modules, the injections
//! `[μ_i x_i^{b_i}]`, their cokernels, case classification and reduction, and
//! the closed forms.

pub mod blocks;
mod closed;
mod cokernel;
mod line;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub use closed::{closed_form_a, closed_form_b3};
pub use cokernel::{cokernel, verify_c_conditions, CConditions};
pub use line::{line_bundle_rep, line_dims, monomial_rep, power_map, stacked_power_map, to_monomial};

use crate::error::{Error, Result};
use crate::field::Rational;
use crate::grading::GroupElement;
use crate::quiver::{is_exceptional, CanonicalQuiver, Morphism, Representation};
use crate::sheaf::CokernelDatum;

/// Overflow pattern of `a_i + b_i ≥ p_i` over `I = {i1 < i2 < i3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    A,
    B1,
    B2,
    B3,
    C1,
    C2,
    C3,
    D,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 8] = [
        CaseLabel::A,
        CaseLabel::B1,
        CaseLabel::B2,
        CaseLabel::B3,
        CaseLabel::C1,
        CaseLabel::C2,
        CaseLabel::C3,
        CaseLabel::D,
    ];

    fn from_overflow(o: [bool; 3]) -> Self {
        match o {
            [false, false, false] => CaseLabel::A,
            [true, false, false] => CaseLabel::B1,
            [false, true, false] => CaseLabel::B2,
            [false, false, true] => CaseLabel::B3,
            [false, true, true] => CaseLabel::C1,
            [true, false, true] => CaseLabel::C2,
            [true, true, false] => CaseLabel::C3,
            [true, true, true] => CaseLabel::D,
        }
    }

    /// Positions in `I` whose powers are replaced by `p_i − b_i` in one
    /// reduction step; `None` on the terminal cases.
    fn flipped(self) -> Option<[usize; 2]> {
        match self {
            CaseLabel::A | CaseLabel::B3 => None,
            CaseLabel::B1 | CaseLabel::C2 | CaseLabel::D => Some([0, 2]),
            CaseLabel::B2 | CaseLabel::C1 => Some([1, 2]),
            CaseLabel::C3 => Some([0, 1]),
        }
    }

    pub fn is_terminal(self) -> bool {
        self.flipped().is_none()
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn check_effective(y: &GroupElement) -> Result<()> {
    if y.is_effective() {
        Ok(())
    } else {
        Err(Error::NotEffective(y.to_string()))
    }
}

pub fn classify(c: &CokernelDatum) -> Result<CaseLabel> {
    let y = c.y();
    check_effective(y)?;
    let arms = c.arms();
    let powers = c.powers();
    let o = [0, 1, 2].map(|k| y.coeff(arms[k]) + powers[k] >= y.weights()[arms[k] - 1]);
    Ok(CaseLabel::from_overflow(o))
}

const REDUCTION_BOUND: usize = 3;

/// Rewrites the datum into case A or B3 without changing the cokernel up to
/// isomorphism. Returns the final datum and the labels passed through.
pub fn reduce_with_trace(c: &CokernelDatum) -> Result<(CokernelDatum, Vec<CaseLabel>)> {
    let mut cur = c.clone();
    let mut trace = vec![classify(&cur)?];
    loop {
        let label = *trace.last().unwrap();
        let Some(flip) = label.flipped() else {
            return Ok((cur, trace));
        };
        if trace.len() > REDUCTION_BOUND {
            return Err(Error::Internal(format!("reduction of {c} did not terminate: {trace:?}")));
        }
        let arms = cur.arms();
        let mut powers = cur.powers();
        let mut y = cur.y().plus_vc(-1);
        for k in flip {
            y = y.plus_x(arms[k], powers[k]);
            powers[k] = cur.y().weights()[arms[k] - 1] - powers[k];
        }
        cur = CokernelDatum::with_mu(y, arms, powers, cur.mu().clone())?;
        trace.push(classify(&cur)?);
    }
}

pub fn reduce(c: &CokernelDatum) -> Result<CokernelDatum> {
    Ok(reduce_with_trace(c)?.0)
}

/// Dimensions of the cokernel of `O(y) → ⊕_k O(y + b_k x_{j_k})`:
/// `Σ_k dim S_{y + b_k x_{j_k} − v} − dim S_{y − v}` at every vertex.
pub fn predicted_dims(quiver: &CanonicalQuiver, y: &GroupElement, arms: &[usize], powers: &[i64]) -> Vec<usize> {
    let base = line_dims(quiver, y);
    let mut dims = vec![0usize; base.len()];
    for (&arm, &b) in arms.iter().zip(powers) {
        for (d, e) in dims.iter_mut().zip(line_dims(quiver, &y.plus_x(arm, b))) {
            *d += e;
        }
    }
    dims.iter().zip(base).map(|(d, b)| d - b).collect()
}

/// Which construction [`build`] uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Reduce to case A or B3 and write down the closed form.
    Closed,
    /// Take the cokernel of the injection.
    Cokernel,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Method::Closed),
            "cokernel" => Ok(Method::Cokernel),
            other => Err(Error::Parse(format!("unknown method {other:?}, expected closed or cokernel"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Closed => "closed",
            Method::Cokernel => "cokernel",
        })
    }
}

/// The injection of a rank-two cokernel datum with its source and target.
pub fn assemble_map(
    quiver: &Arc<CanonicalQuiver>,
    c: &CokernelDatum,
) -> Result<(Representation, Representation, Morphism)> {
    check_effective(c.y())?;
    stacked_power_map(quiver, c.y(), &c.arms(), &c.powers(), c.mu())
}

pub fn build(quiver: &Arc<CanonicalQuiver>, c: &CokernelDatum, method: Method) -> Result<Representation> {
    if c.y().weights() != quiver.spec().weights() {
        return Err(Error::SpecMismatch);
    }
    match method {
        Method::Closed => {
            let r = reduce(c)?;
            match classify(&r)? {
                CaseLabel::A => closed_form_a(quiver, &r),
                CaseLabel::B3 => closed_form_b3(quiver, &r),
                other => Err(Error::Internal(format!("reduction ended in case {other}"))),
            }
        }
        Method::Cokernel => {
            let (_, target, f) = assemble_map(quiver, c)?;
            Ok(cokernel(&f, &target)?.0)
        }
    }
}

/// Default scalars `(1, …, 1, −1)` for an index set of size `len`.
pub fn default_mu(len: usize) -> Vec<Rational> {
    let mut mu = vec![Rational::one(); len];
    if let Some(last) = mu.last_mut() {
        *last = -Rational::one();
    }
    mu
}

/// The cokernel of `[μ_j x_j^{b_j}]_{j∈J}: O(y) → ⊕_J O(y + b_j x_j)`, an
/// exceptional module of rank `|J| − 1` once the cokernel conditions hold.
pub fn higher_rank(
    quiver: &Arc<CanonicalQuiver>,
    y: &GroupElement,
    arms: &[usize],
    powers: &[i64],
    mu: Option<&[Rational]>,
) -> Result<Representation> {
    let t = quiver.spec().t();
    if arms.len() < 2 || arms.len() > t {
        return Err(Error::InvalidDatum(format!("index set of size {} outside 2..={t}", arms.len())));
    }
    if !arms.windows(2).all(|w| w[0] < w[1]) || arms[0] < 1 || arms[arms.len() - 1] > t {
        return Err(Error::InvalidDatum(format!("arms {arms:?} are not strictly ascending in 1..={t}")));
    }
    if powers.len() != arms.len() {
        return Err(Error::LengthMismatch { expected: arms.len(), got: powers.len() });
    }
    let mu = match mu {
        Some(m) if m.len() != arms.len() => return Err(Error::LengthMismatch { expected: arms.len(), got: m.len() }),
        Some(m) if m.iter().any(Rational::is_zero) => {
            return Err(Error::InvalidDatum("scalars μ must be nonzero".into()))
        }
        Some(m) => m.to_vec(),
        None => default_mu(arms.len()),
    };
    check_effective(y)?;
    let (source, target, f) = stacked_power_map(quiver, y, arms, powers, &mu)?;
    let conditions = verify_c_conditions(&f, &source, &target)?;
    if !conditions.all() {
        return Err(Error::ConditionsFailed(conditions.failed().join(", ")));
    }
    let (e, _) = cokernel(&f, &target)?;
    if e.rank() != arms.len() as i64 - 1 {
        return Err(Error::Internal(format!("cokernel has rank {}, expected {}", e.rank(), arms.len() - 1)));
    }
    if !is_exceptional(&e) {
        return Err(Error::Internal("cokernel is not exceptional".into()));
    }
    Ok(e)
}
