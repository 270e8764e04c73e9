//! Hom/Ext calculus for line bundles and the data describing extension
//! bundles: validation, projective covers and injective hulls, and the
//! conversions between extension data and cokernel data.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Rational;
use crate::grading::{GroupElement, WeightSpec};

/// The line bundle `O(det)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LineBundle {
    pub det: GroupElement,
}

/// `dim Hom(O(x), O(y)) = dim S_{y−x}`.
pub fn hom_dim(x: &GroupElement, y: &GroupElement) -> Result<usize> {
    Ok(y.try_sub(x)?.graded_dim())
}

/// `dim Ext¹(O(x), O(y)) = dim S_{x+vw−y}` by Serre duality.
pub fn ext_dim(x: &GroupElement, y: &GroupElement) -> Result<usize> {
    Ok(x.vw().try_sub(y)?.graded_dim())
}

/// Whether the module attached to `L` lies in mod+ (iff `det L ≥ 0`).
pub fn is_positive_module(l: &LineBundle) -> bool {
    l.det.is_effective()
}

/// A pair `(L, x)` whose extension bundle is exceptional: `x` has
/// vc-coefficient 0, `0 ≤ x ≤ vdom`, and exactly `t − 3` coefficients are
/// maximal. The three remaining arms form the index set `I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionDatum {
    base: GroupElement,
    x: GroupElement,
    arms: [usize; 3],
}

impl ExtensionDatum {
    pub fn base(&self) -> &GroupElement {
        &self.base
    }

    pub fn x(&self) -> &GroupElement {
        &self.x
    }

    /// Index set `I`, ascending.
    pub fn arms(&self) -> [usize; 3] {
        self.arms
    }

    /// Coefficient `l_i` of `x`.
    pub fn l(&self, arm: usize) -> i64 {
        self.x.coeff(arm)
    }

    fn check_arm(&self, arm: usize) -> Result<()> {
        if self.arms.contains(&arm) {
            Ok(())
        } else {
            Err(Error::IndexNotInI(arm))
        }
    }
}

impl fmt::Display for ExtensionDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(L = O({}), x = {})", self.base, self.x)
    }
}

pub fn validate_extension_datum(base: &GroupElement, x: &GroupElement) -> Result<ExtensionDatum> {
    if base.weights() != x.weights() {
        return Err(Error::SpecMismatch);
    }
    if x.a() != 0 {
        return Err(Error::NotExtensionDatum(format!("x = {x} has vc-coefficient {}, not 0", x.a())));
    }
    let bound = x.negate().vdom();
    if !bound.is_effective() {
        return Err(Error::NotExtensionDatum(format!("x = {x} is not below vdom")));
    }
    let t = x.t();
    let maxed: Vec<usize> = (1..=t).filter(|&i| x.coeff(i) == x.weights()[i - 1] - 1).collect();
    if maxed.len() != t - 3 {
        return Err(Error::NotExtensionDatum(format!(
            "x = {x} has {} maximal coefficients, expected {}",
            maxed.len(),
            t - 3
        )));
    }
    let rest: Vec<usize> = (1..=t).filter(|i| !maxed.contains(i)).collect();
    Ok(ExtensionDatum { base: base.clone(), x: x.clone(), arms: [rest[0], rest[1], rest[2]] })
}

/// Checks that `(L(x), L(vw))` is an orthogonal exceptional pair with
/// one-dimensional `Ext(L(x), L(vw))`, for arbitrary `x`.
pub fn exceptional_pair_holds(base: &GroupElement, x: &GroupElement) -> bool {
    let lx = base + x;
    let lw = base.vw();
    hom_dim(&lx, &lw) == Ok(0) && hom_dim(&lw, &lx) == Ok(0) && ext_dim(&lx, &lw) == Ok(1) && ext_dim(&lw, &lx) == Ok(0)
}

pub fn check_exceptional_pair(d: &ExtensionDatum) -> bool {
    exceptional_pair_holds(&d.base, &d.x)
}

/// Determinants of the line bundle summands of the projective cover:
/// `L(vw)` first, then `L(x − (1+l_j)x_j)` for `j ∈ I` ascending.
pub fn projective_cover_summands(d: &ExtensionDatum) -> Vec<GroupElement> {
    let lx = &d.base + &d.x;
    let mut out = vec![d.base.vw()];
    out.extend(d.arms.iter().map(|&j| lx.plus_x(j, -(1 + d.l(j)))));
    out
}

/// Determinants of the injective hull summands: `L(x)` first, then
/// `L((1+l_j)x_j + vw)` for `j ∈ I` ascending.
pub fn injective_hull_summands(d: &ExtensionDatum) -> Vec<GroupElement> {
    let lw = d.base.vw();
    let mut out = vec![&d.base + &d.x];
    out.extend(d.arms.iter().map(|&j| lw.plus_x(j, 1 + d.l(j))));
    out
}

/// The alternative datum `(L(x − (1+l_i)x_i − vw), 2vw + 2(1+l_i)x_i − x)`
/// describing the same extension bundle.
pub fn reattachment(d: &ExtensionDatum, arm: usize) -> Result<ExtensionDatum> {
    d.check_arm(arm)?;
    let k = 1 + d.l(arm);
    let base = (&d.base + &d.x).plus_x(arm, -k).try_sub(&d.base.zero_like().vw())?;
    let x = d.x.negate().vw().vw().plus_x(arm, 2 * k);
    validate_extension_datum(&base, &x)
}

/// Injection `[μ_i x_i^{b_i}]_{i∈I} : O(y) → ⊕ O(y + b_i x_i)` whose cokernel
/// is an extension module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CokernelDatum {
    y: GroupElement,
    arms: [usize; 3],
    powers: [i64; 3],
    mu: [Rational; 3],
}

impl CokernelDatum {
    /// Uses the default scalars `μ = (1, 1, −1)`.
    pub fn new(y: GroupElement, arms: [usize; 3], powers: [i64; 3]) -> Result<Self> {
        let mu = [Rational::one(), Rational::one(), -Rational::one()];
        Self::with_mu(y, arms, powers, mu)
    }

    pub fn with_mu(y: GroupElement, arms: [usize; 3], powers: [i64; 3], mu: [Rational; 3]) -> Result<Self> {
        let t = y.t();
        if !(arms[0] < arms[1] && arms[1] < arms[2]) {
            return Err(Error::InvalidDatum(format!("arms {arms:?} are not strictly ascending")));
        }
        if arms[0] < 1 || arms[2] > t {
            return Err(Error::InvalidDatum(format!("arms {arms:?} outside 1..={t}")));
        }
        for (&arm, &b) in arms.iter().zip(&powers) {
            let max = y.weights()[arm - 1] - 1;
            if b < 1 || b > max {
                return Err(Error::PowerOutOfRange { arm, power: b, max });
            }
        }
        if mu.iter().any(Rational::is_zero) {
            return Err(Error::InvalidDatum("scalars μ must be nonzero".into()));
        }
        Ok(CokernelDatum { y, arms, powers, mu })
    }

    pub fn y(&self) -> &GroupElement {
        &self.y
    }

    pub fn arms(&self) -> [usize; 3] {
        self.arms
    }

    pub fn powers(&self) -> [i64; 3] {
        self.powers
    }

    pub fn mu(&self) -> &[Rational; 3] {
        &self.mu
    }

    /// Power `b_i` for `i ∈ I`.
    pub fn power(&self, arm: usize) -> Result<i64> {
        self.arms.iter().position(|&a| a == arm).map(|k| self.powers[k]).ok_or(Error::IndexNotInI(arm))
    }

    /// Determinants `y + b_i x_i` of the target summands, in `I` order.
    pub fn targets(&self) -> [GroupElement; 3] {
        [0, 1, 2].map(|k| self.y.plus_x(self.arms[k], self.powers[k]))
    }

    pub fn with_scalars(&self, mu: [Rational; 3]) -> Result<Self> {
        Self::with_mu(self.y.clone(), self.arms, self.powers, mu)
    }
}

impl fmt::Display for CokernelDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i1, i2, i3] = self.arms;
        let [b1, b2, b3] = self.powers;
        write!(f, "y = {}, I = {{{i1},{i2},{i3}}}, b = ({b1},{b2},{b3})", self.y)
    }
}

/// `y = det L + x − vc`, `b_i = p_i − l_i − 1`, default scalars.
pub fn datum_to_cokernel(d: &ExtensionDatum) -> CokernelDatum {
    let y = (&d.base + &d.x).plus_vc(-1);
    let powers = d.arms.map(|i| d.x.weights()[i - 1] - d.l(i) - 1);
    CokernelDatum::new(y, d.arms, powers).expect("0 ≤ l_i ≤ p_i − 2 on I")
}

/// The extension datum `(L(y + b_{i0}x_{i0} − vw), vw + Σ b_i x_i − 2 b_{i0} x_{i0})`.
pub fn cokernel_to_datum(c: &CokernelDatum, i0: usize) -> Result<ExtensionDatum> {
    let b0 = c.power(i0)?;
    let y = &c.y;
    let base = y.plus_x(i0, b0).try_sub(&y.zero_like().vw())?;
    let mut x = y.zero_like().vw();
    for (&i, &b) in c.arms.iter().zip(&c.powers) {
        x = x.plus_x(i, b);
    }
    let x = x.plus_x(i0, -2 * b0);
    validate_extension_datum(&base, &x)
}

/// Which candidate produced a positive presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PresentationSource {
    /// The datum itself, source `L(x − vc)`.
    Direct,
    /// The datum reattached at the given arm.
    Reattached(usize),
}

impl fmt::Display for PresentationSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationSource::Direct => f.write_str("x − vc"),
            PresentationSource::Reattached(i) => write!(f, "reattached at arm {i}"),
        }
    }
}

/// A cokernel presentation whose source and targets are all modules.
/// Candidates are tried in the order: the datum itself, then its
/// reattachments at `i ∈ I` ascending.
pub fn positive_presentation(d: &ExtensionDatum) -> Result<(CokernelDatum, PresentationSource)> {
    let mut candidates = vec![(datum_to_cokernel(d), PresentationSource::Direct)];
    for &i in &d.arms {
        let r = reattachment(d, i)?;
        candidates.push((datum_to_cokernel(&r), PresentationSource::Reattached(i)));
    }
    let (c, src) = candidates.into_iter().find(|(c, _)| c.y.is_effective()).ok_or(Error::NotPositive)?;
    if let Some(bad) = c.targets().iter().find(|t| !t.is_effective()) {
        return Err(Error::Internal(format!("target determinant {bad} of {c} is not effective")));
    }
    Ok((c, src))
}

/// Representation type by the sign of the Euler characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightType {
    Domestic,
    Tubular,
    Wild,
}

impl fmt::Display for WeightType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightType::Domestic => "domestic",
            WeightType::Tubular => "tubular",
            WeightType::Wild => "wild",
        })
    }
}

/// `χ = (2 − t) + Σ 1/p_i` and the type it determines.
pub fn euler_characteristic(spec: &WeightSpec) -> (Rational, WeightType) {
    let chi = spec.weights().iter().fold(Rational::from_int(2 - spec.t() as i64), |acc, &p| acc + Rational::new(1, p));
    let kind = if chi.is_zero() {
        WeightType::Tubular
    } else if chi.is_negative() {
        WeightType::Wild
    } else {
        WeightType::Domestic
    };
    (chi, kind)
}
