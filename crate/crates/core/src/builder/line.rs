//! Line bundle modules and the maps `x_i^b` between them.
//!
//! Two bases are used. The monomial basis realizes `M_v = S_{y−v}` with basis
//! `x^e u^{m−k} v^k` (`u = x_1^{p_1}`, `v = x_2^{p_2}`); there every arrow is
//! multiplication by `x_i`, which is the identity except where the exponent of
//! `x_i` wraps and `x_i^{p_i}` acts as `u`, `v` or `u + λ_i v`. The published
//! basis differs from it by `Z_{n+1}(λ_j)` at the vertices `1..a_j` of every
//! arm `j ≥ 3`; it moves the `λ_j` entries onto the first arrow of the arm.

use std::sync::Arc;

use super::blocks::{jump, x, y as ymat, z, z_inv};
use crate::error::{Error, Result};
use crate::field::Rational;
use crate::grading::{GroupElement, WeightSpec};
use crate::matrix::Matrix;
use crate::quiver::{CanonicalQuiver, Morphism, Representation, Vertex};

fn check_effective(y: &GroupElement) -> Result<()> {
    if y.is_effective() {
        Ok(())
    } else {
        Err(Error::NotEffective(y.to_string()))
    }
}

/// Multiplication by `x_arm^{p_arm}` from `k[u,v]_{d−1}` to `k[u,v]_d`.
fn wrap(spec: &WeightSpec, arm: usize, d: usize) -> Matrix {
    match arm {
        1 => x(d + 1, d),
        2 => ymat(d + 1, d),
        _ => z(d + 1, d, spec.lambda(arm)),
    }
}

/// `dim S_{y−v}` for every vertex, in quiver order.
pub fn line_dims(quiver: &CanonicalQuiver, y: &GroupElement) -> Vec<usize> {
    quiver.vertices().iter().map(|v| y.try_sub(&v.element(quiver.spec())).unwrap().graded_dim()).collect()
}

/// The module of `O(y)` in the published basis.
pub fn line_bundle_rep(quiver: &Arc<CanonicalQuiver>, y: &GroupElement) -> Result<Representation> {
    check_effective(y)?;
    let spec = quiver.spec();
    let n = y.a() as usize;
    let dims = line_dims(quiver, y);
    let mats = quiver
        .arrows()
        .iter()
        .map(|a| {
            let rows = dims[quiver.index_of(a.source)];
            let cols = dims[quiver.index_of(a.target)];
            let mut m = if a.step == y.coeff(a.arm) + 1 { jump(a.arm, rows, cols) } else { Matrix::identity(rows) };
            if a.arm >= 3 && a.step == 1 {
                m = &z(n + 1, n + 1, spec.lambda(a.arm)) * &m;
            }
            m
        })
        .collect();
    Representation::new(quiver.clone(), dims, mats)
}

/// The module of `O(y)` in the monomial basis.
pub fn monomial_rep(quiver: &Arc<CanonicalQuiver>, y: &GroupElement) -> Result<Representation> {
    check_effective(y)?;
    let spec = quiver.spec();
    let dims = line_dims(quiver, y);
    let mats = quiver
        .arrows()
        .iter()
        .map(|a| {
            let rows = dims[quiver.index_of(a.source)];
            let cols = dims[quiver.index_of(a.target)];
            if rows == cols {
                Matrix::identity(rows)
            } else {
                wrap(spec, a.arm, cols)
            }
        })
        .collect();
    Representation::new(quiver.clone(), dims, mats)
}

/// The isomorphism from the published basis to the monomial basis.
pub fn to_monomial(quiver: &CanonicalQuiver, y: &GroupElement) -> Vec<Matrix> {
    let spec = quiver.spec();
    let dims = line_dims(quiver, y);
    quiver
        .vertices()
        .iter()
        .zip(&dims)
        .map(|(v, &d)| match *v {
            Vertex::Arm { arm, step } if arm >= 3 && step <= y.coeff(arm) => z(d, d, spec.lambda(arm)),
            _ => Matrix::identity(d),
        })
        .collect()
}

fn from_monomial(quiver: &CanonicalQuiver, y: &GroupElement) -> Vec<Matrix> {
    let spec = quiver.spec();
    let dims = line_dims(quiver, y);
    quiver
        .vertices()
        .iter()
        .zip(&dims)
        .map(|(v, &d)| match *v {
            Vertex::Arm { arm, step } if arm >= 3 && step <= y.coeff(arm) => z_inv(d, spec.lambda(arm)),
            _ => Matrix::identity(d),
        })
        .collect()
}

/// Multiplication by `x_arm^b` in the monomial bases.
fn monomial_power(quiver: &CanonicalQuiver, y: &GroupElement, arm: usize, b: i64) -> Vec<Matrix> {
    let spec = quiver.spec();
    quiver
        .vertices()
        .iter()
        .map(|v| {
            let src = y.try_sub(&v.element(spec)).unwrap();
            let tgt = src.plus_x(arm, b);
            let (ds, dt) = (src.graded_dim(), tgt.graded_dim());
            if ds == dt {
                Matrix::identity(ds)
            } else {
                wrap(spec, arm, ds)
            }
        })
        .collect()
}

/// The map `μ·x_arm^b: O(y) → O(y + b·x_arm)` between published-basis
/// line bundle modules.
pub fn power_map(quiver: &CanonicalQuiver, y: &GroupElement, arm: usize, b: i64, mu: &Rational) -> Result<Morphism> {
    check_effective(y)?;
    let max = quiver.spec().weight(arm) - 1;
    if b < 1 || b > max {
        return Err(Error::PowerOutOfRange { arm, power: b, max });
    }
    let target = y.plus_x(arm, b);
    let into = to_monomial(quiver, y);
    let back = from_monomial(quiver, &target);
    let maps = monomial_power(quiver, y, arm, b)
        .iter()
        .zip(into.iter().zip(&back))
        .map(|(f, (phi, psi))| (&(psi * f) * phi).scale(mu))
        .collect();
    Ok(Morphism::new(maps))
}

/// `[μ_k x_{j_k}^{b_k}]_k: O(y) → ⊕_k O(y + b_k x_{j_k})` together with its
/// source and target modules.
pub fn stacked_power_map(
    quiver: &Arc<CanonicalQuiver>,
    y: &GroupElement,
    arms: &[usize],
    powers: &[i64],
    mu: &[Rational],
) -> Result<(Representation, Representation, Morphism)> {
    let source = line_bundle_rep(quiver, y)?;
    let mut target: Option<Representation> = None;
    let mut parts = Vec::with_capacity(arms.len());
    for ((&arm, &b), m) in arms.iter().zip(powers).zip(mu) {
        parts.push(power_map(quiver, y, arm, b, m)?);
        let summand = line_bundle_rep(quiver, &y.plus_x(arm, b))?;
        target = Some(match target {
            None => summand,
            Some(t) => t.direct_sum(&summand)?,
        });
    }
    let target = target.ok_or_else(|| Error::InvalidDatum("empty index set".into()))?;
    Ok((source, target, Morphism::stack(&parts)))
}
