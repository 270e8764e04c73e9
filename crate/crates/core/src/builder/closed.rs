//! Closed-form matrices for the cokernel modules of cases A and B3.

use std::sync::Arc;

use super::blocks::{jump, z};
use super::{classify, predicted_dims, CaseLabel};
use crate::error::{Error, Result};
use crate::field::Rational;
use crate::matrix::Matrix;
use crate::quiver::{CanonicalQuiver, Representation};
use crate::sheaf::CokernelDatum;

fn diag(a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::block_diag(&[a, b])
}

fn id(n: usize) -> Matrix {
    Matrix::identity(n)
}

/// Assembles a representation that is the identity on every arrow except the
/// listed jumps per arm; `first[j]` is left-multiplied onto `α_1` of arm `j`.
fn assemble(
    quiver: &Arc<CanonicalQuiver>,
    dims: Vec<usize>,
    first: impl Fn(usize) -> Option<Matrix>,
    jumps: impl Fn(usize) -> Vec<(i64, Matrix)>,
) -> Result<Representation> {
    let mut mats: Vec<Matrix> = quiver.arrows().iter().map(|a| id(dims[quiver.index_of(a.source)])).collect();
    for arm in 1..=quiver.spec().t() {
        for (step, m) in jumps(arm) {
            mats[quiver.arrow_index(arm, step)] = m;
        }
        if let Some(f) = first(arm) {
            let k = quiver.arrow_index(arm, 1);
            mats[k] = &f * &mats[k];
        }
    }
    Representation::new(quiver.clone(), dims, mats)
}

fn expect_case(c: &CokernelDatum, expected: CaseLabel) -> Result<()> {
    let got = classify(c)?;
    if got == expected {
        Ok(())
    } else {
        Err(Error::WrongCase { expected, got })
    }
}

/// The cokernel module of a case-A datum, written down directly.
pub fn closed_form_a(quiver: &Arc<CanonicalQuiver>, c: &CokernelDatum) -> Result<Representation> {
    expect_case(c, CaseLabel::A)?;
    let spec = quiver.spec();
    let y = c.y();
    let n = y.a() as usize;
    let [i1, i2, i3] = c.arms();
    let dims = predicted_dims(quiver, y, &c.arms(), &c.powers());
    let first =
        |arm: usize| (arm >= 3).then(|| diag(&z(n + 1, n + 1, spec.lambda(arm)), &z(n + 1, n + 1, spec.lambda(arm))));
    let jumps = |arm: usize| {
        let a = y.coeff(arm);
        let j = jump(arm, n + 1, n);
        if arm == i1 {
            let b = c.power(arm).unwrap();
            vec![(a + 1, diag(&id(n + 1), &j)), (a + b + 1, diag(&j, &id(n)))]
        } else if arm == i2 {
            // The second summand keeps its dimension along arm i2.
            let b = c.power(arm).unwrap();
            vec![(a + 1, diag(&j, &id(n + 1))), (a + b + 1, diag(&id(n), &j))]
        } else if arm == i3 {
            let b = c.power(arm).unwrap();
            let enter = Matrix::block2(&Matrix::zeros(n + 1, n), &id(n + 1), &j, &id(n + 1));
            let leave = Matrix::block2(&id(n).scale(&-Rational::one()), &id(n), &j, &Matrix::zeros(n + 1, n));
            vec![(a + 1, enter), (a + b + 1, leave)]
        } else {
            vec![(a + 1, diag(&j, &j))]
        }
    };
    assemble(quiver, dims, first, jumps)
}

/// The cokernel module of a case-B3 datum, written down directly.
pub fn closed_form_b3(quiver: &Arc<CanonicalQuiver>, c: &CokernelDatum) -> Result<Representation> {
    expect_case(c, CaseLabel::B3)?;
    let spec = quiver.spec();
    let y = c.y();
    let n = y.a() as usize;
    let [i1, i2, i3] = c.arms();
    let neg = -spec.lambda(i3);
    let dims = predicted_dims(quiver, y, &c.arms(), &c.powers());
    let first =
        |arm: usize| (arm >= 3).then(|| diag(&z(n + 1, n + 1, spec.lambda(arm)), &z(n + 2, n + 2, spec.lambda(arm))));
    let jumps = |arm: usize| {
        let a = y.coeff(arm);
        let small = jump(arm, n + 1, n);
        let large = jump(arm, n + 2, n + 1);
        if arm == i1 {
            let b = c.power(arm).unwrap();
            let enter = Matrix::block2(
                &id(n + 1).scale(&-Rational::one()),
                &Matrix::zeros(n + 1, n + 1),
                &z(n + 2, n + 1, &neg),
                &large,
            );
            let leave = Matrix::block2(
                &small.scale(&-Rational::one()),
                &Matrix::zeros(n + 1, n + 1),
                &z(n + 1, n, &neg),
                &id(n + 1),
            );
            vec![(a + 1, enter), (a + b + 1, leave)]
        } else if arm == i2 {
            let b = c.power(arm).unwrap();
            vec![(a + 1, diag(&id(n + 1), &large)), (a + b + 1, diag(&small, &id(n + 1)))]
        } else if arm == i3 {
            let b = c.power(arm).unwrap();
            let wrap = a + b - spec.weight(arm);
            vec![(wrap + 1, diag(&id(n + 1), &large)), (a + 1, diag(&small, &id(n + 1)))]
        } else {
            vec![(a + 1, diag(&small, &large))]
        }
    };
    assemble(quiver, dims, first, jumps)
}
