//! Cokernels of injective morphisms and the conditions under which they are
//! exceptional.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Rational;
use crate::matrix::Matrix;
use crate::quiver::{ext1_dim, hom_basis, is_exceptional, Morphism, Representation};
use crate::sparse::SparseEchelon;

/// Rows of `f` forming an invertible square, chosen greedily from the last
/// row upwards, and the complementary rows. Both ascending.
fn split_rows(f: &Matrix) -> (Vec<usize>, Vec<usize>) {
    let mut ech = SparseEchelon::new(f.cols());
    let mut pivots = Vec::new();
    for r in (0..f.rows()).rev() {
        if pivots.len() == f.cols() {
            break;
        }
        let row = f.row(r).iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect();
        if ech.push(row) {
            pivots.push(r);
        }
    }
    pivots.reverse();
    let rest = (0..f.rows()).filter(|r| pivots.binary_search(r).is_err()).collect();
    (pivots, rest)
}

/// Reduction `g: W → W / im f` in the basis of the complementary rows:
/// `g = [I_Q | −F_Q F_P^{-1}]`, columns in their original positions.
fn reduction(f: &Matrix, pivots: &[usize], rest: &[usize]) -> Matrix {
    let fp_inv = f.select_rows(pivots).inverse().expect("pivot rows are independent");
    let a = &f.select_rows(rest) * &fp_inv;
    let mut g = Matrix::zeros(rest.len(), f.rows());
    for (k, &q) in rest.iter().enumerate() {
        g[(k, q)] = Rational::one();
    }
    for (col, &p) in pivots.iter().enumerate() {
        for k in 0..rest.len() {
            g[(k, p)] = -&a[(k, col)];
        }
    }
    g
}

/// The cokernel `E` of an injective `f: L → G` and the projection `g: G → E`.
///
/// At each vertex the basis of `E_v` is the set of standard basis vectors of
/// `G_v` outside a set of rows on which `f_v` is invertible, and every arrow
/// matrix is the unique completion `E_α = g_i G_α` restricted to that basis.
pub fn cokernel(f: &Morphism, target: &Representation) -> Result<(Representation, Morphism)> {
    let q = target.quiver();
    let mut splits = Vec::with_capacity(q.vertices().len());
    let mut gs = Vec::with_capacity(q.vertices().len());
    for (v, fv) in f.maps().iter().enumerate() {
        if fv.rows() != target.dim_vector()[v] {
            return Err(Error::ShapeMismatch {
                arrow: format!("vertex {}", q.vertices()[v]),
                expected: (target.dim_vector()[v], fv.cols()),
                got: fv.shape(),
            });
        }
        let (pivots, rest) = split_rows(fv);
        if pivots.len() < fv.cols() {
            return Err(Error::NotInjective(q.vertices()[v].id()));
        }
        gs.push(reduction(fv, &pivots, &rest));
        splits.push(rest);
    }
    let dims = splits.iter().map(Vec::len).collect();
    let mats = target
        .matrices()
        .iter()
        .enumerate()
        .map(|(k, ga)| {
            let (i, j) = (q.source_index(k), q.target_index(k));
            &gs[i] * &ga.select_cols(&splits[j])
        })
        .collect();
    let e = Representation::new(q.clone(), dims, mats)?;
    Ok((e, Morphism::new(gs)))
}

/// Outcome of the four cokernel conditions for `f: F → G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CConditions {
    /// `F` is exceptional.
    pub c1: bool,
    /// `Hom(G, F) = 0 = Ext¹(G, F)`.
    pub c2: bool,
    /// `Ext¹(G, G) = 0`.
    pub c3: bool,
    /// `− ∘ f: End G → Hom(F, G)` is bijective.
    pub c4: bool,
}

impl CConditions {
    pub fn all(&self) -> bool {
        self.c1 && self.c2 && self.c3 && self.c4
    }

    pub fn failed(&self) -> Vec<&'static str> {
        [("C1", self.c1), ("C2", self.c2), ("C3", self.c3), ("C4", self.c4)]
            .into_iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name)
            .collect()
    }
}

impl fmt::Display for CConditions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "ok" } else { "FAIL" };
        write!(f, "C1 {} C2 {} C3 {} C4 {}", mark(self.c1), mark(self.c2), mark(self.c3), mark(self.c4))
    }
}

fn flatten(m: &Morphism) -> Vec<(usize, Rational)> {
    let mut out = Vec::new();
    let mut off = 0;
    for a in m.maps() {
        for (k, v) in a.entries().iter().enumerate() {
            if !v.is_zero() {
                out.push((off + k, v.clone()));
            }
        }
        off += a.entries().len();
    }
    out
}

/// Checks the conditions that make the cokernel of `f: F → G` exceptional.
pub fn verify_c_conditions(f: &Morphism, source: &Representation, target: &Representation) -> Result<CConditions> {
    f.check(source, target)?;
    let c1 = is_exceptional(source);
    let c2 = hom_basis(target, source)?.is_empty() && ext1_dim(target, source)? == 0;
    let c3 = ext1_dim(target, target)? == 0;
    let end = hom_basis(target, target)?;
    let hom_fg = hom_basis(source, target)?.len();
    let width: usize = source.dim_vector().iter().zip(target.dim_vector()).map(|(a, b)| a * b).sum();
    let mut ech = SparseEchelon::new(width);
    for h in &end {
        ech.push(flatten(&h.compose(f)));
    }
    let c4 = end.len() == hom_fg && ech.rank() == end.len();
    Ok(CConditions { c1, c2, c3, c4 })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::builder::line::{line_bundle_rep, stacked_power_map};
    use crate::grading::WeightSpec;
    use crate::quiver::CanonicalQuiver;

    fn quiver(w: &[i64]) -> Arc<CanonicalQuiver> {
        Arc::new(CanonicalQuiver::new(&WeightSpec::with_weights(w).unwrap()))
    }

    #[test]
    fn block_shape_of_complement() {
        // f = [B; C; −I] reduces by [I 0 B; 0 I C].
        let f = Matrix::from_ints(4, 2, &[1, 2, 3, 4, -1, 0, 0, -1]);
        let (p, q) = split_rows(&f);
        assert_eq!((p.clone(), q.clone()), (vec![2, 3], vec![0, 1]));
        assert_eq!(reduction(&f, &p, &q), Matrix::from_ints(2, 4, &[1, 0, 1, 2, 0, 1, 3, 4]));
    }

    #[test]
    fn cokernel_of_map_from_zero() {
        let q = quiver(&[2, 3, 7]);
        let g = line_bundle_rep(&q, &q.spec().vc()).unwrap();
        let zero = Representation::zero(q.clone());
        let f = Morphism::zero(&zero, &g);
        let (e, proj) = cokernel(&f, &g).unwrap();
        assert_eq!(e, g);
        assert_eq!(proj, Morphism::identity(&g));
    }

    #[test]
    fn non_injective_map_is_rejected() {
        let q = quiver(&[2, 3, 7]);
        let l = line_bundle_rep(&q, &q.spec().zero()).unwrap();
        let f = Morphism::zero(&l, &l);
        assert_eq!(cokernel(&f, &l), Err(Error::NotInjective("0".into())));
    }

    #[test]
    fn basic_pipeline() {
        let q = quiver(&[2, 3, 7]);
        let mu = [Rational::one(), Rational::one(), -Rational::one()];
        let (src, tgt, f) = stacked_power_map(&q, &q.spec().zero(), &[1, 2, 3], &[1, 1, 1], &mu).unwrap();
        let (e, g) = cokernel(&f, &tgt).unwrap();
        assert_eq!(e.dim_vector(), &[2, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(e.rank(), 2);
        assert!(e.validate().is_ok());
        assert!(g.check(&tgt, &e).is_ok());
        assert!(g.compose(&f).is_zero());
        let ranks: usize = g.maps().iter().map(Matrix::rank).sum();
        assert_eq!(ranks, e.total_dim());
        let c = verify_c_conditions(&f, &src, &tgt).unwrap();
        assert!(c.all(), "{c}");
    }

    #[test]
    fn degenerate_maps_fail_conditions() {
        let q = quiver(&[2, 3, 7]);
        let l = line_bundle_rep(&q, &q.spec().vc()).unwrap();
        let zero = Morphism::zero(&l, &l);
        assert!(!verify_c_conditions(&zero, &l, &l).unwrap().c4);
        let id = Morphism::identity(&l);
        assert!(!verify_c_conditions(&id, &l, &l).unwrap().c2);
    }
}
