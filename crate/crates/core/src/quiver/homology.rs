//! Hom spaces, Ext¹ dimensions and the Euler form of representations.
//!
//! `Hom(M, N)` is the kernel of `d0: ⊕_v Hom(M_v, N_v) → ⊕_α Hom(M_j, N_i)`,
//! `(d0 φ)_α = φ_i M_α − N_α φ_j`. `Ext¹(M, N) = ker d1 / im d0`, where `d1`
//! sends an arrow-indexed family to the product-rule expansion of every
//! relation `C_i − C_1 − λ_i C_2`.

use log::warn;

use super::{Morphism, Representation, Vertex};
use crate::error::{Error, Result};
use crate::field::Rational;
use crate::matrix::Matrix;
use crate::sparse::SparseEchelon;

fn same_quiver(m: &Representation, n: &Representation) -> Result<()> {
    if m.quiver == n.quiver {
        Ok(())
    } else {
        Err(Error::SpecMismatch)
    }
}

/// Column offsets of the vertex unknowns `φ_v ∈ Hom(M_v, N_v)`.
fn vertex_offsets(m: &Representation, n: &Representation) -> (Vec<usize>, usize) {
    let mut offs = Vec::with_capacity(m.dims.len());
    let mut total = 0;
    for (a, b) in m.dims.iter().zip(&n.dims) {
        offs.push(total);
        total += a * b;
    }
    (offs, total)
}

/// Row-reduces the `d0` system.
fn d0_echelon(m: &Representation, n: &Representation) -> (SparseEchelon, Vec<usize>) {
    let q = &m.quiver;
    let (offs, total) = vertex_offsets(m, n);
    let mut ech = SparseEchelon::new(total);
    for k in 0..q.arrows().len() {
        let (i, j) = (q.source_index(k), q.target_index(k));
        let (ma, na) = (&m.mats[k], &n.mats[k]);
        let (mi, mj, ni, nj) = (m.dims[i], m.dims[j], n.dims[i], n.dims[j]);
        for r in 0..ni {
            for c in 0..mj {
                let mut row = Vec::new();
                for l in 0..mi {
                    let v = &ma[(l, c)];
                    if !v.is_zero() {
                        row.push((offs[i] + r * mi + l, v.clone()));
                    }
                }
                for l in 0..nj {
                    let v = &na[(r, l)];
                    if !v.is_zero() {
                        row.push((offs[j] + l * mj + c, -v));
                    }
                }
                ech.push(row);
            }
        }
    }
    (ech, offs)
}

/// A basis of `Hom(M, N)`, one morphism per free unknown of the reduced
/// system (leftmost pivots).
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<Morphism>> {
    same_quiver(m, n)?;
    let (ech, offs) = d0_echelon(m, n);
    Ok(ech
        .nullspace()
        .into_iter()
        .map(|vec| {
            let maps = (0..m.dims.len())
                .map(|v| {
                    let (rows, cols) = (n.dims[v], m.dims[v]);
                    Matrix::from_vec(rows, cols, vec[offs[v]..offs[v] + rows * cols].to_vec())
                })
                .collect();
            Morphism::new(maps)
        })
        .collect())
}

fn hom_dim(m: &Representation, n: &Representation) -> (usize, usize) {
    let (ech, _) = d0_echelon(m, n);
    (ech.ncols() - ech.rank(), ech.ncols())
}

/// `dim Ext¹(M, N)`.
pub fn ext1_dim(m: &Representation, n: &Representation) -> Result<usize> {
    same_quiver(m, n)?;
    let q = &m.quiver;
    let spec = q.spec();
    let (hom, vertex_unknowns) = hom_dim(m, n);

    // Arrow unknowns ψ_α ∈ Hom(M_j, N_i), stored row-major.
    let mut offs = Vec::with_capacity(q.arrows().len());
    let mut total = 0;
    for k in 0..q.arrows().len() {
        offs.push(total);
        total += n.dims[q.source_index(k)] * m.dims[q.target_index(k)];
    }

    let n0 = n.dim(Vertex::Zero);
    let mc = m.dim(Vertex::Top);
    // For every arm: (arrow, prefix N_{α1}⋯N_{α(k−1)}, suffix M_{α(k+1)}⋯M_{αp}).
    let expansion = |arm: usize| -> Vec<(usize, Matrix, Matrix)> {
        let arrows: Vec<usize> = q.arm_arrows(arm).collect();
        let mut prefixes = Vec::with_capacity(arrows.len());
        let mut acc = Matrix::identity(n0);
        for &k in &arrows {
            prefixes.push(acc.clone());
            acc = &acc * &n.mats[k];
        }
        let mut suffixes = vec![Matrix::zeros(0, 0); arrows.len()];
        let mut acc = Matrix::identity(mc);
        for (pos, &k) in arrows.iter().enumerate().rev() {
            suffixes[pos] = acc.clone();
            acc = &m.mats[k] * &acc;
        }
        arrows.into_iter().zip(prefixes).zip(suffixes).map(|((k, p), s)| (k, p, s)).collect()
    };
    let arm1 = expansion(1);
    let arm2 = expansion(2);

    let mut ech = SparseEchelon::new(total);
    for i in 3..=spec.t() {
        let armi = expansion(i);
        let lambda = spec.lambda(i);
        let terms = [(Rational::one(), &armi), (-Rational::one(), &arm1), (-lambda, &arm2)];
        for r in 0..n0 {
            for c in 0..mc {
                let mut row = Vec::new();
                for (coef, arm) in &terms {
                    for (k, pre, suf) in arm.iter() {
                        let cols = suf.rows();
                        for a in 0..pre.cols() {
                            let pa = &pre[(r, a)];
                            if pa.is_zero() {
                                continue;
                            }
                            let pa = pa * coef;
                            for b in 0..cols {
                                let sb = &suf[(b, c)];
                                if !sb.is_zero() {
                                    row.push((offs[*k] + a * cols + b, &pa * sb));
                                }
                            }
                        }
                    }
                }
                ech.push(row);
            }
        }
    }
    let cycles = total - ech.rank();
    let boundaries = vertex_unknowns - hom;
    Ok(cycles - boundaries)
}

/// `⟨d, e⟩ = Σ_v d_v e_v − Σ_{α: i→j} d_j e_i + (t−2)·d_vc·e_0`.
pub fn euler_form(quiver: &super::CanonicalQuiver, d: &[usize], e: &[usize]) -> Result<i64> {
    let nv = quiver.vertices().len();
    for len in [d.len(), e.len()] {
        if len != nv {
            return Err(Error::LengthMismatch { expected: nv, got: len });
        }
    }
    let (d, e): (Vec<i64>, Vec<i64>) = (d.iter().map(|&x| x as i64).collect(), e.iter().map(|&x| x as i64).collect());
    let mut sum: i64 = d.iter().zip(&e).map(|(a, b)| a * b).sum();
    for k in 0..quiver.arrows().len() {
        sum -= d[quiver.target_index(k)] * e[quiver.source_index(k)];
    }
    let top = quiver.index_of(Vertex::Top);
    let zero = quiver.index_of(Vertex::Zero);
    sum += (quiver.spec().t() as i64 - 2) * d[top] * e[zero];
    Ok(sum)
}

/// `End M = k`, `Ext¹(M, M) = 0` and `⟨dim M, dim M⟩ = 1`.
pub fn is_exceptional(m: &Representation) -> bool {
    let (hom, _) = hom_dim(m, m);
    hom == 1 && ext1_dim(m, m) == Ok(0) && euler_form(&m.quiver, &m.dims, &m.dims) == Ok(1)
}

/// Outcome of the isomorphism search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    Isomorphic(Morphism),
    NotIsomorphic,
    /// No invertible morphism was found among the tried combinations.
    Unknown,
}

const SEARCH_BOUND: usize = 100;

/// Looks for a morphism invertible at every vertex: first the basis
/// members, then deterministic small-integer combinations.
pub fn isomorphism_search(m: &Representation, n: &Representation) -> Result<IsoVerdict> {
    same_quiver(m, n)?;
    if m.dims != n.dims {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    let basis = hom_basis(m, n)?;
    if let Some(f) = basis.iter().find(|f| f.is_invertible()) {
        return Ok(IsoVerdict::Isomorphic(f.clone()));
    }
    if basis.len() <= 1 {
        // Only scalar multiples of a non-invertible map (or nothing) remain.
        return Ok(IsoVerdict::NotIsomorphic);
    }
    for round in 1..=SEARCH_BOUND {
        let coeffs: Vec<Rational> = (0..basis.len())
            .map(|k| {
                let v = ((round * 7 + k * 13 + round * k * 3) % 7) as i64 - 3;
                Rational::from_int(if v == 0 { 1 } else { v })
            })
            .collect();
        let f = Morphism::combination(&basis, &coeffs);
        if f.is_invertible() {
            return Ok(IsoVerdict::Isomorphic(f));
        }
    }
    Ok(IsoVerdict::Unknown)
}

/// Boolean form of [`isomorphism_search`]; an inconclusive search counts as
/// not isomorphic and is logged.
pub fn are_isomorphic(m: &Representation, n: &Representation) -> Result<bool> {
    Ok(match isomorphism_search(m, n)? {
        IsoVerdict::Isomorphic(_) => true,
        IsoVerdict::NotIsomorphic => false,
        IsoVerdict::Unknown => {
            warn!("isomorphism search inconclusive after {SEARCH_BOUND} combinations");
            false
        }
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::grading::WeightSpec;
    use crate::quiver::CanonicalQuiver;

    fn simple_at_zero(q: &Arc<CanonicalQuiver>) -> Representation {
        let mut dims = vec![0; q.vertices().len()];
        dims[0] = 1;
        let mats =
            (0..q.arrows().len()).map(|k| Matrix::zeros(dims[q.source_index(k)], dims[q.target_index(k)])).collect();
        Representation::new(q.clone(), dims, mats).unwrap()
    }

    fn quiver(w: &[i64]) -> Arc<CanonicalQuiver> {
        Arc::new(CanonicalQuiver::new(&WeightSpec::with_weights(w).unwrap()))
    }

    #[test]
    fn simple_module_is_exceptional() {
        let q = quiver(&[2, 3, 7]);
        let s = simple_at_zero(&q);
        assert_eq!(hom_basis(&s, &s).unwrap().len(), 1);
        assert_eq!(ext1_dim(&s, &s), Ok(0));
        assert!(is_exceptional(&s));
        assert_eq!(euler_form(&q, s.dim_vector(), s.dim_vector()), Ok(1));
    }

    #[test]
    fn hom_into_zero_is_empty() {
        let q = quiver(&[2, 3, 7]);
        let s = simple_at_zero(&q);
        let z = Representation::zero(q);
        assert!(hom_basis(&s, &z).unwrap().is_empty());
        assert_eq!(ext1_dim(&s, &z), Ok(0));
    }

    #[test]
    fn doubled_module_is_not_exceptional() {
        let q = quiver(&[2, 3, 7]);
        let s = simple_at_zero(&q);
        let ss = s.direct_sum(&s).unwrap();
        assert_eq!(hom_basis(&ss, &ss).unwrap().len(), 4);
        assert!(!is_exceptional(&ss));
        assert!(are_isomorphic(&ss, &ss).unwrap());
    }

    #[test]
    fn euler_form_checks_lengths() {
        let q = quiver(&[2, 3, 7]);
        assert_eq!(euler_form(&q, &[1], &[1]), Err(Error::LengthMismatch { expected: 11, got: 1 }));
    }

    #[test]
    fn different_dimensions_are_not_isomorphic() {
        let q = quiver(&[2, 2, 2]);
        let s = simple_at_zero(&q);
        assert!(!are_isomorphic(&s, &Representation::zero(q)).unwrap());
    }
}
