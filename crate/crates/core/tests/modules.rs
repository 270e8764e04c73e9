use std::sync::Arc;

use proptest::prelude::*;

use extmod_core::builder::{assemble_map, cokernel, line_bundle_rep, predicted_dims, verify_c_conditions};
use extmod_core::io::{from_json, to_json, DatumRecord};
use extmod_core::quiver::{are_isomorphic, euler_form, ext1_dim, hom_basis, is_exceptional};
use extmod_core::sheaf::{ext_dim, hom_dim};
use extmod_core::verify::enumerate_data;
use extmod_core::{build, CanonicalQuiver, CokernelDatum, Matrix, Method, Rational, Representation, WeightSpec};

fn quiver(w: &[i64]) -> Arc<CanonicalQuiver> {
    Arc::new(CanonicalQuiver::new(&WeightSpec::with_weights(w).unwrap()))
}

fn datum(q: &CanonicalQuiver, y: &str, arms: [usize; 3], b: [i64; 3]) -> CokernelDatum {
    CokernelDatum::new(q.spec().parse_element(y).unwrap(), arms, b).unwrap()
}

/// Small data drawn from every weight list used in the sweeps.
fn sample_data() -> impl Strategy<Value = (Arc<CanonicalQuiver>, CokernelDatum)> {
    let lists: Vec<Vec<i64>> = vec![vec![2, 3, 7], vec![2, 4, 5], vec![3, 3, 4], vec![2, 2, 2, 3]];
    prop::sample::select(lists).prop_flat_map(|w| {
        let q = quiver(&w);
        let data = enumerate_data(q.spec(), 1, None);
        prop::sample::select(data).prop_map(move |c| (q.clone(), c))
    })
}

#[test]
fn line_bundle_dims_count_monomials() {
    for w in [&[2, 3, 7][..], &[3, 3, 4], &[2, 2, 2, 3]] {
        let q = quiver(w);
        let spec = q.spec();
        for y in enumerate_data(spec, 2, Some([1, 2, 3])).iter().map(CokernelDatum::y) {
            let rep = line_bundle_rep(&q, y).unwrap();
            for (v, &d) in q.vertices().iter().zip(rep.dim_vector()) {
                let z = y.try_sub(&v.element(spec)).unwrap();
                assert_eq!(d, z.monomial_basis().len(), "y = {y}, vertex {v}");
            }
        }
    }
}

#[test]
fn euler_form_matches_hom_minus_ext_on_line_bundles() {
    let q = quiver(&[2, 3, 7]);
    let spec = q.spec();
    let elems: Vec<_> = [0, 1]
        .iter()
        .flat_map(|&a| (0..3).flat_map(move |e2| (0..7).map(move |e3| (a, e2, e3))))
        .map(|(a, e2, e3)| spec.element(a, &[0, e2, e3]).unwrap())
        .collect();
    for x in &elems {
        let lx = line_bundle_rep(&q, x).unwrap();
        for y in &elems {
            let ly = line_bundle_rep(&q, y).unwrap();
            let chi = euler_form(&q, lx.dim_vector(), ly.dim_vector()).unwrap();
            let sheaf = hom_dim(x, y).unwrap() as i64 - ext_dim(x, y).unwrap() as i64;
            assert_eq!(chi, sheaf, "x = {x}, y = {y}");
        }
    }
}

#[test]
fn small_hom_and_ext_examples() {
    let q = quiver(&[2, 3, 7]);
    let spec = q.spec();
    let l0 = line_bundle_rep(&q, &spec.zero()).unwrap();
    let lc = line_bundle_rep(&q, &spec.vc()).unwrap();
    let l2c = line_bundle_rep(&q, &spec.vc().plus_vc(1)).unwrap();
    assert_eq!(hom_basis(&l0, &lc).unwrap().len(), 2);
    assert_eq!(ext1_dim(&l0, &l0), Ok(0));
    assert_eq!(ext1_dim(&l2c, &l0), Ok(1));
    assert_eq!(euler_form(&q, l0.dim_vector(), lc.dim_vector()), Ok(2));
    let e = build(&q, &datum(&q, "0;0,0,0", [1, 2, 3], [1, 1, 1]), Method::Closed).unwrap();
    assert_eq!(euler_form(&q, e.dim_vector(), e.dim_vector()), Ok(1));
}

#[test]
fn cokernel_against_its_presentation() {
    // G maps onto E; nothing nonzero maps E back to the source.
    let q = quiver(&[2, 3, 7]);
    let c = datum(&q, "1;0,1,2", [1, 2, 3], [1, 1, 3]);
    let (source, target, f) = assemble_map(&q, &c).unwrap();
    let (e, g) = cokernel(&f, &target).unwrap();
    assert!(g.check(&target, &e).is_ok());
    assert!(!hom_basis(&target, &e).unwrap().is_empty());
    assert!(hom_basis(&e, &source).unwrap().is_empty());
    assert_eq!(ext1_dim(&e, &e), Ok(0));
}

fn perturb_on_composite(rep: &Representation) -> Option<Representation> {
    let q = rep.quiver();
    for arm in 1..=q.spec().t() {
        for k in q.arm_arrows(arm) {
            let m = &rep.matrices()[k];
            if m.rows() > 0 && m.cols() > 0 {
                let mut bumped = m.clone();
                bumped[(0, 0)] += &Rational::one();
                let mut out = rep.clone();
                out.set_matrix(k, bumped).unwrap();
                return Some(out);
            }
        }
    }
    None
}

#[test]
fn perturbation_breaks_relations() {
    let q = quiver(&[2, 3, 7]);
    let c = datum(&q, "1;0,0,0", [1, 2, 3], [1, 1, 1]);
    let e = build(&q, &c, Method::Closed).unwrap();
    assert!(e.validate().is_ok());
    let bad = perturb_on_composite(&e).unwrap();
    assert!(bad.validate().is_err());
    assert!(Representation::zero(q).validate().is_ok());
}

#[test]
fn c_conditions_hold_on_every_assembled_map() {
    let q = quiver(&[2, 3, 7]);
    for c in enumerate_data(q.spec(), 0, None).iter().step_by(7) {
        let (source, target, f) = assemble_map(&q, c).unwrap();
        let cond = verify_c_conditions(&f, &source, &target).unwrap();
        assert!(cond.all(), "{c}: {cond}");
    }
}

#[test]
fn higher_rank_two_arms_gives_line_bundle() {
    let q = quiver(&[2, 2, 2, 3]);
    let spec = q.spec();
    let y = spec.zero();
    let e = extmod_core::builder::higher_rank(&q, &y, &[2, 4], &[1, 2], None).unwrap();
    assert_eq!(e.rank(), 1);
    let det = y.plus_x(2, 1).plus_x(4, 2);
    let line = line_bundle_rep(&q, &det).unwrap();
    assert_eq!(e.dim_vector(), line.dim_vector());
    assert!(are_isomorphic(&e, &line).unwrap());
    assert_eq!(e.dim_vector(), predicted_dims(&q, &y, &[2, 4], &[1, 2]).as_slice());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn methods_agree_and_scalars_do_not_matter((q, c) in sample_data(), m1 in 1i64..4, m3 in 1i64..4) {
        let closed = build(&q, &c, Method::Closed).unwrap();
        let cok = build(&q, &c, Method::Cokernel).unwrap();
        prop_assert!(are_isomorphic(&closed, &cok).unwrap());
        let mu = [Rational::from_int(m1), Rational::new(1, 2), Rational::from_int(-m3)];
        let scaled = build(&q, &c.with_scalars(mu).unwrap(), Method::Cokernel).unwrap();
        prop_assert!(are_isomorphic(&cok, &scaled).unwrap());
    }

    #[test]
    fn cokernel_projection_property((q, c) in sample_data()) {
        let (_, target, f) = assemble_map(&q, &c).unwrap();
        let (e, g) = cokernel(&f, &target).unwrap();
        prop_assert!(g.compose(&f).is_zero());
        let ranks: usize = g.maps().iter().map(Matrix::rank).sum();
        prop_assert_eq!(ranks, e.total_dim());
        let expected = predicted_dims(&q, c.y(), &c.arms(), &c.powers());
        prop_assert_eq!(e.dim_vector(), expected.as_slice());
    }

    #[test]
    fn base_change_preserves_everything((q, c) in sample_data(), s in 1i64..4) {
        let e = build(&q, &c, Method::Closed).unwrap();
        // Unipotent upper-triangular vertex maps with off-diagonal entries s.
        let phi: Vec<Matrix> = e
            .dim_vector()
            .iter()
            .map(|&d| Matrix::from_fn(d, d, |r, col| match col.cmp(&r) {
                std::cmp::Ordering::Equal => Rational::one(),
                std::cmp::Ordering::Greater => Rational::from_int(s),
                std::cmp::Ordering::Less => Rational::zero(),
            }))
            .collect();
        let n = e.base_change(&phi).unwrap();
        prop_assert!(n.validate().is_ok());
        prop_assert!(is_exceptional(&n));
        prop_assert_eq!(hom_basis(&e, &n).unwrap().len(), 1);
        prop_assert!(are_isomorphic(&e, &n).unwrap());
    }

    #[test]
    fn hom_and_ext_are_additive((q, c) in sample_data()) {
        let e = build(&q, &c, Method::Closed).unwrap();
        let l = line_bundle_rep(&q, c.y()).unwrap();
        let sum = e.direct_sum(&l).unwrap();
        let hom = |a: &Representation, b: &Representation| hom_basis(a, b).unwrap().len();
        let ext = |a: &Representation, b: &Representation| ext1_dim(a, b).unwrap();
        prop_assert_eq!(hom(&sum, &e), hom(&e, &e) + hom(&l, &e));
        prop_assert_eq!(ext(&e, &sum), ext(&e, &e) + ext(&e, &l));
        prop_assert!(!is_exceptional(&sum.direct_sum(&e).unwrap()));
    }

    #[test]
    fn json_round_trip((q, c) in sample_data()) {
        let e = build(&q, &c, Method::Closed).unwrap();
        let record = DatumRecord::from_cokernel(&c, Some(Method::Closed));
        let text = to_json(&e, Some(&record));
        let (back, rec) = from_json(&text).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(rec.as_ref(), Some(&record));
        prop_assert_eq!(rec.unwrap().to_cokernel(q.spec()).unwrap(), c);
        prop_assert_eq!(to_json(&back, Some(&record)), text);
    }
}
