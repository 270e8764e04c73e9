//! The rank-one grading group L(p) and graded pieces of its coordinate algebra.
//!
//! Elements are kept in normal form `a·vc + Σ a_i·x_i` with `0 ≤ a_i < p_i`.
//! Arms are numbered from 1 as in the weight sequence.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Rational;

/// Weight sequence `p = (p_1, …, p_t)` with parameters `λ_3, …, λ_t`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightSpec {
    weights: Arc<[i64]>,
    lambdas: Vec<Rational>,
}

impl WeightSpec {
    /// Parameters default to `λ_3 = 1` and `λ_i = i − 2` for `i ≥ 4`.
    pub fn new(weights: Vec<i64>, lambdas: Option<Vec<Rational>>) -> Result<Self> {
        let t = weights.len();
        if t < 3 {
            return Err(Error::InvalidWeights(format!("need at least 3 weights, got {t}")));
        }
        if let Some(p) = weights.iter().find(|&&p| p < 2) {
            return Err(Error::InvalidWeights(format!("weight {p} is smaller than 2")));
        }
        let lambdas = match lambdas {
            None => (3..=t as i64).map(|i| Rational::from_int(if i == 3 { 1 } else { i - 2 })).collect(),
            Some(l) => l,
        };
        if lambdas.len() != t - 2 {
            return Err(Error::InvalidLambdas(format!(
                "expected {} parameters for {t} weights, got {}",
                t - 2,
                lambdas.len()
            )));
        }
        if !lambdas[0].is_one() {
            return Err(Error::InvalidLambdas("λ_3 must be 1".into()));
        }
        for (k, l) in lambdas.iter().enumerate() {
            if l.is_zero() {
                return Err(Error::InvalidLambdas(format!("λ_{} is zero", k + 3)));
            }
            if lambdas[..k].contains(l) {
                return Err(Error::InvalidLambdas(format!("λ_{} repeats an earlier value", k + 3)));
            }
        }
        Ok(WeightSpec { weights: weights.into(), lambdas })
    }

    pub fn with_weights(weights: &[i64]) -> Result<Self> {
        Self::new(weights.to_vec(), None)
    }

    pub fn t(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// Weight of arm `i` (1-based).
    pub fn weight(&self, arm: usize) -> i64 {
        self.weights[arm - 1]
    }

    /// `λ_i` for `3 ≤ i ≤ t`.
    pub fn lambda(&self, arm: usize) -> &Rational {
        assert!(arm >= 3 && arm <= self.t(), "no parameter for arm {arm}");
        &self.lambdas[arm - 3]
    }

    pub fn lambdas(&self) -> &[Rational] {
        &self.lambdas
    }

    /// Normal form of `c·vc + Σ e_i·x_i`.
    pub fn element(&self, c: i64, e: &[i64]) -> Result<GroupElement> {
        if e.len() != self.t() {
            return Err(Error::LengthMismatch { expected: self.t(), got: e.len() });
        }
        Ok(GroupElement::normalize(self.weights.clone(), c, e.to_vec()))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { weights: self.weights.clone(), a: 0, coeffs: vec![0; self.t()] }
    }

    pub fn vc(&self) -> GroupElement {
        self.zero().plus_vc(1)
    }

    pub fn x(&self, arm: usize) -> GroupElement {
        self.zero().plus_x(arm, 1)
    }

    pub fn vw(&self) -> GroupElement {
        self.zero().vw()
    }

    pub fn vdom(&self) -> GroupElement {
        self.zero().vdom()
    }

    /// `(vc, vw, vdom)`.
    pub fn structure_elements(&self) -> (GroupElement, GroupElement, GroupElement) {
        (self.vc(), self.vw(), self.vdom())
    }

    /// Parses the literal `a;a1,…,at`, optionally in angle brackets.
    /// Coefficients need not be reduced.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let bad = || Error::Parse(format!("invalid element literal `{s}` (expected `a;a1,...,at`)"));
        let body = s.trim().trim_start_matches(['⟨', '<']).trim_end_matches(['⟩', '>']);
        let (head, tail) = body.split_once(';').ok_or_else(bad)?;
        let c: i64 = head.trim().parse().map_err(|_| bad())?;
        let e = tail.split(',').map(|v| v.trim().parse::<i64>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
        self.element(c, &e)
    }

    pub fn same_weights(&self, x: &GroupElement) -> bool {
        *self.weights == *x.weights
    }
}

impl fmt::Debug for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightSpec({:?}, λ = {:?})", &*self.weights, self.lambdas)
    }
}

/// An element of L(p) in normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    weights: Arc<[i64]>,
    a: i64,
    coeffs: Vec<i64>,
}

impl GroupElement {
    fn normalize(weights: Arc<[i64]>, c: i64, mut e: Vec<i64>) -> Self {
        let mut a = c;
        for (ei, &p) in e.iter_mut().zip(weights.iter()) {
            a += ei.div_euclid(p);
            *ei = ei.rem_euclid(p);
        }
        GroupElement { weights, a, coeffs: e }
    }

    /// Coefficient of `vc` in normal form.
    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Normal-form coefficient of `x_arm` (1-based).
    pub fn coeff(&self, arm: usize) -> i64 {
        self.coeffs[arm - 1]
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn t(&self) -> usize {
        self.weights.len()
    }

    fn same_group(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.weights, &other.weights) || *self.weights == *other.weights
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if !self.same_group(other) {
            return Err(Error::SpecMismatch);
        }
        let e = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y).collect();
        Ok(Self::normalize(self.weights.clone(), self.a + other.a, e))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        let e = self.coeffs.iter().map(|x| -x).collect();
        Self::normalize(self.weights.clone(), -self.a, e)
    }

    /// `self + k·x_arm`.
    pub fn plus_x(&self, arm: usize, k: i64) -> Self {
        let mut e = self.coeffs.clone();
        e[arm - 1] += k;
        Self::normalize(self.weights.clone(), self.a, e)
    }

    /// `self + k·vc`.
    pub fn plus_vc(&self, k: i64) -> Self {
        GroupElement { a: self.a + k, ..self.clone() }
    }

    /// `self + vw`, where `vw = (t−2)·vc − Σ x_i`.
    pub fn vw(&self) -> Self {
        let t = self.t() as i64;
        let e = self.coeffs.iter().map(|x| x - 1).collect();
        Self::normalize(self.weights.clone(), self.a + t - 2, e)
    }

    /// `self + vdom`, where `vdom = (t−3)·vc + Σ (p_i − 2)·x_i`.
    pub fn vdom(&self) -> Self {
        let t = self.t() as i64;
        let e = self.coeffs.iter().zip(self.weights.iter()).map(|(x, p)| x + p - 2).collect();
        Self::normalize(self.weights.clone(), self.a + t - 3, e)
    }

    /// The identity of the same group.
    pub fn zero_like(&self) -> Self {
        GroupElement { weights: self.weights.clone(), a: 0, coeffs: vec![0; self.t()] }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.coeffs.iter().all(|&c| c == 0)
    }

    /// Membership in `L_+ = Σ N·x_i`.
    pub fn is_effective(&self) -> bool {
        self.a >= 0
    }

    /// `self ≤ other` in the effectiveness order.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        Ok(other.try_sub(self)?.is_effective())
    }

    /// `dim_k S_z`: the number of monomials of degree `z`.
    pub fn graded_dim(&self) -> usize {
        if self.a >= 0 {
            self.a as usize + 1
        } else {
            0
        }
    }

    /// Exponent tuples `(e1, e2, c3, …, ct)` with `c_i < p_i` whose monomial
    /// `x1^e1 x2^e2 Π x_i^c_i` has degree `z`, found by exhaustive search.
    pub fn monomial_basis(&self) -> Vec<Vec<i64>> {
        let w = &self.weights;
        let t = w.len();
        let reach = (self.a + 1).max(0);
        let mut bounds = vec![w[0] * reach, w[1] * reach];
        bounds.extend(w[2..].iter().map(|p| p - 1));

        let mut out = Vec::new();
        let mut cur = vec![0i64; t];
        loop {
            let deg = Self::normalize(w.clone(), 0, cur.clone());
            if deg == *self {
                out.push(cur.clone());
            }
            // odometer, last position fastest
            let mut k = t;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if cur[k] < bounds[k] {
                    cur[k] += 1;
                    break;
                }
                cur[k] = 0;
            }
        }
    }
}

impl Add for &GroupElement {
    type Output = GroupElement;
    /// Panics if the operands come from different weight types; use
    /// [`GroupElement::try_add`] for a checked version.
    fn add(self, rhs: &GroupElement) -> GroupElement {
        self.try_add(rhs).expect("group elements from different weight types")
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: &GroupElement) -> GroupElement {
        self.try_sub(rhs).expect("group elements from different weight types")
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        self.negate()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.a)?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{self}⟩")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s237() -> WeightSpec {
        WeightSpec::with_weights(&[2, 3, 7]).unwrap()
    }

    fn lit(s: &WeightSpec, l: &str) -> GroupElement {
        s.parse_element(l).unwrap()
    }

    #[test]
    fn make_element_examples() {
        let s = s237();
        assert_eq!(s.element(1, &[-1, -1, -1]).unwrap(), lit(&s, "-2;1,2,6"));
        assert_eq!(s.element(1, &[-1, -1, -1]).unwrap(), s.vw());
        assert_eq!(s.element(0, &[0, 0, 0]).unwrap(), s.zero());
        assert_eq!(s.element(0, &[2, 3, 7]).unwrap(), lit(&s, "3;0,0,0"));
        assert_eq!(s.element(0, &[1, 2]).unwrap_err(), Error::LengthMismatch { expected: 3, got: 2 });
    }

    #[test]
    fn add_and_negate_examples() {
        let s = s237();
        assert_eq!(&lit(&s, "0;1,2,6") + &lit(&s, "0;1,1,1"), lit(&s, "3;0,0,0"));
        let x = lit(&s, "4;1,0,3");
        assert_eq!(&x + &s.zero(), x);
        assert_eq!(lit(&s, "1;0,0,0").negate(), lit(&s, "-1;0,0,0"));
        let other = WeightSpec::with_weights(&[2, 3, 8]).unwrap();
        assert_eq!(x.try_add(&other.vc()).unwrap_err(), Error::SpecMismatch);
        assert_eq!(x.leq(&other.vc()).unwrap_err(), Error::SpecMismatch);
    }

    #[test]
    fn order_examples() {
        let s = s237();
        assert!(!s.vw().is_effective());
        assert!(s.zero().is_effective());
        for w in [&[2, 3, 7][..], &[2, 2, 2, 3], &[3, 3, 4], &[2, 2, 2, 2, 2]] {
            let s = WeightSpec::with_weights(w).unwrap();
            assert!(s.zero().leq(&s.vdom()).unwrap());
        }
    }

    #[test]
    fn structure_elements_examples() {
        let s = s237();
        let (vc, vw, vdom) = s.structure_elements();
        assert_eq!(vc, lit(&s, "1;0,0,0"));
        assert_eq!(vw, lit(&s, "-2;1,2,6"));
        assert_eq!(vdom, lit(&s, "0;0,1,5"));
        let s4 = WeightSpec::with_weights(&[2, 2, 2, 3]).unwrap();
        assert_eq!(s4.vdom(), lit(&s4, "1;0,0,0,1"));
        for w in [&[2, 3, 7][..], &[2, 2, 2, 3], &[3, 3, 4], &[5, 2, 3, 3, 2]] {
            let s = WeightSpec::with_weights(w).unwrap();
            assert_eq!(&(&s.vw() + &s.vw()) + &s.vc(), s.vdom());
        }
    }

    #[test]
    fn graded_dim_and_monomials() {
        let s = s237();
        assert_eq!(s.zero().graded_dim(), 1);
        assert_eq!(s.vc().graded_dim(), 2);
        assert_eq!(s.vw().graded_dim(), 0);
        assert_eq!(s.zero().monomial_basis(), vec![vec![0, 0, 0]]);
        assert_eq!(s.vc().monomial_basis(), vec![vec![0, 3, 0], vec![2, 0, 0]]);
        assert!(lit(&s, "-1;1,2,3").monomial_basis().is_empty());
    }

    #[test]
    fn weight_validation() {
        assert!(WeightSpec::with_weights(&[2, 2]).is_err());
        assert!(WeightSpec::with_weights(&[2, 1, 3]).is_err());
        let l = |v: &[i64]| Some(v.iter().map(|&x| Rational::from_int(x)).collect());
        assert!(WeightSpec::new(vec![2, 2, 2, 2], l(&[1, 1])).is_err());
        assert!(WeightSpec::new(vec![2, 2, 2, 2], l(&[2, 3])).is_err());
        assert!(WeightSpec::new(vec![2, 2, 2, 2], l(&[1, 0])).is_err());
        assert!(WeightSpec::new(vec![2, 2, 2, 2], l(&[1])).is_err());
        assert!(WeightSpec::new(vec![2, 2, 2, 2], l(&[1, 5])).is_ok());
        assert!(s237().parse_element("1;2").is_err());
        assert!(s237().parse_element("1,2,3").is_err());
        assert_eq!(s237().parse_element("⟨0;0,1,5⟩"), Ok(s237().vdom()));
    }

    fn weights() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(2i64..6, 3..6)
    }

    fn element(w: Vec<i64>) -> impl Strategy<Value = (WeightSpec, GroupElement)> {
        let t = w.len();
        (-4i64..5, prop::collection::vec(-10i64..10, t)).prop_map(move |(c, e)| {
            let s = WeightSpec::with_weights(&w).unwrap();
            let x = s.element(c, &e).unwrap();
            (s, x)
        })
    }

    proptest! {
        #[test]
        fn normal_form_idempotent(w in weights(), c in -5i64..5, e in prop::collection::vec(-20i64..20, 5)) {
            let s = WeightSpec::with_weights(&w).unwrap();
            let x = s.element(c, &e[..w.len()]).unwrap();
            prop_assert_eq!(s.element(x.a(), x.coeffs()).unwrap(), x.clone());
            for (k, &p) in w.iter().enumerate() {
                prop_assert!(x.coeffs()[k] >= 0 && x.coeffs()[k] < p);
                prop_assert_eq!(s.zero().plus_x(k + 1, p), s.vc());
            }
        }

        #[test]
        fn group_axioms(w in weights(), seed in prop::collection::vec((-4i64..5, prop::collection::vec(-10i64..10, 5)), 3)) {
            let s = WeightSpec::with_weights(&w).unwrap();
            let t = w.len();
            let el: Vec<_> = seed.iter().map(|(c, e)| s.element(*c, &e[..t]).unwrap()).collect();
            let (x, y, z) = (&el[0], &el[1], &el[2]);
            prop_assert_eq!(&(x + y) + z, x + &(y + z));
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!(x + &x.negate(), s.zero());
            if x.leq(y).unwrap() && y.leq(z).unwrap() {
                prop_assert!(x.leq(z).unwrap());
            }
            if x.leq(y).unwrap() {
                prop_assert!((x + z).leq(&(y + z)).unwrap());
            }
        }

        #[test]
        fn monomial_count_matches((_s, x) in weights().prop_flat_map(element)) {
            prop_assert_eq!(x.monomial_basis().len(), x.graded_dim());
        }
    }
}
