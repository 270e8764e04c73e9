//! The canonical quiver of a weight sequence and its representations.
//!
//! Matrix convention: an arrow `α: i → j` stores `M_α: M_j → M_i`, a matrix
//! of shape `dims(i) × dims(j)`. The arm composite is
//! `C = M_{α_1} · … · M_{α_p}`, a map from the top vertex back to `0`.

mod homology;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use homology::{are_isomorphic, euler_form, ext1_dim, hom_basis, is_exceptional, isomorphism_search, IsoVerdict};

use crate::error::{Error, Result};
use crate::field::Rational;
use crate::grading::{GroupElement, WeightSpec};
use crate::matrix::Matrix;

/// A vertex `0 ≤ v ≤ vc` of the canonical quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Zero,
    /// `step · x_arm` with `1 ≤ step ≤ p_arm − 1`.
    Arm {
        arm: usize,
        step: i64,
    },
    Top,
}

impl Vertex {
    /// Identifier used in serialized files: `0`, `j@i`, `c`.
    pub fn id(&self) -> String {
        match self {
            Vertex::Zero => "0".into(),
            Vertex::Arm { arm, step } => format!("{step}@{arm}"),
            Vertex::Top => "c".into(),
        }
    }

    pub fn element(&self, spec: &WeightSpec) -> GroupElement {
        match *self {
            Vertex::Zero => spec.zero(),
            Vertex::Arm { arm, step } => spec.zero().plus_x(arm, step),
            Vertex::Top => spec.vc(),
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// The arrow `α_step^{(arm)}` from `(step−1)·x_arm` to `step·x_arm`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub arm: usize,
    pub step: i64,
    pub source: Vertex,
    pub target: Vertex,
}

impl Arrow {
    pub fn id(&self) -> String {
        format!("a{}@{}", self.step, self.arm)
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// Vertices are ordered `0`, arm 1, arm 2, …, `c`; arrows arm by arm.
#[derive(Clone, Debug)]
pub struct CanonicalQuiver {
    spec: WeightSpec,
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<Vertex, usize>,
    arm_start: Vec<usize>,
}

impl PartialEq for CanonicalQuiver {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for CanonicalQuiver {}

impl CanonicalQuiver {
    pub fn new(spec: &WeightSpec) -> Self {
        let mut vertices = vec![Vertex::Zero];
        let mut arrows = Vec::new();
        let mut arm_start = vec![0];
        for arm in 1..=spec.t() {
            let p = spec.weight(arm);
            vertices.extend((1..p).map(|step| Vertex::Arm { arm, step }));
            for step in 1..=p {
                arrows.push(Arrow {
                    arm,
                    step,
                    source: Self::arm_vertex(p, arm, step - 1),
                    target: Self::arm_vertex(p, arm, step),
                });
            }
            arm_start.push(arrows.len());
        }
        vertices.push(Vertex::Top);
        let vertex_index = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        CanonicalQuiver { spec: spec.clone(), vertices, arrows, vertex_index, arm_start }
    }

    fn arm_vertex(p: i64, arm: usize, step: i64) -> Vertex {
        match step {
            0 => Vertex::Zero,
            s if s == p => Vertex::Top,
            step => Vertex::Arm { arm, step },
        }
    }

    pub fn spec(&self) -> &WeightSpec {
        &self.spec
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_relations(&self) -> usize {
        self.spec.t() - 2
    }

    /// The vertex `step · x_arm` for `0 ≤ step ≤ p_arm`.
    pub fn vertex(&self, arm: usize, step: i64) -> Vertex {
        Self::arm_vertex(self.spec.weight(arm), arm, step)
    }

    pub fn index_of(&self, v: Vertex) -> usize {
        self.vertex_index[&v]
    }

    pub fn find_vertex(&self, id: &str) -> Option<Vertex> {
        self.vertices.iter().copied().find(|v| v.id() == id)
    }

    /// Index of `α_step^{(arm)}` in the arrow list.
    pub fn arrow_index(&self, arm: usize, step: i64) -> usize {
        debug_assert!(step >= 1 && step <= self.spec.weight(arm));
        self.arm_start[arm - 1] + step as usize - 1
    }

    /// Arrow indices `α_1, …, α_p` of one arm.
    pub fn arm_arrows(&self, arm: usize) -> std::ops::Range<usize> {
        self.arm_start[arm - 1]..self.arm_start[arm]
    }

    pub fn source_index(&self, arrow: usize) -> usize {
        self.index_of(self.arrows[arrow].source)
    }

    pub fn target_index(&self, arrow: usize) -> usize {
        self.index_of(self.arrows[arrow].target)
    }
}

/// A representation of the canonical quiver over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Representation {
    quiver: Arc<CanonicalQuiver>,
    dims: Vec<usize>,
    mats: Vec<Matrix>,
}

impl Representation {
    /// Checks shapes; relations are checked by [`Representation::validate`].
    pub fn new(quiver: Arc<CanonicalQuiver>, dims: Vec<usize>, mats: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.vertices().len() {
            return Err(Error::LengthMismatch { expected: quiver.vertices().len(), got: dims.len() });
        }
        if mats.len() != quiver.arrows().len() {
            return Err(Error::LengthMismatch { expected: quiver.arrows().len(), got: mats.len() });
        }
        let rep = Representation { quiver, dims, mats };
        rep.check_shapes()?;
        Ok(rep)
    }

    pub fn zero(quiver: Arc<CanonicalQuiver>) -> Self {
        let dims = vec![0; quiver.vertices().len()];
        let mats = vec![Matrix::zeros(0, 0); quiver.arrows().len()];
        Representation { quiver, dims, mats }
    }

    pub fn quiver(&self) -> &Arc<CanonicalQuiver> {
        &self.quiver
    }

    pub fn spec(&self) -> &WeightSpec {
        self.quiver.spec()
    }

    pub fn dim_vector(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: Vertex) -> usize {
        self.dims[self.quiver.index_of(v)]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn matrix(&self, arm: usize, step: i64) -> &Matrix {
        &self.mats[self.quiver.arrow_index(arm, step)]
    }

    /// Replaces one arrow matrix, keeping shapes consistent.
    pub fn set_matrix(&mut self, arrow: usize, m: Matrix) -> Result<()> {
        let expected = self.expected_shape(arrow);
        if m.shape() != expected {
            return Err(Error::ShapeMismatch { arrow: self.quiver.arrows()[arrow].id(), expected, got: m.shape() });
        }
        self.mats[arrow] = m;
        Ok(())
    }

    fn expected_shape(&self, arrow: usize) -> (usize, usize) {
        (self.dims[self.quiver.source_index(arrow)], self.dims[self.quiver.target_index(arrow)])
    }

    fn check_shapes(&self) -> Result<()> {
        for (k, m) in self.mats.iter().enumerate() {
            let expected = self.expected_shape(k);
            if m.shape() != expected {
                return Err(Error::ShapeMismatch { arrow: self.quiver.arrows()[k].id(), expected, got: m.shape() });
            }
        }
        Ok(())
    }

    /// `M_{α_1} · … · M_{α_p}` along one arm.
    pub fn arm_composite(&self, arm: usize) -> Matrix {
        let mut range = self.quiver.arm_arrows(arm);
        let first = range.next().expect("arms have at least one arrow");
        range.fold(self.mats[first].clone(), |acc, k| &acc * &self.mats[k])
    }

    /// Shape check plus the exact relations `C_i = C_1 + λ_i C_2`, reporting
    /// the first failure.
    pub fn validate(&self) -> Result<()> {
        self.check_shapes()?;
        let c1 = self.arm_composite(1);
        let c2 = self.arm_composite(2);
        for i in 3..=self.spec().t() {
            let rhs = &c1 + &c2.scale(self.spec().lambda(i));
            if self.arm_composite(i) != rhs {
                return Err(Error::RelationViolated(i));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// `dim M_0 − dim M_vc`.
    pub fn rank(&self) -> i64 {
        self.dim(Vertex::Zero) as i64 - self.dim(Vertex::Top) as i64
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if self.quiver != other.quiver {
            return Err(Error::SpecMismatch);
        }
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| Matrix::block_diag(&[a, b])).collect();
        Ok(Representation { quiver: self.quiver.clone(), dims, mats })
    }

    /// The isomorphic representation `N` with `N_α = φ_i M_α φ_j^{-1}` for
    /// invertible vertex maps `φ`.
    pub fn base_change(&self, phi: &[Matrix]) -> Result<Representation> {
        let inv: Vec<Matrix> = phi
            .iter()
            .enumerate()
            .map(|(v, m)| {
                m.inverse()
                    .filter(|_| m.rows() == self.dims[v])
                    .ok_or_else(|| Error::NotInjective(self.quiver.vertices()[v].id()))
            })
            .collect::<Result<_>>()?;
        let mats = (0..self.mats.len())
            .map(|k| {
                let (i, j) = (self.quiver.source_index(k), self.quiver.target_index(k));
                &(&phi[i] * &self.mats[k]) * &inv[j]
            })
            .collect();
        Representation::new(self.quiver.clone(), self.dims.clone(), mats)
    }

    /// Whether every matrix entry lies in `allowed`.
    pub fn entry_audit(&self, allowed: &[Rational]) -> bool {
        self.mats.iter().flat_map(|m| m.entries()).all(|e| allowed.contains(e))
    }

    /// Entries outside `allowed`, each reported once, in arrow order.
    pub fn entries_outside(&self, allowed: &[Rational]) -> Vec<(String, Rational)> {
        let mut out: Vec<(String, Rational)> = Vec::new();
        for (k, m) in self.mats.iter().enumerate() {
            for e in m.entries() {
                if !allowed.contains(e) && !out.iter().any(|(_, x)| x == e) {
                    out.push((self.quiver.arrows()[k].id(), e.clone()));
                }
            }
        }
        out
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Representation {:?} dims {:?}", self.spec(), self.dims)?;
        for (a, m) in self.quiver.arrows().iter().zip(&self.mats) {
            if !(m.is_identity() || m.rows() == 0 || m.cols() == 0) {
                writeln!(f, "  {a}: {m:?}")?;
            }
        }
        Ok(())
    }
}

/// The entries allowed in the closed forms: `0`, `±1` and `±λ_i`.
pub fn coefficient_set(spec: &WeightSpec) -> Vec<Rational> {
    let mut out = vec![Rational::zero(), Rational::one(), -Rational::one()];
    for l in spec.lambdas() {
        for v in [l.clone(), -l] {
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

/// A family of vertex maps `f_v: M_v → N_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    maps: Vec<Matrix>,
}

impl Morphism {
    pub fn new(maps: Vec<Matrix>) -> Self {
        Morphism { maps }
    }

    pub fn identity(m: &Representation) -> Self {
        Morphism { maps: m.dims.iter().map(|&d| Matrix::identity(d)).collect() }
    }

    pub fn zero(m: &Representation, n: &Representation) -> Self {
        Morphism { maps: m.dims.iter().zip(&n.dims).map(|(&a, &b)| Matrix::zeros(b, a)).collect() }
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, v: usize) -> &Matrix {
        &self.maps[v]
    }

    /// Checks shapes and `f_i M_α = N_α f_j` for every arrow `α: i → j`.
    pub fn check(&self, m: &Representation, n: &Representation) -> Result<()> {
        if m.quiver != n.quiver {
            return Err(Error::SpecMismatch);
        }
        let q = &m.quiver;
        if self.maps.len() != q.vertices().len() {
            return Err(Error::LengthMismatch { expected: q.vertices().len(), got: self.maps.len() });
        }
        for (v, f) in self.maps.iter().enumerate() {
            if f.shape() != (n.dims[v], m.dims[v]) {
                return Err(Error::ShapeMismatch {
                    arrow: format!("vertex {}", q.vertices()[v]),
                    expected: (n.dims[v], m.dims[v]),
                    got: f.shape(),
                });
            }
        }
        for k in 0..q.arrows().len() {
            let (i, j) = (q.source_index(k), q.target_index(k));
            if &self.maps[i] * &m.mats[k] != &n.mats[k] * &self.maps[j] {
                return Err(Error::NotAMorphism(q.arrows()[k].id()));
            }
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Morphism) -> Morphism {
        Morphism { maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a * b).collect() }
    }

    pub fn scale(&self, s: &Rational) -> Morphism {
        Morphism { maps: self.maps.iter().map(|m| m.scale(s)).collect() }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        Morphism { maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a + b).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(Matrix::has_full_column_rank)
    }

    pub fn is_invertible(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }

    /// `Σ c_k B_k` over a family of morphisms with equal shapes.
    pub fn combination(basis: &[Morphism], coeffs: &[Rational]) -> Morphism {
        let mut out = basis[0].scale(&coeffs[0]);
        for (b, c) in basis.iter().zip(coeffs).skip(1) {
            if !c.is_zero() {
                out = out.add(&b.scale(c));
            }
        }
        out
    }

    /// Vertical stack `[f_1; f_2; …]` of morphisms out of the same source.
    pub fn stack(parts: &[Morphism]) -> Morphism {
        let n = parts[0].maps.len();
        let maps = (0..n)
            .map(|v| {
                let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.maps[v]).collect();
                Matrix::vstack(blocks[0].cols(), &blocks)
            })
            .collect();
        Morphism { maps }
    }
}
