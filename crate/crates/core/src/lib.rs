//! Exact matrix representations of extension modules over canonical algebras.
//!
//! The crate covers the grading group `L(p)` and graded dimensions
//! ([`grading`]), Hom/Ext calculus for line bundles and extension data
//! ([`sheaf`]), representations of the canonical quiver with Hom and Ext¹
//! computations ([`quiver`]), the constructions of extension modules as
//! cokernels or by closed formulas ([`builder`]), serialization ([`io`]) and
//! verification reports ([`verify`]).

pub mod builder;
pub mod error;
pub mod field;
pub mod grading;
pub mod io;
pub mod matrix;
pub mod quiver;
pub mod sheaf;
pub mod sparse;
pub mod verify;

pub use builder::{build, classify, reduce, CaseLabel, Method};
pub use error::{Error, Result};
pub use field::Rational;
pub use grading::{GroupElement, WeightSpec};
pub use matrix::Matrix;
pub use quiver::{CanonicalQuiver, Morphism, Representation, Vertex};
pub use sheaf::{CokernelDatum, ExtensionDatum};
