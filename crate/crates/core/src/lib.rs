//! Homogeneous cones through T-algebras.
//!
//! The crate is generic over the scalar type ([`Scalar`]): `f64`/`f32`
//! with tolerance-based rank decisions, or exact [`Rational`]s. Concrete
//! aliases for the common backends are exported at the crate root.
//!
//! * [`graph`]: sparsity patterns, trivially perfect recognition and orderings.
//! * [`talgebra`]: generic T-algebras, bigraded elements, triangular
//!   elements, quadratic maps and the axiom suite.
//! * [`cholesky`]: primal and dual generalized Cholesky factorizations and
//!   cone membership.
//! * [`faces`]: face certificates, projections, exposing vectors, conjugate
//!   faces and principal faces.
//! * [`chordal`]: the algebra of a homogeneous chordal pattern and PSD
//!   completion.
//! * [`matrixnorm`]: the matrix-norm-cone algebra.

pub mod cholesky;
pub mod chordal;
pub mod dense;
pub mod error;
pub mod faces;
pub mod graph;
pub mod index_set;
pub mod matrixnorm;
pub mod sampling;
pub mod scalar;
pub mod talgebra;

pub use error::{Error, Result};
pub use graph::{Graph, Ordering};
pub use index_set::IndexSet;
pub use scalar::{Rational, Scalar};
pub use talgebra::{BigradedElement, Shape, TAlgebra, TriangularElement};

pub type TAlgebraF64 = TAlgebra<f64>;
pub type TAlgebraF32 = TAlgebra<f32>;
pub type TAlgebraQ = TAlgebra<Rational>;
pub type ElementF64 = BigradedElement<f64>;
pub type ElementQ = BigradedElement<Rational>;
pub type ChordalAlgebraF64 = chordal::ChordalAlgebra<f64>;
pub type ChordalAlgebraQ = chordal::ChordalAlgebra<Rational>;
pub type FaceCertificateF64 = faces::FaceCertificate<f64>;
pub type FaceCertificateQ = faces::FaceCertificate<Rational>;
