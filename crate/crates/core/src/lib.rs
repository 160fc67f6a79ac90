//! Exact solver for one-variable functional identities on finite-dimensional
//! triangular algebras over the rationals.
//!
//! An identity such as `Psi(X^3) = g*X^2*Omega(X) = g*Omega(X)*X^2` is parsed
//! ([`dsl`]), compiled into a homogeneous linear system in the entries of the
//! unknown maps by polarization ([`engine`]) and solved exactly ([`linalg`]).
//! The resulting solution spaces are compared with the spaces of two-sided
//! centralizers and generalized derivations, and [`replay`] re-checks every
//! intermediate equation of the classical argument on the concrete solutions.

pub mod algebra;
pub mod dsl;
pub mod engine;
pub mod error;
pub mod io;
pub mod linalg;
pub mod replay;
pub mod sample;
pub mod triangular;

pub use algebra::{classify_map, Algebra, ClassificationReport, Element, LinearMap, Side};
pub use error::{Error, Result};
pub use linalg::{Matrix, Rational, Subspace, SubspaceRelation};
pub use triangular::{build_triangular, Bimodule, TriangularAlgebra};
