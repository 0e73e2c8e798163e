//! Exact arithmetic substrate: fields, matrices, polynomials and Gröbner bases.

pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod local;
pub mod matrix;
pub mod poly;
pub mod solve;
pub mod univariate;

pub use field::{Field, Scalar, DEFAULT_PRIME};
pub use groebner::{eliminate, eliminate_with, groebner, groebner_with, GroebnerConfig, Ideal};
pub use hilbert::hilbert_dim_degree;
pub use local::local_multiplicity;
pub use matrix::{DenseMatrix, RankKernel};
pub use poly::{Monomial, MonomialOrder, MultiPoly, Ring};
pub use solve::{solve, Solutions};
pub use univariate::UniPoly;
