//! Exact conversion between probabilistic tournament selection and
//! polynomial rank selection.
//!
//! Ranks are 1-based and rank 1 is the fittest individual. All conversions
//! use exact rational arithmetic; floating point appears only in the
//! Monte-Carlo coverage estimate and in the samplers.

pub mod error;
pub mod exactnum;
pub mod geometry;
pub mod sampling;
pub mod schemes;
pub mod selmat;

pub use error::{Error, Result};
pub use exactnum::{Rational, RationalMatrix};
pub use schemes::{
    Conversion, RankPolynomial, Rejection, RejectionKind, Scheme, SelectionPmf, TournamentScheme,
};
pub use selmat::{build_zoo, MatrixZoo};
