//! Exact arithmetic: rationals, dense rational matrices and the integer
//! sequences (binomials, power sums, Stirling numbers of the first kind)
//! the selection matrices are built from. No floating point is used here
//! except for display.

mod combinatorics;
mod matrix;
mod rational;

pub use combinatorics::{binomial, factorial, power_sum, stirling_first, STIRLING_TABLE_MAX};
pub use matrix::{mat_mul, RationalMatrix};
pub use rational::{
    format_sig, from_bigint, int, parse_rational, ratio, serde_vec, to_decimal_string, to_f64,
    to_fraction_string, Rational,
};
