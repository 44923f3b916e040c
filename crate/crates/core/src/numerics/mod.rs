//! Exact arithmetic substrate: big integers and rationals, the handful of
//! combinatorial numbers the rest of the crate needs, and truncated power
//! series over the rationals.

mod combinatorics;
mod series;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use combinatorics::{binomial, factorial, raising_factorial, stirling2};
pub use series::RationalSeries;

/// Default truncation order for generating-function work.
pub const DEFAULT_SERIES_ORDER: usize = 10;

/// Renders a rational in lowest terms as `p/q`, or `p` when `q = 1`.
pub fn format_rational(value: &BigRational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[cfg(test)]
pub(crate) fn rat(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}
