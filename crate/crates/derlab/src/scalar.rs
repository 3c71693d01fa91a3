//! Exact rational scalars.
//!
//! Coefficients are arbitrary-precision rationals kept in lowest terms with a
//! positive denominator; zero is `0/1`. `BigRational` maintains exactly these
//! invariants, and its `Display` prints `p/q` with the `/q` omitted when the
//! denominator is one, which is the canonical textual form used everywhere in
//! this crate.

use num_bigint::BigInt;
pub use num_rational::BigRational as Scalar;

/// Integer scalar.
pub fn scalar(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Rational scalar `n/d`. Panics when `d == 0`.
pub fn scalar_ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}
