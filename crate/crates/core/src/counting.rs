//! Closed-form counts of extreme correlated equilibria for the example games
//! and the normalized ratio `f(n)`.
//!
//! `e(n) = sum_{r=1}^{n} (1/r) (n!/(n-r)!)^4` and
//! `f(n) = e(n) / ((n!)^4 / n) = sum_{s=0}^{n-1} n/(n-s) / (s!)^4`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

fn falling_factorial(n: u64, r: u64) -> BigInt {
    ((n - r + 1)..=n).fold(BigInt::one(), |acc, v| acc * BigInt::from(v))
}

fn factorial(n: u64) -> BigInt {
    falling_factorial(n, n)
}

/// Exact `e(n)`. The rational sum is checked to reduce to an integer.
pub fn count_extreme_ce(n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Parse("n must be at least 1".into()));
    }
    let total: Rational = (1..=n)
        .map(|r| {
            let ff = falling_factorial(n, r);
            Rational::new(num_traits::pow(ff, 4), BigInt::from(r))
        })
        .sum();
    if !total.is_integer() {
        return Err(Error::Internal(format!(
            "e({n}) = {total} is not an integer"
        )));
    }
    Ok(total.to_integer())
}

/// `(n!)^4 / n`, the last term of the `e(n)` sum.
pub fn leading_term(n: u64) -> Rational {
    Rational::new(num_traits::pow(factorial(n), 4), BigInt::from(n))
}

/// Exact `f(n) = e(n) / ((n!)^4 / n)`.
pub fn f_ratio(n: u64) -> Result<Rational> {
    Ok(Rational::from_integer(count_extreme_ce(n)?) / leading_term(n))
}

/// Term `s` of the `f(n)` sum: `n/(n-s) * 1/(s!)^4`, for `0 <= s < n`.
pub fn f_term(n: u64, s: u64) -> Rational {
    assert!(s < n, "term index out of range");
    Rational::new(
        BigInt::from(n),
        BigInt::from(n - s) * num_traits::pow(factorial(s), 4),
    )
}

/// `f(n)` summed term by term, independent of `e(n)`.
pub fn f_series(n: u64) -> Rational {
    (0..n)
        .map(|s| f_term(n, s))
        .fold(Rational::zero(), |a, b| a + b)
}
