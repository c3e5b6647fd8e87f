//! Exact arithmetic: sparse multivariate polynomials over ℚ, factored
//! rational functions, and truncated Laurent series at infinity.

mod frac;
mod poly;
mod series;
mod var;

pub use frac::{fraction_eq, Frac};
pub use poly::{split_by_legs, Mono, Poly};
pub use series::{ps_exp, ps_log, ps_mul, PowerSeries, Series};
pub use var::{Spectral, Var};

/// Coefficient field.
pub type Q = num_rational::BigRational;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `n` as a rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `n / d` as a rational.
pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Q {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Q::from_integer(acc)
}

/// Binomial coefficient `C(n, k)` as a rational (zero outside `0 ≤ k ≤ n`).
pub fn binomial(n: i64, k: i64) -> Q {
    if k < 0 || n < 0 || k > n {
        return Q::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Q::from_integer(acc)
}

/// Canonical `p/q` text of a rational (`p` alone when the denominator is 1).
pub fn fmt_q(c: &Q) -> alloc::string::String {
    use alloc::string::ToString;
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        alloc::format!("{}/{}", c.numer(), c.denom())
    }
}
