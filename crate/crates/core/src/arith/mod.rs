//! Exact integers and rationals, the elementary number theory used by the
//! counting formulas, and exact linear algebra over the rationals.

mod matrix;
mod poly;

pub use matrix::{rank_exact, solve_linear_exact, ExactMatrix};
pub use poly::{primitive_integer_poly, rational_roots};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::error::{Error, Result};

pub type ExactInteger = BigInt;
pub type ExactRational = BigRational;

/// Shorthand for an integral rational.
pub fn rat(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`, reduced.
pub fn ratio(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` as an exact integer.
pub fn pow_u(base: u64, exp: u32) -> ExactInteger {
    Pow::pow(BigInt::from(base), exp)
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

pub fn moebius_mu(n: u64) -> Result<i8> {
    let mut mu = 1i8;
    for (_, e) in factorize(n)? {
        if e > 1 {
            return Ok(0);
        }
        mu = -mu;
    }
    Ok(mu)
}

pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n)? {
        let len = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Jordan totient `J_r(n) = sum_{d | n} mu(d) (n/d)^r`, the number of
/// r-tuples generating a cyclic group of order `n`.
pub fn jordan_totient(r: u32, n: u64) -> Result<ExactInteger> {
    let mut total = BigInt::from(0);
    for d in divisors(n)? {
        match moebius_mu(d)? {
            0 => {}
            1 => total += pow_u(n / d, r),
            _ => total -= pow_u(n / d, r),
        }
    }
    Ok(total)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2
        && factorize(n)
            .map(|f| f.len() == 1 && f[0].1 == 1)
            .unwrap_or(false)
}

/// Exact `x^exp` for a rational `x`.
pub fn rat_pow(x: &ExactRational, exp: u32) -> ExactRational {
    let mut acc = ExactRational::one();
    for _ in 0..exp {
        acc *= x;
    }
    acc
}
