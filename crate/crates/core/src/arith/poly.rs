use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactRational;

/// Scale a rational polynomial (coefficients in ascending degree) to the
/// primitive integer polynomial with positive leading coefficient.
pub fn primitive_integer_poly(coeffs: &[ExactRational]) -> Vec<BigInt> {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = coeffs
        .iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .collect();
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() {
        for c in &mut ints {
            *c /= &content;
        }
    }
    if ints.last().is_some_and(Signed::is_negative) {
        for c in &mut ints {
            *c = -&*c;
        }
    }
    ints
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut divs = vec![BigInt::one()];
    let mut p = BigInt::from(2u32);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            let len = divs.len();
            let mut pk = BigInt::one();
            while (&n % &p).is_zero() {
                n /= &p;
                pk *= &p;
                for i in 0..len {
                    divs.push(&divs[i] * &pk);
                }
            }
        }
        p += 1u32;
    }
    if n > BigInt::one() {
        let len = divs.len();
        for i in 0..len {
            divs.push(&divs[i] * &n);
        }
    }
    divs.sort();
    divs
}

/// Evaluates `q^deg * p(num/q)` exactly in integers.
fn eval_scaled(poly: &[BigInt], num: &BigInt, den: &BigInt) -> BigInt {
    // Horner on the homogenized polynomial
    let deg = poly.len() - 1;
    let mut acc = poly[deg].clone();
    let mut den_pow = BigInt::one();
    for k in (0..deg).rev() {
        den_pow *= den;
        acc = acc * num + &poly[k] * &den_pow;
    }
    acc
}

/// Exact division of an integer polynomial by `den*x - num`.
fn deflate(poly: &[BigInt], num: &BigInt, den: &BigInt) -> Vec<BigInt> {
    let deg = poly.len() - 1;
    let mut quotient = vec![BigInt::zero(); deg];
    let mut carry = BigInt::zero();
    for k in (1..=deg).rev() {
        let coeff = &poly[k] + &carry;
        let q = &coeff / den;
        debug_assert!((&coeff % den).is_zero());
        carry = &q * num;
        quotient[k - 1] = q;
    }
    quotient
}

/// All rational roots, with multiplicity, in ascending order. Coefficients are
/// given in ascending degree; irrational and complex roots are absent.
pub fn rational_roots(coeffs: &[BigInt]) -> Vec<ExactRational> {
    let mut poly: Vec<BigInt> = coeffs.to_vec();
    while poly.last().is_some_and(Zero::is_zero) {
        poly.pop();
    }
    let mut roots = Vec::new();
    if poly.len() < 2 {
        return roots;
    }
    while poly[0].is_zero() {
        roots.push(ExactRational::zero());
        poly.remove(0);
    }
    if poly.len() >= 2 {
        let numerators = positive_divisors(&poly[0]);
        let denominators = positive_divisors(poly.last().unwrap());
        let mut candidates: Vec<ExactRational> = Vec::new();
        for p in &numerators {
            for q in &denominators {
                if p.gcd(q).is_one() {
                    candidates.push(BigRational::new(p.clone(), q.clone()));
                    candidates.push(BigRational::new(-p.clone(), q.clone()));
                }
            }
        }
        for cand in candidates {
            while poly.len() >= 2 && eval_scaled(&poly, cand.numer(), cand.denom()).is_zero() {
                poly = deflate(&poly, cand.numer(), cand.denom());
                roots.push(cand.clone());
            }
        }
    }
    roots.sort();
    roots
}
