//! Exact arithmetic helpers: every inequality between a group order and a
//! power of two is decided by big-integer comparison, never floating point.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Smallest k such that x ≤ 2^k (x ≥ 1).
fn ceil_lg(x: &BigUint) -> u64 {
    debug_assert!(!x.is_zero());
    let bits = x.bits();
    if x.count_ones() == 1 {
        bits - 1
    } else {
        bits
    }
}

/// Decides x ≤ 2^{c·n} exactly, for a nonnegative rational c.
pub fn le_2_pow(x: &BigUint, c: &BigRational, n: usize) -> bool {
    if x.is_zero() {
        return true;
    }
    assert!(!c.is_negative());
    let num = c.numer().to_biguint().expect("nonnegative");
    let denom = c.denom().to_u32().expect("denominator fits u32");
    let exponent = (num * BigUint::from(n)).to_u64().expect("exponent fits u64");
    let lhs = x.pow(denom);
    ceil_lg(&lhs) <= exponent
}

/// Smallest multiple of 1/scale that is ≥ lg(x), for x ≥ 1.
pub fn lg_upper(x: &BigUint, scale: u32) -> BigRational {
    assert!(!x.is_zero());
    if x.is_one() {
        return BigRational::zero();
    }
    let k = ceil_lg(&x.pow(scale));
    BigRational::new(BigInt::from(k), BigInt::from(scale))
}

/// Largest multiple of 1/scale that is ≤ lg(x), for x ≥ 1.
pub fn lg_lower(x: &BigUint, scale: u32) -> BigRational {
    assert!(!x.is_zero());
    let k = x.pow(scale).bits() - 1;
    BigRational::new(BigInt::from(k), BigInt::from(scale))
}

/// n! as a big integer.
pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}
