//! Directed rational bounds for irrational roots of rationals.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Floor of the real n-th root of a nonnegative integer.
fn iroot_floor(v: &BigInt, n: u32) -> BigInt {
    debug_assert!(!v.is_negative());
    let u: BigUint = v.magnitude().clone();
    BigInt::from_biguint(Sign::Plus, u.nth_root(n))
}

/// Smallest dyadic `k / 2^bits` whose n-th power is `>= v`. Exact when `v`
/// is the n-th power of such a dyadic.
pub fn nth_root_upper(v: &BigRational, n: u32, bits: u32) -> BigRational {
    assert!(!v.is_negative() && n >= 1);
    if v.is_zero() {
        return BigRational::zero();
    }
    let scale = BigInt::one() << (bits as usize * n as usize);
    // want smallest k with k^n * den >= num * 2^(n bits)
    let target = v.numer() * &scale;
    let den = v.denom();
    let mut k = iroot_floor(&(&target / den), n);
    while k.pow(n) * den < target {
        k += 1;
    }
    BigRational::new(k, BigInt::one() << bits as usize)
}

/// Largest dyadic `k / 2^bits` whose n-th power is `<= v`.
pub fn nth_root_lower(v: &BigRational, n: u32, bits: u32) -> BigRational {
    assert!(!v.is_negative() && n >= 1);
    let scale = BigInt::one() << (bits as usize * n as usize);
    let target = v.numer() * &scale;
    let den = v.denom();
    let mut k = iroot_floor(&(&target / den), n);
    while k.pow(n) * den > target {
        k -= 1;
    }
    BigRational::new(k, BigInt::one() << bits as usize)
}

/// Floor of sqrt of a nonnegative rational.
pub fn isqrt_floor(v: &BigRational) -> BigInt {
    iroot_floor(&v.floor().to_integer(), 2)
}

pub fn pow(q: &BigRational, e: u32) -> BigRational {
    num_traits::pow(q.clone(), e as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exact_powers_are_exact() {
        let r = nth_root_upper(&q(8, 27), 3, 10);
        assert!(r >= q(2, 3) && r - q(2, 3) < q(1, 1024));
        assert_eq!(nth_root_upper(&q(1, 1), 5, 64), q(1, 1));
        assert_eq!(nth_root_upper(&q(1, 4), 2, 8), q(1, 2));
        assert_eq!(nth_root_lower(&q(16, 1), 4, 3), q(2, 1));
    }

    #[test]
    fn sqrt_two_brackets() {
        let up = nth_root_upper(&q(2, 1), 2, 40);
        let lo = nth_root_lower(&q(2, 1), 2, 40);
        assert!(pow(&up, 2) >= q(2, 1));
        assert!(pow(&lo, 2) <= q(2, 1));
        assert_eq!(
            &up - &lo,
            q(1, 1) / BigRational::from_integer(BigInt::one() << 40usize)
        );
    }

    #[test]
    fn floor_sqrt() {
        assert_eq!(isqrt_floor(&q(4096, 1728)), BigInt::from(1));
        assert_eq!(isqrt_floor(&q(99, 1)), BigInt::from(9));
        assert_eq!(isqrt_floor(&q(100, 1)), BigInt::from(10));
    }

    proptest! {
        #[test]
        fn root_bounds_bracket(num in 0i64..1_000_000, den in 1i64..10_000, n in 1u32..6, bits in 0u32..40) {
            let v = q(num, den);
            let up = nth_root_upper(&v, n, bits);
            let lo = nth_root_lower(&v, n, bits);
            prop_assert!(pow(&up, n) >= v);
            prop_assert!(pow(&lo, n) <= v);
            let ulp = BigRational::new(BigInt::one(), BigInt::one() << bits as usize);
            prop_assert!(&up - &lo <= ulp);
        }
    }
}
