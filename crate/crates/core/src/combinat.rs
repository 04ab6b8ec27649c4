//! Exact binomials, including the falling-factorial extension to rational and
//! negative upper indices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Ordinary binomial coefficient, zero unless `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Generalized binomial `a(a-1)...(a-k+1)/k!` with integer (possibly negative)
/// upper index; zero for `k < 0`.
pub fn gbinom_int(a: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if a >= 0 {
        return binom(a, k);
    }
    // binom(-b, k) = (-1)^k binom(b + k - 1, k)
    let v = binom(-a + k - 1, k);
    if k % 2 == 0 {
        v
    } else {
        -v
    }
}

/// Generalized binomial with rational upper index.
pub fn gbinom(alpha: &BigRational, k: i64) -> BigRational {
    if k < 0 {
        return BigRational::zero();
    }
    let mut num = BigRational::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= alpha - BigRational::from_integer(BigInt::from(i));
        den *= i + 1;
    }
    num / BigRational::from_integer(den)
}

/// `binom(num/2, k)` for an integer numerator.
pub fn gbinom_half(num: i64, k: i64) -> BigRational {
    gbinom(&BigRational::new(num.into(), 2.into()), k)
}

/// Returns the integer value of `r`, or `None` if it is not integral.
pub fn as_integer(r: &BigRational) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

/// `n!!`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut i = n;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn pow2(k: u32) -> BigInt {
    BigInt::one() << k as usize
}

/// `(-1)^e` as a sign factor.
pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Gcd of the entries of `v` (non-negative; zero for the zero vector).
pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Least common multiple of the denominators in `v`.
pub fn lcm_denominators(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::one(), |l, x| l.lcm(&x.denom().abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_small_values() {
        assert_eq!(binom(5, 2), 10.into());
        assert_eq!(binom(5, 6), 0.into());
        assert_eq!(binom(0, 0), 1.into());
        assert_eq!(binom(-1, 0), 0.into());
    }

    #[test]
    fn generalized_negative_upper() {
        // (-3)(-4)/2 = 6
        assert_eq!(gbinom_int(-3, 2), 6.into());
        assert_eq!(gbinom_int(-1, 3), (-1).into());
        assert_eq!(gbinom_int(2, 5), 0.into());
    }

    #[test]
    fn half_integer_upper() {
        // binom(3/2, 1) = 3/2 and binom(3/2, 2) = 3/8
        assert_eq!(gbinom_half(3, 1), BigRational::new(3.into(), 2.into()));
        assert_eq!(gbinom_half(3, 2), BigRational::new(3.into(), 8.into()));
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(-1), 1.into());
        assert_eq!(double_factorial(7), 105.into());
        assert_eq!(double_factorial(6), 48.into());
    }
}
