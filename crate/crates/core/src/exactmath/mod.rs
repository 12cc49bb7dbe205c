//! Exact arithmetic: arbitrary-precision rationals and the cyclotomic field
//! `Q(ζ_p)` for an odd prime `p`.

mod cyclotomic;
mod lefschetz;

pub use cyclotomic::CyclotomicNumber;
pub use lefschetz::{
    lefschetz_coefficient, lefschetz_coefficients, trace_identity_sides, verify_trace_identity,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn is_integral(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Rational value as `i64` if it is an integer that fits.
pub fn to_i64(x: &Rational) -> Option<i64> {
    if is_integral(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

/// `⌊x⌋` as an `i64`.
pub fn floor_i64(x: &Rational) -> i64 {
    x.floor()
        .to_integer()
        .to_i64()
        .expect("floor does not fit in i64")
}

/// Reduce `x` into `[0, modulus)`.
pub fn reduce_mod(x: &Rational, modulus: &Rational) -> Rational {
    let q = (x / modulus).floor();
    x - q * modulus
}

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn check_odd_prime(p: u32) -> Result<()> {
    if is_odd_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p as u64))
    }
}

/// Inverse of `a` modulo `m`, in `1..m`.
pub fn inverse_mod(a: i64, m: i64) -> Result<i64> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    if m < 2 || !e.gcd.abs().is_one() {
        return Err(Error::NotAUnit {
            residue: a,
            modulus: m,
        });
    }
    Ok(e.x.rem_euclid(m))
}

pub(crate) fn fmt_rational(x: &Rational) -> String {
    if x.is_zero() {
        "0".into()
    } else if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floors_negative_fractions_downward() {
        assert_eq!(floor_i64(&rat(-3, 7)), -1);
        assert_eq!(floor_i64(&rat(36, 7)), 5);
        assert_eq!(floor_i64(&int(-2)), -2);
    }

    #[test]
    fn rationals_are_normalized() {
        let x = rat(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(inverse_mod(3, 7).unwrap(), 5);
        assert_eq!(inverse_mod(-1, 7).unwrap(), 6);
        assert!(inverse_mod(2, 4).is_err());
    }

    #[test]
    fn reduce_into_half_open_interval() {
        assert_eq!(reduce_mod(&rat(-3, 7), &int(2)), rat(11, 7));
        assert_eq!(reduce_mod(&rat(9, 4), &int(1)), rat(1, 4));
    }

    #[test]
    fn odd_primes() {
        let primes: Vec<u64> = (0..30).filter(|&p| is_odd_prime(p)).collect();
        assert_eq!(primes, vec![3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
