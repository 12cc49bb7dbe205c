use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{check_odd_prime, fmt_rational, Rational};
use crate::{Error, Result};

/// Element of the cyclotomic field `Q(ζ_p)`, `p` an odd prime, stored in the
/// power basis `1, ζ, …, ζ^{p−2}`.
///
/// The basis has length `p − 1` and every operation reduces eagerly with
/// `ζ^{p−1} = −(1 + ζ + ⋯ + ζ^{p−2})`, so an element is rational exactly when
/// all coordinates past the first vanish.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    prime: u32,
    coords: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero(prime: u32) -> Result<Self> {
        check_odd_prime(prime)?;
        Ok(Self {
            prime,
            coords: vec![Rational::zero(); prime as usize - 1],
        })
    }

    pub fn one(prime: u32) -> Result<Self> {
        Self::from_rational(prime, Rational::one())
    }

    pub fn from_rational(prime: u32, value: Rational) -> Result<Self> {
        let mut x = Self::zero(prime)?;
        x.coords[0] = value;
        Ok(x)
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(prime: u32, k: i64) -> Result<Self> {
        check_odd_prime(prime)?;
        let mut acc = vec![Rational::zero(); prime as usize];
        acc[k.rem_euclid(prime as i64) as usize] = Rational::one();
        Ok(Self::reduce(prime, acc))
    }

    /// Build from power-basis coordinates; `coords` may have length `p − 1`
    /// or `p` (in which case the `ζ^{p−1}` term is reduced away).
    pub fn from_coords(prime: u32, coords: Vec<Rational>) -> Result<Self> {
        check_odd_prime(prime)?;
        let p = prime as usize;
        if coords.len() != p - 1 && coords.len() != p {
            return Err(Error::DimensionMismatch {
                expected: p - 1,
                found: coords.len(),
            });
        }
        let mut acc = coords;
        acc.resize(p, Rational::zero());
        Ok(Self::reduce(prime, acc))
    }

    /// Collapse a vector indexed by exponents mod `p` onto the power basis.
    fn reduce(prime: u32, mut acc: Vec<Rational>) -> Self {
        debug_assert_eq!(acc.len(), prime as usize);
        let top = acc.pop().expect("p ≥ 3");
        if !top.is_zero() {
            for c in acc.iter_mut() {
                *c -= &top;
            }
        }
        Self { prime, coords: acc }
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The constant coordinate, provided the element is rational.
    pub fn to_rational(&self) -> Result<Rational> {
        if self.is_rational() {
            Ok(self.coords[0].clone())
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.prime == other.prime {
            Ok(())
        } else {
            Err(Error::MismatchedPrimes {
                left: self.prime,
                right: other.prime,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            prime: self.prime,
            coords,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        let p = self.prime as usize;
        let mut acc = vec![Rational::zero(); p];
        for (i, a) in self.coords.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other
                .coords
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
            {
                acc[(i + j) % p] += a * b;
            }
        }
        Ok(Self::reduce(self.prime, acc))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self {
            prime: self.prime,
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prime).expect("prime already validated");
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Galois conjugate `σ_k : ζ ↦ ζ^k`, `gcd(k, p) = 1`.
    pub fn conjugate(&self, k: i64) -> Result<Self> {
        let p = self.prime as i64;
        if k.rem_euclid(p) == 0 {
            return Err(Error::NotAUnit {
                residue: k,
                modulus: p,
            });
        }
        let mut acc = vec![Rational::zero(); p as usize];
        for (j, c) in self.coords.iter().enumerate() {
            acc[(j as i64 * k).rem_euclid(p) as usize] += c;
        }
        Ok(Self::reduce(self.prime, acc))
    }

    /// Field norm `N(x) = ∏_{k=1}^{p−1} σ_k(x)`, a rational number.
    pub fn norm(&self) -> Result<Rational> {
        let mut acc = self.clone();
        for k in 2..self.prime as i64 {
            acc = &acc * &self.conjugate(k)?;
        }
        acc.to_rational()
    }

    /// Multiplicative inverse, `x^{-1} = (∏_{k≥2} σ_k(x)) / N(x)`.
    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(self.prime));
        }
        let mut others = Self::one(self.prime)?;
        for k in 2..self.prime as i64 {
            others = &others * &self.conjugate(k)?;
        }
        let norm = (self * &others).to_rational()?;
        Ok(others.scale(&norm.recip()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.try_inv()?)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => fmt_rational(c),
                1 => format!("({})ζ", fmt_rational(c)),
                _ => format!("({})ζ^{j}", fmt_rational(c)),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(ζ_{})[{}]", self.prime, self)
    }
}

// Operator impls panic on mismatched primes; use the `try_*` methods when
// operands come from different sources.

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: Self) -> CyclotomicNumber {
        self.try_add(rhs).expect("mismatched cyclotomic fields")
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: Self) -> CyclotomicNumber {
        self.try_sub(rhs).expect("mismatched cyclotomic fields")
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: Self) -> CyclotomicNumber {
        self.try_mul(rhs).expect("mismatched cyclotomic fields")
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            prime: self.prime,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}
