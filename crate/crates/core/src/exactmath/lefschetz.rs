use num_bigint::BigInt;

use super::{check_odd_prime, int, CyclotomicNumber, Rational};
use crate::{Error, Result};

/// Holomorphic Lefschetz coefficient
/// `a_i = 1/(p−1) · Σ_{j=1}^{p−1} 1 / ((1 − ζ^j)(1 − ζ^{ij}))`
/// evaluated exactly in `Q(ζ_p)`.
///
/// `i` is taken modulo `p` and must be a unit. The cyclotomic sum is checked
/// to be rational; a non-constant coordinate means the arithmetic is broken.
pub fn lefschetz_coefficient(p: u32, i: i64) -> Result<Rational> {
    check_odd_prime(p)?;
    let inverses = one_minus_zeta_inverses(p)?;
    coefficient_from_inverses(p, i, &inverses)
}

/// `(a_1, …, a_{p−1})`.
pub fn lefschetz_coefficients(p: u32) -> Result<Vec<Rational>> {
    check_odd_prime(p)?;
    let inverses = one_minus_zeta_inverses(p)?;
    (1..p as i64)
        .map(|i| coefficient_from_inverses(p, i, &inverses))
        .collect()
}

/// `(1 − ζ^k)⁻¹` for `k = 0..p`, with a zero placeholder at `k = 0`.
fn one_minus_zeta_inverses(p: u32) -> Result<Vec<CyclotomicNumber>> {
    let one = CyclotomicNumber::one(p)?;
    let mut out = vec![CyclotomicNumber::zero(p)?];
    for k in 1..p as i64 {
        out.push((&one - &CyclotomicNumber::zeta_pow(p, k)?).try_inv()?);
    }
    Ok(out)
}

fn coefficient_from_inverses(p: u32, i: i64, inverses: &[CyclotomicNumber]) -> Result<Rational> {
    let pi = p as i64;
    let i = i.rem_euclid(pi);
    if i == 0 {
        return Err(Error::NotAUnit {
            residue: i,
            modulus: pi,
        });
    }
    let mut sum = CyclotomicNumber::zero(p)?;
    for j in 1..pi {
        let k = (i * j).rem_euclid(pi) as usize;
        sum = &sum + &(&inverses[j as usize] * &inverses[k]);
    }
    let total = sum.to_rational()?;
    Ok(total / Rational::from_integer(BigInt::from(p - 1)))
}

/// Both sides of the order-7 trace identity
/// `(1 + ζ + ζ⁴)³ / ζ⁵ = 6t³ + t² − 15t + 5` with `t = ζ + ζ⁻¹`.
///
/// The left side is `tr(M)³ / det(M)` for `M = diag(α, αζ, αζ⁴)`; the scalar
/// `α` contributes `α³ / α³` and is dropped.
pub fn trace_identity_sides() -> (CyclotomicNumber, CyclotomicNumber) {
    const P: u32 = 7;
    let z = |k| CyclotomicNumber::zeta_pow(P, k).expect("7 is prime");
    let c = |n| CyclotomicNumber::from_rational(P, int(n)).expect("7 is prime");

    let trace = &(&c(1) + &z(1)) + &z(4);
    let lhs = &trace.pow(3) * &z(-5);

    let t = &z(1) + &z(-1);
    let t2 = &t * &t;
    let t3 = &t2 * &t;
    let rhs = &(&(&(&c(6) * &t3) + &t2) - &(&c(15) * &t)) + &c(5);
    (lhs, rhs)
}

/// True iff the trace identity holds exactly in `Q(ζ_7)` and the common value
/// is fixed by complex conjugation `ζ ↦ ζ⁻¹`, i.e. lies in `Q(ζ + ζ⁻¹)`.
pub fn verify_trace_identity() -> bool {
    let (lhs, rhs) = trace_identity_sides();
    let real = lhs.conjugate(-1).map(|c| c == lhs).unwrap_or(false);
    (&lhs - &rhs).is_zero() && real
}
