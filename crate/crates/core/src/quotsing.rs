//! Cyclic quotient singularities `1/m(1,a)`: Hirzebruch–Jung resolution
//! chains, discrepancies and the correction to `K²` on the resolution.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactmath::{int, inverse_mod, Rational};
use crate::linalg::IntMatrix;
use crate::{Error, Result};

/// The quotient of `C²` by `diag(ζ, ζ^a)`, `ζ` a primitive `m`-th root of 1.
///
/// `1/m(1,a)` and `1/m(1,a⁻¹)` are the same singularity (swap the
/// coordinates); [`SingularityType::normalize`] picks the smaller residue.
/// Ordering is lexicographic in `(m, a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SingularityType {
    m: u32,
    a: u32,
}

impl SingularityType {
    pub fn new(m: u32, a: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidSingularity {
                m,
                a,
                reason: "order must be at least 2",
            });
        }
        if a == 0 || a >= m {
            return Err(Error::InvalidSingularity {
                m,
                a,
                reason: "a must lie in 1..m-1",
            });
        }
        if m.gcd(&a) != 1 {
            return Err(Error::InvalidSingularity {
                m,
                a,
                reason: "gcd(m, a) must be 1",
            });
        }
        Ok(Self { m, a })
    }

    /// Shorthand for `SingularityType::new(m, a)?.normalize()`.
    pub fn normalized(m: u32, a: u32) -> Result<Self> {
        Ok(Self::new(m, a)?.normalize())
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    /// `a⁻¹ mod m`.
    pub fn inverse_residue(&self) -> u32 {
        inverse_mod(self.a as i64, self.m as i64).expect("validated on construction") as u32
    }

    pub fn normalize(&self) -> Self {
        Self {
            m: self.m,
            a: self.a.min(self.inverse_residue()),
        }
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalize()
    }

    /// Same singularity up to the coordinate swap.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.normalize() == other.normalize()
    }

    /// Rational double point `A_{m−1}`, i.e. `a = m − 1`.
    pub fn is_rational_double_point(&self) -> bool {
        self.a == self.m - 1
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(1,{})", self.m, self.a)
    }
}

/// Chain of exceptional curves `E_1, …, E_k` (consecutive curves meeting once) with `E_i² = −b_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HJChain {
    self_intersections: Vec<u32>,
    gram: IntMatrix,
}

impl HJChain {
    /// Chain with the given `b_i` (each `≥ 2`).
    pub fn from_self_intersections(bs: Vec<u32>) -> Self {
        debug_assert!(bs.iter().all(|&b| b >= 2));
        let k = bs.len();
        let gram = IntMatrix::from_fn(k, k, |i, j| {
            if i == j {
                -BigInt::from(bs[i])
            } else if i.abs_diff(j) == 1 {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        });
        Self {
            self_intersections: bs,
            gram,
        }
    }

    /// `b_1, …, b_k`; curve `E_i` has self-intersection `−b_i`.
    pub fn self_intersections(&self) -> &[u32] {
        &self.self_intersections
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn len(&self) -> usize {
        self.self_intersections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.self_intersections.is_empty()
    }

    pub fn reversed(&self) -> Self {
        let mut bs = self.self_intersections.clone();
        bs.reverse();
        Self::from_self_intersections(bs)
    }

    /// `m/q = [b_1, …, b_k]` evaluated back into a fraction.
    pub fn continued_fraction_value(&self) -> Rational {
        let mut value: Option<Rational> = None;
        for &b in self.self_intersections.iter().rev() {
            value = Some(match value {
                None => int(b as i64),
                Some(v) => int(b as i64) - v.recip(),
            });
        }
        value.unwrap_or_else(Rational::zero)
    }
}

/// Hirzebruch–Jung continued fraction `m/a = b_1 − 1/(b_2 − 1/(⋯))`, all
/// `b_i ≥ 2`, in the orientation of the given representative.
pub fn hj_expansion(t: &SingularityType) -> HJChain {
    let (mut n, mut q) = (t.m as u64, t.a as u64);
    let mut bs = Vec::new();
    while q != 0 {
        let b = n.div_ceil(q);
        bs.push(b as u32);
        (n, q) = (q, b * q - n);
    }
    HJChain::from_self_intersections(bs)
}

/// Discrepancy divisor `D = Σ d_i E_i` with `K_Y = ν*K_Z − D` near one
/// singular point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscrepancyData {
    pub coefficients: Vec<Rational>,
    /// `D · D`.
    pub d_squared: Rational,
}

impl DiscrepancyData {
    /// Coefficients listed against the reversed chain.
    pub fn reversed(&self) -> Self {
        let mut coefficients = self.coefficients.clone();
        coefficients.reverse();
        Self {
            coefficients,
            d_squared: self.d_squared.clone(),
        }
    }
}

/// Solve adjunction `K_Y · E_i = −2 − E_i² = b_i − 2` with `K_Y · E_i = −D · E_i`
/// on the exceptional chain.
pub fn chain_discrepancies(chain: &HJChain) -> Result<DiscrepancyData> {
    let gram = chain.gram().to_rational();
    // −G·d = b − 2  ⇔  G·d = 2 − b
    let rhs: Vec<Rational> = chain
        .self_intersections()
        .iter()
        .map(|&b| int(2 - b as i64))
        .collect();
    let coefficients = gram.solve(&rhs)?;
    if let Some(bad) = coefficients
        .iter()
        .find(|d| d.is_negative() || **d >= Rational::one())
    {
        return Err(Error::DiscrepancyOutOfRange(bad.clone()));
    }
    let d_squared = gram.bilinear(&coefficients, &coefficients)?;
    Ok(DiscrepancyData {
        coefficients,
        d_squared,
    })
}

/// Discrepancies along `hj_expansion(t)`.
pub fn discrepancies(t: &SingularityType) -> Result<DiscrepancyData> {
    chain_discrepancies(&hj_expansion(t))
}

/// `K_Y² = K_Z² + Σ D_t²`: the pullback `ν*K_Z` is orthogonal to every
/// exceptional curve. The multiset is processed in sorted order.
pub fn resolved_k2(kz2: &Rational, singularities: &[SingularityType]) -> Result<Rational> {
    let mut sorted: Vec<SingularityType> = singularities.iter().map(|t| t.normalize()).collect();
    sorted.sort();
    let mut total = kz2.clone();
    for t in &sorted {
        total += discrepancies(t)?.d_squared;
    }
    Ok(total)
}
