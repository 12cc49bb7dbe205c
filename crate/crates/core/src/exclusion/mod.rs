//! Exclusion of (−1)-curves on the minimal resolution of the order-7
//! quotient.
//!
//! A (−1)-curve `E` is written in the Picard basis as
//! `E = mM − dL + a2·A2 + a3·A3 + Σ b_i·B_i + Σ c_i·C_i`. Effectivity against
//! the nine exceptional curves gives nine linear inequalities, adjunction gives
//! `E·K_Y = −1`, and `E² = −1` gives a quadratic condition. Only `m ∈ {1, 2}`
//! is possible because `0 < E·ν*K_Z = 3m/7 < K_Y·ν*K_Z = 9/7`.
//!
//! The search runs in two stages: project the linear system onto
//! `(d, a3, b3, c3)` by Fourier–Motzkin elimination and list the integer points
//! (stage 1), then discard every point by an upper bound on `E²` (stage 2).
//! `E·A1 ≥ 0` presumes `E` is not itself one of the exceptional curves.

mod bounds;
mod system;

pub use bounds::{derive_bounds, eliminate, Bounds, ChainBounds, LinearBound};
pub use system::{build_system, hand_system, AffineForm, ConstraintSystem, Variable};

use std::fmt;

use crate::exactmath::{int, rat, Rational};
use crate::lattice::{reconstruct_picard_lattice, Order7Space};
use crate::{Error, Result};

/// A candidate class, not necessarily satisfying any constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CurveCandidate {
    pub m: i64,
    pub d: i64,
    pub a2: i64,
    pub a3: i64,
    pub b1: i64,
    pub b2: i64,
    pub b3: i64,
    pub c1: i64,
    pub c2: i64,
    pub c3: i64,
}

impl CurveCandidate {
    /// Values of the unknowns in [`Variable::ALL`] order.
    pub fn unknowns(&self) -> [i64; 9] {
        [
            self.d, self.a2, self.a3, self.b1, self.b2, self.b3, self.c1, self.c2, self.c3,
        ]
    }

    pub fn from_unknowns(m: i64, x: [i64; 9]) -> Self {
        let [d, a2, a3, b1, b2, b3, c1, c2, c3] = x;
        Self {
            m,
            d,
            a2,
            a3,
            b1,
            b2,
            b3,
            c1,
            c2,
            c3,
        }
    }

    /// Coordinates in the Picard basis `M, L, A2, A3, B1, B2, B3, C1, C2, C3`.
    pub fn picard_coordinates(&self) -> [i64; 10] {
        [
            self.m, -self.d, self.a2, self.a3, self.b1, self.b2, self.b3, self.c1, self.c2, self.c3,
        ]
    }

    /// `E²` from the intersection matrix of the Picard basis.
    pub fn self_intersection(&self, gram: &crate::linalg::IntMatrix) -> i64 {
        let x = self.picard_coordinates();
        let mut total = num_bigint::BigInt::from(0);
        for i in 0..10 {
            for j in 0..10 {
                total += &gram[(i, j)] * x[i] * x[j];
            }
        }
        i64::try_from(total).expect("E² fits in i64")
    }
}

/// Stage-1 solution `(d, a3, b3, c3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Stage1Tuple {
    pub d: i64,
    pub a3: i64,
    pub b3: i64,
    pub c3: i64,
}

impl Stage1Tuple {
    pub fn as_array(&self) -> [i64; 4] {
        [self.d, self.a3, self.b3, self.c3]
    }
}

impl fmt::Display for Stage1Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.d, self.a3, self.b3, self.c3)
    }
}

/// `(E·ν*K_Z, K_Y·ν*K_Z)` for a curve with `M`-coefficient `m`.
pub fn curve_degree(m: i64) -> Result<(Rational, Rational)> {
    let space = Order7Space::new()?;
    let rec = reconstruct_picard_lattice(&space)?;
    let k = space.pullback_canonical();
    // L and the exceptional curves are orthogonal to ν*K_Z.
    let degree = int(m) * space.pairing(&rec.m.coeffs, &k);
    let threshold = space.pairing(&space.canonical_class(), &k);
    Ok((degree, threshold))
}

/// Reject `m` unless `0 < E·ν*K_Z < K_Y·ν*K_Z`.
pub fn check_curve_degree(m: i64) -> Result<Rational> {
    let (degree, threshold) = curve_degree(m)?;
    if degree > int(0) && degree < threshold {
        Ok(degree)
    } else {
        Err(Error::CurveDegreeOutOfRange { m, degree })
    }
}

/// Integer points of the projected system, ordered by descending `d`, then
/// descending `a3`, then descending `b3`.
///
/// `c3` is determined by the equality `a3 + b3 + c3 = 3d − 1`; the lower
/// limit on `b3` is whatever keeps `c3` under its own bound. No sign
/// condition is imposed on `b3` or `c3`.
pub fn enumerate_stage1(m: i64) -> Result<Vec<Stage1Tuple>> {
    check_curve_degree(m)?;
    let bounds = derive_bounds(&build_system(m)?)?;
    Ok(stage1_from_bounds(&bounds))
}

pub fn stage1_from_bounds(bounds: &Bounds) -> Vec<Stage1Tuple> {
    let mut out = Vec::new();
    for d in (bounds.d_min..=bounds.d_max).rev() {
        let s = 3 * d - 1;
        let (Some(a_hi), Some(b_hi), Some(c_hi)) = (
            bounds.a3.max_at(d),
            bounds.b3.max_at(d),
            bounds.c3.max_at(d),
        ) else {
            continue;
        };
        let a_lo = bounds.a3.min_at(d).unwrap_or(i64::MIN);
        let b_lo_bound = bounds.b3.min_at(d).unwrap_or(i64::MIN);
        let c_lo = bounds.c3.min_at(d).unwrap_or(i64::MIN);
        let mut a3 = a_hi;
        while a3 >= a_lo {
            let b_lo = (s - a3 - c_hi).max(b_lo_bound);
            let mut b3 = b_hi;
            while b3 >= b_lo {
                let c3 = s - a3 - b3;
                if c3 >= c_lo {
                    out.push(Stage1Tuple { d, a3, b3, c3 });
                }
                b3 -= 1;
            }
            a3 -= 1;
        }
    }
    out
}

/// Both sides of the necessary condition for `E² = −1`:
/// `2m² − 1 + 3d² + 2d ≤ −(5/2)a3² − (7/3)b3² − (7/3)c3² + (4m + 2d)b3 + (6d − 2m)c3`.
pub fn quadratic_sides(m: i64, t: &Stage1Tuple) -> (Rational, Rational) {
    let Stage1Tuple { d, a3, b3, c3 } = *t;
    let lhs = int(2 * m * m - 1 + 3 * d * d + 2 * d);
    let rhs = rat(-5, 2) * int(a3 * a3) - rat(7, 3) * int(b3 * b3) - rat(7, 3) * int(c3 * c3)
        + int((4 * m + 2 * d) * b3)
        + int((6 * d - 2 * m) * c3);
    (lhs, rhs)
}

/// Whether a stage-1 tuple survives the quadratic condition.
pub fn quadratic_test(m: i64, t: &Stage1Tuple) -> bool {
    let (lhs, rhs) = quadratic_sides(m, t);
    lhs <= rhs
}

#[derive(Clone, Debug)]
pub struct ExclusionVerdict {
    pub m: i64,
    /// `E·ν*K_Z`.
    pub curve_degree: Rational,
    /// `K_Y·ν*K_Z`.
    pub threshold: Rational,
    pub bounds: Bounds,
    pub stage1: Vec<Stage1Tuple>,
    pub survivors: Vec<Stage1Tuple>,
}

impl ExclusionVerdict {
    pub fn excluded(&self) -> bool {
        self.survivors.is_empty()
    }
}

pub fn full_verdict(m: i64) -> Result<ExclusionVerdict> {
    let curve_degree = check_curve_degree(m)?;
    let (_, threshold) = self::curve_degree(m)?;
    let bounds = derive_bounds(&build_system(m)?)?;
    let stage1 = stage1_from_bounds(&bounds);
    let survivors = stage1
        .iter()
        .copied()
        .filter(|t| quadratic_test(m, t))
        .collect();
    Ok(ExclusionVerdict {
        m,
        curve_degree,
        threshold,
        bounds,
        stage1,
        survivors,
    })
}
