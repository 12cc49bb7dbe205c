//! Fixed-point bookkeeping for an automorphism of prime order on a fake
//! projective plane, and the invariants of the quotient surface.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;

use crate::exactmath::{
    check_odd_prime, int, is_integral, lefschetz_coefficients, rat, to_i64, Rational,
};
use crate::quotsing::{resolved_k2, SingularityType};
use crate::{Error, Result};

/// A ℚ-homology projective plane with quotient singularities only has at
/// most five singular points (orbifold Bogomolov–Miyaoka–Yau). Used as a
/// constant, not derived.
pub const MAX_QUOTIENT_SINGULARITIES: i64 = 5;

/// `K²` of a fake projective plane.
pub const FAKE_PLANE_K2: i64 = 9;

/// Euler number of a fake projective plane and of any of its quotients.
pub const EULER_NUMBER: i64 = 3;

/// Singular points of a quotient by a cyclic group of prime order, keyed by
/// normalized type.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SingularityProfile {
    counts: BTreeMap<SingularityType, u32>,
}

impl SingularityProfile {
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from `(type, count)` pairs; types are normalized and merged,
    /// zero counts dropped.
    pub fn from_counts(entries: impl IntoIterator<Item = (SingularityType, u32)>) -> Self {
        let mut p = Self::new();
        for (t, r) in entries {
            p.add(t, r);
        }
        p
    }

    pub fn add(&mut self, t: SingularityType, r: u32) {
        if r > 0 {
            *self.counts.entry(t.normalize()).or_insert(0) += r;
        }
    }

    pub fn count(&self, t: &SingularityType) -> u32 {
        self.counts.get(&t.normalize()).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.counts.values().sum()
    }

    pub fn contains(&self, t: &SingularityType) -> bool {
        self.count(t) > 0
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SingularityType, &u32)> {
        self.counts.iter()
    }

    /// The profile as a sorted multiset.
    pub fn to_multiset(&self) -> Vec<SingularityType> {
        self.counts
            .iter()
            .flat_map(|(t, &r)| std::iter::repeat_n(*t, r as usize))
            .collect()
    }
}

impl fmt::Display for SingularityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|(t, r)| format!("{t}: {r}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for SingularityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One-dimensional component of the fixed locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveComponent {
    pub genus: u32,
    pub self_intersection: i64,
}

/// Right-hand side of the holomorphic Lefschetz formula for an automorphism
/// of prime order `p` on a surface with `p_g = q = 0`:
/// `Σ_j {(1 − g(C_j))/2 + (p+1)C_j²/12} + Σ_i a_i r_i`.
/// The formula asserts this equals 1.
pub fn lefschetz_lhs(
    p: u32,
    curves: &[CurveComponent],
    profile: &SingularityProfile,
) -> Result<Rational> {
    let coefficients = lefschetz_coefficients(p)?;
    let mut total = Rational::from_integer(BigInt::from(0));
    for c in curves {
        total += rat(1 - c.genus as i64, 2) + rat((p as i64 + 1) * c.self_intersection, 12);
    }
    for (t, &r) in profile.iter() {
        if t.m() != p {
            return Err(Error::WrongOrder {
                m: t.m(),
                a: t.a(),
                p,
            });
        }
        total += &coefficients[t.a() as usize - 1] * int(r as i64);
    }
    Ok(total)
}

/// All profiles of `fixed_points` isolated fixed points of an order-`p`
/// automorphism with no fixed curve that satisfy the Lefschetz formula
/// `Σ a_i r_i = 1`, `Σ r_i = fixed_points`.
///
/// The search runs over classes `{i, i⁻¹}` of residues (which give the same
/// singularity and the same `a_i`), so the output is duplicate-free.
pub fn enumerate_profiles(p: u32, fixed_points: u32) -> Result<BTreeSet<SingularityProfile>> {
    check_odd_prime(p)?;
    let coefficients = lefschetz_coefficients(p)?;
    let classes: Vec<(SingularityType, Rational)> = (1..p)
        .filter_map(|a| {
            let t = SingularityType::new(p, a).ok()?;
            t.is_normalized()
                .then(|| (t, coefficients[a as usize - 1].clone()))
        })
        .collect();

    let mut out = BTreeSet::new();
    let mut counts = vec![0u32; classes.len()];
    distribute(
        &classes,
        0,
        fixed_points,
        &Rational::from_integer(0.into()),
        &mut counts,
        &mut out,
    );
    Ok(out)
}

fn distribute(
    classes: &[(SingularityType, Rational)],
    idx: usize,
    remaining: u32,
    partial: &Rational,
    counts: &mut Vec<u32>,
    out: &mut BTreeSet<SingularityProfile>,
) {
    if idx == classes.len() {
        if remaining == 0 && *partial == int(1) {
            out.insert(SingularityProfile::from_counts(
                classes.iter().map(|(t, _)| *t).zip(counts.iter().copied()),
            ));
        }
        return;
    }
    let range = if idx + 1 == classes.len() {
        remaining..=remaining
    } else {
        0..=remaining
    };
    for r in range {
        counts[idx] = r;
        let next = partial + &classes[idx].1 * int(r as i64);
        distribute(classes, idx + 1, remaining - r, &next, counts, out);
    }
    counts[idx] = 0;
}

/// Drop every profile containing `excluded` (compared after normalization).
pub fn apply_type_exclusion(
    profiles: &BTreeSet<SingularityProfile>,
    excluded: &SingularityType,
) -> BTreeSet<SingularityProfile> {
    profiles
        .iter()
        .filter(|p| !p.contains(excluded))
        .cloned()
        .collect()
}

/// Number `r` of isolated fixed points from the Hurwitz formula
/// `e(X) = p·e(Z) − (p − 1)(r + e(C))`.
pub fn hurwitz_fixed_points(p: u32, e_x: i64, e_z: i64, e_c: i64) -> Result<i64> {
    let p = p as i64;
    let r = rat(p * e_z - e_x, p - 1) - int(e_c);
    to_i64(&r).ok_or(Error::NonIntegralFixedPoints(r))
}

/// Whether `r` isolated fixed points plus a fixed curve of Euler number `e_c`
/// are compatible with the Hurwitz count and the bound on singular points.
pub fn fixed_locus_feasible(r: i64, e_c: i64) -> bool {
    (0..=MAX_QUOTIENT_SINGULARITIES).contains(&r) && r + e_c == EULER_NUMBER
}

/// Euler number of a smooth curve numerically equivalent to `m·l` on a fake
/// projective plane (`l² = 1`, `K ≡ 3l`): `e(C) = −C² − C·K = −(m² + 3m)`.
pub fn curve_euler_bound(m: u32) -> i64 {
    let m = m as i64;
    -(m * m + 3 * m)
}

/// True iff no smooth fixed curve can occur for an automorphism of order `p`:
/// the least negative curve Euler number already forces more fixed points
/// than the singular-point bound allows.
pub fn fixed_curves_excluded(p: u32) -> Result<bool> {
    // e(C) ≤ −4 decreases with m, and r grows as e(C) falls.
    let e_c = curve_euler_bound(1);
    let r = hurwitz_fixed_points(p, EULER_NUMBER, EULER_NUMBER, e_c)?;
    Ok(r > MAX_QUOTIENT_SINGULARITIES)
}

/// Invariants of `X/G` for `|G| ∈ {3, 7, 9, 21}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientInvariants {
    pub group_order: u32,
    pub kz_squared: Rational,
    pub euler_number: i64,
    pub chi: i64,
    /// Sorted multiset of normalized singularity types.
    pub singularities: Vec<SingularityType>,
}

impl QuotientInvariants {
    /// `K²` of the minimal resolution.
    pub fn resolved_k2(&self) -> Result<Rational> {
        resolved_k2(&self.kz_squared, &self.singularities)
    }
}

/// Unique singularity profile for an automorphism of prime order `p`:
/// three fixed points, Lefschetz-admissible, with `1/7(1,4)` excluded for
/// `p = 7` (the trace obstruction).
pub fn prime_order_profile(p: u32) -> Result<SingularityProfile> {
    let r = hurwitz_fixed_points(p, EULER_NUMBER, EULER_NUMBER, 0)?;
    let mut profiles = enumerate_profiles(p, r as u32)?;
    if p == 7 {
        profiles = apply_type_exclusion(&profiles, &SingularityType::normalized(7, 4)?);
    }
    match profiles.len() {
        1 => Ok(profiles.into_iter().next().expect("one element")),
        _ => Err(Error::UnsupportedGroupOrder(p)),
    }
}

/// `(p, number of subgroups of order p)` for each supported group. Every
/// non-identity element has exactly three isolated fixed points and no point
/// is fixed by the whole group, so the stabilizers are the subgroups of prime
/// order and each fixed point lies in a `G`-orbit of size `|G|/p`.
fn prime_subgroups(order: u32) -> Option<&'static [(u32, u32)]> {
    match order {
        3 => Some(&[(3, 1)]),
        7 => Some(&[(7, 1)]),
        // (Z/3)²
        9 => Some(&[(3, 4)]),
        // 7:3, Sylow counts n_7 = 1, n_3 = 7
        21 => Some(&[(7, 1), (3, 7)]),
        _ => None,
    }
}

pub fn quotient_invariants(order: u32) -> Result<QuotientInvariants> {
    let kz_squared = rat(FAKE_PLANE_K2, order as i64);
    let Some(subgroups) = prime_subgroups(order) else {
        if order == 2 {
            // Involutions would have rational double points only, K_Y² = K_Z².
            return Err(Error::NonIntegralK2 {
                order,
                k2: kz_squared,
            });
        }
        return Err(Error::UnsupportedGroupOrder(order));
    };
    let mut singularities = Vec::new();
    for &(p, count) in subgroups {
        let profile = prime_order_profile(p)?;
        let orbit = order / p;
        for (t, &r) in profile.iter() {
            let points = count * r;
            debug_assert_eq!(points % orbit, 0);
            singularities.extend(std::iter::repeat_n(*t, (points / orbit) as usize));
        }
    }
    singularities.sort();
    let inv = QuotientInvariants {
        group_order: order,
        kz_squared,
        euler_number: EULER_NUMBER,
        chi: 1,
        singularities,
    };
    let k2 = inv.resolved_k2()?;
    if !is_integral(&k2) {
        return Err(Error::NonIntegralK2 { order, k2 });
    }
    Ok(inv)
}

/// Noether's formula with `χ = 1`: `e = 12 − K²`.
pub fn noether_euler_number(k2: i64) -> i64 {
    12 - k2
}

/// Second Betti number of a surface with `b_1 = 0`: `e − 2`.
pub fn second_betti_number(k2: i64) -> i64 {
    noether_euler_number(k2) - 2
}
