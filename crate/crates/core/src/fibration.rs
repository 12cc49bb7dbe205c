//! Elliptic fibration on the resolved order-7 quotient.
//!
//! With `K_Y² = 0` the surface is elliptic and a general fibre satisfies
//! `F ∼ nK_Y`, where `n = A3·F` is an integer because the (−3)-curve `A3` has
//! `A3·K_Y = 1`. The canonical bundle formula for a surface with `χ = 1` and
//! multiple fibres `m_iF_i` then gives
//!
//! ```text
//! 1/n = r − 1 − Σ 1/m_i,     m_i | n,  m_i ≥ 2.
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};

use crate::classify::{noether_euler_number, second_betti_number};
use crate::exactmath::{int, rat, to_i64, Rational};
use crate::{Error, Result};

/// `n` beyond which no solution exists. For `n ≥ 3` only two multiple fibres
/// occur; then `m_1 = 2` unless `n = 3`, and `m_2 = 2n/(n − 2)` forces
/// `n − 2 | 4`. Scanning up to 12 covers this with room to spare.
pub const MULTIPLICITY_SCAN_LIMIT: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FibreSolution {
    pub n: u32,
    /// Sorted ascending.
    pub multiplicities: Vec<u32>,
}

impl FibreSolution {
    pub fn r(&self) -> usize {
        self.multiplicities.len()
    }

    /// Whether `1/n = r − 1 − Σ 1/m_i` and every `m_i` divides `n`.
    pub fn is_valid(&self) -> bool {
        let lhs = rat(1, self.n as i64);
        lhs == residual(self.r(), &self.multiplicities)
            && self
                .multiplicities
                .iter()
                .all(|&m| m >= 2 && self.n.is_multiple_of(m))
    }
}

impl fmt::Display for FibreSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.multiplicities.iter().map(u32::to_string).collect();
        write!(f, "n={}: ({})", self.n, parts.join(","))
    }
}

/// `r − 1 − Σ 1/m_i` over the given multiplicities.
fn residual(r: usize, ms: &[u32]) -> Rational {
    ms.iter()
        .fold(int(r as i64 - 1), |acc, &m| acc - rat(1, m as i64))
}

/// Largest possible number of multiple fibres: `Σ 1/m_i ≤ r/2` gives
/// `1/n ≥ r/2 − 1`, so `r ≤ 2 + 2/n`. At least two are needed since
/// `r − 1 > 1/n > 0` must hold.
pub fn max_multiple_fibres(n: u32) -> usize {
    assert!(n >= 1, "n must be positive");
    (2 + 2 / n) as usize
}

fn divisors_from_two(n: u32) -> Vec<u32> {
    (2..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// All solutions for a given `n`: the first `r − 1` multiplicities run over
/// nondecreasing divisors of `n`, the last is solved for.
pub fn solve_multiplicities(n: u32) -> BTreeSet<FibreSolution> {
    assert!(n >= 1, "n must be positive");
    let divisors = divisors_from_two(n);
    let target = rat(1, n as i64);
    let mut out = BTreeSet::new();
    for r in 2..=max_multiple_fibres(n) {
        let mut prefix = Vec::new();
        extend(n, r, &divisors, &target, &mut prefix, &mut out);
    }
    out
}

fn extend(
    n: u32,
    r: usize,
    divisors: &[u32],
    target: &Rational,
    prefix: &mut Vec<u32>,
    out: &mut BTreeSet<FibreSolution>,
) {
    if prefix.len() + 1 == r {
        // 1/m_r = r − 1 − Σ_{i<r} 1/m_i − 1/n.
        let inv = residual(r, prefix) - target;
        if !inv.is_positive() {
            return;
        }
        let m = Rational::one() / inv;
        let Some(m) = to_i64(&m) else { return };
        let floor = *prefix.last().unwrap_or(&2) as i64;
        if m >= floor && m >= 2 && (n as i64) % m == 0 {
            let mut ms = prefix.clone();
            ms.push(m as u32);
            out.insert(FibreSolution {
                n,
                multiplicities: ms,
            });
        }
        return;
    }
    let lo = *prefix.last().unwrap_or(&2);
    for &d in divisors.iter().filter(|&&d| d >= lo) {
        prefix.push(d);
        extend(n, r, divisors, target, prefix, out);
        prefix.pop();
    }
}

/// Total ramification a degree-`n` cover `A3 → P¹` needs over the multiple
/// fibres: over the point under `m_iF_i` it has at most `n/m_i` preimages.
pub fn required_ramification(sol: &FibreSolution) -> u32 {
    sol.multiplicities.iter().map(|m| sol.n - sol.n / m).sum()
}

/// Keep solutions compatible with Riemann–Hurwitz for the rational curve
/// `A3` mapping with degree `n` onto the base: total ramification is `2n − 2`.
/// This rules out `(2, 2, 2)`, which would need a double cover of `P¹` by
/// `P¹` ramified at three points.
pub fn geometric_filter(sols: &BTreeSet<FibreSolution>) -> BTreeSet<FibreSolution> {
    sols.iter()
        .filter(|s| required_ramification(s) <= 2 * s.n - 2)
        .cloned()
        .collect()
}

/// All multiplicity tuples that survive the filter, over every `n`.
pub fn admissible_multiplicities() -> BTreeSet<Vec<u32>> {
    let all: BTreeSet<FibreSolution> = (1..=MULTIPLICITY_SCAN_LIMIT)
        .flat_map(solve_multiplicities)
        .collect();
    geometric_filter(&all)
        .into_iter()
        .map(|s| s.multiplicities)
        .collect()
}

/// Multiplicative Kodaira fibre `I_k` (`I_0` is a smooth fibre).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KodairaType {
    pub k: u32,
}

impl KodairaType {
    pub fn i(k: u32) -> Self {
        Self { k }
    }

    pub fn euler_number(&self) -> u32 {
        self.k
    }

    pub fn components(&self) -> u32 {
        self.k.max(1)
    }
}

impl FromStr for KodairaType {
    type Err = Error;

    /// Accepts `I3`, `I_3`, `i3`; everything else (`II`, `I0*`, …) is rejected.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let rest = t
            .strip_prefix('I')
            .or_else(|| t.strip_prefix('i'))
            .map(|r| r.strip_prefix('_').unwrap_or(r));
        match rest {
            Some(digits) if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) => {
                digits
                    .parse()
                    .map(Self::i)
                    .map_err(|_| Error::UnsupportedFibre(s.to_string()))
            }
            _ => Err(Error::UnsupportedFibre(s.to_string())),
        }
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I{}", self.k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreConfiguration {
    /// Singular fibres.
    pub fibres: Vec<KodairaType>,
    /// Multiplicities of the multiple fibres, sorted ascending.
    pub multiplicities: Vec<u32>,
}

impl FibreConfiguration {
    pub fn new(fibres: Vec<KodairaType>, mut multiplicities: Vec<u32>) -> Self {
        multiplicities.sort_unstable();
        Self {
            fibres,
            multiplicities,
        }
    }

    /// `{(I3, 4)}`-style counts.
    pub fn from_counts(counts: &[(KodairaType, u32)], multiplicities: Vec<u32>) -> Self {
        let fibres = counts
            .iter()
            .flat_map(|&(t, c)| std::iter::repeat_n(t, c as usize))
            .collect();
        Self::new(fibres, multiplicities)
    }

    pub fn euler_total(&self) -> u32 {
        self.fibres.iter().map(KodairaType::euler_number).sum()
    }

    /// A section class and the fibre class, plus the non-identity components
    /// of each singular fibre.
    pub fn picard_contribution(&self) -> u32 {
        2 + self.fibres.iter().map(|f| f.components() - 1).sum::<u32>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigurationReport {
    pub euler_total: u32,
    pub euler_expected: u32,
    pub picard_total: u32,
    pub picard_expected: u32,
    pub multiplicities: Vec<u32>,
    pub multiplicities_admissible: bool,
}

impl ConfigurationReport {
    pub fn euler_ok(&self) -> bool {
        self.euler_total == self.euler_expected
    }

    pub fn picard_ok(&self) -> bool {
        self.picard_total == self.picard_expected
    }

    pub fn passed(&self) -> bool {
        self.euler_ok() && self.picard_ok() && self.multiplicities_admissible
    }
}

/// Bookkeeping for an elliptic surface with `χ = 1`, `K² = 0`, `q = 0`:
/// Euler number `12`, Picard number `10`.
pub fn validate_configuration(cfg: &FibreConfiguration) -> ConfigurationReport {
    let euler_expected = noether_euler_number(0) as u32;
    let picard_expected = second_betti_number(0) as u32;
    ConfigurationReport {
        euler_total: cfg.euler_total(),
        euler_expected,
        picard_total: cfg.picard_contribution(),
        picard_expected,
        multiplicities: cfg.multiplicities.clone(),
        multiplicities_admissible: admissible_multiplicities().contains(&cfg.multiplicities),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sols(n: u32) -> Vec<Vec<u32>> {
        solve_multiplicities(n)
            .into_iter()
            .map(|s| s.multiplicities)
            .collect()
    }

    #[test]
    fn solutions_by_n() {
        assert_eq!(sols(2), vec![vec![2, 2, 2]]);
        assert_eq!(sols(3), vec![vec![3, 3]]);
        assert_eq!(sols(4), vec![vec![2, 4]]);
        assert_eq!(sols(6), vec![vec![2, 3]]);
        for n in [1, 5, 7, 8, 9, 10, 11, 12] {
            assert!(sols(n).is_empty(), "n = {n}");
        }
    }

    #[test]
    fn r_bound() {
        assert_eq!(max_multiple_fibres(1), 4);
        assert_eq!(max_multiple_fibres(2), 3);
        for n in 3..50 {
            assert_eq!(max_multiple_fibres(n), 2);
        }
    }

    #[test]
    fn filter() {
        let two = solve_multiplicities(2);
        assert!(geometric_filter(&two).is_empty());
        let six = solve_multiplicities(6);
        assert_eq!(geometric_filter(&six), six);
        let expected: BTreeSet<Vec<u32>> =
            [vec![2, 3], vec![2, 4], vec![3, 3]].into_iter().collect();
        assert_eq!(admissible_multiplicities(), expected);
    }

    #[test]
    fn kodaira_parsing() {
        assert_eq!("I3".parse::<KodairaType>().unwrap(), KodairaType::i(3));
        assert_eq!("I_9".parse::<KodairaType>().unwrap(), KodairaType::i(9));
        assert_eq!("I0".parse::<KodairaType>().unwrap().components(), 1);
        for bad in ["II", "III", "IV", "I0*", "I_", "", "In"] {
            assert!(
                matches!(bad.parse::<KodairaType>(), Err(Error::UnsupportedFibre(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn configurations() {
        let four_i3 = FibreConfiguration::from_counts(&[(KodairaType::i(3), 4)], vec![2, 3]);
        let rep = validate_configuration(&four_i3);
        assert_eq!((rep.euler_total, rep.picard_total), (12, 10));
        assert!(rep.passed());

        let i1_i9 = FibreConfiguration::from_counts(
            &[(KodairaType::i(1), 3), (KodairaType::i(9), 1)],
            vec![4, 2],
        );
        let rep = validate_configuration(&i1_i9);
        assert_eq!((rep.euler_total, rep.picard_total), (12, 10));
        assert!(rep.passed());

        let three_i3 = FibreConfiguration::from_counts(&[(KodairaType::i(3), 3)], vec![3, 3]);
        let rep = validate_configuration(&three_i3);
        assert_eq!(rep.euler_total, 9);
        assert!(!rep.euler_ok());
        assert!(!rep.passed());

        let bad_mult = FibreConfiguration::from_counts(&[(KodairaType::i(3), 4)], vec![2, 2, 2]);
        assert!(!validate_configuration(&bad_mult).passed());
    }

    proptest! {
        #[test]
        fn solutions_satisfy_equation(n in 1u32..200) {
            for s in solve_multiplicities(n) {
                prop_assert!(s.is_valid());
                prop_assert!(s.multiplicities.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }
}
