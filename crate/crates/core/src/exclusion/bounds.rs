use num_traits::{Signed, Zero};

use super::system::{AffineForm, ConstraintSystem, Variable};
use crate::exactmath::{fmt_rational, int, Rational};
use crate::lattice::Chain;
use crate::{Error, Result};

/// Fourier–Motzkin step: the inequalities `f ≥ 0` not involving `var` that
/// follow from `forms` by nonnegative combination. Exact over `Q`.
pub fn eliminate(forms: &[AffineForm], var: Variable) -> Vec<AffineForm> {
    let mut kept = Vec::new();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for f in forms {
        let c = f.coeff(var);
        if c.is_zero() {
            kept.push(f.normalized());
        } else if c.is_positive() {
            pos.push(f);
        } else {
            neg.push(f);
        }
    }
    for p in &pos {
        for n in &neg {
            let combined = p.scaled(&n.coeff(var).abs()).plus(&n.scaled(p.coeff(var)));
            debug_assert!(combined.coeff(var).is_zero());
            kept.push(combined.normalized());
        }
    }
    let mut out: Vec<AffineForm> = Vec::new();
    for f in kept {
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out
}

/// `intercept + slope·d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearBound {
    pub intercept: Rational,
    pub slope: Rational,
}

impl LinearBound {
    pub fn at(&self, d: i64) -> Rational {
        &self.intercept + &self.slope * int(d)
    }
}

impl std::fmt::Display for LinearBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.intercept.is_zero(), self.slope.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.intercept)),
            (true, false) => write!(f, "{}·d", fmt_rational(&self.slope)),
            (false, false) => {
                write!(
                    f,
                    "{} + {}·d",
                    fmt_rational(&self.intercept),
                    fmt_rational(&self.slope)
                )
            }
        }
    }
}

/// Bounds on a chain's end coefficient as functions of `d`, after the
/// interior coefficients have been eliminated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainBounds {
    pub variable: Variable,
    pub upper: Vec<LinearBound>,
    pub lower: Vec<LinearBound>,
    /// Conditions on `d` alone, `intercept + slope·d ≥ 0`.
    pub on_d: Vec<LinearBound>,
}

impl ChainBounds {
    /// Largest integer value allowed at `d`, if bounded above.
    pub fn max_at(&self, d: i64) -> Option<i64> {
        self.upper.iter().map(|b| floor(&b.at(d))).min()
    }

    /// Smallest integer value allowed at `d`, if bounded below.
    pub fn min_at(&self, d: i64) -> Option<i64> {
        self.lower.iter().map(|b| ceil(&b.at(d))).max()
    }

    /// The upper bound when there is exactly one.
    pub fn single_upper(&self) -> Option<&LinearBound> {
        match self.upper.as_slice() {
            [b] => Some(b),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub m: i64,
    pub a3: ChainBounds,
    pub b3: ChainBounds,
    pub c3: ChainBounds,
    pub d_min: i64,
    pub d_max: i64,
}

fn floor(x: &Rational) -> i64 {
    crate::exactmath::floor_i64(x)
}

fn ceil(x: &Rational) -> i64 {
    -floor(&-x)
}

fn chain_bounds(sys: &ConstraintSystem, chain: Chain) -> Result<ChainBounds> {
    let (interior, end) = match chain {
        Chain::A => (vec![Variable::A2], Variable::A3),
        Chain::B => (vec![Variable::B1, Variable::B2], Variable::B3),
        Chain::C => (vec![Variable::C1, Variable::C2], Variable::C3),
    };
    let mut forms = sys.chain(chain);
    for v in interior {
        forms = eliminate(&forms, v);
    }
    let mut out = ChainBounds {
        variable: end,
        upper: vec![],
        lower: vec![],
        on_d: vec![],
    };
    for f in forms {
        if f.support().iter().any(|v| *v != end && *v != Variable::D) {
            return Err(Error::ConstraintMismatch {
                name: format!("{} projection", chain.letter()),
                hand: "a bound in d".into(),
                derived: f.to_string(),
            });
        }
        let c = f.coeff(end).clone();
        let d = f.coeff(Variable::D).clone();
        if c.is_zero() {
            out.on_d.push(LinearBound {
                intercept: f.constant.clone(),
                slope: d,
            });
            continue;
        }
        // c·x + d·D + k ≥ 0  ⇔  x ≥ −(k + d·D)/c  (c > 0)  or  x ≤ (k + d·D)/(−c)  (c < 0).
        let bound = LinearBound {
            intercept: -&f.constant / &c,
            slope: -&d / &c,
        };
        if c.is_positive() {
            out.lower.push(bound);
        } else {
            out.upper.push(bound);
        }
    }
    Ok(out)
}

/// Project the system onto `(d, a3, b3, c3)` and bound `d`.
///
/// `d` is bounded below by every chain's lower-below-upper compatibility and
/// above by substituting the upper bounds into `a3 + b3 + c3 = 3d − 1`.
pub fn derive_bounds(sys: &ConstraintSystem) -> Result<Bounds> {
    let a3 = chain_bounds(sys, Chain::A)?;
    let b3 = chain_bounds(sys, Chain::B)?;
    let c3 = chain_bounds(sys, Chain::C)?;

    // Every condition is `intercept + slope·d ≥ 0`.
    let mut on_d: Vec<LinearBound> = Vec::new();
    for cb in [&a3, &b3, &c3] {
        on_d.extend(cb.on_d.iter().cloned());
        for lo in &cb.lower {
            for hi in &cb.upper {
                on_d.push(LinearBound {
                    intercept: &hi.intercept - &lo.intercept,
                    slope: &hi.slope - &lo.slope,
                });
            }
        }
    }
    // The equality reads (sum of end coefficients) = −(constant + d-coefficient·d).
    let eq = &sys.equality;
    let unit = [Variable::A3, Variable::B3, Variable::C3]
        .iter()
        .all(|v| eq.coeff(*v) == &int(1));
    if !unit || eq.support().len() != 4 {
        return Err(Error::ConstraintMismatch {
            name: "E·K_Y".into(),
            hand: "a3 + b3 + c3 + k·d + c".into(),
            derived: eq.to_string(),
        });
    }
    let target = LinearBound {
        intercept: -&eq.constant,
        slope: -eq.coeff(Variable::D),
    };
    for ((ha, hb), hc) in a3
        .upper
        .iter()
        .flat_map(|a| b3.upper.iter().map(move |b| (a, b)))
        .flat_map(|ab| c3.upper.iter().map(move |c| (ab, c)))
    {
        on_d.push(LinearBound {
            intercept: &ha.intercept + &hb.intercept + &hc.intercept - &target.intercept,
            slope: &ha.slope + &hb.slope + &hc.slope - &target.slope,
        });
    }
    if !a3.lower.is_empty() && !b3.lower.is_empty() && !c3.lower.is_empty() {
        for ((la, lb), lc) in a3
            .lower
            .iter()
            .flat_map(|a| b3.lower.iter().map(move |b| (a, b)))
            .flat_map(|ab| c3.lower.iter().map(move |c| (ab, c)))
        {
            on_d.push(LinearBound {
                intercept: &target.intercept - &la.intercept - &lb.intercept - &lc.intercept,
                slope: &target.slope - &la.slope - &lb.slope - &lc.slope,
            });
        }
    }

    let mut d_min: Option<i64> = None;
    let mut d_max: Option<i64> = None;
    for cond in &on_d {
        if cond.slope.is_zero() {
            if cond.intercept.is_negative() {
                return Err(Error::ConstraintMismatch {
                    name: "d range".into(),
                    hand: "feasible".into(),
                    derived: format!("{} ≥ 0", cond),
                });
            }
            continue;
        }
        let root = -&cond.intercept / &cond.slope;
        if cond.slope.is_positive() {
            let v = ceil(&root);
            d_min = Some(d_min.map_or(v, |x| x.max(v)));
        } else {
            let v = floor(&root);
            d_max = Some(d_max.map_or(v, |x| x.min(v)));
        }
    }
    let (Some(d_min), Some(d_max)) = (d_min, d_max) else {
        return Err(Error::ConstraintMismatch {
            name: "d range".into(),
            hand: "bounded".into(),
            derived: "unbounded".into(),
        });
    };
    Ok(Bounds {
        m: sys.m,
        a3,
        b3,
        c3,
        d_min,
        d_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::exclusion::build_system;

    fn lb(intercept: Rational, slope: Rational) -> LinearBound {
        LinearBound { intercept, slope }
    }

    #[test]
    fn bounds_m1() {
        let b = derive_bounds(&build_system(1).unwrap()).unwrap();
        assert_eq!(b.a3.single_upper(), Some(&lb(int(0), rat(2, 5))));
        assert_eq!(b.b3.single_upper(), Some(&lb(rat(6, 7), rat(6, 7))));
        assert_eq!(b.c3.single_upper(), Some(&lb(rat(-3, 7), rat(12, 7))));
        assert_eq!((b.d_min, b.d_max), (0, 50));
        assert_eq!(
            (b.a3.max_at(5), b.b3.max_at(5), b.c3.max_at(5)),
            (Some(2), Some(5), Some(8))
        );
        assert_eq!(b.a3.min_at(5), Some(0));
        assert_eq!(b.c3.max_at(0), Some(-1));
    }

    #[test]
    fn bounds_m2() {
        let b = derive_bounds(&build_system(2).unwrap()).unwrap();
        assert_eq!(b.a3.single_upper(), Some(&lb(int(0), rat(2, 5))));
        assert_eq!(b.b3.single_upper(), Some(&lb(rat(12, 7), rat(6, 7))));
        assert_eq!(b.c3.single_upper(), Some(&lb(rat(-6, 7), rat(12, 7))));
        assert_eq!((b.d_min, b.d_max), (0, 65));
    }

    #[test]
    fn elimination_of_a_chain() {
        let sys = build_system(1).unwrap();
        let out = eliminate(&sys.chain(Chain::A), Variable::A2);
        let strs: Vec<String> = out.iter().map(|f| f.to_string()).collect();
        assert_eq!(strs.len(), 2);
        assert!(strs.contains(&"a3".to_string()));
        assert!(strs.contains(&"d - 5/2a3".to_string()));
    }

    #[test]
    fn ceil_and_floor_of_negatives() {
        assert_eq!(floor(&rat(-3, 7)), -1);
        assert_eq!(ceil(&rat(-3, 7)), 0);
        assert_eq!(ceil(&rat(3, 7)), 1);
    }
}
