use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exactmath::{fmt_rational, int, Rational};
use crate::lattice::{reconstruct_picard_lattice, Chain, Order7Space};
use crate::{Error, Result};

/// The nine unknown coefficients of a candidate curve (`m` is a parameter).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    D,
    A2,
    A3,
    B1,
    B2,
    B3,
    C1,
    C2,
    C3,
}

impl Variable {
    pub const ALL: [Variable; 9] = [
        Variable::D,
        Variable::A2,
        Variable::A3,
        Variable::B1,
        Variable::B2,
        Variable::B3,
        Variable::C1,
        Variable::C2,
        Variable::C3,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["d", "a2", "a3", "b1", "b2", "b3", "c1", "c2", "c3"][self.index()]
    }
}

/// `constant + Σ coeffs[v]·v` over the nine unknowns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffineForm {
    pub constant: Rational,
    pub coeffs: [Rational; 9],
}

impl AffineForm {
    pub fn zero() -> Self {
        Self {
            constant: Rational::zero(),
            coeffs: std::array::from_fn(|_| Rational::zero()),
        }
    }

    pub fn from_i64(constant: i64, terms: &[(Variable, i64)]) -> Self {
        let mut f = Self::zero();
        f.constant = int(constant);
        for &(v, c) in terms {
            f.coeffs[v.index()] += int(c);
        }
        f
    }

    pub fn coeff(&self, v: Variable) -> &Rational {
        &self.coeffs[v.index()]
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        Self {
            constant: &self.constant * k,
            coeffs: self.coeffs.clone().map(|c| c * k),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (c, o) in coeffs.iter_mut().zip(&other.coeffs) {
            *c += o;
        }
        Self {
            constant: &self.constant + &other.constant,
            coeffs,
        }
    }

    /// Variables with nonzero coefficient.
    pub fn support(&self) -> Vec<Variable> {
        Variable::ALL
            .into_iter()
            .filter(|v| !self.coeff(*v).is_zero())
            .collect()
    }

    pub fn eval(&self, x: &[i64; 9]) -> Rational {
        let mut total = self.constant.clone();
        for (c, &xi) in self.coeffs.iter().zip(x) {
            total += c * int(xi);
        }
        total
    }

    /// Scale so the first nonzero coefficient (or the constant) has absolute
    /// value one; the sign is kept, so the inequality `f ≥ 0` is unchanged.
    pub fn normalized(&self) -> Self {
        let lead = self
            .coeffs
            .iter()
            .find(|c| !c.is_zero())
            .unwrap_or(&self.constant);
        if lead.is_zero() {
            return self.clone();
        }
        self.scaled(&(Rational::one() / lead.abs()))
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.constant.is_zero() {
            write!(f, "{}", fmt_rational(&self.constant))?;
            first = false;
        }
        for v in Variable::ALL {
            let c = self.coeff(v);
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let a = c.abs();
            let mag = if a.is_one() {
                String::new()
            } else {
                fmt_rational(&a)
            };
            if first {
                let lead = if c.is_negative() { "-" } else { "" };
                write!(f, "{lead}{mag}{}", v.name())?;
            } else {
                write!(f, " {sign} {mag}{}", v.name())?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Nine inequalities `E·X ≥ 0` for the exceptional curves (labelled `A1`…`C3`)
/// and the equality `E·K_Y + 1 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub m: i64,
    pub inequalities: Vec<(String, AffineForm)>,
    pub equality: AffineForm,
}

impl ConstraintSystem {
    pub fn inequality(&self, name: &str) -> Option<&AffineForm> {
        self.inequalities
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f)
    }

    /// Inequalities coming from one chain, in order `X1, X2, X3`.
    pub fn chain(&self, chain: Chain) -> Vec<AffineForm> {
        self.inequalities
            .iter()
            .filter(|(n, _)| n.starts_with(chain.letter()))
            .map(|(_, f)| f.clone())
            .collect()
    }

    pub fn is_satisfied(&self, x: &[i64; 9]) -> bool {
        self.equality.eval(x).is_zero()
            && self
                .inequalities
                .iter()
                .all(|(_, f)| !f.eval(x).is_negative())
    }
}

/// The system written out by hand.
pub fn hand_system(m: i64) -> ConstraintSystem {
    use Variable::*;
    let f = AffineForm::from_i64;
    let inequalities = vec![
        ("A1", f(0, &[(A2, 1)])),
        ("A2", f(0, &[(A2, -2), (A3, 1)])),
        ("A3", f(0, &[(D, 1), (A2, 1), (A3, -3)])),
        ("B1", f(0, &[(B1, -2), (B2, 1)])),
        ("B2", f(0, &[(B1, 1), (B2, -2), (B3, 1)])),
        ("B3", f(2 * m, &[(D, 2), (B2, 1), (B3, -3)])),
        ("C1", f(0, &[(C1, -2), (C2, 1)])),
        ("C2", f(0, &[(C1, 1), (C2, -2), (C3, 1)])),
        ("C3", f(-m, &[(D, 4), (C2, 1), (C3, -3)])),
    ];
    ConstraintSystem {
        m,
        inequalities: inequalities
            .into_iter()
            .map(|(n, f)| (n.to_string(), f))
            .collect(),
        equality: f(1, &[(D, -3), (A3, 1), (B3, 1), (C3, 1)]),
    }
}

/// The same system obtained by intersecting `E` with each curve and with
/// `K_Y` in the ambient rational space.
pub fn derived_system(m: i64) -> Result<ConstraintSystem> {
    let space = Order7Space::new()?;
    let rec = reconstruct_picard_lattice(&space)?;
    let neg_l: Vec<Rational> = rec.l.coeffs.iter().map(|x| -x).collect();
    let unknown_vectors: Vec<Vec<Rational>> = Variable::ALL
        .iter()
        .map(|v| match v {
            Variable::D => neg_l.clone(),
            Variable::A2 => space.curve(Chain::A, 2),
            Variable::A3 => space.curve(Chain::A, 3),
            Variable::B1 => space.curve(Chain::B, 1),
            Variable::B2 => space.curve(Chain::B, 2),
            Variable::B3 => space.curve(Chain::B, 3),
            Variable::C1 => space.curve(Chain::C, 1),
            Variable::C2 => space.curve(Chain::C, 2),
            Variable::C3 => space.curve(Chain::C, 3),
        })
        .collect();
    let pair_with = |target: &[Rational]| -> AffineForm {
        AffineForm {
            constant: int(m) * space.pairing(&rec.m.coeffs, target),
            coeffs: std::array::from_fn(|i| space.pairing(&unknown_vectors[i], target)),
        }
    };
    let mut inequalities = Vec::new();
    for c in Chain::ALL {
        for i in 1..=space.chain().len() {
            inequalities.push((c.label(i), pair_with(&space.curve(c, i))));
        }
    }
    let mut equality = pair_with(&space.canonical_class());
    equality.constant += int(1);
    Ok(ConstraintSystem {
        m,
        inequalities,
        equality,
    })
}

/// Hand-written system, checked form by form against [`derived_system`].
pub fn build_system(m: i64) -> Result<ConstraintSystem> {
    let hand = hand_system(m);
    let derived = derived_system(m)?;
    let pairs = hand
        .inequalities
        .iter()
        .zip(&derived.inequalities)
        .map(|((n, h), (_, g))| (n.clone(), h, g))
        .chain(std::iter::once((
            "E·K_Y".to_string(),
            &hand.equality,
            &derived.equality,
        )));
    for (name, h, g) in pairs {
        if h != g {
            return Err(Error::ConstraintMismatch {
                name,
                hand: h.to_string(),
                derived: g.to_string(),
            });
        }
    }
    if hand.inequalities.len() != derived.inequalities.len() {
        return Err(Error::DimensionMismatch {
            expected: hand.inequalities.len(),
            found: derived.inequalities.len(),
        });
    }
    Ok(hand)
}
