use num_traits::Zero;

use crate::classify::quotient_invariants;
use crate::exactmath::Rational;
use crate::linalg::RatMatrix;
use crate::quotsing::{discrepancies, hj_expansion, HJChain, SingularityType};
use crate::{Error, Result};

/// Finite-dimensional `Q`-vector space with a symmetric bilinear form and a
/// labelled basis. Vectors are coordinate vectors in that basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalQuadraticSpace {
    labels: Vec<String>,
    gram: RatMatrix,
}

impl RationalQuadraticSpace {
    pub fn new(labels: Vec<String>, gram: RatMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if labels.len() != gram.nrows() {
            return Err(Error::DimensionMismatch {
                expected: gram.nrows(),
                found: labels.len(),
            });
        }
        Ok(Self { labels, gram })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn zero(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.dim()]
    }

    pub fn basis_vector(&self, label: &str) -> Result<Vec<Rational>> {
        let i = self.index(label).ok_or(Error::DimensionMismatch {
            expected: self.dim(),
            found: 0,
        })?;
        let mut v = self.zero();
        v[i] = Rational::from_integer(1.into());
        Ok(v)
    }

    pub fn pairing(&self, u: &[Rational], v: &[Rational]) -> Rational {
        self.gram
            .bilinear(u, v)
            .expect("vectors live in this space")
    }

    pub fn square(&self, u: &[Rational]) -> Rational {
        self.pairing(u, u)
    }

    /// Gram matrix of a family of vectors.
    pub fn gram_of(&self, vectors: &[Vec<Rational>]) -> RatMatrix {
        RatMatrix::from_fn(vectors.len(), vectors.len(), |i, j| {
            self.pairing(&vectors[i], &vectors[j])
        })
    }
}

/// `Σ c_k · v_k`.
pub(crate) fn combination(dim: usize, terms: &[(Rational, &[Rational])]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); dim];
    for (c, v) in terms {
        for (o, x) in out.iter_mut().zip(v.iter()) {
            *o += c * x;
        }
    }
    out
}

/// The three exceptional chains over the singular points of type `1/7(1,3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chain {
    A,
    B,
    C,
}

impl Chain {
    pub const ALL: [Chain; 3] = [Chain::A, Chain::B, Chain::C];

    pub fn letter(self) -> char {
        match self {
            Chain::A => 'A',
            Chain::B => 'B',
            Chain::C => 'C',
        }
    }

    /// `"A1"`, …; `i` is 1-based.
    pub fn label(self, i: usize) -> String {
        format!("{}{}", self.letter(), i)
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Ambient rational model for the resolution `Y → Z` of an order-7 quotient:
/// `⟨ν*K_Z⟩ ⊕ R_A ⊕ R_B ⊕ R_C` with `(ν*K_Z)² = K_Z² = 9/7` and each `R_X`
/// the `(−2), (−2), (−3)` chain `X1, X2, X3`. Every divisor class in question
/// is a rational vector here, so all intersection numbers come from one form.
#[derive(Clone, Debug)]
pub struct Order7Space {
    space: RationalQuadraticSpace,
    chain: HJChain,
    discrepancy: Vec<Rational>,
}

/// Label of `ν*K_Z` in the ambient basis.
pub const PULLBACK_CANONICAL: &str = "KZ";

impl Order7Space {
    pub fn new() -> Result<Self> {
        let singularity = SingularityType::normalized(7, 3)?;
        // Printed order puts the (−3)-curve last.
        let chain = hj_expansion(&singularity).reversed();
        let discrepancy = discrepancies(&singularity)?.reversed().coefficients;
        let kz2 = quotient_invariants(7)?.kz_squared;

        let mut gram = RatMatrix::from_fn(1, 1, |_, _| kz2.clone());
        let mut labels = vec![PULLBACK_CANONICAL.to_string()];
        let chain_gram = chain.gram().to_rational();
        for c in Chain::ALL {
            gram = gram.direct_sum(&chain_gram);
            labels.extend((1..=chain.len()).map(|i| c.label(i)));
        }
        Ok(Self {
            space: RationalQuadraticSpace::new(labels, gram)?,
            chain,
            discrepancy,
        })
    }

    pub fn space(&self) -> &RationalQuadraticSpace {
        &self.space
    }

    pub fn chain(&self) -> &HJChain {
        &self.chain
    }

    pub fn pairing(&self, u: &[Rational], v: &[Rational]) -> Rational {
        self.space.pairing(u, v)
    }

    pub fn square(&self, u: &[Rational]) -> Rational {
        self.space.square(u)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `ν*K_Z`.
    pub fn pullback_canonical(&self) -> Vec<Rational> {
        self.space
            .basis_vector(PULLBACK_CANONICAL)
            .expect("label present")
    }

    /// Exceptional curve `X_i` (1-based).
    pub fn curve(&self, chain: Chain, i: usize) -> Vec<Rational> {
        self.space
            .basis_vector(&chain.label(i))
            .expect("curve label present")
    }

    /// Discrepancy divisor of one chain, `(1/7)(X1 + 2X2 + 3X3)`. It is also
    /// the generator of the chain's discriminant group.
    pub fn chain_dual(&self, chain: Chain) -> Vec<Rational> {
        let curves: Vec<Vec<Rational>> = (1..=self.chain.len())
            .map(|i| self.curve(chain, i))
            .collect();
        let terms: Vec<(Rational, &[Rational])> = self
            .discrepancy
            .iter()
            .cloned()
            .zip(curves.iter().map(Vec::as_slice))
            .collect();
        combination(self.dim(), &terms)
    }

    /// `K_Y = ν*K_Z − Σ_X (discrepancy divisor of X)`.
    pub fn canonical_class(&self) -> Vec<Rational> {
        let k = self.pullback_canonical();
        let duals: Vec<Vec<Rational>> = Chain::ALL.iter().map(|&c| self.chain_dual(c)).collect();
        let one = Rational::from_integer(1.into());
        let mut terms: Vec<(Rational, &[Rational])> = vec![(one.clone(), k.as_slice())];
        terms.extend(duals.iter().map(|d| (-one.clone(), d.as_slice())));
        combination(self.dim(), &terms)
    }

    /// `k·ν*K_Z + Σ_X c_X · dual(X)`.
    pub fn glue_combination(&self, k: &Rational, coeffs: [i64; 3]) -> Vec<Rational> {
        let mut v = self.pullback_canonical();
        for x in v.iter_mut() {
            *x *= k;
        }
        for c in Chain::ALL {
            let d = self.chain_dual(c);
            let f = Rational::from_integer(coeffs[c.index()].into());
            for (o, x) in v.iter_mut().zip(&d) {
                *o += &f * x;
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    #[test]
    fn ambient_model() {
        let s = Order7Space::new().unwrap();
        assert_eq!(s.dim(), 10);
        assert_eq!(s.space().labels()[..4], ["KZ", "A1", "A2", "A3"]);
        let k = s.pullback_canonical();
        assert_eq!(s.square(&k), rat(9, 7));
        let a3 = s.curve(Chain::A, 3);
        assert_eq!(s.square(&a3), int(-3));
        assert_eq!(s.pairing(&k, &a3), int(0));
        assert_eq!(
            s.pairing(&s.curve(Chain::B, 2), &s.curve(Chain::B, 3)),
            int(1)
        );
        assert_eq!(
            s.pairing(&s.curve(Chain::B, 3), &s.curve(Chain::C, 1)),
            int(0)
        );
    }

    #[test]
    fn canonical_class_satisfies_adjunction() {
        let s = Order7Space::new().unwrap();
        let ky = s.canonical_class();
        for c in Chain::ALL {
            for i in 1..=3 {
                let e = s.curve(c, i);
                // K_Y · E = −2 − E²
                assert_eq!(s.pairing(&ky, &e), int(-2) - s.square(&e));
            }
            assert_eq!(s.square(&s.chain_dual(c)), rat(-3, 7));
            assert_eq!(
                s.chain_dual(c)[1 + 3 * c.index()..4 + 3 * c.index()],
                [rat(1, 7), rat(2, 7), rat(3, 7)]
            );
        }
        assert_eq!(s.square(&ky), int(0));
        assert_eq!(s.pairing(&ky, &s.pullback_canonical()), rat(9, 7));
    }
}
