use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{smith_normal_form, IntegralLattice};
use crate::exactmath::{int, is_integral, reduce_mod, Rational};
use crate::linalg::RatMatrix;
use crate::{Error, Result};

/// Discriminant group `L^∨ / L` of a nondegenerate integral lattice with its
/// discriminant quadratic form.
///
/// Generators are dual vectors written in the lattice basis. The quadratic
/// values are reduced into `[0, 2)` and the pairings into `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantGroup {
    pub invariant_factors: Vec<BigInt>,
    pub generators: Vec<Vec<Rational>>,
    /// `q(g_i) mod 2`.
    pub q_values: Vec<Rational>,
    /// `b(g_i, g_j) mod 1`.
    pub pairings: Vec<Vec<Rational>>,
    gram: RatMatrix,
    v_inverse: RatMatrix,
}

impl DiscriminantGroup {
    /// From the Smith form `U G V = D`: the dual lattice is `G⁻¹ Zⁿ = V D⁻¹ Zⁿ`,
    /// so the columns of `V` divided by `d_i` generate `L^∨ / L` with orders
    /// `d_i`.
    pub fn of(lattice: &IntegralLattice) -> Result<Self> {
        let gram = lattice.gram();
        if lattice.rank() > 0 && gram.determinant()?.is_zero() {
            return Err(Error::Degenerate);
        }
        let snf = smith_normal_form(gram);
        let n = lattice.rank();
        let mut invariant_factors = Vec::new();
        let mut generators: Vec<Vec<Rational>> = Vec::new();
        for i in 0..n {
            let d = snf.d[(i, i)].clone();
            if d == BigInt::from(1) {
                continue;
            }
            let dq = Rational::from_integer(d.clone());
            generators.push(
                (0..n)
                    .map(|r| Rational::from_integer(snf.v[(r, i)].clone()) / &dq)
                    .collect(),
            );
            invariant_factors.push(d);
        }
        let rgram = gram.to_rational();
        let mut q_values = Vec::new();
        let mut pairings = Vec::new();
        for g in &generators {
            q_values.push(reduce_mod(&rgram.bilinear(g, g)?, &int(2)));
            pairings.push(
                generators
                    .iter()
                    .map(|h| Ok(reduce_mod(&rgram.bilinear(g, h)?, &int(1))))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        // Coordinates of a dual vector along the generators come from V⁻¹.
        let v_inverse = snf.v.to_rational().inverse()?;
        Ok(Self {
            invariant_factors,
            generators,
            q_values,
            pairings,
            gram: rgram,
            v_inverse,
        })
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Minimum number of generators.
    pub fn length(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Whether `x` (in lattice coordinates) pairs integrally with the lattice.
    pub fn is_dual_vector(&self, x: &[Rational]) -> bool {
        self.gram
            .mul_vec(x)
            .map(|gx| gx.iter().all(is_integral))
            .unwrap_or(false)
    }

    /// Class of a dual vector in `⊕ Z/d_i`, or `None` if `x` is not dual.
    pub fn residue(&self, x: &[Rational]) -> Option<Vec<BigInt>> {
        if !self.is_dual_vector(x) {
            return None;
        }
        // x = V D⁻¹ y  ⇒  (V⁻¹ x)_i = y_i / d_i.
        let w = self.v_inverse.mul_vec(x).ok()?;
        let skip = w.len() - self.invariant_factors.len();
        let mut out = Vec::new();
        for (i, d) in self.invariant_factors.iter().enumerate() {
            let y = &w[skip + i] * Rational::from_integer(d.clone());
            debug_assert!(is_integral(&y));
            out.push(y.to_integer().mod_floor(d));
        }
        debug_assert!(w[..skip].iter().all(is_integral));
        Some(out)
    }

    /// `q(x) mod 2` for a dual vector `x`.
    pub fn q(&self, x: &[Rational]) -> Result<Rational> {
        Ok(reduce_mod(&self.gram.bilinear(x, x)?, &int(2)))
    }

    /// `b(x, y) mod 1`.
    pub fn b(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        Ok(reduce_mod(&self.gram.bilinear(x, y)?, &int(1)))
    }

    /// Whether the class of `x` has order exactly `n`.
    pub fn has_order(&self, x: &[Rational], n: &BigInt) -> bool {
        let Some(res) = self.residue(x) else {
            return false;
        };
        let ord = res
            .iter()
            .zip(&self.invariant_factors)
            .map(|(r, d)| d / r.gcd(d))
            .fold(BigInt::from(1), |acc, o| acc.lcm(&o));
        ord == *n && ord.is_positive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::linalg::IntMatrix;
    use crate::quotsing::HJChain;

    fn chain_lattice() -> IntegralLattice {
        let chain = HJChain::from_self_intersections(vec![2, 2, 3]);
        IntegralLattice::with_prefix("E", chain.gram().clone()).unwrap()
    }

    #[test]
    fn single_chain_is_cyclic_of_order_seven() {
        let disc = chain_lattice().discriminant_group().unwrap();
        assert_eq!(disc.invariant_factors, vec![BigInt::from(7)]);
        let dual = vec![rat(1, 7), rat(2, 7), rat(3, 7)];
        assert!(disc.is_dual_vector(&dual));
        assert!(disc.has_order(&dual, &BigInt::from(7)));
        assert_eq!(disc.q(&dual).unwrap(), rat(11, 7)); // −3/7 mod 2
        let g = &disc.generators[0];
        assert!(disc.has_order(g, &BigInt::from(7)));
        // The generator's q-value is k²·(−3/7) for its multiple k of the dual vector.
        let k = disc.residue(&dual).unwrap()[0].clone();
        assert!(!k.is_zero());
        assert!(!disc.is_dual_vector(&[rat(1, 7), rat(0, 1), rat(0, 1)]));
    }

    #[test]
    fn three_chains() {
        let r = chain_lattice()
            .orthogonal_sum(&chain_lattice())
            .orthogonal_sum(&chain_lattice());
        let disc = r.discriminant_group().unwrap();
        assert_eq!(disc.invariant_factors, vec![BigInt::from(7); 3]);
        assert_eq!(disc.length(), 3);
        assert_eq!(disc.order(), r.determinant().abs());
        assert_eq!(disc.q_values.len(), 3);
        for (i, row) in disc.pairings.iter().enumerate() {
            assert_eq!(row[i], reduce_mod(&disc.q_values[i], &int(1)));
        }
    }

    #[test]
    fn unimodular_is_trivial() {
        let lat = IntegralLattice::with_prefix(
            "e",
            IntMatrix::from_i64_rows(&[[1, 0], [0, -1]]).unwrap(),
        )
        .unwrap();
        let disc = lat.discriminant_group().unwrap();
        assert!(disc.is_trivial());
        assert_eq!(disc.order(), BigInt::from(1));
    }

    #[test]
    fn degenerate_rejected() {
        let lat =
            IntegralLattice::with_prefix("e", IntMatrix::from_i64_rows(&[[1, 1], [1, 1]]).unwrap())
                .unwrap();
        assert_eq!(lat.discriminant_group(), Err(Error::Degenerate));
    }

    #[test]
    fn order_matches_determinant() {
        for rows in [
            vec![vec![2, 1], vec![1, 2]],
            vec![vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 1]],
            vec![
                vec![-2, 1, 0, 0],
                vec![1, -2, 1, 0],
                vec![0, 1, -2, 1],
                vec![0, 0, 1, -5],
            ],
        ] {
            let lat = IntegralLattice::with_prefix("e", IntMatrix::from_i64_rows(&rows).unwrap())
                .unwrap();
            let disc = lat.discriminant_group().unwrap();
            assert_eq!(disc.order(), lat.determinant().abs());
            for g in &disc.generators {
                assert!(disc.is_dual_vector(g));
            }
        }
    }
}
