use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::IntMatrix;

/// `U · M · V = D` with `D` diagonal, `d_i | d_{i+1}`, `U` and `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.nrows().min(self.d.ncols());
        (0..n)
            .map(|i| self.d[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    /// Diagonal entries greater than one.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|x| !x.is_one())
            .collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block to the pivot.
            let Some((pi, pj)) = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[(i, j)].is_zero())
                .min_by_key(|&(i, j)| a[(i, j)].abs())
            else {
                return finish(a, u, v);
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                if !q.is_zero() {
                    add_row(&mut a, i, t, &-&q);
                    add_row(&mut u, i, t, &-&q);
                }
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                if !q.is_zero() {
                    add_col(&mut a, j, t, &-&q);
                    add_col(&mut v, j, t, &-&q);
                }
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Pivot must divide the rest of the block.
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
            match bad {
                Some(i) => {
                    add_row(&mut a, t, i, &BigInt::one());
                    add_row(&mut u, t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
    }
    finish(a, u, v)
}

fn finish(d: IntMatrix, u: IntMatrix, v: IntMatrix) -> SmithForm {
    SmithForm { u, d, v }
}

/// row[dst] += k · row[src]
fn add_row(m: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
    for j in 0..m.ncols() {
        let x = &m[(src, j)] * k;
        m[(dst, j)] += x;
    }
}

/// col[dst] += k · col[src]
fn add_col(m: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
    for i in 0..m.nrows() {
        let x = &m[(i, src)] * k;
        m[(i, dst)] += x;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for j in 0..m.ncols() {
        m[(r, j)] = -&m[(r, j)];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotsing::HJChain;
    use proptest::prelude::*;

    fn check(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.u.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(s.v.determinant().unwrap().abs(), BigInt::one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]), "{:?}", diag);
        }
        assert!(diag.iter().all(|x| x.is_positive()));
        s
    }

    #[test]
    fn identity() {
        let s = check(&IntMatrix::identity(4));
        assert_eq!(s.d, IntMatrix::identity(4));
        assert!(s.invariant_factors().is_empty());
    }

    #[test]
    fn diagonal_already_reduced() {
        let s = check(&IntMatrix::from_i64_rows(&[[2, 0], [0, 4]]).unwrap());
        assert_eq!(
            s.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(4)]
        );
    }

    #[test]
    fn coprime_diagonal_combines() {
        let s = check(&IntMatrix::from_i64_rows(&[[2, 0], [0, 3]]).unwrap());
        assert_eq!(s.invariant_factors(), vec![BigInt::from(6)]);
    }

    #[test]
    fn three_order_seven_chains() {
        let chain = HJChain::from_self_intersections(vec![2, 2, 3]);
        let r = chain
            .gram()
            .direct_sum(chain.gram())
            .direct_sum(chain.gram());
        let s = check(&r);
        assert_eq!(s.invariant_factors(), vec![BigInt::from(7); 3]);
    }

    #[test]
    fn rank_deficient_and_rectangular() {
        let s = check(&IntMatrix::from_i64_rows(&[[2, 4, 6], [4, 8, 12]]).unwrap());
        assert_eq!(s.diagonal(), vec![BigInt::from(2)]);
        check(&IntMatrix::zeros(2, 3));
    }

    proptest! {
        #[test]
        fn random_matrices(rows in 1usize..5, cols in 1usize..5, e in prop::collection::vec(-12i64..13, 16)) {
            let m = IntMatrix::from_fn(rows, cols, |i, j| BigInt::from(e[i * 4 + j]));
            let s = check(&m);
            if rows == cols {
                let prod: BigInt = s.diagonal().iter().product();
                let det = m.determinant().unwrap().abs();
                if !det.is_zero() {
                    prop_assert_eq!(prod, det);
                }
            }
        }
    }
}
