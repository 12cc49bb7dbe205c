//! Integral lattices, discriminant forms, and the reconstruction of the
//! Picard lattice of the minimal resolution of an order-7 quotient.

mod discriminant;
mod glue;
mod snf;
mod space;

pub use discriminant::DiscriminantGroup;
pub use glue::{
    build_picard_basis, glue_l, glue_m, l_square, m_glue_direction, orthogonal_quotient,
    picard_basis_vectors, picard_coordinates, reconstruct_picard_lattice, search_glue_l,
    search_glue_m, GlueVector, PicardReconstruction, PICARD_LABELS,
};
pub use snf::{smith_normal_form, SmithForm};
pub use space::{Chain, Order7Space, RationalQuadraticSpace};

use num_bigint::BigInt;

use crate::linalg::IntMatrix;
use crate::{Error, Result};

/// Integer Gram matrix with labelled basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralLattice {
    labels: Vec<String>,
    gram: IntMatrix,
}

impl IntegralLattice {
    pub fn new(labels: Vec<String>, gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare {
                rows: gram.nrows(),
                cols: gram.ncols(),
            });
        }
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

    /// Lattice with basis labelled `prefix1, prefix2, …`.
    pub fn with_prefix(prefix: &str, gram: IntMatrix) -> Result<Self> {
        let labels = (1..=gram.nrows()).map(|i| format!("{prefix}{i}")).collect();
        Self::new(labels, gram)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn entry(&self, row: &str, col: &str) -> Option<&BigInt> {
        let i = self.labels.iter().position(|l| l == row)?;
        let j = self.labels.iter().position(|l| l == col)?;
        Some(&self.gram[(i, j)])
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant().expect("Gram matrix is square")
    }

    /// `(n₊, n₋)`; zero directions are not counted.
    pub fn signature(&self) -> (usize, usize) {
        self.gram
            .to_rational()
            .signature()
            .expect("Gram matrix is symmetric")
    }

    pub fn is_unimodular(&self) -> bool {
        let d = self.determinant();
        d == BigInt::from(1) || d == BigInt::from(-1)
    }

    pub fn orthogonal_sum(&self, other: &Self) -> Self {
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        Self {
            labels,
            gram: self.gram.direct_sum(&other.gram),
        }
    }

    pub fn discriminant_group(&self) -> Result<DiscriminantGroup> {
        DiscriminantGroup::of(self)
    }
}
