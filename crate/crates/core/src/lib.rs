//! Exact verification of the numerical invariants behind quotients of fake
//! projective planes by groups of order 3, 7, 9 and 21.
//!
//! Everything is computed with arbitrary-precision integers and rationals:
//!
//! * [`exactmath`]: rationals, the cyclotomic field `Q(ζ_p)` and the
//!   holomorphic Lefschetz coefficients `a_i`.
//! * [`quotsing`]: cyclic quotient singularities `1/m(1,a)`, their
//!   Hirzebruch–Jung chains and discrepancies.
//! * [`classify`]: fixed-point bookkeeping and singularity profiles.
//! * [`lattice`]: integral lattices, Smith normal form, discriminant forms
//!   and the reconstruction of the Picard lattice of the order-7 quotient.
//! * [`exclusion`]: the Diophantine search ruling out (−1)-curves.
//! * [`fibration`]: multiple fibres and singular fibre bookkeeping of the
//!   resulting elliptic surface.

pub mod classify;
pub mod error;
pub mod exactmath;
pub mod exclusion;
pub mod fibration;
pub mod lattice;
pub mod linalg;
pub mod quotsing;

pub use error::{Error, Result};
pub use exactmath::{CyclotomicNumber, Rational};
pub use quotsing::SingularityType;
