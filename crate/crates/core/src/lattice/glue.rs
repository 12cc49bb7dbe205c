use std::collections::BTreeSet;

use num_traits::Zero;

use super::space::{combination, Chain, Order7Space};
use super::IntegralLattice;
use crate::exactmath::{fmt_rational, int, is_integral, rat, Rational};
use crate::linalg::{IntMatrix, RatMatrix};
use crate::{Error, Result};

const ORDER: i64 = 7;

/// Basis of the Picard lattice modulo torsion, in the printed order.
pub const PICARD_LABELS: [&str; 10] = ["M", "L", "A2", "A3", "B1", "B2", "B3", "C1", "C2", "C3"];

/// Direction `(0, 3, 2)` (coefficients on the chain duals) spanning
/// `⟨L⟩^⊥ / ⟨L⟩` for the canonical `L`; used to write the second glue vector
/// as `M = (1/3)ν*K_Z + a·(3·dual(B) + 2·dual(C))`.
const M_DIRECTION: [u32; 3] = [0, 3, 2];

/// A rational class in the ambient space together with its coefficients on
/// the three chain duals (`dual(X) = (1/7)(X1 + 2X2 + 3X3)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueVector {
    pub coeffs: Vec<Rational>,
    /// Coefficients on `dual(A), dual(B), dual(C)` as stored in `coeffs`
    /// (not reduced mod 7).
    pub chain_coeffs: [i64; 3],
    /// Coefficient of `ν*K_Z`.
    pub pullback_coeff: Rational,
}

impl GlueVector {
    fn new(space: &Order7Space, pullback_coeff: Rational, chain_coeffs: [i64; 3]) -> Self {
        let coeffs = space.glue_combination(&pullback_coeff, chain_coeffs);
        Self {
            coeffs,
            chain_coeffs,
            pullback_coeff,
        }
    }

    /// Class in `disc(R) ≅ (Z/7)³`.
    pub fn residue(&self) -> [u32; 3] {
        self.chain_coeffs.map(|c| c.rem_euclid(ORDER) as u32)
    }
}

/// `L = dual(A) + a·dual(B) + b·dual(C)`.
pub fn glue_l(space: &Order7Space, a: u32, b: u32) -> GlueVector {
    GlueVector::new(space, Rational::zero(), [1, a as i64, b as i64])
}

pub fn l_square(space: &Order7Space, a: u32, b: u32) -> Rational {
    space.square(&glue_l(space, a, b).coeffs)
}

/// All `(a, b) ∈ (Z/7)²` for which `L·K_Y` and `L²` are integers, sorted.
pub fn search_glue_l(space: &Order7Space) -> Vec<(u32, u32)> {
    let ky = space.canonical_class();
    let mut out = Vec::new();
    for a in 0..ORDER as u32 {
        for b in 0..ORDER as u32 {
            let l = glue_l(space, a, b);
            if is_integral(&space.pairing(&l.coeffs, &ky)) && is_integral(&space.square(&l.coeffs))
            {
                out.push((a, b));
            }
        }
    }
    out
}

/// Representatives, with vanishing `A`-coefficient, of the classes of
/// `⟨L⟩^⊥ / ⟨L⟩` inside `disc(R) ≅ (Z/7)³`; orthogonality uses the
/// discriminant bilinear form (ambient pairing mod 1).
pub fn orthogonal_quotient(space: &Order7Space, l: &GlueVector) -> Vec<[u32; 3]> {
    let duals: Vec<Vec<Rational>> = Chain::ALL.iter().map(|&c| space.chain_dual(c)).collect();
    let element = |x: [u32; 3]| -> Vec<Rational> {
        let terms: Vec<(Rational, &[Rational])> = (0..3)
            .map(|i| (int(x[i] as i64), duals[i].as_slice()))
            .collect();
        combination(space.dim(), &terms)
    };
    let l_res = l.residue();
    let span_l: BTreeSet<[u32; 3]> = (0..ORDER as u32)
        .map(|k| l_res.map(|c| (c * k) % ORDER as u32))
        .collect();

    let mut classes: BTreeSet<[u32; 3]> = BTreeSet::new();
    for x in 0..ORDER.pow(3) as u32 {
        let v = [x / 49, (x / 7) % 7, x % 7];
        if !is_integral(&space.pairing(&element(v), &l.coeffs)) {
            continue;
        }
        // Canonical representative of v + ⟨L⟩: kill the A-coefficient.
        let rep = span_l
            .iter()
            .map(|s| [0, 1, 2].map(|i| (v[i] + s[i]) % ORDER as u32))
            .filter(|w| w[0] == 0)
            .min();
        if let Some(rep) = rep {
            classes.insert(rep);
        }
    }
    classes.into_iter().collect()
}

/// Glue direction for `M`, after checking it represents a generator of
/// `⟨L⟩^⊥ / ⟨L⟩`.
pub fn m_glue_direction(space: &Order7Space, l: &GlueVector) -> Result<[u32; 3]> {
    let quotient = orthogonal_quotient(space, l);
    if quotient.len() as i64 == ORDER && M_DIRECTION != [0, 0, 0] && quotient.contains(&M_DIRECTION)
    {
        Ok(M_DIRECTION)
    } else {
        Err(Error::NoGlue(
            "(0,3,2) does not generate the orthogonal quotient of L",
        ))
    }
}

/// Symmetric residue in `−3..=3`.
fn centered(c: i64) -> i64 {
    let r = c.rem_euclid(ORDER);
    if r > ORDER / 2 {
        r - ORDER
    } else {
        r
    }
}

/// `M = (1/3)ν*K_Z + a·(3·dual(B) + 2·dual(C))`, reduced modulo `R` to chain
/// coefficients in `−3..=3`.
pub fn glue_m(space: &Order7Space, a: u32) -> GlueVector {
    let coeffs = M_DIRECTION.map(|d| centered(a as i64 * d as i64));
    GlueVector::new(space, rat(1, 3), coeffs)
}

/// Residue `a` for which `M·K_Y` is an integer, with the resulting `M`.
///
/// Also checks the orthogonal complement of `R`: `7ν*K_Z` is integral with
/// square `7·3²`, so `R^⊥` is spanned by `(7/3)ν*K_Z` of square 7 and its
/// discriminant group is generated by `(1/3)ν*K_Z`.
pub fn search_glue_m(space: &Order7Space, l: &GlueVector) -> Result<(u32, GlueVector)> {
    let k = space.pullback_canonical();
    let k2 = space.square(&k);
    if k2.clone() * int(49) != int(63) || k2 * rat(49, 9) != int(ORDER) {
        return Err(Error::NoGlue(
            "R^⊥ is not generated by (7/3)ν*K_Z of square 7",
        ));
    }
    m_glue_direction(space, l)?;
    let ky = space.canonical_class();
    let hits: Vec<u32> = (0..ORDER as u32)
        .filter(|&a| is_integral(&space.pairing(&glue_m(space, a).coeffs, &ky)))
        .collect();
    match hits.as_slice() {
        [a] => Ok((*a, glue_m(space, *a))),
        [] => Err(Error::NoGlue("no residue makes M·K_Y integral")),
        _ => Err(Error::NoGlue("M·K_Y is integral for several residues")),
    }
}

/// Ambient vectors of `M, L, A2, A3, B1, B2, B3, C1, C2, C3`.
pub fn picard_basis_vectors(
    space: &Order7Space,
    l: &GlueVector,
    m: &GlueVector,
) -> Vec<Vec<Rational>> {
    let mut out = vec![m.coeffs.clone(), l.coeffs.clone()];
    out.push(space.curve(Chain::A, 2));
    out.push(space.curve(Chain::A, 3));
    for c in [Chain::B, Chain::C] {
        for i in 1..=3 {
            out.push(space.curve(c, i));
        }
    }
    out
}

/// Intersection matrix of the Picard basis; every entry must be an integer.
pub fn build_picard_basis(
    space: &Order7Space,
    l: &GlueVector,
    m: &GlueVector,
) -> Result<IntegralLattice> {
    let vectors = picard_basis_vectors(space, l, m);
    let rgram = space.space().gram_of(&vectors);
    let mut gram = IntMatrix::zeros(vectors.len(), vectors.len());
    for i in 0..vectors.len() {
        for j in 0..vectors.len() {
            let v = &rgram[(i, j)];
            if !is_integral(v) {
                return Err(Error::NonIntegralPairing {
                    row: PICARD_LABELS[i].into(),
                    col: PICARD_LABELS[j].into(),
                    value: v.clone(),
                });
            }
            gram[(i, j)] = v.to_integer();
        }
    }
    IntegralLattice::new(PICARD_LABELS.iter().map(|s| s.to_string()).collect(), gram)
}

/// Coordinates of an ambient vector `x` in a basis given as ambient vectors.
pub fn picard_coordinates(basis: &[Vec<Rational>], x: &[Rational]) -> Result<Vec<Rational>> {
    let n = basis.len();
    let p = RatMatrix::from_fn(n, n, |i, j| basis[j][i].clone());
    p.solve(x)
}

/// Output of the full gluing pipeline.
#[derive(Clone, Debug)]
pub struct PicardReconstruction {
    pub l_candidates: Vec<(u32, u32)>,
    pub l_residue: (u32, u32),
    pub l: GlueVector,
    pub m_residue: u32,
    pub m: GlueVector,
    pub lattice: IntegralLattice,
}

/// Search `L`, fix the `B ↔ C` symmetry by taking `a < b`, search `M`, and
/// assemble the lattice.
pub fn reconstruct_picard_lattice(space: &Order7Space) -> Result<PicardReconstruction> {
    let l_candidates = search_glue_l(space);
    let l_residue = *l_candidates
        .iter()
        .find(|(a, b)| a < b)
        .ok_or(Error::NoGlue("no admissible L residue"))?;
    let l = glue_l(space, l_residue.0, l_residue.1);
    let (m_residue, m) = search_glue_m(space, &l)?;
    let lattice = build_picard_basis(space, &l, &m)?;
    Ok(PicardReconstruction {
        l_candidates,
        l_residue,
        l,
        m_residue,
        m,
        lattice,
    })
}

impl std::fmt::Display for GlueVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}·ν*K_Z + {}·A* + {}·B* + {}·C*",
            fmt_rational(&self.pullback_coeff),
            self.chain_coeffs[0],
            self.chain_coeffs[1],
            self.chain_coeffs[2]
        )
    }
}
