//! Boundary operators of the face complex and the dimension identities they
//! satisfy.
//!
//! `∂_k` sends a level-`k` face to the sum of its `k` sub-faces one level
//! down. Everything is over GF(2), so there are no orientation signs. `∂_0`
//! is the zero map and is never materialized.

use crate::error::{Error, Result};
use crate::gf2::{kernel_basis, rank, BitMatrix, BitVector};
use crate::strings::{s_k_size, Arities, CoordString, Face, LevelIndex, StringSet};

/// An element of `V_k`: a GF(2) combination of the level-`k` faces, indexed
/// by canonical face index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    level: usize,
    coeffs: BitVector,
}

impl Chain {
    pub fn new(arities: &Arities, level: usize, coeffs: BitVector) -> Result<Self> {
        let size = s_k_size(arities, level)?;
        if coeffs.len() != size {
            return Err(Error::Dimension {
                expected: size,
                found: coeffs.len(),
            });
        }
        Ok(Self { level, coeffs })
    }

    pub fn zero(arities: &Arities, level: usize) -> Result<Self> {
        Ok(Self {
            level,
            coeffs: BitVector::zeros(s_k_size(arities, level)?),
        })
    }

    /// Sum of the given faces, all at `level`.
    pub fn from_faces<'a>(
        arities: &Arities,
        level: usize,
        faces: impl IntoIterator<Item = &'a Face>,
    ) -> Result<Self> {
        let index = LevelIndex::new(arities, level)?;
        let mut coeffs = BitVector::zeros(index.len());
        for f in faces {
            let f = Face::new(arities, f.axes().to_vec(), f.values().to_vec())?;
            coeffs.flip(index.index(&f)?);
        }
        Ok(Self { level, coeffs })
    }

    /// The top-level chain `Σ_{A ∈ set} v_A`.
    pub fn indicator(set: &StringSet) -> Self {
        let a = set.arities();
        let coeffs = BitVector::from_indices(a.universe_size(), set.iter().map(|s| a.string_index(s)));
        Self {
            level: a.n(),
            coeffs,
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coeffs(&self) -> &BitVector {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }
}

/// The matrix of `∂_k`: `s_{k−1}` rows, `s_k` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    level: usize,
    matrix: BitMatrix,
}

impl BoundaryMatrix {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> BitMatrix {
        self.matrix
    }
}

fn check_boundary_level(arities: &Arities, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Level(0));
    }
    if k > arities.n() {
        return Err(Error::Range {
            what: "level",
            value: k,
            bound: arities.n() + 1,
        });
    }
    Ok(())
}

/// The `k` facets of a level-`k` face, obtained by deleting its entries one
/// at a time, first entry first.
pub fn boundary_of_face(face: &Face) -> Result<Vec<Face>> {
    if face.level() == 0 {
        return Err(Error::Level(0));
    }
    Ok((0..face.level()).map(|pos| face.without_entry(pos)).collect())
}

/// Column of `∂` for one face, given the index of the level below it.
pub fn boundary_column(lower: &LevelIndex, face: &Face) -> BitVector {
    debug_assert_eq!(lower.level() + 1, face.level());
    BitVector::from_indices(
        lower.len(),
        (0..face.level()).map(|pos| lower.index_without(face, pos)),
    )
}

/// Column of `∂_n` for a full string.
pub fn string_boundary_column(lower: &LevelIndex, s: &CoordString) -> BitVector {
    boundary_column(lower, &Face::from_string(s))
}

/// `∂_k` as a bit matrix, built one column (one level-`k` face) at a time.
pub fn boundary_matrix(arities: &Arities, k: usize) -> Result<BoundaryMatrix> {
    check_boundary_level(arities, k)?;
    let upper = LevelIndex::new(arities, k)?;
    let lower = LevelIndex::new(arities, k - 1)?;
    let columns: Vec<BitVector> = upper.faces().map(|f| boundary_column(&lower, &f)).collect();
    Ok(BoundaryMatrix {
        level: k,
        matrix: BitMatrix::from_columns(lower.len(), &columns)?,
    })
}

/// `∂_k` applied to a chain, facet by facet.
pub fn apply_boundary(arities: &Arities, chain: &Chain) -> Result<Chain> {
    let k = chain.level;
    check_boundary_level(arities, k)?;
    let upper = LevelIndex::new(arities, k)?;
    if chain.coeffs.len() != upper.len() {
        return Err(Error::Dimension {
            expected: upper.len(),
            found: chain.coeffs.len(),
        });
    }
    let lower = LevelIndex::new(arities, k - 1)?;
    let mut out = BitVector::zeros(lower.len());
    for i in chain.coeffs.ones() {
        let face = upper.unindex(i)?;
        for facet in boundary_of_face(&face)? {
            out.flip(lower.index(&facet)?);
        }
    }
    Ok(Chain {
        level: k - 1,
        coeffs: out,
    })
}

/// `Σ_{i=0}^{k} (−1)^{k−i} · |S_i|`, the predicted dimension of `ker ∂_k`.
pub fn ker_dim_formula(arities: &Arities, k: usize) -> Result<usize> {
    let mut total: i128 = 0;
    for i in 0..=k {
        let term = s_k_size(arities, i)? as i128;
        if (k - i).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    usize::try_from(total).map_err(|_| {
        Error::Precondition(format!("alternating sum at level {k} is negative: {total}"))
    })
}

/// `dim ker ∂_k` by elimination; `dim ker ∂_0 = |S_0| = 1`.
pub fn ker_dim_by_elimination(arities: &Arities, k: usize) -> Result<usize> {
    if k == 0 {
        return s_k_size(arities, 0);
    }
    Ok(kernel_basis(boundary_matrix(arities, k)?.matrix()).len())
}

/// `rank ∂_k` by elimination; `rank ∂_0 = 0`.
pub fn rank_by_elimination(arities: &Arities, k: usize) -> Result<usize> {
    if k == 0 {
        s_k_size(arities, 0)?;
        return Ok(0);
    }
    Ok(rank(boundary_matrix(arities, k)?.matrix()))
}

/// Whether `∂_{k−1} · ∂_k` is the zero matrix, for `2 ≤ k ≤ n`.
pub fn verify_dd_zero(arities: &Arities, k: usize) -> Result<bool> {
    if k < 2 {
        return Err(Error::Level(k));
    }
    check_boundary_level(arities, k)?;
    let upper = boundary_matrix(arities, k)?;
    let lower = boundary_matrix(arities, k - 1)?;
    Ok(lower.matrix.mul(&upper.matrix)?.is_zero())
}

/// Whether `rank ∂_k = dim ker ∂_{k−1}`, both by elimination. Together with
/// [`verify_dd_zero`] this gives `im ∂_k = ker ∂_{k−1}`.
pub fn verify_exactness(arities: &Arities, k: usize) -> Result<bool> {
    check_boundary_level(arities, k)?;
    Ok(rank_by_elimination(arities, k)? == ker_dim_by_elimination(arities, k - 1)?)
}

/// `rank ∂_n` by elimination.
pub fn rank_top_boundary(arities: &Arities) -> usize {
    rank_by_elimination(arities, arities.n()).expect("top level is always valid")
}
