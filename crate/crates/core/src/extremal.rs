//! The extremal family with no well-connected subset, and the cube families
//! that witness its maximality.

use crate::chain::{apply_boundary, rank_top_boundary, string_boundary_column, Chain};
use crate::error::{Error, Result};
use crate::gf2::{rank, BitMatrix, BitVector};
use crate::strings::{Arities, CoordString, LevelIndex, StringSet};

/// A universe together with one anchor value per axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalConfig {
    arities: Arities,
    anchors: Vec<usize>,
}

impl ExtremalConfig {
    pub fn new(arities: Arities, anchors: Vec<usize>) -> Result<Self> {
        // anchors obey the same shape and range rules as a string
        arities.string(anchors.clone())?;
        Ok(Self { arities, anchors })
    }

    /// Anchors all zero.
    pub fn with_default_anchors(arities: Arities) -> Self {
        let anchors = vec![0; arities.n()];
        Self { arities, anchors }
    }

    pub fn arities(&self) -> &Arities {
        &self.arities
    }

    pub fn anchors(&self) -> &[usize] {
        &self.anchors
    }

    /// Whether `s` has at least one anchored coordinate.
    pub fn is_anchored(&self, s: &CoordString) -> bool {
        s.coords().iter().zip(&self.anchors).any(|(c, y)| c == y)
    }
}

/// All strings with at least one coordinate equal to its anchor.
pub fn build_t0(config: &ExtremalConfig) -> StringSet {
    let mut set = StringSet::new(config.arities.clone());
    for s in config.arities.strings().filter(|s| config.is_anchored(s)) {
        set.insert(s).expect("universe strings are valid");
    }
    set
}

fn check_unanchored(config: &ExtremalConfig, c: &CoordString) -> Result<()> {
    config.arities.string(c.coords().to_vec())?;
    if config.is_anchored(c) {
        return Err(Error::Precondition(format!(
            "string {c} has an anchored coordinate, so it already lies in the extremal family"
        )));
    }
    Ok(())
}

/// The `2^n` strings whose `i`-th coordinate is either the anchor or `c_i`.
pub fn cube_family(config: &ExtremalConfig, c: &CoordString) -> Result<StringSet> {
    check_unanchored(config, c)?;
    let n = config.arities.n();
    let mut set = StringSet::new(config.arities.clone());
    for mask in 0u64..(1u64 << n) {
        let coords = (0..n)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    c.coord(i)
                } else {
                    config.anchors[i]
                }
            })
            .collect();
        set.insert(config.arities.string(coords)?)?;
    }
    Ok(set)
}

/// Whether the top boundary of the cube family through `c` vanishes.
pub fn verify_cube_relation(config: &ExtremalConfig, c: &CoordString) -> Result<bool> {
    let cube = cube_family(config, c)?;
    Ok(apply_boundary(&config.arities, &Chain::indicator(&cube))?.is_zero())
}

/// Columns `∂_n v_A` for the members of `set`, in canonical member order.
pub fn top_boundary_columns(set: &StringSet) -> Vec<BitVector> {
    let a = set.arities();
    let lower = LevelIndex::new(a, a.n() - 1).expect("n ≥ 1");
    set.iter().map(|s| string_boundary_column(&lower, s)).collect()
}

/// Whether the boundaries of the extremal family are independent and as
/// many as `rank ∂_n`, i.e. a basis of `im ∂_n`.
pub fn verify_t0_basis(config: &ExtremalConfig) -> bool {
    let t0 = build_t0(config);
    let a = config.arities();
    let rows = LevelIndex::new(a, a.n() - 1).expect("n ≥ 1").len();
    let m = BitMatrix::from_columns(rows, &top_boundary_columns(&t0)).expect("uniform column length");
    rank(&m) == t0.len() && t0.len() == rank_top_boundary(a)
}
