//! The string universe `S = X_1 × … × X_n`, partial-string faces with their
//! canonical dense indexing, and the combinatorial notions built on top of
//! them (i-neighbors, well-connectedness, pruning to the core).
//!
//! Axis `i` ranges over the values `0..d_i`. A face at level `k` picks `k`
//! distinct axes and one value on each of them; the full strings are exactly
//! the faces at level `n`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Alphabet sizes `(d_1, …, d_n)` of the product universe.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arities {
    dims: Vec<usize>,
}

impl Arities {
    /// Validates `n ≥ 1` and `d_i ≥ 2`, and that every face count fits in a
    /// `usize` (the total number of faces is `∏(d_i + 1)`).
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidArities("at least one axis is required".into()));
        }
        if let Some((i, &d)) = dims.iter().enumerate().find(|(_, &d)| d < 2) {
            return Err(Error::InvalidArities(format!(
                "axis {i} has size {d}, every axis needs at least 2 values"
            )));
        }
        let total = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d + 1));
        if total.is_none() {
            return Err(Error::InvalidArities("universe too large to index".into()));
        }
        Ok(Self { dims })
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, axis: usize) -> usize {
        self.dims[axis]
    }

    /// `|S| = ∏ d_i`.
    pub fn universe_size(&self) -> usize {
        self.dims.iter().product()
    }

    /// Validates and wraps a coordinate tuple.
    pub fn string(&self, coords: Vec<usize>) -> Result<CoordString> {
        self.check_coords(&coords)?;
        Ok(CoordString(coords))
    }

    fn check_coords(&self, coords: &[usize]) -> Result<()> {
        if coords.len() != self.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                found: coords.len(),
            });
        }
        for (&c, &d) in coords.iter().zip(&self.dims) {
            if c >= d {
                return Err(Error::Range {
                    what: "coordinate",
                    value: c,
                    bound: d,
                });
            }
        }
        Ok(())
    }

    pub(crate) fn check_axis(&self, axis: usize) -> Result<()> {
        if axis >= self.n() {
            return Err(Error::Range {
                what: "axis",
                value: axis,
                bound: self.n(),
            });
        }
        Ok(())
    }

    fn check_level(&self, k: usize) -> Result<()> {
        if k > self.n() {
            return Err(Error::Range {
                what: "level",
                value: k,
                bound: self.n() + 1,
            });
        }
        Ok(())
    }

    /// Mixed-radix index of a string, last axis varying fastest. Agrees with
    /// `face_index` of the corresponding level-`n` face.
    pub fn string_index(&self, s: &CoordString) -> usize {
        s.0.iter()
            .zip(&self.dims)
            .fold(0, |acc, (&c, &d)| acc * d + c)
    }

    pub fn string_unindex(&self, index: usize) -> Result<CoordString> {
        let size = self.universe_size();
        if index >= size {
            return Err(Error::Range {
                what: "string index",
                value: index,
                bound: size,
            });
        }
        let mut coords = vec![0; self.n()];
        let mut rest = index;
        for (slot, &d) in coords.iter_mut().zip(&self.dims).rev() {
            *slot = rest % d;
            rest /= d;
        }
        Ok(CoordString(coords))
    }

    /// Every string of the universe in canonical (ascending index) order.
    pub fn strings(&self) -> impl Iterator<Item = CoordString> + '_ {
        (0..self.universe_size()).map(move |i| {
            self.string_unindex(i)
                .expect("index below universe size")
        })
    }
}

/// A full string `x = (x_1, …, x_n)`.
///
/// The derived ordering is lexicographic on coordinates, which coincides with
/// ascending [`Arities::string_index`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoordString(Vec<usize>);

impl CoordString {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn coord(&self, axis: usize) -> usize {
        self.0[axis]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn with_coord(&self, axis: usize, value: usize) -> CoordString {
        let mut coords = self.0.clone();
        coords[axis] = value;
        CoordString(coords)
    }
}

impl fmt::Display for CoordString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A partial string: one value on each of a strictly increasing list of axes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    axes: Vec<usize>,
    values: Vec<usize>,
}

impl Face {
    pub fn new(arities: &Arities, axes: Vec<usize>, values: Vec<usize>) -> Result<Self> {
        if axes.len() != values.len() {
            return Err(Error::Dimension {
                expected: axes.len(),
                found: values.len(),
            });
        }
        if axes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition(
                "face axes must be strictly increasing".into(),
            ));
        }
        for (&axis, &value) in axes.iter().zip(&values) {
            arities.check_axis(axis)?;
            if value >= arities.dim(axis) {
                return Err(Error::Range {
                    what: "face value",
                    value,
                    bound: arities.dim(axis),
                });
            }
        }
        Ok(Self { axes, values })
    }

    /// The level-0 face.
    pub fn empty() -> Self {
        Self {
            axes: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn from_string(s: &CoordString) -> Self {
        Self {
            axes: (0..s.len()).collect(),
            values: s.coords().to_vec(),
        }
    }

    pub fn level(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[usize] {
        &self.axes
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// The face with the entry at position `pos` removed.
    pub fn without_entry(&self, pos: usize) -> Face {
        let mut axes = self.axes.clone();
        let mut values = self.values.clone();
        axes.remove(pos);
        values.remove(pos);
        Face { axes, values }
    }

    fn axis_mask(&self) -> u64 {
        self.axes.iter().fold(0, |m, &a| m | (1u64 << a))
    }
}

/// Number of faces at level `k`: the elementary symmetric polynomial
/// `e_k(d_1, …, d_n)`, with `e_0 = 1`.
pub fn s_k_size(arities: &Arities, k: usize) -> Result<usize> {
    arities.check_level(k)?;
    Ok(elementary_symmetric(arities.dims())[k])
}

/// All of `e_0, …, e_n` by the product expansion of `∏(1 + d_i t)`.
pub(crate) fn elementary_symmetric(dims: &[usize]) -> Vec<usize> {
    let mut e = vec![0usize; dims.len() + 1];
    e[0] = 1;
    for (seen, &d) in dims.iter().enumerate() {
        for k in (1..=seen + 1).rev() {
            e[k] += e[k - 1] * d;
        }
    }
    e
}

/// `∏ d_i − ∏ (d_i − 1)`.
pub fn tight_bound(arities: &Arities) -> usize {
    let all: usize = arities.dims().iter().product();
    let avoiding: usize = arities.dims().iter().map(|d| d - 1).product();
    all - avoiding
}

/// Dense indexing of the faces at one level.
///
/// Axis subsets are visited in colexicographic order, which for subsets
/// encoded as bitmasks is plain ascending numeric order. Within one subset the
/// values are ranked mixed-radix with the last listed axis varying fastest.
#[derive(Clone, Debug)]
pub struct LevelIndex {
    dims: Vec<usize>,
    level: usize,
    masks: Vec<u64>,
    // offsets[j] = index of the first face on masks[j]; last entry is the total
    offsets: Vec<usize>,
    by_mask: HashMap<u64, usize>,
}

impl LevelIndex {
    pub fn new(arities: &Arities, k: usize) -> Result<Self> {
        arities.check_level(k)?;
        let n = arities.n();
        let masks = k_subsets(n, k);
        let mut offsets = Vec::with_capacity(masks.len() + 1);
        let mut by_mask = HashMap::with_capacity(masks.len());
        let mut total = 0usize;
        for (j, &mask) in masks.iter().enumerate() {
            offsets.push(total);
            by_mask.insert(mask, j);
            total += mask_axes(mask)
                .map(|a| arities.dim(a))
                .product::<usize>();
        }
        offsets.push(total);
        Ok(Self {
            dims: arities.dims().to_vec(),
            level: k,
            masks,
            offsets,
            by_mask,
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Number of faces at this level.
    pub fn len(&self) -> usize {
        *self.offsets.last().expect("offsets is never empty")
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index of a face known to be valid for the governing arities.
    pub fn index(&self, face: &Face) -> Result<usize> {
        if face.level() != self.level {
            return Err(Error::Dimension {
                expected: self.level,
                found: face.level(),
            });
        }
        let slot = self.by_mask[&face.axis_mask()];
        Ok(self.offsets[slot] + self.local_index(face.axes(), face.values()))
    }

    /// Index of the face obtained by dropping entry `skip` from `face`,
    /// without materializing it. `self` must be the level below `face`.
    pub(crate) fn index_without(&self, face: &Face, skip: usize) -> usize {
        let mask = face.axis_mask() & !(1u64 << face.axes[skip]);
        let slot = self.by_mask[&mask];
        let mut local = 0;
        for (pos, (&a, &v)) in face.axes.iter().zip(&face.values).enumerate() {
            if pos != skip {
                local = local * self.dims[a] + v;
            }
        }
        self.offsets[slot] + local
    }

    fn local_index(&self, axes: &[usize], values: &[usize]) -> usize {
        axes.iter()
            .zip(values)
            .fold(0, |acc, (&a, &v)| acc * self.dims[a] + v)
    }

    pub fn unindex(&self, index: usize) -> Result<Face> {
        if index >= self.len() {
            return Err(Error::Range {
                what: "face index",
                value: index,
                bound: self.len(),
            });
        }
        let slot = self.offsets.partition_point(|&o| o <= index) - 1;
        let axes: Vec<usize> = mask_axes(self.masks[slot]).collect();
        let mut values = vec![0; axes.len()];
        let mut rest = index - self.offsets[slot];
        for (slot, &a) in values.iter_mut().zip(&axes).rev() {
            *slot = rest % self.dims[a];
            rest /= self.dims[a];
        }
        Ok(Face { axes, values })
    }

    /// All faces of this level in canonical order.
    pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
        (0..self.len()).map(move |i| self.unindex(i).expect("index below level size"))
    }
}

/// `k`-subsets of `{0, …, n−1}` as bitmasks in ascending order (Gosper's hack).
fn k_subsets(n: usize, k: usize) -> Vec<u64> {
    if k == 0 {
        return vec![0];
    }
    let limit = 1u64 << n;
    let mut out = Vec::new();
    let mut mask: u64 = (1u64 << k) - 1;
    while mask < limit {
        out.push(mask);
        let lowest = mask & mask.wrapping_neg();
        let ripple = mask + lowest;
        mask = (((ripple ^ mask) >> 2) / lowest) | ripple;
    }
    out
}

fn mask_axes(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&a| mask >> a & 1 == 1)
}

/// Canonical dense index of `face` among all faces of its level.
pub fn face_index(arities: &Arities, face: &Face) -> Result<usize> {
    // revalidate: faces built against a different arities may be out of range
    let face = Face::new(arities, face.axes.clone(), face.values.clone())?;
    LevelIndex::new(arities, face.level())?.index(&face)
}

/// Inverse of [`face_index`] at level `k`.
pub fn face_unindex(arities: &Arities, k: usize, index: usize) -> Result<Face> {
    LevelIndex::new(arities, k)?.unindex(index)
}

/// A deduplicated set of strings over one universe, iterated in canonical
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringSet {
    arities: Arities,
    members: BTreeSet<CoordString>,
}

impl StringSet {
    pub fn new(arities: Arities) -> Self {
        Self {
            arities,
            members: BTreeSet::new(),
        }
    }

    /// The whole universe `S`.
    pub fn full(arities: Arities) -> Self {
        let members = arities.strings().collect();
        Self { arities, members }
    }

    /// Builds a set from raw coordinate tuples, validating each one.
    /// Duplicates collapse.
    pub fn from_coords<I>(arities: Arities, tuples: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let mut set = Self::new(arities);
        for t in tuples {
            let s = set.arities.string(t)?;
            set.members.insert(s);
        }
        Ok(set)
    }

    pub fn arities(&self) -> &Arities {
        &self.arities
    }

    /// Inserts a string, returning whether it was new.
    pub fn insert(&mut self, s: CoordString) -> Result<bool> {
        self.arities.check_coords(s.coords())?;
        Ok(self.members.insert(s))
    }

    pub fn contains(&self, s: &CoordString) -> bool {
        self.members.contains(s)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &CoordString> + '_ {
        self.members.iter()
    }

    pub fn is_subset(&self, other: &StringSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub(crate) fn with_members(arities: Arities, members: BTreeSet<CoordString>) -> Self {
        Self { arities, members }
    }
}

impl<'a> IntoIterator for &'a StringSet {
    type Item = &'a CoordString;
    type IntoIter = std::collections::btree_set::Iter<'a, CoordString>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Strings in `members` that differ from `x` exactly on `axis`, ascending.
fn neighbors_in<'a, F>(
    contains: F,
    arities: &'a Arities,
    x: &'a CoordString,
    axis: usize,
) -> impl Iterator<Item = CoordString> + 'a
where
    F: Fn(&CoordString) -> bool + 'a,
{
    (0..arities.dim(axis))
        .filter(move |&v| v != x.coord(axis))
        .map(move |v| x.with_coord(axis, v))
        .filter(move |y| contains(y))
}

pub(crate) fn neighbor_count(set: &StringSet, x: &CoordString, axis: usize) -> usize {
    neighbors_in(|y| set.contains(y), &set.arities, x, axis).count()
}

/// Members of `set` differing from `x` only in coordinate `axis`.
pub fn i_neighbors(set: &StringSet, x: &CoordString, axis: usize) -> Result<Vec<CoordString>> {
    set.arities.check_axis(axis)?;
    set.arities.check_coords(x.coords())?;
    Ok(neighbors_in(|y| set.contains(y), &set.arities, x, axis).collect())
}

/// Nonempty, and every member has a neighbor along every axis.
pub fn is_well_connected(set: &StringSet) -> bool {
    !set.is_empty()
        && set
            .iter()
            .all(|x| (0..set.arities.n()).all(|i| neighbor_count(set, x, i) > 0))
}

/// The unique maximal well-connected subset (empty if there is none).
///
/// Members lacking a neighbor on some axis are deleted until none remain;
/// each deletion requeues the deleted string's surviving neighbors.
pub fn prune_to_core(set: &StringSet) -> StringSet {
    let arities = set.arities.clone();
    let n = arities.n();
    let mut alive: HashSet<CoordString> = set.members.iter().cloned().collect();
    let mut queue: VecDeque<CoordString> = set.members.iter().cloned().collect();
    let mut queued: HashSet<CoordString> = alive.clone();

    while let Some(x) = queue.pop_front() {
        queued.remove(&x);
        if !alive.contains(&x) {
            continue;
        }
        let stranded = (0..n).any(|i| {
            neighbors_in(|y| alive.contains(y), &arities, &x, i)
                .next()
                .is_none()
        });
        if !stranded {
            continue;
        }
        alive.remove(&x);
        for i in 0..n {
            for y in neighbors_in(|y| alive.contains(y), &arities, &x, i) {
                if queued.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }

    StringSet::with_members(arities, alive.into_iter().collect())
}
