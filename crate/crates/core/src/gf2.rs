//! Dense bit-packed linear algebra over GF(2).
//!
//! Vectors are packed little-endian into `u64` words; bits past `len` are
//! always zero so that word-level equality and zero tests are exact.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The vector with exactly the listed bits set. Repeated indices cancel.
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// `self += other` over GF(2).
    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            & 1
            == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .position(|&w| w != 0)
            .map(|wi| wi * WORD + self.words[wi].trailing_zeros() as usize)
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + bit)
            })
        })
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "BitVector({bits})")
    }
}

/// A dense matrix over GF(2), stored as packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Dimension {
                    expected: rows,
                    found: c.len(),
                });
            }
            for i in c.ones() {
                m.data[i].set(j, true);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value)
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_indices(self.rows, (0..self.rows).filter(|&r| self.get(r, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVector::is_zero)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones() {
                t.data[c].set(r, true);
            }
        }
        t
    }

    /// `self · v`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(BitVector::from_bools(
            &self.data.iter().map(|row| row.dot(v)).collect::<Vec<_>>(),
        ))
    }

    /// `self · other`, accumulating rows of `other` selected by each row of
    /// `self`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                expected: self.cols,
                found: other.rows,
            });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = BitVector::zeros(other.cols);
                for k in row.ones() {
                    acc.xor_assign(&other.data[k]);
                }
                acc
            })
            .collect();
        Ok(BitMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for row in &self.data {
            let bits: String = (0..self.cols)
                .map(|i| if row.get(i) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {bits}")?;
        }
        Ok(())
    }
}

/// Reduced row echelon form of `m`: the reduced rows and, for each nonzero
/// row, the column of its pivot.
fn rref(m: &BitMatrix) -> (Vec<BitVector>, Vec<usize>) {
    let mut rows = m.data.clone();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..m.cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(next, found);
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        next += 1;
    }
    rows.truncate(pivots.len());
    (rows, pivots)
}

/// Rank over GF(2).
pub fn rank(m: &BitMatrix) -> usize {
    rref(m).1.len()
}

/// A basis of `{v : m·v = 0}`, one vector per free column in ascending
/// order.
pub fn kernel_basis(m: &BitMatrix) -> Vec<BitVector> {
    let (rows, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = BitVector::zeros(m.cols);
            v.set(free, true);
            for (row, &p) in rows.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// Incremental elimination over a sequence of columns, tracking each reduced
/// vector as a combination of the inserted originals.
#[derive(Clone, Debug)]
pub struct DependencyFinder {
    len: usize,
    capacity: usize,
    inserted: usize,
    // (reduced vector, its history over the inserted columns)
    basis: Vec<(BitVector, BitVector)>,
    pivot_owner: Vec<Option<usize>>,
}

impl DependencyFinder {
    /// A finder for columns of length `len`, at most `capacity` of them.
    pub fn new(len: usize, capacity: usize) -> Self {
        Self {
            len,
            capacity,
            inserted: 0,
            basis: Vec::new(),
            pivot_owner: vec![None; len],
        }
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Inserts the next column. If it lies in the span of the independent
    /// columns inserted before it, returns the ascending positions of a
    /// combination summing to zero (always including this column) and leaves
    /// the basis unchanged.
    pub fn insert(&mut self, column: &BitVector) -> Result<Option<Vec<usize>>> {
        if column.len() != self.len {
            return Err(Error::Dimension {
                expected: self.len,
                found: column.len(),
            });
        }
        if self.inserted == self.capacity {
            return Err(Error::Precondition(format!(
                "dependency finder capacity {} exceeded",
                self.capacity
            )));
        }
        let id = self.inserted;
        self.inserted += 1;

        let mut v = column.clone();
        let mut history = BitVector::zeros(self.capacity);
        history.set(id, true);
        while let Some(p) = v.first_one() {
            let Some(owner) = self.pivot_owner[p] else {
                self.pivot_owner[p] = Some(self.basis.len());
                self.basis.push((v, history));
                return Ok(None);
            };
            let (b, h) = &self.basis[owner];
            v.xor_assign(b);
            history.xor_assign(h);
        }
        Ok(Some(history.ones().collect()))
    }
}

/// Support of the first GF(2) dependency among `columns`, inserting them in
/// order. `None` if the columns are linearly independent.
///
/// The returned indices are ascending; their largest element is the first
/// column that lies in the span of its predecessors.
pub fn find_dependency(columns: &[BitVector]) -> Result<Option<Vec<usize>>> {
    let Some(first) = columns.first() else {
        return Ok(None);
    };
    if let Some(bad) = columns.iter().find(|c| c.len() != first.len()) {
        return Err(Error::Dimension {
            expected: first.len(),
            found: bad.len(),
        });
    }
    let mut finder = DependencyFinder::new(first.len(), columns.len());
    for c in columns {
        if let Some(support) = finder.insert(c)? {
            return Ok(Some(support));
        }
    }
    Ok(None)
}
