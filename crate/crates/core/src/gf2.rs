//! Dense linear algebra over GF(2).
//!
//! Vectors and matrix rows are packed into `u64` words and eliminated with
//! XOR row updates. Pivoting is deterministic: columns are scanned left to
//! right and the first row holding a one in the current column is taken, so
//! kernel bases and solutions are reproducible across runs.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over GF(2) of fixed length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; words_for(len)],
            len,
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        Self::from_ones(len, [i])
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// Adds `other` into `self`.
    ///
    /// # Panics
    /// Panics if the lengths differ.
    pub fn xor_assign(&mut self, other: &BitVec) {
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

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// The vector extended by one trailing bit.
    fn pushed(&self, bit: bool) -> BitVec {
        let mut out = BitVec::zeros(self.len + 1);
        out.words[..self.words.len()].copy_from_slice(&self.words);
        out.set(self.len, bit);
        out
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.len {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, ")")
    }
}

/// A dense `rows x cols` matrix over GF(2). Immutable once built; the
/// elimination routines work on private copies.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![BitVec::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| i == j)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let rows = (0..rows)
            .map(|i| BitVec::from_bools(&(0..cols).map(|j| f(i, j)).collect::<Vec<_>>()))
            .collect();
        Self { rows, cols }
    }

    /// Builds a matrix from row vectors, all of length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { rows, cols })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for i in c.iter_ones() {
                m.rows[i].set(j, true);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> BitVec {
        BitVec::from_ones(
            self.rows(),
            (0..self.rows()).filter(|&i| self.rows[i].get(j)),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    pub fn transpose(&self) -> BitMatrix {
        Self::from_fn(self.cols, self.rows(), |i, j| self.get(j, i))
    }

    /// `M v`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(BitVec::from_ones(
            self.rows(),
            (0..self.rows()).filter(|&i| self.rows[i].dot(v)),
        ))
    }

    /// `v^t M`, a combination of the rows of `M`.
    pub fn vec_mul(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.rows(),
                found: v.len(),
            });
        }
        let mut out = BitVec::zeros(self.cols);
        for i in v.iter_ones() {
            out.xor_assign(&self.rows[i]);
        }
        Ok(out)
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        if rhs.rows() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| rhs.vec_mul(r))
            .collect::<Result<Vec<_>>>()?;
        Ok(BitMatrix {
            rows,
            cols: rhs.cols,
        })
    }

    pub fn rank(&self) -> usize {
        Echelon::reduce_rows(self.rows.clone(), self.cols)
            .pivots
            .len()
    }

    /// A basis of `{ v : M v = 0 }`, one vector per free column, in column
    /// order.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let reduced = Echelon::reduce_rows(self.rows.clone(), self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &reduced.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVec::unit(self.cols, f);
                for (row, &p) in reduced.rows.iter().zip(&reduced.pivots) {
                    if row.get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Some `x` with `M x = b`, or `None` when the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &BitVec) -> Result<Option<BitVec>> {
        if b.len() != self.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.rows(),
                found: b.len(),
            });
        }
        let augmented: Vec<BitVec> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.pushed(b.get(i)))
            .collect();
        let reduced = Echelon::reduce_rows(augmented, self.cols + 1);
        if reduced.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(self.cols);
        for (row, &p) in reduced.rows.iter().zip(&reduced.pivots) {
            if row.get(self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows(), self.cols)?;
        for r in &self.rows {
            for j in 0..self.cols {
                write!(f, "{}", u8::from(r.get(j)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// True iff `v` is a GF(2) combination of `basis`.
pub fn in_span(basis: &[BitVec], v: &BitVec) -> Result<bool> {
    let mut ech = Echelon::new(v.len());
    for b in basis {
        ech.insert(b.clone())?;
    }
    Ok(ech.reduce(v)?.is_zero())
}

/// A subspace of GF(2)^len held in reduced row echelon form, keyed by the
/// lowest set bit of each basis vector. Every stored vector is zero at the
/// pivots of all the others, so reduction is a single pass and yields a
/// normal form for cosets of the subspace.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Row-reduces a full matrix in one go. Rows come back sorted by pivot.
    fn reduce_rows(mut rows: Vec<BitVec>, cols: usize) -> Self {
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..cols {
            if top == rows.len() {
                break;
            }
            let Some(found) = (top..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(top, found);
            let pivot_row = rows[top].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != top && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            top += 1;
        }
        rows.truncate(top);
        Self {
            len: cols,
            rows,
            pivots,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, v: &BitVec) -> Result<()> {
        if v.len() != self.len {
            return Err(Error::DimensionMismatch {
                expected: self.len,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Normal form of `v` modulo the subspace.
    pub fn reduce(&self, v: &BitVec) -> Result<BitVec> {
        self.check(v)?;
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        Ok(v)
    }

    /// Adds `v` to the subspace. Returns false if it was already inside.
    pub fn insert(&mut self, v: BitVec) -> Result<bool> {
        let v = self.reduce(&v)?;
        let Some(p) = v.first_one() else {
            return Ok(false);
        };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        Ok(true)
    }

    pub fn contains(&self, v: &BitVec) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }
}
