//! Bit-packed linear algebra over the two-element field.
//!
//! Vectors are stored as `u64` words, bit `i` of the vector living in word
//! `i / 64` at position `i % 64`. Matrices are a list of row vectors. All
//! operations are pure and deterministic: pivots are chosen leftmost column
//! first, topmost row first, so every downstream basis choice is reproducible.

use std::fmt;

use smallvec::{smallvec, SmallVec};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector in `Z_2^len`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vector {
    // vectors up to 256 entries stay off the heap
    words: SmallVec<[u64; 4]>,
    len: usize,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: smallvec![0; words_for(len)],
            len,
        }
    }

    /// The standard basis vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words: SmallVec<[u64; 4]> = SmallVec::new();
        let mut len = 0;
        for b in bits {
            if len % WORD == 0 {
                words.push(0);
            }
            if b {
                words[len / WORD] |= 1 << (len % WORD);
            }
            len += 1;
        }
        Self { words, len }
    }

    /// Builds a vector from 0/1 entries; any nonzero entry counts as 1.
    pub fn from_u8s(entries: &[u8]) -> Self {
        Self::from_bits(entries.iter().map(|&e| e & 1 == 1))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// In-place addition (XOR). Panics on length mismatch.
    #[inline]
    pub fn add_assign(&mut self, other: &F2Vector) {
        assert_eq!(self.len, other.len, "length mismatch in vector addition");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn dot(&self, other: &F2Vector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot product");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    /// Index of the lowest set bit at position `from` or later.
    pub fn first_one_from(&self, from: usize) -> Option<usize> {
        let mut k = from / WORD;
        if k >= self.words.len() {
            return None;
        }
        let mut w = self.words[k] & (!0u64 << (from % WORD));
        loop {
            if w != 0 {
                return Some(k * WORD + w.trailing_zeros() as usize);
            }
            k += 1;
            if k == self.words.len() {
                return None;
            }
            w = self.words[k];
        }
    }

    /// Indices of set bits in increasing order.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(k * WORD + tz)
            })
        })
    }

    /// The vector as a single word; needs `len <= 64`.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= WORD);
        self.words.first().copied().unwrap_or(0)
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &F2Vector) -> F2Vector {
        let mut v = F2Vector::zeros(self.len + other.len);
        for i in self.ones_iter() {
            v.set(i, true);
        }
        for i in other.ones_iter() {
            v.set(self.len + i, true);
        }
        v
    }

    /// Entries `range.start..range.end` as a new vector.
    pub fn slice(&self, start: usize, end: usize) -> F2Vector {
        assert!(start <= end && end <= self.len);
        let mut v = F2Vector::zeros(end - start);
        let (k0, shift) = (start / WORD, start % WORD);
        for (k, w) in v.words.iter_mut().enumerate() {
            let lo = self.words[k0 + k] >> shift;
            let hi = match self.words.get(k0 + k + 1) {
                Some(&x) if shift > 0 => x << (WORD - shift),
                _ => 0,
            };
            *w = lo | hi;
        }
        if let Some(last) = v.words.last_mut() {
            let used = v.len % WORD;
            if used > 0 {
                *last &= (1 << used) - 1;
            }
        }
        v
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vector(")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

/// A `rows x cols` matrix over `Z_2`, stored row by row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: Vec<F2Vector>,
    cols: usize,
}

/// Output of [`F2Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: F2Matrix,
    pub pivots: Vec<usize>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![F2Vector::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| F2Vector::unit(n, i)).collect(),
            cols: n,
        }
    }

    /// Builds a matrix from row vectors, which must share a length. The column
    /// count must be given so that the zero-row matrix keeps its shape.
    pub fn from_rows(cols: usize, rows: Vec<F2Vector>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length does not match column count");
        }
        Self { rows, cols }
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[F2Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length does not match row count");
            for i in c.ones_iter() {
                m.rows[i].set(j, true);
            }
        }
        m
    }

    pub fn from_u8_rows(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| F2Vector::from_u8s(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &F2Vector {
        &self.rows[i]
    }

    pub fn row_vectors(&self) -> &[F2Vector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<F2Vector> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value)
    }

    pub fn column(&self, j: usize) -> F2Vector {
        F2Vector::from_bits(self.rows.iter().map(|r| r.get(j)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(F2Vector::is_zero)
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones_iter() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// Matrix-vector product `M x`.
    pub fn mul_vec(&self, x: &F2Vector) -> F2Vector {
        assert_eq!(x.len(), self.cols, "vector length does not match column count");
        F2Vector::from_bits(self.rows.iter().map(|r| r.dot(x)))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.rows(), "inner dimensions differ");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = F2Vector::zeros(other.cols);
                for k in r.ones_iter() {
                    acc.add_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        F2Matrix {
            rows,
            cols: other.cols,
        }
    }

    pub fn add_assign(&mut self, other: &F2Matrix) {
        assert_eq!(self.rows(), other.rows());
        assert_eq!(self.cols, other.cols);
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            a.add_assign(b);
        }
    }

    /// Reduced row echelon form, pivots ascending. Zero rows sink to the bottom.
    pub fn rref(&self) -> Rref {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == rows.len() {
                break;
            }
            let Some(p) = (next..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(next, p);
            let pivot_row = rows[next].clone();
            for (i, r) in rows.iter_mut().enumerate() {
                if i != next && r.get(col) {
                    r.add_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
        }
        Rref {
            matrix: F2Matrix {
                rows,
                cols: self.cols,
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        let mut basis = EchelonBasis::new(self.cols);
        self.rows
            .iter()
            .filter(|r| basis.insert((*r).clone()))
            .count()
    }

    /// A basis of `{x : M x = 0}`, one vector per free column of the rref,
    /// ordered by free column.
    pub fn kernel_basis(&self) -> Vec<F2Vector> {
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = F2Vector::unit(self.cols, free);
                for (row, &p) in pivots.iter().enumerate() {
                    if matrix.get(row, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<F2Matrix> {
        let n = self.rows();
        if n != self.cols {
            return None;
        }
        let augmented = F2Matrix::from_rows(
            2 * n,
            self.rows
                .iter()
                .zip(F2Matrix::identity(n).rows)
                .map(|(r, e)| r.concat(&e))
                .collect(),
        );
        let Rref { matrix, pivots } = augmented.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(F2Matrix::from_rows(
            n,
            matrix.rows.iter().map(|r| r.slice(n, 2 * n)).collect(),
        ))
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{} [", self.rows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

/// Incrementally maintained echelon basis of a subspace, keyed by lowest set
/// bit. Used for rank computations and membership tests without building a
/// full matrix.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    // rows[i] has lowest set bit `lead[i]`; no other row has that bit set
    // below its own lead.
    rows: Vec<F2Vector>,
    lead: Vec<usize>,
    by_lead: Vec<Option<usize>>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            rows: Vec::new(),
            lead: Vec::new(),
            by_lead: vec![None; len],
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis. The result is zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: F2Vector) -> F2Vector {
        assert_eq!(v.len(), self.len);
        // adding a row only touches bits at or above its lead
        let mut pos = 0;
        while let Some(i) = v.first_one_from(pos) {
            if let Some(r) = self.by_lead[i] {
                v.add_assign(&self.rows[r]);
            }
            pos = i + 1;
        }
        v
    }

    pub fn contains(&self, v: &F2Vector) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: F2Vector) -> bool {
        let v = self.reduce(v);
        match v.first_one() {
            None => false,
            Some(l) => {
                self.by_lead[l] = Some(self.rows.len());
                self.lead.push(l);
                self.rows.push(v);
                true
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[u8]]) -> F2Matrix {
        F2Matrix::from_u8_rows(rows)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(F2Matrix::identity(2).rank(), 2);
        assert_eq!(m(&[&[1, 0], &[0, 1], &[1, 1]]).rank(), 2);
        assert_eq!(F2Matrix::zeros(3, 3).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        // characteristic matrix of RP^2: columns e1, e2, e1+e2
        let rp2 = m(&[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(rp2.kernel_basis(), vec![F2Vector::from_u8s(&[1, 1, 1])]);
        assert!(F2Matrix::identity(4).kernel_basis().is_empty());
        assert_eq!(F2Matrix::zeros(2, 3).kernel_basis().len(), 3);
    }

    #[test]
    fn rref_examples() {
        let r = m(&[&[1, 1], &[1, 0]]).rref();
        assert_eq!(r.matrix, F2Matrix::identity(2));
        assert_eq!(r.pivots, vec![0, 1]);

        let r = m(&[&[1, 1], &[1, 1]]).rref();
        assert_eq!(r.matrix, m(&[&[1, 1], &[0, 0]]));
        assert_eq!(r.pivots, vec![0]);

        let empty = F2Matrix::zeros(0, 0);
        let r = empty.rref();
        assert_eq!(r.matrix, empty);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn empty_shapes_are_legal() {
        assert_eq!(F2Matrix::zeros(0, 4).rank(), 0);
        assert_eq!(F2Matrix::zeros(0, 4).kernel_basis().len(), 4);
        assert_eq!(F2Matrix::zeros(3, 0).rank(), 0);
        assert!(F2Matrix::zeros(3, 0).kernel_basis().is_empty());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), F2Matrix::identity(3));
        assert!(m(&[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn wide_vectors_cross_word_boundaries() {
        let mut v = F2Vector::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.ones_iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(v.count_ones(), 3);
        assert_eq!(v.slice(60, 130).ones_iter().collect::<Vec<_>>(), vec![4, 69]);
    }

    fn arb_matrix() -> impl Strategy<Value = F2Matrix> {
        (0usize..9, 0usize..9).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r)
                .prop_map(move |rows| {
                    F2Matrix::from_rows(c, rows.into_iter().map(F2Vector::from_bits).collect())
                })
        })
    }

    proptest! {
        #[test]
        fn slice_matches_bits(bits in proptest::collection::vec(any::<bool>(), 0..300), a in 0usize..300, b in 0usize..300) {
            let v = F2Vector::from_bits(bits.iter().copied());
            prop_assert_eq!(v.to_bits(), bits.clone());
            let (start, end) = (a.min(b).min(bits.len()), a.max(b).min(bits.len()));
            prop_assert_eq!(v.slice(start, end).to_bits(), bits[start..end].to_vec());
        }

        #[test]
        fn rank_is_transpose_invariant(a in arb_matrix()) {
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }

        #[test]
        fn rank_nullity(a in arb_matrix()) {
            let ker = a.kernel_basis();
            prop_assert_eq!(a.cols(), a.rank() + ker.len());
            for v in &ker {
                prop_assert!(a.mul_vec(v).is_zero());
            }
            let stacked = F2Matrix::from_rows(a.cols(), ker.clone());
            prop_assert_eq!(stacked.rank(), ker.len());
        }

        #[test]
        fn rref_is_idempotent(a in arb_matrix()) {
            let once = a.rref();
            let twice = once.matrix.rref();
            prop_assert_eq!(&once, &twice);
            prop_assert_eq!(once.pivots.len(), a.rank());
        }
    }
}
