//! Dense linear algebra over GF(2).
//!
//! Vectors are packed into `u64` words with an explicit bit length; bits past
//! the length are always zero so word-level comparisons and popcounts are exact.
//! Gaussian elimination always takes the leftmost pivot column and, within it,
//! the topmost available row, which makes every reduced form reproducible.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
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

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for (i, w) in v.words.iter_mut().enumerate() {
            let remaining = len - i * WORD;
            *w = if remaining >= WORD {
                u64::MAX
            } else {
                (1u64 << remaining) - 1
            };
        }
        v
    }

    /// Builds a vector with ones at the given 0-based positions.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i),
        )
    }

    /// Low `len` bits of `word`, bit `i` of the word at position `i`.
    pub fn from_u64(len: usize, word: u64) -> Self {
        assert!(len <= WORD, "from_u64 supports at most 64 bits");
        let mut v = Self::zeros(len);
        if len > 0 {
            let mask = if len == WORD { u64::MAX } else { (1u64 << len) - 1 };
            v.words[0] = word & mask;
        }
        v
    }

    /// The vector as a single word; only valid for `len <= 64`.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= WORD, "to_u64 supports at most 64 bits");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of positions set in both vectors.
    pub fn and_count(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &Self) -> bool {
        self.and_count(other) % 2 == 1
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "length mismatch");
        Self {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn or(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "length mismatch");
        Self {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    /// Ascending 0-based positions of the set bits.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let tz = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    /// Lowest set position, if any.
    pub fn first_one(&self) -> Option<usize> {
        self.support().next()
    }

    /// `self ‖ other`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.len + other.len);
        for i in self.support() {
            out.set(i, true);
        }
        for i in other.support() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Bits `start..end` as a new vector.
    pub fn slice(&self, start: usize, end: usize) -> Self {
        assert!(start <= end && end <= self.len, "slice out of range");
        Self::from_indices(
            end - start,
            self.support().filter(|&i| i >= start && i < end).map(|i| i - start),
        )
    }

    /// Lexicographic order on the sorted supports; `{1,5,9}` precedes `{2,3}`.
    pub fn cmp_support(&self, other: &Self) -> Ordering {
        self.support().cmp(other.support())
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    /// Parses a string of `0`/`1` characters; spaces and underscores are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let bits: Vec<bool> = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '_')
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Usage(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<_>>()?;
        Ok(Self::from_bools(&bits))
    }
}

/// Row-major dense matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

/// Result of Gaussian elimination: the reduced rows plus the pivot column of
/// each leading row.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: BitMatrix,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    /// An empty matrix with a fixed column count.
    pub fn empty(cols: usize) -> Self {
        Self::zeros(0, cols)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVector::from_indices(n, [i])).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    /// Parses rows such as `["1010101", "0110011"]`.
    pub fn parse_rows(rows: &[&str]) -> Result<Self> {
        let parsed: Vec<BitVector> = rows.iter().map(|r| r.parse()).collect::<Result<_>>()?;
        let cols = parsed.first().map_or(0, BitVector::len);
        Self::from_rows(cols, parsed)
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Self {
            cols: self.cols,
            rows,
        })
    }

    /// `[self | other]`, row by row.
    pub fn hconcat(&self, other: &Self) -> Result<Self> {
        if self.n_rows() != other.n_rows() {
            return Err(Error::DimensionMismatch {
                expected: self.n_rows(),
                found: other.n_rows(),
            });
        }
        Ok(Self {
            cols: self.cols + other.cols,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.concat(b))
                .collect(),
        })
    }

    /// Pads every row with `left` zero columns before and `right` after.
    pub fn pad(&self, left: usize, right: usize) -> Self {
        let l = BitVector::zeros(left);
        let r = BitVector::zeros(right);
        Self {
            cols: left + self.cols + right,
            rows: self.rows.iter().map(|row| l.concat(row).concat(&r)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.n_rows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.support() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// Reduced row echelon form.
    pub fn echelon(&self) -> Echelon {
        let (reduced, pivots, _) = self.eliminate_tracked(false);
        Echelon { reduced, pivots }
    }

    /// Gaussian elimination. When `track` is set, the third value holds for
    /// each reduced row the combination of original rows that produced it.
    fn eliminate_tracked(&self, track: bool) -> (BitMatrix, Vec<usize>, Vec<BitVector>) {
        let n = self.n_rows();
        let mut rows = self.rows.clone();
        let mut tags: Vec<BitVector> = if track {
            (0..n).map(|i| BitVector::from_indices(n, [i])).collect()
        } else {
            Vec::new()
        };
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == n {
                break;
            }
            let Some(p) = (next..n).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, p);
            if track {
                tags.swap(next, p);
            }
            for r in 0..n {
                if r != next && rows[r].get(col) {
                    let pivot_row = rows[next].clone();
                    rows[r].xor_assign(&pivot_row);
                    if track {
                        let pivot_tag = tags[next].clone();
                        tags[r].xor_assign(&pivot_tag);
                    }
                }
            }
            pivots.push(col);
            next += 1;
        }
        (
            BitMatrix {
                cols: self.cols,
                rows,
            },
            pivots,
            tags,
        )
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// `self · otherᵀ` over GF(2).
    pub fn mat_mul_t(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|a| BitVector::from_bools(&other.rows.iter().map(|b| a.dot(b)).collect::<Vec<_>>()))
            .collect();
        Ok(Self {
            cols: other.n_rows(),
            rows,
        })
    }

    /// Finds `x` with `xᵀ·self = bᵀ`, i.e. a selection of rows summing to `b`.
    /// Returns `None` when `b` is outside the row space.
    pub fn solve(&self, b: &BitVector) -> Option<BitVector> {
        if b.len() != self.cols {
            return None;
        }
        let (reduced, pivots, tags) = self.eliminate_tracked(true);
        let mut residual = b.clone();
        let mut x = BitVector::zeros(self.n_rows());
        for (i, &col) in pivots.iter().enumerate() {
            if residual.get(col) {
                residual.xor_assign(reduced.row(i));
                x.xor_assign(&tags[i]);
            }
        }
        residual.is_zero().then_some(x)
    }

    pub fn in_rowspace(&self, b: &BitVector) -> bool {
        self.solve(b).is_some()
    }

    /// Basis of `{v : self·vᵀ = 0}` with `cols − rank` rows.
    pub fn nullspace(&self) -> Self {
        let Echelon { reduced, pivots } = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::from_indices(self.cols, [free]);
                for (i, &p) in pivots.iter().enumerate() {
                    if reduced.get(i, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        Self {
            cols: self.cols,
            rows,
        }
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.n_rows(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn steane_g() -> BitMatrix {
        BitMatrix::parse_rows(&["1010101", "0110011", "0001111"]).unwrap()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(steane_g().rank(), 3);
        assert_eq!(BitMatrix::zeros(4, 4).rank(), 0);
        assert_eq!(BitMatrix::identity(5).rank(), 5);
    }

    #[test]
    fn mat_mul_t_identity_and_mismatch() {
        let id = BitMatrix::identity(4);
        assert_eq!(id.mat_mul_t(&id).unwrap(), id);
        assert!(matches!(
            id.mat_mul_t(&BitMatrix::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn solve_examples() {
        let g = steane_g();
        let b = g.row(0).xor(g.row(1));
        assert_eq!(g.solve(&b).unwrap().to_string(), "110");
        assert!(g.solve(&BitVector::ones(7)).is_none());
        let id = BitMatrix::identity(3);
        assert_eq!(id.solve(&"010".parse().unwrap()).unwrap().to_string(), "010");
    }

    #[test]
    fn no_row_combination_of_steane_g_is_all_ones() {
        // brute force over all 8 selections
        let g = steane_g();
        let ones = BitVector::ones(7);
        for sel in 0u64..8 {
            let mut acc = BitVector::zeros(7);
            for r in 0..3 {
                if sel >> r & 1 == 1 {
                    acc.xor_assign(g.row(r));
                }
            }
            assert_ne!(acc, ones);
        }
    }

    #[test]
    fn nullspace_of_steane_g_contains_its_rows() {
        let g = steane_g();
        let ns = g.nullspace();
        assert_eq!(ns.n_rows(), 4);
        for row in g.rows() {
            assert!(ns.in_rowspace(row));
        }
        assert_eq!(BitMatrix::identity(6).nullspace().n_rows(), 0);
    }

    #[test]
    fn support_and_lex_order() {
        let a = BitVector::from_indices(70, [1, 5, 9, 65]);
        assert_eq!(a.support().collect::<Vec<_>>(), vec![1, 5, 9, 65]);
        assert_eq!(a.weight(), 4);
        let b = BitVector::from_indices(70, [2, 3]);
        assert_eq!(a.cmp_support(&b), Ordering::Less);
        assert_eq!(BitVector::ones(70).weight(), 70);
        assert_eq!(a.slice(4, 10).to_string(), "010001");
    }

    fn arb_matrix() -> impl Strategy<Value = BitMatrix> {
        (1usize..9, 1usize..80).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
                move |rows| {
                    BitMatrix::from_rows(c, rows.iter().map(|b| BitVector::from_bools(b)).collect())
                        .unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn nullspace_is_orthogonal_with_complementary_rank(a in arb_matrix()) {
            let ns = a.nullspace();
            prop_assert!(a.mat_mul_t(&ns).unwrap().is_zero());
            prop_assert_eq!(ns.rank(), a.n_cols() - a.rank());
            prop_assert_eq!(ns.n_rows(), ns.rank());
            prop_assert!(a.rank() <= a.n_rows().min(a.n_cols()));
        }

        #[test]
        fn solve_is_exact_or_rank_grows(a in arb_matrix(), seed in any::<u64>()) {
            let mut b = BitVector::zeros(a.n_cols());
            for i in 0..a.n_cols() {
                if (seed.rotate_left(i as u32) ^ (i as u64 * 0x9e37)) & 3 == 0 {
                    b.set(i, true);
                }
            }
            let mut stacked = a.clone();
            stacked.push_row(b.clone()).unwrap();
            match a.solve(&b) {
                Some(x) => {
                    let mut acc = BitVector::zeros(a.n_cols());
                    for r in x.support() {
                        acc.xor_assign(a.row(r));
                    }
                    prop_assert_eq!(acc, b);
                    prop_assert_eq!(stacked.rank(), a.rank());
                }
                None => prop_assert_eq!(stacked.rank(), a.rank() + 1),
            }
        }

        #[test]
        fn self_xor_is_zero(bits in proptest::collection::vec(any::<bool>(), 0..200)) {
            let v = BitVector::from_bools(&bits);
            prop_assert!(v.xor(&v).is_zero());
        }
    }
}
