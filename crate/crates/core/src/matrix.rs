//! Sparse binary matrices and GF(2) elimination.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Sparse `rows x cols` matrix over GF(2), stored as sorted row and column
/// adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    row_adj: Vec<Vec<usize>>,
    col_adj: Vec<Vec<usize>>,
}

impl BinaryMatrix {
    /// Builds a matrix from the positions of its ones. Duplicates and
    /// out-of-range indices are rejected.
    pub fn from_entries<I>(rows: usize, cols: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut seen = BTreeSet::new();
        for (row, col) in entries {
            if row >= rows || col >= cols {
                return Err(Error::EntryOutOfBounds {
                    row,
                    col,
                    rows,
                    cols,
                });
            }
            if !seen.insert((row, col)) {
                return Err(Error::DuplicateEntry { row, col });
            }
        }
        let mut row_adj = vec![Vec::new(); rows];
        let mut col_adj = vec![Vec::new(); cols];
        for &(r, c) in &seen {
            row_adj[r].push(c);
            col_adj[c].push(r);
        }
        Ok(BinaryMatrix {
            rows,
            cols,
            row_adj,
            col_adj,
        })
    }

    /// Builds a matrix from dense 0/1 rows.
    pub fn from_dense(dense: &[Vec<u8>]) -> Result<Self> {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        let mut entries = Vec::new();
        for (r, row) in dense.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {r} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => entries.push((r, c)),
                    other => {
                        return Err(Error::Domain(format!(
                            "entry ({r}, {c}) = {other} is not binary"
                        )))
                    }
                }
            }
        }
        Self::from_entries(rows, cols, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        BinaryMatrix {
            rows,
            cols,
            row_adj: vec![Vec::new(); rows],
            col_adj: vec![Vec::new(); cols],
        }
    }

    pub fn identity(k: usize) -> Self {
        Self::from_entries(k, k, (0..k).map(|i| (i, i))).expect("diagonal is in bounds")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Column indices of the ones in `row`, ascending.
    pub fn row(&self, row: usize) -> &[usize] {
        &self.row_adj[row]
    }

    /// Row indices of the ones in `col`, ascending.
    pub fn col(&self, col: usize) -> &[usize] {
        &self.col_adj[col]
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.row_adj[row].binary_search(&col).is_ok()
    }

    pub fn nnz(&self) -> usize {
        self.row_adj.iter().map(Vec::len).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.row_adj
            .iter()
            .enumerate()
            .flat_map(|(r, cs)| cs.iter().map(move |&c| (r, c)))
    }

    pub fn transpose(&self) -> Self {
        BinaryMatrix {
            rows: self.cols,
            cols: self.rows,
            row_adj: self.col_adj.clone(),
            col_adj: self.row_adj.clone(),
        }
    }

    /// Submatrix on the given rows and columns, in the order given.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut col_pos = vec![usize::MAX; self.cols];
        for (j, &c) in cols.iter().enumerate() {
            col_pos[c] = j;
        }
        let entries = rows.iter().enumerate().flat_map(|(i, &r)| {
            let col_pos = &col_pos;
            self.row_adj[r]
                .iter()
                .filter(move |&&c| col_pos[c] != usize::MAX)
                .map(move |&c| (i, col_pos[c]))
        });
        Self::from_entries(rows.len(), cols.len(), entries.collect::<Vec<_>>())
            .expect("submatrix of a valid matrix")
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let mut dense = vec![vec![0u8; self.cols]; self.rows];
        for (r, c) in self.entries() {
            dense[r][c] = 1;
        }
        dense
    }

    /// Rank over GF(2).
    pub fn gf2_rank(&self) -> usize {
        let mut basis = Gf2Basis::new(self.cols);
        for r in 0..self.rows {
            basis.insert(&self.row_adj[r]);
        }
        basis.rank()
    }

    /// Greedily selects a maximal linearly independent subset of columns,
    /// scanning in index order. The result has `gf2_rank()` elements.
    pub fn independent_columns(&self) -> Vec<usize> {
        let mut basis = Gf2Basis::new(self.rows);
        (0..self.cols)
            .filter(|&c| basis.insert(&self.col_adj[c]))
            .collect()
    }
}

/// Incremental echelon basis of bit-packed vectors.
struct Gf2Basis {
    words: usize,
    // (pivot bit, vector) with pivots distinct
    vectors: Vec<(usize, Vec<u64>)>,
}

impl Gf2Basis {
    fn new(len: usize) -> Self {
        Gf2Basis {
            words: len.div_ceil(64),
            vectors: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Returns true when the vector with ones at `support` was independent.
    fn insert(&mut self, support: &[usize]) -> bool {
        let mut v = vec![0u64; self.words];
        for &i in support {
            v[i / 64] ^= 1 << (i % 64);
        }
        for (pivot, b) in &self.vectors {
            if v[pivot / 64] >> (pivot % 64) & 1 == 1 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x ^= y;
                }
            }
        }
        match leading_bit(&v) {
            Some(pivot) => {
                self.vectors.push((pivot, v));
                true
            }
            None => false,
        }
    }
}

fn leading_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .rev()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_bad_entries() {
        assert!(matches!(
            BinaryMatrix::from_entries(2, 2, [(2, 0)]),
            Err(Error::EntryOutOfBounds { .. })
        ));
        assert_eq!(
            BinaryMatrix::from_entries(2, 2, [(0, 1), (0, 1)]),
            Err(Error::DuplicateEntry { row: 0, col: 1 })
        );
    }

    #[test]
    fn rank_examples() {
        for k in 0..70 {
            assert_eq!(BinaryMatrix::identity(k).gf2_rank(), k);
        }
        let ones = BinaryMatrix::from_dense(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(ones.gf2_rank(), 1);
        assert_eq!(BinaryMatrix::zeros(3, 4).gf2_rank(), 0);
        // rows sum to zero over GF(2)
        let dep =
            BinaryMatrix::from_dense(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        assert_eq!(dep.gf2_rank(), 2);
    }

    #[test]
    fn independent_columns_spans() {
        let m = BinaryMatrix::from_dense(&[vec![1, 1, 0, 1], vec![0, 0, 1, 1]]).unwrap();
        assert_eq!(m.independent_columns(), vec![0, 2]);
    }

    #[test]
    fn submatrix_keeps_order() {
        let m = BinaryMatrix::from_dense(&[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let s = m.submatrix(&[1, 0], &[2, 0]);
        assert_eq!(s.to_dense(), vec![vec![1, 0], vec![1, 1]]);
    }

    fn dense_strategy() -> impl Strategy<Value = Vec<Vec<u8>>> {
        (0usize..9, 0usize..140).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(0u8..2, c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(dense in dense_strategy()) {
            let m = BinaryMatrix::from_dense(&dense).unwrap();
            prop_assert_eq!(m.gf2_rank(), m.transpose().gf2_rank());
            prop_assert_eq!(m.independent_columns().len(), m.gf2_rank());
            prop_assert!(m.gf2_rank() <= m.rows().min(m.cols()));
        }
    }
}
