//! Block-diagonal parallel encodability: the per-partition rank test, the
//! brute-force minimum balanced cutsize and the maximum parallel degree.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::matrix::BinaryMatrix;
use crate::partition::{count_cut_nets, fits_balance, part_sizes, Partition};
use crate::ratio::Ratio;

/// Default bound on the number of labeled assignments `K^m` enumerated.
pub const DEFAULT_ASSIGNMENT_CAP: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartRank {
    /// Number of vertices (rows) in the part.
    pub size: usize,
    /// Columns whose support lies entirely inside the part.
    pub exclusive_columns: Vec<usize>,
    /// GF(2) rank of rows of the part restricted to its exclusive columns.
    pub rank: usize,
}

/// Row and column orderings that bring the matrix into block-diagonal
/// parity form followed by the information columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockWitness {
    pub row_order: Vec<usize>,
    pub col_order: Vec<usize>,
    pub block_sizes: Vec<usize>,
}

impl BlockWitness {
    /// The permuted matrix `P H Q`.
    pub fn apply(&self, mat: &BinaryMatrix) -> BinaryMatrix {
        mat.submatrix(&self.row_order, &self.col_order)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodabilityVerdict {
    pub feasible: bool,
    pub per_part: Vec<PartRank>,
    pub cutsize: usize,
    pub balanced: bool,
    pub witness: Option<BlockWitness>,
}

/// Decides whether `mat` can be permuted into `K` non-singular diagonal
/// parity blocks whose rows are the parts of `p`.
///
/// A block for part `i` can only use columns exclusive to that part, and a
/// non-singular `m_i x m_i` choice among them exists iff those columns have
/// rank `m_i` on the rows of the part.
pub fn check_block_diagonalizable(
    mat: &BinaryMatrix,
    p: &Partition,
    epsilon: Ratio,
) -> Result<EncodabilityVerdict> {
    if mat.rows() != p.vertex_count() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, partition covers {} vertices",
            mat.rows(),
            p.vertex_count()
        )));
    }
    let k = p.k();
    let mut exclusive = vec![Vec::new(); k];
    let mut cutsize = 0;
    for c in 0..mat.cols() {
        let col = mat.col(c);
        let Some(&first) = col.first() else {
            continue;
        };
        let label = p.label(first);
        if col.iter().all(|&r| p.label(r) == label) {
            exclusive[label].push(c);
        } else {
            cutsize += 1;
        }
    }

    let parts = p.parts();
    let balanced = p.is_balanced(epsilon);
    let mut per_part = Vec::with_capacity(k);
    let mut chosen = Vec::with_capacity(k);
    for (rows, cols) in parts.iter().zip(exclusive) {
        let sub = mat.submatrix(rows, &cols);
        let basis: Vec<usize> = sub.independent_columns().into_iter().map(|j| cols[j]).collect();
        per_part.push(PartRank {
            size: rows.len(),
            exclusive_columns: cols,
            rank: basis.len(),
        });
        chosen.push(basis);
    }
    let feasible = balanced && per_part.iter().all(|pr| pr.rank == pr.size);

    let witness = feasible.then(|| {
        let row_order: Vec<usize> = parts.iter().flatten().copied().collect();
        let mut used = vec![false; mat.cols()];
        let mut col_order = Vec::with_capacity(mat.cols());
        for &c in chosen.iter().flatten() {
            used[c] = true;
            col_order.push(c);
        }
        col_order.extend((0..mat.cols()).filter(|&c| !used[c]));
        BlockWitness {
            row_order,
            col_order,
            block_sizes: parts.iter().map(Vec::len).collect(),
        }
    });

    Ok(EncodabilityVerdict {
        feasible,
        per_part,
        cutsize,
        balanced,
        witness,
    })
}

fn assignment_count(k: usize, m: usize) -> Option<u64> {
    (k as u64).checked_pow(u32::try_from(m).ok()?)
}

fn decode_assignment(mut index: u64, k: usize, out: &mut [usize]) {
    for slot in out.iter_mut() {
        *slot = (index % k as u64) as usize;
        index /= k as u64;
    }
}

/// True when some split of `m` vertices into `k` non-empty parts meets the
/// balance bound.
pub fn balanced_partition_exists(m: usize, k: usize, epsilon: Ratio) -> bool {
    if k == 0 || k > m {
        return false;
    }
    // the most even split has largest part ceil(m / k)
    fits_balance(m.div_ceil(k), m, k, epsilon)
}

/// Minimum cutsize over all `epsilon`-balanced labeled `k`-way partitions with
/// non-empty parts, by exhaustive enumeration of the `k^m` assignments.
/// Ties resolve to the smallest assignment index, so the argmin is
/// deterministic.
pub fn min_cutsize_bruteforce(
    h: &Hypergraph,
    k: usize,
    epsilon: Ratio,
    cap: u64,
) -> Result<(usize, Partition)> {
    let m = h.vertex_count();
    if !balanced_partition_exists(m, k, epsilon) {
        return Err(Error::NoBalancedPartition {
            k,
            m,
            epsilon: epsilon.to_string(),
        });
    }
    let total = assignment_count(k, m)
        .filter(|&t| t <= cap)
        .ok_or_else(|| Error::CapExceeded {
            what: "balanced partition enumeration",
            needed: format!("{k}^{m} assignments"),
            cap,
        })?;

    let supports = h.supports();
    const CHUNK: u64 = 1 << 12;
    let chunks = total.div_ceil(CHUNK);
    let best = (0..chunks)
        .into_par_iter()
        .filter_map(|chunk| {
            let mut labels = vec![0usize; m];
            let mut best: Option<(usize, u64)> = None;
            let start = chunk * CHUNK;
            for index in start..(start + CHUNK).min(total) {
                decode_assignment(index, k, &mut labels);
                let sizes = part_sizes(k, &labels);
                if sizes.contains(&0) {
                    continue;
                }
                let largest = *sizes.iter().max().expect("k >= 1");
                if !fits_balance(largest, m, k, epsilon) {
                    continue;
                }
                let cut = count_cut_nets(&supports, &labels);
                if best.is_none_or(|b| (cut, index) < b) {
                    best = Some((cut, index));
                }
            }
            best
        })
        .min();

    let (cut, index) = best.expect("a balanced partition exists");
    let mut labels = vec![0usize; m];
    decode_assignment(index, k, &mut labels);
    Ok((cut, Partition::new(k, labels)?))
}

/// Minimum balanced cutsize per part count `k` in `2..=m`; `None` where no
/// balanced partition with non-empty parts exists.
pub fn min_cutsize_profile(
    h: &Hypergraph,
    epsilon: Ratio,
    cap: u64,
) -> Result<Vec<(usize, Option<usize>)>> {
    let m = h.vertex_count();
    (2..=m)
        .map(|k| {
            if balanced_partition_exists(m, k, epsilon) {
                min_cutsize_bruteforce(h, k, epsilon, cap).map(|(c, _)| (k, Some(c)))
            } else {
                Ok((k, None))
            }
        })
        .collect()
}

/// Largest `K` with `n - m >= min cutsize` over balanced `K`-way partitions,
/// or 1 when no `K >= 2` qualifies.
///
/// Every `K` is tested; the minimum balanced cutsize is not monotone in `K`
/// once the balance bound is tight.
pub fn k_max(mat: &BinaryMatrix, epsilon: Ratio, cap: u64) -> Result<usize> {
    let h = Hypergraph::from_matrix(mat)?;
    let slack = mat.cols() as i64 - mat.rows() as i64;
    let profile = min_cutsize_profile(&h, epsilon, cap)?;
    Ok(k_max_from_profile(slack, &profile))
}

pub fn k_max_from_profile(slack: i64, profile: &[(usize, Option<usize>)]) -> usize {
    profile
        .iter()
        .filter_map(|&(k, cut)| cut.filter(|&c| slack >= c as i64).map(|_| k))
        .max()
        .unwrap_or(1)
}
