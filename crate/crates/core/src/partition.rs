//! Labeled K-way partitions, balance and cutsize.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::ratio::Ratio;

/// Assignment of every vertex to one of `k` labeled parts. Parts are ordered,
/// so swapping two labels yields a different partition. Labels are 0-based
/// here; the text format is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    k: usize,
    assignment: Vec<usize>,
}

impl Partition {
    pub fn new(k: usize, assignment: Vec<usize>) -> Result<Self> {
        if k == 0 {
            return Err(Error::NoParts);
        }
        let mut sizes = vec![0usize; k];
        for &label in &assignment {
            if label >= k {
                return Err(Error::LabelOutOfRange { label: label + 1, k });
            }
            sizes[label] += 1;
        }
        if let Some(empty) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::EmptyPart(empty + 1));
        }
        Ok(Partition { k, assignment })
    }

    /// 1-based labels; `k` is the largest label.
    pub fn from_one_based(labels: &[usize]) -> Result<Self> {
        let k = labels.iter().copied().max().ok_or(Error::NoParts)?;
        let assignment = labels
            .iter()
            .map(|&l| {
                l.checked_sub(1)
                    .ok_or(Error::LabelOutOfRange { label: l, k })
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(k, assignment)
    }

    /// Two parts; `first` lists the vertices of part 1.
    pub fn bipartition(vertex_count: usize, first: &[usize]) -> Result<Self> {
        let mut assignment = vec![1; vertex_count];
        for &v in first {
            if v >= vertex_count {
                return Err(Error::DimensionMismatch(format!(
                    "vertex {v} out of range for {vertex_count} vertices"
                )));
            }
            assignment[v] = 0;
        }
        Partition::new(2, assignment)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn label(&self, vertex: usize) -> usize {
        self.assignment[vertex]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        part_sizes(self.k, &self.assignment)
    }

    /// Vertices of each part, ascending.
    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.k];
        for (v, &l) in self.assignment.iter().enumerate() {
            parts[l].push(v);
        }
        parts
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.assignment.iter().map(|l| l + 1).collect()
    }

    pub fn is_balanced(&self, epsilon: Ratio) -> bool {
        let max = self.part_sizes().into_iter().max().unwrap_or(0);
        fits_balance(max, self.vertex_count(), self.k, epsilon)
    }
}

pub(crate) fn part_sizes(k: usize, assignment: &[usize]) -> Vec<usize> {
    let mut sizes = vec![0usize; k];
    for &l in assignment {
        sizes[l] += 1;
    }
    sizes
}

/// `largest <= (m / k)(1 + epsilon)`, compared exactly.
pub fn fits_balance(largest: usize, m: usize, k: usize, epsilon: Ratio) -> bool {
    let (num, den) = (epsilon.numer() as u128, epsilon.denom() as u128);
    (largest as u128) * (k as u128) * den <= (m as u128) * (den + num)
}

/// Number of nets whose support meets at least two parts.
pub fn cutsize(h: &Hypergraph, p: &Partition) -> Result<usize> {
    if p.vertex_count() != h.vertex_count() {
        return Err(Error::DimensionMismatch(format!(
            "partition covers {} vertices, hypergraph has {}",
            p.vertex_count(),
            h.vertex_count()
        )));
    }
    Ok(count_cut_nets(h.nets(), p.assignment()))
}

/// Cut test on raw nets; multiplicities do not matter.
pub(crate) fn count_cut_nets(nets: &[Vec<usize>], assignment: &[usize]) -> usize {
    nets.iter()
        .filter(|net| {
            let first = assignment[net[0]];
            net[1..].iter().any(|&v| assignment[v] != first)
        })
        .count()
}

/// Nets of each part that are not cut, in index order.
pub fn exclusive_nets(h: &Hypergraph, p: &Partition) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); p.k()];
    for (j, net) in h.nets().iter().enumerate() {
        let first = p.label(net[0]);
        if net.iter().all(|&v| p.label(v) == first) {
            out[first].push(j);
        }
    }
    out
}
