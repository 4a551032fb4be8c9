//! Hypergraph view of a parity-check matrix: rows are vertices, columns are
//! nets.
//!
//! Nets are kept at socket level as sorted multisets, since configuration-model
//! samples contain parallel edges. Whether a net connects to a vertex is
//! always decided on its support.

use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hypergraph {
    vertex_count: usize,
    nets: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Each net is a multiset of vertex indices; order is irrelevant.
    pub fn new(vertex_count: usize, nets: Vec<Vec<usize>>) -> Result<Self> {
        let mut nets = nets;
        for (j, net) in nets.iter_mut().enumerate() {
            if net.is_empty() {
                return Err(Error::EmptyNet(j));
            }
            if let Some(&vertex) = net.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::VertexOutOfBounds {
                    net: j,
                    vertex,
                    vertex_count,
                });
            }
            net.sort_unstable();
        }
        Ok(Hypergraph { vertex_count, nets })
    }

    pub(crate) fn from_sorted_unchecked(vertex_count: usize, nets: Vec<Vec<usize>>) -> Self {
        debug_assert!(nets
            .iter()
            .all(|n| !n.is_empty() && n.windows(2).all(|w| w[0] <= w[1])));
        Hypergraph { vertex_count, nets }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn net_count(&self) -> usize {
        self.nets.len()
    }

    /// Net `j` with multiplicity, sorted.
    pub fn net(&self, j: usize) -> &[usize] {
        &self.nets[j]
    }

    pub fn nets(&self) -> &[Vec<usize>] {
        &self.nets
    }

    /// Distinct vertices of net `j`, sorted.
    pub fn support(&self, j: usize) -> Vec<usize> {
        let mut s = self.nets[j].clone();
        s.dedup();
        s
    }

    pub fn supports(&self) -> Vec<Vec<usize>> {
        (0..self.nets.len()).map(|j| self.support(j)).collect()
    }

    /// How many times each vertex appears across all nets.
    pub fn vertex_multiplicities(&self) -> Vec<usize> {
        let mut counts = vec![0; self.vertex_count];
        for &v in self.nets.iter().flatten() {
            counts[v] += 1;
        }
        counts
    }

    pub fn socket_count(&self) -> usize {
        self.nets.iter().map(Vec::len).sum()
    }

    /// Vertex `i` is in net `j` iff `mat[i][j] = 1`.
    pub fn from_matrix(mat: &BinaryMatrix) -> Result<Self> {
        let nets = (0..mat.cols())
            .map(|c| {
                let col = mat.col(c);
                if col.is_empty() {
                    Err(Error::EmptyColumn(c))
                } else {
                    Ok(col.to_vec())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Hypergraph {
            vertex_count: mat.rows(),
            nets,
        })
    }

    /// Incidence matrix of the support; multiplicities are dropped.
    pub fn to_matrix(&self) -> BinaryMatrix {
        let entries: Vec<_> = (0..self.nets.len())
            .flat_map(|j| self.support(j).into_iter().map(move |i| (i, j)))
            .collect();
        BinaryMatrix::from_entries(self.vertex_count, self.nets.len(), entries)
            .expect("supports are in bounds and deduplicated")
    }

    /// Converts a Tanner graph into a hypergraph. Check node `i` becomes
    /// vertex `i`, variable node `j` becomes net `j`, and parallel edges
    /// become repeated vertices. Every node must have exactly its declared
    /// degree.
    pub fn from_tanner(
        variable_degrees: &[usize],
        check_degrees: &[usize],
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        let n = variable_degrees.len();
        let m = check_degrees.len();
        let mut nets = vec![Vec::new(); n];
        let mut check_seen = vec![0usize; m];
        for (index, &(variable, check)) in edges.iter().enumerate() {
            if variable >= n || check >= m {
                return Err(Error::EdgeOutOfBounds {
                    index,
                    variable,
                    check,
                });
            }
            nets[variable].push(check);
            check_seen[check] += 1;
        }
        for (j, net) in nets.iter().enumerate() {
            if net.len() != variable_degrees[j] {
                return Err(Error::DegreeMismatch {
                    side: "variable",
                    node: j,
                    declared: variable_degrees[j],
                    actual: net.len(),
                });
            }
        }
        for (i, &seen) in check_seen.iter().enumerate() {
            if seen != check_degrees[i] {
                return Err(Error::DegreeMismatch {
                    side: "check",
                    node: i,
                    declared: check_degrees[i],
                    actual: seen,
                });
            }
        }
        Hypergraph::new(m, nets)
    }
}
