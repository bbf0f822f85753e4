//! All-pairs hop distances of a connected graph.

use crate::eigen::SymMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Integer shortest-path matrix of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    /// One BFS per source vertex.
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.order();
        let mut d = Vec::with_capacity(n * n);
        for s in 0..n {
            for dist in g.bfs_distances(s) {
                d.push(dist.ok_or(Error::Disconnected)? as u32);
            }
        }
        Ok(DistanceMatrix { n, d })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.d[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.d[i * self.n..(i + 1) * self.n]
    }

    /// Largest entry, which is the diameter.
    pub fn max_entry(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }

    /// `sum_{i<j} d_ij^2`, accumulated exactly in integers.
    pub fn sum_sq_distances(&self) -> u64 {
        let mut total = 0u64;
        for i in 0..self.n {
            for &x in &self.row(i)[i + 1..] {
                total += u64::from(x) * u64::from(x);
            }
        }
        total
    }

    pub fn to_sym(&self) -> SymMatrix {
        SymMatrix::from_fn(self.n, |i, j| f64::from(self.get(i, j)))
    }
}

/// Convenience wrapper around [`DistanceMatrix::new`].
pub fn distance_matrix(g: &Graph) -> Result<DistanceMatrix> {
    DistanceMatrix::new(g)
}
