use std::cmp::Ordering;
use std::collections::BinaryHeap;

use nalgebra::Point3;
use rayon::prelude::*;

use super::{Adjacency, DiscretizationError};

/// Dense square matrix of pairwise distances, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn from_row_major(dim: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), dim * dim, "distance matrix needs dim² entries");
        Self { dim, data }
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let data = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

#[derive(Clone, Copy, PartialEq)]
struct State {
    dist: f64,
    node: usize,
}

impl Eq for State {}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn dijkstra(weighted: &[Vec<(usize, f64)>], source: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; weighted.len()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(State {
        dist: 0.0,
        node: source,
    });
    while let Some(State { dist: d, node }) = heap.pop() {
        if d > dist[node] {
            continue;
        }
        for &(next, w) in &weighted[node] {
            let candidate = d + w;
            if candidate < dist[next] {
                dist[next] = candidate;
                heap.push(State {
                    dist: candidate,
                    node: next,
                });
            }
        }
    }
    dist
}

/// All-pairs shortest paths over a sparse graph with non-negative weights.
///
/// Johnson's algorithm with the reweighting step elided: with non-negative
/// weights the Bellman–Ford potentials are all zero, leaving one Dijkstra
/// run per source. Sources run in parallel. The result is symmetrised from
/// the lower-indexed source so it is exactly symmetric.
pub fn shortest_path_matrix(
    weighted: &[Vec<(usize, f64)>],
) -> Result<DistanceMatrix, DiscretizationError> {
    let n = weighted.len();
    if weighted.iter().flatten().any(|&(_, w)| !(w >= 0.0)) {
        return Err(DiscretizationError::NegativeWeight);
    }
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|s| dijkstra(weighted, s))
        .collect();
    if rows.iter().flatten().any(|d| d.is_infinite()) {
        return Err(DiscretizationError::Disconnected);
    }
    Ok(DistanceMatrix::from_fn(n, |i, j| {
        if i <= j {
            rows[i][j]
        } else {
            rows[j][i]
        }
    }))
}

/// Shortest translation distances `d_t` over the fiber graph, with each edge
/// weighted by the Euclidean distance between its endpoints.
pub fn all_pairs_shortest(
    adjacency: &Adjacency,
    positions: &[Point3<f64>],
) -> Result<DistanceMatrix, DiscretizationError> {
    let weighted: Vec<Vec<(usize, f64)>> = adjacency
        .iter()
        .enumerate()
        .map(|(i, nbrs)| {
            nbrs.iter()
                .map(|&j| (j, (positions[i] - positions[j]).norm()))
                .collect()
        })
        .collect();
    shortest_path_matrix(&weighted)
}
