use super::{TourEstimate, TourKind};
use crate::discretization::DistanceMatrix;

/// Closed nearest-neighbour tour from node 0. Ties go to the lowest index.
pub fn nn_tour(d: &DistanceMatrix) -> TourEstimate {
    let n = d.dim();
    if n == 0 {
        return TourEstimate::empty(TourKind::NearestNeighbor);
    }
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut current = 0;
    let mut cost = 0.0;
    visited[0] = true;
    order.push(0);
    for _ in 1..n {
        let row = d.row(current);
        let mut best = usize::MAX;
        let mut best_d = f64::INFINITY;
        for (j, &dj) in row.iter().enumerate() {
            if !visited[j] && dj < best_d {
                best = j;
                best_d = dj;
            }
        }
        visited[best] = true;
        order.push(best);
        cost += best_d;
        current = best;
    }
    cost += d.get(current, 0);
    TourEstimate {
        order,
        travel_cost: cost,
        kind: TourKind::NearestNeighbor,
    }
}

/// Nearest-neighbour tour cost over `nodes` with distances from `dist`, no
/// matrix allocation. Same tie-breaking as [`nn_tour`] on the induced matrix.
pub(crate) fn nn_cost_with(
    nodes: &[usize],
    dist: impl Fn(usize, usize) -> f64,
    visited: &mut Vec<bool>,
) -> f64 {
    let n = nodes.len();
    if n <= 1 {
        return 0.0;
    }
    visited.clear();
    visited.resize(n, false);
    visited[0] = true;
    let mut current = 0;
    let mut cost = 0.0;
    for _ in 1..n {
        let mut best = usize::MAX;
        let mut best_d = f64::INFINITY;
        for j in 0..n {
            if !visited[j] {
                let dj = dist(nodes[current], nodes[j]);
                if dj < best_d {
                    best = j;
                    best_d = dj;
                }
            }
        }
        visited[best] = true;
        cost += best_d;
        current = best;
    }
    cost + dist(nodes[current], nodes[0])
}
