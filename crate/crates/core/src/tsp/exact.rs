use super::{TourEstimate, TourKind, TspError};
use crate::discretization::DistanceMatrix;

/// Largest instance [`exact_tsp`] accepts.
pub const EXACT_TSP_LIMIT: usize = 15;

/// Optimal closed tour by dynamic programming over subsets.
///
/// `O(2ⁿ n²)` time; instances above [`EXACT_TSP_LIMIT`] nodes are refused.
pub fn exact_tsp(d: &DistanceMatrix) -> Result<TourEstimate, TspError> {
    let n = d.dim();
    if n > EXACT_TSP_LIMIT {
        return Err(TspError::TooLarge {
            size: n,
            limit: EXACT_TSP_LIMIT,
        });
    }
    match n {
        0 => return Ok(TourEstimate::empty(TourKind::Exact)),
        1 => {
            return Ok(TourEstimate {
                order: vec![0],
                travel_cost: 0.0,
                kind: TourKind::Exact,
            })
        }
        _ => {}
    }

    // Node 0 is the fixed start; subsets range over nodes 1..n, bit j-1 for node j.
    let m = n - 1;
    let full = 1usize << m;
    let mut cost = vec![f64::INFINITY; full * m];
    let mut parent = vec![usize::MAX; full * m];
    for j in 0..m {
        cost[(1 << j) * m + j] = d.get(0, j + 1);
    }
    for mask in 1..full {
        for last in 0..m {
            if mask & (1 << last) == 0 {
                continue;
            }
            let here = cost[mask * m + last];
            if !here.is_finite() {
                continue;
            }
            for next in 0..m {
                if mask & (1 << next) != 0 {
                    continue;
                }
                let to = mask | (1 << next);
                let candidate = here + d.get(last + 1, next + 1);
                if candidate < cost[to * m + next] {
                    cost[to * m + next] = candidate;
                    parent[to * m + next] = last;
                }
            }
        }
    }

    let all = full - 1;
    let (mut last, best) = (0..m)
        .map(|j| (j, cost[all * m + j] + d.get(j + 1, 0)))
        .fold((usize::MAX, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });

    let mut order = Vec::with_capacity(n);
    let mut mask = all;
    while last != usize::MAX {
        order.push(last + 1);
        let prev = parent[mask * m + last];
        mask &= !(1 << last);
        last = prev;
    }
    order.push(0);
    order.reverse();
    Ok(TourEstimate {
        order,
        travel_cost: best,
        kind: TourKind::Exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_sizes() {
        assert_eq!(exact_tsp(&DistanceMatrix::from_fn(1, |_, _| 0.0)).unwrap().travel_cost, 0.0);
        let two = DistanceMatrix::from_fn(2, |i, j| if i == j { 0.0 } else { 1.5 });
        assert_eq!(exact_tsp(&two).unwrap().travel_cost, 3.0);
    }

    #[test]
    fn three_nodes_unique_tour() {
        let raw = [[0.0, 1.0, 2.5], [1.0, 0.0, 2.0], [2.5, 2.0, 0.0]];
        let t = exact_tsp(&DistanceMatrix::from_fn(3, |i, j| raw[i][j])).unwrap();
        assert_eq!(t.travel_cost, 5.5);
        assert_eq!(t.order.len(), 3);
    }

    #[test]
    fn order_realises_cost() {
        let pts: Vec<(f64, f64)> = (0..9).map(|i| ((i * 7 % 5) as f64, (i * 3 % 4) as f64)).collect();
        let d = DistanceMatrix::from_fn(pts.len(), |i, j| {
            ((pts[i].0 - pts[j].0).powi(2) + (pts[i].1 - pts[j].1).powi(2)).sqrt()
        });
        let t = exact_tsp(&d).unwrap();
        let mut sorted = t.order.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..pts.len()).collect::<Vec<_>>());
        let walked: f64 = (0..t.order.len())
            .map(|k| d.get(t.order[k], t.order[(k + 1) % t.order.len()]))
            .sum();
        assert!((walked - t.travel_cost).abs() < 1e-9);
    }

    #[test]
    fn too_large_is_refused() {
        let d = DistanceMatrix::from_fn(16, |i, j| (i as f64 - j as f64).abs());
        assert!(matches!(exact_tsp(&d), Err(TspError::TooLarge { size: 16, .. })));
    }
}
