#![allow(dead_code)]

use inspection_planner::discretization::{sample_orientations, DistanceMatrix, PoseGraph};
use inspection_planner::quality::QualityMatrix;
use inspection_planner::tsp::CostModel;
use nalgebra::Point3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sparse random quality matrix with values in (0, 1].
pub fn random_quality(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> QualityMatrix {
    let dense: Vec<Vec<f64>> = (0..cols)
        .map(|_| {
            (0..rows)
                .map(|_| {
                    if rng.random_bool(density) {
                        1.0 - rng.random::<f64>()
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect();
    QualityMatrix::from_dense_columns(rows, &dense).unwrap()
}

pub fn euclidean_matrix(rng: &mut ChaCha8Rng, n: usize) -> DistanceMatrix {
    let p: Vec<[f64; 2]> = (0..n).map(|_| [rng.random(), rng.random()]).collect();
    DistanceMatrix::from_fn(n, |i, j| ((p[i][0] - p[j][0]).powi(2) + (p[i][1] - p[j][1]).powi(2)).sqrt())
}

/// Minimum closed tour by enumerating every permutation that starts at 0.
pub fn brute_force_tour(d: &DistanceMatrix) -> f64 {
    let n = d.dim();
    if n <= 1 {
        return 0.0;
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best = f64::INFINITY;
    permute(&mut rest, 0, &mut |perm| {
        let mut cost = d.get(0, perm[0]) + d.get(perm[perm.len() - 1], 0);
        for w in perm.windows(2) {
            cost += d.get(w[0], w[1]);
        }
        best = best.min(cost);
    });
    best
}

/// Minimum open path over all start nodes and orders.
pub fn brute_force_path(d: &DistanceMatrix) -> f64 {
    let n = d.dim();
    if n <= 1 {
        return 0.0;
    }
    let mut all: Vec<usize> = (0..n).collect();
    let mut best = f64::INFINITY;
    permute(&mut all, 0, &mut |perm| {
        let cost: f64 = perm.windows(2).map(|w| d.get(w[0], w[1])).sum();
        best = best.min(cost);
    });
    best
}

pub fn permute(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Brute-forceable planning instance.
pub struct SmallInstance {
    pub graph: PoseGraph,
    pub quality: QualityMatrix,
    pub model: CostModel,
}

/// 5 positions × 2 orientations in the unit cube, 20 model points.
pub fn small_instance(rng: &mut ChaCha8Rng) -> SmallInstance {
    small_instance_sized(rng, 5, 2)
}

pub fn small_instance_sized(rng: &mut ChaCha8Rng, positions: usize, orientations: usize) -> SmallInstance {
    let points = (0..positions)
        .map(|_| Point3::new(rng.random(), rng.random(), rng.random()))
        .collect();
    let orients = sample_orientations(orientations, rng.random()).unwrap();
    let graph = PoseGraph::euclidean(points, orients, 0.1).unwrap();
    let quality = random_quality(rng, 20, graph.n_poses(), 0.3);
    let alpha = rng.random_range(0.01..0.1);
    let budget = rng.random_range(0.5..3.0);
    let model = CostModel::new(alpha, budget).unwrap();
    SmallInstance { graph, quality, model }
}

/// `f` by the column-max definition, independent of the library objective.
pub fn column_max_quality(q: &QualityMatrix, poses: &[usize]) -> f64 {
    (0..q.rows())
        .map(|m| poses.iter().map(|&v| q.get(m, v)).fold(0.0, f64::max))
        .sum()
}
