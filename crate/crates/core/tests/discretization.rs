mod common;

use inspection_planner::discretization::{
    all_pairs_shortest, build_fiber_graph, filter_unreachable, orientation_distance, read_matrix,
    sample_orientations, write_matrix, AllReachable, DistanceMatrix, PoseGraph, ReachabilitySpec,
};
use inspection_planner::tsp::subset_cost_matrix;
use nalgebra::{Point3, UnitQuaternion, Vector3};
use proptest::prelude::*;
use rand::Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn floyd_warshall(adjacency: &[Vec<usize>], positions: &[Point3<f64>]) -> Vec<Vec<f64>> {
    let n = positions.len();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for i in 0..n {
        d[i][i] = 0.0;
        for &j in &adjacency[i] {
            d[i][j] = (positions[i] - positions[j]).norm();
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

#[test]
fn shortest_paths_match_floyd_warshall() {
    let mut rng = common::rng(5);
    let mut checked = 0;
    while checked < 40 {
        let lattice: Vec<Point3<f64>> = (0..4)
            .flat_map(|x| (0..4).flat_map(move |y| (0..3).map(move |z| Point3::new(x as f64, y as f64, z as f64) * 0.1)))
            .collect();
        let keep = rng.random_range(0.4..0.9);
        let positions: Vec<Point3<f64>> = lattice.into_iter().filter(|_| rng.random_bool(keep)).collect();
        let Ok(outcome) = filter_unreachable(&positions, 0.1, &AllReachable) else {
            continue;
        };
        let kept: Vec<Point3<f64>> = outcome.retained.iter().map(|&i| positions[i]).collect();
        assert!(kept.len() <= 50);
        let adjacency = build_fiber_graph(&kept, 0.1).unwrap();
        let fast = all_pairs_shortest(&adjacency, &kept).unwrap();
        let oracle = floyd_warshall(&adjacency, &kept);
        for i in 0..kept.len() {
            for j in 0..kept.len() {
                assert!((fast.get(i, j) - oracle[i][j]).abs() <= 1e-12, "({i}, {j})");
            }
        }
        checked += 1;
    }
}

#[test]
fn half_space_keeps_exactly_the_upper_points() {
    let positions: Vec<Point3<f64>> = (-2..=2)
        .flat_map(|x| (-1..=1).map(move |y| Point3::new(x as f64, y as f64, 0.0)))
        .collect();
    let spec = ReachabilitySpec::HalfSpace { axis: 0, offset: 0.0 };
    let outcome = filter_unreachable(&positions, 1.0, &spec).unwrap();
    let kept: Vec<usize> = (0..positions.len()).filter(|&i| positions[i].x >= 0.0).collect();
    assert_eq!(outcome.retained, kept);
    assert_eq!(outcome.disconnected, 0);
}

#[test]
fn distance_matrix_cache_round_trip() {
    let mut rng = common::rng(8);
    let d = common::euclidean_matrix(&mut rng, 17);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.bin");
    write_matrix(&d, &path).unwrap();
    let back = read_matrix(&path).unwrap();
    assert_eq!(back.as_slice(), d.as_slice());
}

fn octant_p_value(dirs: impl Iterator<Item = Vector3<f64>>) -> f64 {
    let mut counts = [0.0f64; 8];
    let mut n = 0.0;
    for v in dirs {
        let idx = usize::from(v.x > 0.0) | usize::from(v.y > 0.0) << 1 | usize::from(v.z > 0.0) << 2;
        counts[idx] += 1.0;
        n += 1.0;
    }
    let e = n / 8.0;
    let stat: f64 = counts.iter().map(|c| (c - e).powi(2) / e).sum();
    1.0 - ChiSquared::new(7.0).unwrap().cdf(stat)
}

#[test]
fn rotated_axes_cover_the_octants_uniformly() {
    let q = sample_orientations(100_000, 21).unwrap();
    let p = octant_p_value(q.iter().map(|r| r * Vector3::z()));
    assert!(p > 0.001, "p = {p}");
    assert!(q.iter().all(|r| (r.quaternion().norm() - 1.0).abs() < 1e-12));
}

#[test]
fn uniformity_survives_a_fixed_rotation() {
    let fixed = UnitQuaternion::from_euler_angles(0.3, -1.1, 2.0);
    let q = sample_orientations(100_000, 22).unwrap();
    let left = octant_p_value(q.iter().map(|r| (fixed * r) * Vector3::z()));
    let right = octant_p_value(q.iter().map(|r| (r * fixed) * Vector3::z()));
    assert!(left > 0.001 && right > 0.001, "p = {left}, {right}");
}

#[test]
fn rotation_angle_distribution() {
    // Haar measure: the rotation angle θ has CDF (θ − sin θ)/π.
    let q = sample_orientations(50_000, 23).unwrap();
    let bins = 10;
    let mut counts = vec![0.0f64; bins];
    let id = UnitQuaternion::identity();
    for r in &q {
        let theta = orientation_distance(&id, r);
        let u = (theta - theta.sin()) / std::f64::consts::PI;
        counts[((u * bins as f64) as usize).min(bins - 1)] += 1.0;
    }
    let e = q.len() as f64 / bins as f64;
    let stat: f64 = counts.iter().map(|c| (c - e).powi(2) / e).sum();
    let p = 1.0 - ChiSquared::new((bins - 1) as f64).unwrap().cdf(stat);
    assert!(p > 0.001, "p = {p}");
}

#[test]
fn subset_matrix_decomposes_into_translation_and_rotation() {
    let mut rng = common::rng(31);
    let positions: Vec<Point3<f64>> = (0..30)
        .map(|_| Point3::new(rng.random(), rng.random(), rng.random()))
        .collect();
    let orientations = sample_orientations(5, 4).unwrap();
    let beta = 0.01;
    let graph = PoseGraph::euclidean(positions, orientations, beta).unwrap();
    let subset: Vec<usize> = (0..100).map(|_| rng.random_range(0..graph.n_poses())).collect();
    let d = subset_cost_matrix(&subset, &graph);
    for (i, &a) in subset.iter().enumerate() {
        for (j, &b) in subset.iter().enumerate() {
            let (va, vb) = (graph.view_pose(a), graph.view_pose(b));
            let dt = graph.position_metric().get(va.position, vb.position);
            let d_o = graph.orientation_metric().get(va.orientation, vb.orientation);
            let expected = if i == j { 0.0 } else { (1.0 - beta) * dt + beta * d_o };
            assert_eq!(d.get(i, j), expected);
            if i != j {
                assert_eq!(d.get(i, j), graph.cost(a, b));
            }
        }
    }
}

#[test]
fn pose_cost_examples() {
    let positions = vec![Point3::origin(), Point3::new(2.0, 0.0, 0.0)];
    let quarter = UnitQuaternion::from_axis_angle(&Vector3::z_axis(), std::f64::consts::FRAC_PI_2);
    let orientations = vec![UnitQuaternion::identity(), quarter];
    let g0 = PoseGraph::euclidean(positions.clone(), orientations.clone(), 0.0).unwrap();
    assert_eq!(g0.cost(0, 3), 2.0);
    let g1 = g0.with_beta(1.0).unwrap();
    assert!((g1.cost(0, 1) - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    let metric = DistanceMatrix::from_fn(2, |i, j| if i == j { 0.0 } else { 1.0 });
    let o_metric = DistanceMatrix::from_fn(2, |i, j| if i == j { 0.0 } else { 0.5 });
    let g = PoseGraph::new(positions, orientations, Vec::new(), metric, o_metric, 0.01).unwrap();
    assert!((g.cost(0, 3) - 0.995).abs() < 1e-12);
}

fn quaternion() -> impl Strategy<Value = UnitQuaternion<f64>> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_filter("non-zero", |(w, x, y, z)| w * w + x * x + y * y + z * z > 1e-3)
        .prop_map(|(w, x, y, z)| UnitQuaternion::new_normalize(nalgebra::Quaternion::new(w, x, y, z)))
}

proptest! {
    #[test]
    fn orientation_distance_is_a_metric(a in quaternion(), b in quaternion(), c in quaternion()) {
        let d = orientation_distance;
        prop_assert!((d(&a, &b) - d(&b, &a)).abs() < 1e-12);
        prop_assert!(d(&a, &a).abs() < 1e-7);
        prop_assert!(d(&a, &b) >= 0.0 && d(&a, &b) <= std::f64::consts::PI + 1e-12);
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + 1e-9);
        let neg = UnitQuaternion::new_unchecked(-a.into_inner());
        prop_assert!((d(&neg, &b) - d(&a, &b)).abs() < 1e-9);
    }

    #[test]
    fn pose_cost_is_a_metric(seed in any::<u64>(), beta in 0.0..=1.0f64) {
        let mut rng = common::rng(seed);
        let positions = (0..6).map(|_| Point3::new(rng.random(), rng.random(), rng.random())).collect();
        let graph = PoseGraph::euclidean(positions, sample_orientations(3, seed).unwrap(), beta).unwrap();
        let n = graph.n_poses();
        for a in 0..n {
            prop_assert_eq!(graph.cost(a, a), 0.0);
            for b in 0..n {
                prop_assert_eq!(graph.cost(a, b), graph.cost(b, a));
                if a != b && beta > 0.0 && beta < 1.0 {
                    prop_assert!(graph.cost(a, b) > 0.0);
                }
                for c in 0..n {
                    prop_assert!(graph.cost(a, c) <= graph.cost(a, b) + graph.cost(b, c) + 1e-12);
                }
            }
        }
    }
}
