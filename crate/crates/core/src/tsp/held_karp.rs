use crate::discretization::DistanceMatrix;

/// Default number of subgradient iterations.
pub const HELD_KARP_ITERATIONS: usize = 100;

/// Non-improving iterations before the step size is halved.
const PATIENCE: usize = 10;

struct OneTree {
    cost: f64,
    degree: Vec<i64>,
}

/// Minimum 1-tree under node potentials: a minimum spanning tree on nodes
/// `1..n` plus the two cheapest edges at node 0, with every edge weight
/// raised by the potentials of its endpoints.
fn min_one_tree(d: &DistanceMatrix, pi: &[f64], key: &mut [f64], from: &mut [usize]) -> OneTree {
    let n = d.dim();
    let w = |i: usize, j: usize| d.get(i, j) + pi[i] + pi[j];
    let mut degree = vec![0i64; n];
    let mut in_tree = vec![false; n];
    let mut cost = 0.0;

    // Prim's algorithm over 1..n, dense O(n²).
    key.fill(f64::INFINITY);
    key[1] = 0.0;
    from[1] = usize::MAX;
    for _ in 1..n {
        let mut u = usize::MAX;
        let mut best = f64::INFINITY;
        for v in 1..n {
            if !in_tree[v] && (key[v] < best || u == usize::MAX) {
                u = v;
                best = key[v];
            }
        }
        in_tree[u] = true;
        if from[u] != usize::MAX {
            cost += best;
            degree[u] += 1;
            degree[from[u]] += 1;
        }
        for v in 1..n {
            if !in_tree[v] {
                let wv = w(u, v);
                if wv < key[v] {
                    key[v] = wv;
                    from[v] = u;
                }
            }
        }
    }

    // Two cheapest edges at node 0; ties to the lower index.
    let (mut first, mut second) = (usize::MAX, usize::MAX);
    for v in 1..n {
        let wv = w(0, v);
        if first == usize::MAX || wv < w(0, first) {
            second = first;
            first = v;
        } else if second == usize::MAX || wv < w(0, second) {
            second = v;
        }
    }
    cost += w(0, first) + w(0, second);
    degree[0] = 2;
    degree[first] += 1;
    degree[second] += 1;
    OneTree { cost, degree }
}

/// Held–Karp lower bound on the optimal closed tour via subgradient ascent
/// over minimum 1-trees.
///
/// Potentials start at zero and move along `degree − 2`. The first step is
/// the initial 1-tree cost over `2n` and halves after every `10` iterations
/// without a new best bound. Returns the best bound seen. For one or two
/// nodes the exact tour cost is returned.
pub fn held_karp_bound(d: &DistanceMatrix, iterations: usize) -> f64 {
    let n = d.dim();
    match n {
        0 | 1 => return 0.0,
        2 => return 2.0 * d.get(0, 1),
        _ => {}
    }
    let mut pi = vec![0.0; n];
    let mut key = vec![0.0; n];
    let mut from = vec![usize::MAX; n];

    let initial = min_one_tree(d, &pi, &mut key, &mut from);
    let mut best = initial.cost;
    if initial.degree.iter().all(|&g| g == 2) {
        return best;
    }
    let mut step = initial.cost / (2.0 * n as f64);
    let mut degree = initial.degree;
    let mut stale = 0;

    for _ in 0..iterations {
        for (p, g) in pi.iter_mut().zip(&degree) {
            *p += step * (*g - 2) as f64;
        }
        let tree = min_one_tree(d, &pi, &mut key, &mut from);
        let bound = tree.cost - 2.0 * pi.iter().sum::<f64>();
        if bound > best {
            best = bound;
            stale = 0;
        } else {
            stale += 1;
            if stale >= PATIENCE {
                step *= 0.5;
                stale = 0;
            }
        }
        if tree.degree.iter().all(|&g| g == 2) {
            break;
        }
        degree = tree.degree;
    }
    best
}
