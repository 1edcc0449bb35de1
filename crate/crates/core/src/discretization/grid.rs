use std::collections::HashMap;

use nalgebra::Point3;

use super::{DiscretizationError, ReachabilityPredicate};

/// Adjacency lists over position indices; symmetric and sorted.
pub type Adjacency = Vec<Vec<usize>>;

const ALIGN_TOL: f64 = 1e-9;

fn lattice_keys(
    positions: &[Point3<f64>],
    resolution: f64,
) -> Result<Vec<[i64; 3]>, DiscretizationError> {
    if !(resolution > 0.0) {
        return Err(DiscretizationError::NonPositive("grid resolution"));
    }
    let Some(first) = positions.first() else {
        return Ok(Vec::new());
    };
    let anchor = positions.iter().fold(*first, |lo, p| lo.inf(p));
    positions
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let mut key = [0i64; 3];
            for k in 0..3 {
                let steps = (p[k] - anchor[k]) / resolution;
                let rounded = steps.round();
                if ((steps - rounded) * resolution).abs() > ALIGN_TOL {
                    return Err(DiscretizationError::NotGridAligned { index: i });
                }
                key[k] = rounded as i64;
            }
            Ok(key)
        })
        .collect()
}

/// Connect grid positions that differ by at most one step along every axis
/// (the 26-neighbourhood: grid edges, face diagonals and space diagonals).
pub fn build_fiber_graph(
    positions: &[Point3<f64>],
    resolution: f64,
) -> Result<Adjacency, DiscretizationError> {
    let keys = lattice_keys(positions, resolution)?;
    let mut lookup = HashMap::with_capacity(keys.len());
    for (i, key) in keys.iter().enumerate() {
        if lookup.insert(*key, i).is_some() {
            return Err(DiscretizationError::DuplicatePosition { index: i });
        }
    }

    let mut adjacency = vec![Vec::new(); positions.len()];
    for (i, key) in keys.iter().enumerate() {
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    if (dx, dy, dz) == (0, 0, 0) {
                        continue;
                    }
                    let neighbour = [key[0] + dx, key[1] + dy, key[2] + dz];
                    if let Some(&j) = lookup.get(&neighbour) {
                        adjacency[i].push(j);
                    }
                }
            }
        }
        adjacency[i].sort_unstable();
    }
    Ok(adjacency)
}

/// Connected components, each sorted ascending, ordered by their smallest index.
pub fn connected_components(adjacency: &Adjacency) -> Vec<Vec<usize>> {
    let mut seen = vec![false; adjacency.len()];
    let mut components = Vec::new();
    for start in 0..adjacency.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut component = Vec::new();
        while let Some(u) = stack.pop() {
            component.push(u);
            for &v in &adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        component.sort_unstable();
        components.push(component);
    }
    components
}

/// Result of removing positions the robot cannot reach in any orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterOutcome {
    /// Indices into the input positions, ascending.
    pub retained: Vec<usize>,
    /// Reachable positions dropped because they fell outside the largest
    /// connected component.
    pub disconnected: usize,
}

/// Keep reachable positions; if they split into several components keep the
/// largest one (ties go to the component with the smallest index).
pub fn filter_unreachable(
    positions: &[Point3<f64>],
    resolution: f64,
    reach: &dyn ReachabilityPredicate,
) -> Result<FilterOutcome, DiscretizationError> {
    let reachable: Vec<usize> = (0..positions.len())
        .filter(|&i| reach.position_reachable(&positions[i]))
        .collect();
    if reachable.is_empty() {
        return Err(DiscretizationError::NoReachablePositions);
    }
    let subset: Vec<Point3<f64>> = reachable.iter().map(|&i| positions[i]).collect();
    let adjacency = build_fiber_graph(&subset, resolution)?;
    let components = connected_components(&adjacency);
    let largest = components
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| a.len().cmp(&b.len()).then(ib.cmp(ia)))
        .map(|(_, c)| c)
        .expect("at least one component");
    let disconnected = reachable.len() - largest.len();
    if disconnected > 0 {
        log::warn!(
            "reachable positions form {} components; discarding {disconnected} outside the largest",
            components.len()
        );
    }
    Ok(FilterOutcome {
        retained: largest.iter().map(|&i| reachable[i]).collect(),
        disconnected,
    })
}
