use std::cell::RefCell;

use crate::discretization::{PoseGraph, ViewPose};
use crate::tsp::TourShape;

/// Nearest-neighbour tour over a growing pose list, answering "what would
/// the tour cost with one more pose" without rerunning the whole heuristic.
///
/// The new pose is appended last, so it loses every distance tie. Until the
/// heuristic would step onto it, the tour follows the cached visiting order;
/// only the remainder is simulated. Results are bit-identical to
/// [`crate::tsp::nn_travel_cost`] on the extended list.
#[derive(Clone, Debug)]
pub struct NnPath<'g> {
    graph: &'g PoseGraph,
    shape: TourShape,
    nodes: Vec<usize>,
    vps: Vec<ViewPose>,
    visit: Vec<usize>,
    step: Vec<f64>,
    travel: f64,
}

thread_local! {
    static REMAINING: RefCell<Vec<(usize, usize)>> = const { RefCell::new(Vec::new()) };
}

impl<'g> NnPath<'g> {
    pub fn new(graph: &'g PoseGraph, shape: TourShape) -> Self {
        Self {
            graph,
            shape,
            nodes: Vec::new(),
            vps: Vec::new(),
            visit: Vec::new(),
            step: Vec::new(),
            travel: 0.0,
        }
    }

    pub fn from_subset(graph: &'g PoseGraph, shape: TourShape, subset: &[usize]) -> Self {
        let mut path = Self::new(graph, shape);
        path.nodes = subset.to_vec();
        path.vps = subset.iter().map(|&v| graph.view_pose(v)).collect();
        path.rebuild();
        path
    }

    pub fn push(&mut self, pose: usize) {
        self.nodes.push(pose);
        self.vps.push(self.graph.view_pose(pose));
        self.rebuild();
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    /// Nearest-neighbour travel cost of the current list.
    pub fn travel(&self) -> f64 {
        self.travel
    }

    #[inline]
    fn dist(&self, a: ViewPose, b: ViewPose) -> f64 {
        self.graph.pose_cost(a, b)
    }

    #[inline]
    fn closing(&self, last: ViewPose) -> f64 {
        match self.shape {
            TourShape::Closed => self.dist(last, self.vps[0]),
            TourShape::Open => 0.0,
        }
    }

    fn rebuild(&mut self) {
        let n = self.nodes.len();
        self.visit.clear();
        self.step.clear();
        self.travel = 0.0;
        if n == 0 {
            return;
        }
        let mut visited = vec![false; n];
        visited[0] = true;
        self.visit.push(0);
        let mut current = 0;
        let mut cost = 0.0;
        for _ in 1..n {
            let mut best = usize::MAX;
            let mut best_d = f64::INFINITY;
            for j in 0..n {
                if !visited[j] {
                    let dj = self.dist(self.vps[current], self.vps[j]);
                    if dj < best_d {
                        best = j;
                        best_d = dj;
                    }
                }
            }
            visited[best] = true;
            self.visit.push(best);
            self.step.push(best_d);
            cost += best_d;
            current = best;
        }
        self.travel = if n == 1 {
            0.0
        } else {
            cost + self.closing(self.vps[current])
        };
    }

    /// Nearest-neighbour travel cost of the list with `pose` appended.
    pub fn travel_with(&self, pose: usize) -> f64 {
        let m = self.nodes.len();
        if m == 0 {
            return 0.0;
        }
        let v = self.graph.view_pose(pose);
        let mut cost = 0.0;
        for i in 0..m - 1 {
            let here = self.vps[self.visit[i]];
            let dv = self.dist(here, v);
            if dv < self.step[i] {
                return self.finish_from(v, cost + dv, i);
            }
            cost += self.step[i];
        }
        let last = self.vps[self.visit[m - 1]];
        cost += self.dist(last, v);
        cost + self.closing(v)
    }

    /// Continue the heuristic from the inserted pose, which was reached
    /// right after cached step `at`.
    ///
    /// Once the walk stands on the cached node of rank `r` having visited
    /// exactly the cached nodes of rank `at+1..=r`, its state matches the
    /// cached walk and the remaining steps are copied.
    fn finish_from(&self, start: ViewPose, mut cost: f64, at: usize) -> f64 {
        let m = self.nodes.len();
        REMAINING.with(|r| {
            let mut rem = r.borrow_mut();
            rem.clear();
            // (node, rank in the cached walk), ordered by node for ties.
            rem.extend((at + 1..m).map(|rank| (self.visit[rank], rank)));
            rem.sort_unstable();
            let mut current = start;
            let mut visited = 0;
            let mut max_rank = at;
            while !rem.is_empty() {
                let mut best = 0;
                let mut best_d = f64::INFINITY;
                for (slot, &(j, _)) in rem.iter().enumerate() {
                    let dj = self.dist(current, self.vps[j]);
                    if dj < best_d {
                        best = slot;
                        best_d = dj;
                    }
                }
                cost += best_d;
                let (node, rank) = rem.remove(best);
                current = self.vps[node];
                visited += 1;
                max_rank = max_rank.max(rank);
                if rank == max_rank && visited == rank - at {
                    for step in &self.step[rank..] {
                        cost += step;
                    }
                    return cost + self.closing(self.vps[self.visit[m - 1]]);
                }
            }
            cost + self.closing(current)
        })
    }
}
