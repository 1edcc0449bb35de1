// Picking the best affordable replacement with few policy-cost calls.

use inspection_planner::planner::{exhaustive_argmax, lazy_argmax, LazyCandidate};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let candidates = [
        LazyCandidate { pose: 0, gain: 5.0 },
        LazyCandidate { pose: 1, gain: 4.0 },
        LazyCandidate { pose: 2, gain: 3.0 },
        LazyCandidate { pose: 3, gain: 1.0 },
    ];
    let lower = [12.0, 8.0, 6.0, 2.0];
    let cost = [13.0, 11.0, 9.0, 3.0];
    let budget = 10.0;

    let mut calls = Vec::new();
    let lazy = lazy_argmax(&candidates, budget, |v| lower[v], |v| {
        calls.push(v);
        cost[v]
    });
    let full = exhaustive_argmax(&candidates, budget, |v| cost[v]);
    println!("lazy pick {:?} with policy cost evaluated for {calls:?}", lazy.pose);
    println!("exhaustive pick {:?} after {} evaluations", full.pose, full.exact_evaluations);
    assert_eq!(lazy.pose, full.pose);
    Ok(())
}

fn main() {
    run_example().expect("lazy replacement example");
}
