// Nearest-neighbour tour, exact tour and Held–Karp bound on one instance.

use inspection_planner::discretization::DistanceMatrix;
use inspection_planner::tsp::{exact_tsp, held_karp_bound, nn_tour, HELD_KARP_ITERATIONS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let cities: Vec<[f64; 2]> = (0..11).map(|_| [rng.random(), rng.random()]).collect();
    let d = DistanceMatrix::from_fn(cities.len(), |i, j| {
        let (a, b) = (cities[i], cities[j]);
        ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
    });

    let nn = nn_tour(&d);
    let exact = exact_tsp(&d)?;
    let hk = held_karp_bound(&d, HELD_KARP_ITERATIONS);
    println!("nearest neighbour {:.4} {:?}", nn.travel_cost, nn.order);
    println!("exact             {:.4} {:?}", exact.travel_cost, exact.order);
    println!("Held–Karp bound   {hk:.4} ({:.2}% of exact)", 100.0 * hk / exact.travel_cost);
    assert!(hk <= exact.travel_cost + 1e-9 && exact.travel_cost <= nn.travel_cost + 1e-9);
    Ok(())
}

fn main() {
    run_example().expect("tsp estimators example");
}
