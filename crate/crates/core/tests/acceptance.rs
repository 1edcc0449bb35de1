//! Acceptance criteria 1–9. Run with `cargo test --test acceptance`; prints
//! one PASS/FAIL line per criterion and exits non-zero if any fails.

mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use inspection_planner::pipeline::{run_pipeline, RunConfig, SweepSpec};
use inspection_planner::planner::{
    brute_force_optimum, exhaustive_argmax, gcb, gcb_plus, lazy_argmax, opt_bound, Algorithm, LazyCandidate,
    Problem, ONE_MINUS_INV_E,
};
use inspection_planner::quality::{total_quality, ObjectiveState};
use inspection_planner::tsp::{exact_tsp, held_karp_bound, nn_tour, HELD_KARP_ITERATIONS};
use rand::seq::SliceRandom;
use rand::Rng;

const TOL: f64 = 1e-9;
const SEED: u64 = 2026;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn within(elapsed: Duration, limit: Duration) -> (bool, String) {
    (elapsed < limit, format!("{:.1}s of {}s", elapsed.as_secs_f64(), limit.as_secs()))
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut rng = common::rng(SEED);
    let mut worst_submodular = f64::INFINITY;
    let mut worst_monotone = f64::INFINITY;
    for _ in 0..200 {
        let k = rng.random_range(1..=50);
        let n = rng.random_range(2..=40);
        let density = rng.random_range(0.05..0.6);
        let q = common::random_quality(&mut rng, k, n, density);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let y_len = rng.random_range(0..n);
        let x_len = rng.random_range(0..=y_len);
        let (x, y) = (&order[..x_len], &order[..y_len]);
        let sx = ObjectiveState::from_poses(&q, x);
        let sy = ObjectiveState::from_poses(&q, y);
        for &v in &order[y_len..] {
            worst_submodular = worst_submodular.min(sx.marginal_gain(&q, v) - sy.marginal_gain(&q, v));
        }
        worst_monotone = worst_monotone.min(total_quality(y, &q) - total_quality(x, &q));
    }
    let (fast, time) = within(start.elapsed(), Duration::from_secs(10));
    verdict(
        worst_submodular >= -TOL && worst_monotone >= -TOL && fast,
        format!(
            "200 matrices, min gain difference {worst_submodular:.3e}, min f(Y) - f(X) {worst_monotone:.3e}, {time}"
        ),
    )
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let mut rng = common::rng(SEED + 2);
    let mut order_violations = 0;
    let mut brute_mismatches = 0;
    let mut ratio_sum = 0.0;
    for _ in 0..500 {
        let n = rng.random_range(3..=12);
        let d = common::euclidean_matrix(&mut rng, n);
        let hk = held_karp_bound(&d, HELD_KARP_ITERATIONS);
        let exact = exact_tsp(&d).expect("n ≤ 12").travel_cost;
        let nn = nn_tour(&d).travel_cost;
        if hk > exact + TOL || exact > nn + TOL {
            order_violations += 1;
        }
        if n <= 8 && (exact - common::brute_force_tour(&d)).abs() > TOL {
            brute_mismatches += 1;
        }
        ratio_sum += hk / exact;
    }
    let mean = ratio_sum / 500.0;
    let (fast, time) = within(start.elapsed(), Duration::from_secs(60));
    verdict(
        order_violations == 0 && brute_mismatches == 0 && mean >= 0.97 && fast,
        format!(
            "500 instances, {order_violations} sandwich violations, {brute_mismatches} brute-force mismatches, mean HK/exact {mean:.4}, {time}"
        ),
    )
}

/// Outcome of the planners on one brute-forceable problem.
struct Small {
    brute: f64,
    opt: f64,
    f_t: f64,
    f_t1: f64,
    gcb: f64,
    plus: f64,
}

fn small_problems() -> (Vec<Small>, Duration) {
    let start = Instant::now();
    let mut rng = common::rng(SEED + 3);
    let results = (0..100)
        .map(|_| {
            let inst = common::small_instance(&mut rng);
            let problem = Problem::new(&inst.quality, &inst.graph, inst.model).expect("valid problem");
            let (_, brute) = brute_force_optimum(&problem).expect("at most 12 poses");
            let run = gcb(&problem);
            let bound = opt_bound(&run.trace, problem.budget());
            let (plus, _) = gcb_plus(&problem, &run.solution);
            Small {
                brute,
                opt: bound.value,
                f_t: bound.feasible_quality,
                f_t1: bound.violating_quality,
                gcb: total_quality(&run.solution, &inst.quality),
                plus: total_quality(&plus, &inst.quality),
            }
        })
        .collect();
    (results, start.elapsed())
}

fn criterion_3(problems: &[Small], elapsed: Duration) -> Verdict {
    let dominance = problems.iter().filter(|p| p.brute > p.opt + TOL).count();
    let lower = problems.iter().filter(|p| p.f_t > p.opt + TOL).count();
    let upper = problems
        .iter()
        .filter(|p| p.opt > p.f_t1 / ONE_MINUS_INV_E + TOL)
        .count();
    let worst = problems
        .iter()
        .filter(|p| p.brute > 0.0)
        .map(|p| p.opt / p.brute)
        .fold(f64::INFINITY, f64::min);
    let (fast, time) = within(elapsed, Duration::from_secs(300));
    verdict(
        dominance == 0 && lower == 0 && upper == 0 && fast,
        format!(
            "100 problems, f* > OPT on {dominance}, f(X_t) > OPT on {lower}, OPT > f(X_t+1)/(1-1/e) on {upper}, min OPT/f* {worst:.3}, {time}"
        ),
    )
}

fn criterion_4(problems: &[Small]) -> Verdict {
    let guarantee = 0.5 * ONE_MINUS_INV_E;
    let ratios: Vec<f64> = problems
        .iter()
        .filter(|p| p.brute > 0.0)
        .map(|p| p.gcb / p.brute)
        .collect();
    let below_guarantee = ratios.iter().filter(|&&r| r < guarantee).count();
    let below_floor = ratios.iter().filter(|&&r| r < 0.25).count();
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    verdict(
        below_floor == 0,
        format!(
            "min f(gcb)/f* {min:.3}, {below_guarantee} below {guarantee:.3} (recorded), {below_floor} below 0.25"
        ),
    )
}

fn criterion_5(problems: &[Small]) -> Verdict {
    let worse = problems.iter().filter(|p| p.plus < p.gcb - 1e-12).count();
    let strict = problems.iter().filter(|p| p.plus > p.gcb + 1e-12).count();
    let share = strict as f64 / problems.len() as f64;
    verdict(
        worse == 0 && share >= 0.10,
        format!("f(gcb+) < f(gcb) on {worse}, strict improvement on {strict}/100 ({:.0}%)", 100.0 * share),
    )
}

fn criterion_6() -> Verdict {
    let mut rng = common::rng(SEED + 6);
    let mut mismatches = 0;
    let mut extra_evaluations = 0;
    let (mut lazy_total, mut full_total) = (0, 0);
    let mut states = 0;
    while states < 100 {
        let inst = common::small_instance_sized(&mut rng, 6, 2);
        let problem = Problem::new(&inst.quality, &inst.graph, inst.model).expect("valid problem");
        let mut ids: Vec<usize> = (0..problem.n_poses()).collect();
        ids.shuffle(&mut rng);
        let size = rng.random_range(1..=5);
        let x = &ids[..size];
        if problem.walk_cost(x) > problem.budget() {
            continue;
        }
        states += 1;
        let slot = rng.random_range(0..size);
        let mut minus = x.to_vec();
        minus.remove(slot);
        let state = ObjectiveState::from_poses(&inst.quality, &minus);
        let candidates: Vec<LazyCandidate> = ids
            .iter()
            .filter(|v| !minus.contains(v))
            .map(|&pose| LazyCandidate { pose, gain: state.marginal_gain(&inst.quality, pose) })
            .collect();
        let with = |v: usize| {
            let mut s = minus.clone();
            s.insert(slot, v);
            s
        };
        let lazy = lazy_argmax(
            &candidates,
            problem.budget(),
            |v| problem.walk_lower_bound(&with(v)),
            |v| problem.walk_cost(&with(v)),
        );
        let full = exhaustive_argmax(&candidates, problem.budget(), |v| problem.walk_cost(&with(v)));
        if lazy.pose != full.pose {
            mismatches += 1;
        }
        if lazy.exact_evaluations > full.exact_evaluations {
            extra_evaluations += 1;
        }
        lazy_total += lazy.exact_evaluations;
        full_total += full.exact_evaluations;
    }
    verdict(
        mismatches == 0 && extra_evaluations == 0,
        format!(
            "100 swap states, {mismatches} pose mismatches, {extra_evaluations} with more exact evaluations, {lazy_total} vs {full_total} exact evaluations in total"
        ),
    )
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data")
}

fn plate_config() -> RunConfig {
    RunConfig::from_file(data_dir().join("plate.json")).expect("plate config")
}

fn criterion_7() -> Verdict {
    let start = Instant::now();
    let config = plate_config();
    let output = match run_pipeline(&config, &data_dir(), None) {
        Ok(o) => o,
        Err(e) => return verdict(false, format!("pipeline failed: {e}")),
    };
    let (fast, time) = within(start.elapsed(), Duration::from_secs(600));
    let ratio = |a: Algorithm| output.reports.iter().find(|r| r.algorithm == a).map(|r| r.ratio);
    let infeasible: Vec<&str> = output
        .reports
        .iter()
        .filter(|r| r.cost > r.budget)
        .map(|r| r.algorithm.name())
        .collect();
    let summary: Vec<String> = output
        .reports
        .iter()
        .map(|r| format!("{} {:.2}%", r.algorithm, 100.0 * r.ratio))
        .collect();
    let (Some(plus), Some(greedy)) = (ratio(Algorithm::GcbPlus), ratio(Algorithm::Greedy)) else {
        return verdict(false, "missing gcb+ or greedy report".into());
    };
    verdict(
        plus >= greedy && infeasible.is_empty() && output.reports.len() == 4 && fast,
        format!("f/OPT: {}; infeasible: {infeasible:?}; {time}", summary.join(", ")),
    )
}

fn criterion_8() -> Verdict {
    let mut config = plate_config();
    config.algorithms = vec![Algorithm::Greedy, Algorithm::GcbPlus];
    config.sweep = Some("budget=2.5,5,7.5,10".parse::<SweepSpec>().expect("sweep spec"));
    let output = match run_pipeline(&config, &data_dir(), None) {
        Ok(o) => o,
        Err(e) => return verdict(false, format!("pipeline failed: {e}")),
    };
    let spread = |a: Algorithm| {
        let p: Vec<f64> = output
            .sweep
            .iter()
            .filter(|r| r.algorithm == a)
            .map(|r| r.percent_of_opt)
            .collect();
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        (hi - lo, p)
    };
    let (plus, plus_values) = spread(Algorithm::GcbPlus);
    let (greedy, greedy_values) = spread(Algorithm::Greedy);
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.2}")).collect::<Vec<_>>().join("/");
    verdict(
        plus <= 2.0 * greedy,
        format!(
            "B = 2.5/5/7.5/10: gcb+ {}% (spread {plus:.2}), greedy {}% (spread {greedy:.2}), gcb+ spread {} greedy spread",
            fmt(&plus_values),
            fmt(&greedy_values),
            if plus < greedy { "below" } else { "not below" }
        ),
    )
}

fn report_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .into_iter()
        .flatten()
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.is_file() && p.file_name().is_some_and(|n| n != "timings.json"))
        .map(|p| {
            let name = p.file_name().expect("file name").to_string_lossy().into_owned();
            (name, fs::read(&p).expect("readable report"))
        })
        .collect();
    files.sort();
    files
}

fn criterion_9() -> Verdict {
    let tmp = tempfile::tempdir().expect("temp dir");
    let out = tmp.path().join("out");
    let config = data_dir().join("plate.json");
    let invoke = || {
        // Both runs start cold so the second does not just read the cache.
        let _ = fs::remove_dir_all(&out);
        let status = Command::new(env!("CARGO_BIN_EXE_plan"))
            .args(["--config", config.to_str().expect("utf-8 path"), "--out", out.to_str().expect("utf-8 path")])
            .status()
            .expect("plan binary runs");
        (status.success(), report_files(&out))
    };
    let (ok_a, a) = invoke();
    let (ok_b, b) = invoke();
    let identical = a == b;
    verdict(
        ok_a && ok_b && identical && !a.is_empty(),
        format!("{} files per run, bit-identical: {identical}", a.len()),
    )
}

fn main() {
    let mut verdicts = Vec::new();
    let mut record = |n: usize, v: Verdict| {
        println!("criterion {n}: {}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        verdicts.push(v.pass);
    };
    record(1, criterion_1());
    record(2, criterion_2());
    let (problems, elapsed) = small_problems();
    record(3, criterion_3(&problems, elapsed));
    record(4, criterion_4(&problems));
    record(5, criterion_5(&problems));
    record(6, criterion_6());
    record(7, criterion_7());
    record(8, criterion_8());
    record(9, criterion_9());
    let failed = verdicts.iter().filter(|&&p| !p).count();
    println!("acceptance: {} passed, {failed} failed", verdicts.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
