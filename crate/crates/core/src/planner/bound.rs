use serde::{Deserialize, Serialize};

use super::SolutionTrace;

/// `1 − e⁻¹`.
pub const ONE_MINUS_INV_E: f64 = 1.0 - 0.36787944117144233;

/// Upper bound on the optimum derived from a GCB trace.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptBound {
    /// Reported reference value, built from travel-cost increments `c`.
    pub value: f64,
    /// Same product built from total-cost increments `C` (with `C(X_0) = 0`).
    pub cost_based: f64,
    /// `f(X_t)`.
    pub feasible_quality: f64,
    /// `f(X_{t+1})`, equal to `f(X_t)` when the budget was never violated.
    pub violating_quality: f64,
    pub warnings: Vec<String>,
}

impl OptBound {
    /// `f(X_{t+1}) / (1 − e⁻¹)`.
    pub fn classic(&self) -> f64 {
        self.violating_quality / ONE_MINUS_INV_E
    }

    /// `f(X_t) / (½(1 − e⁻¹))`.
    pub fn loose(&self) -> f64 {
        self.feasible_quality / (0.5 * ONE_MINUS_INV_E)
    }
}

fn product_bound(f_last: f64, increments: impl Iterator<Item = f64>, budget: f64) -> Option<f64> {
    let product: f64 = increments
        .map(|d| 1.0 - (d / budget).clamp(0.0, 1.0))
        .product();
    let denominator = 1.0 - product;
    (denominator > 0.0).then(|| f_last / denominator)
}

/// OPT from the partial solutions of a GCB run.
///
/// Increments are clamped to `[0, B]` so every factor of the product lies
/// in `[0, 1]`; nearest-neighbour costs are not monotone in the subset.
pub fn opt_bound(trace: &SolutionTrace, budget: f64) -> OptBound {
    let mut warnings = Vec::new();
    let steps = &trace.steps;
    let Some(last) = steps.last() else {
        warnings.push("empty trace, OPT = 0".to_owned());
        return OptBound {
            value: 0.0,
            cost_based: 0.0,
            feasible_quality: 0.0,
            violating_quality: 0.0,
            warnings,
        };
    };
    let t = trace.feasible_len();
    let f_t = if t == 0 { 0.0 } else { steps[t - 1].quality };

    if !trace.violated {
        warnings.push("budget never violated: no candidate left with positive gain, OPT = f(X_t)".to_owned());
        return OptBound {
            value: f_t,
            cost_based: f_t,
            feasible_quality: f_t,
            violating_quality: f_t,
            warnings,
        };
    }
    let f_last = last.quality;
    if t == 0 {
        warnings.push("first pose already violates the budget, OPT = f(X_1)".to_owned());
        return OptBound {
            value: f_last,
            cost_based: f_last,
            feasible_quality: 0.0,
            violating_quality: f_last,
            warnings,
        };
    }

    let travel_increments = steps.windows(2).map(|w| w[1].travel - w[0].travel);
    let value = product_bound(f_last, travel_increments, budget).unwrap_or_else(|| {
        warnings.push("travel increments never reach the budget scale, OPT falls back to f(X_{t+1})/(1-1/e)".to_owned());
        f_last / ONE_MINUS_INV_E
    });
    let cost_increments = std::iter::once(steps[0].cost)
        .chain(steps.windows(2).map(|w| w[1].cost - w[0].cost));
    let cost_based = product_bound(f_last, cost_increments, budget).unwrap_or(f_last / ONE_MINUS_INV_E);

    OptBound {
        value,
        cost_based,
        feasible_quality: f_t,
        violating_quality: f_last,
        warnings,
    }
}
