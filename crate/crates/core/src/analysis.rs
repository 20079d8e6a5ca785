//! Closed-form regret, cost-regret trade-off, and Hoeffding bounds.

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::estimators::{sample_size_fte, sample_size_ote};

/// Probability that majority voting over `n` paired comparisons picks the
/// wrong arm of a two-armed bandit whose better arm wins each comparison with
/// probability `p_star`. An even split counts half.
///
/// Terms are accumulated in log space.
pub fn exact_regret_two_arm(p_star: f64, n: u64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p_star) {
        return Err(Error::invalid(format!("p_star must lie in [0, 1], got {p_star}")));
    }
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let q = 1.0 - p_star;
    let ln_q = q.ln();
    let ln_p = p_star.ln();
    let nf = n as f64;
    let ln_n_fact = ln_gamma(nf + 1.0);
    // i ln q + (n - i) ln p, with 0 · ln 0 = 0
    let log_term = |i: u64| -> f64 {
        let fi = i as f64;
        let a = if i == 0 { 0.0 } else { fi * ln_q };
        let b = if i == n { 0.0 } else { (nf - fi) * ln_p };
        ln_n_fact - ln_gamma(fi + 1.0) - ln_gamma(nf - fi + 1.0) + a + b
    };
    let mut logs: Vec<f64> = (n / 2 + 1..=n).map(log_term).collect();
    if n.is_multiple_of(2) {
        logs.push(log_term(n / 2) + 0.5f64.ln());
    }
    Ok(log_sum_exp(&logs).exp().clamp(0.0, 1.0))
}

fn log_sum_exp(logs: &[f64]) -> f64 {
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + logs.iter().map(|l| (l - max).exp()).sum::<f64>().ln()
}

/// Objective `N / divisor + α · regret(N)` evaluated over a grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CostSpec {
    pub cost_per_experiment_divisor: f64,
    pub tradeoff_alpha: f64,
    pub n_grid: Vec<u64>,
}

impl CostSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.cost_per_experiment_divisor > 0.0 && self.cost_per_experiment_divisor.is_finite()) {
            return Err(Error::invalid("cost divisor must be positive"));
        }
        if !(self.tradeoff_alpha >= 0.0 && self.tradeoff_alpha.is_finite()) {
            return Err(Error::invalid("trade-off alpha must be non-negative"));
        }
        validate_grid(&self.n_grid)
    }

    pub fn cost(&self, n: u64) -> f64 {
        n as f64 / self.cost_per_experiment_divisor
    }
}

pub(crate) fn validate_grid(grid: &[u64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::invalid("the N grid is empty"));
    }
    if grid[0] == 0 {
        return Err(Error::invalid("grid values must be positive"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("the N grid must be strictly ascending"));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TradeoffPoint {
    pub n: u64,
    pub cost: f64,
    pub regret: f64,
    pub objective: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tradeoff {
    pub n_opt: u64,
    pub curve: Vec<TradeoffPoint>,
}

/// Grid minimiser of cost plus weighted exact regret; lowest `N` on ties.
pub fn cost_regret_argmin(p_star: f64, spec: &CostSpec) -> Result<Tradeoff> {
    spec.validate()?;
    let curve = spec
        .n_grid
        .iter()
        .map(|&n| {
            let regret = exact_regret_two_arm(p_star, n)?;
            let cost = spec.cost(n);
            Ok(TradeoffPoint {
                n,
                cost,
                regret,
                objective: cost + spec.tradeoff_alpha * regret,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let best = curve
        .iter()
        .fold(&curve[0], |best, pt| if pt.objective < best.objective { pt } else { best });
    Ok(Tradeoff {
        n_opt: best.n,
        curve,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExplorationPoint {
    pub epsilon_r: f64,
    pub n_min: u64,
}

/// Explorations per arm needed for regret at most `ε_r`, for each `ε_r`.
pub fn min_exploration_curve(
    delta_p_star: f64,
    k: usize,
    m: usize,
    epsilon_grid: &[f64],
) -> Result<Vec<ExplorationPoint>> {
    epsilon_grid
        .iter()
        .map(|&epsilon_r| {
            let n_min = if m == 1 {
                sample_size_ote(k, epsilon_r, delta_p_star)?
            } else {
                sample_size_fte(k, epsilon_r, delta_p_star, m)?
            };
            Ok(ExplorationPoint { epsilon_r, n_min })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HoeffdingInterval {
    pub halfwidth: f64,
    pub confidence: f64,
}

/// Half-width `a / (2√n)` of a Bernoulli-mean interval with confidence
/// `1 - 2 e^{-a²/2}`.
pub fn hoeffding_halfwidth(a: f64, samples: u64) -> Result<HoeffdingInterval> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::invalid(format!("a must be positive, got {a}")));
    }
    if samples == 0 {
        return Err(Error::invalid("samples must be positive"));
    }
    Ok(HoeffdingInterval {
        halfwidth: a / (2.0 * (samples as f64).sqrt()),
        confidence: 1.0 - 2.0 * (-a * a / 2.0).exp(),
    })
}
