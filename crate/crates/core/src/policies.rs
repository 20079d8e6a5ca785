//! Commitment-phase arm selection.
//!
//! OTE-MAB and FTE-MAB commit to the arm with the largest estimated win
//! probability. The baselines commit by empirical mean after adaptive
//! exploration (UCB1), by mean-variance (ExpExp), or by empirical CVaR
//! (MaRaB). Every policy breaks ties towards the lowest arm index.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arm_models::ArmSampler;
use crate::error::{Error, Result};
use crate::estimators::{
    argmax, argmin, ceil_tolerant, estimate_fte, estimate_ote_independent, estimate_ote_paired,
    ExplorationLog, FteMode, SamplingBudget,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolicyDecision {
    pub chosen_arm: usize,
    /// The statistic the policy optimised, one per arm.
    pub scores: Vec<f64>,
    pub policy: String,
    pub hyper: Option<f64>,
}

pub fn ote_mab(log: &ExplorationLog, paired: bool, threshold: Option<f64>) -> Result<PolicyDecision> {
    let est = if paired {
        if threshold.is_some() {
            return Err(Error::invalid("a threshold is only supported by the independent estimator"));
        }
        estimate_ote_paired(log)?
    } else {
        estimate_ote_independent(log, threshold)?
    };
    Ok(PolicyDecision {
        chosen_arm: argmax(&est.values),
        scores: est.values,
        policy: if paired { "ote-mab-paired" } else { "ote-mab" }.into(),
        hyper: threshold,
    })
}

pub fn fte_mab(
    log: &ExplorationLog,
    m: usize,
    paired: bool,
    budget: Option<SamplingBudget>,
) -> Result<PolicyDecision> {
    let mode = if paired { FteMode::Paired } else { FteMode::Independent };
    let est = estimate_fte(log, m, mode, budget)?;
    Ok(PolicyDecision {
        chosen_arm: argmax(&est.values),
        scores: est.values,
        policy: if paired { "fte-mab-paired" } else { "fte-mab" }.into(),
        hyper: None,
    })
}

/// Runs UCB1 for `total_pulls` rounds, then commits to the best empirical mean.
///
/// Every arm is pulled once first; afterwards the arm maximising
/// `mean_i + sqrt(2 ln t / n_i)` is pulled, `t` being the pulls so far.
pub fn ucb1_commit<S, R>(source: &S, total_pulls: u64, rng: &mut R) -> Result<PolicyDecision>
where
    S: ArmSampler + ?Sized,
    R: Rng + ?Sized,
{
    let (means, _) = ucb1_explore(source, total_pulls, rng)?;
    Ok(PolicyDecision {
        chosen_arm: argmax(&means),
        scores: means,
        policy: "ucb1".into(),
        hyper: None,
    })
}

/// UCB1 exploration; returns the final empirical means and pull counts.
pub fn ucb1_explore<S, R>(source: &S, total_pulls: u64, rng: &mut R) -> Result<(Vec<f64>, Vec<u64>)>
where
    S: ArmSampler + ?Sized,
    R: Rng + ?Sized,
{
    let k = source.num_arms();
    if total_pulls < k as u64 {
        return Err(Error::invalid(format!(
            "UCB1 needs at least one pull per arm: total_pulls {total_pulls} < K = {k}"
        )));
    }
    let mut sums = vec![0.0; k];
    let mut pulls = vec![0u64; k];
    let mut index = vec![0.0; k];
    for t in 0..total_pulls {
        let arm = if (t as usize) < k {
            t as usize
        } else {
            let log_t = (t as f64).ln();
            for i in 0..k {
                index[i] = sums[i] / pulls[i] as f64 + (2.0 * log_t / pulls[i] as f64).sqrt();
            }
            argmax(&index)
        };
        sums[arm] += source.pull(arm, rng)?;
        pulls[arm] += 1;
    }
    let means = sums.iter().zip(&pulls).map(|(s, &n)| s / n as f64).collect();
    Ok((means, pulls))
}

/// Unbiased sample mean and variance of every arm.
pub fn sample_mean_variance(log: &ExplorationLog) -> Result<Vec<(f64, f64)>> {
    let n = log.num_samples();
    if n < 2 {
        return Err(Error::invalid("sample variance needs at least 2 samples per arm"));
    }
    Ok(log
        .columns()
        .iter()
        .map(|col| {
            let mean = col.iter().sum::<f64>() / n as f64;
            let ss: f64 = col.iter().map(|x| (x - mean).powi(2)).sum();
            (mean, ss / (n - 1) as f64)
        })
        .collect())
}

/// Commits to the arm minimising `σ̂² - ρ μ̂`.
pub fn expexp(log: &ExplorationLog, rho: f64) -> Result<PolicyDecision> {
    if !(rho >= 0.0 && rho.is_finite()) {
        return Err(Error::invalid(format!("rho must be a finite non-negative number, got {rho}")));
    }
    let scores: Vec<f64> = sample_mean_variance(log)?
        .into_iter()
        .map(|(mean, var)| var - rho * mean)
        .collect();
    Ok(PolicyDecision {
        chosen_arm: argmin(&scores),
        scores,
        policy: "expexp".into(),
        hyper: Some(rho),
    })
}

/// Mean of the `⌈αN⌉` smallest samples.
pub fn empirical_cvar(samples: &[f64], alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if samples.is_empty() {
        return Err(Error::invalid("empirical CVaR of an empty sample"));
    }
    let n = samples.len();
    let take = (ceil_tolerant(alpha * n as f64) as usize).clamp(1, n);
    let mut v = samples.to_vec();
    v.select_nth_unstable_by(take - 1, f64::total_cmp);
    Ok(v[..take].iter().sum::<f64>() / take as f64)
}

/// Commits to the arm with the largest empirical CVaR at level `alpha`.
pub fn marab_commit(log: &ExplorationLog, alpha: f64) -> Result<PolicyDecision> {
    let scores = log
        .columns()
        .iter()
        .map(|col| empirical_cvar(col, alpha))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolicyDecision {
        chosen_arm: argmax(&scores),
        scores,
        policy: "marab".into(),
        hyper: Some(alpha),
    })
}

/// A configured policy, as run by the experiment harness.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Policy {
    OteMab { paired: bool },
    FteMab { paired: bool, budget: Option<u64> },
    Ucb1,
    ExpExp { rho: f64 },
    Marab { alpha: f64 },
}

/// Policy names accepted in configurations.
pub const POLICY_NAMES: &[&str] = &[
    "ote-mab",
    "ote-mab-paired",
    "fte-mab",
    "fte-mab-paired",
    "ucb1",
    "expexp",
    "marab",
];

/// `{name, rho?, alpha?, budget?}` as it appears in a configuration file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolicySpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl PolicySpec {
    pub fn named(name: &str) -> Self {
        PolicySpec {
            name: name.into(),
            rho: None,
            alpha: None,
            budget: None,
        }
    }
}

impl TryFrom<&PolicySpec> for Policy {
    type Error = Error;

    fn try_from(spec: &PolicySpec) -> Result<Policy> {
        let unexpected = |field: &str| {
            Err(Error::Config(format!("policy `{}` does not take `{field}`", spec.name)))
        };
        let policy = match spec.name.as_str() {
            "ote-mab" | "ote-mab-paired" => Policy::OteMab {
                paired: spec.name.ends_with("paired"),
            },
            "fte-mab" | "fte-mab-paired" => Policy::FteMab {
                paired: spec.name.ends_with("paired"),
                budget: spec.budget,
            },
            "ucb1" => Policy::Ucb1,
            "expexp" => {
                let rho = spec
                    .rho
                    .ok_or_else(|| Error::Config("policy `expexp` needs `rho`".into()))?;
                if !(rho >= 0.0 && rho.is_finite()) {
                    return Err(Error::Config(format!("expexp rho must be >= 0, got {rho}")));
                }
                Policy::ExpExp { rho }
            }
            "marab" => {
                let alpha = spec
                    .alpha
                    .ok_or_else(|| Error::Config("policy `marab` needs `alpha`".into()))?;
                if !(alpha > 0.0 && alpha < 1.0) {
                    return Err(Error::Config(format!("marab alpha must lie in (0, 1), got {alpha}")));
                }
                Policy::Marab { alpha }
            }
            other => {
                return Err(Error::Config(format!(
                    "unknown policy `{other}`; expected one of {}",
                    POLICY_NAMES.join(", ")
                )))
            }
        };
        if spec.rho.is_some() && !matches!(policy, Policy::ExpExp { .. }) {
            return unexpected("rho");
        }
        if spec.alpha.is_some() && !matches!(policy, Policy::Marab { .. }) {
            return unexpected("alpha");
        }
        if spec.budget.is_some() && !matches!(policy, Policy::FteMab { .. }) {
            return unexpected("budget");
        }
        Ok(policy)
    }
}

impl Policy {
    pub fn tag(&self) -> &'static str {
        match self {
            Policy::OteMab { paired: false } => "ote-mab",
            Policy::OteMab { paired: true } => "ote-mab-paired",
            Policy::FteMab { paired: false, .. } => "fte-mab",
            Policy::FteMab { paired: true, .. } => "fte-mab-paired",
            Policy::Ucb1 => "ucb1",
            Policy::ExpExp { .. } => "expexp",
            Policy::Marab { .. } => "marab",
        }
    }

    pub fn hyper(&self) -> Option<f64> {
        match *self {
            Policy::ExpExp { rho } => Some(rho),
            Policy::Marab { alpha } => Some(alpha),
            _ => None,
        }
    }

    /// Chooses an arm from an exploration log of `N` simultaneous draws.
    ///
    /// UCB1 ignores the log and spends the same budget, `N·K` pulls, on
    /// `source` directly.
    pub fn decide<S, R>(
        &self,
        log: &ExplorationLog,
        m: usize,
        source: &S,
        rng: &mut R,
    ) -> Result<PolicyDecision>
    where
        S: ArmSampler + ?Sized,
        R: Rng + ?Sized,
    {
        match *self {
            Policy::OteMab { paired } => ote_mab(log, paired, None),
            Policy::FteMab { paired, budget } => {
                let budget = budget.map(|tuples| SamplingBudget {
                    tuples,
                    seed: rng.random(),
                });
                fte_mab(log, m, paired, budget)
            }
            Policy::Ucb1 => {
                let pulls = (log.num_samples() * log.num_arms()) as u64;
                ucb1_commit(source, pulls, rng)
            }
            Policy::ExpExp { rho } => expexp(log, rho),
            Policy::Marab { alpha } => marab_commit(log, alpha),
        }
    }
}
