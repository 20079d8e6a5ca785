//! Deterministic Monte Carlo regret experiments.
//!
//! Every replication draws its exploration log from a ChaCha stream seeded by
//! [`derive_replication_seed`], so results only depend on the configuration.
//! Replications are spread over a rayon pool and reduced with integer sums,
//! which makes the output independent of the worker count.

use std::fs;
use std::path::Path;

use log::{info, warn};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::validate_grid;
use crate::arm_models::{builtin, win_probability_oracle, BanditModel, BanditModelSpec};
use crate::error::{Error, Result};
use crate::estimators::{ExplorationLog, WinProbabilities};
use crate::policies::{Policy, PolicySpec};

/// Environment variable that overrides the configured worker count.
pub const THREADS_ENV: &str = "ETC_BANDIT_THREADS";

/// CSV header written by [`write_results`].
pub const CSV_HEADER: [&str; 11] = [
    "policy",
    "hyper",
    "n",
    "m",
    "replications",
    "strong_regret",
    "strong_regret_se",
    "delta_regret",
    "delta_regret_se",
    "win_rate",
    "win_rate_se",
];

/// A model given either by built-in name or inline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModelDecl {
    Builtin(String),
    Inline(BanditModelSpec),
}

impl ModelDecl {
    pub fn resolve(&self) -> Result<BanditModel> {
        match self {
            ModelDecl::Builtin(name) => builtin::by_name(name).unwrap_or_else(|| {
                Err(Error::Config(format!(
                    "unknown built-in model `{name}`; expected one of {}",
                    builtin::NAMES.join(", ")
                )))
            }),
            ModelDecl::Inline(spec) => BanditModel::try_from(spec.clone()),
        }
    }
}

fn default_m() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelDecl,
    pub n_grid: Vec<u64>,
    pub replications: u64,
    #[serde(default = "default_m")]
    pub m: usize,
    pub policies: Vec<PolicySpec>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Checks every field and resolves the model and policies.
    pub fn validate(&self) -> Result<(BanditModel, Vec<Policy>)> {
        validate_grid(&self.n_grid).map_err(|e| Error::Config(e.to_string()))?;
        if self.replications == 0 {
            return Err(Error::Config("replications must be at least 1".into()));
        }
        if self.m == 0 {
            return Err(Error::Config("m must be at least 1".into()));
        }
        if self.policies.is_empty() {
            return Err(Error::Config("at least one policy is required".into()));
        }
        if let Some(d) = self.delta_p {
            if !(d > 0.0 && d < 1.0) {
                return Err(Error::Config(format!("delta_p must lie in (0, 1), got {d}")));
            }
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        let model = self.model.resolve()?;
        let policies = self
            .policies
            .iter()
            .map(Policy::try_from)
            .collect::<Result<Vec<_>>>()?;
        let n_min = self.n_grid[0];
        for p in &policies {
            match p {
                Policy::ExpExp { .. } if n_min < 2 => {
                    return Err(Error::Config("expexp needs every grid N >= 2".into()))
                }
                Policy::FteMab { .. } if n_min < self.m as u64 => {
                    return Err(Error::Config(format!("fte-mab needs every grid N >= m = {}", self.m)))
                }
                _ => {}
            }
        }
        Ok((model, policies))
    }

    /// Worker count: environment override, then config, then rayon's default.
    pub fn resolved_threads(&self) -> Result<Option<usize>> {
        match std::env::var(THREADS_ENV) {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(t) if t > 0 => Ok(Some(t)),
                _ => Err(Error::Config(format!("{THREADS_ENV} must be a positive integer, got `{v}`"))),
            },
            Err(_) => Ok(self.threads),
        }
    }
}

/// Oracle quantities the regret is scored against.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroundTruth {
    pub best_arm: usize,
    pub win_probabilities: Vec<f64>,
    pub gap: f64,
    /// The maximum win probability is shared; `best_arm` is the lowest index.
    pub tied: bool,
}

impl GroundTruth {
    pub fn from_oracle(p: &WinProbabilities) -> Self {
        GroundTruth {
            best_arm: p.best_arm(),
            win_probabilities: p.values.clone(),
            gap: p.gap(),
            tied: p.has_tied_max(),
        }
    }
}

/// One (policy, N) cell of a regret curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub policy: String,
    pub hyper: Option<f64>,
    pub n: u64,
    pub m: usize,
    pub replications: u64,
    /// Estimate of `P(k̂ ≠ k*)`.
    pub strong_regret: f64,
    pub strong_regret_se: f64,
    /// Estimate of `P(p_{k*} - p_{k̂} >= Δp)`.
    pub delta_regret: Option<f64>,
    pub delta_regret_se: Option<f64>,
    /// Fraction of fresh draws in which the chosen arm was strictly highest.
    pub win_rate: f64,
    pub win_rate_se: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegretCurve {
    pub ground_truth: Option<GroundTruth>,
    pub rows: Vec<CurveRow>,
}

/// Bernoulli standard error `√(r(1-r)/n)`.
pub fn standard_error(rate: f64, replications: u64) -> f64 {
    (rate * (1.0 - rate) / replications as f64).sqrt()
}

/// SplitMix64 finaliser.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stable seed for replication `replication_index` at grid point `n_index`.
pub fn derive_replication_seed(master_seed: u64, n_index: u64, replication_index: u64) -> u64 {
    const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut h = mix64(master_seed.wrapping_add(GOLDEN));
    h = mix64(h ^ n_index.wrapping_add(1).wrapping_mul(GOLDEN));
    mix64(h ^ replication_index.wrapping_add(1).wrapping_mul(0xd1b5_4a32_d192_ed03))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Tally {
    strong: u64,
    delta: u64,
    win: u64,
}

impl Tally {
    fn add(mut self, other: Tally) -> Tally {
        self.strong += other.strong;
        self.delta += other.delta;
        self.win += other.win;
        self
    }
}

fn strict_max(values: &[f64], arm: usize) -> bool {
    values
        .iter()
        .enumerate()
        .all(|(j, &v)| j == arm || values[arm] > v)
}

struct Replicator<'a> {
    model: &'a BanditModel,
    policies: &'a [Policy],
    truth: &'a GroundTruth,
    m: usize,
    delta_p: Option<f64>,
}

impl Replicator<'_> {
    fn run(&self, n: usize, seed: u64) -> Result<Vec<Tally>> {
        let k = self.model.num_arms();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut columns = vec![Vec::with_capacity(n); k];
        let mut row = vec![0.0; k];
        for _ in 0..n {
            self.model.sample_into(&mut rng, &mut row)?;
            for (c, &x) in columns.iter_mut().zip(&row) {
                c.push(x);
            }
        }
        let log = ExplorationLog::from_columns(columns, true)?;
        let mut fresh = vec![0.0; k];
        self.model.sample_m_sums(self.m, &mut rng, &mut fresh)?;

        let p = &self.truth.win_probabilities;
        let best = self.truth.best_arm;
        self.policies
            .iter()
            .enumerate()
            .map(|(i, policy)| {
                let mut policy_rng = ChaCha8Rng::seed_from_u64(seed);
                policy_rng.set_stream(i as u64 + 1);
                let chosen = policy
                    .decide(&log, self.m, self.model, &mut policy_rng)?
                    .chosen_arm;
                Ok(Tally {
                    strong: u64::from(chosen != best),
                    delta: u64::from(self.delta_p.is_some_and(|d| p[best] - p[chosen] >= d)),
                    win: u64::from(strict_max(&fresh, chosen)),
                })
            })
            .collect()
    }
}

/// Runs every configured policy over the N grid.
pub fn run_experiment(config: &ExperimentConfig) -> Result<RegretCurve> {
    let (model, policies) = config.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = config.resolved_threads()? {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    pool.install(|| run_with(config, &model, &policies))
}

fn run_with(config: &ExperimentConfig, model: &BanditModel, policies: &[Policy]) -> Result<RegretCurve> {
    let oracle = win_probability_oracle(model, config.m)?;
    let truth = GroundTruth::from_oracle(&oracle);
    if truth.tied {
        warn!(
            "win probabilities {:?} tie for the maximum; scoring against arm {}",
            truth.win_probabilities, truth.best_arm
        );
    }
    info!(
        "ground truth for `{}` (m = {}): p = {:?}, best arm {}, gap {:.4}",
        model.label(),
        config.m,
        truth.win_probabilities,
        truth.best_arm,
        truth.gap
    );
    let replicator = Replicator {
        model,
        policies,
        truth: &truth,
        m: config.m,
        delta_p: config.delta_p,
    };
    let reps = config.replications;
    let mut rows = Vec::with_capacity(policies.len() * config.n_grid.len());
    for (n_index, &n) in config.n_grid.iter().enumerate() {
        let tallies = (0..reps)
            .into_par_iter()
            .map(|r| {
                let seed = derive_replication_seed(config.seed, n_index as u64, r);
                replicator.run(n as usize, seed)
            })
            .try_reduce(
                || vec![Tally::default(); policies.len()],
                |a, b| Ok(a.into_iter().zip(b).map(|(x, y)| x.add(y)).collect()),
            )
            .map_err(|e| match e {
                Error::Capacity { .. } => e,
                other => Error::Numeric(format!("at N = {n}, m = {}: {other}", config.m)),
            })?;
        info!("N = {n}: {reps} replications done");
        for (policy, tally) in policies.iter().zip(tallies) {
            let total = reps as f64;
            let strong = tally.strong as f64 / total;
            let delta = config.delta_p.map(|_| tally.delta as f64 / total);
            let win = tally.win as f64 / total;
            rows.push(CurveRow {
                policy: policy.tag().to_string(),
                hyper: policy.hyper(),
                n,
                m: config.m,
                replications: reps,
                strong_regret: strong,
                strong_regret_se: standard_error(strong, reps),
                delta_regret: delta,
                delta_regret_se: delta.map(|d| standard_error(d, reps)),
                win_rate: win,
                win_rate_se: standard_error(win, reps),
            });
        }
    }
    Ok(RegretCurve {
        ground_truth: Some(truth),
        rows,
    })
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// CSV fields of a row in [`CSV_HEADER`] order. Floats use Rust's shortest
/// round-trip formatting.
pub fn row_fields(row: &CurveRow) -> Vec<String> {
    vec![
        row.policy.clone(),
        fmt_opt(row.hyper),
        row.n.to_string(),
        row.m.to_string(),
        row.replications.to_string(),
        row.strong_regret.to_string(),
        row.strong_regret_se.to_string(),
        fmt_opt(row.delta_regret),
        fmt_opt(row.delta_regret_se),
        row.win_rate.to_string(),
        row.win_rate_se.to_string(),
    ]
}

/// Rows in output order: policy tag, hyper-parameter, then N.
pub fn sorted_rows(rows: &[CurveRow]) -> Vec<&CurveRow> {
    let mut sorted: Vec<&CurveRow> = rows.iter().collect();
    sorted.sort_by(|a, b| {
        a.policy
            .cmp(&b.policy)
            .then_with(|| {
                a.hyper
                    .unwrap_or(f64::NEG_INFINITY)
                    .total_cmp(&b.hyper.unwrap_or(f64::NEG_INFINITY))
            })
            .then(a.n.cmp(&b.n))
    });
    sorted
}

pub fn write_results(curve: &RegretCurve, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut wtr = csv::Writer::from_path(path).map_err(csv_err)?;
    wtr.write_record(CSV_HEADER).map_err(csv_err)?;
    for row in sorted_rows(&curve.rows) {
        wtr.write_record(row_fields(row)).map_err(csv_err)?;
    }
    wtr.flush().map_err(|e| Error::io(path, e))
}

pub fn read_results(path: impl AsRef<Path>) -> Result<Vec<CurveRow>> {
    let path = path.as_ref();
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut rdr = csv::Reader::from_path(path).map_err(csv_err)?;
    rdr.deserialize().map(|r| r.map_err(csv_err)).collect()
}
