//! Risk-averse explore-then-commit multi-armed bandits.
//!
//! After a pure exploration phase of `N` draws per arm, a player commits to a
//! single arm and exploits it once, or `M` times. The arm worth committing to
//! is the one most likely to pay the most, `argmax_k P(R_k^M >= R_j^M ∀ j)`,
//! which need not be the arm with the largest mean.
//!
//! - [`arm_models`]: bounded mixture reward laws, sampling, and ground-truth
//!   oracles (moments, win probabilities, CVaR).
//! - [`estimators`]: win-probability estimates from exploration logs and the
//!   sample sizes that bound commitment regret.
//! - [`policies`]: OTE-MAB / FTE-MAB and the UCB1, ExpExp and MaRaB baselines.
//! - [`analysis`]: exact two-arm regret, cost-regret trade-off, Hoeffding
//!   intervals.
//! - [`harness`]: seeded, parallel regret experiments with CSV output.
//! - [`reproduce`]: the data behind each published figure.
//!
//! ```
//! use etc_bandit::estimators::{estimate_ote_independent, sample_size_ote, ExplorationLog};
//!
//! let log = ExplorationLog::from_columns(vec![vec![1.0, 2.0, 3.0], vec![0.0, 2.5, 4.0]], true)?;
//! let p = estimate_ote_independent(&log, None)?;
//! assert_eq!(p.counts, Some(vec![4, 5]));
//! assert_eq!(sample_size_ote(2, 0.1, 0.28)?, 95);
//! # Ok::<(), etc_bandit::Error>(())
//! ```

pub mod analysis;
pub mod arm_models;
pub mod error;
pub mod estimators;
pub mod harness;
pub mod policies;
mod quadrature;
pub mod reproduce;

pub use error::{Error, Result};

pub use analysis::{cost_regret_argmin, exact_regret_two_arm, hoeffding_halfwidth, min_exploration_curve};
pub use arm_models::{
    cvar_oracle, moments_oracle, win_probability_oracle, ArmDistribution, BanditModel, Component,
};
pub use estimators::{
    build_m_sums, estimate_fte, estimate_ote_independent, estimate_ote_paired, sample_size_fte,
    sample_size_ote, ExplorationLog, FteMode, WinProbabilities,
};
pub use harness::{run_experiment, write_results, ExperimentConfig, RegretCurve};
pub use policies::{expexp, fte_mab, marab_commit, ote_mab, ucb1_commit, Policy, PolicyDecision};
