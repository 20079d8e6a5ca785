//! Risk-averse baselines on a model built to fool mean-variance scoring.
//!
//! Arm 1 is uniform with mean 10 and variance 10, arm 2 uniform with mean 1
//! and variance 1. The supports are disjoint, so arm 1 always pays more, yet
//! `var - rho * mean` prefers arm 2 for small rho.
//!
//! ```text
//! cargo run --release --example baselines
//! ```

use etc_bandit::arm_models::builtin;
use etc_bandit::estimators::ExplorationLog;
use etc_bandit::policies::{expexp, marab_commit, ote_mab, ucb1_commit};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> etc_bandit::Result<()> {
    let model = builtin::mean_variance_toy()?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 500;
    let rows = (0..n).map(|_| model.sample(&mut rng)).collect::<Result<Vec<_>, _>>()?;
    let log = ExplorationLog::from_rows(&rows, true)?;

    let report = |d: etc_bandit::PolicyDecision| {
        println!(
            "{:<15} hyper {:>5}: arm {}",
            d.policy,
            d.hyper.map_or("-".into(), |h| h.to_string()),
            d.chosen_arm + 1
        )
    };
    report(ote_mab(&log, true, None)?);
    for rho in [0.0, 0.5, 1.0, 2.0] {
        report(expexp(&log, rho)?);
    }
    for alpha in [0.1, 0.5] {
        report(marab_commit(&log, alpha)?);
    }
    report(ucb1_commit(&model, 2 * n as u64, &mut rng)?);
    Ok(())
}
