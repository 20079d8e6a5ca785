//! Finite-time exploitation: compare sums of M rewards instead of single
//! rewards.
//!
//! ```text
//! cargo run --release --example fte_m_sums
//! ```

use etc_bandit::arm_models::builtin;
use etc_bandit::estimators::{
    build_m_sums, estimate_fte, ExplorationLog, FteMode, SamplingBudget, DEFAULT_SUBSET_CAP,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> etc_bandit::Result<()> {
    let log = ExplorationLog::from_columns(vec![vec![1.0, 2.0, 3.0], vec![0.0, 2.5, 4.0]], true)?;
    let sums = build_m_sums(&log, 2, DEFAULT_SUBSET_CAP)?;
    println!("2-sums of arm 1: {:?}", sums.sums()[0]);
    let p = estimate_fte(&log, 2, FteMode::Independent, None)?;
    println!("M = 2 win probabilities: {:?}", p.values);

    let model = builtin::example1()?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let rows = (0..40).map(|_| model.sample(&mut rng)).collect::<Result<Vec<_>, _>>()?;
    let log = ExplorationLog::from_rows(&rows, true)?;
    for m in [1, 2, 4] {
        let p = estimate_fte(&log, m, FteMode::Paired, None)?;
        println!("N = 40, M = {m}, paired: {:?} -> arm {}", p.values, p.best_arm() + 1);
    }

    // C(40, 10) subsets per arm is far too many to enumerate; sample instead.
    let budget = SamplingBudget {
        tuples: 200_000,
        seed: 3,
    };
    let p = estimate_fte(&log, 10, FteMode::Independent, Some(budget))?;
    println!(
        "N = 40, M = 10, sampled ({} tuples): {:?} -> arm {}",
        p.samples_used,
        p.values,
        p.best_arm() + 1
    );
    Ok(())
}
