//! One-time exploitation: estimate win probabilities from an exploration log
//! and commit.
//!
//! ```text
//! cargo run --release --example ote_decision
//! ```

use etc_bandit::arm_models::builtin;
use etc_bandit::estimators::{estimate_ote_independent, estimate_ote_paired, ExplorationLog};
use etc_bandit::policies::ote_mab;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> etc_bandit::Result<()> {
    // A tiny hand-made log: three draws of each of two arms.
    let log = ExplorationLog::from_columns(vec![vec![1.0, 2.0, 3.0], vec![0.0, 2.5, 4.0]], true)?;
    let ind = estimate_ote_independent(&log, None)?;
    let paired = estimate_ote_paired(&log)?;
    println!("all 9 cross pairs: {:?}  counts {:?}", ind.values, ind.counts);
    println!("3 paired rows:     {:?}  counts {:?}", paired.values, paired.counts);

    // Simulated data from two overlapping truncated normals.
    let model = builtin::variance_favoring()?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let n = 101;
    let rows = (0..n).map(|_| model.sample(&mut rng)).collect::<Result<Vec<_>, _>>()?;
    let log = ExplorationLog::from_rows(&rows, true)?;
    for paired in [false, true] {
        let d = ote_mab(&log, paired, None)?;
        println!(
            "N = {n}, {}: scores {:?} -> arm {}",
            d.policy,
            d.scores,
            d.chosen_arm + 1
        );
    }
    Ok(())
}
