//! Exploration budgets that bound the commitment regret.
//!
//! ```text
//! cargo run --release --example sample_size
//! ```

use etc_bandit::analysis::min_exploration_curve;
use etc_bandit::estimators::{sample_size_fte, sample_size_ote};

fn main() -> etc_bandit::Result<()> {
    println!("K = 2, eps = 0.1, gap 0.28: N = {}", sample_size_ote(2, 0.1, 0.28)?);
    println!("same with M = 2:          N = {}", sample_size_fte(2, 0.1, 0.28, 2)?);
    println!("K = 10, eps = 0.05, gap 0.1: N = {}", sample_size_ote(10, 0.05, 0.1)?);

    let eps = [0.01, 0.05, 0.1, 0.2, 0.5];
    let one = min_exploration_curve(0.28, 2, 1, &eps)?;
    let two = min_exploration_curve(0.28, 2, 2, &eps)?;
    println!("epsilon_r  N(M=1)  N(M=2)");
    for (a, b) in one.iter().zip(&two) {
        println!("{:>9}  {:>6}  {:>6}", a.epsilon_r, a.n_min, b.n_min);
    }
    Ok(())
}
