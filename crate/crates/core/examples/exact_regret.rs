//! Exact two-arm regret and the exploration cost trade-off.
//!
//! ```text
//! cargo run --release --example exact_regret
//! ```

use etc_bandit::analysis::{cost_regret_argmin, exact_regret_two_arm, hoeffding_halfwidth, CostSpec};

fn main() -> etc_bandit::Result<()> {
    for n in [1, 2, 5, 10, 50] {
        println!("p* = 0.6, N = {n:>2}: regret {:.6}", exact_regret_two_arm(0.6, n)?);
    }

    let spec = CostSpec {
        cost_per_experiment_divisor: 5.0,
        tradeoff_alpha: 100.0,
        n_grid: (1..=200).collect(),
    };
    let t = cost_regret_argmin(0.6, &spec)?;
    let best = &t.curve[(t.n_opt - 1) as usize];
    println!(
        "cost N/5 + 100 * regret(N) is smallest at N = {} (cost {}, regret {:.5}, total {:.5})",
        t.n_opt, best.cost, best.regret, best.objective
    );

    let h = hoeffding_halfwidth(2.0, 100)?;
    println!(
        "Hoeffding: with 100 samples, +/- {:.4} holds with probability >= {:.4}",
        h.halfwidth, h.confidence
    );
    Ok(())
}
