//! Ground truth for the bimodal example: moments, win probabilities and CVaR.
//!
//! ```text
//! cargo run --release --example ground_truth
//! ```

use etc_bandit::arm_models::{builtin, cvar_oracle, moments_oracle, win_probability_oracle};

fn main() -> etc_bandit::Result<()> {
    let model = builtin::example1()?;
    for (k, arm) in model.arms().iter().enumerate() {
        let mom = moments_oracle(arm)?;
        let cvar = cvar_oracle(arm, 0.25)?;
        println!(
            "arm {}: mean {:.4}, variance {:.4}, CVaR(0.25) {:.4}",
            k + 1,
            mom.mean,
            mom.variance,
            cvar
        );
    }

    let single = win_probability_oracle(&model, 1)?;
    println!("P(arm wins one pull):   {:?}", single.values);
    println!("  -> commit to arm {} although arm 2 has the larger mean", single.best_arm() + 1);

    // Sums of several pulls are estimated by seeded Monte Carlo.
    let double = win_probability_oracle(&model, 2)?;
    println!(
        "P(arm wins sum of two): {:?} (standard errors {:?})",
        double.values, double.standard_errors
    );
    Ok(())
}
