//! A seeded Monte Carlo regret experiment written to CSV.
//!
//! ```text
//! cargo run --release --example regret_experiment -- [out.csv]
//! ```

use etc_bandit::harness::{run_experiment, write_results, ExperimentConfig};

const CONFIG: &str = r#"{
    "model": "example1",
    "n_grid": [3, 5, 11, 21, 51],
    "replications": 2000,
    "seed": 42,
    "policies": [
        {"name": "ote-mab"},
        {"name": "ote-mab-paired"},
        {"name": "ucb1"},
        {"name": "expexp", "rho": 1.0},
        {"name": "marab", "alpha": 0.25}
    ]
}"#;

fn main() -> etc_bandit::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let out = std::env::args().nth(1).unwrap_or_else(|| "regret_example1.csv".into());
    let config = ExperimentConfig::from_json(CONFIG)?;
    let curve = run_experiment(&config)?;
    if let Some(truth) = &curve.ground_truth {
        println!("best arm {} with win probabilities {:?}", truth.best_arm + 1, truth.win_probabilities);
    }
    for row in &curve.rows {
        println!(
            "{:<15} {:>5} N = {:>3}: strong regret {:.4} +/- {:.4}",
            row.policy,
            row.hyper.map_or("".into(), |h| h.to_string()),
            row.n,
            row.strong_regret,
            row.strong_regret_se
        );
    }
    write_results(&curve, &out)?;
    println!("wrote {out}");
    Ok(())
}
