use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use etc_bandit::analysis::{cost_regret_argmin, exact_regret_two_arm, CostSpec};
use etc_bandit::estimators::{
    estimate_fte, sample_size_fte, sample_size_ote, ExplorationLog, FteMode, SamplingBudget,
};
use etc_bandit::harness::{run_experiment, write_results, ExperimentConfig};
use etc_bandit::reproduce::{reproduce, Figure, ReproduceOptions};
use etc_bandit::{Error, Result};

/// Risk-averse explore-then-commit bandit toolkit.
#[derive(Parser)]
#[command(name = "etc-bandit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Explorations per arm that bound the commitment regret by epsilon.
    SampleSize {
        /// Number of arms, integer >= 2.
        #[arg(long)]
        k: usize,
        /// Regret bound epsilon_r, in (0, 1).
        #[arg(long)]
        epsilon: f64,
        /// Win-probability gap delta_p, in (0, 1].
        #[arg(long = "delta-p")]
        delta_p: f64,
        /// Number of exploitations M, integer >= 1.
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Win-probability estimates and the chosen arm for a logged experiment.
    Estimate {
        /// CSV file with a header row and one column per arm.
        #[arg(long)]
        log: PathBuf,
        /// Number of exploitations M, integer in [1, N].
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Compare across all sample tuples (independent) or row by row (paired).
        #[arg(long, value_enum, default_value_t = Mode::Independent)]
        mode: Mode,
        /// Subset tuples to sample when C(N, M) exceeds 10^6 (positive integer).
        #[arg(long)]
        budget: Option<u64>,
        /// Seed for the sampled estimator.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a regret experiment from a JSON configuration.
    Simulate {
        /// Experiment configuration (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Exact two-arm commitment regret after N paired comparisons.
    ExactRegret {
        /// Win probability of the better arm, in [0, 1].
        #[arg(long = "p-star")]
        p_star: f64,
        /// Explorations per arm, integer >= 1.
        #[arg(long)]
        n: u64,
    },
    /// Cost-regret trade-off N/divisor + alpha * regret(N) over N = 1..=n-max.
    Tradeoff {
        /// Win probability of the better arm, in [0, 1].
        #[arg(long = "p-star")]
        p_star: f64,
        /// Cost divisor, > 0 (cost of N experiments is N / divisor).
        #[arg(long, default_value_t = 5.0)]
        divisor: f64,
        /// Trade-off weight, >= 0.
        #[arg(long, default_value_t = 100.0)]
        alpha: f64,
        /// Largest N on the grid, integer >= 1.
        #[arg(long = "n-max", default_value_t = 200)]
        n_max: u64,
    },
    /// Regenerate the data behind a figure (fig1 .. fig7).
    Reproduce {
        /// Figure tag: fig1, fig2, fig3, fig4, fig5, fig6 or fig7.
        figure: String,
        /// Output directory.
        #[arg(long, default_value = "results")]
        out: PathBuf,
        /// Replications per point, integer >= 1 (default 100000; 500000 for fig3).
        #[arg(long)]
        reps: Option<u64>,
        /// Master seed, 64-bit unsigned.
        #[arg(long, default_value_t = 2019)]
        seed: u64,
        /// Worker threads, integer >= 1.
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Independent,
    Paired,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidInput(_) | Error::Config(_) => 1,
        Error::Io { .. } | Error::Csv { .. } => 2,
        Error::Numeric(_) | Error::Capacity { .. } | Error::Sampling { .. } => 3,
    }
}

fn read_log(path: &PathBuf, paired: bool) -> Result<ExplorationLog> {
    let csv_err = |source| Error::Csv {
        path: path.clone(),
        source,
    };
    let mut rdr = csv::Reader::from_path(path).map_err(csv_err)?;
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(csv_err)?;
        let row = rec
            .iter()
            .map(|f| {
                f.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::invalid(format!("row {}: `{f}` is not a number", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    ExplorationLog::from_rows(&rows, paired)
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::SampleSize { k, epsilon, delta_p, m } => {
            let n = if m == 1 {
                sample_size_ote(k, epsilon, delta_p)?
            } else {
                sample_size_fte(k, epsilon, delta_p, m)?
            };
            println!("{n}");
        }
        Command::Estimate {
            log,
            m,
            mode,
            budget,
            seed,
        } => {
            if budget == Some(0) {
                return Err(Error::invalid("--budget must be positive"));
            }
            let mode = match mode {
                Mode::Independent => FteMode::Independent,
                Mode::Paired => FteMode::Paired,
            };
            let log = read_log(&log, mode == FteMode::Paired)?;
            let budget = budget.map(|tuples| SamplingBudget { tuples, seed });
            let p = estimate_fte(&log, m, mode, budget)?;
            println!("arm,win_probability");
            for (k, v) in p.values.iter().enumerate() {
                println!("{},{v}", k + 1);
            }
            eprintln!("chosen arm: {}", p.best_arm() + 1);
        }
        Command::Simulate { config, out } => {
            let cfg = ExperimentConfig::load(&config)?;
            cfg.validate()?;
            let curve = run_experiment(&cfg)?;
            write_results(&curve, &out)?;
            log::info!("wrote {}", out.display());
        }
        Command::ExactRegret { p_star, n } => {
            println!("{}", exact_regret_two_arm(p_star, n)?);
        }
        Command::Tradeoff {
            p_star,
            divisor,
            alpha,
            n_max,
        } => {
            if n_max == 0 {
                return Err(Error::invalid("--n-max must be at least 1"));
            }
            let spec = CostSpec {
                cost_per_experiment_divisor: divisor,
                tradeoff_alpha: alpha,
                n_grid: (1..=n_max).collect(),
            };
            let t = cost_regret_argmin(p_star, &spec)?;
            println!("n,cost,regret,objective");
            for pt in &t.curve {
                println!("{},{},{},{}", pt.n, pt.cost, pt.regret, pt.objective);
            }
            eprintln!("minimising N: {}", t.n_opt);
        }
        Command::Reproduce {
            figure,
            out,
            reps,
            seed,
            threads,
        } => {
            let figure: Figure = figure.parse()?;
            if reps == Some(0) {
                return Err(Error::invalid("--reps must be at least 1"));
            }
            if threads == Some(0) {
                return Err(Error::invalid("--threads must be at least 1"));
            }
            let path = reproduce(
                figure,
                &ReproduceOptions {
                    out_dir: out,
                    replications: reps,
                    seed,
                    threads,
                },
            )?;
            println!("{}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
