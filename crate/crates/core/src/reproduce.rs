//! Data behind each published figure, written as CSV.
//!
//! Figures 1–5 are regret experiments over built-in models; figure 6 is the
//! minimum-exploration bound and figure 7 the cost-regret objective. Each
//! figure also gets a `<fig>.meta.json` sidecar with the ground truth used.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use log::info;
use serde::Serialize;

use crate::analysis::{cost_regret_argmin, min_exploration_curve, CostSpec};
use crate::arm_models::{builtin, win_probability_oracle};
use crate::error::{Error, Result};
use crate::harness::{self, ExperimentConfig, GroundTruth, ModelDecl, CSV_HEADER};
use crate::policies::PolicySpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
}

impl Figure {
    pub const ALL: [Figure; 7] = [
        Figure::Fig1,
        Figure::Fig2,
        Figure::Fig3,
        Figure::Fig4,
        Figure::Fig5,
        Figure::Fig6,
        Figure::Fig7,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
            Figure::Fig6 => "fig6",
            Figure::Fig7 => "fig7",
        }
    }

    /// Replications used when none are requested.
    pub fn default_replications(self) -> u64 {
        match self {
            Figure::Fig3 => 500_000,
            _ => 100_000,
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| {
                let tags: Vec<_> = Figure::ALL.iter().map(|f| f.tag()).collect();
                Error::invalid(format!("unknown figure `{s}`; expected one of {}", tags.join(", ")))
            })
    }
}

#[derive(Clone, Debug)]
pub struct ReproduceOptions {
    pub out_dir: PathBuf,
    pub replications: Option<u64>,
    pub seed: u64,
    pub threads: Option<usize>,
}

/// Regret-vs-N grid of figures 1–3. Odd N keeps two-arm estimates tie-free.
pub const REGRET_N_GRID: &[u64] = &[3, 5, 11, 21, 51, 101, 201];
/// ExpExp hyper-parameters tried in the policy comparisons.
pub const EXPEXP_RHOS: &[f64] = &[0.5, 1.0, 2.0];
/// MaRaB levels tried in the policy comparisons.
pub const MARAB_ALPHAS: &[f64] = &[0.1, 0.25, 0.5];
/// ρ sweep of figure 4.
pub const RHO_SWEEP: &[f64] = &[0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 12.0, 16.0, 20.0, 30.0, 50.0];
/// Gap shared by the one- and two-time exploitation curves of figure 6.
pub const FIG6_GAP: f64 = 0.28;

/// The four compared policies, with every tried hyper-parameter.
pub fn comparison_policies() -> Vec<PolicySpec> {
    let mut p = vec![
        PolicySpec::named("ote-mab"),
        PolicySpec::named("ote-mab-paired"),
        PolicySpec::named("ucb1"),
    ];
    p.extend(EXPEXP_RHOS.iter().map(|&rho| PolicySpec {
        rho: Some(rho),
        ..PolicySpec::named("expexp")
    }));
    p.extend(MARAB_ALPHAS.iter().map(|&alpha| PolicySpec {
        alpha: Some(alpha),
        ..PolicySpec::named("marab")
    }));
    p
}

fn alpha_sweep() -> Vec<f64> {
    (1..20).map(|i| i as f64 * 0.05).collect()
}

#[derive(Serialize)]
struct ModelMeta {
    model: String,
    stand_in: bool,
    ground_truth: Option<GroundTruth>,
}

#[derive(Serialize)]
struct FigureMeta {
    figure: String,
    replications: Option<u64>,
    seed: u64,
    models: Vec<ModelMeta>,
}

fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>> {
    csv::Writer::from_path(path).map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })
}

fn write_meta(path: &Path, meta: &FigureMeta) -> Result<()> {
    let text = serde_json::to_string_pretty(meta).map_err(|e| Error::Numeric(e.to_string()))?;
    fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

/// Writes the data for `figure` into `opts.out_dir` and returns the CSV path.
pub fn reproduce(figure: Figure, opts: &ReproduceOptions) -> Result<PathBuf> {
    fs::create_dir_all(&opts.out_dir).map_err(|e| Error::io(&opts.out_dir, e))?;
    let csv_path = opts.out_dir.join(format!("{figure}.csv"));
    let meta_path = opts.out_dir.join(format!("{figure}.meta.json"));
    let reps = opts
        .replications
        .unwrap_or_else(|| figure.default_replications());
    let meta = match figure {
        Figure::Fig1 => regret_figure(figure, &[("example1", comparison_policies(), REGRET_N_GRID)], reps, opts, &csv_path)?,
        Figure::Fig2 => regret_figure(figure, &[("example2", comparison_policies(), REGRET_N_GRID)], reps, opts, &csv_path)?,
        Figure::Fig3 => regret_figure(figure, &[("example1", comparison_policies(), REGRET_N_GRID)], reps, opts, &csv_path)?,
        Figure::Fig4 => {
            let sweep: Vec<PolicySpec> = RHO_SWEEP
                .iter()
                .map(|&rho| PolicySpec {
                    rho: Some(rho),
                    ..PolicySpec::named("expexp")
                })
                .collect();
            regret_figure(
                figure,
                &[("example1", sweep.clone(), &[100]), ("variance-favoring", sweep, &[100])],
                reps,
                opts,
                &csv_path,
            )?
        }
        Figure::Fig5 => {
            let sweep: Vec<PolicySpec> = alpha_sweep()
                .into_iter()
                .map(|alpha| PolicySpec {
                    alpha: Some(alpha),
                    ..PolicySpec::named("marab")
                })
                .collect();
            regret_figure(
                figure,
                &[("example1", sweep.clone(), &[100]), ("cvar-contrast", sweep, &[100])],
                reps,
                opts,
                &csv_path,
            )?
        }
        Figure::Fig6 => exploration_figure(opts, &csv_path)?,
        Figure::Fig7 => tradeoff_figure(opts, &csv_path)?,
    };
    write_meta(&meta_path, &meta)?;
    info!("{figure}: wrote {}", csv_path.display());
    Ok(csv_path)
}

fn regret_figure(
    figure: Figure,
    runs: &[(&str, Vec<PolicySpec>, &[u64])],
    reps: u64,
    opts: &ReproduceOptions,
    csv_path: &Path,
) -> Result<FigureMeta> {
    let mut wtr = csv_writer(csv_path)?;
    let csv_err = |source| Error::Csv {
        path: csv_path.to_path_buf(),
        source,
    };
    let mut header = vec!["model"];
    header.extend(CSV_HEADER);
    wtr.write_record(&header).map_err(csv_err)?;
    let mut models = Vec::new();
    for (model, policies, grid) in runs {
        let config = ExperimentConfig {
            model: ModelDecl::Builtin(model.to_string()),
            n_grid: grid.to_vec(),
            replications: reps,
            m: 1,
            policies: policies.clone(),
            seed: opts.seed,
            delta_p: None,
            threads: opts.threads,
        };
        info!("{figure}: running `{model}` with {reps} replications");
        let curve = harness::run_experiment(&config)?;
        for row in harness::sorted_rows(&curve.rows) {
            let mut fields = vec![model.to_string()];
            fields.extend(harness::row_fields(row));
            wtr.write_record(&fields).map_err(csv_err)?;
        }
        models.push(ModelMeta {
            model: model.to_string(),
            stand_in: *model == "variance-favoring",
            ground_truth: curve.ground_truth,
        });
    }
    wtr.flush().map_err(|e| Error::io(csv_path, e))?;
    Ok(FigureMeta {
        figure: figure.tag().into(),
        replications: Some(reps),
        seed: opts.seed,
        models,
    })
}

/// ε_r grid of figure 6: 0.01, 0.02, ..., 0.50.
pub fn fig6_epsilons() -> Vec<f64> {
    (1..=50).map(|i| i as f64 / 100.0).collect()
}

fn exploration_figure(opts: &ReproduceOptions, csv_path: &Path) -> Result<FigureMeta> {
    let eps = fig6_epsilons();
    let one = min_exploration_curve(FIG6_GAP, 2, 1, &eps)?;
    let two = min_exploration_curve(FIG6_GAP, 2, 2, &eps)?;
    let mut wtr = csv_writer(csv_path)?;
    let csv_err = |source| Error::Csv {
        path: csv_path.to_path_buf(),
        source,
    };
    wtr.write_record(["epsilon_r", "n_min_m1", "n_min_m2", "n_min_m1_x2"])
        .map_err(csv_err)?;
    for (a, b) in one.iter().zip(&two) {
        wtr.write_record([
            a.epsilon_r.to_string(),
            a.n_min.to_string(),
            b.n_min.to_string(),
            (2 * a.n_min).to_string(),
        ])
        .map_err(csv_err)?;
    }
    wtr.flush().map_err(|e| Error::io(csv_path, e))?;
    Ok(FigureMeta {
        figure: "fig6".into(),
        replications: None,
        seed: opts.seed,
        models: vec![],
    })
}

/// Cost `N/5` and trade-off weight 100 over `N = 1..=200`.
pub fn fig7_spec() -> CostSpec {
    CostSpec {
        cost_per_experiment_divisor: 5.0,
        tradeoff_alpha: 100.0,
        n_grid: (1..=200).collect(),
    }
}

fn tradeoff_figure(opts: &ReproduceOptions, csv_path: &Path) -> Result<FigureMeta> {
    let model = builtin::example1()?;
    let oracle = win_probability_oracle(&model, 1)?;
    let truth = GroundTruth::from_oracle(&oracle);
    let p_star = oracle.values[truth.best_arm];
    let t = cost_regret_argmin(p_star, &fig7_spec())?;
    let mut wtr = csv_writer(csv_path)?;
    let csv_err = |source| Error::Csv {
        path: csv_path.to_path_buf(),
        source,
    };
    wtr.write_record(["n", "p_star", "cost", "regret", "objective", "is_argmin"])
        .map_err(csv_err)?;
    for pt in &t.curve {
        wtr.write_record([
            pt.n.to_string(),
            p_star.to_string(),
            pt.cost.to_string(),
            pt.regret.to_string(),
            pt.objective.to_string(),
            (pt.n == t.n_opt).to_string(),
        ])
        .map_err(csv_err)?;
    }
    wtr.flush().map_err(|e| Error::io(csv_path, e))?;
    Ok(FigureMeta {
        figure: "fig7".into(),
        replications: None,
        seed: opts.seed,
        models: vec![ModelMeta {
            model: "example1".into(),
            stand_in: false,
            ground_truth: Some(truth),
        }],
    })
}
