use std::path::PathBuf;

use clap::{Args, ValueEnum};
use mgiss::bandit::{
    aggregate, estimated_best_arm, run_many, write_aggregate_csv, write_history_csv, ArmOracle,
    ArmSelection, BanditError,
};
use mgiss::scm::{ScmError, DEFAULT_BUDGET};
use serde::Serialize;

use crate::input::{read_scm, resolve_target};
use crate::{with_jobs, CliError, CliResult, Format, OutputArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Arms {
    All,
    Mgiss,
}

#[derive(Debug, Args)]
pub struct BanditArgs {
    /// Model file in the JSON model format.
    #[arg(long, alias = "graph")]
    scm: PathBuf,
    /// Reward node: label, numeric id, or `auto`.
    #[arg(long, default_value = "auto")]
    target: String,
    #[arg(long, default_value_t = 1000)]
    horizon: usize,
    /// Number of independent runs; run `i` uses seed `seed + i`.
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Intervene on every proper ancestor of the target, or on the
    /// minimal superior set only.
    #[arg(long, value_enum, default_value = "mgiss")]
    arms: Arms,
    /// Largest joint noise support enumerated for exact arm values.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long)]
    jobs: Option<usize>,
    /// Also write one history CSV per run into this directory.
    #[arg(long)]
    history_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Serialize)]
struct Summary {
    target: String,
    arms: Vec<String>,
    arm_values: Vec<f64>,
    best_value: f64,
    runs: usize,
    horizon: usize,
    final_mean_regret: f64,
    final_std_regret: f64,
    estimated_best_arm: Option<String>,
}

fn bandit_error(e: BanditError) -> CliError {
    match e {
        BanditError::Scm(ScmError::EnumerationBudgetExceeded { .. }) => {
            CliError::Budget(e.to_string())
        }
        BanditError::InvalidArm(_) => CliError::Target(e.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

pub fn run(args: &BanditArgs) -> CliResult<()> {
    let scm = read_scm(&args.scm)?;
    let dag = scm.dag();
    let y = resolve_target(dag, &args.target)?;
    let selection = match args.arms {
        Arms::All => ArmSelection::All,
        Arms::Mgiss => ArmSelection::Mgiss,
    };
    let arms = selection.arms(&scm, y);
    let oracle = ArmOracle::new(&scm, y, &arms, args.budget).map_err(bandit_error)?;
    let seeds: Vec<u64> = (0..args.count as u64)
        .map(|i| args.seed.wrapping_add(i))
        .collect();
    let histories = with_jobs(args.jobs, || run_many(&scm, y, &arms, args.horizon, &seeds))?
        .map_err(bandit_error)?;
    let curves: Vec<Vec<f64>> = histories.iter().map(|h| oracle.regret(h)).collect();
    let curve = aggregate(&curves);

    if let Some(dir) = &args.history_dir {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Input(format!("cannot create {}: {e}", dir.display())))?;
        for ((h, regret), seed) in histories.iter().zip(&curves).zip(&seeds) {
            let path = dir.join(format!("history_seed{seed}.csv"));
            let file = std::fs::File::create(&path)
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            write_history_csv(file, &scm, h, Some(regret))
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
        }
    }

    let text = match args.format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_aggregate_csv(&mut buf, &curve)
                .map_err(|e| CliError::Input(format!("csv output failed: {e}")))?;
            String::from_utf8(buf).expect("csv is utf-8")
        }
        Format::Json | Format::Text => {
            let summary = Summary {
                target: dag.label(y),
                arms: arms.iter().map(|&a| dag.label(a)).collect(),
                arm_values: arms
                    .iter()
                    .map(|&a| oracle.value(a).unwrap_or(0.0))
                    .collect(),
                best_value: oracle.best_value(),
                runs: histories.len(),
                horizon: args.horizon,
                final_mean_regret: curve.final_mean(),
                final_std_regret: curve.final_std(),
                estimated_best_arm: estimated_best_arm(&histories).map(|a| dag.label(a)),
            };
            if args.format == Format::Json {
                serde_json::to_string_pretty(&summary).expect("serializable") + "\n"
            } else {
                format!(
                    "target {} arms [{}] best value {}\nfinal regret {:.4} (sd {:.4}) over {} runs of {} rounds\n",
                    summary.target,
                    summary.arms.join(" "),
                    summary.best_value,
                    summary.final_mean_regret,
                    summary.final_std_regret,
                    summary.runs,
                    summary.horizon
                )
            }
        }
    };
    args.output.emit(&text)
}
