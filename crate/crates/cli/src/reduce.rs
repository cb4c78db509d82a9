use std::path::PathBuf;

use clap::Args;
use mgiss::graphgen::{
    reduction_fraction, reduction_study, write_reduction_csv, ReductionRecord, ReductionStudy,
};
use serde::Serialize;

use crate::input::{read_graph, resolve_target, InputFormat};
use crate::{with_jobs, CliError, CliResult, Format, OutputArgs};

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// Node counts, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "100")]
    n: Vec<usize>,
    /// Expected total degrees, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "5")]
    degree: Vec<f64>,
    /// Graphs per (n, degree) cell.
    #[arg(long, default_value_t = 1000)]
    count: usize,
    /// Graph `i` of a cell uses seed `seed + i`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    jobs: Option<usize>,
    /// Measure one given graph instead of random ones.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Target for `--graph`.
    #[arg(long, default_value = "auto")]
    target: String,
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Serialize)]
struct CellSummary {
    n: usize,
    expected_degree: Option<f64>,
    graphs: usize,
    skipped: usize,
    mean_fraction: Option<f64>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    cells: Vec<CellSummary>,
    records: Vec<&'a ReductionRecord>,
}

pub fn run(args: &ReduceArgs) -> CliResult<()> {
    let studies = match &args.graph {
        Some(path) => {
            let dag = read_graph(path, args.input_format)?;
            let y = resolve_target(&dag, &args.target)?;
            let id = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let record = reduction_fraction(&dag, y, &id, None)
                .map_err(|e| CliError::Target(e.to_string()))?;
            vec![ReductionStudy {
                node_count: dag.node_count(),
                expected_degree: None,
                records: vec![record],
                skipped: 0,
            }]
        }
        None => {
            let mut out = Vec::new();
            for &n in &args.n {
                for &d in &args.degree {
                    let study =
                        with_jobs(args.jobs, || reduction_study(n, d, args.count, args.seed))?
                            .map_err(|e| CliError::Input(e.to_string()))?;
                    out.push(study);
                }
            }
            out
        }
    };

    let text = match args.format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_reduction_csv(&mut buf, &studies)
                .map_err(|e| CliError::Input(format!("csv output failed: {e}")))?;
            String::from_utf8(buf).expect("csv is utf-8")
        }
        Format::Json | Format::Text => {
            let report = JsonReport {
                cells: studies
                    .iter()
                    .map(|s| CellSummary {
                        n: s.node_count,
                        expected_degree: s.expected_degree,
                        graphs: s.records.len(),
                        skipped: s.skipped,
                        mean_fraction: s.mean_fraction(),
                    })
                    .collect(),
                records: studies.iter().flat_map(|s| &s.records).collect(),
            };
            if args.format == Format::Json {
                serde_json::to_string_pretty(&report).expect("serializable") + "\n"
            } else {
                report
                    .cells
                    .iter()
                    .map(|c| {
                        format!(
                            "n={} degree={} graphs={} skipped={} mean_fraction={}\n",
                            c.n,
                            c.expected_degree.map_or("-".into(), |d| d.to_string()),
                            c.graphs,
                            c.skipped,
                            c.mean_fraction.map_or("-".into(), |f| format!("{f:.4}")),
                        )
                    })
                    .collect()
            }
        }
    };
    args.output.emit(&text)
}
