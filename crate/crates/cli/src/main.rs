//! `kkw`: run verification pipelines on a case and emit a report.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kkw_core::harness::case::{finalize, load_case};
use kkw_core::harness::{emit_report, run_pipeline, Format, Pipeline};
use kkw_core::Tier;

#[derive(Parser, Debug)]
#[command(name = "kkw", version, about = "Equivariant noncommutative residue verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Curvature, frame and Killing-field invariants.
    Geometry(Args),
    /// Canonical form and interior residue densities.
    Interior(Args),
    /// Boundary residue terms on a collar chart.
    Boundary(Args),
    /// Dimension-general boundary constants and the n = 6 adjudication.
    GeneralN(Args),
    /// Torsion-perturbed Laplacian.
    Torsion(Args),
    /// Every pipeline that applies to the case.
    All(Args),
}

#[derive(clap::Args, Debug)]
struct Args {
    /// Registry id, shorthand (`flat-r4, X=rotation(1,2)`), JSON text or a JSON file.
    #[arg(long)]
    case: String,
    /// Jet truncation order; defaults to the case value, then `WRES_ORDER`, then 6.
    #[arg(long)]
    order: Option<i32>,
    #[arg(long, value_enum)]
    tier: Option<TierArg>,
    /// Also write the JSON report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TierArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

fn run(pipeline: Pipeline, args: &Args) -> kkw_core::Result<bool> {
    let mut spec = load_case(&args.case)?;
    if let Some(order) = args.order {
        spec.order = Some(order);
    }
    if let Some(t) = args.tier {
        spec.tier = Some(match t {
            TierArg::Exact => Tier::Exact,
            TierArg::Float => Tier::Float,
        });
    }
    let spec = finalize(spec)?;
    let (report, timings) = run_pipeline(pipeline, &spec)?;
    for (name, t) in &timings {
        eprintln!("{name}: {:.3}s", t.as_secs_f64());
    }
    let format = match args.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    print!("{}", emit_report(&report, format));
    if let Some(path) = &args.report {
        std::fs::write(path, emit_report(&report, Format::Json))?;
    }
    Ok(report.all_hard_pass())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (pipeline, args) = match &cli.command {
        Command::Geometry(a) => (Pipeline::Geometry, a),
        Command::Interior(a) => (Pipeline::Interior, a),
        Command::Boundary(a) => (Pipeline::Boundary, a),
        Command::GeneralN(a) => (Pipeline::GeneralN, a),
        Command::Torsion(a) => (Pipeline::Torsion, a),
        Command::All(a) => (Pipeline::All, a),
    };
    match run(pipeline, args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
