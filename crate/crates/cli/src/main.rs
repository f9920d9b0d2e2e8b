use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use trustrec::{DecisionRule, PurchaseModel, SimilarityMeasure};
use trustrec_cli::{
    render, render_table, solve_files, verify, Fault, Format, RunConfig, VerifyConfig,
};

#[derive(Parser)]
#[command(
    name = "trustrec",
    version,
    about = "Profit-maximizing recommendations under a trust constraint"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one customer per input file and write a JSON report.
    Solve(SolveArgs),
    /// Run the oracle and property checks and print a pass/fail table.
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
struct SolveArgs {
    /// Catalog file; repeat for a batch.
    #[arg(long, required = true)]
    input: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    #[arg(long)]
    tau: f64,
    #[arg(long, value_enum, default_value = "linear")]
    model: ModelArg,
    #[arg(long, value_enum, default_value = "dice")]
    measure: MeasureArg,
    #[arg(long, default_value_t = 5.0)]
    max_rating: f64,
    /// Absolute tolerance of the multinomial binary search.
    #[arg(long, default_value_t = 1e-6)]
    epsilon: f64,
    /// Also report the recommendation projected onto [0, max-rating].
    #[arg(long)]
    clamp: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Multinomial feasibility test.
    #[arg(long, value_enum, default_value = "nonnegative")]
    decision: DecisionArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 100_000)]
    resolution: usize,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated trust thresholds.
    #[arg(long, value_delimiter = ',', default_values_t = trustrec_cli::verify::DEFAULT_TAUS)]
    taus: Vec<f64>,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Linear,
    Multinomial,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Dice,
    Jaccard,
}

#[derive(Clone, Copy, ValueEnum)]
enum DecisionArg {
    ClosedForm,
    Nonnegative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => solve(args),
        Command::Verify(args) => run_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn solve(args: SolveArgs) -> Result<ExitCode, String> {
    let cfg = RunConfig {
        tau: args.tau,
        measure: match args.measure {
            MeasureArg::Dice => SimilarityMeasure::Dice,
            MeasureArg::Jaccard => SimilarityMeasure::Jaccard,
        },
        model: match args.model {
            ModelArg::Linear => PurchaseModel::Linear,
            ModelArg::Multinomial => PurchaseModel::Multinomial,
        },
        max_rating: args.max_rating,
        epsilon: args.epsilon,
        clamp: args.clamp,
        seed: args.seed,
        decision: match args.decision {
            DecisionArg::ClosedForm => DecisionRule::ClosedForm,
            DecisionArg::Nonnegative => DecisionRule::Nonnegative,
        },
    };
    let format = match args.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let reports = solve_files(&args.input, format, &cfg).map_err(|e| e.to_string())?;
    let doc = render(&reports);
    match args.output {
        Some(path) => std::fs::write(&path, doc)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => std::io::stdout()
            .write_all(doc.as_bytes())
            .map_err(|e| format!("cannot write report: {e}"))?,
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let cfg = VerifyConfig {
        resolution: args.resolution,
        trials: args.trials,
        seed: args.seed,
        taus: args.taus,
        fault: args.inject_fault.then_some(Fault::ShrinkLinearStep),
    };
    let results = verify(&cfg).map_err(|e| e.to_string())?;
    print!("{}", render_table(&results));
    let failed = results.iter().filter(|r| !r.passed).count();
    if failed == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{failed} of {} checks failed", results.len());
        Ok(ExitCode::FAILURE)
    }
}
