use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use tracekit::analysis::{
    enumerate_variance, format_variance_table, variance_reports, DEFAULT_ENUMERATION_CAP,
};
use tracekit::matrix_market::{read_matrix_market_file, MatrixMarketMatrix};
use tracekit::{
    estimate_trace, estimate_triangles, exact_triangle_count, generate_mub_family,
    random_bits_required, verify_mub_family, EstimatorKind, Graph, MubFamily64, PrimeDim,
};

use tracekit_cli::bench::{rows_to_csv, run_benchmark, ExperimentConfig, InputFormat, Task};
use tracekit_cli::CliError;

/// Stochastic trace estimation toolkit: estimate matrix traces and graph
/// triangle counts with fixed-basis, MUBs, Hutchinson or Gaussian probes.
#[derive(Parser)]
#[command(name = "tracekit", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep estimators and sample counts, reporting error statistics as CSV.
    Bench(BenchArgs),
    /// Estimate the trace of a Matrix Market matrix.
    Trace(TraceArgs),
    /// Estimate the number of triangles in an edge-list graph.
    Triangles(TrianglesArgs),
    /// Verify or dump a family of mutually unbiased bases.
    Mub(MubArgs),
}

fn parse_estimator(s: &str) -> Result<EstimatorKind, String> {
    s.parse()
}

#[derive(Args)]
struct BenchArgs {
    /// Input file (Matrix Market matrix or SNAP edge list).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "matrix-market")]
    format: InputFormat,
    #[arg(long, value_enum, default_value = "trace")]
    task: Task,
    /// Comma-separated subset of fixed-basis, mubs, hutchinson, gaussian.
    #[arg(
        long,
        value_delimiter = ',',
        value_parser = parse_estimator,
        default_value = "fixed-basis,mubs,hutchinson,gaussian"
    )]
    estimators: Vec<EstimatorKind>,
    /// Strictly ascending probe counts, one CSV row each.
    #[arg(long, value_delimiter = ',', default_value = "1,2,5,10,20,50,100")]
    samples: Vec<usize>,
    /// Independent trials per (estimator, samples) cell.
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Book each complex probe as two real oracle evaluations in the
    /// samples column.
    #[arg(long)]
    count_real_equivalents: bool,
}

#[derive(Args)]
struct TraceArgs {
    /// Matrix Market input file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_parser = parse_estimator, default_value = "mubs")]
    estimator: EstimatorKind,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Enumerate the full probe set instead of sampling (basis estimators
    /// on a prime dimension only).
    #[arg(long)]
    enumerate: bool,
}

#[derive(Args)]
struct TrianglesArgs {
    /// SNAP edge-list input file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_parser = parse_estimator, default_value = "mubs")]
    estimator: EstimatorKind,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Skip the exact reference count (it costs an exact triangle pass).
    #[arg(long)]
    no_exact: bool,
}

#[derive(Args)]
struct MubArgs {
    /// Prime dimension of the family.
    p: usize,
    #[command(subcommand)]
    action: MubAction,
}

#[derive(Subcommand)]
enum MubAction {
    /// Exhaustively check orthonormality and unbiasedness.
    Verify {
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Write the family as CSV (one row per vector).
    Dump {
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes; everything else is a
            // usage error (exit code 1).
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Bench(args) => cmd_bench(args),
        Command::Trace(args) => cmd_trace(args),
        Command::Triangles(args) => cmd_triangles(args),
        Command::Mub(args) => cmd_mub(args),
    }
}

fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    let config = ExperimentConfig {
        estimators: args.estimators,
        sample_counts: args.samples,
        trials: args.trials,
        seed: args.seed,
        input: args.input,
        format: args.format,
        task: args.task,
        output: args.out,
        count_real_equivalents: args.count_real_equivalents,
    };
    let rows = run_benchmark(&config)?;
    let csv = rows_to_csv(&rows);
    match &config.output {
        Some(path) => {
            std::fs::write(path, csv).map_err(tracekit::Error::from)?;
            eprintln!("wrote {} rows to {}", rows.len(), path.display());
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn cmd_trace(args: TraceArgs) -> Result<(), CliError> {
    let matrix = read_matrix_market_file::<f64>(&args.input)?;
    let n = matrix.dim();
    println!("dimension: {n}");
    println!("estimator: {}", args.estimator);

    if args.enumerate {
        let dense = materialize(&matrix);
        let (mean, variance) = enumerate_variance(args.estimator, &dense)?;
        println!("enumerated probes: exact single-shot distribution");
        println!("mean: {mean}");
        println!("population variance: {variance}");
    } else {
        let estimate = estimate_trace(matrix.oracle(), args.estimator, args.samples, args.seed);
        println!("samples: {}", estimate.samples);
        println!("mean: {}", estimate.mean);
        println!("sample variance: {}", estimate.sample_variance);
        println!(
            "bits consumed: {} (theoretical minimum per probe: {})",
            estimate.total_bits,
            random_bits_required(args.estimator, n)
        );
    }

    println!("exact trace: {}", matrix.trace());
    if matrix.as_dense().is_some() && n <= DEFAULT_ENUMERATION_CAP {
        let dense = materialize(&matrix);
        let reports = variance_reports(&dense, false);
        println!("single-shot variance (scaled estimate of the trace):");
        print!("{}", format_variance_table(&reports, n));
    }
    Ok(())
}

fn materialize(matrix: &MatrixMarketMatrix<f64>) -> tracekit::DenseMatrix64 {
    match matrix {
        MatrixMarketMatrix::Dense(dense) => dense.clone(),
        MatrixMarketMatrix::Sparse(sparse) => sparse.to_dense(),
    }
}

fn cmd_triangles(args: TrianglesArgs) -> Result<(), CliError> {
    let file = std::fs::File::open(&args.input).map_err(tracekit::Error::from)?;
    let graph = Graph::parse_snap(std::io::BufReader::new(file))?;
    println!("vertices: {}", graph.num_vertices());
    println!("edges: {}", graph.num_edges());
    println!("estimator: {}", args.estimator);
    println!("samples: {}", args.samples);

    let mut estimate =
        estimate_triangles::<f64>(&graph, args.estimator, args.samples, args.seed);
    if !args.no_exact {
        let exact = exact_triangle_count(&graph);
        estimate = estimate.with_exact(exact);
        println!("exact triangles: {exact}");
    }
    println!("estimated triangles: {}", estimate.estimate);
    if let Some(err) = estimate.abs_rel_error {
        println!("absolute relative error: {err}");
    }
    Ok(())
}

fn cmd_mub(args: MubArgs) -> Result<(), CliError> {
    let p = PrimeDim::new(args.p)?;
    match args.action {
        MubAction::Verify { tol } => {
            let family: MubFamily64 = generate_mub_family(p);
            let report = verify_mub_family(&family, tol);
            println!("p = {p}: {} bases of {} vectors", family.num_bases(), p);
            println!(
                "max orthonormality error: {:e}",
                report.max_orthonormality_error
            );
            println!("max unbiasedness error: {:e}", report.max_unbiasedness_error);
            println!(
                "{} (tolerance {tol:e})",
                if report.pass { "pass" } else { "FAIL" }
            );
            if !report.pass {
                return Err(CliError::data(format!(
                    "family verification failed at tolerance {tol:e}"
                )));
            }
        }
        MubAction::Dump { out } => {
            let family: MubFamily64 = generate_mub_family(p);
            match out {
                Some(path) => {
                    let mut file = std::fs::File::create(path).map_err(tracekit::Error::from)?;
                    family.write_csv(&mut file).map_err(tracekit::Error::from)?;
                }
                None => {
                    let stdout = std::io::stdout();
                    let mut lock = stdout.lock();
                    family.write_csv(&mut lock).map_err(tracekit::Error::from)?;
                    lock.flush().map_err(tracekit::Error::from)?;
                }
            }
        }
    }
    Ok(())
}
