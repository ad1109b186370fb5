//! The benchmark protocol: for every (estimator, sample count) cell, run a
//! number of independent trials against the exact reference value and report
//! the mean and standard deviation of the absolute relative error, plus the
//! mean number of random bits consumed.
//!
//! Trials are keyed by (seed, estimator, samples, trial), so cells and
//! trials can run in any order — or in parallel — without changing a single
//! output byte.

use std::path::PathBuf;

use rayon::prelude::*;

use tracekit::graph::Graph;
use tracekit::matrix_market::{read_matrix_market_file, MatrixMarketMatrix};
use tracekit::oracle::PowerOracle;
use tracekit::rng::compose_seed;
use tracekit::stats;
use tracekit::{
    adjacency_oracle, estimate_trace, exact_triangle_count, EstimatorKind, SparseSymmetric64,
    TraceEstimate64,
};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum InputFormat {
    MatrixMarket,
    Snap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Task {
    /// Estimate the trace of the input matrix.
    Trace,
    /// Estimate the triangle count of the input graph via Tr(A³)/6.
    Triangles,
}

/// Full description of a benchmark run.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub estimators: Vec<EstimatorKind>,
    /// Strictly ascending probe counts; one CSV row per entry.
    pub sample_counts: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub input: PathBuf,
    pub format: InputFormat,
    pub task: Task,
    pub output: Option<PathBuf>,
    /// Book each complex probe as two real oracle evaluations in the
    /// `samples` column.
    pub count_real_equivalents: bool,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.estimators.is_empty() {
            return Err(CliError::usage("at least one estimator is required"));
        }
        if self.sample_counts.is_empty() {
            return Err(CliError::usage("at least one sample count is required"));
        }
        if !self.sample_counts.windows(2).all(|w| w[0] < w[1]) {
            return Err(CliError::usage("sample counts must be strictly ascending"));
        }
        if self.sample_counts[0] == 0 {
            return Err(CliError::usage("sample counts must be positive"));
        }
        if self.trials == 0 {
            return Err(CliError::usage("at least one trial is required"));
        }
        match (self.task, self.format) {
            (Task::Trace, InputFormat::MatrixMarket) | (Task::Triangles, InputFormat::Snap) => {
                Ok(())
            }
            (Task::Trace, InputFormat::Snap) => Err(CliError::usage(
                "the trace task needs a matrix-market input (an adjacency matrix has zero trace)",
            )),
            (Task::Triangles, InputFormat::MatrixMarket) => Err(CliError::usage(
                "the triangles task needs a snap edge-list input",
            )),
        }
    }
}

/// One CSV row: error statistics for a single (estimator, samples) cell.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchmarkRow {
    pub estimator: EstimatorKind,
    /// Probe count, doubled for complex probes under
    /// `count_real_equivalents`.
    pub samples: u64,
    pub mean_abs_rel_err: f64,
    pub std_abs_rel_err: f64,
    pub mean_bits: f64,
}

pub const CSV_HEADER: &str = "estimator,samples,mean_abs_rel_err,std_abs_rel_err,mean_bits";

/// Formats rows as CSV with a header line, LF endings and 12 significant
/// digits, byte-identical across runs of the same configuration.
pub fn rows_to_csv(rows: &[BenchmarkRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{:.11e},{:.11e},{:.11e}\n",
            row.estimator, row.samples, row.mean_abs_rel_err, row.std_abs_rel_err, row.mean_bits
        ));
    }
    out
}

/// The loaded input together with its exact reference value.
pub enum BenchmarkInput {
    Matrix(MatrixMarketMatrix<f64>),
    Graph { adjacency: SparseSymmetric64 },
}

impl BenchmarkInput {
    pub fn load(config: &ExperimentConfig) -> Result<(Self, f64), CliError> {
        match config.format {
            InputFormat::MatrixMarket => {
                let matrix = read_matrix_market_file::<f64>(&config.input)?;
                let reference = matrix.trace();
                Ok((BenchmarkInput::Matrix(matrix), reference))
            }
            InputFormat::Snap => {
                let file = std::fs::File::open(&config.input).map_err(tracekit::Error::from)?;
                let graph = Graph::parse_snap(std::io::BufReader::new(file))?;
                // Exact Tr(A³) through the combinatorial count; never a
                // dense product.
                let reference = 6.0 * exact_triangle_count(&graph) as f64;
                let adjacency = adjacency_oracle::<f64>(&graph);
                Ok((BenchmarkInput::Graph { adjacency }, reference))
            }
        }
    }

    fn estimate(&self, kind: EstimatorKind, samples: usize, seed: u64) -> TraceEstimate64 {
        match self {
            BenchmarkInput::Matrix(matrix) => {
                estimate_trace(matrix.oracle(), kind, samples, seed)
            }
            BenchmarkInput::Graph { adjacency } => {
                let cubed = PowerOracle::new(adjacency, 3);
                estimate_trace(&cubed, kind, samples, seed)
            }
        }
    }
}

fn kind_tag(kind: EstimatorKind) -> u64 {
    EstimatorKind::ALL.iter().position(|&k| k == kind).unwrap() as u64
}

/// Runs the full sweep. Rows are ordered by the configured estimator order,
/// then by ascending sample count.
pub fn run_benchmark(config: &ExperimentConfig) -> Result<Vec<BenchmarkRow>, CliError> {
    config.validate()?;
    let (input, reference) = BenchmarkInput::load(config)?;
    if reference == 0.0 {
        return Err(CliError::data(
            "the exact reference value is zero; relative errors are undefined",
        ));
    }

    let mut rows = Vec::with_capacity(config.estimators.len() * config.sample_counts.len());
    for &kind in &config.estimators {
        for &samples in &config.sample_counts {
            let cells: Vec<(f64, f64)> = (0..config.trials)
                .into_par_iter()
                .map(|trial| {
                    let seed = compose_seed(
                        config.seed,
                        &[kind_tag(kind), samples as u64, trial as u64],
                    );
                    let estimate = input.estimate(kind, samples, seed);
                    let rel_err = (estimate.mean - reference).abs() / reference.abs();
                    (rel_err, estimate.total_bits as f64)
                })
                .collect();
            let errors: Vec<f64> = cells.iter().map(|&(e, _)| e).collect();
            let bits: Vec<f64> = cells.iter().map(|&(_, b)| b).collect();
            let mean_err = stats::mean(&errors);
            let std_err = stats::sample_variance(&errors, mean_err).sqrt();
            let booked = if config.count_real_equivalents && kind.uses_complex_probes() {
                2 * samples as u64
            } else {
                samples as u64
            };
            rows.push(BenchmarkRow {
                estimator: kind,
                samples: booked,
                mean_abs_rel_err: mean_err,
                std_abs_rel_err: std_err,
                mean_bits: stats::mean(&bits),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_config(dir: &std::path::Path) -> ExperimentConfig {
        ExperimentConfig {
            estimators: vec![EstimatorKind::Mubs],
            sample_counts: vec![1, 2],
            trials: 3,
            seed: 0,
            input: dir.join("m.mtx"),
            format: InputFormat::MatrixMarket,
            task: Task::Trace,
            output: None,
            count_real_equivalents: false,
        }
    }

    #[test]
    fn validation_rejects_bad_configs() {
        let dir = std::env::temp_dir();
        let mut config = base_config(&dir);
        config.sample_counts = vec![2, 2];
        assert!(config.validate().is_err());
        let mut config = base_config(&dir);
        config.sample_counts = vec![];
        assert!(config.validate().is_err());
        let mut config = base_config(&dir);
        config.trials = 0;
        assert!(config.validate().is_err());
        let mut config = base_config(&dir);
        config.format = InputFormat::Snap;
        assert!(config.validate().is_err());
    }

    #[test]
    fn csv_has_twelve_significant_digits() {
        let rows = vec![BenchmarkRow {
            estimator: EstimatorKind::Gaussian,
            samples: 10,
            mean_abs_rel_err: 1.0 / 3.0,
            std_abs_rel_err: 0.25,
            mean_bits: 640.0,
        }];
        let csv = rows_to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        assert_eq!(
            lines.next().unwrap(),
            "gaussian,10,3.33333333333e-1,2.50000000000e-1,6.40000000000e2"
        );
    }
}
