//! Batch command line for PC-matrix analysis and axiom checking.
//!
//! Exit codes: 0 success, 1 axiom failure (a failed `axioms` verdict, a
//! found counterexample, a `classify` target that is not a deviation),
//! 2 usage or parse errors.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use triadic::deviation::{classify, matrix_inconsistency, ClassifyConfig, TriadDeviation};
use triadic::matrix::{parse_matrix_text, text_prefers_rational, PcMatrix};
use triadic::metric::Metric;
use triadic::scalar::{NumericMode, Rational, Scalar};
use triadic::verify::{
    check_deviation_conditions, check_metric_axioms, find_counterexample, DeviationCondition,
    SampleMode, SamplePlan, Witness, DEFAULT_CHECK_TOLERANCE, DEFAULT_DOMAIN,
};

mod output;

use output::{analyze_document, analyze_text, axioms_text, classify_text, to_json};

const EXIT_AXIOM_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: EXIT_USAGE,
        }
    }
}

type CmdResult = Result<ExitCode, CliError>;

#[derive(Parser)]
#[command(
    name = "triadic",
    version,
    about = "Pairwise-comparisons matrices: triad inconsistency analysis and axiom falsification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Rational,
    Float,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutArg {
    Text,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SamplingArg {
    #[value(name = "uniform-log")]
    UniformLog,
    #[value(name = "uniform-linear")]
    UniformLinear,
    #[value(name = "structured-grid")]
    StructuredGrid,
}

impl From<SamplingArg> for SampleMode {
    fn from(s: SamplingArg) -> SampleMode {
        match s {
            SamplingArg::UniformLog => SampleMode::UniformLog,
            SamplingArg::UniformLinear => SampleMode::UniformLinear,
            SamplingArg::StructuredGrid => SampleMode::StructuredGrid,
        }
    }
}

/// Flags shared by the sampling commands.
#[derive(Args)]
struct PlanArgs {
    /// Random samples per axiom (structured probes are always prepended)
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    /// Seed of the deterministic sample stream
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sampling domain per coordinate
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    domain: Option<Vec<f64>>,
    /// Distribution of the random tail
    #[arg(long, value_enum, default_value_t = SamplingArg::UniformLog)]
    sampling: SamplingArg,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a matrix file and score its triads with an indicator
    Analyze {
        /// Matrix file in the text format (optional `n` header, then
        /// n rows of decimal or `p/q` tokens; `#` comments)
        matrix_file: String,
        /// Indicator: DI, EI, I1, Kii, or PL
        #[arg(long)]
        indicator: String,
        /// Numeric mode; defaults to rational when the file contains
        /// fraction tokens, float otherwise
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Relative tolerance for float-mode consistency and reciprocity
        #[arg(long, default_value_t = triadic::matrix::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = OutArg::Text)]
        out: OutArg,
    },
    /// Check metric axioms or deviation conditions for a named target;
    /// exits 1 when the verdict is fail
    Axioms {
        /// A deviation (DI, EI, I1, Kii, PL) or a metric (discrete,
        /// euclidean, d1, ratio, sqdiff)
        target: String,
        #[command(flatten)]
        plan: PlanArgs,
        /// Float-mode slack on inequality checks
        #[arg(long, default_value_t = DEFAULT_CHECK_TOLERANCE)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = ModeArg::Float)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = OutArg::Text)]
        out: OutArg,
    },
    /// Classify an indicator as deviation / bounded / indicator, with
    /// evidence; exits 1 when it is not a deviation
    Classify {
        /// A deviation name: DI, EI, I1, Kii, PL
        target: String,
        #[command(flatten)]
        plan: PlanArgs,
        #[arg(long, default_value_t = DEFAULT_CHECK_TOLERANCE)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = ModeArg::Float)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = OutArg::Text)]
        out: OutArg,
    },
    /// Build the consistent reciprocal matrix from adjacent ratios
    /// m[0][1], m[1][2], ... and write it in the text format
    Reconstruct {
        /// Ratios as decimals or fractions, e.g. `2 3` or `1/2 1/3 6`
        #[arg(required = true)]
        ratios: Vec<String>,
        /// Numeric mode; reconstruction is exact, so rational is the
        /// default
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Write to a file instead of stdout
        #[arg(long)]
        output: Option<String>,
    },
    /// Search one condition of a deviation for a violating tuple;
    /// exits 1 when a witness is found
    Counterexample {
        /// A deviation name: DI, EI, I1, Kii, PL
        target: String,
        /// Condition: zero, commutation, generalized-triangle, symmetry
        #[arg(long)]
        condition: String,
        #[command(flatten)]
        plan: PlanArgs,
        #[arg(long, default_value_t = DEFAULT_CHECK_TOLERANCE)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = ModeArg::Float)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = OutArg::Text)]
        out: OutArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn dispatch(cmd: Command) -> CmdResult {
    match cmd {
        Command::Analyze {
            matrix_file,
            indicator,
            mode,
            tol,
            out,
        } => cmd_analyze(&matrix_file, &indicator, mode, tol, out),
        Command::Axioms {
            target,
            plan,
            tol,
            mode,
            out,
        } => {
            let plan = build_plan(&plan, tol)?;
            match mode {
                ModeArg::Rational => cmd_axioms::<Rational>(&target, &plan, out),
                ModeArg::Float => cmd_axioms::<f64>(&target, &plan, out),
            }
        }
        Command::Classify {
            target,
            plan,
            tol,
            mode,
            out,
        } => {
            let plan = build_plan(&plan, tol)?;
            match mode {
                ModeArg::Rational => cmd_classify::<Rational>(&target, plan, out),
                ModeArg::Float => cmd_classify::<f64>(&target, plan, out),
            }
        }
        Command::Reconstruct {
            ratios,
            mode,
            output,
        } => match mode.unwrap_or(ModeArg::Rational) {
            ModeArg::Rational => cmd_reconstruct::<Rational>(&ratios, output.as_deref()),
            ModeArg::Float => cmd_reconstruct::<f64>(&ratios, output.as_deref()),
        },
        Command::Counterexample {
            target,
            condition,
            plan,
            tol,
            mode,
            out,
        } => {
            let plan = build_plan(&plan, tol)?;
            match mode {
                ModeArg::Rational => {
                    cmd_counterexample::<Rational>(&target, &condition, &plan, out)
                }
                ModeArg::Float => cmd_counterexample::<f64>(&target, &condition, &plan, out),
            }
        }
    }
}

fn build_plan(args: &PlanArgs, tol: f64) -> Result<SamplePlan, CliError> {
    let domain = match &args.domain {
        Some(d) => (d[0], d[1]),
        None => DEFAULT_DOMAIN,
    };
    SamplePlan::new(args.seed, args.samples, domain, args.sampling.into(), tol)
        .map_err(|e| CliError::usage(e.to_string()))
}

fn resolve_deviation(name: &str) -> Result<TriadDeviation, CliError> {
    TriadDeviation::from_name(name).ok_or_else(|| {
        CliError::usage(format!(
            "unknown indicator `{name}`; expected one of DI, EI, I1, Kii, PL"
        ))
    })
}

fn cmd_analyze(
    path: &str,
    indicator: &str,
    mode: Option<ModeArg>,
    tol: f64,
    out: OutArg,
) -> CmdResult {
    if tol < 0.0 {
        return Err(CliError::usage("tolerance must be non-negative"));
    }
    let td = resolve_deviation(indicator)?;
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read `{path}`: {e}")))?;
    let rational = match mode {
        Some(m) => m == ModeArg::Rational,
        None => text_prefers_rational(&text),
    };
    if rational {
        run_analyze::<Rational>(&text, &td, tol, out)
    } else {
        run_analyze::<f64>(&text, &td, tol, out)
    }
}

fn run_analyze<T: Scalar>(text: &str, td: &TriadDeviation, tol: f64, out: OutArg) -> CmdResult {
    let matrix: PcMatrix<T> =
        parse_matrix_text(text, tol).map_err(|e| CliError::usage(e.to_string()))?;
    let consistent = matrix.is_consistent(tol);
    let report = matrix_inconsistency(&matrix, td);
    match out {
        OutArg::Structured => {
            let doc = analyze_document(&matrix, consistent, tol, &report, T::MODE);
            print!("{}", to_json(&doc));
        }
        OutArg::Text => print!(
            "{}",
            analyze_text(&matrix, consistent, tol, &report, T::MODE)
        ),
    }
    Ok(ExitCode::SUCCESS)
}

/// Resolves an `axioms` target: deviations get the condition checks,
/// metrics the metric axioms.
fn cmd_axioms<T: Scalar>(target: &str, plan: &SamplePlan, out: OutArg) -> CmdResult {
    let report = if let Some(td) = TriadDeviation::from_name(target) {
        check_deviation_conditions::<T>(&td, plan)
    } else if let Some(metric) = Metric::from_name(target) {
        check_metric_axioms::<T>(&metric, plan)
    } else {
        return Err(CliError::usage(format!(
            "unknown target `{target}`; deviations: DI, EI, I1, Kii, PL; \
             metrics: discrete, euclidean, d1, ratio, sqdiff"
        )));
    };
    match out {
        OutArg::Structured => print!("{}", report.to_json()),
        OutArg::Text => print!("{}", axioms_text(&report)),
    }
    if report.is_pass() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(EXIT_AXIOM_FAILURE))
    }
}

fn cmd_classify<T: Scalar>(target: &str, plan: SamplePlan, out: OutArg) -> CmdResult {
    let td = resolve_deviation(target)?;
    let classification = classify::<T>(&td, &ClassifyConfig::new(plan));
    match out {
        OutArg::Structured => print!("{}", to_json(&classification)),
        OutArg::Text => print!("{}", classify_text(&classification)),
    }
    if classification.is_deviation {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(EXIT_AXIOM_FAILURE))
    }
}

fn cmd_reconstruct<T: Scalar>(ratios: &[String], output: Option<&str>) -> CmdResult {
    let mut seed = Vec::with_capacity(ratios.len());
    for tok in ratios {
        let v =
            T::parse_token(tok).map_err(|e| CliError::usage(format!("bad ratio `{tok}`: {e}")))?;
        seed.push(v);
    }
    let matrix =
        PcMatrix::reconstruct_consistent(&seed).map_err(|e| CliError::usage(e.to_string()))?;
    let text = matrix.to_text();
    match output {
        Some(path) => fs::write(path, &text)
            .map_err(|e| CliError::usage(format!("cannot write `{path}`: {e}")))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(serde::Serialize)]
struct CounterexampleDoc<'a> {
    command: &'static str,
    target: String,
    condition: &'a str,
    scalar: NumericMode,
    plan: &'a SamplePlan,
    witness: Option<Witness>,
}

fn cmd_counterexample<T: Scalar>(
    target: &str,
    condition: &str,
    plan: &SamplePlan,
    out: OutArg,
) -> CmdResult {
    let td = resolve_deviation(target)?;
    let conditions = DeviationCondition::from_query(condition).ok_or_else(|| {
        CliError::usage(format!(
            "unknown condition `{condition}`; expected zero, commutation, \
             generalized-triangle, or symmetry"
        ))
    })?;
    let witness = conditions
        .iter()
        .find_map(|&c| find_counterexample::<T>(&td, c, plan));

    let found = witness.is_some();
    match out {
        OutArg::Structured => {
            let doc = CounterexampleDoc {
                command: "counterexample",
                target: td.name(),
                condition,
                scalar: T::MODE,
                plan,
                witness,
            };
            print!("{}", to_json(&doc));
        }
        OutArg::Text => match &witness {
            Some(w) => {
                println!(
                    "{} violates {} at ({}) with sides {} vs {} (stream index {})",
                    td.name(),
                    condition,
                    w.inputs.join(", "),
                    w.lhs,
                    w.rhs,
                    w.stream_index
                );
            }
            None => println!("no counterexample found for {} on {condition}", td.name()),
        },
    }
    if found {
        Ok(ExitCode::from(EXIT_AXIOM_FAILURE))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
