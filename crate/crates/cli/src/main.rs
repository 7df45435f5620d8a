mod fixture;
mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclicity::certify::{
    certify_exhaustive, certify_sampled, nordhaus_gaddum, replay, CertificationRun, CertifyConfig,
    DEFAULT_DELTA_MAX_N, DEFAULT_WITNESS_CAP,
};
use cyclicity::cyclicity::{Analysis, BoundCheck, DeltaReport, DEFAULT_BOUND_TOLERANCE};
use cyclicity::graph::{parse_edge_list, write_edge_list, Graph};
use cyclicity::resistance::{foster_sum, Method, SolverConfig, DEFAULT_TOLERANCE};
use cyclicity::{Error, ErrorClass};
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

/// Delta sweep cap used by sampled runs unless overridden.
const SAMPLED_DELTA_MAX_N: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "cyclicity", version, about = "Resistance distances and the global cyclicity index")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Args, Debug)]
struct Output {
    /// Bound tightness tolerance.
    #[arg(long, default_value_t = DEFAULT_BOUND_TOLERANCE)]
    tolerance: f64,
    /// Resistance solver tolerance.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    resistance_tolerance: f64,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Input {
    /// Edge-list file (`-` for stdin).
    #[arg(short = 'i', long = "input", conflicts_with = "fixture")]
    input: Option<PathBuf>,
    /// Built-in graph instead of a file, e.g. `petersen` or `paley:13`.
    #[arg(long)]
    fixture: Option<String>,
    /// Seed for random fixtures.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, size, cyclomatic number, cyclicity index and flags.
    Compute {
        /// Edge-list file (`-` for stdin).
        file: Option<PathBuf>,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
        /// Also print the resistance matrix (lower triangle).
        #[arg(long)]
        dump_matrix: bool,
    },
    /// Every applicable bound with its slack and tightness.
    Bounds {
        file: Option<PathBuf>,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Increment of the index when adding the non-edge `I J`.
    Delta {
        /// `[FILE] I J`.
        #[arg(num_args = 2..=3, value_names = ["FILE", "I", "J"], required = true)]
        args: Vec<String>,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Complement sum and product.
    Ng {
        file: Option<PathBuf>,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Print a generated graph as an edge list.
    Generate {
        /// Family and parameters, e.g. `paley 13` or `circulant 8 1,3`.
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exhaustive or sampled certification, or replay of a stored run.
    Certify(CertifyArgs),
}

#[derive(Args, Debug)]
struct CertifyArgs {
    /// Check every connected labeled graph with 3 <= n <= N.
    #[arg(long, value_name = "N", conflicts_with_all = ["sampled", "replay"])]
    exhaustive: Option<usize>,
    /// Comma-separated orders to sample.
    #[arg(long, value_name = "N,..", value_delimiter = ',', conflicts_with = "replay")]
    sampled: Option<Vec<usize>>,
    /// Samples per order.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Edge probability for sampling.
    #[arg(long, default_value_t = 0.4)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Re-execute every witness and violation in a stored run.
    #[arg(long, value_name = "FILE")]
    replay: Option<PathBuf>,
    /// Largest order receiving the per-non-edge sweep.
    #[arg(long)]
    delta_max: Option<usize>,
    /// Witness graphs kept per check and order.
    #[arg(long, default_value_t = DEFAULT_WITNESS_CAP)]
    witness_cap: usize,
    /// Worker threads; output is identical for any value.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Violation(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e.class() {
                ErrorClass::Parse => 1,
                ErrorClass::Precondition => 2,
                ErrorClass::Numerical => 3,
            },
            CliError::Io { .. } | CliError::Usage(_) => 2,
            CliError::Violation(_) => 4,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn io_err(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn read_text(path: &std::path::Path) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_err(path))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(io_err(path))
}

fn load(file: Option<&PathBuf>, input: &Input) -> CliResult<Graph> {
    let path = match (file, &input.input) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give the input file once".into())),
        (Some(p), None) | (None, Some(p)) => Some(p),
        (None, None) => None,
    };
    match (path, &input.fixture) {
        (Some(_), Some(_)) => Err(CliError::Usage("give either an input file or --fixture".into())),
        (Some(p), None) => Ok(parse_edge_list(&read_text(p)?)?),
        (None, Some(spec)) => Ok(fixture::build(std::slice::from_ref(spec), input.seed)?),
        (None, None) => Err(CliError::Usage("no input graph; pass a file or --fixture".into())),
    }
}

fn emit(output: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(io_err(path)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .map_err(io_err(std::path::Path::new("<stdout>")))
        }
    }
}

fn solver(out: &Output) -> CliResult<SolverConfig> {
    if !(out.tolerance > 0.0) {
        return Err(CliError::Usage(format!("tolerance must be positive, got {}", out.tolerance)));
    }
    Ok(SolverConfig::new(out.resistance_tolerance, Method::GroundedSolve)?)
}

fn json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn compute(file: Option<PathBuf>, input: Input, out: Output, dump: bool, full: bool) -> CliResult<()> {
    let g = load(file.as_ref(), &input)?;
    let cfg = solver(&out)?;
    let a = Analysis::new(&g, &cfg, out.tolerance)?;
    let report = a.report();
    let residual = foster_sum(&g, a.omega()) - (g.n() as f64 - 1.0);
    let mut text = match (out.format, full) {
        (Format::Structured, _) => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        (Format::Human, false) => render::compute(&report, residual),
        (Format::Human, true) => render::bounds(&report, residual),
    };
    if dump {
        text.push_str(&a.omega().to_dump());
    }
    emit(out.output.as_ref(), &text)?;
    if full && !report.all_hold() {
        let failed: Vec<&str> = report
            .bounds
            .iter()
            .filter(|b| !b.holds())
            .map(|b| b.name.as_str())
            .collect();
        return Err(CliError::Violation(format!("bounds violated: {}", failed.join(", "))));
    }
    Ok(())
}

fn vertex(tok: &str) -> CliResult<usize> {
    tok.parse()
        .map_err(|_| CliError::Usage(format!("expected a vertex index, got `{tok}`")))
}

#[derive(serde::Serialize)]
struct DeltaOutput<'a> {
    #[serde(flatten)]
    report: &'a DeltaReport,
    bounds: [&'a BoundCheck; 2],
}

fn delta(args: Vec<String>, input: Input, out: Output) -> CliResult<()> {
    let (file, i, j) = match args.as_slice() {
        [f, i, j] => (Some(PathBuf::from(f)), i, j),
        [i, j] => (None, i, j),
        _ => unreachable!("clap enforces two or three values"),
    };
    let (i, j) = (vertex(i)?, vertex(j)?);
    let g = load(file.as_ref(), &input)?;
    let cfg = solver(&out)?;
    let a = Analysis::new(&g, &cfg, out.tolerance)?;
    let d = a.edge_addition_delta(i, j)?;
    let checks = d.checks(out.tolerance);
    let text = match out.format {
        Format::Human => render::delta(&d, &checks),
        Format::Structured => json(&DeltaOutput {
            report: &d,
            bounds: [&checks.0, &checks.1],
        }),
    };
    emit(out.output.as_ref(), &text)?;
    if !checks.0.holds() || !checks.1.holds() {
        return Err(CliError::Violation("increment bounds violated".into()));
    }
    Ok(())
}

fn ng(file: Option<PathBuf>, input: Input, out: Output) -> CliResult<()> {
    let g = load(file.as_ref(), &input)?;
    let cfg = solver(&out)?;
    let r = nordhaus_gaddum(&g, &cfg, out.tolerance)?;
    let text = match out.format {
        Format::Human => render::ng(&r),
        Format::Structured => json(&r),
    };
    emit(out.output.as_ref(), &text)?;
    let tol = out.tolerance;
    if r.sum < r.sum_lower - tol || r.sum > r.sum_upper + tol || r.product < -tol || r.product > r.product_upper + tol {
        return Err(CliError::Violation("complement bounds violated".into()));
    }
    Ok(())
}

fn generate(spec: Vec<String>, seed: u64, output: Option<PathBuf>) -> CliResult<()> {
    let g = fixture::build(&spec, seed)?;
    emit(output.as_ref(), &write_edge_list(&g))
}

fn certify(args: CertifyArgs) -> CliResult<()> {
    let out = &args.out;
    if let Some(path) = &args.replay {
        let run = CertificationRun::from_json(&read_text(path)?)?;
        let ok = replay(&run)?;
        let text = match out.format {
            Format::Human => format!(
                "replay: {}\nresult: {}\n",
                path.display(),
                if ok { "reproduced" } else { "MISMATCH" }
            ),
            Format::Structured => json(&serde_json::json!({ "replay": path, "reproduced": ok })),
        };
        emit(out.output.as_ref(), &text)?;
        return if ok {
            Ok(())
        } else {
            Err(CliError::Violation("stored run did not reproduce".into()))
        };
    }

    let solver = solver(out)?;
    let mut cfg = CertifyConfig {
        tolerance: out.tolerance,
        solver,
        delta_max_n: DEFAULT_DELTA_MAX_N,
        witness_cap: args.witness_cap,
        jobs: args.jobs.max(1),
    };
    let (run, default_path) = match (args.exhaustive, &args.sampled) {
        (Some(n), None) => {
            cfg.delta_max_n = args.delta_max.unwrap_or(DEFAULT_DELTA_MAX_N);
            (certify_exhaustive(n, &cfg)?, format!("exhaustive-{n}.certrun"))
        }
        (None, Some(ns)) => {
            cfg.delta_max_n = args.delta_max.unwrap_or(SAMPLED_DELTA_MAX_N);
            let run = certify_sampled(ns, args.samples, args.p, args.seed, &cfg)?;
            (run, format!("sampled-{}.certrun", args.seed))
        }
        _ => {
            return Err(CliError::Usage(
                "choose one of --exhaustive N, --sampled N,.. or --replay FILE".into(),
            ))
        }
    };
    let path = out.output.clone().unwrap_or_else(|| PathBuf::from(default_path));
    std::fs::write(&path, run.to_json()).map_err(io_err(&path))?;
    let text = match out.format {
        Format::Human => render::run_summary(&run, &path.display().to_string()),
        Format::Structured => json(&serde_json::json!({
            "run": path,
            "passed": run.passed(),
            "checks_performed": run.checks_performed,
            "graphs_checked": run.graphs_checked,
            "violations": run.violations.len(),
        })),
    };
    emit(None, &text)?;
    if run.passed() {
        Ok(())
    } else {
        Err(CliError::Violation(format!("{} violation(s)", run.violations.len())))
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Compute {
            file,
            input,
            out,
            dump_matrix,
        } => compute(file, input, out, dump_matrix, false),
        Command::Bounds { file, input, out } => compute(file, input, out, false, true),
        Command::Delta { args, input, out } => delta(args, input, out),
        Command::Ng { file, input, out } => ng(file, input, out),
        Command::Generate { spec, seed, output } => generate(spec, seed, output),
        Command::Certify(args) => certify(args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
