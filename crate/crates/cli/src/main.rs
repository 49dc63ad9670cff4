mod input;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use homalg::algebra::{commutator_lie, gl, Bimodule, SeparabilityWitness};
use homalg::complex::{
    build_cyclic_total_complex, build_hochschild_complex_regular, build_relative_hochschild_complex,
    chevalley_eilenberg_complex, compute_homology, ChainComplex,
};
use homalg::linalg::set_size_guard;
use homalg::verify::{list_checks, run_checks, Verdict, DEFAULT_SEED};

use report::{Format, HomologyOutput};

const GUARD_VAR: &str = "HOMOLOGY_SIZE_GUARD";

#[derive(Parser)]
#[command(name = "homalg", version, about = "Exact Hochschild, cyclic and Lie algebra homology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Include wall-clock times (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Args)]
struct HomologyArgs {
    /// Algebra file, JSON or TOML.
    algebra: PathBuf,
    /// Highest chain degree to build.
    #[arg(long)]
    cap: Option<usize>,
    /// Print a cycle for each homology class.
    #[arg(long)]
    representatives: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Hochschild homology HH_*(A, A).
    Hochschild(HomologyArgs),
    /// Cyclic homology through Connes' total complex.
    Cyclic(HomologyArgs),
    /// Hochschild homology relative to a separable subalgebra spanned by
    /// orthogonal idempotent basis elements.
    Relative {
        #[command(flatten)]
        args: HomologyArgs,
        /// Comma-separated idempotent labels; overrides the file's
        /// `idempotents`. Without either, the subalgebra is k·1.
        #[arg(long, value_delimiter = ',')]
        idempotents: Option<Vec<String>>,
    },
    /// Chevalley–Eilenberg homology of gl_N or of an algebra under the commutator.
    Lie {
        #[arg(required_unless_present = "gl", conflicts_with = "gl")]
        algebra: Option<PathBuf>,
        #[arg(long)]
        gl: Option<usize>,
        /// Defaults to the dimension of the Lie algebra.
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        representatives: bool,
    },
    /// Run verification checks by id, or all of them.
    Verify {
        #[arg(default_value = "all")]
        ids: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Worker threads; output order does not depend on this.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Describe the registered checks.
    ListChecks,
}

/// Failures with their exit codes.
enum Failure {
    Usage(String),
    Guard(String),
}

impl From<homalg::Error> for Failure {
    fn from(e: homalg::Error) -> Self {
        match e {
            homalg::Error::SizeGuard { .. } => Failure::Guard(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("raise {GUARD_VAR} to allow larger computations");
            ExitCode::from(3)
        }
    }
}

fn apply_guard_env() -> Result<(), Failure> {
    if let Ok(v) = std::env::var(GUARD_VAR) {
        let cap = v
            .trim()
            .parse::<u64>()
            .map_err(|_| Failure::Usage(format!("{GUARD_VAR} must be a non-negative integer, got {v:?}")))?;
        set_size_guard(cap);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    apply_guard_env()?;
    let common = cli.common;
    let (text, code) = match cli.command {
        Command::Hochschild(a) => {
            let alg = input::read_algebra(&a.algebra).map_err(Failure::Usage)?;
            let c = build_hochschild_complex_regular(&alg.algebra, a.cap.unwrap_or(3))?;
            (homology("Hochschild", "HH", &a, &c, &common)?, 0)
        }
        Command::Cyclic(a) => {
            let alg = input::read_algebra(&a.algebra).map_err(Failure::Usage)?;
            let c = build_cyclic_total_complex(&alg.algebra, a.cap.unwrap_or(4))?;
            (homology("cyclic", "HC", &a, &c, &common)?, 0)
        }
        Command::Relative { args, idempotents } => {
            let alg = input::read_algebra(&args.algebra).map_err(Failure::Usage)?;
            let a = &alg.algebra;
            let idem = match idempotents {
                Some(labels) => Some(input::labels_to_indices(a, &labels).map_err(Failure::Usage)?),
                None => alg.idempotents,
            };
            let w = match idem {
                Some(ix) => SeparabilityWitness::diagonal(a, &ix),
                None => SeparabilityWitness::trivial(a),
            };
            let rel = build_relative_hochschild_complex(a, &Bimodule::regular(a), &w, args.cap.unwrap_or(3))?;
            (homology("relative Hochschild", "HH^S", &args, &rel.complex, &common)?, 0)
        }
        Command::Lie {
            algebra,
            gl: n,
            cap,
            representatives,
        } => {
            let (g, source) = match (algebra, n) {
                (_, Some(n)) => (gl(n), format!("gl_{n}")),
                (Some(path), None) => {
                    let alg = input::read_algebra(&path).map_err(Failure::Usage)?;
                    (commutator_lie(&alg.algebra), path.display().to_string())
                }
                (None, None) => unreachable!("clap requires one of them"),
            };
            let c = chevalley_eilenberg_complex(&g, cap.unwrap_or(g.dim()))?;
            let report = compute_homology(&c)?;
            let out = HomologyOutput {
                theory: "Lie algebra",
                symbol: "H",
                source: &source,
                complex: &c,
                report: &report,
                representatives,
                timing: common.timing,
            };
            (report::homology(&out, common.format), 0)
        }
        Command::Verify { ids, seed, threads } => {
            let ids = if ids.iter().any(|i| i == "all") {
                list_checks().iter().map(|d| d.id.to_string()).collect()
            } else {
                ids
            };
            let threads = threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let reports = run_checks(&ids, seed, threads)?;
            let code = if reports.iter().any(|r| r.verdict == Verdict::Fail) {
                1
            } else if reports.iter().any(|r| matches!(r.verdict, Verdict::Skipped(_))) {
                3
            } else {
                0
            };
            (report::check_reports(&reports, common.format, common.timing), code)
        }
        Command::ListChecks => (report::descriptors(&list_checks(), common.format), 0),
    };
    emit(common.out.as_deref(), &text)?;
    Ok(code)
}

fn homology(theory: &str, symbol: &str, a: &HomologyArgs, c: &ChainComplex, common: &Common) -> Result<String, Failure> {
    let report = compute_homology(c)?;
    let source = a.algebra.display().to_string();
    let out = HomologyOutput {
        theory,
        symbol,
        source: &source,
        complex: c,
        report: &report,
        representatives: a.representatives,
        timing: common.timing,
    };
    Ok(report::homology(&out, common.format))
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    let res = match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    res.map_err(Failure::Usage)
}
