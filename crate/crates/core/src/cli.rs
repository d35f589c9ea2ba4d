//! Command-line driver. Exit codes: 0 when every check is consistent, 1 when a
//! deviation is found, 2 for usage and parameter errors.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::report::{emit_report, Format, Verdict};
use crate::scenario::{
    RunRequest, ScenarioRequest, SweepScenario, SweepSpec, DEFAULT_LEMMA1_ALPHA, DEFAULT_LEMMA1_T, DEFAULT_LEMMA2_ALPHA,
    DEFAULT_LEMMA2_C2, DEFAULT_LEMMA2_C3, DEFAULT_M, DEFAULT_M_TYPE_B, DEFAULT_R_TYPE_A, DEFAULT_R_TYPE_B, DEFAULT_SEED,
};

pub const SEED_ENV: &str = "G2LAB_SEED";

pub const EXIT_CONSISTENT: i32 = 0;
pub const EXIT_DEVIATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "g2lab", version, about = "Pointwise checks of the semi-parallel normal Jacobi non-existence argument")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Markdown,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SweepArg {
    TypeA,
    TypeB,
    Lemma1,
}

#[derive(Debug, Args)]
struct Common {
    /// Master seed (default 42, or $G2LAB_SEED)
    #[arg(long)]
    seed: Option<u64>,
    /// Replace every absolute/relative tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Record wall-clock runtime in the report (breaks byte-identical output)
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ambient and hypersurface-frame identity suites
    Model {
        #[arg(long, default_value_t = DEFAULT_M)]
        m: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Tube of type A
    TypeA {
        #[arg(long, default_value_t = DEFAULT_M)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_R_TYPE_A)]
        r: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Tube of type B (even m >= 4)
    TypeB {
        #[arg(long, default_value_t = DEFAULT_M_TYPE_B)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_R_TYPE_B)]
        r: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Reeb vector with components in both D and Dperp
    Lemma1 {
        #[arg(long, default_value_t = DEFAULT_M)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_LEMMA1_ALPHA, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = DEFAULT_LEMMA1_T)]
        t: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Reeb vector in Dperp with prescribed couplings g(AW, xi_2), g(AW, xi_3)
    Lemma2 {
        #[arg(long, default_value_t = DEFAULT_M)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_LEMMA2_ALPHA, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = DEFAULT_LEMMA2_C2, allow_hyphen_values = true)]
        c2: f64,
        #[arg(long, default_value_t = DEFAULT_LEMMA2_C3, allow_hyphen_values = true)]
        c3: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Normal Jacobi spectra
    Spectrum {
        #[arg(long, default_value_t = DEFAULT_M)]
        m: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Obstruction over a parameter grid
    Sweep {
        #[arg(long, value_enum, default_value = "type-a")]
        scenario: SweepArg,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long)]
        lo: Option<f64>,
        #[arg(long)]
        hi: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Every scenario with canonical parameters
    All {
        #[arg(long, default_value_t = DEFAULT_M)]
        m: usize,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn split(self) -> (ScenarioRequest, Common) {
        match self {
            Command::Model { m, common } => (ScenarioRequest::Model { m }, common),
            Command::TypeA { m, r, common } => (ScenarioRequest::TypeA { m, r }, common),
            Command::TypeB { m, r, common } => (ScenarioRequest::TypeB { m, r }, common),
            Command::Lemma1 { m, alpha, t, common } => (ScenarioRequest::Lemma1 { m, alpha, t }, common),
            Command::Lemma2 { m, alpha, c2, c3, common } => (ScenarioRequest::Lemma2 { m, alpha, c2, c3 }, common),
            Command::Spectrum { m, common } => (ScenarioRequest::Spectrum { m }, common),
            Command::Sweep {
                scenario,
                m,
                points,
                lo,
                hi,
                alpha,
                common,
            } => {
                let sc = match scenario {
                    SweepArg::TypeA => SweepScenario::TypeA,
                    SweepArg::TypeB => SweepScenario::TypeB,
                    SweepArg::Lemma1 => SweepScenario::Lemma1,
                };
                let d = SweepSpec::default_for(sc);
                let spec = SweepSpec {
                    scenario: sc,
                    m: m.unwrap_or(d.m),
                    points: points.unwrap_or(d.points),
                    lo: lo.unwrap_or(d.lo),
                    hi: hi.unwrap_or(d.hi),
                    alpha: alpha.unwrap_or(d.alpha),
                };
                (ScenarioRequest::Sweep(spec), common)
            }
            Command::All { m, common } => (ScenarioRequest::All { m }, common),
        }
    }
}

/// Seed resolution: explicit flag, then the environment, then the default.
pub fn resolve_seed(flag: Option<u64>, env: Option<&str>) -> Result<u64, String> {
    match (flag, env) {
        (Some(s), _) => Ok(s),
        (None, Some(v)) => v
            .trim()
            .parse::<u64>()
            .map_err(|e| format!("invalid {SEED_ENV}={v:?}: {e}")),
        (None, None) => Ok(DEFAULT_SEED),
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        // the construction the argument relies on could not be realized
        Error::SlotSearch { .. } | Error::EigenspaceDimension { .. } => EXIT_DEVIATION,
        _ => EXIT_USAGE,
    }
}

/// Parses `argv` (program name first), runs the scenario and writes the report.
pub fn run_cli_with<I, S>(argv: I, env_seed: Option<&str>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_CONSISTENT };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
            } else {
                let _ = stdout.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let (scenario, common) = cli.command.split();
    let seed = match resolve_seed(common.seed, env_seed) {
        Ok(s) => s,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let request = RunRequest {
        scenario,
        seed,
        tolerance: common.tol,
    };
    let start = Instant::now();
    let mut report = match request.run() {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code_for(&e);
        }
    };
    if common.timing {
        report.runtime_ms = Some(start.elapsed().as_millis() as u64);
    }
    let format = match common.format {
        FormatArg::Json => Format::Json,
        FormatArg::Markdown => Format::Markdown,
    };
    let bytes = match emit_report(&report, format) {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &common.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => stdout.write_all(&bytes).map_err(|source| Error::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_USAGE;
    }
    if common.out.is_some() {
        let failed = report.all_checks().iter().filter(|c| !c.pass).count();
        let _ = writeln!(
            stderr,
            "{}: {} checks, {} failed",
            report.scenario,
            report.all_checks().len(),
            failed
        );
    }
    match report.verdict {
        Verdict::ConsistentWithPaper => EXIT_CONSISTENT,
        Verdict::DeviationFound => EXIT_DEVIATION,
    }
}

/// Entry point used by the binary: reads `G2LAB_SEED` and the process streams.
pub fn run_cli<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let env = std::env::var(SEED_ENV).ok();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(argv, env.as_deref(), &mut stdout.lock(), &mut stderr.lock())
}
