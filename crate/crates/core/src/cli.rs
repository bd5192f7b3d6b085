//! Command-line front end: load and validate datasets, run computations and
//! verification suites, and emit canonical JSON reports.
//!
//! Exit codes: `0` when every check passed, `1` when a mathematical check
//! failed, `2` for usage and input errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::actions::homotopy_failure;
use crate::canonical_json;
use crate::complex::{Flavor, FloerComplex};
use crate::data::{self, content_hash, DataError, MonopoleData, ValidationReport};
use crate::duality::duality_check;
use crate::homology::{graded_homology_of, GradedAbelianGroup, TailKind};
use crate::linalg::AbelianGroupInvariants;
use crate::sequences::{hf_red_of, HatSequence, MainSequence};
use crate::spectral::{spectral_pages, stable_page, structure_theorem, Verdict};
use crate::window::Window;
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "eqfloer", version, about = "Exact computations on equivariant monopole Floer complexes")]
struct Cli {
    /// Write the JSON report to this path instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the structural rules and coefficient identities.
    Validate { file: PathBuf },
    /// Homology of one flavor over a window of degrees.
    Homology {
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<Window>,
        file: PathBuf,
    },
    /// Exactness of one of the two long exact sequences.
    Les {
        #[arg(value_enum)]
        sequence: SequenceArg,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<Window>,
        file: PathBuf,
    },
    /// Pages of the spectral sequence of the grading filtration.
    Spectral {
        #[arg(long)]
        pages: Option<usize>,
        #[arg(long, value_enum, default_value = "plus")]
        flavor: FlavorArg,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<Window>,
        file: PathBuf,
    },
    /// Predicted Plus-flavor homology compared with the direct computation.
    Structure {
        #[arg(long, allow_hyphen_values = true)]
        window: Option<Window>,
        file: PathBuf,
    },
    /// Orientation-reversal duality checks.
    Duality {
        #[arg(long, allow_hyphen_values = true)]
        window: Option<Window>,
        file: PathBuf,
    },
    /// Print the orientation-reversed dataset.
    Reverse { file: PathBuf },
    /// Sample random valid datasets.
    Generate {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        count: usize,
    },
    /// Run every verification on one dataset.
    VerifyAll {
        #[arg(long, allow_hyphen_values = true)]
        window: Option<Window>,
        file: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FlavorArg {
    Infinity,
    Minus,
    Plus,
    Hat,
    Noneq,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Infinity => Flavor::Infinity,
            FlavorArg::Minus => Flavor::Minus,
            FlavorArg::Plus => Flavor::Plus,
            FlavorArg::Hat => Flavor::Hat,
            FlavorArg::Noneq => Flavor::NonEquivariant,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SequenceArg {
    Main,
    Hat,
}

#[derive(Clone, Debug, Serialize)]
pub struct DatasetInfo {
    pub name: String,
    pub hash: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

/// The structured output of every subcommand except `reverse`.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dataset: Option<DatasetInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<Window>,
    pub passed: bool,
    pub results: Box<RawValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
    pub version: String,
}

/// One named check of the full verification suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    fn new(name: &str, passed: bool, detail: Option<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyAllReport {
    pub checks: Vec<CheckResult>,
    pub plus: GradedAbelianGroup,
    pub hf_red: Option<GradedAbelianGroup>,
    pub passed: bool,
}

/// A failure while running a command, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
    report: Option<Box<RunReport>>,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
            report: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Data(_) | Error::Argument(_) | Error::WindowTooSmall { .. } | Error::Unsupported { .. } => {
                EXIT_INPUT
            }
            _ => EXIT_CHECK_FAILED,
        };
        Failure {
            code,
            message: e.to_string(),
            report: None,
        }
    }
}

impl From<DataError> for Failure {
    fn from(e: DataError) -> Self {
        Failure::input(e.to_string())
    }
}

fn check_flavor_set(window: Window, data: &MonopoleData) -> Result<CheckResult, Error> {
    for flavor in Flavor::ALL {
        let cx = FloerComplex::new(data, flavor)?;
        if let Some(n) = cx.d_squared_failure(window) {
            return Ok(CheckResult::new(
                "d-squared",
                false,
                Some(format!("D^2 != 0 on {flavor} at degree {n}")),
            ));
        }
    }
    Ok(CheckResult::new("d-squared", true, None))
}

fn laurent_pattern(cx: &FloerComplex, window: Window) -> Result<CheckResult, Error> {
    let (h, _) = graded_homology_of(cx, window)?;
    let z = AbelianGroupInvariants::free(1);
    let zero = AbelianGroupInvariants::zero();
    if let Some((n, g)) = h.groups.iter().find(|(n, g)| **g != if *n % 2 == 0 { z.clone() } else { zero.clone() }) {
        return Ok(CheckResult::new("laurent-pattern", false, Some(format!("degree {n}: {g}"))));
    }
    let tail_ok = |t: &Option<crate::homology::Tail>| {
        t.as_ref()
            .is_some_and(|t| t.verified && t.kind == TailKind::Periodic && t.even == z && t.odd == zero)
    };
    let tails = tail_ok(&h.tail_above) && tail_ok(&h.tail_below);
    let detail = (!tails).then(|| "periodic tails not verified".to_string());
    Ok(CheckResult::new("laurent-pattern", tails, detail))
}

/// The full verification suite on valid data over a window.
pub fn verify_all(data: &MonopoleData, window: Window) -> Result<VerifyAllReport, Error> {
    let inf = FloerComplex::new(data, Flavor::Infinity)?;
    let mut checks = vec![check_flavor_set(window, data)?, laurent_pattern(&inf, window)?];

    let main = MainSequence::build(&inf, window)?;
    let exactness = main.exactness();
    let main_ok = exactness.all_exact && exactness.compositions_zero;
    let main_detail = exactness
        .first_failure()
        .map(|n| format!("{} at degree {}", n.node, n.degree))
        .or_else(|| (!exactness.compositions_zero).then(|| "consecutive maps do not compose to zero".into()));
    checks.push(CheckResult::new("les-main", main_ok, main_detail));
    let hf_red = match hf_red_of(&main) {
        Ok(g) => {
            checks.push(CheckResult::new("hf-red", true, None));
            Some(g)
        }
        Err(e) => {
            checks.push(CheckResult::new("hf-red", false, Some(e.to_string())));
            None
        }
    };

    let hat = HatSequence::build(&inf, window)?.report();
    let hat_ok = hat.exactness.all_exact
        && hat.exactness.compositions_zero
        && hat.u_disagreements.is_empty()
        && hat.biconditional_holds;
    let hat_detail = if let Some(n) = hat.exactness.first_failure() {
        Some(format!("{} at degree {}", n.node, n.degree))
    } else if let Some(n) = hat.u_disagreements.first() {
        Some(format!("u and the inverse of Omega differ at degree {n}"))
    } else if !hat_ok {
        Some("nontriviality biconditional fails".into())
    } else {
        None
    };
    checks.push(CheckResult::new("les-hat", hat_ok, hat_detail));

    let mut homotopy = CheckResult::new("u-homotopy", true, None);
    for flavor in [Flavor::Infinity, Flavor::Minus, Flavor::Plus] {
        if let Some(n) = homotopy_failure(&inf.with_flavor(flavor), window)? {
            homotopy = CheckResult::new("u-homotopy", false, Some(format!("{flavor} at degree {n}")));
            break;
        }
    }
    checks.push(homotopy);

    let structure = structure_theorem(data, window)?;
    let structure_detail = structure
        .flagged()
        .map(|d| {
            let tag = match d.verdict {
                Verdict::ExtensionFlagged => "extension",
                _ => "mismatch",
            };
            format!("{tag} at degree {}: predicted {} vs {}", d.degree, d.predicted, d.actual)
        })
        .collect::<Vec<_>>();
    checks.push(CheckResult::new(
        "structure",
        structure.consistent,
        (!structure_detail.is_empty()).then(|| structure_detail.join("; ")),
    ));

    let duality = duality_check(data, window)?;
    let duality_detail = if let Some((f, d)) = duality.first_mismatch() {
        Some(format!("{f} at degree {}: {} vs {}", d.degree, d.cohomology, d.homology))
    } else if !duality.passed {
        Some("pairing or adjointness failed".into())
    } else {
        None
    };
    checks.push(CheckResult::new("duality", duality.passed, duality_detail));

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyAllReport {
        checks,
        plus: main.plus_graded,
        hf_red,
        passed,
    })
}

fn load(path: &Path) -> Result<MonopoleData, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(data::parse(&bytes)?)
}

fn to_value<T: Serialize>(x: &T) -> Box<RawValue> {
    canonical_json::to_raw(x)
}

#[derive(Serialize)]
struct HomologyResults<'a> {
    flavor: Flavor,
    homology: &'a GradedAbelianGroup,
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
enum Reduced {
    Group(GradedAbelianGroup),
    Error(String),
}

#[derive(Serialize)]
struct MainResults<'a> {
    exactness: &'a crate::sequences::ExactnessReport,
    hf_red: Reduced,
}

#[derive(Serialize)]
struct GenerateResults<'a> {
    seed: u64,
    size: usize,
    count: usize,
    instances: &'a [MonopoleData],
}

struct Context {
    timing: bool,
    start: Instant,
}

impl Context {
    fn report(&self, command: &str, data: Option<&MonopoleData>, window: Option<Window>, passed: bool, results: Box<RawValue>) -> RunReport {
        RunReport {
            command: command.to_string(),
            dataset: data.map(|d| DatasetInfo {
                name: d.name.clone(),
                hash: content_hash(d),
            }),
            window,
            passed,
            results,
            timing: self.timing.then(|| Timing {
                elapsed_ms: self.start.elapsed().as_secs_f64() * 1000.0,
            }),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// Loads valid data; on identity violations the validation report is attached.
fn load_valid(ctx: &Context, command: &str, path: &Path) -> Result<MonopoleData, Failure> {
    let d = load(path)?;
    let report = data::validate(&d);
    if report.ok {
        return Ok(d);
    }
    Err(Failure {
        code: EXIT_INPUT,
        message: format!("invalid data: {}", report.summary()),
        report: Some(Box::new(ctx.report(command, Some(&d), None, false, to_value(&report)))),
    })
}

/// What a command produced: a report, or raw bytes for `reverse`.
enum Output {
    Report(RunReport, String),
    Raw(Vec<u8>, String),
}

fn execute(cli: &Cli, ctx: &Context) -> Result<Output, Failure> {
    let window_of = |w: &Option<Window>, d: &MonopoleData| w.unwrap_or_else(|| d.default_window());
    let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };
    match &cli.command {
        Command::Validate { file } => {
            let d = load(file)?;
            let report: ValidationReport = data::validate(&d);
            let summary = format!("validate {}: {}", d.name, report.summary());
            let run = ctx.report("validate", Some(&d), None, report.ok, to_value(&report));
            if report.ok {
                Ok(Output::Report(run, summary))
            } else {
                Err(Failure {
                    code: EXIT_INPUT,
                    message: summary,
                    report: Some(Box::new(run)),
                })
            }
        }
        Command::Homology { flavor, window, file } => {
            let d = load_valid(ctx, "homology", file)?;
            let w = window_of(window, &d);
            let flavor = Flavor::from(*flavor);
            let (h, _) = graded_homology_of(&FloerComplex::new(&d, flavor)?, w)?;
            let nonzero: Vec<String> = h
                .groups
                .iter()
                .filter(|(_, g)| !g.is_zero())
                .map(|(n, g)| format!("H_{n} = {g}"))
                .collect();
            let summary = format!("homology {} ({flavor}, {w}): {}", d.name, nonzero.join(", "));
            let results = to_value(&HomologyResults { flavor, homology: &h });
            Ok(Output::Report(ctx.report("homology", Some(&d), Some(w), true, results), summary))
        }
        Command::Les { sequence, window, file } => {
            let d = load_valid(ctx, "les", file)?;
            let w = window_of(window, &d);
            let inf = FloerComplex::new(&d, Flavor::Infinity)?;
            let (name, passed, results) = match sequence {
                SequenceArg::Main => {
                    let seq = MainSequence::build(&inf, w)?;
                    let exactness = seq.exactness();
                    let red = hf_red_of(&seq);
                    let passed = exactness.all_exact && exactness.compositions_zero && red.is_ok();
                    let hf_red = match red {
                        Ok(g) => Reduced::Group(g),
                        Err(e) => Reduced::Error(e.to_string()),
                    };
                    ("les main", passed, to_value(&MainResults { exactness: &exactness, hf_red }))
                }
                SequenceArg::Hat => {
                    let r = HatSequence::build(&inf, w)?.report();
                    let passed = r.exactness.all_exact
                        && r.exactness.compositions_zero
                        && r.u_disagreements.is_empty()
                        && r.biconditional_holds;
                    ("les hat", passed, to_value(&r))
                }
            };
            let summary = format!("{name} {} ({w}): {}", d.name, verdict(passed));
            Ok(Output::Report(ctx.report(name, Some(&d), Some(w), passed, results), summary))
        }
        Command::Spectral {
            pages,
            flavor,
            window,
            file,
        } => {
            let d = load_valid(ctx, "spectral", file)?;
            let w = window_of(window, &d);
            let r = spectral_pages(&d, Flavor::from(*flavor), w, pages.unwrap_or_else(|| stable_page(&d)))?;
            let summary = format!("spectral {} ({}, {w}, {} pages): {}", d.name, r.flavor, r.pages.len(), verdict(r.passed()));
            Ok(Output::Report(ctx.report("spectral", Some(&d), Some(w), r.passed(), to_value(&r)), summary))
        }
        Command::Structure { window, file } => {
            let d = load_valid(ctx, "structure", file)?;
            let w = window_of(window, &d);
            let r = structure_theorem(&d, w)?;
            let flagged = r.flagged().count();
            let summary = format!(
                "structure {} ({w}): {} ({flagged} degree(s) differing from the literal prediction)",
                d.name,
                verdict(r.consistent)
            );
            Ok(Output::Report(ctx.report("structure", Some(&d), Some(w), r.consistent, to_value(&r)), summary))
        }
        Command::Duality { window, file } => {
            let d = load_valid(ctx, "duality", file)?;
            let w = window_of(window, &d);
            let r = duality_check(&d, w)?;
            let summary = format!("duality {} ({w}): {}", d.name, verdict(r.passed));
            Ok(Output::Report(ctx.report("duality", Some(&d), Some(w), r.passed, to_value(&r)), summary))
        }
        Command::Reverse { file } => {
            let d = load_valid(ctx, "reverse", file)?;
            let r = data::reverse_orientation(&d)?;
            let summary = format!("reverse {} -> {}", d.name, r.name);
            Ok(Output::Raw(data::serialize(&r), summary))
        }
        Command::Generate { seed, size, count } => {
            if *size == 0 {
                return Err(Failure::input("size must be positive"));
            }
            let instances = data::sample_instances(data::GeneratorConfig::new(*seed, *size, *count));
            let passed = instances.len() == *count;
            let summary = format!("generate: {} of {count} instances", instances.len());
            let results = to_value(&GenerateResults {
                seed: *seed,
                size: *size,
                count: *count,
                instances: &instances,
            });
            Ok(Output::Report(ctx.report("generate", None, None, passed, results), summary))
        }
        Command::VerifyAll { window, file } => {
            let d = load_valid(ctx, "verify-all", file)?;
            let w = window_of(window, &d);
            let r = verify_all(&d, w)?;
            let mut summary = format!(
                "verify-all {} ({w}): {} ({}/{} checks)",
                d.name,
                verdict(r.passed),
                r.checks.iter().filter(|c| c.passed).count(),
                r.checks.len()
            );
            for c in &r.checks {
                if let Some(detail) = &c.detail {
                    summary.push_str(&format!("\n  {}: {detail}", c.name));
                }
            }
            Ok(Output::Report(ctx.report("verify-all", Some(&d), Some(w), r.passed, to_value(&r)), summary))
        }
    }
}

fn emit(out: &Option<PathBuf>, bytes: &[u8], stdout: &mut dyn Write) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout.write_all(bytes).map_err(|e| e.to_string()),
    }
}

/// Runs the command line `argv` (program name first), writing the report to
/// `stdout` (or `--out`) and a summary to `stderr`. Returns the exit code.
pub fn run_with_io(argv: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return EXIT_INPUT;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };
    let ctx = Context {
        timing: cli.timing,
        start: Instant::now(),
    };
    let (bytes, summary, code) = match execute(&cli, &ctx) {
        Ok(Output::Report(report, summary)) => {
            let code = if report.passed { EXIT_OK } else { EXIT_CHECK_FAILED };
            (Some(canonical_json::to_vec(&report)), summary, code)
        }
        Ok(Output::Raw(bytes, summary)) => (Some(bytes), summary, EXIT_OK),
        Err(f) => (f.report.map(|r| canonical_json::to_vec(&r)), format!("error: {}", f.message), f.code),
    };
    if let Some(bytes) = bytes {
        if let Err(e) = emit(&cli.out, &bytes, stdout) {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_INPUT;
        }
    }
    let _ = writeln!(stderr, "{summary}");
    code
}

/// Runs with the process's standard streams.
pub fn run(argv: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(argv, &mut stdout.lock(), &mut stderr.lock())
}
