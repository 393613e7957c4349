//! Command-line surface: `bounds`, `verify`, `generate`, `sweep`.
//!
//! Exit codes: 0 success / all checks pass, 1 check failure, 2 input
//! error, 3 numeric failure. CSV output uses '.' decimals, 17 significant
//! digits and LF line endings; files are written atomically (temp file +
//! rename). All output is deterministic for fixed inputs and seed.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::generators::{CoeffFn, GeneratorError, SpectrumSource};
use crate::profiles::{BoundProfile, ProfileError};
use crate::solvers::{bound_at, bound_table, BoundResult, SolverError};
use crate::spectra::{Spectrum, SpectrumError};
use crate::verify::{run_suite, SuiteConfig, VerifyError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error("{0}")]
    Numeric(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => EXIT_INPUT,
            CliError::Numeric(_) => EXIT_NUMERIC,
        }
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ProfileError> for CliError {
    fn from(e: ProfileError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<GeneratorError> for CliError {
    fn from(e: GeneratorError) -> Self {
        match e {
            GeneratorError::CrossCheckFailed { .. } => CliError::Numeric(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::MissingNextEigenvalue { .. }
            | VerifyError::DomainError { .. }
            | VerifyError::BadParameter { .. }
            | VerifyError::TableMismatch { .. }
            | VerifyError::GNotMonotone { .. }
            | VerifyError::GNegative { .. }
            | VerifyError::GNotFinite { .. } => CliError::Input(e.to_string()),
            other => CliError::Numeric(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "eigenbounds",
    about = "Universal upper bounds for the next eigenvalue of a self-adjoint operator",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a table of bounds for lambda_{m+1} from a spectrum file.
    Bounds(BoundsArgs),
    /// Run the verification suite on a (spectrum, profile, m) triple.
    Verify(VerifyArgs),
    /// Generate a spectrum file from an analytic or FD source.
    Generate(GenerateArgs),
    /// Sweep the bound over an exponent grid and emit plot data.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Spectrum JSON file: {"eigenvalues": [...], "index_origin": 0|1}.
    #[arg(long)]
    pub spectrum: PathBuf,
    /// Inline profile spec (e.g. classical:n=2) or a profile JSON path.
    #[arg(long)]
    pub profile: String,
    /// Prefix length m.
    #[arg(long)]
    pub m: usize,
    /// Comma-separated exponents; empty for the PPW row only.
    #[arg(long, default_value = "0,1,2", allow_hyphen_values = true)]
    pub p: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub spectrum: PathBuf,
    #[arg(long)]
    pub profile: String,
    #[arg(long)]
    pub m: usize,
    /// Exponents for the family-inequality checks.
    #[arg(long, default_value = "0,0.5,1,1.5,2,3,4", allow_hyphen_values = true)]
    pub p: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Replaces the per-check relative tolerances.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Random trials for the reverse Chebyshev check.
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Source kind: box, fd1d, fd2d, sturm, inhomogeneous.
    #[arg(long)]
    pub kind: Option<String>,
    /// SpectrumSource JSON file (alternative to --kind plus flags).
    #[arg(long)]
    pub source: Option<PathBuf>,
    /// Box side lengths, comma separated.
    #[arg(long)]
    pub sides: Option<String>,
    /// Interval length for fd1d.
    #[arg(long)]
    pub length: Option<f64>,
    /// Rectangle sides for fd2d.
    #[arg(long)]
    pub lx: Option<f64>,
    #[arg(long)]
    pub ly: Option<f64>,
    /// Grid sizes for fd2d.
    #[arg(long)]
    pub nx: Option<usize>,
    #[arg(long)]
    pub ny: Option<usize>,
    /// Interior grid points for fd1d/sturm/inhomogeneous.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Interval "a,b" for sturm/inhomogeneous.
    #[arg(long)]
    pub interval: Option<String>,
    /// Coefficient p(x) for sturm, e.g. const:1, affine:1,0.5, poly:1,0,2.
    #[arg(long)]
    pub p: Option<String>,
    /// Coefficient q(x) for sturm.
    #[arg(long)]
    pub q: Option<String>,
    /// Density q(x) for inhomogeneous.
    #[arg(long)]
    pub density: Option<String>,
    /// Number of eigenvalues to generate.
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub spectrum: PathBuf,
    #[arg(long)]
    pub profile: String,
    #[arg(long)]
    pub m: usize,
    /// Exponent grid LO:HI:STEP spanning both regimes.
    #[arg(long = "p-grid")]
    pub p_grid: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// 17 significant digits, '.' decimal separator, platform independent.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_output(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            // Written once, atomically: temp file in the same directory,
            // then rename.
            let mut tmp = path.as_os_str().to_owned();
            tmp.push(".tmp");
            let tmp = PathBuf::from(tmp);
            fs::write(&tmp, content)?;
            fs::rename(&tmp, path)?;
            Ok(())
        }
    }
}

fn read_spectrum(path: &Path) -> Result<Spectrum, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn parse_p_list(text: &str) -> Result<Vec<f64>, CliError> {
    let mut ps = Vec::new();
    for tok in text.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        let p: f64 = tok
            .parse()
            .map_err(|_| CliError::Input(format!("invalid exponent {tok:?}")))?;
        if !p.is_finite() || p < 0.0 {
            return Err(CliError::Input(format!("exponent must be finite and >= 0, got {p}")));
        }
        ps.push(p);
    }
    Ok(ps)
}

fn parse_pair(text: &str, what: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(CliError::Input(format!("{what} must be two comma-separated numbers")));
    }
    let a = parts[0]
        .parse()
        .map_err(|_| CliError::Input(format!("invalid number {:?} in {what}", parts[0])))?;
    let b = parts[1]
        .parse()
        .map_err(|_| CliError::Input(format!("invalid number {:?} in {what}", parts[1])))?;
    Ok((a, b))
}

fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Input("p grid must be LO:HI:STEP".to_string()));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| CliError::Input(format!("invalid grid start {:?}", parts[0])))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| CliError::Input(format!("invalid grid end {:?}", parts[1])))?;
    let step: f64 = parts[2]
        .parse()
        .map_err(|_| CliError::Input(format!("invalid grid step {:?}", parts[2])))?;
    if !(step > 0.0) || !lo.is_finite() || !hi.is_finite() || lo < 0.0 || hi < lo {
        return Err(CliError::Input(format!("bad p grid {lo}:{hi}:{step}")));
    }
    let mut ps = Vec::new();
    let mut k = 0u32;
    loop {
        let p = lo + f64::from(k) * step;
        if p > hi + 1e-12 * step {
            break;
        }
        ps.push(p.min(hi));
        k += 1;
    }
    Ok(ps)
}

/// Accepts either a profile JSON path or the inline `kind:key=value,...`
/// grammar (`classical:n=2`, `schrodinger:n=3,m=1`, ...). Function-valued
/// profiles (sturm, elliptic) are file-only.
fn resolve_profile(spec: &str) -> Result<BoundProfile, CliError> {
    if Path::new(spec).is_file() {
        let text = fs::read_to_string(spec)?;
        return Ok(serde_json::from_str(&text)?);
    }
    parse_inline_profile(spec)
}

fn parse_inline_profile(spec: &str) -> Result<BoundProfile, CliError> {
    let (kind, rest) = match spec.split_once(':') {
        Some((k, r)) => (k, Some(r)),
        None => (spec, None),
    };
    let mut kv: BTreeMap<&str, &str> = BTreeMap::new();
    if let Some(rest) = rest {
        for pair in rest.split(',') {
            let (k, v) = pair.split_once('=').ok_or_else(|| {
                CliError::Input(format!("expected key=value in profile spec, got {pair:?}"))
            })?;
            kv.insert(k.trim(), v.trim());
        }
    }
    let get_f64 = |key: &str| -> Result<f64, CliError> {
        kv.get(key)
            .ok_or_else(|| CliError::Input(format!("profile {kind:?} needs {key}=<value>")))?
            .parse()
            .map_err(|_| CliError::Input(format!("invalid number for {key} in profile spec")))
    };
    let get_dim = |key: &str, min: u32| -> Result<u32, CliError> {
        let n: u32 = kv
            .get(key)
            .ok_or_else(|| CliError::Input(format!("profile {kind:?} needs {key}=<int>")))?
            .parse()
            .map_err(|_| CliError::Input(format!("invalid integer for {key} in profile spec")))?;
        if n < min {
            return Err(CliError::Input(format!("{key} must be at least {min}, got {n}")));
        }
        Ok(n)
    };
    match kind {
        "classical" => Ok(BoundProfile::classical_membrane(get_dim("n", 1)?)),
        "inhomogeneous" => Ok(BoundProfile::inhomogeneous_membrane(
            get_dim("n", 1)?,
            get_f64("qmin")?,
            get_f64("qmax")?,
        )?),
        "sphere_cap" => Ok(BoundProfile::sphere_cap_2d(get_f64("theta")?)?),
        "sphere" => Ok(BoundProfile::sphere_n(get_dim("n", 2)?)),
        "hyperbolic" => Ok(BoundProfile::hyperbolic_2d(
            get_f64("ysup2")?,
            get_f64("yinf2")?,
        )?),
        "minimal" => Ok(BoundProfile::minimal_submanifold(get_dim("n", 1)?)),
        "homogeneous" => Ok(BoundProfile::homogeneous_manifold(get_f64("lambda1")?)?),
        "schrodinger" => Ok(BoundProfile::schrodinger_like(
            get_dim("n", 1)?,
            get_f64("m")?,
        )),
        other => Err(CliError::Input(format!(
            "unknown profile kind {other:?} (classical, inhomogeneous, sphere_cap, sphere, \
             hyperbolic, minimal, homogeneous, schrodinger; sturm/elliptic via JSON file)"
        ))),
    }
}

fn render_bounds_csv(rows: &[(Option<f64>, &BoundResult)]) -> String {
    let mut out = String::from("p,method,value,residual,iterations\n");
    for (p, r) in rows {
        let p_cell = p.map(fmt_f64).unwrap_or_default();
        let _ = writeln!(
            out,
            "{p_cell},{},{},{},{}",
            r.method,
            fmt_f64(r.value),
            fmt_f64(r.residual),
            r.iterations
        );
    }
    out
}

pub fn cmd_bounds(args: &BoundsArgs) -> Result<i32, CliError> {
    if args.m == 0 {
        return Err(CliError::Input("m must be at least 1".to_string()));
    }
    let spectrum = read_spectrum(&args.spectrum)?;
    let profile = resolve_profile(&args.profile)?;
    let ps = parse_p_list(&args.p)?;
    let rows = bound_table(&profile, &spectrum, args.m, &ps)?;

    let mut ok_rows: Vec<(Option<f64>, &BoundResult)> = Vec::new();
    let mut failures = 0;
    for row in &rows {
        match &row.result {
            Ok(r) => ok_rows.push((row.p, r)),
            Err(e) => {
                failures += 1;
                eprintln!("p={:?}: {e}", row.p);
            }
        }
    }
    let content = match args.format {
        Format::Csv => render_bounds_csv(&ok_rows),
        Format::Json => {
            let results: Vec<&BoundResult> = ok_rows.iter().map(|(_, r)| *r).collect();
            let mut text = serde_json::to_string_pretty(&results)?;
            text.push('\n');
            text
        }
    };
    write_output(args.out.as_deref(), &content)?;
    Ok(if failures > 0 { EXIT_NUMERIC } else { EXIT_OK })
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<i32, CliError> {
    if args.m == 0 {
        return Err(CliError::Input("m must be at least 1".to_string()));
    }
    if let Some(tol) = args.tol {
        if !(tol > 0.0) {
            return Err(CliError::Input(format!("tolerance must be positive, got {tol}")));
        }
    }
    let spectrum = read_spectrum(&args.spectrum)?;
    let profile = resolve_profile(&args.profile)?;
    let cfg = SuiteConfig {
        p_values: parse_p_list(&args.p)?,
        trials: args.trials,
        seed: args.seed,
        tol: args.tol,
        ..SuiteConfig::default()
    };
    let reports = run_suite(&profile, &spectrum, args.m, &cfg)?;

    let content = match args.format {
        Format::Json => {
            // One report object per line.
            let mut text = String::new();
            for r in &reports {
                let _ = writeln!(text, "{}", serde_json::to_string(r)?);
            }
            text
        }
        Format::Csv => {
            let mut text = String::from("check,pass,slack,tolerance\n");
            for r in &reports {
                let _ = writeln!(
                    text,
                    "{},{},{},{}",
                    r.check,
                    r.pass,
                    fmt_f64(r.slack),
                    fmt_f64(r.tolerance)
                );
            }
            text
        }
    };
    write_output(args.out.as_deref(), &content)?;
    let all_pass = reports.iter().all(|r| r.pass);
    Ok(if all_pass { EXIT_OK } else { EXIT_CHECK_FAILURE })
}

fn source_from_args(args: &GenerateArgs) -> Result<SpectrumSource, CliError> {
    if let Some(path) = &args.source {
        let text = fs::read_to_string(path)?;
        return Ok(serde_json::from_str(&text)?);
    }
    let kind = args
        .kind
        .as_deref()
        .ok_or_else(|| CliError::Input("either --source or --kind is required".to_string()))?;
    let need_f64 = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| CliError::Input(format!("--kind {kind} needs --{flag}")))
    };
    let need_usize = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| CliError::Input(format!("--kind {kind} needs --{flag}")))
    };
    let coeff = |v: &Option<String>, flag: &str| -> Result<CoeffFn, CliError> {
        v.as_deref()
            .ok_or_else(|| CliError::Input(format!("--kind {kind} needs --{flag}")))?
            .parse()
            .map_err(|e| CliError::Input(format!("--{flag}: {e}")))
    };
    match kind {
        "box" | "box_analytic" => {
            let text = args
                .sides
                .as_deref()
                .ok_or_else(|| CliError::Input("--kind box needs --sides".to_string()))?;
            let sides: Result<Vec<f64>, _> = text.split(',').map(|t| t.trim().parse()).collect();
            let sides =
                sides.map_err(|_| CliError::Input(format!("invalid --sides {text:?}")))?;
            Ok(SpectrumSource::BoxAnalytic {
                sides,
                count: args.count,
            })
        }
        "fd1d" | "fd_1d" => Ok(SpectrumSource::Fd1d {
            length: need_f64(args.length, "length")?,
            grid: need_usize(args.grid, "grid")?,
            count: args.count,
        }),
        "fd2d" | "fd_2d_kronecker" => Ok(SpectrumSource::Fd2dKronecker {
            lx: need_f64(args.lx, "lx")?,
            ly: need_f64(args.ly, "ly")?,
            nx: need_usize(args.nx, "nx")?,
            ny: need_usize(args.ny, "ny")?,
            count: args.count,
        }),
        "sturm" | "sturm_liouville_fd" => Ok(SpectrumSource::SturmLiouvilleFd {
            p: coeff(&args.p, "p")?,
            q: coeff(&args.q, "q")?,
            interval: parse_pair(
                args.interval
                    .as_deref()
                    .ok_or_else(|| CliError::Input("--kind sturm needs --interval".to_string()))?,
                "--interval",
            )?,
            grid: need_usize(args.grid, "grid")?,
            count: args.count,
        }),
        "inhomogeneous" | "inhomogeneous_fd_1d" => Ok(SpectrumSource::InhomogeneousFd1d {
            density: coeff(&args.density, "density")?,
            interval: parse_pair(
                args.interval.as_deref().ok_or_else(|| {
                    CliError::Input("--kind inhomogeneous needs --interval".to_string())
                })?,
                "--interval",
            )?,
            grid: need_usize(args.grid, "grid")?,
            count: args.count,
        }),
        other => Err(CliError::Input(format!(
            "unknown source kind {other:?} (box, fd1d, fd2d, sturm, inhomogeneous)"
        ))),
    }
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<i32, CliError> {
    let source = source_from_args(args)?;
    let spectrum = source.generate()?;
    let mut text = serde_json::to_string_pretty(&spectrum)?;
    text.push('\n');
    write_output(args.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<i32, CliError> {
    if args.m == 0 {
        return Err(CliError::Input("m must be at least 1".to_string()));
    }
    let spectrum = read_spectrum(&args.spectrum)?;
    let profile = resolve_profile(&args.profile)?;
    let ps = parse_grid(&args.p_grid)?;

    let mut successes = 0;
    let mut rows: Vec<(f64, Option<f64>)> = Vec::new();
    for &p in &ps {
        match bound_at(&profile, &spectrum, args.m, p) {
            Ok(r) => {
                successes += 1;
                rows.push((p, Some(r.value)));
            }
            Err(e) => {
                eprintln!("p={p}: {e}");
                rows.push((p, None));
            }
        }
    }

    let content = match args.format {
        Format::Csv => {
            let mut text = String::from("p,sigma\n");
            for (p, v) in &rows {
                let cell = v.map(fmt_f64).unwrap_or_default();
                let _ = writeln!(text, "{},{cell}", fmt_f64(*p));
            }
            text
        }
        Format::Json => {
            let objects: Vec<serde_json::Value> = rows
                .iter()
                .map(|(p, v)| serde_json::json!({ "p": p, "sigma": v }))
                .collect();
            let mut text = serde_json::to_string_pretty(&objects)?;
            text.push('\n');
            text
        }
    };
    write_output(args.out.as_deref(), &content)?;
    Ok(if successes > 0 { EXIT_OK } else { EXIT_NUMERIC })
}

/// Executes a parsed command and maps every error to its exit code.
pub fn run(cli: Cli) -> i32 {
    let outcome = match &cli.command {
        Command::Bounds(args) => cmd_bounds(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
