//! The `wdlab` command driver.
//!
//! Exit codes: `0` success, `1` a semantic failure (invalid model, unknown
//! action, failed validation), `2` a usage or parse problem. Reports go to
//! stdout or `--out`; diagnostics go to stderr.

pub mod format;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::cohomology::{validate_model, ValidationReport};
use crate::correspondence::CorrespondenceAction;
use crate::frobenius::{
    builtin_cases, default_r_grid, eq2_sweep, fractional_power, frobenius_action, lemma1_audit, lemma1_random,
    theorem1_lattice, trace_radius_identity, weil_rh_check, Eq2Sweep, FractionalConfig, Lemma1Audit, Lemma1Input,
    Theorem1Config, Theorem1Report, TraceRadius, WeilRow,
};
use crate::linalg::{parse_rational, ComplexMatrix, Conjugation, Rational, RootConfig};
use crate::models::{
    abelian_product_from_traces, abelian_product_model, ec_point_count, elliptic_from_curve, elliptic_model,
    kunneth_bundle, mult_by_m, projective_space_model, CurveSpec, ModelBundle,
};
use crate::spectral::{is_semisimple, spectral_report, SemisimpleRow, SpectralConfig, SpectralReport};
use format::{LoadError, ModelFile};
use report::ReportFile;

#[derive(Debug, Parser)]
#[command(name = "wdlab", version, about = "Cohomology models, dynamical degrees and Frobenius diagnostics")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a model file against every ring and duality invariant.
    Validate(ValidateArgs),
    /// Spectral report for one action of a model.
    Spectra(SpectraArgs),
    /// Weil checks, fractional powers and norm sweeps for the Frobenius action.
    Frobenius(FrobeniusArgs),
    /// Audit the spectral bound for A·A^τ on Jordan blocks or matrices.
    Lemma1(Lemma1Args),
    /// Write a built-in model file.
    MakeModel(MakeModelArgs),
}

#[derive(Debug, Args)]
struct ValidateArgs {
    path: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SpectraArgs {
    path: PathBuf,
    #[arg(long, default_value = "frobenius")]
    action: String,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Largest iterate used for the empirical growth rates.
    #[arg(long, default_value_t = 200)]
    iters: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Entrywise,
    ConjugateTranspose,
    Both,
}

impl ModeArg {
    fn modes(self) -> Vec<Conjugation> {
        match self {
            Self::Entrywise => vec![Conjugation::Entrywise],
            Self::ConjugateTranspose => vec![Conjugation::ConjugateTranspose],
            Self::Both => Conjugation::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Args)]
struct FrobeniusArgs {
    path: PathBuf,
    /// Exponents for fractional powers, comma separated.
    #[arg(long, allow_hyphen_values = true, default_value = "-1.5,-0.5,0.5,1.5")]
    s_grid: String,
    /// Positive rationals (`num/den`, integers or decimals); defaults to 25
    /// points `q^e`, `e = -3..3` in steps of 1/4.
    #[arg(long)]
    r_grid: Option<String>,
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    mode: ModeArg,
    /// Non-positive exponents `s` of the iterate lattice.
    #[arg(long, allow_hyphen_values = true, default_value = "-3,-2,-1,0")]
    lattice_s: String,
    #[arg(long, default_value = "1,2,3,4,5")]
    lattice_t: String,
    /// Polarized action for the iterate lattice; defaults to the first
    /// `mult-by-*` action, then to the Frobenius itself.
    #[arg(long)]
    polarized: Option<String>,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Lemma1Args {
    /// Jordan eigenvalue as `re` or `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long)]
    size: Option<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    mode: ModeArg,
    /// Number of random complex Gaussian matrices.
    #[arg(long)]
    random: Option<usize>,
    /// Largest random dimension.
    #[arg(long, default_value_t = 8)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also run the three built-in matrices.
    #[arg(long)]
    builtin: bool,
    /// Length of the trace-root sequence per input and mode (0 disables it).
    #[arg(long, default_value_t = 0)]
    trace_t: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelKind {
    Pn,
    Elliptic,
    AbelianProduct,
    Kunneth,
}

#[derive(Debug, Args)]
struct MakeModelArgs {
    #[arg(value_enum)]
    kind: ModelKind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    q: Option<u64>,
    /// Prime for the point-count oracle.
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    a4: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    a6: Option<i64>,
    /// Frobenius trace, used with `--q` instead of counting.
    #[arg(long, allow_hyphen_values = true)]
    trace: Option<i64>,
    /// Curves `a4:a6,a4:a6,...` over `F_p`.
    #[arg(long, allow_hyphen_values = true)]
    curves: Option<String>,
    /// Traces `a,b,...`, used with `--q`.
    #[arg(long, allow_hyphen_values = true)]
    traces: Option<String>,
    #[arg(long)]
    left: Option<PathBuf>,
    #[arg(long)]
    right: Option<PathBuf>,
    /// Adds a `mult-by-M` action (abelian-type models only).
    #[arg(long, allow_hyphen_values = true)]
    mult_by: Option<i64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Semantic(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            Self::Semantic(_) => 1,
        }
    }
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Parse(_) => Self::Usage(e.to_string()),
            LoadError::Invalid(_) => Self::Semantic(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<i32, CliError>;

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Validate(a) => cmd_validate(&a, stdout, stderr),
        Command::Spectra(a) => cmd_spectra(&a, stdout, stderr),
        Command::Frobenius(a) => cmd_frobenius(&a, stdout, stderr),
        Command::Lemma1(a) => cmd_lemma1(&a, stdout, stderr),
        Command::MakeModel(a) => cmd_make_model(&a, stdout, stderr),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let (CliError::Usage(m) | CliError::Semantic(m)) = &e;
            let _ = writeln!(stderr, "error: {m}");
            e.code()
        }
    }
}

fn read_input(path: &Path) -> std::result::Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn parse_file(bytes: &[u8]) -> std::result::Result<ModelFile, CliError> {
    let text = std::str::from_utf8(bytes).map_err(|e| CliError::Usage(format!("input is not UTF-8: {e}")))?;
    Ok(ModelFile::parse(text)?)
}

fn load_bundle(path: &Path) -> std::result::Result<(Vec<u8>, ModelBundle), CliError> {
    let bytes = read_input(path)?;
    let bundle = parse_file(&bytes)?.to_bundle()?;
    Ok((bytes, bundle))
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> std::result::Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Semantic(format!("cannot write {}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Semantic(format!("cannot write report: {e}"))),
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> std::result::Result<Vec<T>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<T>().map_err(|_| CliError::Usage(format!("bad {what} entry {x:?}"))))
        .collect()
}

/// Rational from `num/den`, an integer, or a finite decimal.
fn parse_grid_value(s: &str) -> std::result::Result<Rational, CliError> {
    if let Ok(r) = parse_rational(s) {
        return Ok(r);
    }
    s.parse::<f64>()
        .ok()
        .and_then(Rational::from_float)
        .ok_or_else(|| CliError::Usage(format!("bad r-grid entry {s:?}")))
}

// ---------------------------------------------------------------- validate

#[derive(Serialize)]
struct ActionCheck {
    name: String,
    valid: bool,
    error: Option<String>,
}

#[derive(Serialize)]
struct ValidateBody {
    validation: ValidationReport,
    actions: Vec<ActionCheck>,
}

fn cmd_validate(a: &ValidateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let bytes = read_input(&a.path)?;
    let file = parse_file(&bytes)?;
    let (validation, actions) = match file.to_model() {
        Err(LoadError::Parse(m)) => return Err(CliError::Usage(format!("parse error: {m}"))),
        Err(LoadError::Invalid(m)) => {
            let report = ValidationReport {
                valid: false,
                checks_run: vec!["shape".into()],
                failures: vec![crate::cohomology::ValidationFailure { check: "shape".into(), witness: m }],
            };
            (report, Vec::new())
        }
        Ok(model) => {
            let report = validate_model(&model);
            let actions = if report.valid {
                let model = std::sync::Arc::new(model);
                file.actions
                    .iter()
                    .enumerate()
                    .map(|(i, rec)| {
                        let single = ModelFile { actions: vec![rec.clone()], ..file.clone() };
                        let error = single.to_actions(&model).err().map(|e| e.to_string().replace("actions[0]", &format!("actions[{i}]")));
                        ActionCheck { name: rec.name.clone(), valid: error.is_none(), error }
                    })
                    .collect()
            } else {
                Vec::new()
            };
            (report, actions)
        }
    };
    for f in &validation.failures {
        let _ = writeln!(stderr, "{}: {}", f.check, f.witness);
    }
    for c in actions.iter().filter(|c| !c.valid) {
        let _ = writeln!(stderr, "action {}: {}", c.name, c.error.as_deref().unwrap_or(""));
    }
    let ok = validation.valid && actions.iter().all(|c| c.valid);
    let body = ValidateBody { validation, actions };
    let report = ReportFile::new("validate", Some(&bytes), json!({}), body);
    emit(&report.render(), a.out.as_deref(), stdout)?;
    Ok(if ok { 0 } else { 1 })
}

// ----------------------------------------------------------------- spectra

#[derive(Serialize)]
struct SpectraBody {
    action: String,
    report: SpectralReport,
}

fn cmd_spectra(a: &SpectraArgs, stdout: &mut dyn Write, _stderr: &mut dyn Write) -> CmdResult {
    if !(a.tol.is_finite() && a.tol > 0.0) || a.iters == 0 {
        return Err(CliError::Usage("--tol must be positive and --iters at least 1".into()));
    }
    let (bytes, bundle) = load_bundle(&a.path)?;
    let f = bundle.action(&a.action).ok_or_else(|| {
        CliError::Semantic(format!("unknown action {:?} (available: {})", a.action, bundle.action_names().join(", ")))
    })?;
    let cfg = SpectralConfig { tol: a.tol, iters: a.iters, roots: RootConfig::default() };
    let body = SpectraBody {
        action: a.action.clone(),
        report: spectral_report(f, &cfg).map_err(|e| CliError::Semantic(e.to_string()))?,
    };
    let config = json!({
        "tol": a.tol,
        "iters": a.iters,
        "root_max_iterations": cfg.roots.max_iterations,
        "root_tol": cfg.roots.tol,
    });
    emit(&ReportFile::new("spectra", Some(&bytes), config, body).render(), a.out.as_deref(), stdout)?;
    Ok(0)
}

// --------------------------------------------------------------- frobenius

#[derive(Serialize)]
struct FractionalRow {
    s: f64,
    degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    condition_number: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    integer_gap: Option<f64>,
    /// Entries as `[re, im]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_modulus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eigen_moduli: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    moduli_hold: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct FrobeniusBody {
    q: u64,
    weil: Vec<WeilRow>,
    weil_holds: bool,
    semisimple: Vec<SemisimpleRow>,
    fractional: Vec<FractionalRow>,
    eq2: Option<Eq2Sweep>,
    eq2_error: Option<String>,
    lattice_action: String,
    lattice: Option<Theorem1Report>,
    lattice_error: Option<String>,
}

fn complex_rows(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    m.to_rows().iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect()
}

fn fractional_row(f: &CorrespondenceAction, q: u64, k: usize, s: f64, cfg: &FractionalConfig) -> FractionalRow {
    let empty = FractionalRow {
        s,
        degree: k,
        condition_number: None,
        integer_gap: None,
        matrix: None,
        expected_modulus: None,
        eigen_moduli: None,
        moduli_hold: None,
        error: None,
    };
    let p = match fractional_power(f, k, s, cfg) {
        Ok(p) => p,
        Err(e) => return FractionalRow { error: Some(e.to_string()), ..empty },
    };
    let expected = (q as f64).powf(s * k as f64 / 2.0);
    let moduli = match p.matrix.eigenvalues(&cfg.roots) {
        Ok(ev) => {
            let mut m: Vec<f64> = ev.roots.iter().map(|z| z.norm()).collect();
            m.sort_by(f64::total_cmp);
            m
        }
        Err(e) => return FractionalRow { error: Some(e.to_string()), ..empty },
    };
    let hold = moduli.iter().all(|m| (m - expected).abs() <= cfg.tol * expected.max(1.0));
    FractionalRow {
        condition_number: Some(p.condition_number),
        integer_gap: p.integer_gap,
        matrix: Some(complex_rows(&p.matrix)),
        expected_modulus: Some(expected),
        eigen_moduli: Some(moduli),
        moduli_hold: Some(hold),
        ..empty
    }
}

fn cmd_frobenius(a: &FrobeniusArgs, stdout: &mut dyn Write, _stderr: &mut dyn Write) -> CmdResult {
    let s_grid: Vec<f64> = parse_list(&a.s_grid, "s-grid")?;
    let lattice_s: Vec<f64> = parse_list(&a.lattice_s, "lattice-s")?;
    let lattice_t: Vec<u32> = parse_list(&a.lattice_t, "lattice-t")?;
    if s_grid.iter().chain(&lattice_s).any(|s| !s.is_finite()) || !(a.tol.is_finite() && a.tol > 0.0) {
        return Err(CliError::Usage("grids and --tol must be finite".into()));
    }
    let (bytes, bundle) = load_bundle(&a.path)?;
    let frob = frobenius_action(&bundle).map_err(|e| CliError::Semantic(e.to_string()))?;
    let q = bundle.model.q().expect("checked by frobenius_action");
    let r_grid = match &a.r_grid {
        Some(s) => s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(parse_grid_value).collect::<Result<Vec<_>, _>>()?,
        None => default_r_grid(q),
    };
    let roots = RootConfig::default();
    let frac_cfg = FractionalConfig { tol: a.tol, ..FractionalConfig::default() };
    let top = bundle.model.top();

    let weil = weil_rh_check(frob, q, a.tol, &roots).map_err(|e| CliError::Semantic(e.to_string()))?;
    let semisimple = (0..=top)
        .map(|k| Ok(SemisimpleRow { k, semisimple: is_semisimple(frob, k)? }))
        .collect::<crate::Result<Vec<_>>>()
        .map_err(|e| CliError::Semantic(e.to_string()))?;
    let fractional = s_grid
        .iter()
        .flat_map(|&s| (0..=top).map(move |k| (s, k)))
        .map(|(s, k)| fractional_row(frob, q, k, s, &frac_cfg))
        .collect();
    let (eq2, eq2_error) = match eq2_sweep(frob, &r_grid) {
        Ok(s) => (Some(s), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let lattice_action = match &a.polarized {
        Some(name) => name.clone(),
        None => bundle
            .action_names()
            .into_iter()
            .find(|n| n.starts_with("mult-by"))
            .unwrap_or(crate::models::FROBENIUS)
            .to_string(),
    };
    let polarized = bundle
        .action(&lattice_action)
        .ok_or_else(|| CliError::Semantic(format!("unknown action {lattice_action:?}")))?;
    let lattice_cfg = Theorem1Config {
        s_values: lattice_s.clone(),
        t_values: lattice_t.clone(),
        modes: a.mode.modes(),
        tol: 1e-9,
        fractional: frac_cfg.clone(),
        roots: roots.clone(),
    };
    let (lattice, lattice_error) = match theorem1_lattice(polarized, frob, &lattice_cfg) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let body = FrobeniusBody {
        q,
        weil_holds: weil.iter().all(|r| r.holds),
        weil,
        semisimple,
        fractional,
        eq2,
        eq2_error,
        lattice_action,
        lattice,
        lattice_error,
    };
    let config = json!({
        "tol": a.tol,
        "lattice_tol": lattice_cfg.tol,
        "max_condition": frac_cfg.max_condition,
        "s_grid": s_grid,
        "r_grid": r_grid.iter().map(crate::linalg::format_rational).collect::<Vec<_>>(),
        "lattice_s": lattice_s,
        "lattice_t": lattice_t,
        "modes": a.mode.modes().iter().map(|m| m.name()).collect::<Vec<_>>(),
        "root_max_iterations": roots.max_iterations,
        "root_tol": roots.tol,
    });
    emit(&ReportFile::new("frobenius", Some(&bytes), config, body).render(), a.out.as_deref(), stdout)?;
    Ok(0)
}

// ------------------------------------------------------------------ lemma1

#[derive(Serialize)]
struct ModeSummary {
    mode: Conjugation,
    total: usize,
    passed: usize,
    failed_inputs: Vec<String>,
}

#[derive(Serialize)]
struct TraceRow {
    input: String,
    mode: Conjugation,
    #[serde(flatten)]
    value: TraceRadius,
}

#[derive(Serialize)]
struct Lemma1Body {
    audits: Vec<Lemma1Audit>,
    summary: Vec<ModeSummary>,
    trace_radius: Vec<TraceRow>,
}

fn parse_lambda(s: &str) -> std::result::Result<Complex64, CliError> {
    let parts: Vec<f64> = parse_list(s, "lambda")?;
    match parts[..] {
        [re] => Ok(Complex64::new(re, 0.0)),
        [re, im] => Ok(Complex64::new(re, im)),
        _ => Err(CliError::Usage(format!("--lambda expects `re` or `re,im`, got {s:?}"))),
    }
    .and_then(|z| if z.is_finite() { Ok(z) } else { Err(CliError::Usage("--lambda must be finite".into())) })
}

fn cmd_lemma1(a: &Lemma1Args, stdout: &mut dyn Write, _stderr: &mut dyn Write) -> CmdResult {
    let mut inputs: Vec<Lemma1Input> = Vec::new();
    match (&a.lambda, a.size) {
        (Some(l), Some(size)) if size >= 1 => inputs.push(Lemma1Input::Jordan { lambda: parse_lambda(l)?, size }),
        (None, None) => {}
        _ => return Err(CliError::Usage("--lambda and --size (>= 1) go together".into())),
    }
    if let Some(count) = a.random {
        inputs.extend(lemma1_random(count, a.dim, a.seed).map_err(|e| CliError::Usage(e.to_string()))?);
    }
    if a.builtin || inputs.is_empty() {
        inputs.extend(builtin_cases());
    }
    let roots = RootConfig::default();
    let modes = a.mode.modes();
    let mut audits = Vec::new();
    let mut traces = Vec::new();
    for input in &inputs {
        for &mode in &modes {
            audits.push(lemma1_audit(input, mode, a.tol, &roots).map_err(|e| CliError::Semantic(e.to_string()))?);
            if a.trace_t > 0 {
                let value = trace_radius_identity(&input.matrix(), mode, a.trace_t, &roots)
                    .map_err(|e| CliError::Semantic(e.to_string()))?;
                traces.push(TraceRow { input: input.label(), mode, value });
            }
        }
    }
    let summary = modes
        .iter()
        .map(|&mode| {
            let rows: Vec<&Lemma1Audit> = audits.iter().filter(|x| x.mode == mode).collect();
            ModeSummary {
                mode,
                total: rows.len(),
                passed: rows.iter().filter(|x| x.holds).count(),
                failed_inputs: rows.iter().filter(|x| !x.holds).map(|x| x.input.clone()).collect(),
            }
        })
        .collect();
    let config = json!({
        "tol": a.tol,
        "modes": modes.iter().map(|m| m.name()).collect::<Vec<_>>(),
        "lambda": a.lambda,
        "size": a.size,
        "random": a.random,
        "dim": a.dim,
        "seed": a.seed,
        "builtin": a.builtin,
        "trace_t": a.trace_t,
        "distribution": "complex standard normal, re and im ~ N(0, 1/2)",
        "rng": "ChaCha8",
    });
    let body = Lemma1Body { audits, summary, trace_radius: traces };
    emit(&ReportFile::new("lemma1", None, config, body).render(), a.out.as_deref(), stdout)?;
    Ok(0)
}

// -------------------------------------------------------------- make-model

fn need<T: Copy>(v: Option<T>, flag: &str, kind: &str) -> std::result::Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("{kind} needs --{flag}")))
}

fn usage<T>(r: crate::Result<T>) -> std::result::Result<T, CliError> {
    r.map_err(|e| CliError::Usage(e.to_string()))
}

fn build_model(a: &MakeModelArgs) -> std::result::Result<ModelBundle, CliError> {
    match a.kind {
        ModelKind::Pn => usage(projective_space_model(need(a.n, "n", "pn")?, need(a.q, "q", "pn")?)),
        ModelKind::Elliptic => match (a.p, a.q) {
            (Some(p), None) => {
                let spec = usage(CurveSpec::new(p, need(a.a4, "a4", "elliptic")?, need(a.a6, "a6", "elliptic")?))?;
                usage(elliptic_from_curve(&spec))
            }
            (None, Some(q)) => usage(elliptic_model(q, need(a.trace, "trace", "elliptic")?)),
            _ => Err(CliError::Usage("elliptic needs either --p with --a4/--a6 or --q with --trace".into())),
        },
        ModelKind::AbelianProduct => match (a.p, a.q) {
            (Some(p), None) => {
                let list = a.curves.as_deref().ok_or_else(|| CliError::Usage("abelian-product needs --curves".into()))?;
                let counts = list
                    .split(',')
                    .map(|c| {
                        let (x, y) = c
                            .trim()
                            .split_once(':')
                            .ok_or_else(|| CliError::Usage(format!("curve {c:?} is not a4:a6")))?;
                        let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad coefficient {s:?}")));
                        usage(CurveSpec::new(p, parse(x)?, parse(y)?).and_then(|s| ec_point_count(&s)))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                usage(abelian_product_model(&counts))
            }
            (None, Some(q)) => {
                let list = a.traces.as_deref().ok_or_else(|| CliError::Usage("abelian-product needs --traces".into()))?;
                usage(abelian_product_from_traces(q, &parse_list::<i64>(list, "traces")?))
            }
            _ => Err(CliError::Usage("abelian-product needs either --p with --curves or --q with --traces".into())),
        },
        ModelKind::Kunneth => {
            let left = a.left.as_deref().ok_or_else(|| CliError::Usage("kunneth needs --left".into()))?;
            let right = a.right.as_deref().ok_or_else(|| CliError::Usage("kunneth needs --right".into()))?;
            let (_, l) = load_bundle(left)?;
            let (_, r) = load_bundle(right)?;
            kunneth_bundle(&l, &r).map_err(|e| CliError::Semantic(e.to_string()))
        }
    }
}

fn cmd_make_model(a: &MakeModelArgs, stdout: &mut dyn Write, _stderr: &mut dyn Write) -> CmdResult {
    let mut bundle = build_model(a)?;
    if let Some(m) = a.mult_by {
        let action = usage(mult_by_m(&bundle.model, m))?;
        bundle = bundle.with_action(&format!("mult-by-{m}"), action);
    }
    emit(&ModelFile::from_bundle(&bundle).to_canonical_string(), a.out.as_deref(), stdout)?;
    Ok(0)
}
