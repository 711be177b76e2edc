//! Command-line front end.
//!
//! Exit codes: `0` success, `1` usage or input error, `2` a certified
//! prediction that the numerics did not confirm.

use std::ffi::OsString;
use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::chain::{site_state, ChainPropagator, ChainSpec};
use crate::error::Error;
use crate::quotient::{
    equivalence_check, quotient_matrix_elements, verify_shifted_diagonal, MatrixElement,
};
use crate::revival::{
    appendix_phase_check, certify_certificate, check_conditions, check_conditions_exact, RevivalCertificate,
};
use crate::state::AmplitudeVector;
use crate::walk::{antipodal_amplitudes_spectral, GraphPropagator, WalkSpec};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SCAN_STEPS: usize = 2000;
pub const EQUIVALENCE_TOLERANCE: f64 = 1e-10;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hamming-revival", version, about = "Fractional revival on weighted Hamming graphs and Krawtchouk chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Certificate, numeric confirmation and phase identity check.
    Verify(VerifyArgs),
    /// Amplitudes of the corner-initialized evolution at one time.
    Evolve(EvolveArgs),
    /// Corner and antipode probabilities over a time grid.
    Scan(ScanArgs),
    /// Column-space matrix elements and graph/chain equivalence trials.
    Quotient(QuotientArgs),
    /// Eigenvalue-by-eigenvalue check of the unitary at the FR time.
    Appendix(AppendixArgs),
}

#[derive(Debug, Clone, Args)]
struct Params {
    /// Number of chain sites; the graph lives on {0,1}^(N-1).
    #[arg(long = "N", value_name = "N")]
    n: usize,
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["p", "q"])]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Exact ratio alpha/beta = p/q (beta defaults to 1).
    #[arg(long, allow_negative_numbers = true, requires = "q")]
    p: Option<i64>,
    #[arg(long, requires = "p")]
    q: Option<i64>,
}

#[derive(Debug, Clone, Args)]
struct Output {
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
    /// Write to a file instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

impl Output {
    fn format(&self, default: Format) -> Format {
        match (self.json, self.csv) {
            (true, _) => Format::Json,
            (_, true) => Format::Csv,
            _ => default,
        }
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    params: Params,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum TauArg {
    Fr,
    Pst,
    Value(f64),
}

impl FromStr for TauArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "fr" => Ok(TauArg::Fr),
            "pst" => Ok(TauArg::Pst),
            _ => match s.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(TauArg::Value(v)),
                _ => Err(format!("expected a finite number, `fr` or `pst`, got `{s}`")),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Chain,
    Graph,
    Both,
}

#[derive(Debug, Args)]
struct EvolveArgs {
    #[command(flatten)]
    params: Params,
    /// Evolution time: a number, `fr` or `pst`.
    #[arg(long, allow_negative_numbers = true)]
    tau: TauArg,
    #[arg(long, value_enum, default_value = "graph")]
    target: Target,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[command(flatten)]
    params: Params,
    #[arg(long, allow_negative_numbers = true)]
    tau_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    tau_max: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SCAN_STEPS)]
    steps: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct QuotientArgs {
    #[arg(long = "N", value_name = "N")]
    n: usize,
    /// Seed for the random (alpha, beta, tau) equivalence trials.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct AppendixArgs {
    #[command(flatten)]
    params: Params,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::input(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

struct Report {
    body: String,
    code: i32,
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let output = match &cli.command {
        Command::Verify(a) => &a.output,
        Command::Evolve(a) => &a.output,
        Command::Scan(a) => &a.output,
        Command::Quotient(a) => &a.output,
        Command::Appendix(a) => &a.output,
    }
    .clone();
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(&a),
        Command::Evolve(a) => cmd_evolve(&a),
        Command::Scan(a) => cmd_scan(&a),
        Command::Quotient(a) => cmd_quotient(&a),
        Command::Appendix(a) => cmd_appendix(&a),
    };
    match result.and_then(|r| emit(&output, r)) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn emit(output: &Output, report: Report) -> CliResult<i32> {
    match &output.out {
        Some(path) => std::fs::write(path, &report.body)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{}", report.body),
    }
    Ok(report.code)
}

fn json_body(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

/// Shortest round-trip decimal, switching to exponent form outside
/// `[1e-5, 1e16)`.
fn num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn pair(c: crate::Complex64) -> Value {
    json!([c.re, c.im])
}

fn certificate_for(params: &Params) -> CliResult<RevivalCertificate> {
    let cert = match (params.p, params.q) {
        (Some(p), Some(q)) => check_conditions_exact(params.n, p, q, params.beta.unwrap_or(1.0))?,
        _ => check_conditions(params.n, params.alpha.unwrap_or(0.0), params.beta.unwrap_or(0.0))?,
    };
    Ok(cert)
}

fn params_json(cert: &RevivalCertificate) -> Value {
    json!({
        "N": cert.n,
        "alpha": cert.alpha,
        "beta": cert.beta,
        "p": cert.p,
        "q": cert.q,
    })
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<Report> {
    let cert = certificate_for(&args.params)?;
    let numeric = certify_certificate(cert.clone())?;
    let appendix = if cert.predicts_fr() {
        Some(appendix_phase_check(cert.n, cert.alpha, cert.beta)?)
    } else {
        None
    };
    let passed = numeric.passed && appendix.as_ref().is_none_or(|a| a.passed);
    let code = if passed { EXIT_OK } else { EXIT_MISMATCH };
    let amps = numeric.amplitudes;

    let body = match args.output.format(Format::Json) {
        Format::Json => json_body(&json!({
            "schema": SCHEMA_VERSION,
            "params": params_json(&cert),
            "certificate": cert,
            "numeric": {
                "probe_tau": numeric.probe_tau,
                "mu": pair(amps.mu),
                "nu": pair(amps.nu),
                "leakage": amps.leakage,
                "fr": numeric.fr,
                "pst": numeric.pst,
                "scan": numeric.scan,
                "passed": numeric.passed,
            },
            "appendix": appendix.as_ref().map(|a| json!({
                "delta": a.delta,
                "phi_prime": a.phi_prime,
                "max_identity_dev": a.max_identity_dev,
                "matrix_dev": a.matrix_dev,
                "passed": a.passed,
            })),
        })),
        Format::Csv => {
            let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
            format!(
                "N,alpha,beta,kind,tau_fr,tau_pst,probe_tau,p_corner,p_antipode,leakage,passed\n{},{},{},{},{},{},{},{},{},{},{}\n",
                cert.n,
                num(cert.alpha),
                num(cert.beta),
                cert.kind.as_str(),
                opt(cert.tau_fr),
                opt(cert.tau_pst),
                num(numeric.probe_tau),
                num(amps.mu.norm_sqr()),
                num(amps.nu.norm_sqr()),
                num(amps.leakage),
                passed,
            )
        }
    };
    Ok(Report { body, code })
}

fn resolve_tau(tau: TauArg, cert: &RevivalCertificate) -> CliResult<f64> {
    match tau {
        TauArg::Value(v) => Ok(v),
        TauArg::Fr => cert
            .tau_fr
            .ok_or_else(|| Failure::input("no FR time exists for these parameters")),
        TauArg::Pst => cert
            .tau_pst
            .ok_or_else(|| Failure::input("no PST time exists for these parameters")),
    }
}

fn amplitude_rows(psi: &AmplitudeVector, first_index: usize) -> Vec<(usize, crate::Complex64)> {
    psi.as_slice()
        .iter()
        .enumerate()
        .map(|(i, a)| (i + first_index, *a))
        .collect()
}

fn cmd_evolve(args: &EvolveArgs) -> CliResult<Report> {
    let cert = certificate_for(&args.params)?;
    let tau = resolve_tau(args.tau, &cert)?;
    let (n, alpha, beta) = (cert.n, cert.alpha, cert.beta);

    let graph = match args.target {
        Target::Graph | Target::Both => {
            let spec = WalkSpec::for_chain(n, alpha, beta)?;
            let psi0 = AmplitudeVector::basis(spec.dim(), 0)?;
            Some(GraphPropagator::new(spec).evolve(&psi0, tau)?)
        }
        Target::Chain => None,
    };
    let chain = match args.target {
        Target::Chain | Target::Both => {
            let spec = ChainSpec::new(n, alpha, beta)?;
            Some(ChainPropagator::new(spec).evolve(&site_state(n, 1)?, tau)?)
        }
        Target::Graph => None,
    };
    let comparison = match args.target {
        Target::Both => Some(equivalence_check(n, alpha, beta, tau)?),
        _ => None,
    };

    let sections: Vec<(&str, Vec<(usize, crate::Complex64)>)> = [
        chain.as_ref().map(|c| ("chain", amplitude_rows(c, 1))),
        graph.as_ref().map(|g| ("graph", amplitude_rows(g, 0))),
    ]
    .into_iter()
    .flatten()
    .collect();

    let body = match args.output.format(Format::Csv) {
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("schema".into(), json!(SCHEMA_VERSION));
            obj.insert("params".into(), params_json(&cert));
            obj.insert("tau".into(), json!(tau));
            for (name, rows) in &sections {
                let rows: Vec<Value> = rows
                    .iter()
                    .map(|(i, a)| json!({"index": i, "re": a.re, "im": a.im, "probability": a.norm_sqr()}))
                    .collect();
                obj.insert((*name).into(), Value::Array(rows));
            }
            if let Some(eq) = comparison {
                obj.insert(
                    "comparison".into(),
                    json!({"max_deviation": eq.max_deviation, "leakage": eq.leakage}),
                );
            }
            json_body(&Value::Object(obj))
        }
        Format::Csv => {
            let both = sections.len() > 1;
            let mut s = String::new();
            s.push_str(if both { "target,index,re,im,probability\n" } else { "index,re,im,probability\n" });
            for (name, rows) in &sections {
                for (i, a) in rows {
                    if both {
                        let _ = write!(s, "{name},");
                    }
                    let _ = writeln!(s, "{i},{},{},{}", num(a.re), num(a.im), num(a.norm_sqr()));
                }
            }
            if let Some(eq) = comparison {
                let _ = writeln!(s, "# max_deviation={},leakage={}", num(eq.max_deviation), num(eq.leakage));
            }
            s
        }
    };
    Ok(Report { body, code: EXIT_OK })
}

/// `2π / min(|α|, |β|)` over the nonzero weights.
fn default_scan_max(alpha: f64, beta: f64) -> f64 {
    let smallest = [alpha.abs(), beta.abs()]
        .into_iter()
        .filter(|w| *w > 0.0)
        .fold(f64::INFINITY, f64::min);
    TAU / smallest
}

fn cmd_scan(args: &ScanArgs) -> CliResult<Report> {
    let cert = certificate_for(&args.params)?;
    let spec = WalkSpec::for_chain(cert.n, cert.alpha, cert.beta)?;
    let lo = args.tau_min.unwrap_or(0.0);
    let hi = args.tau_max.unwrap_or_else(|| default_scan_max(cert.alpha, cert.beta));
    if !(lo.is_finite() && hi.is_finite()) || hi <= lo || args.steps == 0 {
        return Err(Failure::input(format!(
            "empty scan range [{lo}, {hi}] with {} steps",
            args.steps
        )));
    }
    let rows: Vec<(f64, f64, f64, f64)> = (0..=args.steps)
        .map(|k| {
            let tau = lo + (hi - lo) * k as f64 / args.steps as f64;
            let a = antipodal_amplitudes_spectral(&spec, tau);
            (tau, a.mu.norm_sqr(), a.nu.norm_sqr(), a.leakage)
        })
        .collect();

    let body = match args.output.format(Format::Csv) {
        Format::Csv => {
            let mut s = String::from("tau,p_corner,p_antipode,leakage\n");
            for (t, pc, pa, l) in &rows {
                let _ = writeln!(s, "{},{},{},{}", num(*t), num(*pc), num(*pa), num(*l));
            }
            s
        }
        Format::Json => json_body(&json!({
            "schema": SCHEMA_VERSION,
            "params": params_json(&cert),
            "rows": rows
                .iter()
                .map(|(t, pc, pa, l)| json!({"tau": t, "p_corner": pc, "p_antipode": pa, "leakage": l}))
                .collect::<Vec<_>>(),
        })),
    };
    Ok(Report { body, code: EXIT_OK })
}

fn element_json(e: &Option<MatrixElement>) -> Value {
    match e {
        Some(e) => json!({
            "pair_count": e.pair_count,
            "value": e.value,
            "closed_form": e.closed_form,
            "exact": e.exact,
        }),
        None => Value::Null,
    }
}

fn cmd_quotient(args: &QuotientArgs) -> CliResult<Report> {
    let n = args.n;
    let table = quotient_matrix_elements(n)?;
    let shifted = verify_shifted_diagonal(n)?;

    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut trials = Vec::with_capacity(args.trials);
    for _ in 0..args.trials {
        let alpha: f64 = rng.random_range(-2.0..2.0);
        let beta: f64 = rng.random_range(-2.0..2.0);
        let tau: f64 = rng.random_range(0.0..TAU);
        let eq = equivalence_check(n, alpha, beta, tau)?;
        trials.push((alpha, beta, tau, eq));
    }
    let worst = trials
        .iter()
        .map(|t| t.3.max_deviation.max(t.3.leakage.abs()))
        .fold(0.0, f64::max);
    let passed = table.all_exact() && shifted.all_exact() && worst < EQUIVALENCE_TOLERANCE;
    let code = if passed { EXIT_OK } else { EXIT_MISMATCH };

    let body = match args.output.format(Format::Json) {
        Format::Json => json_body(&json!({
            "schema": SCHEMA_VERSION,
            "N": n,
            "seed": args.seed,
            "rows": table.rows.iter().zip(&shifted.rows).map(|(r, d)| json!({
                "n": r.n,
                "a1_forward": element_json(&r.a1_forward),
                "a2_forward": element_json(&r.a2_forward),
                "a2_backward": element_json(&r.a2_backward),
                "a2_diagonal": element_json(&Some(r.a2_diagonal)),
                "shifted_diagonal": {"lhs": d.lhs, "rhs": d.rhs, "exact": d.exact},
                "within_column_distances": r.within_column_distances,
            })).collect::<Vec<_>>(),
            "all_exact": table.all_exact() && shifted.all_exact(),
            "max_deviation": table.max_deviation().max(shifted.max_deviation()),
            "equivalence": trials.iter().map(|(a, b, t, eq)| json!({
                "alpha": a, "beta": b, "tau": t,
                "max_deviation": eq.max_deviation, "leakage": eq.leakage,
            })).collect::<Vec<_>>(),
            "passed": passed,
        })),
        Format::Csv => {
            let mut s = String::from("n,element,pair_count,value,closed_form,exact\n");
            for r in &table.rows {
                let named = [
                    ("a1_forward", r.a1_forward),
                    ("a2_forward", r.a2_forward),
                    ("a2_backward", r.a2_backward),
                    ("a2_diagonal", Some(r.a2_diagonal)),
                ];
                for (name, e) in named {
                    if let Some(e) = e {
                        let _ = writeln!(s, "{},{name},{},{},{},{}", r.n, e.pair_count, num(e.value), num(e.closed_form), e.exact);
                    }
                }
            }
            s
        }
    };
    Ok(Report { body, code })
}

fn cmd_appendix(args: &AppendixArgs) -> CliResult<Report> {
    let cert = certificate_for(&args.params)?;
    let report = appendix_phase_check(cert.n, cert.alpha, cert.beta).map_err(|e| match e {
        Error::Precondition(reason) => Failure::input(format!("no FR time exists for these parameters ({reason})")),
        other => other.into(),
    })?;
    let code = if report.passed { EXIT_OK } else { EXIT_MISMATCH };
    let body = match args.output.format(Format::Json) {
        Format::Json => json_body(&json!({
            "schema": SCHEMA_VERSION,
            "params": params_json(&cert),
            "appendix": report,
        })),
        Format::Csv => {
            let mut s = String::from("s,tau_energy,m_half,m_phase_dev,shift_phase_dev,decomposition_dev,identity_dev\n");
            for r in &report.rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    r.s,
                    num(r.tau_energy),
                    num(r.m_half),
                    num(r.m_phase_dev),
                    num(r.shift_phase_dev),
                    num(r.decomposition_dev),
                    num(r.identity_dev)
                );
            }
            s
        }
    };
    Ok(Report { body, code })
}
