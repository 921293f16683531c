//! Argument handling and report emission.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use diracspace_core::{CoreError, Form};
use diracspace_linfty::e0::e0_family;
use diracspace_linfty::getzler::getzler_family;
use diracspace_linfty::iso::{gauge_check, lambda_scale_check};
use diracspace_linfty::observables::observables_family;
use diracspace_linfty::sampling::{e0_tuple, getzler_tuple, observables_tuple};
use diracspace_linfty::{LinftyError, MultibracketFamily};
use diracspace_oracle::OracleError;
use serde_json::{json, Value};

use crate::parse::{parse_expression, parse_form, Context, ParseError};
use crate::presfile::{read_presentation, PresError};
use crate::suites::{self, passed, Record};

#[derive(Parser, Debug)]
#[command(name = "diracspace", version, about = "Exact checks for higher Courant algebroids, Dirac structures and their L-infinity algebras")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// L-infinity relations of a multibracket family on seeded random tuples.
    CheckLinfty(LinftyArgs),
    /// Isotropy, involutivity and the multivector tests of a presentation file.
    CheckDirac(DiracArgs),
    /// Morphism and isomorphism identities between multibracket families.
    CheckMorphism(MorphismArgs),
    /// Lagrangian subspaces through their (S, omega) description and back.
    LagrangianRoundtrip(LagrangianArgs),
    /// Tier subspaces of random Lagrangians against brute-force perps.
    MultidiracTiers(LagrangianArgs),
    /// Derived-bracket oracle against the multibracket engine.
    OracleCompare(OracleArgs),
    /// Parse expressions and print their normal form.
    Parse(ParseArgs),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Number of random samples per check.
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Base seed for all random samples.
    #[arg(long, env = "DIRACSPACE_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    Getzler,
    Observables,
    E0,
}

#[derive(Args, Debug)]
struct LinftyArgs {
    #[arg(long, value_enum, default_value_t = FamilyKind::Getzler)]
    family: FamilyKind,
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// Twisting form (expression or file); `0` for none.
    #[arg(long = "H")]
    h: Option<String>,
    /// Twisting 2-form of the E^0 family (expression or file).
    #[arg(long)]
    sigma: Option<String>,
    /// Presentation file for the observables family.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Largest arity checked; defaults to one above the top bracket.
    #[arg(long)]
    arity_max: Option<usize>,
    /// Accept non-closed twisting forms (negative controls).
    #[arg(long)]
    allow_nonclosed: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct DiracArgs {
    #[arg(long)]
    file: PathBuf,
    /// Check the image under X + a -> X + lambda a instead.
    #[arg(long)]
    lambda: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MorphismKind {
    /// Twisted E^0 algebra to the derived-bracket Lie 2-algebra.
    Canonical,
    /// Observables of a symplectic form into the twisted E^0 algebra.
    Prequantization,
    /// Observables under X + a -> X + lambda a.
    Lambda,
    /// Derived-bracket algebras under the gauge map e^{-B}.
    Gauge,
}

#[derive(Args, Debug)]
struct MorphismArgs {
    #[arg(long, value_enum, default_value_t = MorphismKind::Canonical)]
    kind: MorphismKind,
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// 2-form: the twist for `canonical`, the symplectic form for `prequantization`.
    #[arg(long)]
    sigma: Option<String>,
    /// Presentation file for `lambda`.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, default_value = "2")]
    lambda: String,
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long = "H")]
    h: Option<String>,
    /// Gauge form of degree r (expression or file).
    #[arg(long = "B")]
    b: Option<String>,
    #[arg(long)]
    allow_nonclosed: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct LagrangianArgs {
    #[arg(long, default_value_t = 3)]
    dim: usize,
    #[arg(long, default_value_t = 1)]
    p: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, default_value_t = 3)]
    dim: usize,
    #[arg(long = "H")]
    h: Option<String>,
    #[arg(long, default_value_t = 5)]
    arity_max: usize,
    #[arg(long)]
    allow_nonclosed: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ParseArgs {
    /// Expression to parse.
    expr: Option<String>,
    /// File with one expression per line (`#` starts a comment line).
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    dim: Option<usize>,
    /// Parse as a section of E^p.
    #[arg(long)]
    p: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{what}: {source}")]
    Parse { what: String, source: ParseError },
    #[error(transparent)]
    Pres(#[from] PresError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Linfty(#[from] LinftyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Usage(String),
}

/// Expression text, read from the named file when the argument is an existing path.
fn expr_or_file(arg: &str) -> Result<String, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path).map_err(|source| CliError::Io { path: arg.to_string(), source })
    } else {
        Ok(arg.to_string())
    }
}

fn form_arg(what: &str, arg: Option<&str>, n: usize, k: usize) -> Result<Option<Form>, CliError> {
    let Some(arg) = arg else { return Ok(None) };
    let text = expr_or_file(arg)?;
    let f = parse_form(&text, n, k).map_err(|source| CliError::Parse { what: what.to_string(), source })?;
    Ok(if f.is_zero() { None } else { Some(f) })
}

fn rat_arg(what: &str, text: &str) -> Result<diracspace_core::Rat, CliError> {
    let p = crate::parse::parse_poly(text, 1).map_err(|source| CliError::Parse { what: what.to_string(), source })?;
    if !p.is_constant() {
        return Err(CliError::Usage(format!("{what} must be a rational number")));
    }
    Ok(p.constant_term())
}

struct Emitter<'a> {
    out: &'a mut dyn Write,
    format: Format,
    command: &'static str,
    seed: Option<u64>,
    trials: Option<usize>,
    total: usize,
    failed: usize,
}

impl Emitter<'_> {
    fn emit(&mut self, mut r: Record) -> std::io::Result<()> {
        self.total += 1;
        if !passed(&r) {
            self.failed += 1;
        }
        r.insert("schema".into(), json!(1));
        r.insert("command".into(), json!(self.command));
        if let Some(s) = self.seed {
            r.insert("seed".into(), json!(s));
        }
        if let Some(t) = self.trials {
            r.insert("trials".into(), json!(t));
        }
        match self.format {
            Format::Json => writeln!(self.out, "{}", Value::Object(r)),
            Format::Text => {
                let status = r.get("status").and_then(Value::as_str).map(str::to_uppercase);
                let status = status.unwrap_or_else(|| if passed(&r) { "PASS".into() } else { "FAIL".into() });
                let check = r.remove("check").and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
                let mut line = format!("{status} {check}");
                for key in ["schema", "command", "pass", "status"] {
                    r.remove(key);
                }
                for (k, v) in &r {
                    match v {
                        Value::String(s) => line.push_str(&format!(" {k}={s:?}")),
                        Value::Null => {}
                        other => line.push_str(&format!(" {k}={other}")),
                    }
                }
                writeln!(self.out, "{line}")
            }
        }
    }

    fn finish(&mut self) -> std::io::Result<i32> {
        let pass = self.failed == 0;
        let summary = json!({
            "check": "summary",
            "total": self.total,
            "failed": self.failed,
            "pass": pass,
        });
        let Value::Object(m) = summary else { unreachable!() };
        let (total, failed) = (self.total, self.failed);
        self.emit(m)?;
        self.total = total;
        self.failed = failed;
        Ok(if pass { 0 } else { 1 })
    }
}

/// Runs the command line `args` (program name first), writing reports to `out` and
/// diagnostics to `err`. Returns the exit code: 0 when every check passes, 1 when some check
/// fails, 2 on usage, parse or file errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match dispatch(cli.command, cli.format, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn emitter<'a>(out: &'a mut dyn Write, format: Format, command: &'static str, c: &Common) -> Emitter<'a> {
    Emitter { out, format, command, seed: Some(c.seed), trials: Some(c.trials), total: 0, failed: 0 }
}

fn emit_all(em: &mut Emitter<'_>, records: Vec<Record>) -> Result<i32, CliError> {
    let io = |source| CliError::Io { path: "<stdout>".into(), source };
    for r in records {
        em.emit(r).map_err(io)?;
    }
    em.finish().map_err(io)
}

fn dispatch(command: Command, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::CheckLinfty(a) => {
            let c = &a.common;
            let records = match a.family {
                FamilyKind::Getzler => {
                    let h = form_arg("--H", a.h.as_deref(), a.dim, a.r + 1)?;
                    let fam = getzler_family(a.r, h, a.dim, a.allow_nonclosed)?;
                    let max = a.arity_max.unwrap_or(fam.max_arity() + 1);
                    suites::relation_records(&fam, max, c.trials, c.seed, |s, n| getzler_tuple(s, &fam, n))?
                }
                FamilyKind::Observables => {
                    let file = a.file.as_ref().ok_or_else(|| CliError::Usage("--family observables needs --file".into()))?;
                    let pres = read_presentation(file)?;
                    let fam = observables_family(&pres)?;
                    let space = suites::hamiltonian_space(&pres);
                    let max = a.arity_max.unwrap_or(fam.max_arity() + 1);
                    suites::relation_records(&fam, max, c.trials, c.seed, |s, n| observables_tuple(s, &fam, &space, n))?
                }
                FamilyKind::E0 => {
                    let sigma = form_arg("--sigma", a.sigma.as_deref(), a.dim, 2)?;
                    let fam = e0_family(sigma, a.dim, a.allow_nonclosed)?;
                    let max = a.arity_max.unwrap_or(fam.max_arity() + 1);
                    suites::relation_records(&fam, max, c.trials, c.seed, |s, n| e0_tuple(s, a.dim, n))?
                }
            };
            emit_all(&mut emitter(out, format, "check-linfty", c), records)
        }
        Command::CheckDirac(a) => {
            let mut pres = read_presentation(&a.file)?;
            if let Some(l) = &a.lambda {
                pres = pres.scaled(&rat_arg("--lambda", l)?)?;
            }
            let mut em = Emitter { out, format, command: "check-dirac", seed: None, trials: None, total: 0, failed: 0 };
            emit_all(&mut em, suites::dirac_records(&pres))
        }
        Command::CheckMorphism(a) => {
            let c = &a.common;
            let records = match a.kind {
                MorphismKind::Canonical => {
                    let sigma = form_arg("--sigma", a.sigma.as_deref(), a.dim, 2)?;
                    suites::canonical_morphism_records(sigma, a.dim, a.allow_nonclosed, c.trials, c.seed)?
                }
                MorphismKind::Prequantization => {
                    let omega = form_arg("--sigma", a.sigma.as_deref(), a.dim, 2)?
                        .ok_or_else(|| CliError::Usage("prequantization needs a nonzero --sigma".into()))?;
                    suites::prequantization_records(&omega, c.trials, c.seed)?
                }
                MorphismKind::Lambda => {
                    let file = a.file.as_ref().ok_or_else(|| CliError::Usage("--kind lambda needs --file".into()))?;
                    let pres = read_presentation(file)?;
                    let space = suites::hamiltonian_space(&pres);
                    let (rep, _, _) = lambda_scale_check(&pres, &space, &rat_arg("--lambda", &a.lambda)?, c.trials, c.seed)?;
                    vec![suites::iso_record(&rep)]
                }
                MorphismKind::Gauge => {
                    let h = form_arg("--H", a.h.as_deref(), a.dim, a.r + 1)?;
                    let b = form_arg("--B", a.b.as_deref(), a.dim, a.r)?.unwrap_or_else(|| Form::zero(a.dim, a.r as i32));
                    let (rep, _, _) = gauge_check(a.r, h, &b, a.dim, c.trials, c.seed)?;
                    vec![suites::iso_record(&rep)]
                }
            };
            emit_all(&mut emitter(out, format, "check-morphism", c), records)
        }
        Command::LagrangianRoundtrip(a) => {
            check_lagrangian_context(a.dim, a.p)?;
            let records = suites::lagrangian_roundtrip_records(a.dim, a.p, a.common.trials, a.common.seed)?;
            emit_all(&mut emitter(out, format, "lagrangian-roundtrip", &a.common), records)
        }
        Command::MultidiracTiers(a) => {
            check_lagrangian_context(a.dim, a.p)?;
            let records = suites::tier_records(a.dim, a.p, a.common.trials, a.common.seed)?;
            emit_all(&mut emitter(out, format, "multidirac-tiers", &a.common), records)
        }
        Command::OracleCompare(a) => {
            let h = form_arg("--H", a.h.as_deref(), a.dim, a.r + 1)?;
            let fam = getzler_family(a.r, h, a.dim, a.allow_nonclosed)?;
            let records = suites::oracle_records(&fam, a.arity_max, a.common.trials, a.common.seed)?;
            emit_all(&mut emitter(out, format, "oracle-compare", &a.common), records)
        }
        Command::Parse(a) => run_parse(a, format, out, err),
    }
}

fn check_lagrangian_context(n: usize, p: usize) -> Result<(), CliError> {
    if n == 0 || p == 0 || p > n {
        return Err(CliError::Usage(format!("need 1 <= p <= dim, got dim = {n}, p = {p}")));
    }
    Ok(())
}

fn run_parse(a: ParseArgs, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let ctx = Context { dim: a.dim, p: a.p };
    let inputs: Vec<(usize, String)> = match (&a.expr, &a.file) {
        (Some(e), None) => vec![(1, e.clone())],
        (None, Some(f)) => {
            let text = std::fs::read_to_string(f).map_err(|source| CliError::Io { path: f.display().to_string(), source })?;
            text.lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
                .map(|(i, l)| (i + 1, l.to_string()))
                .collect()
        }
        _ => return Err(CliError::Usage("parse needs exactly one of EXPR or --file".into())),
    };
    let mut em = Emitter { out, format, command: "parse", seed: None, trials: None, total: 0, failed: 0 };
    let io = |source| CliError::Io { path: "<stdout>".into(), source };
    for (line, src) in inputs {
        let (parsed, warnings) = parse_expression(&src, ctx).map_err(|mut source| {
            source.line += line - 1;
            CliError::Parse { what: a.file.as_ref().map_or("expression".into(), |f| f.display().to_string()), source }
        })?;
        for w in &warnings {
            let _ = writeln!(err, "warning: {}:{}: {}", line + w.line - 1, w.col, w.msg);
        }
        let r = json!({
            "check": "parse",
            "line": line,
            "kind": parsed.kind(),
            "dim": parsed.dim(),
            "degree": parsed.degree(),
            "normalized": parsed.to_string(),
            "warnings": warnings.iter().map(|w| w.msg.clone()).collect::<Vec<_>>(),
            "pass": true,
        });
        let Value::Object(m) = r else { unreachable!() };
        em.emit(m).map_err(io)?;
    }
    Ok(0)
}
