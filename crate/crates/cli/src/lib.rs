//! The `divsum` command line: argument definitions and command execution.
//!
//! [`run`] does all the work and returns the text destined for stdout and
//! stderr together with the exit code, so commands can be tested without
//! spawning a process.

pub mod format;

use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use divsum_core::casimir::{self, CavityConfig, Units};
use divsum_core::distribution::{JumpFunction, Numerics, Target};
use divsum_core::regularized::functional_equation_residual;
use divsum_core::{zeta_negative_oracle, EpsilonLimit, Error, RegularizedSum, SumEngine};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::format::{csv_line, fmt_float, json_float, limit_csv, limit_json, limit_text, ser_float, OutputFormat};

pub const QUAD_TOL_ENV: &str = "DIVSUM_QUAD_TOL";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCONSISTENT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const SUM_K_MAX: u32 = 200;
pub const ZETA_K_MAX: u32 = 500;
pub const TABLE_K_MAX: u32 = 100;
pub const RESIDUAL_TOL: f64 = 1e-8;
pub const COEFF_TOL: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(name = "divsum", version, about = "Regularized sums of divergent power series")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    /// Print nothing on success; the exit code carries the result.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact regularized 1^k + 2^k + 3^k + ... (or 1^k - 2^k + 3^k - ...).
    Sum {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long)]
        alternating: bool,
    },
    /// zeta(-k) from the Bernoulli numbers.
    Zeta {
        #[arg(long = "neg-k", allow_negative_numbers = true)]
        neg_k: i64,
    },
    /// Functional-equation residual for zeta(-k), pass below 1e-8.
    Check {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, default_value_t = 1_000_000)]
        terms: u64,
    },
    /// Numerical Fourier coefficient c_n of the periodic distribution S.
    Coeff {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, default_value_t = 10)]
        levels: usize,
    },
    /// Mollifier ladder <T, phi_m> for m = 2, 4, ..., 2^levels.
    Mollify {
        /// s, h2s, t0, dirichlet, or jump:heaviside|sign|cos
        #[arg(long)]
        target: TargetArg,
        #[arg(long, default_value_t = 0)]
        p: u32,
        #[arg(long, default_value_t = 10)]
        levels: usize,
    },
    /// Vacuum energy and force for two points at separation d.
    Casimir {
        #[arg(long, allow_negative_numbers = true)]
        d: f64,
        #[arg(long, value_enum, default_value_t = UnitsArg::Natural)]
        units: UnitsArg,
    },
    /// sum_powers(k) against the zeta oracle for k = 1..k_max.
    Table {
        #[arg(long = "k-max", allow_negative_numbers = true)]
        k_max: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum UnitsArg {
    Natural,
    Si,
}

#[derive(Clone, Copy, Debug)]
pub struct TargetArg(pub Target);

impl FromStr for TargetArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let lower = s.to_ascii_lowercase();
        let target = match lower.as_str() {
            "s" => Target::S,
            "h2s" => Target::H2S,
            "t0" => Target::T0,
            "dirichlet" => Target::Dirichlet,
            "jump:heaviside" => Target::Jump(JumpFunction::Heaviside),
            "jump:sign" => Target::Jump(JumpFunction::Sign),
            "jump:cos" => Target::Jump(JumpFunction::Cos),
            _ => return Err(format!("unknown target {s:?}; expected s, h2s, t0, dirichlet or jump:heaviside|sign|cos")),
        };
        Ok(TargetArg(target))
    }
}

fn target_name(t: Target) -> &'static str {
    match t {
        Target::S => "S",
        Target::H2S => "H2S",
        Target::T0 => "T0",
        Target::Dirichlet => "dirichlet",
        Target::Jump(JumpFunction::Heaviside) => "jump:heaviside",
        Target::Jump(JumpFunction::Sign) => "jump:sign",
        Target::Jump(JumpFunction::Cos) => "jump:cos",
        Target::Jump(JumpFunction::Custom { .. }) => "jump:custom",
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {}\n", msg.into()) }
    }

    fn inconsistent(stdout: String, msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_INCONSISTENT, stdout, stderr: format!("consistency failure: {}\n", msg.into()) }
    }
}

fn from_core(e: Error) -> Outcome {
    match e {
        Error::Disagreement { .. } | Error::ImaginaryResidue => {
            Outcome { code: EXIT_INCONSISTENT, stdout: String::new(), stderr: format!("consistency failure: {e}\n") }
        }
        _ => Outcome::usage(e.to_string()),
    }
}

/// Numerical settings, honouring `DIVSUM_QUAD_TOL` when given.
pub fn numerics(quad_tol: Option<&str>) -> Result<Numerics, String> {
    match quad_tol {
        None => Ok(Numerics::default()),
        Some(s) => match s.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t > 0.0 => Ok(Numerics::with_quad_tol(t)),
            _ => Err(format!("{QUAD_TOL_ENV} must be a positive number, got {s:?}")),
        },
    }
}

fn render(format: OutputFormat, text: impl FnOnce() -> String, json: impl FnOnce() -> Value, csv: impl FnOnce() -> String) -> String {
    match format {
        OutputFormat::Text => text(),
        OutputFormat::Json => {
            let mut s = serde_json::to_string(&json()).expect("values are serializable");
            s.push('\n');
            s
        }
        OutputFormat::Csv => csv(),
    }
}

#[derive(Serialize)]
struct SumRecord {
    k: u32,
    kind: &'static str,
    value: String,
    method: &'static str,
}

impl From<&RegularizedSum> for SumRecord {
    fn from(s: &RegularizedSum) -> Self {
        SumRecord { k: s.k, kind: s.kind.as_str(), value: s.value.to_string(), method: s.method.as_str() }
    }
}

#[derive(Serialize)]
struct CasimirRecord {
    #[serde(serialize_with = "ser_float")]
    d: f64,
    #[serde(serialize_with = "ser_float")]
    energy: f64,
    #[serde(serialize_with = "ser_float")]
    force: f64,
    units: &'static str,
}

#[derive(Serialize)]
struct TableRow {
    k: u32,
    sum_powers: String,
    zeta_oracle: String,
    #[serde(rename = "match")]
    matches: bool,
}

fn in_range(v: i64, lo: i64, hi: i64, name: &str) -> Result<u32, Outcome> {
    if v < lo || v > hi {
        return Err(Outcome::usage(format!("{name} must satisfy {lo} <= {name} <= {hi}, got {v}")));
    }
    Ok(v as u32)
}

/// Executes a parsed command line. `quad_tol` is the raw value of `DIVSUM_QUAD_TOL`.
pub fn run(cli: &Cli, quad_tol: Option<&str>) -> Outcome {
    let mut out = match execute(cli, quad_tol) {
        Ok(o) | Err(o) => o,
    };
    if cli.global.quiet && out.code == EXIT_OK {
        out.stdout.clear();
    }
    out
}

fn execute(cli: &Cli, quad_tol: Option<&str>) -> Result<Outcome, Outcome> {
    let fmt = cli.global.format;
    match &cli.command {
        Command::Sum { k, alternating } => {
            let k = in_range(*k, 1, i64::from(SUM_K_MAX), "k")?;
            let engine = SumEngine::for_k_max(k);
            let s = if *alternating { engine.alternating_sum_powers(k) } else { engine.sum_powers(k) }.map_err(from_core)?;
            let rec = SumRecord::from(&s);
            Ok(Outcome::ok(render(
                fmt,
                || format!("{}\n", rec.value),
                || serde_json::to_value(&rec).expect("record"),
                || format!("k,kind,value,method\n{}", csv_line(&[rec.k.to_string(), rec.kind.into(), rec.value.clone(), rec.method.into()])),
            )))
        }
        Command::Zeta { neg_k } => {
            let k = in_range(*neg_k, 1, i64::from(ZETA_K_MAX), "neg-k")?;
            let v = zeta_negative_oracle(k).map_err(from_core)?.to_string();
            Ok(Outcome::ok(render(
                fmt,
                || format!("{v}\n"),
                || json!({ "k": k, "zeta_neg_k": v, "method": "bernoulli" }),
                || format!("k,zeta_neg_k,method\n{}", csv_line(&[k.to_string(), v.clone(), "bernoulli".into()])),
            )))
        }
        Command::Check { k, terms } => {
            let k = in_range(*k, 1, i64::from(ZETA_K_MAX), "k")?;
            let residual = functional_equation_residual(k, *terms).map_err(from_core)?;
            let pass = residual < RESIDUAL_TOL;
            let verdict = if pass { "pass" } else { "fail" };
            let body = render(
                fmt,
                || format!("residual {} {verdict}\n", fmt_float(residual)),
                || json!({ "k": k, "terms": terms, "residual": json_float(residual), "tolerance": RESIDUAL_TOL, "pass": pass }),
                || {
                    format!(
                        "k,terms,residual,tolerance,pass\n{}",
                        csv_line(&[k.to_string(), terms.to_string(), fmt_float(residual), fmt_float(RESIDUAL_TOL), pass.to_string()])
                    )
                },
            );
            if pass {
                Ok(Outcome::ok(body))
            } else {
                Err(Outcome::inconsistent(body, format!("functional-equation residual {residual:e} for k = {k}")))
            }
        }
        Command::Coeff { n, levels } => {
            let n = i32::try_from(*n).ok().filter(|n| n.abs() <= 32).ok_or_else(|| Outcome::usage("n must satisfy |n| <= 32"))?;
            if *levels > 30 {
                return Err(Outcome::usage("levels must be at most 30"));
            }
            let nm = numerics(quad_tol).map_err(Outcome::usage)?;
            let limit = nm.fourier_coefficient_numeric(n, *levels).map_err(from_core)?;
            let expected = if n >= 1 { f64::from(if n % 2 == 1 { n } else { -n }) } else { 0.0 };
            let pass = (limit.extrapolated - divsum_core::Complex64::new(expected, 0.0)).norm() < COEFF_TOL;
            let body = limit_output(fmt, &limit, "eps", |m| {
                m.insert("n".into(), json!(n));
                m.insert("expected".into(), json_float(expected));
                m.insert("pass".into(), json!(pass));
            }, |t| {
                let _ = writeln!(t, "expected {} {}", fmt_float(expected), if pass { "pass" } else { "fail" });
            });
            if pass {
                Ok(Outcome::ok(body))
            } else {
                Err(Outcome::inconsistent(body, format!("c_{n} did not reach {expected} within {COEFF_TOL:e}")))
            }
        }
        Command::Mollify { target, p, levels } => {
            let nm = numerics(quad_tol).map_err(Outcome::usage)?;
            let limit = nm.mollify(target.0, *p, *levels).map_err(from_core)?;
            let name = target_name(target.0);
            Ok(Outcome::ok(limit_output(fmt, &limit, "m", |m| {
                m.insert("target".into(), json!(name));
                m.insert("p".into(), json!(p));
            }, |_| {})))
        }
        Command::Casimir { d, units } => {
            let units = match units {
                UnitsArg::Natural => Units::Natural,
                UnitsArg::Si => Units::Si,
            };
            let cfg = CavityConfig::with_units(*d, units).map_err(from_core)?;
            let rec = CasimirRecord { d: *d, energy: casimir::ground_state_energy(&cfg), force: casimir::casimir_force(&cfg), units: units.as_str() };
            Ok(Outcome::ok(render(
                fmt,
                || format!("energy {}\nforce {}\n", fmt_float(rec.energy), fmt_float(rec.force)),
                || serde_json::to_value(&rec).expect("record"),
                || format!("d,energy,force,units\n{}", csv_line(&[fmt_float(rec.d), fmt_float(rec.energy), fmt_float(rec.force), rec.units.into()])),
            )))
        }
        Command::Table { k_max } => {
            let k_max = in_range(*k_max, 1, i64::from(TABLE_K_MAX), "k-max")?;
            let engine = SumEngine::for_k_max(k_max);
            let mut rows = Vec::with_capacity(k_max as usize);
            for k in 1..=k_max {
                let s = engine.sum_powers(k).map_err(from_core)?.value;
                let z = zeta_negative_oracle(k).map_err(from_core)?;
                rows.push(TableRow { k, matches: s == z, sum_powers: s.to_string(), zeta_oracle: z.to_string() });
            }
            let body = render(
                fmt,
                || {
                    let mut t = String::new();
                    for r in &rows {
                        let _ = writeln!(t, "{:>4}  {:<28} {:<28} {}", r.k, r.sum_powers, r.zeta_oracle, if r.matches { "ok" } else { "MISMATCH" });
                    }
                    t
                },
                || serde_json::to_value(&rows).expect("rows"),
                || {
                    let mut t = String::from("k,sum_powers,zeta_oracle,match\n");
                    for r in &rows {
                        t.push_str(&csv_line(&[r.k.to_string(), r.sum_powers.clone(), r.zeta_oracle.clone(), r.matches.to_string()]));
                    }
                    t
                },
            );
            match rows.iter().find(|r| !r.matches) {
                None => Ok(Outcome::ok(body)),
                Some(r) => Err(Outcome::inconsistent(body, format!("sum_powers({}) differs from the oracle", r.k))),
            }
        }
    }
}

fn limit_output(
    fmt: OutputFormat,
    limit: &EpsilonLimit,
    parameter: &str,
    extra_json: impl FnOnce(&mut Map<String, Value>),
    extra_text: impl FnOnce(&mut String),
) -> String {
    render(
        fmt,
        || {
            let mut t = limit_text(limit, parameter);
            extra_text(&mut t);
            t
        },
        || {
            let mut m = Map::new();
            extra_json(&mut m);
            m.extend(limit_json(limit, parameter));
            Value::Object(m)
        },
        || limit_csv(limit),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        let cli = Cli::try_parse_from(std::iter::once("divsum").chain(args.iter().copied())).unwrap();
        run(&cli, None)
    }

    #[test]
    fn sum_outputs() {
        assert_eq!(run_args(&["sum", "--k", "1"]).stdout, "-1/12\n");
        assert_eq!(run_args(&["sum", "--k", "1", "--alternating"]).stdout, "1/4\n");
        assert_eq!(
            run_args(&["--format", "json", "sum", "--k", "3"]).stdout,
            "{\"k\":3,\"kind\":\"powers_all_plus\",\"value\":\"1/120\",\"method\":\"closed_form\"}\n"
        );
        assert_eq!(run_args(&["sum", "--k", "0"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["sum", "--k", "201"]).code, EXIT_USAGE);
    }

    #[test]
    fn quiet_suppresses_stdout() {
        let o = run_args(&["--quiet", "sum", "--k", "1"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.is_empty());
    }

    #[test]
    fn targets_parse() {
        assert!(matches!("S".parse::<TargetArg>().unwrap().0, Target::S));
        assert!(matches!("jump:cos".parse::<TargetArg>().unwrap().0, Target::Jump(JumpFunction::Cos)));
        assert!("jump:tan".parse::<TargetArg>().is_err());
    }

    #[test]
    fn quad_tol_env() {
        assert_eq!(numerics(Some("1e-8")).unwrap().quad.abs_tol, 1e-8);
        assert!(numerics(Some("-1")).is_err());
        assert!(numerics(Some("abc")).is_err());
        assert_eq!(numerics(None).unwrap(), Numerics::default());
    }

    #[test]
    fn casimir_json_shape() {
        let o = run_args(&["--format", "json", "casimir", "--d", "1"]);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["units"], "natural");
        assert_eq!(v["energy"], json!(-0.1308996939));
        assert_eq!(v["force"], json!(0.1308996939));
    }
}
