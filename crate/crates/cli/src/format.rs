//! Output formats: plain text, JSON and CSV.
//!
//! Floats carry 12 significant digits, printed in the shortest form that reads
//! back to the rounded value. Exact rationals are strings `"p/q"`.

use std::fmt::Write as _;

use clap::ValueEnum;
use divsum_core::{Complex64, EpsilonLimit};
use serde::Serializer;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

/// `x` rounded to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Shortest decimal form of `round12(x)`.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round12(x);
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r:?}")
}

pub fn json_float(x: f64) -> Value {
    serde_json::Number::from_f64(round12(x)).map_or(Value::Null, Value::Number)
}

pub fn ser_float<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(round12(*x))
    } else {
        s.serialize_none()
    }
}

/// Quotes a CSV field if it contains a separator, quote or newline.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_line(fields: &[String]) -> String {
    let mut line = fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        fmt_float(z.re)
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{}{}{}i", fmt_float(z.re), sign, fmt_float(z.im.abs()))
    }
}

/// JSON fields of an [`EpsilonLimit`]; `parameter` names the ladder variable.
pub fn limit_json(limit: &EpsilonLimit, parameter: &str) -> Map<String, Value> {
    let samples: Vec<Value> = limit
        .samples
        .iter()
        .map(|(p, v)| json!({ parameter: json_float(*p), "value_re": json_float(v.re), "value_im": json_float(v.im) }))
        .collect();
    let mut m = Map::new();
    m.insert("parameter".into(), json!(parameter));
    m.insert("samples".into(), Value::Array(samples));
    m.insert("extrapolated_re".into(), json_float(limit.extrapolated.re));
    m.insert("extrapolated_im".into(), json_float(limit.extrapolated.im));
    m.insert("error_estimate".into(), json_float(limit.error_estimate));
    m.insert("converged".into(), json!(limit.converged));
    m.insert("growth_exponent".into(), limit.growth.map_or(Value::Null, |g| json_float(g.exponent)));
    m.insert("growth_sign".into(), limit.growth.map_or(Value::Null, |g| json_float(g.sign)));
    m
}

/// CSV rows `parameter,value_re,value_im`, one per ladder sample.
pub fn limit_csv(limit: &EpsilonLimit) -> String {
    let mut out = String::from("parameter,value_re,value_im\n");
    for (p, v) in &limit.samples {
        out.push_str(&csv_line(&[fmt_float(*p), fmt_float(v.re), fmt_float(v.im)]));
    }
    out
}

pub fn limit_text(limit: &EpsilonLimit, parameter: &str) -> String {
    let mut out = String::new();
    for (p, v) in &limit.samples {
        let _ = writeln!(out, "{parameter} = {:<14} {}", fmt_float(*p), fmt_complex(*v));
    }
    match limit.growth {
        Some(g) => {
            let sign = if g.sign < 0.0 { "-" } else { "+" };
            let _ = writeln!(out, "diverges: growth exponent {} sign {sign}", fmt_float(g.exponent));
        }
        None => {
            let _ = writeln!(
                out,
                "limit {} (error estimate {}, {})",
                fmt_complex(limit.extrapolated),
                fmt_float(limit.error_estimate),
                if limit.converged { "converged" } else { "not converged" }
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(fmt_float(-std::f64::consts::PI / 24.0), "-0.1308996939");
        assert_eq!(fmt_float(0.25), "0.25");
        assert_eq!(fmt_float(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_float(2.0), "2.0");
        assert_eq!(fmt_float(1.23456789012345e-20), "1.23456789012e-20");
        assert_eq!(fmt_float(-0.0), "0.0");
        assert_eq!(fmt_float(f64::NAN), "NaN");
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("1/12"), "1/12");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_line(&["x".into(), "say \"hi\"".into()]), "x,\"say \"\"hi\"\"\"\n");
    }

    #[test]
    fn json_nonfinite_is_null() {
        assert_eq!(json_float(f64::INFINITY), Value::Null);
        assert_eq!(json_float(0.5), json!(0.5));
    }
}
