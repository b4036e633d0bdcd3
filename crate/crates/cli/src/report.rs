//! Report assembly and rendering.
//!
//! The JSON form is self-contained: every ray witness carries its cone
//! normals, so [`verify_report`] can re-check `Fails` verdicts from the
//! report text alone.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Map, Value};

use pwa_bounds_core::certify::{Certificate, Quantity, Scope, Verdict, Witness};
use pwa_bounds_core::numeric::{format_rational, parse_rational, Rational};
use pwa_bounds_core::polyhedra::Norm;

use crate::InputError;

pub const TOOL: &str = "pwa-bounds";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

/// One scripted expectation of a fixture run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    pub fn new(label: impl Into<String>, expected: impl Into<String>, actual: impl Into<String>) -> Self {
        let (expected, actual) = (expected.into(), actual.into());
        Check {
            label: label.into(),
            pass: expected == actual,
            expected,
            actual,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub seed: u64,
    pub norm: String,
    pub summary: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analysis: Option<Value>,
    pub certificates: Vec<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(skip)]
    verdicts: Vec<Verdict>,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64, norm: Norm) -> Self {
        Report {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            command: command.into(),
            inputs: Vec::new(),
            seed,
            norm: norm.tag().to_string(),
            summary: Vec::new(),
            analysis: None,
            certificates: Vec::new(),
            checks: Vec::new(),
            verdicts: Vec::new(),
        }
    }

    pub fn input(&mut self, name: &str, sha256: &str) {
        self.inputs.push(InputDigest {
            name: name.to_string(),
            sha256: sha256.to_string(),
        });
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.summary.push(text.into());
    }

    pub fn push(&mut self, cert: &Certificate) {
        collect_verdicts(cert, &mut self.verdicts);
        self.certificates.push(certificate_json(cert));
    }

    /// True when any certificate, including nested parts, reports `Fails`.
    pub fn any_fails(&self) -> bool {
        self.verdicts.contains(&Verdict::Fails)
    }

    pub fn first_divergence(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.tool, self.version, self.command);
        for input in &self.inputs {
            let _ = writeln!(out, "input {} sha256 {}", input.name, input.sha256);
        }
        let _ = writeln!(out, "seed {} norm {}", self.seed, self.norm);
        for line in &self.summary {
            let _ = writeln!(out, "{line}");
        }
        if let Some(analysis) = &self.analysis {
            let _ = writeln!(out, "analysis:");
            render_value(&mut out, analysis, 1);
        }
        for cert in &self.certificates {
            render_certificate(&mut out, cert, 0);
        }
        for check in &self.checks {
            let mark = if check.pass { "ok" } else { "MISMATCH" };
            let _ = writeln!(
                out,
                "check {mark}: {} expected {} actual {}",
                check.label, check.expected, check.actual
            );
        }
        out
    }
}

fn collect_verdicts(cert: &Certificate, out: &mut Vec<Verdict>) {
    out.push(cert.verdict);
    for part in &cert.parts {
        collect_verdicts(part, out);
    }
}

pub fn rational_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

pub fn matrix_json(rows: &[Vec<Rational>]) -> Value {
    Value::Array(rows.iter().map(|r| vector_json(r)).collect())
}

pub fn quantity_json(q: &Quantity) -> Value {
    match q {
        Quantity::Finite(r) => rational_json(r),
        Quantity::NegInfinity => json!("-inf"),
        Quantity::PosInfinity => json!("inf"),
        Quantity::Flag(b) => json!(b),
        Quantity::Index(i) => json!(i),
        Quantity::Indices(is) => json!(is),
    }
}

fn scope_json(scope: &Option<Scope>) -> Value {
    match scope {
        None => Value::Null,
        Some(Scope::Global) => json!({"kind": "global"}),
        Some(Scope::StrictSublevel(rho)) => json!({"kind": "strict_sublevel", "rho": rational_json(rho)}),
        Some(Scope::GivenSet) => json!({"kind": "given_set"}),
    }
}

pub fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Ray {
            direction,
            base,
            inside,
            outside,
            samples,
        } => json!({
            "kind": "ray",
            "direction": vector_json(direction),
            "base": base.as_deref().map_or(Value::Null, vector_json),
            "inside": matrix_json(inside),
            "outside": outside.iter().map(|c| matrix_json(c)).collect::<Vec<_>>(),
            "samples": samples
                .iter()
                .map(|(l, r)| json!({"lambda": rational_json(l), "ratio": rational_json(r)}))
                .collect::<Vec<_>>(),
        }),
        Witness::Point { point, ratio } => json!({
            "kind": "point",
            "point": vector_json(point),
            "ratio": ratio.as_ref().map_or(Value::Null, rational_json),
        }),
        Witness::Sequence(items) => json!({
            "kind": "sequence",
            "points": items
                .iter()
                .map(|(p, r)| json!({"point": vector_json(p), "ratio": rational_json(r)}))
                .collect::<Vec<_>>(),
        }),
    }
}

pub fn certificate_json(cert: &Certificate) -> Value {
    let derived: Map<String, Value> = cert
        .derived
        .iter()
        .map(|(k, q)| (k.clone(), quantity_json(q)))
        .collect();
    json!({
        "theorem": cert.theorem.tag(),
        "verdict": cert.verdict.tag(),
        "scope": scope_json(&cert.scope),
        "condition_met": cert.condition_met,
        "derived": derived,
        "notes": cert.notes,
        "witnesses": cert.witnesses.iter().map(witness_json).collect::<Vec<_>>(),
        "parts": cert.parts.iter().map(certificate_json).collect::<Vec<_>>(),
    })
}

fn parse_vector(v: &Value) -> Result<Vec<Rational>, InputError> {
    v.as_array()
        .ok_or_else(|| InputError::new("expected an array of rationals"))?
        .iter()
        .map(|x| {
            let text = x.as_str().ok_or_else(|| InputError::new("expected a rational string"))?;
            parse_rational(text).map_err(InputError::from)
        })
        .collect()
}

fn parse_matrix(v: &Value) -> Result<Vec<Vec<Rational>>, InputError> {
    v.as_array()
        .ok_or_else(|| InputError::new("expected a matrix"))?
        .iter()
        .map(parse_vector)
        .collect()
}

/// Rebuilds a ray witness from its JSON form.
pub fn parse_ray(v: &Value) -> Result<Witness, InputError> {
    if v["kind"] != "ray" {
        return Err(InputError::new("not a ray witness"));
    }
    let base = match &v["base"] {
        Value::Null => None,
        b => Some(parse_vector(b)?),
    };
    let outside = v["outside"]
        .as_array()
        .ok_or_else(|| InputError::new("expected outside cones"))?
        .iter()
        .map(parse_matrix)
        .collect::<Result<_, _>>()?;
    Ok(Witness::Ray {
        direction: parse_vector(&v["direction"])?,
        base,
        inside: parse_matrix(&v["inside"])?,
        outside,
        samples: Vec::new(),
    })
}

/// Outcome of re-checking the witnesses of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WitnessCheck {
    pub failing_certificates: usize,
    pub rays_checked: usize,
    pub all_valid: bool,
}

/// Re-verifies every ray witness in a JSON report and requires each
/// `fails` certificate to carry at least one valid ray.
pub fn verify_report(report: &Value) -> Result<WitnessCheck, InputError> {
    let mut check = WitnessCheck {
        all_valid: true,
        ..WitnessCheck::default()
    };
    let certs = report["certificates"]
        .as_array()
        .ok_or_else(|| InputError::new("report has no certificates array"))?;
    for cert in certs {
        verify_certificate(cert, &mut check)?;
    }
    Ok(check)
}

fn verify_certificate(cert: &Value, check: &mut WitnessCheck) -> Result<(), InputError> {
    let mut valid_rays = 0;
    for w in cert["witnesses"].as_array().into_iter().flatten() {
        if w["kind"] == "ray" {
            check.rays_checked += 1;
            if parse_ray(w)?.verify() {
                valid_rays += 1;
            } else {
                check.all_valid = false;
            }
        }
    }
    if cert["verdict"] == "fails" {
        check.failing_certificates += 1;
        if valid_rays == 0 {
            check.all_valid = false;
        }
    }
    for part in cert["parts"].as_array().into_iter().flatten() {
        verify_certificate(part, check)?;
    }
    Ok(())
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".to_string(),
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(scalar_text).collect();
            format!("({})", inner.join(", "))
        }
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(|x| !matches!(x, Value::Object(_))),
        _ => true,
    }
}

fn render_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_flat(x) {
                    let _ = writeln!(out, "{pad}{k}: {}", scalar_text(x));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    render_value(out, x, depth + 1);
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                if is_flat(x) {
                    let _ = writeln!(out, "{pad}[{i}] {}", scalar_text(x));
                } else {
                    let _ = writeln!(out, "{pad}[{i}]");
                    render_value(out, x, depth + 1);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar_text(other));
        }
    }
}

fn render_certificate(out: &mut String, cert: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    let scope = match &cert["scope"] {
        Value::Null => String::new(),
        s if s["kind"] == "strict_sublevel" => format!(" scope strict_sublevel(rho = {})", scalar_text(&s["rho"])),
        s => format!(" scope {}", scalar_text(&s["kind"])),
    };
    let met = match &cert["condition_met"] {
        Value::Bool(b) => format!(" condition_met {b}"),
        _ => String::new(),
    };
    let _ = writeln!(
        out,
        "{pad}[{}] {}{scope}{met}",
        scalar_text(&cert["theorem"]),
        scalar_text(&cert["verdict"])
    );
    if let Some(map) = cert["derived"].as_object() {
        for (k, x) in map {
            let _ = writeln!(out, "{pad}  {k} = {}", scalar_text(x));
        }
    }
    for note in cert["notes"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "{pad}  note: {}", scalar_text(note));
    }
    for w in cert["witnesses"].as_array().into_iter().flatten() {
        match w["kind"].as_str() {
            Some("ray") => {
                let _ = writeln!(
                    out,
                    "{pad}  witness ray direction {} base {}",
                    scalar_text(&w["direction"]),
                    scalar_text(&w["base"])
                );
                for s in w["samples"].as_array().into_iter().flatten() {
                    let _ = writeln!(
                        out,
                        "{pad}    lambda {} ratio {}",
                        scalar_text(&s["lambda"]),
                        scalar_text(&s["ratio"])
                    );
                }
            }
            Some("point") => {
                let _ = writeln!(
                    out,
                    "{pad}  witness point {} ratio {}",
                    scalar_text(&w["point"]),
                    scalar_text(&w["ratio"])
                );
            }
            _ => {
                for p in w["points"].as_array().into_iter().flatten() {
                    let _ = writeln!(
                        out,
                        "{pad}  sample {} ratio {}",
                        scalar_text(&p["point"]),
                        scalar_text(&p["ratio"])
                    );
                }
            }
        }
    }
    for part in cert["parts"].as_array().into_iter().flatten() {
        render_certificate(out, part, depth + 1);
    }
}
