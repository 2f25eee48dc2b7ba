//! Deterministic report construction and emission.
//!
//! Reports are byte-identical across reruns with the same inputs and seeds:
//! JSON objects are emitted with sorted keys, rationals as exact `num/den`
//! strings, complex scalars as `{"re", "im"}` pairs, and the only "timing"
//! data are deterministic work counters, never wall-clock readings.

use crate::error::Result;
use crate::kohn::{ChainRun, ChainStatus, ClosureEvent};
use crate::poly::HermitianPolynomial;
use crate::rational::GaussianRational;
use num_complex::Complex64;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "text" => Ok(ReportFormat::Text),
            other => Err(format!("unknown format '{other}' (expected json|text)")),
        }
    }
}

/// One command's deterministic output.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub input: Value,
    pub results: Value,
    pub warnings: Vec<String>,
    pub counters: BTreeMap<String, u64>,
    /// Exit code the CLI should use; nonzero for reports that carry a
    /// partial result after a budget abort.
    pub exit_code: i32,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            input: Value::Object(Map::new()),
            results: Value::Object(Map::new()),
            warnings: Vec::new(),
            counters: BTreeMap::new(),
            exit_code: 0,
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "input": self.input,
            "results": self.results,
            "warnings": self.warnings,
            "counters": self.counters,
        })
    }
}

/// Serialize a report; JSON is machine-stable, text is a readable rendering
/// of the same data.
pub fn emit_report(report: &Report, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_value())
                .map_err(|e| crate::error::Error::Internal(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        ReportFormat::Text => Ok(render_text(report)),
    }
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_value(val, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {val}\n")),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_value(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {item}\n")),
                }
            }
        }
        other => out.push_str(&format!("{pad}{other}\n")),
    }
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("command: {}\n", report.command));
    out.push_str("input:\n");
    render_value(&report.input, 1, &mut out);
    out.push_str("results:\n");
    render_value(&report.results, 1, &mut out);
    if !report.warnings.is_empty() {
        out.push_str("warnings:\n");
        for w in &report.warnings {
            out.push_str(&format!("  - {w}\n"));
        }
    }
    if !report.counters.is_empty() {
        out.push_str("counters:\n");
        for (k, v) in &report.counters {
            out.push_str(&format!("  {k}: {v}\n"));
        }
    }
    out
}

pub fn poly_value(p: &HermitianPolynomial) -> Value {
    Value::String(p.to_string())
}

pub fn rational_value(g: &GaussianRational) -> Value {
    json!({"re": g.re_string(), "im": g.im_string()})
}

pub fn complex_value(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

pub fn point_value(p: &[Complex64]) -> Value {
    Value::Array(p.iter().map(|z| complex_value(*z)).collect())
}

pub fn closure_event_value(ev: &ClosureEvent) -> Value {
    match ev {
        ClosureEvent::ConjugateAdded { source, added } => json!({
            "rule": "conjugate",
            "source": poly_value(source),
            "added": poly_value(added),
        }),
        ClosureEvent::SosSplit {
            source,
            negated,
            parts,
        } => json!({
            "rule": "sum-of-squares-split",
            "source": poly_value(source),
            "negated": negated,
            "parts": parts
                .iter()
                .map(|(c, f)| json!({
                    "coefficient": crate::rational::rational_string(c),
                    "factor": poly_value(f),
                }))
                .collect::<Vec<_>>(),
        }),
        ClosureEvent::DegreeCapDropped { dropped, degree } => json!({
            "rule": "degree-cap-drop",
            "dropped": poly_value(dropped),
            "degree": degree,
        }),
    }
}

/// Full replayable chain trace: rows, minors, closure events, witness.
pub fn chain_value(run: &ChainRun) -> Value {
    let state = &run.state;
    let steps: Vec<Value> = run
        .trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "h": s.h,
                "rows_added": s.rows_added.iter().map(|(i, prov, coeffs)| json!({
                    "index": i,
                    "provenance": prov.label(),
                    "coefficients": coeffs.iter().map(poly_value).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "minors": s.minors.iter().map(|m| json!({
                    "rows": m.rows,
                    "cols": m.cols,
                    "value": poly_value(&m.value),
                })).collect::<Vec<_>>(),
                "closure_events": s.closure_events.iter().map(closure_event_value).collect::<Vec<_>>(),
                "generators_after": s.generators_after.iter().map(poly_value).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut v = json!({
        "q": run.trace.q,
        "minor_size": run.trace.minor_size,
        "status": state.status.label(),
        "h": state.h,
        "generators": state.ideal.generators.iter().map(poly_value).collect::<Vec<_>>(),
        "steps": steps,
        "heuristic_fired": run.trace.heuristic_fired,
    });
    if let Some(step) = state.status.step() {
        v["status_step"] = json!(step);
    }
    if matches!(state.status, ChainStatus::Stuck(_)) {
        v["note"] = Value::String(
            "stuck modulo the implemented radical closure (conjugation + sum-of-squares split)"
                .to_string(),
        );
    }
    if let Some(w) = &run.trace.one_witness {
        v["one_witness"] = Value::Array(w.iter().map(poly_value).collect());
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keys_are_sorted_and_stable() {
        let mut r = Report::new("demo");
        r.input = json!({"zeta": 1, "alpha": 2});
        r.counters.insert("steps".into(), 3);
        let a = emit_report(&r, ReportFormat::Json).unwrap();
        let b = emit_report(&r, ReportFormat::Json).unwrap();
        assert_eq!(a, b);
        let alpha = a.find("\"alpha\"").unwrap();
        let zeta = a.find("\"zeta\"").unwrap();
        assert!(alpha < zeta, "keys must serialize sorted");
    }

    #[test]
    fn text_mode_renders_nested_values() {
        let mut r = Report::new("demo");
        r.results = json!({"list": [1, 2], "flag": true});
        let t = emit_report(&r, ReportFormat::Text).unwrap();
        assert!(t.contains("command: demo"));
        assert!(t.contains("- 1"));
        assert!(t.contains("flag: true"));
    }
}
