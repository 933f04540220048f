use std::fmt::Write;

use obtower_core::{Budget, Error};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const TOOL_NAME: &str = "obtower";

#[derive(Clone, Debug, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorObject {
    /// `validation` or `budget`.
    pub class: &'static str,
    pub message: String,
}

impl ErrorObject {
    pub fn from_error(e: &Error) -> Self {
        ErrorObject { class: if e.is_budget() { "budget" } else { "validation" }, message: e.to_string() }
    }

    pub fn exit_code(&self) -> i32 {
        if self.class == "budget" {
            3
        } else {
            2
        }
    }
}

/// Wall-clock figures; the only part of a report that varies between runs.
#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: ToolInfo,
    pub schema: u32,
    pub kind: String,
    /// SHA-256 of the problem input.
    pub input_hash: String,
    pub input: Value,
    pub budget: Budget,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorObject>,
    /// SHA-256 of this report with `content_hash` and `timing` left out.
    pub content_hash: String,
    pub timing: Timing,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Report {
    pub fn new(
        kind: &str,
        schema: u32,
        input_hash: String,
        input: Value,
        budget: Budget,
        outcome: Result<Value, ErrorObject>,
        timing: Timing,
    ) -> Self {
        let (status, result, error) = match outcome {
            Ok(v) => ("ok", Some(v), None),
            Err(e) => ("error", None, Some(e)),
        };
        let mut report = Report {
            tool: ToolInfo { name: TOOL_NAME, version: env!("CARGO_PKG_VERSION") },
            schema,
            kind: kind.to_string(),
            input_hash,
            input,
            budget,
            status,
            result,
            error,
            content_hash: String::new(),
            timing,
        };
        let mut body = serde_json::to_value(&report).expect("reports serialize");
        let map = body.as_object_mut().expect("report is an object");
        map.remove("content_hash");
        map.remove("timing");
        report.content_hash = sha256_hex(body.to_string().as_bytes());
        report
    }

    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, ErrorObject::exit_code)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}  kind: {}  input: {}", self.tool.name, self.tool.version, self.kind, &self.input_hash[..16]);
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error ({}): {}", e.class, e.message);
            return out;
        }
        let r = self.result.as_ref().expect("ok reports carry a result");
        let body = match self.kind.as_str() {
            "tower" => tower_text(r),
            "reciprocity" => reciprocity_text(r),
            "cohomology" => cohomology_text(r),
            "lie" => lie_text(r),
            "simplicial-check" => simplicial_text(r),
            "selftest" => selftest_text(r),
            _ => String::new(),
        };
        out.push_str(&body);
        out
    }
}

/// Formats rows as left-aligned columns under a header.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    out.push_str(&line(widths.iter().map(|&w| "-".repeat(w)).collect()));
    for row in rows {
        out.push_str(&line(row.clone()));
    }
    out
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn invariants(v: &Value) -> String {
    match v.as_array() {
        Some(a) if a.is_empty() => "0".into(),
        Some(a) => a.iter().map(|x| format!("Z/{x}")).collect::<Vec<_>>().join(" + "),
        None => cell(v),
    }
}

fn tower_text(r: &Value) -> String {
    let lift = &r["lift"];
    let rows: Vec<Vec<String>> = lift["levels"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|l| {
            vec![
                cell(&l["level"]),
                invariants(&l["kernel_factors"]),
                invariants(&l["h2_invariants"]),
                cell(&l["obstruction"]),
                if l["obstruction_zero"] == Value::Bool(true) { "0".into() } else { "nonzero".into() },
                cell(&l["lift_class_count"]),
                cell(&l["verified"]),
            ]
        })
        .collect();
    let mut out = format!("level orders {}  start level {}\n", r["level_orders"], lift["start_level"]);
    out.push_str(&table(&["level", "kernel", "H^2", "class", "obstruction", "lift classes", "verified"], &rows));
    let status = match lift["blocked_at"].as_u64() {
        Some(b) => format!("blocked at level {b}\n"),
        None => "full lift\n".into(),
    };
    out.push_str(&status);
    if let Some(entries) = r["e1_page"]["entries"].as_array() {
        let rows: Vec<Vec<String>> = entries
            .iter()
            .map(|e| {
                let value = match e["value"]["status"].as_str() {
                    Some("group") => invariants(&e["value"]["invariants"]),
                    Some("forced_zero") => "0 (forced)".into(),
                    _ => cell(&e["value"]["reason"]),
                };
                vec![cell(&e["s"]), cell(&e["t"]), cell(&e["degree"]), value]
            })
            .collect();
        out.push_str("\nE1 page\n");
        out.push_str(&table(&["s", "t", "degree", "value"], &rows));
    }
    out
}

fn reciprocity_text(r: &Value) -> String {
    let rows: Vec<Vec<String>> = r["degrees"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|d| vec![cell(&d["degree"]), invariants(&d["global"]), invariants(&d["adelic"]), invariants(&d["compact_support"])])
        .collect();
    let mut out = table(&["degree", "H", "adelic", "H_c"], &rows);
    let _ = writeln!(out, "long exact sequence exact: {}", r["les"]["exact"]);
    for c in r["reciprocity"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "reciprocity {} -> {} (vanishes: {})", c["local"], c["class"], c["vanishes"]);
    }
    out
}

fn cohomology_text(r: &Value) -> String {
    let rows: Vec<Vec<String>> = r["cohomology"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|d| vec![cell(&d["degree"]), invariants(&d["invariants"]), cell(&d["order"]), cell(&d["cocycles"])])
        .collect();
    table(&["degree", "H^n", "order", "cocycles"], &rows)
}

fn lie_text(r: &Value) -> String {
    if r["mode"] == "ls" {
        let rows: Vec<Vec<String>> = r["weights"]
            .as_object()
            .into_iter()
            .flatten()
            .map(|(w, d)| (w.parse::<i64>().unwrap_or(0), vec![w.clone(), cell(d)]))
            .collect::<std::collections::BTreeMap<_, _>>()
            .into_values()
            .collect();
        let mut out = format!("m_max {}  s {}  lambda weight {}\n", r["m_max"], r["s"], r["lambda_weight"]);
        out.push_str(&table(&["weight", "dim"], &rows));
        let _ = writeln!(out, "all weights positive: {}", r["positive_weights"]);
        out
    } else {
        let rows: Vec<Vec<String>> = r["degrees"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|d| vec![cell(&d["degree"]), cell(&d["hall"]), cell(&d["witt"]), cell(&d["agree"])])
            .collect();
        table(&["degree", "hall", "witt", "agree"], &rows)
    }
}

fn simplicial_text(r: &Value) -> String {
    let mut rows = Vec::new();
    for c in r["explicit"].as_array().into_iter().flatten() {
        rows.push(vec![cell(&c["label"]), "1".into(), if c["pass"] == Value::Bool(true) { "1" } else { "0" }.into()]);
    }
    for suite in ["extensions", "abelian_inputs", "bisimplicial"] {
        let s = &r["suites"][suite];
        rows.push(vec![suite.into(), cell(&s["total"]), cell(&s["passed"])]);
    }
    let mut out = format!("truncation {}  seed {}\n", r["truncation"], r["seed"]);
    out.push_str(&table(&["check", "cases", "passed"], &rows));
    out
}

fn selftest_text(r: &Value) -> String {
    let rows: Vec<Vec<String>> = r["checks"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|c| vec![cell(&c["name"]), if c["pass"] == Value::Bool(true) { "pass" } else { "FAIL" }.into()])
        .collect();
    table(&["check", "result"], &rows)
}
