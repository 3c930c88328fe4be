use std::fmt::Write as _;
use std::path::Path;

use crate::config::Format;
use crate::error::{CliError, CliResult};
use crate::report::Report;

fn status_name(r: &crate::report::CheckRecord) -> String {
    serde_json::to_value(r.status).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn compact(v: &impl serde::Serialize) -> CliResult<String> {
    serde_json::to_string(v).map_err(|e| CliError::Serialize(e.to_string()))
}

pub fn to_json(report: &Report) -> CliResult<String> {
    let mut text = serde_json::to_string_pretty(report).map_err(|e| CliError::Serialize(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

/// One row per record; `params` and `payload` are compact JSON.
pub fn to_csv(report: &Report) -> CliResult<String> {
    let timings = report.records.iter().any(|r| r.wall_time_ms.is_some());
    let mut w = csv::Writer::from_writer(Vec::new());
    let ser = |e: csv::Error| CliError::Serialize(e.to_string());
    let mut header = vec!["id", "suite", "status", "params", "payload"];
    if timings {
        header.push("wall_time_ms");
    }
    w.write_record(&header).map_err(ser)?;
    for r in &report.records {
        let mut row = vec![r.id.clone(), r.suite.name().to_string(), status_name(r), compact(&r.params)?, compact(&r.payload)?];
        if timings {
            row.push(r.wall_time_ms.map(|t| format!("{t:.3}")).unwrap_or_default());
        }
        w.write_record(&row).map_err(ser)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Serialize(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Serialize(e.to_string()))
}

pub fn to_markdown(report: &Report) -> CliResult<String> {
    let mut s = String::new();
    let suite = report.suite.map(|s| s.name()).unwrap_or("none");
    let sum = &report.summary;
    let _ = writeln!(s, "# Verification report\n");
    let _ = writeln!(s, "suite `{suite}`, seed {}, order {}, schema {}\n", report.seed, report.order, report.schema_version);
    let _ = writeln!(s, "| total | passed | failed | budget exceeded |\n|---|---|---|---|");
    let _ = writeln!(s, "| {} | {} | {} | {} |\n", sum.total, sum.passed, sum.failed, sum.budget_exceeded);
    if report.records.is_empty() {
        return Ok(s);
    }
    let _ = writeln!(s, "| check | status | payload |\n|---|---|---|");
    for r in &report.records {
        let payload = compact(&r.payload)?.replace('|', "\\|");
        let _ = writeln!(s, "| `{}` | {} | `{payload}` |", r.id, status_name(r));
    }
    Ok(s)
}

pub fn render(report: &Report, format: Format) -> CliResult<String> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(report),
        Format::Markdown => to_markdown(report),
    }
}

/// Renders `report` and writes it to `out` when given; returns the text.
pub fn emit(report: &Report, format: Format, out: Option<&Path>) -> CliResult<String> {
    let text = render(report, format)?;
    if let Some(path) = out {
        std::fs::write(path, &text)?;
    }
    Ok(text)
}
