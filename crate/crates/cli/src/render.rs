use std::collections::BTreeMap;
use std::fmt::Write;

use serde_json::Value;

use crate::config::Format;
use crate::report::{Report, Verdict};
use crate::CliError;

pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(report),
        Format::Markdown => Ok(to_markdown(report)),
    }
}

pub fn to_json(report: &Report) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

/// Degree sequences as `n,degree,witnesses,consensus`; any other report as
/// one row per record.
pub fn to_csv(report: &Report) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let sequences: Vec<_> = report.records.iter().filter(|r| r.id.ends_with(".sequence")).collect();
    if sequences.is_empty() {
        w.write_record(["id", "verdict", "paper_ref"])?;
        for r in &report.records {
            w.write_record([r.id.as_str(), verdict_name(r.verdict), r.paper_ref.as_str()])?;
        }
    } else {
        w.write_record(["n", "degree", "witnesses", "consensus"])?;
        for r in sequences {
            for row in rows(&r.data) {
                let field = |k: &str| row.get(k).map(cell).unwrap_or_default();
                w.write_record([field("n"), field("degree"), field("witnesses"), field("consensus")])?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Exploratory => "exploratory",
    }
}

fn rows(data: &Value) -> &[Value] {
    data.get("rows")
        .and_then(Value::as_array)
        .map(Vec::as_slice)
        .unwrap_or(&[])
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => format!("{x:.6}"),
            _ => n.to_string(),
        },
        other => other.to_string(),
    }
}

/// Sections grouped by q. Records carrying a `rows` table get it printed
/// under the summary.
pub fn to_markdown(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# invdeg report\n");
    let _ = writeln!(
        out,
        "schema {}, tool {}, seed {}, {} ms\n",
        report.version.schema, report.version.tool, report.config.seed, report.timing.elapsed_ms
    );
    let mut groups: BTreeMap<Option<u64>, Vec<_>> = BTreeMap::new();
    for r in &report.records {
        groups.entry(r.q()).or_default().push(r);
    }
    for (q, records) in groups {
        match q {
            Some(q) => {
                let _ = writeln!(out, "## q = {q}\n");
            }
            None => {
                let _ = writeln!(out, "## other\n");
            }
        }
        let _ = writeln!(out, "| id | verdict | statement |\n|---|---|---|");
        for r in &records {
            let _ = writeln!(
                out,
                "| {} | {} | {} |",
                r.id,
                verdict_name(r.verdict),
                r.paper_ref.replace('|', "\\|")
            );
        }
        out.push('\n');
        for r in records.iter().filter(|r| !rows(&r.data).is_empty()) {
            let table = rows(&r.data);
            let cols: Vec<&String> = match &table[0] {
                Value::Object(m) => m.keys().collect(),
                _ => continue,
            };
            let _ = writeln!(out, "### {}\n", r.id);
            if let Some(d) = r.data.get("delta").and_then(Value::as_f64) {
                let _ = writeln!(out, "delta = {d:.10}\n");
            }
            let head: Vec<&str> = cols.iter().map(|c| c.as_str()).collect();
            let _ = writeln!(out, "| {} |", head.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(cols.len()));
            for row in table {
                let cells: Vec<String> = cols
                    .iter()
                    .map(|c| row.get(c.as_str()).map(cell).unwrap_or_default())
                    .collect();
                let _ = writeln!(out, "| {} |", cells.join(" | "));
            }
            out.push('\n');
        }
    }
    out
}
