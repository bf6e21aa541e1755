use crate::args::ReproduceArgs;
use crate::error::{CliError, Exit};
use crate::output::{Output, Style};
use hfskit_core::cprs::{self, Provenance};
use serde_json::{json, Value};
use std::fmt::Write;

fn show(v: &Value) -> String {
    match v {
        Value::Object(m) if m.values().any(Value::is_object) => m
            .iter()
            .map(|(k, v)| match v {
                Value::Object(_) => format!("{k}={{{}}}", show(v)),
                _ => format!("{k}={}", show(v)),
            })
            .collect::<Vec<_>>()
            .join(" "),
        Value::Number(n) => n.as_f64().map(|x| if x.fract() == 0.0 { n.to_string() } else { format!("{x:.4}") }).unwrap_or_default(),
        Value::Object(m) => m.iter().map(|(k, v)| format!("{k}={}", show(v))).collect::<Vec<_>>().join(" "),
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

pub fn reproduce(args: &ReproduceArgs, style: Style) -> Result<Output, CliError> {
    let report = match &args.bundle_dir {
        None => cprs::reproduce_case_study(),
        Some(dir) => {
            let read = |name: &str| {
                let path = dir.join(name);
                std::fs::read_to_string(&path).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
            };
            let flat = read(cprs::FLAT_FILE)?;
            let hfs = read(cprs::HFS_FILE)?;
            cprs::reproduce_with(&flat, &hfs)
        }
    };

    let mut text = String::new();
    for c in &report.checks {
        let tag = match c.provenance {
            Provenance::Reported => "PAPER",
            Provenance::Derived => "DERIVED",
        };
        let verdict = if c.passed { style.good("PASS") } else { style.bad("FAIL") };
        writeln!(text, "[{verdict}] ({}) {} [{tag}]", c.id, c.name).unwrap();
        writeln!(text, "        expected {}  computed {}", show(&c.expected), show(&c.computed)).unwrap();
        if let Some(e) = &c.error {
            writeln!(text, "        {}", style.bad(e)).unwrap();
        }
    }
    let failed: Vec<&str> = report.failed_checks().map(|c| c.id).collect();
    if failed.is_empty() {
        writeln!(text, "{}", style.good(&format!("all {} checks passed", report.checks.len()))).unwrap();
    } else {
        writeln!(text, "{}", style.bad(&format!("failed: {}", failed.join(", ")))).unwrap();
    }

    let mut out = Output::new(json!(report), text);
    if !report.passed {
        out.exit = Exit::CheckFailed;
    }
    Ok(out)
}
