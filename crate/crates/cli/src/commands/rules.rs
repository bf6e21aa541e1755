use super::kind;
use crate::args::RulesArgs;
use crate::error::CliError;
use crate::output::{Output, Style};
use crate::source::Loaded;
use hfskit_core::hierarchy::{rule_count_actual, rule_count_flat, rule_count_serial_hfs};
use serde_json::{json, Value};
use std::fmt::Write;

pub fn rules(args: &RulesArgs, style: Style) -> Result<Output, CliError> {
    match &args.system {
        None => formula(args.n.unwrap_or_default(), args.m.unwrap_or_default(), style),
        Some(path) => actual(&Loaded::open(path)?, args.name.as_deref(), style),
    }
}

/// JSON numbers stop at u64; larger counts are emitted as decimal strings.
fn count(c: u128) -> Value {
    u64::try_from(c).map(Value::from).unwrap_or_else(|_| Value::String(c.to_string()))
}

fn formula(n: u32, m: u64, style: Style) -> Result<Output, CliError> {
    let flat = rule_count_flat(n, m)?;
    let serial = rule_count_serial_hfs(n, m)?;
    let results = json!({"mode": "formula", "n": n, "m": m, "flat": count(flat), "serial_hfs": count(serial)});
    let text = format!("n = {n}, m = {m}\nflat        {}\nserial hfs  {}\n", style.bold(&flat.to_string()), style.bold(&serial.to_string()));
    Ok(Output::new(results, text))
}

fn actual(loaded: &Loaded, name: Option<&str>, style: Style) -> Result<Output, CliError> {
    let (name, target) = loaded.target(name)?;
    let h = target.to_hierarchy();
    let counts = rule_count_actual(&h);

    // Closed forms over the same external inputs, when every input has the same term count.
    let term_counts: Vec<u64> = h
        .external_inputs()
        .iter()
        .filter_map(|v| h.subsystems().iter().find_map(|s| s.input(v)))
        .map(|v| v.terms().len() as u64)
        .collect();
    let n = term_counts.len() as u32;
    let formulas = match term_counts.first() {
        Some(&m) if term_counts.iter().all(|&t| t == m) => json!({
            "n": n,
            "m": m,
            "flat": rule_count_flat(n, m).ok().map(count),
            "serial_hfs": rule_count_serial_hfs(n, m).ok().map(count),
        }),
        _ => Value::Null,
    };

    let results = json!({
        "mode": "actual",
        "system": name,
        "kind": kind(&target),
        "per_subsystem": counts.per_subsystem,
        "total": counts.total,
        "empty": counts.empty,
        "formulas": formulas,
    });

    let mut text = String::new();
    for c in &counts.per_subsystem {
        writeln!(text, "layer {}  {:<12} {:>6}", c.layer, c.subsystem, c.rules).unwrap();
    }
    writeln!(text, "total             {:>6}", style.bold(&counts.total.to_string())).unwrap();
    for e in &counts.empty {
        writeln!(text, "{}", style.warn(&format!("warning: `{e}` has no rules"))).unwrap();
    }
    if !formulas.is_null() {
        let show = |v: &Value| match v {
            Value::Null => "n/a".to_string(),
            Value::String(s) => s.clone(),
            v => v.to_string(),
        };
        writeln!(
            text,
            "formulas (n = {n}, m = {}): flat {}, serial hfs {}",
            formulas["m"],
            show(&formulas["flat"]),
            show(&formulas["serial_hfs"])
        )
        .unwrap();
    }
    let mut out = Output::new(results, text);
    out.warnings = loaded.warnings();
    Ok(out)
}
