use crate::args::PlotArgs;
use crate::error::CliError;
use crate::output::{fixed, Output};
use crate::source::Loaded;
use hfskit_core::dsl::Target;
use hfskit_core::system::grid_point;
use hfskit_core::LinguisticVariable;
use serde_json::json;
use std::fmt::Write;

fn find<'a>(target: &Target<'a>, name: &str) -> Option<&'a LinguisticVariable> {
    let systems = match target {
        Target::Flat(s) => std::slice::from_ref(*s),
        Target::Hierarchy(h) => h.subsystems(),
    };
    systems
        .iter()
        .flat_map(|s| s.inputs().iter().chain(std::iter::once(s.output())))
        .find(|v| v.name() == name)
}

pub fn plot(args: &PlotArgs) -> Result<Output, CliError> {
    let loaded = Loaded::open(&args.target.system)?;
    let (system, target) = loaded.target(args.target.name.as_deref())?;
    let var = find(&target, &args.variable)
        .ok_or_else(|| CliError::invalid(format!("`{system}` has no variable `{}`", args.variable)))?;
    if args.samples < 2 {
        return Err(CliError::invalid(format!("--samples must be at least 2, got {}", args.samples)));
    }
    let (lo, hi) = var.domain();
    let rows: Vec<(f64, Vec<f64>)> = (0..args.samples)
        .map(|i| {
            let x = grid_point(lo, hi, args.samples, i);
            (x, var.fuzzify(x))
        })
        .collect();
    let terms: Vec<&str> = var.terms().iter().map(|t| t.name.as_str()).collect();

    let mut csv = format!("x,{}\n", terms.join(","));
    for (x, mu) in &rows {
        let cells: Vec<String> = mu.iter().map(|m| fixed(*m)).collect();
        writeln!(csv, "{},{}", fixed(*x), cells.join(",")).unwrap();
    }
    let results = json!({
        "system": system,
        "variable": var.name(),
        "domain": [lo, hi],
        "terms": terms,
        "rows": rows.iter().map(|(x, mu)| json!({"x": x, "memberships": mu})).collect::<Vec<_>>(),
    });
    let mut out = Output::new(results, csv);
    out.warnings = loaded.warnings();
    Ok(out)
}
