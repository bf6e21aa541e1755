use super::index::IndexChoice;
use crate::args::CompareArgs;
use crate::error::CliError;
use crate::output::{fixed, Output, Style};
use crate::source::{split_locator, Loaded};
use hfskit_core::batch::{disagreement, grid_points, Execution};
use hfskit_core::dsl::Target;
use hfskit_core::interpretability::compare as compare_systems;
use serde_json::json;
use std::fmt::Write;
use std::path::Path;

/// Refuse grids beyond this many points.
const MAX_GRID_POINTS: f64 = 5e6;

pub fn compare(args: &CompareArgs, style: Style) -> Result<Output, CliError> {
    let (flat_file, flat_id) = split_locator(&args.flat)?;
    let (hfs_file, hfs_id) = split_locator(&args.hfs)?;
    let flat_src = Loaded::open(Path::new(flat_file))?;
    let hfs_src = Loaded::open(Path::new(hfs_file))?;
    let flat = match flat_src.target(Some(flat_id))?.1 {
        Target::Flat(s) => s,
        Target::Hierarchy(_) => return Err(CliError::invalid(format!("`{flat_id}` is a hierarchy, --flat needs a flat system"))),
    };
    let hfs = hfs_src.target(Some(hfs_id))?.1.to_hierarchy();
    let choice = IndexChoice::from_options(&args.index)?;
    let report = compare_systems(flat, &hfs, choice.weights.as_deref(), choice.source())?;

    let grid = match args.grid {
        None => None,
        Some(step) => {
            if !(step.is_finite() && step > 0.0) {
                return Err(CliError::invalid(format!("grid step must be positive, got {step}")));
            }
            let estimate: f64 = flat.inputs().iter().map(|v| ((v.domain().1 - v.domain().0) / step).ceil() + 1.0).product();
            if estimate > MAX_GRID_POINTS {
                return Err(CliError::invalid(format!("grid step {step} gives about {estimate:.0} points; use a coarser step")));
            }
            let vars: Vec<_> = flat.inputs().iter().collect();
            let points = grid_points(&vars, step);
            let exec = if args.parallel { Execution::Parallel } else { Execution::Sequential };
            Some(disagreement(flat, &hfs, &points, exec))
        }
    };

    let results = json!({"comparison": report, "grid_step": args.grid, "disagreement": grid});

    let mut text = String::new();
    writeln!(text, "{:<14} {:>12} {:>12}", "", report.flat_system, report.hfs_system).unwrap();
    writeln!(text, "{:<14} {:>12} {:>12}", "rules", report.flat_rules, report.hfs_rules).unwrap();
    writeln!(text, "{:<14} {:>12} {:>12}", "HFSi", fixed(report.flat_hfsi), fixed(report.hfs_hfsi)).unwrap();
    writeln!(text, "reduction      {}%", style.bold(&fixed(report.reduction_percent))).unwrap();
    if let Some(d) = &grid {
        writeln!(
            text,
            "disagreement   mean {} max {} over {} points, {} label mismatches, {} failures",
            fixed(d.mean_abs),
            fixed(d.max_abs),
            d.points,
            d.label_mismatches,
            d.failures
        )
        .unwrap();
    }
    let mut out = Output::new(results, text);
    out.warnings = flat_src.warnings();
    out.warnings.extend(hfs_src.warnings());
    Ok(out)
}
