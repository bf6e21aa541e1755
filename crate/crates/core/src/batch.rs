//! Batch evaluation over many input points.
//!
//! With the `parallel` feature (on by default) [`Execution::Parallel`] fans
//! work out over the rayon pool; without it every call runs sequentially.
//! Results always come back in input order.

use crate::hierarchy::{EvaluationTrace, HierarchicalSystem, HierarchyError};
use crate::error::FuzzyError;
use crate::system::{grid_point, CrispInputs, FlatEvaluation, FlatSystem};
use crate::variable::LinguisticVariable;
use serde::Serialize;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Order-preserving map, parallel when requested and compiled in.
pub fn map_points<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

pub fn evaluate_flat_batch(
    system: &FlatSystem,
    points: &[CrispInputs],
    exec: Execution,
) -> Vec<Result<FlatEvaluation, FuzzyError>> {
    map_points(points, exec, |p| system.evaluate(p))
}

pub fn evaluate_hfs_batch(
    hfs: &HierarchicalSystem,
    points: &[CrispInputs],
    exec: Execution,
) -> Vec<Result<EvaluationTrace, HierarchyError>> {
    map_points(points, exec, |p| hfs.evaluate(p))
}

/// Every combination of per-variable samples `lo, lo + step, ..., hi`
/// (the domain end is always included). The last variable varies fastest.
pub fn grid_points(variables: &[&LinguisticVariable], step: f64) -> Vec<CrispInputs> {
    assert!(step > 0.0 && step.is_finite(), "grid step must be positive");
    let axes: Vec<Vec<f64>> = variables
        .iter()
        .map(|v| {
            let (lo, hi) = v.domain();
            let intervals = ((hi - lo) / step - 1e-9).ceil().max(1.0) as usize;
            if ((hi - lo) / step - intervals as f64).abs() < 1e-9 {
                (0..=intervals).map(|i| grid_point(lo, hi, intervals + 1, i)).collect()
            } else {
                let mut xs: Vec<f64> = (0..intervals).map(|i| lo + step * i as f64).collect();
                xs.push(hi);
                xs
            }
        })
        .collect();
    let mut points = vec![CrispInputs::new()];
    for (v, axis) in variables.iter().zip(&axes) {
        points = points
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&x| {
                    let mut q = p.clone();
                    q.insert(v.name().to_string(), x);
                    q
                })
            })
            .collect();
    }
    points
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Disagreement {
    pub points: usize,
    /// Points where either system failed to produce an output.
    pub failures: usize,
    pub mean_abs: f64,
    pub max_abs: f64,
    /// Points where the two linguistic labels differ.
    pub label_mismatches: usize,
}

/// Crisp and label disagreement between a flat system and a hierarchy over
/// the same points. Only the first final output of the hierarchy is compared.
pub fn disagreement(
    flat: &FlatSystem,
    hfs: &HierarchicalSystem,
    points: &[CrispInputs],
    exec: Execution,
) -> Disagreement {
    let diffs = map_points(points, exec, |p| match (flat.evaluate(p), hfs.evaluate(p)) {
        (Ok(a), Ok(b)) => {
            let out = b.final_output();
            Some(((a.crisp - out.crisp).abs(), a.label != out.label))
        }
        _ => None,
    });
    let ok: Vec<(f64, bool)> = diffs.iter().flatten().copied().collect();
    let n = ok.len();
    Disagreement {
        points: points.len(),
        failures: points.len() - n,
        mean_abs: if n == 0 { 0.0 } else { ok.iter().map(|d| d.0).sum::<f64>() / n as f64 },
        max_abs: ok.iter().map(|d| d.0).fold(0.0, f64::max),
        label_mismatches: ok.iter().filter(|d| d.1).count(),
    }
}
