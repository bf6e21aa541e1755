use super::kind;
use crate::args::EvalArgs;
use crate::error::CliError;
use crate::output::{fixed, Output, Style};
use crate::source::Loaded;
use hfskit_core::dsl::Target;
use hfskit_core::hierarchy::{FinalOutput, SubsystemTrace};
use hfskit_core::{CrispInputs, FlatSystem, HierarchicalSystem};
use serde::Serialize;
use serde_json::json;
use std::collections::BTreeSet;
use std::fmt::Write;

#[derive(Serialize)]
struct FiredView {
    index: usize,
    strength: f64,
    rule: String,
}

#[derive(Serialize)]
struct StepView {
    subsystem: String,
    layer: usize,
    inputs: CrispInputs,
    output: String,
    crisp: f64,
    label: String,
    fired: Vec<FiredView>,
}

fn step_view(system: &FlatSystem, step: &SubsystemTrace) -> StepView {
    StepView {
        subsystem: step.subsystem.clone(),
        layer: step.layer,
        inputs: step.inputs.clone(),
        output: step.output.clone(),
        crisp: step.crisp,
        label: step.label.clone(),
        fired: step
            .fired
            .iter()
            .map(|f| FiredView { index: f.index, strength: f.strength, rule: system.rules()[f.index].to_string() })
            .collect(),
    }
}

pub fn parse_inputs(s: &str) -> Result<CrispInputs, CliError> {
    let mut out = CrispInputs::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::invalid(format!("input `{part}` is not of the form NAME=VALUE")))?;
        let (k, v) = (k.trim(), v.trim());
        let x: f64 = v.parse().map_err(|_| CliError::invalid(format!("input `{k}` has a non-numeric value `{v}`")))?;
        if !x.is_finite() {
            return Err(CliError::invalid(format!("input `{k}` must be finite")));
        }
        if out.insert(k.to_string(), x).is_some() {
            return Err(CliError::invalid(format!("input `{k}` given twice")));
        }
    }
    Ok(out)
}

fn check_known(inputs: &CrispInputs, known: &BTreeSet<&str>, system: &str) -> Result<(), CliError> {
    match inputs.keys().find(|k| !known.contains(k.as_str())) {
        Some(k) => Err(CliError::invalid(format!(
            "`{system}` has no input `{k}` (inputs: {})",
            known.iter().copied().collect::<Vec<_>>().join(", ")
        ))),
        None => Ok(()),
    }
}

fn run_flat(s: &FlatSystem, inputs: &CrispInputs) -> Result<(Vec<FinalOutput>, Vec<StepView>), CliError> {
    let e = s.evaluate(inputs)?;
    let used: CrispInputs = s.inputs().iter().map(|v| (v.name().to_string(), inputs[v.name()])).collect();
    let step = SubsystemTrace {
        subsystem: s.name().to_string(),
        layer: 1,
        inputs: used,
        fired: e.fired.clone(),
        output: s.output().name().to_string(),
        crisp: e.crisp,
        label: e.label.clone(),
    };
    let out = FinalOutput { variable: s.output().name().to_string(), crisp: e.crisp, label: e.label };
    Ok((vec![out], vec![step_view(s, &step)]))
}

fn run_hierarchy(h: &HierarchicalSystem, inputs: &CrispInputs) -> Result<(Vec<FinalOutput>, Vec<StepView>), CliError> {
    let trace = h.evaluate(inputs)?;
    let steps = trace
        .steps
        .iter()
        .map(|st| step_view(h.subsystem(&st.subsystem).expect("traced subsystem exists"), st))
        .collect();
    Ok((trace.outputs, steps))
}

pub fn eval(args: &EvalArgs, style: Style) -> Result<Output, CliError> {
    let loaded = Loaded::open(&args.target.system)?;
    let (name, target) = loaded.target(args.target.name.as_deref())?;
    let inputs = parse_inputs(&args.inputs)?;
    let (outputs, steps) = match target {
        Target::Flat(s) => {
            check_known(&inputs, &s.inputs().iter().map(|v| v.name()).collect(), &name)?;
            run_flat(s, &inputs)?
        }
        Target::Hierarchy(h) => {
            check_known(&inputs, &h.external_inputs().iter().map(String::as_str).collect(), &name)?;
            run_hierarchy(h, &inputs)?
        }
    };

    let mut results = json!({
        "system": name,
        "kind": kind(&target),
        "inputs": inputs,
        "outputs": outputs,
    });
    if args.trace {
        results["trace"] = json!(steps);
    }

    let mut text = String::new();
    for o in &outputs {
        writeln!(text, "{} = {} ({})", o.variable, fixed(o.crisp), style.bold(&o.label)).unwrap();
    }
    if args.trace {
        for st in &steps {
            let ins: Vec<String> = st.inputs.iter().map(|(k, v)| format!("{k}={}", fixed(*v))).collect();
            writeln!(
                text,
                "{} {}  {} -> {} = {} ({})",
                style.dim(&format!("layer {}", st.layer)),
                style.bold(&st.subsystem),
                ins.join(" "),
                st.output,
                fixed(st.crisp),
                st.label
            )
            .unwrap();
            for f in &st.fired {
                writeln!(text, "    rule {:>3} [{}] {}", f.index + 1, fixed(f.strength), f.rule).unwrap();
            }
        }
    }
    let mut out = Output::new(results, text);
    out.warnings = loaded.warnings();
    Ok(out)
}
