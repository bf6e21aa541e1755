use super::ast::*;
use std::fmt::Write;

const INDENT: &str = "    ";

/// Canonical text for a definition. Declaration order is preserved; body
/// comments and original layout are not.
pub fn serialize(def: &SystemDefinition) -> String {
    let mut out = String::new();
    for line in &def.header {
        let _ = writeln!(out, "#{line}");
    }
    for (i, item) in def.items.iter().enumerate() {
        if i > 0 || !def.header.is_empty() {
            out.push('\n');
        }
        match item {
            Item::System(s) => system(&mut out, s),
            Item::Hierarchy(h) => hierarchy(&mut out, h),
        }
    }
    out
}

fn system(out: &mut String, s: &SystemDecl) {
    let _ = writeln!(out, "system {} {{", s.name.name);
    for v in &s.variables {
        let _ = writeln!(out, "{INDENT}{} {} range {} {} {{", v.role, v.name.name, v.lo, v.hi);
        for t in &v.terms {
            let _ = writeln!(out, "{INDENT}{INDENT}term {} {};", t.name.name, t.shape);
        }
        let _ = writeln!(out, "{INDENT}}}");
    }
    match &s.rules {
        None => {}
        Some(RuleSource::Generate { policy: GenerationPolicy::Mean, .. }) => {
            let _ = writeln!(out, "{INDENT}rulegen mean;");
        }
        Some(RuleSource::Explicit { rules, .. }) if rules.is_empty() => {
            let _ = writeln!(out, "{INDENT}rules {{}}");
        }
        Some(RuleSource::Explicit { rules, .. }) => {
            let _ = writeln!(out, "{INDENT}rules {{");
            for r in rules {
                let _ = write!(out, "{INDENT}{INDENT}IF ");
                for (i, c) in r.antecedents.iter().enumerate() {
                    if i > 0 {
                        out.push_str(" AND ");
                    }
                    let _ = write!(out, "{} is {}", c.variable.name, c.term.name);
                }
                let _ = writeln!(out, " THEN {} is {};", r.consequent.variable.name, r.consequent.term.name);
            }
            let _ = writeln!(out, "{INDENT}}}");
        }
    }
    out.push_str("}\n");
}

fn hierarchy(out: &mut String, h: &HierarchyDecl) {
    let _ = writeln!(out, "hierarchy {} {{", h.name.name);
    for u in &h.uses {
        let _ = writeln!(out, "{INDENT}use {} as {};", u.system.name, u.alias.name);
    }
    for c in &h.connections {
        let _ = writeln!(
            out,
            "{INDENT}connect {}.{} -> {}.{};",
            c.producer.name, c.output.name, c.consumer.name, c.input.name
        );
    }
    let list = |ids: &[Ident]| ids.iter().map(|i| i.name.as_str()).collect::<Vec<_>>().join(", ");
    if !h.inputs.is_empty() {
        let _ = writeln!(out, "{INDENT}inputs {};", list(&h.inputs));
    }
    if !h.outputs.is_empty() {
        let _ = writeln!(out, "{INDENT}output {};", list(&h.outputs));
    }
    out.push_str("}\n");
}
