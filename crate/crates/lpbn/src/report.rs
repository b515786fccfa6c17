//! Report serialization: a schema-stable JSON tree (fixed key order, no
//! timestamps, atom names instead of ids) and the matching human rendering.

use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::analyzer::{AnalysisReport, CountInterval, Verdict};
use crate::program::{AtomTable, Interpretation};
use crate::sgraph::CycleWitness;

#[derive(Serialize)]
struct JsonReport {
    program: JsonProgramStats,
    graph: JsonGraphStats,
    tight: bool,
    verdicts: Vec<JsonVerdict>,
    combined: JsonInterval,
    models: Option<JsonModels>,
    exhausted: bool,
}

#[derive(Serialize)]
struct JsonProgramStats {
    atoms: usize,
    rules: usize,
    facts: usize,
}

#[derive(Serialize)]
struct JsonGraphStats {
    vertices: usize,
    positive_arcs: usize,
    negative_arcs: usize,
    scc_count: usize,
    min_in_degree: usize,
}

#[derive(Serialize)]
struct JsonVerdict {
    tag: &'static str,
    status: &'static str,
    interval: Option<JsonInterval>,
    witness_models: Vec<Vec<String>>,
    cycle: Option<JsonCycle>,
    pfvs: Option<Vec<String>>,
    bipartition: Option<JsonBipartition>,
}

#[derive(Serialize)]
struct JsonInterval {
    lo: u128,
    hi: Option<u128>,
}

#[derive(Serialize)]
struct JsonCycle {
    vertices: Vec<String>,
    signs: Vec<String>,
}

#[derive(Serialize)]
struct JsonBipartition {
    plus: Vec<String>,
    minus: Vec<String>,
}

#[derive(Serialize)]
struct JsonModels {
    method: &'static str,
    count: usize,
    models: Vec<Vec<String>>,
}

fn names(atoms: &AtomTable, set: &BTreeSet<usize>) -> Vec<String> {
    set.iter()
        .map(|&v| atoms.name(crate::program::AtomId(v as u32)).to_string())
        .collect()
}

fn model_names(atoms: &AtomTable, m: &Interpretation) -> Vec<String> {
    m.iter().map(|a| atoms.name(a).to_string()).collect()
}

fn json_interval(iv: &CountInterval) -> JsonInterval {
    JsonInterval {
        lo: iv.lo,
        hi: iv.hi,
    }
}

fn json_cycle(atoms: &AtomTable, w: &CycleWitness) -> JsonCycle {
    JsonCycle {
        vertices: w
            .vertices
            .iter()
            .map(|&v| atoms.name(crate::program::AtomId(v as u32)).to_string())
            .collect(),
        signs: w.signs.iter().map(|s| s.to_string()).collect(),
    }
}

fn json_verdict(atoms: &AtomTable, v: &Verdict) -> JsonVerdict {
    JsonVerdict {
        tag: v.tag.name(),
        status: v.status.name(),
        interval: v.interval.as_ref().map(json_interval),
        witness_models: v
            .witness_models
            .iter()
            .map(|m| model_names(atoms, m))
            .collect(),
        cycle: v.cycle.as_ref().map(|w| json_cycle(atoms, w)),
        pfvs: v.pfvs.as_ref().map(|s| names(atoms, s)),
        bipartition: v.bipartition.as_ref().map(|(p, m)| JsonBipartition {
            plus: names(atoms, p),
            minus: names(atoms, m),
        }),
    }
}

/// Serializes the report as pretty JSON with a fixed key order. The output
/// is fully deterministic for a given program and options.
pub fn report_to_json(report: &AnalysisReport, atoms: &AtomTable) -> String {
    let json = JsonReport {
        program: JsonProgramStats {
            atoms: report.program.atoms,
            rules: report.program.rules,
            facts: report.program.facts,
        },
        graph: JsonGraphStats {
            vertices: report.graph.vertices,
            positive_arcs: report.graph.positive_arcs,
            negative_arcs: report.graph.negative_arcs,
            scc_count: report.graph.scc_count,
            min_in_degree: report.graph.min_in_degree,
        },
        tight: report.tight,
        verdicts: report
            .verdicts
            .iter()
            .map(|v| json_verdict(atoms, v))
            .collect(),
        combined: json_interval(&report.combined),
        models: report.models.as_ref().map(|m| JsonModels {
            method: m.method.name(),
            count: m.models.len(),
            models: m.models.iter().map(|i| model_names(atoms, i)).collect(),
        }),
        exhausted: report.exhausted,
    };
    let mut s = serde_json::to_string_pretty(&json).expect("report serialization cannot fail");
    s.push('\n');
    s
}

fn render_cycle(atoms: &AtomTable, w: &CycleWitness) -> String {
    let mut s = String::new();
    for (i, &v) in w.vertices.iter().enumerate() {
        if i > 0 {
            write!(s, " -({})-> ", w.signs[i - 1]).unwrap();
        }
        s.push_str(atoms.name(crate::program::AtomId(v as u32)));
    }
    s
}

fn set_display(atoms: &AtomTable, set: &BTreeSet<usize>) -> String {
    format!("{{{}}}", names(atoms, set).join(","))
}

/// Plain-text rendering mirroring the JSON tree.
pub fn report_to_text(report: &AnalysisReport, atoms: &AtomTable) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "program: {} atoms, {} rules, {} facts",
        report.program.atoms, report.program.rules, report.program.facts
    )
    .unwrap();
    writeln!(
        out,
        "dependence graph: {} vertices, {} positive arcs, {} negative arcs, {} SCCs, min in-degree {}",
        report.graph.vertices,
        report.graph.positive_arcs,
        report.graph.negative_arcs,
        report.graph.scc_count,
        report.graph.min_in_degree
    )
    .unwrap();
    writeln!(
        out,
        "tight (acyclic positive dependence graph): {}",
        if report.tight { "yes" } else { "no" }
    )
    .unwrap();
    writeln!(out, "verdicts:").unwrap();
    for v in &report.verdicts {
        let mut line = format!("  {:<18} {}", format!("{}:", v.tag.name()), v.status.name());
        if let Some(iv) = &v.interval {
            write!(line, " -> {iv}").unwrap();
        }
        let mut notes: Vec<String> = Vec::new();
        if !v.witness_models.is_empty() {
            let ms: Vec<String> = v
                .witness_models
                .iter()
                .map(|m| m.display_set(atoms))
                .collect();
            notes.push(format!("models {}", ms.join(", ")));
        }
        if let Some(w) = &v.cycle {
            notes.push(format!("cycle {}", render_cycle(atoms, w)));
        }
        if let Some(u) = &v.pfvs {
            notes.push(format!("pfvs {}", set_display(atoms, u)));
        }
        if let Some((p, m)) = &v.bipartition {
            notes.push(format!(
                "classes {} / {}",
                set_display(atoms, p),
                set_display(atoms, m)
            ));
        }
        if !notes.is_empty() {
            write!(line, " ({})", notes.join("; ")).unwrap();
        }
        writeln!(out, "{line}").unwrap();
    }
    writeln!(out, "combined interval: {}", report.combined).unwrap();
    writeln!(out, "stable models: {}", report.combined.phrase()).unwrap();
    if let Some(models) = &report.models {
        writeln!(out, "models ({}):", models.method.name()).unwrap();
        if models.models.is_empty() {
            writeln!(out, "  (none)").unwrap();
        }
        for m in &models.models {
            writeln!(out, "  {}", m.display_set(atoms)).unwrap();
        }
    }
    if report.exhausted {
        writeln!(
            out,
            "note: a search budget was exhausted; results are partial"
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyzer::{analyze, AnalyzeOptions};
    use crate::parse::parse_program;

    #[test]
    fn json_is_deterministic_and_ordered() {
        let p = parse_program("a :- not b. b :- not c. c :- a.").unwrap();
        let r = analyze(&p, &AnalyzeOptions::default()).unwrap();
        let one = report_to_json(&r, p.atoms());
        let two = report_to_json(&r, p.atoms());
        assert_eq!(one, two);
        let program_at = one.find("\"program\"").unwrap();
        let graph_at = one.find("\"graph\"").unwrap();
        let combined_at = one.find("\"combined\"").unwrap();
        assert!(program_at < graph_at && graph_at < combined_at);
        assert!(one.contains("\"tag\": \"SinglePosCycle\""));
    }

    #[test]
    fn text_report_phrases_the_count() {
        let p = parse_program("a :- b. b :- not c. c :- a.").unwrap();
        let r = analyze(&p, &AnalyzeOptions::default()).unwrap();
        let text = report_to_text(&r, p.atoms());
        assert!(text.contains("stable models: exactly 0"), "{text}");
        assert!(text.contains("SingleNegCycle"));
    }
}
