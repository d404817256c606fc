//! Text, JSON and Graphviz DOT renderings.
//!
//! JSON objects have sorted keys and every list is in a fixed order, so equal
//! inputs give byte-identical output. States are rendered as binary strings
//! (`x1` leftmost) and components by name.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::analysis::{AttractorReport, TheoremReport};
use crate::dynamics::TransitionGraph;
use crate::model::{BooleanModel, State};
use crate::reggraph::{bmatrix, is_nilpotent, topological_sort, RegulatoryGraph, Sign};

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn state_list(states: &[State]) -> Vec<String> {
    let mut v: Vec<String> = states.iter().map(State::to_string).collect();
    v.sort();
    v
}

fn state_sets(sets: &[Vec<State>]) -> Vec<Vec<String>> {
    let mut v: Vec<Vec<String>> = sets.iter().map(|s| state_list(s)).collect();
    v.sort();
    v
}

fn sorted_edges(g: &TransitionGraph) -> Vec<(String, String)> {
    let mut edges: Vec<(String, String)> = g
        .edges()
        .map(|(x, y)| (g.state(x).to_string(), g.state(y).to_string()))
        .collect();
    edges.sort();
    edges
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// `{"edges":[["00","11"],...],"mode":"sync","n":2}` on one line, edges
/// sorted.
pub fn stg_json(g: &TransitionGraph) -> String {
    let edges: Vec<Value> = sorted_edges(g)
        .into_iter()
        .map(|(a, b)| json!([a, b]))
        .collect();
    let mut s = serde_json::to_string(&json!({
        "n": g.n(),
        "mode": g.mode().to_string(),
        "edges": edges,
    }))
    .expect("values serialize");
    s.push('\n');
    s
}

/// DOT digraph of a transition graph. States in `attractors` get a double
/// border; self-loops are kept.
pub fn stg_dot(g: &TransitionGraph, attractors: &[Vec<State>]) -> String {
    let marked: Vec<u32> = attractors.iter().flatten().map(State::bits).collect();
    let mut nodes: Vec<(String, bool)> = (0..g.state_count() as u32)
        .map(|x| (g.state(x).to_string(), marked.contains(&x)))
        .collect();
    nodes.sort();
    let mut out = String::new();
    let _ = writeln!(out, "digraph stg {{");
    let _ = writeln!(out, "  label={};", quote(&format!("mode {}", g.mode())));
    let _ = writeln!(out, "  node [shape=box, fontname=monospace];");
    for (name, attractor) in &nodes {
        if *attractor {
            let _ = writeln!(out, "  {} [peripheries=2];", quote(name));
        } else {
            let _ = writeln!(out, "  {};", quote(name));
        }
    }
    for (a, b) in sorted_edges(g) {
        let _ = writeln!(out, "  {} -> {};", quote(&a), quote(&b));
    }
    out.push_str("}\n");
    out
}

fn sign_symbol(sign: Sign) -> &'static str {
    match sign {
        Sign::Activating => "+",
        Sign::Inhibiting => "-",
        Sign::Dual => "+/-",
    }
}

fn sign_arrowhead(sign: Sign) -> &'static str {
    match sign {
        Sign::Activating => "normal",
        Sign::Inhibiting => "tee",
        Sign::Dual => "teenormal",
    }
}

/// DOT digraph of a regulatory graph, one node per component.
pub fn rg_dot(model: &BooleanModel, rg: &RegulatoryGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph rg {{");
    for name in model.names() {
        let _ = writeln!(out, "  {};", quote(name));
    }
    for e in rg.edges() {
        let _ = writeln!(
            out,
            "  {} -> {} [arrowhead={}, label={}];",
            quote(model.name(e.from)),
            quote(model.name(e.to)),
            sign_arrowhead(e.sign),
            quote(sign_symbol(e.sign)),
        );
    }
    out.push_str("}\n");
    out
}

/// Regulatory graph facts shared by the text and JSON renderings.
struct RgSummary {
    matrix: Vec<Vec<u8>>,
    nilpotent: bool,
    order: Option<Vec<usize>>,
    circuit: Option<Vec<usize>>,
}

fn summarize(rg: &RegulatoryGraph) -> RgSummary {
    let b = bmatrix(rg);
    let n = rg.n();
    let (order, circuit) = match topological_sort(rg) {
        Ok(p) => (Some(p.image().to_vec()), None),
        Err(c) => (None, Some(c.cycle)),
    };
    RgSummary {
        matrix: (0..n)
            .map(|i| (0..n).map(|j| u8::from(b.get(i, j))).collect())
            .collect(),
        nilpotent: is_nilpotent(&b),
        order,
        circuit,
    }
}

pub fn rg_json(model: &BooleanModel, rg: &RegulatoryGraph) -> String {
    let s = summarize(rg);
    let names =
        |v: &[usize]| -> Vec<String> { v.iter().map(|&i| model.name(i).to_string()).collect() };
    let edges: Vec<Value> = rg
        .edges()
        .iter()
        .map(|e| {
            json!({
                "from": model.name(e.from),
                "to": model.name(e.to),
                "sign": e.sign.as_str(),
            })
        })
        .collect();
    to_json(&json!({
        "components": model.names(),
        "edges": edges,
        "matrix": s.matrix,
        "nilpotent": s.nilpotent,
        "topological_order": s.order.as_deref().map(names),
        "circuit": s.circuit.as_deref().map(names),
    }))
}

pub fn rg_text(model: &BooleanModel, rg: &RegulatoryGraph) -> String {
    let s = summarize(rg);
    let mut out = String::new();
    let _ = writeln!(out, "components: {}", model.names().join(" "));
    let _ = writeln!(out, "edges:");
    for e in rg.edges() {
        let _ = writeln!(
            out,
            "  {} -> {} ({})",
            model.name(e.from),
            model.name(e.to),
            e.sign
        );
    }
    let _ = writeln!(out, "B(S):");
    for row in &s.matrix {
        let cells: Vec<String> = row.iter().map(u8::to_string).collect();
        let _ = writeln!(out, "  {}", cells.join(" "));
    }
    let _ = writeln!(out, "nilpotent: {}", s.nilpotent);
    let names = |v: &[usize]| {
        v.iter()
            .map(|&i| model.name(i))
            .collect::<Vec<_>>()
            .join(" ")
    };
    match (&s.order, &s.circuit) {
        (Some(order), _) => {
            let _ = writeln!(out, "topological order: {}", names(order));
        }
        (_, Some(cycle)) => {
            let _ = writeln!(out, "circuit: {}", names(cycle));
        }
        _ => {}
    }
    out
}

pub fn attractor_report_json(r: &AttractorReport) -> String {
    to_json(&attractor_value(r))
}

fn attractor_value(r: &AttractorReport) -> Value {
    // Basin sizes follow the attractor order of the report, which is by
    // smallest encoded state; pair them up before sorting by text.
    let mut pairs: Vec<(Vec<String>, usize)> = r
        .attractors
        .iter()
        .zip(&r.basin_sizes)
        .map(|(a, &s)| (state_list(a), s))
        .collect();
    pairs.sort();
    json!({
        "mode": r.mode.to_string(),
        "attractors": pairs.iter().map(|p| &p.0).collect::<Vec<_>>(),
        "basin_sizes": pairs.iter().map(|p| p.1).collect::<Vec<_>>(),
        "basins_overlap": r.basins_overlap,
        "simple": r.is_simple,
        "fixed_points": state_list(&r.fixed_points),
        "max_shortest_path_to_attractor": r.max_shortest_path_to_attractor,
    })
}

pub fn attractor_report_text(r: &AttractorReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "mode: {}", r.mode);
    let _ = writeln!(out, "attractors: {}", r.attractors.len());
    let mut pairs: Vec<(Vec<String>, usize)> = r
        .attractors
        .iter()
        .zip(&r.basin_sizes)
        .map(|(a, &s)| (state_list(a), s))
        .collect();
    pairs.sort();
    for (a, size) in &pairs {
        let _ = writeln!(out, "  {{{}}} basin {}", a.join(", "), size);
    }
    let _ = writeln!(out, "simple: {}", r.is_simple);
    let _ = writeln!(
        out,
        "fixed points: {}",
        state_list(&r.fixed_points).join(" ")
    );
    if r.basins_overlap {
        let _ = writeln!(out, "basins overlap: true");
    }
    match r.max_shortest_path_to_attractor {
        Some(d) => {
            let _ = writeln!(out, "max distance to an attractor: {d}");
        }
        None => {
            let _ = writeln!(out, "max distance to an attractor: unbounded");
        }
    }
    out
}

fn theorem_value(r: &TheoremReport) -> Value {
    let witness = r.witness.as_ref().map(|w| {
        json!({
            "check": w.check.as_str(),
            "state": w.state.map(|s| s.to_string()),
            "detail": w.detail,
        })
    });
    json!({
        "theorem": r.theorem.as_str(),
        "mode": r.mode.to_string(),
        "hypothesis": r.hypothesis_holds,
        "conclusion": r.conclusion_holds,
        "simple": r.simple,
        "attractors": state_sets(&r.attractors),
        "fixed_points": state_list(&r.fixed_points),
        "bound_claimed": r.bound_claimed,
        "bound_observed": r.bound_observed,
        "witness": witness,
    })
}

pub fn theorem_report_json(r: &TheoremReport) -> String {
    to_json(&theorem_value(r))
}

pub fn theorem_report_text(r: &TheoremReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "theorem: {}", r.theorem.as_str());
    let _ = writeln!(out, "mode: {}", r.mode);
    let _ = writeln!(out, "hypothesis: {}", r.hypothesis_holds);
    let _ = writeln!(out, "conclusion: {}", r.conclusion_holds);
    let _ = writeln!(out, "simple: {}", r.simple);
    let sets: Vec<String> = state_sets(&r.attractors)
        .iter()
        .map(|a| format!("{{{}}}", a.join(", ")))
        .collect();
    let _ = writeln!(out, "attractors: {}", sets.join(" "));
    let _ = writeln!(
        out,
        "fixed points: {}",
        state_list(&r.fixed_points).join(" ")
    );
    let _ = writeln!(
        out,
        "bound: observed {} <= claimed {}",
        r.bound_observed, r.bound_claimed
    );
    if let Some(w) = &r.witness {
        match w.state {
            Some(s) => {
                let _ = writeln!(out, "witness: {} at {}: {}", w.check, s, w.detail);
            }
            None => {
                let _ = writeln!(out, "witness: {}: {}", w.check, w.detail);
            }
        }
    }
    out
}
