//! Attractors of transition graphs and mechanical checks of the convergence
//! theorems for circuit-free regulatory graphs.
//!
//! An attractor is a terminal strongly connected component. A graph is
//! *simple* when it has exactly one attractor and that attractor is a single
//! state. Self-loops are internal edges, so the fixed point of a synchronous
//! graph (which loops on itself) is a terminal singleton.

use std::collections::VecDeque;
use std::fmt;

use crate::dynamics::{build_stg_capped, TransitionGraph, UpdateMode};
use crate::error::{Error, Result};
use crate::model::{BooleanModel, ComponentSet, State};
use crate::par::{self, Exec};
use crate::reggraph::{extract_regulatory_graph_with, has_circuit_except_input_self_loops};

/// Strongly connected components, each sorted, ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sccs {
    pub components: Vec<Vec<u32>>,
    /// Index into `components` for every state.
    pub component_of: Vec<u32>,
}

/// Iterative Tarjan over the CSR graph.
pub fn sccs(g: &TransitionGraph) -> Sccs {
    const UNSEEN: u32 = u32::MAX;
    let states = g.state_count();
    let mut index = vec![UNSEEN; states];
    let mut low = vec![0u32; states];
    let mut on_stack = vec![false; states];
    let mut stack: Vec<u32> = Vec::new();
    let mut calls: Vec<(u32, usize)> = Vec::new();
    let mut next_index = 0u32;
    let mut components: Vec<Vec<u32>> = Vec::new();

    for root in 0..states as u32 {
        if index[root as usize] != UNSEEN {
            continue;
        }
        index[root as usize] = next_index;
        low[root as usize] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root as usize] = true;
        calls.push((root, 0));

        while let Some(&mut (v, ref mut pos)) = calls.last_mut() {
            let succ = g.successors(v);
            if let Some(&w) = succ.get(*pos) {
                *pos += 1;
                let wi = w as usize;
                if index[wi] == UNSEEN {
                    index[wi] = next_index;
                    low[wi] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[wi] = true;
                    calls.push((w, 0));
                } else if on_stack[wi] {
                    low[v as usize] = low[v as usize].min(index[wi]);
                }
                continue;
            }
            calls.pop();
            let vi = v as usize;
            if low[vi] == index[vi] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("root is on the stack");
                    on_stack[w as usize] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                components.push(comp);
            }
            if let Some(&(parent, _)) = calls.last() {
                low[parent as usize] = low[parent as usize].min(low[vi]);
            }
        }
    }

    components.sort_unstable_by_key(|c| c[0]);
    let mut component_of = vec![0u32; states];
    for (k, comp) in components.iter().enumerate() {
        for &x in comp {
            component_of[x as usize] = k as u32;
        }
    }
    Sccs {
        components,
        component_of,
    }
}

/// Terminal components as encoded states.
pub(crate) fn attractor_bits(g: &TransitionGraph, scc: &Sccs) -> Vec<Vec<u32>> {
    scc.components
        .iter()
        .enumerate()
        .filter(|(k, comp)| {
            comp.iter().all(|&x| {
                g.successors(x)
                    .iter()
                    .all(|&y| scc.component_of[y as usize] == *k as u32)
            })
        })
        .map(|(_, comp)| comp.clone())
        .collect()
}

fn to_states(g: &TransitionGraph, set: &[u32]) -> Vec<State> {
    set.iter().map(|&x| g.state(x)).collect()
}

/// Terminal strongly connected components, ordered by smallest state.
pub fn attractors(g: &TransitionGraph) -> Vec<Vec<State>> {
    attractor_bits(g, &sccs(g))
        .iter()
        .map(|a| to_states(g, a))
        .collect()
}

pub fn is_simple(g: &TransitionGraph) -> bool {
    let a = attractor_bits(g, &sccs(g));
    a.len() == 1 && a[0].len() == 1
}

/// States with `S(x) = x`, by exhaustive scan.
pub fn fixed_points(model: &BooleanModel) -> Vec<State> {
    fixed_point_bits(model, Exec::default())
        .into_iter()
        .map(|x| State::from_raw(model.n(), x))
        .collect()
}

fn fixed_point_bits(model: &BooleanModel, exec: Exec) -> Vec<u32> {
    par::flat_map_chunks(exec, model.state_count(), 4096, |r| {
        r.map(|x| x as u32)
            .filter(|&x| model.apply(x) == x)
            .collect()
    })
}

/// States whose only possible move is to stay put: no successor, or only a
/// self-loop.
pub fn graph_fixed_points(g: &TransitionGraph) -> Vec<State> {
    (0..g.state_count() as u32)
        .filter(|&x| g.successors(x).iter().all(|&y| y == x))
        .map(|x| g.state(x))
        .collect()
}

/// Multi-source reverse BFS; `None` for states that cannot reach `targets`.
fn distances_to(g: &TransitionGraph, targets: &[u32]) -> Vec<Option<u32>> {
    let (offsets, sources) = g.reverse();
    let mut dist = vec![None; g.state_count()];
    let mut queue = VecDeque::new();
    for &t in targets {
        if dist[t as usize].is_none() {
            dist[t as usize] = Some(0);
            queue.push_back(t);
        }
    }
    while let Some(y) = queue.pop_front() {
        let d = dist[y as usize].expect("queued states have a distance");
        for &x in &sources[offsets[y as usize]..offsets[y as usize + 1]] {
            if dist[x as usize].is_none() {
                dist[x as usize] = Some(d + 1);
                queue.push_back(x);
            }
        }
    }
    dist
}

/// Length of a shortest path from every state to `target`, indexed by
/// encoded state.
pub fn shortest_path_lengths(g: &TransitionGraph, target: State) -> Result<Vec<Option<u32>>> {
    target.check_dim(g.n())?;
    Ok(distances_to(g, &[target.bits()]))
}

/// True iff some cycle visits at least two distinct states.
pub fn has_cycle_geq2(g: &TransitionGraph) -> bool {
    sccs(g).components.iter().any(|c| c.len() >= 2)
}

/// States from which each attractor is reachable.
///
/// In deterministic graphs these sets partition the state space. In
/// non-deterministic ones a state may reach several attractors; `overlapping`
/// records whether that happens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basins {
    pub attractors: Vec<Vec<State>>,
    pub basins: Vec<Vec<State>>,
    pub overlapping: bool,
}

pub fn basins(g: &TransitionGraph) -> Basins {
    let attractors = attractor_bits(g, &sccs(g));
    let mut hits = vec![0u32; g.state_count()];
    let basins: Vec<Vec<State>> = attractors
        .iter()
        .map(|a| {
            let dist = distances_to(g, a);
            (0..g.state_count())
                .filter(|&x| dist[x].is_some())
                .map(|x| {
                    hits[x] += 1;
                    g.state(x as u32)
                })
                .collect()
        })
        .collect();
    Basins {
        attractors: attractors.iter().map(|a| to_states(g, a)).collect(),
        basins,
        overlapping: hits.iter().any(|&h| h > 1),
    }
}

/// Summary of the long-term behaviour of one transition graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttractorReport {
    pub mode: UpdateMode,
    pub attractors: Vec<Vec<State>>,
    pub is_simple: bool,
    pub fixed_points: Vec<State>,
    pub basin_sizes: Vec<usize>,
    pub basins_overlap: bool,
    /// Largest distance from a state to its nearest attractor; `None` if some
    /// state reaches none (cannot happen on a finite graph).
    pub max_shortest_path_to_attractor: Option<u32>,
}

pub fn attractor_report(g: &TransitionGraph) -> AttractorReport {
    let b = basins(g);
    let targets: Vec<u32> = b.attractors.iter().flatten().map(State::bits).collect();
    let dist = distances_to(g, &targets);
    let max = dist.iter().try_fold(0u32, |m, d| d.map(|d| m.max(d)));
    AttractorReport {
        mode: g.mode().clone(),
        is_simple: b.attractors.len() == 1 && b.attractors[0].len() == 1,
        fixed_points: graph_fixed_points(g),
        basin_sizes: b.basins.iter().map(Vec::len).collect(),
        basins_overlap: b.overlapping,
        attractors: b.attractors,
        max_shortest_path_to_attractor: max,
    }
}

/// Which result a [`TheoremReport`] checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Circuit-free regulatory graph implies simple dynamics with paths of
    /// length at most `n` to the fixed point, in any update mode.
    CircuitFree,
    /// Circuits limited to input self-loops imply `2^r` fixed points, one per
    /// input assignment.
    Inputs,
}

impl Theorem {
    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::CircuitFree => "circuit-free",
            Theorem::Inputs => "inputs",
        }
    }
}

/// The individual conclusion checks, named in witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    Simplicity,
    FixedPoint,
    IterationBound,
    PathBound,
    CycleLength,
    FixedPointCount,
    OnlyFixedPointAttractors,
    SubcubeClosure,
    SubcubeFixedPoint,
    Basin,
}

impl Check {
    pub fn as_str(self) -> &'static str {
        match self {
            Check::Simplicity => "simplicity",
            Check::FixedPoint => "fixed-point",
            Check::IterationBound => "iteration-bound",
            Check::PathBound => "path-bound",
            Check::CycleLength => "cycle-length",
            Check::FixedPointCount => "fixed-point-count",
            Check::OnlyFixedPointAttractors => "only-fixed-point-attractors",
            Check::SubcubeClosure => "subcube-closure",
            Check::SubcubeFixedPoint => "subcube-fixed-point",
            Check::Basin => "basin",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A failed conclusion check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub check: Check,
    pub state: Option<State>,
    pub detail: String,
}

/// Outcome of checking one theorem on one model and mode.
///
/// When the hypothesis holds, `conclusion_holds` must be true; anything else
/// is a bug in this crate, reported through `witness`. When the hypothesis
/// fails, the conclusion fields describe what the dynamics actually do.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub theorem: Theorem,
    pub mode: UpdateMode,
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
    pub simple: bool,
    pub attractors: Vec<Vec<State>>,
    pub fixed_points: Vec<State>,
    pub bound_claimed: u32,
    pub bound_observed: u32,
    pub witness: Option<Witness>,
}

impl TheoremReport {
    /// Hypothesis met but a conclusion check failed.
    pub fn is_violation(&self) -> bool {
        self.hypothesis_holds && !self.conclusion_holds
    }
}

/// Iterates `map` from `x` until a fixed point; `(steps, fixed point)` if one
/// is reached within `limit` steps.
fn iterate_to_fixed_point(map: impl Fn(u32) -> u32, x: u32, limit: u32) -> Option<(u32, u32)> {
    let mut cur = x;
    for steps in 0..=limit {
        let next = map(cur);
        if next == cur {
            return Some((steps, cur));
        }
        cur = next;
    }
    None
}

/// Options shared by the verifiers.
#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub exec: Exec,
    /// Tighter limit on `n` for graph construction.
    pub cap: Option<usize>,
}

/// Checks the circuit-free convergence theorem for `model` under `mode`.
///
/// With a circuit-free regulatory graph, checks that the graph is simple, that
/// its attractor is the unique fixed point of `S`, that no cycle visits two
/// states, and that every state reaches the fixed point within `n` steps: by
/// direct iteration in the deterministic modes, by reverse BFS otherwise.
pub fn verify_robert(model: &BooleanModel, mode: &UpdateMode) -> Result<TheoremReport> {
    verify_robert_with(model, mode, VerifyOptions::default())
}

pub fn verify_robert_with(
    model: &BooleanModel,
    mode: &UpdateMode,
    opts: VerifyOptions,
) -> Result<TheoremReport> {
    let n = model.n();
    let exec = opts.exec;
    let g = build_stg_capped(model, mode, exec, opts.cap)?;
    let hypothesis = !extract_regulatory_graph_with(model, exec).has_circuit();
    let scc = sccs(&g);
    let attractors = attractor_bits(&g, &scc);
    let simple = attractors.len() == 1 && attractors[0].len() == 1;
    let fps = fixed_point_bits(model, exec);
    let long_cycle = scc.components.iter().any(|c| c.len() >= 2);
    let targets: Vec<u32> = attractors.iter().flatten().copied().collect();
    let dist = distances_to(&g, &targets);
    let bfs_bound = dist
        .iter()
        .map(|d| d.unwrap_or(u32::MAX))
        .max()
        .unwrap_or(0);

    let mut report = TheoremReport {
        theorem: Theorem::CircuitFree,
        mode: mode.clone(),
        hypothesis_holds: hypothesis,
        conclusion_holds: simple && !long_cycle && bfs_bound <= n as u32,
        simple,
        attractors: attractors.iter().map(|a| to_states(&g, a)).collect(),
        fixed_points: fps.iter().map(|&x| State::from_raw(n, x)).collect(),
        bound_claimed: n as u32,
        bound_observed: bfs_bound,
        witness: None,
    };
    if !hypothesis {
        return Ok(report);
    }

    let fail = |report: &mut TheoremReport, check, state: Option<u32>, detail: String| {
        report.conclusion_holds = false;
        report.witness = Some(Witness {
            check,
            state: state.map(|x| State::from_raw(n, x)),
            detail,
        });
    };

    if !simple {
        let detail = format!(
            "{} attractors, sizes {:?}",
            attractors.len(),
            attractors.iter().map(Vec::len).collect::<Vec<_>>()
        );
        fail(&mut report, Check::Simplicity, None, detail);
        return Ok(report);
    }
    let attractor = attractors[0][0];
    if fps != [attractor] {
        let detail = format!(
            "attractor {} but S has {} fixed points",
            g.state(attractor),
            fps.len()
        );
        fail(&mut report, Check::FixedPoint, Some(attractor), detail);
        return Ok(report);
    }
    if long_cycle {
        let comp = scc
            .components
            .iter()
            .find(|c| c.len() >= 2)
            .expect("checked");
        let detail = format!("a cycle through {} states", comp.len());
        fail(&mut report, Check::CycleLength, Some(comp[0]), detail);
        return Ok(report);
    }

    if mode.is_deterministic() {
        let limit = n as u32;
        let steps = |x: usize| -> Option<u32> {
            let r = match mode {
                UpdateMode::GaussSeidelSynchronous => {
                    iterate_to_fixed_point(|y| model.gauss_seidel_apply(y), x as u32, limit)
                }
                _ => iterate_to_fixed_point(|y| model.apply(y), x as u32, limit),
            };
            r.filter(|&(s, fp)| s <= limit && fp == attractor)
                .map(|(s, _)| s)
        };
        if let Some(x) = par::find_first(exec, g.state_count(), |x| steps(x).is_none()) {
            let detail = format!(
                "no convergence to {} within {n} iterations",
                g.state(attractor)
            );
            fail(&mut report, Check::IterationBound, Some(x as u32), detail);
            return Ok(report);
        }
        report.bound_observed =
            par::max_range(exec, g.state_count(), |x| steps(x).expect("checked")).unwrap_or(0);
    } else {
        let to_fp = distances_to(&g, &[attractor]);
        if let Some(x) = (0..g.state_count()).find(|&x| to_fp[x].is_none_or(|d| d > n as u32)) {
            let detail = match to_fp[x] {
                Some(d) => format!("shortest path of length {d} to {}", g.state(attractor)),
                None => format!("{} is unreachable", g.state(attractor)),
            };
            fail(&mut report, Check::PathBound, Some(x as u32), detail);
            return Ok(report);
        }
        report.bound_observed = to_fp.iter().flatten().copied().max().unwrap_or(0);
    }
    report.conclusion_holds = true;
    Ok(report)
}

/// Deposits the low bits of `values` onto the positions of `mask`.
fn spread(values: u32, mask: u32) -> u32 {
    let mut out = 0;
    let mut k = 0;
    for i in 0..32 {
        if mask >> i & 1 == 1 {
            out |= (values >> k & 1) << i;
            k += 1;
        }
    }
    out
}

/// Checks the input variant of the convergence theorem for the declared
/// `inputs`: under its hypothesis the synchronous graph has exactly `2^r`
/// attractors, all fixed points, one per input assignment `a`, each with basin
/// the subcube `C_a` and reached within `n - r` iterations.
pub fn verify_inputs_theorem(model: &BooleanModel, inputs: ComponentSet) -> Result<TheoremReport> {
    verify_inputs_theorem_with(model, inputs, VerifyOptions::default())
}

pub fn verify_inputs_theorem_with(
    model: &BooleanModel,
    inputs: ComponentSet,
    opts: VerifyOptions,
) -> Result<TheoremReport> {
    let n = model.n();
    let exec = opts.exec;
    if inputs.is_empty() {
        return Err(Error::EmptyComponentSet);
    }
    inputs.check_range(n)?;
    if let Some(index) = inputs.iter().find(|&i| !model.is_input(i).unwrap_or(false)) {
        return Err(Error::NotAnInput { index });
    }
    let r = inputs.len();
    let mode = UpdateMode::Synchronous;
    let g = build_stg_capped(model, &mode, exec, opts.cap)?;
    let rg = extract_regulatory_graph_with(model, exec);
    let hypothesis = !has_circuit_except_input_self_loops(&rg, inputs)?;
    let scc = sccs(&g);
    let attractors = attractor_bits(&g, &scc);
    let fps = fixed_point_bits(model, exec);
    let targets: Vec<u32> = attractors.iter().flatten().copied().collect();
    let dist = distances_to(&g, &targets);
    let bfs_bound = dist
        .iter()
        .map(|d| d.unwrap_or(u32::MAX))
        .max()
        .unwrap_or(0);
    let claimed = (n - r) as u32;
    let only_fixed_points =
        attractors.len() == fps.len() && attractors.iter().all(|a| a.len() == 1);

    let mut report = TheoremReport {
        theorem: Theorem::Inputs,
        mode,
        hypothesis_holds: hypothesis,
        conclusion_holds: fps.len() == 1 << r && only_fixed_points && bfs_bound <= claimed,
        simple: attractors.len() == 1 && attractors[0].len() == 1,
        attractors: attractors.iter().map(|a| to_states(&g, a)).collect(),
        fixed_points: fps.iter().map(|&x| State::from_raw(n, x)).collect(),
        bound_claimed: claimed,
        bound_observed: bfs_bound,
        witness: None,
    };
    if !hypothesis {
        return Ok(report);
    }
    let fail = |report: &mut TheoremReport, check, state: Option<u32>, detail: String| {
        report.conclusion_holds = false;
        report.witness = Some(Witness {
            check,
            state: state.map(|x| State::from_raw(n, x)),
            detail,
        });
    };

    if fps.len() != 1 << r {
        let detail = format!("{} fixed points, expected {}", fps.len(), 1u32 << r);
        fail(&mut report, Check::FixedPointCount, None, detail);
        return Ok(report);
    }
    if !only_fixed_points {
        let detail = format!(
            "{} attractors for {} fixed points",
            attractors.len(),
            fps.len()
        );
        fail(&mut report, Check::OnlyFixedPointAttractors, None, detail);
        return Ok(report);
    }
    let mask = inputs.bits();
    // Each input assignment must select exactly one fixed point.
    let mut per_cube = vec![0u32; 1 << r];
    for &fp in &fps {
        let a = (0..1u32 << r)
            .find(|&a| spread(a, mask) == fp & mask)
            .expect("in range");
        per_cube[a as usize] += 1;
    }
    if let Some(a) = per_cube.iter().position(|&c| c != 1) {
        let detail = format!(
            "subcube {} holds {} fixed points",
            crate::model::render_bits(n, spread(a as u32, mask)),
            per_cube[a]
        );
        fail(&mut report, Check::SubcubeFixedPoint, None, detail);
        return Ok(report);
    }
    if let Some(x) = par::find_first(exec, g.state_count(), |x| {
        (model.apply(x as u32) ^ x as u32) & mask != 0
    }) {
        fail(
            &mut report,
            Check::SubcubeClosure,
            Some(x as u32),
            "S leaves the subcube".into(),
        );
        return Ok(report);
    }
    // Trajectories: bounded convergence, and to the fixed point of the
    // starting subcube (basin = subcube).
    let run = |x: usize| iterate_to_fixed_point(|y| model.apply(y), x as u32, n as u32);
    if let Some(x) = par::find_first(exec, g.state_count(), |x| match run(x) {
        Some((steps, _)) => steps > claimed,
        None => true,
    }) {
        let detail = format!("no convergence within {claimed} iterations");
        fail(&mut report, Check::IterationBound, Some(x as u32), detail);
        return Ok(report);
    }
    if let Some(x) = par::find_first(exec, g.state_count(), |x| {
        run(x).is_some_and(|(_, fp)| fp & mask != x as u32 & mask)
    }) {
        fail(
            &mut report,
            Check::Basin,
            Some(x as u32),
            "reaches the fixed point of another subcube".into(),
        );
        return Ok(report);
    }
    report.bound_observed =
        par::max_range(exec, g.state_count(), |x| run(x).expect("checked").0).unwrap_or(0);
    report.conclusion_holds = true;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::build_stg;
    use crate::netparse::parse_model;

    const FIG1: &str = "a : (a & b) | (!a & !b)\nb : (a & b) | (!a & !b)";
    const CHAIN: &str = "a : 1\nb : a\nc : b";

    fn graph(text: &str, mode: UpdateMode) -> TransitionGraph {
        build_stg(&parse_model(text).unwrap(), &mode).unwrap()
    }

    fn strings(sets: &[Vec<State>]) -> Vec<Vec<String>> {
        sets.iter()
            .map(|s| {
                let mut v: Vec<String> = s.iter().map(State::to_string).collect();
                v.sort();
                v
            })
            .collect()
    }

    fn st(s: &str) -> State {
        s.parse().unwrap()
    }

    #[test]
    fn scc_examples() {
        let asy = graph(FIG1, UpdateMode::Asynchronous);
        let s = sccs(&asy);
        assert_eq!(s.components, [vec![0, 1, 2], vec![3]]);
        let sync = graph(FIG1, UpdateMode::Synchronous);
        assert_eq!(sccs(&sync).components.len(), 4);
        let empty = TransitionGraph::from_adjacency(2, UpdateMode::Asynchronous, vec![vec![]; 4]);
        assert_eq!(sccs(&empty).components, [[0], [1], [2], [3]]);
    }

    #[test]
    fn attractor_examples() {
        let asy = graph(FIG1, UpdateMode::Asynchronous);
        assert_eq!(
            strings(&attractors(&asy)),
            [vec!["00", "01", "10"], vec!["11"]]
        );
        assert!(!is_simple(&asy));
        let sync = graph(FIG1, UpdateMode::Synchronous);
        assert_eq!(strings(&attractors(&sync)), [vec!["11"]]);
        assert!(is_simple(&sync));
        let chain = graph(CHAIN, UpdateMode::Synchronous);
        assert_eq!(strings(&attractors(&chain)), [vec!["111"]]);
        assert!(is_simple(&chain));
    }

    #[test]
    fn fixed_point_examples() {
        let fp = |t: &str| -> Vec<String> {
            fixed_points(&parse_model(t).unwrap())
                .iter()
                .map(State::to_string)
                .collect()
        };
        assert_eq!(fp(FIG1), ["11"]);
        assert_eq!(fp(CHAIN), ["111"]);
        assert_eq!(fp("a : a\nb : a"), ["00", "11"]);
    }

    #[test]
    fn shortest_paths() {
        let sync = graph(FIG1, UpdateMode::Synchronous);
        let d = shortest_path_lengths(&sync, st("11")).unwrap();
        // Indexed by encoded state: 00, 10, 01, 11.
        assert_eq!(d, [Some(1), Some(2), Some(2), Some(0)]);
        let chain = graph(CHAIN, UpdateMode::Asynchronous);
        let d = shortest_path_lengths(&chain, st("111")).unwrap();
        assert!(d.iter().all(|x| x.is_some_and(|x| x <= 3)));
        assert_eq!(d[0b111], Some(0));
        assert_eq!(d[0], Some(3));
        assert!(shortest_path_lengths(&chain, st("11")).is_err());
    }

    #[test]
    fn cycle_detection() {
        assert!(has_cycle_geq2(&graph(FIG1, UpdateMode::Asynchronous)));
        assert!(!has_cycle_geq2(&graph(FIG1, UpdateMode::Synchronous)));
        for mode in [
            UpdateMode::Synchronous,
            UpdateMode::Asynchronous,
            UpdateMode::FullyAsynchronous,
        ] {
            assert!(!has_cycle_geq2(&graph(CHAIN, mode)));
        }
        let self_loop =
            TransitionGraph::from_adjacency(1, UpdateMode::Synchronous, vec![vec![0], vec![0]]);
        assert!(!has_cycle_geq2(&self_loop));
    }

    #[test]
    fn basin_examples() {
        let sync = graph(FIG1, UpdateMode::Synchronous);
        let b = basins(&sync);
        assert_eq!(b.basins[0].len(), 4);
        assert!(!b.overlapping);

        let inputs = graph("a : a\nb : a", UpdateMode::Synchronous);
        let b = basins(&inputs);
        assert_eq!(strings(&b.attractors), [vec!["00"], vec!["11"]]);
        assert_eq!(strings(&b.basins), [vec!["00", "01"], vec!["10", "11"]]);

        let fixed =
            TransitionGraph::from_adjacency(1, UpdateMode::Asynchronous, vec![vec![], vec![]]);
        let b = basins(&fixed);
        assert_eq!(
            b.basins,
            [[State::new(1, 0).unwrap()], [State::new(1, 1).unwrap()]]
        );

        // In the asynchronous graph of the coupled pair, 00, 01 and 10 cannot reach 11.
        let b = basins(&graph(FIG1, UpdateMode::Asynchronous));
        assert_eq!(b.basins[1], [st("11")]);
        assert!(!b.overlapping);
    }

    #[test]
    fn overlapping_basins_are_flagged() {
        // From 00 the asynchronous moves lead to both fixed points 10 and 01.
        let g = graph("a : !b\nb : !a", UpdateMode::Asynchronous);
        let b = basins(&g);
        assert_eq!(b.attractors.len(), 2);
        assert!(b.overlapping);
    }

    #[test]
    fn report_fields() {
        let r = attractor_report(&graph(FIG1, UpdateMode::Asynchronous));
        assert!(!r.is_simple);
        assert_eq!(r.fixed_points, [st("11")]);
        assert_eq!(r.basin_sizes, [3, 1]);
        assert_eq!(r.max_shortest_path_to_attractor, Some(0));
        let r = attractor_report(&graph(FIG1, UpdateMode::Synchronous));
        assert!(r.is_simple);
        assert_eq!(r.max_shortest_path_to_attractor, Some(2));
    }

    #[test]
    fn chain_satisfies_every_mode() {
        let m = parse_model(CHAIN).unwrap();
        for mode in [
            UpdateMode::Synchronous,
            UpdateMode::Asynchronous,
            UpdateMode::FullyAsynchronous,
        ] {
            let r = verify_robert(&m, &mode).unwrap();
            assert!(
                r.hypothesis_holds && r.conclusion_holds && r.simple,
                "{mode}"
            );
            assert!(r.bound_observed <= 3);
            assert_eq!(r.witness, None);
        }
        let r = verify_robert(&m, &UpdateMode::Synchronous).unwrap();
        assert_eq!(r.bound_observed, 3);
        let gs = verify_robert(&m, &UpdateMode::GaussSeidelSynchronous).unwrap();
        assert!(gs.conclusion_holds && gs.simple);
        assert_eq!(gs.fixed_points, [st("111")]);
        assert_eq!(gs.attractors, [vec![st("111")]]);
        assert_eq!(gs.bound_observed, 1);
    }

    #[test]
    fn coupled_pair_fails_the_hypothesis() {
        let m = parse_model(FIG1).unwrap();
        let r = verify_robert(&m, &UpdateMode::Asynchronous).unwrap();
        assert!(!r.hypothesis_holds);
        assert_eq!(r.attractors.len(), 2);
        assert!(!r.simple && !r.conclusion_holds && !r.is_violation());
        let r = verify_robert(&m, &UpdateMode::Synchronous).unwrap();
        assert!(!r.hypothesis_holds && r.simple);
    }

    #[test]
    fn iteration_and_bfs_bounds_agree() {
        let m = parse_model("a : 1\nb : !a\nc : a & !b\nd : c | b").unwrap();
        let r = verify_robert(&m, &UpdateMode::Synchronous).unwrap();
        let g = build_stg(&m, &UpdateMode::Synchronous).unwrap();
        let d = shortest_path_lengths(&g, r.fixed_points[0]).unwrap();
        assert_eq!(r.bound_observed, d.iter().flatten().copied().max().unwrap());
    }

    #[test]
    fn inputs_theorem_examples() {
        let m = parse_model("a : a\nb : a").unwrap();
        let r = verify_inputs_theorem(&m, ComponentSet::singleton(0)).unwrap();
        assert!(r.hypothesis_holds && r.conclusion_holds);
        assert_eq!(r.fixed_points, [st("00"), st("11")]);
        assert_eq!(r.bound_claimed, 1);
        assert!(r.bound_observed <= 1);

        let m = parse_model("a : a\nb : a\nc : a & b").unwrap();
        let r = verify_inputs_theorem(&m, ComponentSet::singleton(0)).unwrap();
        assert!(r.conclusion_holds);
        assert_eq!(r.fixed_points.len(), 2);
        assert_eq!(r.bound_claimed, 2);
        assert!(r.bound_observed <= 2);

        let m = parse_model("a : !a\nb : a").unwrap();
        assert_eq!(
            verify_inputs_theorem(&m, ComponentSet::singleton(0)),
            Err(Error::NotAnInput { index: 0 })
        );
        assert_eq!(
            verify_inputs_theorem(&m, ComponentSet::EMPTY),
            Err(Error::EmptyComponentSet)
        );
    }

    #[test]
    fn inputs_theorem_without_hypothesis() {
        // b and c form a circuit besides the input loop on a.
        let m = parse_model("a : a\nb : c\nc : b").unwrap();
        let r = verify_inputs_theorem(&m, ComponentSet::singleton(0)).unwrap();
        assert!(!r.hypothesis_holds);
        assert!(!r.is_violation());
    }

    #[test]
    fn spread_deposits_bits() {
        assert_eq!(spread(0b11, 0b1010), 0b1010);
        assert_eq!(spread(0b01, 0b1010), 0b0010);
        assert_eq!(spread(0b10, 0b1010), 0b1000);
    }

    #[test]
    fn strategies_agree_on_reports() {
        let m = parse_model("a : 1\nb : !a\nc : a & !b\nd : c | b\ne : !d & a").unwrap();
        for mode in [UpdateMode::Synchronous, UpdateMode::FullyAsynchronous] {
            let seq = verify_robert_with(
                &m,
                &mode,
                VerifyOptions {
                    exec: Exec::Sequential,
                    cap: None,
                },
            )
            .unwrap();
            let par = verify_robert_with(
                &m,
                &mode,
                VerifyOptions {
                    exec: Exec::Parallel,
                    cap: None,
                },
            )
            .unwrap();
            assert_eq!(seq, par);
        }
    }
}
