//! Update modes and state transition graphs.
//!
//! Every non-deterministic mode is an instance of the family-based scheme: for
//! a family `P` of parts of `{1..n}` covering all components, a state `x` moves
//! to `x` with the components of `J ∩ Upd(x)` flipped, for each `J` in `P`
//! meeting `Upd(x)`. The synchronous modes are the graphs of the maps `S` and
//! `G` (Gauss-Seidel), so their fixed points carry a self-loop; in every other
//! mode a fixed point has no successor.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, FamilyError, Result};
use crate::model::{full_mask, BooleanModel, ComponentSet, State, SubmaskIter};
use crate::par::{self, Exec};

/// Largest `n` for which a transition graph is materialized.
pub const STG_CAP: usize = 20;
/// Largest `n` for the fully asynchronous graph, whose edge count can reach `4^n`.
pub const FULLY_ASYNC_CAP: usize = 16;

/// A validated update family: non-empty, pairwise distinct parts covering
/// every component.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UpdateFamily {
    n: usize,
    parts: Vec<ComponentSet>,
}

impl UpdateFamily {
    pub fn new(parts: Vec<ComponentSet>, n: usize) -> Result<Self, FamilyError> {
        validate_family(&parts, n)?;
        Ok(UpdateFamily { n, parts })
    }

    /// The family `{{1}, ..., {n}}`.
    pub fn singletons(n: usize) -> Self {
        UpdateFamily {
            n,
            parts: (0..n).map(ComponentSet::singleton).collect(),
        }
    }

    /// The family `{{1, ..., n}}`.
    pub fn whole(n: usize) -> Self {
        UpdateFamily {
            n,
            parts: vec![ComponentSet::all(n)],
        }
    }

    /// All `2^n - 1` non-empty parts. Only sensible for small `n`.
    pub fn all_parts(n: usize) -> Self {
        UpdateFamily {
            n,
            parts: (1..=full_mask(n)).map(ComponentSet::from_bits).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[ComponentSet] {
        &self.parts
    }
}

/// Renders as `{1,2};{2,3}`.
impl fmt::Display for UpdateFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ComponentSet::to_string).collect();
        f.write_str(&parts.join(";"))
    }
}

/// Checks that `parts` is a valid update family over `n` components.
pub fn validate_family(parts: &[ComponentSet], n: usize) -> Result<(), FamilyError> {
    if parts.is_empty() {
        return Err(FamilyError::Empty);
    }
    let mut covered = 0u32;
    for (k, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(FamilyError::EmptyPart(k + 1));
        }
        if let Some(index) = part.iter().find(|&i| i >= n) {
            return Err(FamilyError::OutOfRange {
                part: k + 1,
                index,
                n,
            });
        }
        if parts[..k].contains(part) {
            return Err(FamilyError::DuplicatePart(k + 1));
        }
        covered |= part.bits();
    }
    let missing: Vec<usize> = (0..n).filter(|i| covered >> i & 1 == 0).collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(FamilyError::Uncovered(missing))
    }
}

/// Parses `{1,2};{2,3}` (1-based indices) without validating coverage.
pub fn parse_family_parts(text: &str) -> Result<Vec<ComponentSet>, FamilyError> {
    let syntax = || FamilyError::Syntax(text.to_string());
    text.split(';')
        .map(|part| {
            let inner = part
                .trim()
                .strip_prefix('{')
                .and_then(|p| p.strip_suffix('}'))
                .ok_or_else(syntax)?;
            if inner.trim().is_empty() {
                return Ok(ComponentSet::EMPTY);
            }
            inner.split(',').try_fold(ComponentSet::EMPTY, |acc, item| {
                let i: usize = item.trim().parse().map_err(|_| syntax())?;
                if i == 0 || i > 32 {
                    return Err(syntax());
                }
                Ok(acc.union(ComponentSet::singleton(i - 1)))
            })
        })
        .collect()
}

/// Update mode of a transition graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum UpdateMode {
    Synchronous,
    Asynchronous,
    FullyAsynchronous,
    GaussSeidelSynchronous,
    Custom(UpdateFamily),
}

impl UpdateMode {
    /// True for the two modes where every state has exactly one successor.
    pub fn is_deterministic(&self) -> bool {
        matches!(
            self,
            UpdateMode::Synchronous | UpdateMode::GaussSeidelSynchronous
        )
    }

    /// Largest supported `n` for building a graph in this mode.
    pub fn cap(&self) -> usize {
        match self {
            UpdateMode::FullyAsynchronous => FULLY_ASYNC_CAP,
            _ => STG_CAP,
        }
    }

    /// Parses a CLI-style mode and validates it against `n`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        if let Some(spec) = text.trim().strip_prefix("custom:") {
            let parts = parse_family_parts(spec)?;
            return Ok(UpdateMode::Custom(UpdateFamily::new(parts, n)?));
        }
        let mode: UpdateMode = text.parse()?;
        mode.validate(n)?;
        Ok(mode)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if let UpdateMode::Custom(family) = self {
            validate_family(family.parts(), n)?;
        }
        Ok(())
    }
}

impl fmt::Display for UpdateMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpdateMode::Synchronous => f.write_str("sync"),
            UpdateMode::Asynchronous => f.write_str("async"),
            UpdateMode::FullyAsynchronous => f.write_str("full-async"),
            UpdateMode::GaussSeidelSynchronous => f.write_str("gauss-seidel"),
            UpdateMode::Custom(family) => write!(f, "custom:{family}"),
        }
    }
}

/// Accepts `sync`, `async`, `full-async`, `gauss-seidel` and `custom:{..};{..}`.
///
/// A custom family parsed this way records the largest mentioned index as its
/// size; use [`UpdateMode::parse`] to validate against a model.
impl FromStr for UpdateMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "sync" | "synchronous" => Ok(UpdateMode::Synchronous),
            "async" | "asynchronous" => Ok(UpdateMode::Asynchronous),
            "full-async" | "fully-asynchronous" => Ok(UpdateMode::FullyAsynchronous),
            "gauss-seidel" | "gs" => Ok(UpdateMode::GaussSeidelSynchronous),
            other => {
                let spec = other
                    .strip_prefix("custom:")
                    .ok_or_else(|| Error::InvalidMode(s.to_string()))?;
                let parts = parse_family_parts(spec)?;
                let n = parts
                    .iter()
                    .map(|p| p.iter().last().map_or(0, |i| i + 1))
                    .max()
                    .unwrap_or(0);
                Ok(UpdateMode::Custom(UpdateFamily::new(parts, n)?))
            }
        }
    }
}

fn check_mode(model: &BooleanModel, mode: &UpdateMode) -> Result<()> {
    if let UpdateMode::Custom(family) = mode {
        if family.n() != model.n() {
            // Re-validate against the model: a family over fewer components
            // leaves some uncovered.
            validate_family(family.parts(), model.n())?;
        }
    }
    Ok(())
}

/// Encoded successors of `x`, sorted and deduplicated. `mode` must already be
/// valid for `model`.
pub(crate) fn successor_bits(model: &BooleanModel, mode: &UpdateMode, x: u32, out: &mut Vec<u32>) {
    out.clear();
    match mode {
        UpdateMode::Synchronous => out.push(model.apply(x)),
        UpdateMode::GaussSeidelSynchronous => out.push(model.gauss_seidel_apply(x)),
        UpdateMode::Asynchronous => {
            let upd = model.apply(x) ^ x;
            out.extend(
                (0..model.n())
                    .filter(|i| upd >> i & 1 == 1)
                    .map(|i| x ^ (1 << i)),
            );
            out.sort_unstable();
        }
        UpdateMode::FullyAsynchronous => {
            let upd = model.apply(x) ^ x;
            out.extend(SubmaskIter::new(upd).skip(1).map(|j| x ^ j));
            out.sort_unstable();
        }
        UpdateMode::Custom(family) => {
            let upd = model.apply(x) ^ x;
            out.extend(
                family
                    .parts()
                    .iter()
                    .map(|j| j.bits() & upd)
                    .filter(|&m| m != 0)
                    .map(|m| x ^ m),
            );
            out.sort_unstable();
            out.dedup();
        }
    }
}

/// Successor states of `x` under `mode`, in increasing encoded order.
pub fn successors(model: &BooleanModel, mode: &UpdateMode, x: State) -> Result<Vec<State>> {
    x.check_dim(model.n())?;
    check_mode(model, mode)?;
    let mut out = Vec::new();
    successor_bits(model, mode, x.bits(), &mut out);
    Ok(out
        .into_iter()
        .map(|b| State::from_raw(model.n(), b))
        .collect())
}

/// `[x, S(x), ..., S^k(x)]`.
pub fn trajectory(model: &BooleanModel, x: State, k: usize) -> Result<Vec<State>> {
    x.check_dim(model.n())?;
    let mut out = Vec::with_capacity(k + 1);
    let mut cur = x.bits();
    out.push(x);
    for _ in 0..k {
        cur = model.apply(cur);
        out.push(State::from_raw(model.n(), cur));
    }
    Ok(out)
}

/// Explicit state transition graph over all `2^n` states, in CSR form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionGraph {
    n: usize,
    mode: UpdateMode,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl TransitionGraph {
    /// A graph from explicit adjacency lists (used by tests and oracles).
    pub fn from_adjacency(n: usize, mode: UpdateMode, adjacency: Vec<Vec<u32>>) -> Self {
        assert_eq!(adjacency.len(), 1 << n, "one list per state");
        let mut offsets = Vec::with_capacity(adjacency.len() + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for mut succ in adjacency {
            succ.sort_unstable();
            succ.dedup();
            targets.extend(succ);
            offsets.push(targets.len());
        }
        TransitionGraph {
            n,
            mode,
            offsets,
            targets,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> &UpdateMode {
        &self.mode
    }

    pub fn state_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    /// Encoded successors of the state with encoded word `x`.
    pub fn successors(&self, x: u32) -> &[u32] {
        let x = x as usize;
        &self.targets[self.offsets[x]..self.offsets[x + 1]]
    }

    pub fn state(&self, x: u32) -> State {
        State::from_raw(self.n, x)
    }

    /// All edges as encoded pairs, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.state_count() as u32)
            .flat_map(move |x| self.successors(x).iter().map(move |&y| (x, y)))
    }

    /// Predecessor lists in CSR form: `(offsets, sources)`.
    pub(crate) fn reverse(&self) -> (Vec<usize>, Vec<u32>) {
        let states = self.state_count();
        let mut counts = vec![0usize; states + 1];
        for &y in &self.targets {
            counts[y as usize + 1] += 1;
        }
        for i in 0..states {
            counts[i + 1] += counts[i];
        }
        let mut fill = counts.clone();
        let mut sources = vec![0u32; self.targets.len()];
        for x in 0..states as u32 {
            for &y in self.successors(x) {
                sources[fill[y as usize]] = x;
                fill[y as usize] += 1;
            }
        }
        (counts, sources)
    }
}

/// Materializes the transition graph of `model` under `mode`.
pub fn build_stg(model: &BooleanModel, mode: &UpdateMode) -> Result<TransitionGraph> {
    build_stg_with(model, mode, Exec::default())
}

/// Same as [`build_stg`] with an explicit execution strategy; the result does
/// not depend on it.
pub fn build_stg_with(
    model: &BooleanModel,
    mode: &UpdateMode,
    exec: Exec,
) -> Result<TransitionGraph> {
    build_stg_capped(model, mode, exec, None)
}

/// Same as [`build_stg_with`] with an optional tighter cap on `n`.
pub fn build_stg_capped(
    model: &BooleanModel,
    mode: &UpdateMode,
    exec: Exec,
    cap: Option<usize>,
) -> Result<TransitionGraph> {
    let n = model.n();
    let hard = mode.cap();
    let cap = cap.map_or(hard, |c| c.min(hard));
    if n > cap {
        return Err(Error::CapExceeded {
            what: "state transition graph construction",
            n,
            cap,
        });
    }
    check_mode(model, mode)?;
    let states = model.state_count();
    const CHUNK: usize = 4096;
    // Each chunk yields (out-degrees, targets) for its states.
    let parts: Vec<(Vec<u32>, Vec<u32>)> = par::map_range(exec, states.div_ceil(CHUNK), |c| {
        let range = c * CHUNK..((c + 1) * CHUNK).min(states);
        let mut degrees = Vec::with_capacity(range.len());
        let mut targets = Vec::new();
        let mut buf = Vec::new();
        for x in range {
            successor_bits(model, mode, x as u32, &mut buf);
            degrees.push(buf.len() as u32);
            targets.extend_from_slice(&buf);
        }
        (degrees, targets)
    });
    let mut offsets = Vec::with_capacity(states + 1);
    let mut targets = Vec::with_capacity(parts.iter().map(|p| p.1.len()).sum());
    offsets.push(0);
    for (degrees, t) in parts {
        for d in degrees {
            let last = *offsets.last().expect("non-empty");
            offsets.push(last + d as usize);
        }
        targets.extend(t);
    }
    Ok(TransitionGraph {
        n,
        mode: mode.clone(),
        offsets,
        targets,
    })
}
