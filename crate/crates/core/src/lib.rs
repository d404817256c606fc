//! Boolean finite dynamical systems: models, regulatory graphs, update modes,
//! state transition graphs, attractors, and exhaustive checks of the
//! convergence theorems for models whose regulatory graph has no circuit.
//!
//! States are `u32` words with component `g1` in the least significant bit;
//! text renders `x1` leftmost. Component indices are 0-based in this API and
//! 1-based in every text, JSON and DOT rendering.
//!
//! ```
//! use boolnet::{build_stg, is_simple, netparse::parse_model, UpdateMode};
//!
//! let model = parse_model("a : 1\nb : a\nc : a & !b").unwrap();
//! let g = build_stg(&model, &UpdateMode::Asynchronous).unwrap();
//! assert!(is_simple(&g));
//! ```
//!
//! With the default `parallel` feature, exhaustive passes over the state space
//! run on rayon; [`Exec::Sequential`] (or building without the feature) gives
//! the single-threaded path with identical results.

pub mod analysis;
pub mod dynamics;
mod error;
pub mod export;
pub mod genlab;
pub mod model;
pub mod netparse;
mod par;
pub mod reggraph;

pub use analysis::{
    attractor_report, attractors, basins, fixed_points, graph_fixed_points, has_cycle_geq2,
    is_simple, sccs, shortest_path_lengths, verify_inputs_theorem, verify_inputs_theorem_with,
    verify_robert, verify_robert_with, AttractorReport, Basins, Check, Sccs, Theorem,
    TheoremReport, VerifyOptions, Witness,
};
pub use dynamics::{
    build_stg, build_stg_capped, build_stg_with, successors, trajectory, validate_family,
    TransitionGraph, UpdateFamily, UpdateMode, FULLY_ASYNC_CAP, STG_CAP,
};
pub use error::{Error, FamilyError, Result};
pub use model::{BooleanModel, ComponentSet, State, Subcube, TruthTable, MAX_COMPONENTS};
pub use par::Exec;
pub use reggraph::{
    bdistance, bmatrix, bool_mat_mul, bool_mat_vec, check_basic_inequality,
    extract_regulatory_graph, is_nilpotent, topological_sort, BoolVector, BooleanMatrix,
    Permutation, RegulatoryGraph, Sign,
};
