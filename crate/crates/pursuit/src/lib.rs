//! Pursuit-evasion analysis engine for cops-and-robbers games.
//!
//! The crate is organized around one pipeline:
//!
//! * [`graph`] — graphs/digraphs plus boundary, ball, component, core and
//!   expansion primitives;
//! * [`game`] — the rules of the classical, directed, speed-R and
//!   infinite-speed variants, and an arena that plays controllers against
//!   each other;
//! * [`solver`] — an exact backward-induction oracle for cop numbers and
//!   optimal strategies at desk scale;
//! * [`trim`], [`hall`], [`sprinkle`], [`params`], [`controllers`] — the
//!   constructive ingredients of the expansion-based upper bounds;
//! * [`reduction`] — weakly-connected digraphs reduced to per-component
//!   games plus a covering program over condensation sources;
//! * [`lab`] — random-graph generators, property validators, and the two
//!   lower-bound evasion controllers;
//! * [`enumerate`] — exhaustive graph/digraph enumeration up to isomorphism
//!   for oracle sweeps.

pub mod controllers;
pub mod enumerate;
pub mod game;
pub mod graph;
pub mod hall;
pub mod lab;
pub mod params;
pub mod reduction;
pub mod solver;
pub mod sprinkle;
pub mod trim;

pub use game::{GameConfig, GameState, Phase, Speed, Trace};
pub use graph::{Graph, GraphError, VertexSet};
pub use solver::SolveResult;
