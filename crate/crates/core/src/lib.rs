//! Exact simulation of the three-qubit "enhanced interrogation" quantum
//! prisoners' dilemma.
//!
//! The interrogator entangles the prisoners' qubits `A` and `B` and couples
//! them to a resource qubit `Q`; each prisoner then plays one of the four
//! quaternionic strategies `{I, X, Y, Z}` before the interrogator undoes the
//! preparation and measures `A` and `B`. This crate evaluates the payoffs,
//! enumerates pure Nash equilibria, computes pairwise concurrences and runs
//! the parameter sweeps, bisections and ellipse fits used to map the
//! equilibrium regions.

pub mod analysis;
pub mod entanglement;
pub mod equilibrium;
pub mod error;
pub mod game;
pub mod quantum;

pub use entanglement::{pairwise_concurrences, wootters_concurrence, ConcurrenceTriple};
pub use equilibrium::{
    classify, find_pure_ne, is_nash, Equilibrium, EquilibriumReport, EquilibriumType, PayoffBimatrix, DEFAULT_EPSILON,
};
pub use error::{Error, Result};
pub use game::{
    baseline_evaluate, evaluate_game, measurement_distribution, prepare_pre_strategy_state, GameParams, Interrogation,
    Move, OutcomeDistribution, PayoffPair, PayoffTable, Strategy, StrategyProfile,
};
pub use quantum::{entangler, DensityMatrix2, Qubit, StateVector, Unitary2, Unitary4};
