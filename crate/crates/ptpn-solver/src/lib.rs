//! Decision procedures for priced timed Petri nets: predecessor operators, the
//! backward fixpoint, cost-threshold, coverability and cost-optimality, plus
//! witness reconstruction and concrete replay.

pub mod fixpoint;
pub mod forward;
pub mod pre;
pub mod query;
pub mod report;
pub mod threshold;
pub mod witness;

pub use fixpoint::{acjt_fixpoint, bounded_pre_star, Fixpoint, Goal, Link, Links, PreStar};
pub use forward::forward_search;
pub use pre::{minimal_labeled, pre_a, pre_ab, pre_b, pre_discrete, target_basis, PreLabel};
pub use query::{Bound, Exactness, OptResult, Query, SearchBounds, Verdict, Witness, WitnessStep};
pub use report::{optimal_json, replay_json, threshold_json, witness_json};
pub use threshold::{
    cost_optimal, cost_threshold, coverability, coverability_with, Iteration, OptReport, Stage, ThresholdReport,
};
pub use witness::{reconstruct, replay_witness, Replay, ReplayError, WitnessError};
