//! Concrete semantics of priced timed Petri nets over exact rationals:
//! markings, delays, firings, computation replay and delta-form checks.

pub mod delta;
pub mod marking;
pub mod semantics;
pub mod trace;

pub use delta::{
    check_delta, crossing_instants, decompose_delta, frac_in_delta_form, is_delta_computation, is_delta_form,
    is_detailed_delay, split_delay, Decomposition, DeltaError,
};
pub use marking::{format_marking, parse_marking, parse_token, LiteralError, Marking};
pub use semantics::{
    apply_step, delay_step, enabled_bindings, fire_step, matches_arcs, run, storage_rate, Computation, RunError,
    RunReport, Step, StepError,
};
pub use trace::{parse_trace, serialize_trace, step_to_json, TraceError};
