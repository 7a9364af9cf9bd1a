//! Random small nets, regions and markings, exhaustive oracles, and the
//! differential checks built from them.

pub mod criteria;
pub mod gen;
pub mod oracle;

pub use gen::{palette, random_delta_marking, random_net, random_region, random_step, random_value};
pub use oracle::{forward_oracle, successors, OracleAnswer, StepKind, Universe};
