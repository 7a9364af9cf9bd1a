//! Orderings on regions and configurations, minimal bases of upward-closed
//! sets, and cost-token padding.

pub mod basis;
pub mod config;
pub mod ordering;
pub mod pad;

pub use basis::{basis_from_json, basis_to_json, config_to_json, member_upward, minimize, Basis, BasisJsonError};
pub use config::{config_leq, Config};
pub use ordering::{region_embeds, Ordering};
pub use pad::{add_cost_token, cost_pad, cost_pad_with, PadLimit};
