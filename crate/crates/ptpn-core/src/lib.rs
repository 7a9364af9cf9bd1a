//! Core model for priced timed Petri nets: places with storage costs,
//! transitions with firing costs and interval-labelled arcs, and the text format.

pub mod fixtures;
pub mod interval;
pub mod net;
pub mod parse;
pub mod rat;

pub use interval::{interval_contains, Interval, IntervalError};
pub use net::{cmax, Arc, NetBuilder, NetError, Place, PlaceId, Ptpn, Transition, TransitionId};
pub use parse::{parse_interval, parse_net, serialize_net, ParseError};
pub use rat::Rat;
