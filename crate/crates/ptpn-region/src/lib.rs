//! Region abstraction of delta-form markings: the three-part word of
//! multisets, the four symbolic delay types and symbolic firing.

pub mod literal;
pub mod realize;
pub mod region;
pub mod selfcheck;
pub mod symbolic;

pub use literal::{format_region, parse_region, region_from_json, region_to_json, RegionLiteralError};
pub use realize::{realize_step, RealizeError};
pub use region::{Multiset, Part, RVal, Region, Token};
pub use symbolic::{
    abstract_marking, age_of, all_regions, apply_fire_choice, apply_sym_step, class_sat, concretize, fire_region,
    fire_region_detailed, insert_token, locations, remove_tokens, satisfies, slots, succ_a, succ_a_labeled, succ_b,
    succ_b_labeled, succ_type1, succ_type2, succ_type_b, token_cost, BKind, FireChoice, InvalidSplit, Loc, Slot,
    SymStep,
};
