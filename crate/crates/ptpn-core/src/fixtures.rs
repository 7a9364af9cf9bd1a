//! The two reference nets shipped with the toolkit.

use crate::net::Ptpn;
use crate::parse::parse_net;

pub const SIMPLE_TEXT: &str = include_str!("../../../fixtures/simple.net");
pub const MAIN_TEXT: &str = include_str!("../../../fixtures/main.net");

/// red(1), blue(1); t1 moves a red token aged in (1,2) to blue.
pub fn simple() -> Ptpn {
    parse_net(SIMPLE_TEXT).expect("bundled fixture parses")
}

/// The five-place reference net with cmax 6.
pub fn main_net() -> Ptpn {
    parse_net(MAIN_TEXT).expect("bundled fixture parses")
}
