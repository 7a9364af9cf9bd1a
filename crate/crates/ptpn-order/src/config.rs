use std::fmt;

use ptpn_core::Ptpn;
use ptpn_region::Region;

use crate::ordering::{region_embeds, Ordering};

/// A region paired with the remaining budget needed to finish from it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Config {
    pub region: Region,
    pub budget: u64,
}

impl Config {
    pub fn new(region: Region, budget: u64) -> Self {
        Config { region, budget }
    }

    pub fn display<'a>(&'a self, net: &'a Ptpn) -> ConfigDisplay<'a> {
        ConfigDisplay { net, config: self }
    }
}

pub struct ConfigDisplay<'a> {
    net: &'a Ptpn,
    config: &'a Config,
}

impl fmt::Display for ConfigDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.config.region.display(self.net), self.config.budget)
    }
}

/// Region embedding plus budget `c1.budget <= c2.budget`.
pub fn config_leq(net: &Ptpn, c1: &Config, c2: &Config, ord: Ordering) -> bool {
    c1.budget <= c2.budget && region_embeds(net, &c1.region, &c2.region, ord)
}
