use std::path::Path;

use ptpn_concrete::check_delta;
use ptpn_core::rat::{parse_rat, ratio};
use ptpn_core::Rat;
use ptpn_solver::SearchBounds;
use serde::Deserialize;

use crate::args::BoundsArgs;
use crate::commands::CliError;

/// Contents of the optional settings file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileSettings {
    pub delta: Option<String>,
    pub max_depth: Option<usize>,
    pub max_tokens: Option<usize>,
    pub max_configs: Option<usize>,
}

pub fn load(path: Option<&Path>) -> Result<FileSettings, CliError> {
    let Some(path) = path else { return Ok(FileSettings::default()) };
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

pub const DEFAULT_DELTA: (i64, i64) = (1, 1000);

impl FileSettings {
    pub fn bounds(&self, flags: &BoundsArgs) -> SearchBounds {
        let d = SearchBounds::default();
        SearchBounds {
            max_depth: flags.max_depth.or(self.max_depth).unwrap_or(d.max_depth),
            max_tokens: flags.max_tokens.or(self.max_tokens).unwrap_or(d.max_tokens),
            max_configs: flags.max_configs.or(self.max_configs).unwrap_or(d.max_configs),
        }
    }

    /// The flag value if given, else the file value, else the default.
    pub fn delta(&self, flag: Option<&str>) -> Result<Rat, CliError> {
        match (flag, &self.delta) {
            (Some(s), _) => parse_delta(s, CliError::Usage),
            (None, Some(s)) => parse_delta(s, CliError::Data),
            (None, None) => Ok(ratio(DEFAULT_DELTA.0, DEFAULT_DELTA.1)),
        }
    }
}

/// Unparseable text is reported through `malformed`; a number outside (0, 1/5)
/// admits no delta-form marking and is rejected as invalid.
pub fn parse_delta(s: &str, malformed: fn(String) -> CliError) -> Result<Rat, CliError> {
    let d = parse_rat(s).ok_or_else(|| malformed(format!("invalid delta `{s}`")))?;
    check_delta(&d).map_err(|_| CliError::Invalid(format!("delta {s} must lie strictly between 0 and 1/5")))?;
    Ok(d)
}
