//! Support library for the `mapent` binary: the channel file format, the
//! error-to-exit-code mapping, and the number formatting shared between the
//! commands and their tests.

pub mod channel_file;

pub use channel_file::{ChannelFile, ChannelMetadata};

/// Success (and "check passed" for certify/verify commands).
pub const EXIT_OK: i32 = 0;
/// The requested check ran and failed (not certified / not saturated).
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Input could not be parsed: unreadable file, malformed JSON, wrong format
/// version, or a shape inconsistent with the file's own declaration.
pub const EXIT_PARSE: i32 = 2;
/// Input parsed but violates a mathematical invariant (bad Kraus family,
/// failed channel predicate, inconsistent block structure, ...).
pub const EXIT_INVARIANT: i32 = 3;

/// Command failure, tagged with how it maps onto the exit-code contract.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Invariant(_) => EXIT_INVARIANT,
        }
    }
}

impl From<mapent::Error> for CliError {
    fn from(e: mapent::Error) -> Self {
        CliError::Invariant(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

/// Entropies and entropy-like quantities: fixed-point, 12 decimal places.
pub fn fmt_entropy(x: f64) -> String {
    format!("{x:.12}")
}

/// Deviations, violations, residuals: scientific, 12 decimal places.
pub fn fmt_small(x: f64) -> String {
    format!("{x:.12e}")
}

/// A comma-separated spectrum in the entropy fixed-point format.
pub fn fmt_spectrum(values: &[f64]) -> String {
    values.iter().map(|v| fmt_entropy(*v)).collect::<Vec<_>>().join(", ")
}

/// Parses a block-structure flag of the form `"dL:dR,dL:dR,..."`.
pub fn parse_blocks(s: &str) -> Result<mapent::BlockSpec, CliError> {
    let mut blocks = Vec::new();
    for part in s.split(',') {
        let (l, r) = part
            .split_once(':')
            .ok_or_else(|| CliError::Parse(format!("block `{part}` is not of the form dL:dR")))?;
        let dl: usize = l
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("bad left dimension in block `{part}`")))?;
        let dr: usize = r
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("bad right dimension in block `{part}`")))?;
        blocks.push((dl, dr));
    }
    Ok(mapent::BlockSpec::new(blocks)?)
}

/// Parses a comma-separated list of probability weights.
pub fn parse_weights(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|w| {
            w.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Parse(format!("bad weight `{w}`")))
        })
        .collect()
}
