//! The on-disk channel format: versioned JSON with complex entries as
//! `[re, im]` pairs, chosen for diffability and cross-language fixture
//! sharing. Serialization round-trips `f64` values bit-exactly.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::CliError;
use mapent::{Channel, Complex, Matrix};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ChannelMetadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A channel as stored on disk: `kraus[op][row][col] = [re, im]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelFile {
    pub format_version: String,
    pub dim: usize,
    pub kraus: Vec<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<ChannelMetadata>,
}

impl ChannelFile {
    pub fn from_channel(ch: &Channel, metadata: Option<ChannelMetadata>) -> Self {
        let kraus = ch
            .kraus()
            .iter()
            .map(|m| {
                (0..m.rows())
                    .map(|r| (0..m.cols()).map(|c| [m.get(r, c).re, m.get(r, c).im]).collect())
                    .collect()
            })
            .collect();
        ChannelFile { format_version: FORMAT_VERSION.into(), dim: ch.dim(), kraus, metadata }
    }

    /// Rebuilds the channel. Shape inconsistencies with the declared `dim`
    /// are parse errors; families the library rejects are invariant errors.
    pub fn to_channel(&self) -> Result<Channel, CliError> {
        if self.format_version != FORMAT_VERSION {
            return Err(CliError::Parse(format!(
                "unsupported format_version `{}` (expected `{FORMAT_VERSION}`)",
                self.format_version
            )));
        }
        if self.kraus.is_empty() {
            return Err(CliError::Parse("file contains no Kraus operators".into()));
        }
        let n = self.dim;
        let mut ops = Vec::with_capacity(self.kraus.len());
        for (which, rows) in self.kraus.iter().enumerate() {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(CliError::Parse(format!(
                    "operator {which} is not {n}x{n} as declared by dim"
                )));
            }
            let mut m = Matrix::zeros(n, n);
            for (r, row) in rows.iter().enumerate() {
                for (c, &[re, im]) in row.iter().enumerate() {
                    m.set(r, c, Complex::new(re, im));
                }
            }
            ops.push(m);
        }
        Ok(Channel::new(ops)?)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self)
            .expect("channel files contain only serializable data");
        fs::write(path, text + "\n")
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        Ok(())
    }
}

/// Convenience: load a path directly into a channel.
pub fn load_channel(path: &Path) -> Result<Channel, CliError> {
    ChannelFile::load(path)?.to_channel()
}
