//! Census checkpoints as JSON.
//!
//! Permutations are stored as 0-based image arrays. The group is identified
//! by its order and generators; resuming against a different group fails.

use polystring_core::census::{CensusCheckpoint, CensusOptions};
use polystring_core::engine::{FiniteGroup, Perm};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const CHECKPOINT_VERSION: &str = "polystring-checkpoint/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckpointFile {
    pub version: String,
    pub group_order: u128,
    pub group_generators: Vec<Vec<u32>>,
    pub rank_min: usize,
    pub rank_max: usize,
    pub allow_degenerate: bool,
    pub reduce: bool,
    pub frontier: Vec<Vec<Vec<u32>>>,
    pub next: usize,
    pub found: Vec<Vec<Vec<u32>>>,
}

fn images(ps: &[Perm]) -> Vec<Vec<u32>> {
    ps.iter().map(|p| p.images().to_vec()).collect()
}

fn perms(v: &[Vec<u32>]) -> Result<Vec<Perm>, CliError> {
    v.iter()
        .map(|im| Perm::from_images(im.clone()).map_err(CliError::from))
        .collect()
}

impl CheckpointFile {
    pub fn new(group: &FiniteGroup, cp: &CensusCheckpoint) -> Self {
        Self {
            version: CHECKPOINT_VERSION.into(),
            group_order: cp.group_order,
            group_generators: images(group.generators()),
            rank_min: cp.options.rank_min,
            rank_max: cp.options.rank_max,
            allow_degenerate: cp.options.allow_degenerate,
            reduce: cp.options.reduce,
            frontier: cp.frontier.iter().map(|t| images(t)).collect(),
            next: cp.next,
            found: cp.found.iter().map(|t| images(t)).collect(),
        }
    }

    /// The core checkpoint, after checking that it belongs to `group`.
    pub fn to_checkpoint(&self, group: &FiniteGroup) -> Result<CensusCheckpoint, CliError> {
        if self.version != CHECKPOINT_VERSION {
            return Err(CliError::Usage(format!("unsupported checkpoint version `{}`", self.version)));
        }
        if self.group_order != group.order() || self.group_generators != images(group.generators()) {
            return Err(CliError::Usage("checkpoint belongs to a different group".into()));
        }
        Ok(CensusCheckpoint {
            group_order: self.group_order,
            options: CensusOptions {
                rank_min: self.rank_min,
                rank_max: self.rank_max,
                allow_degenerate: self.allow_degenerate,
                reduce: self.reduce,
            },
            frontier: self.frontier.iter().map(|t| perms(t)).collect::<Result<_, _>>()?,
            next: self.next,
            found: self.found.iter().map(|t| perms(t)).collect::<Result<_, _>>()?,
        })
    }

    pub fn write(&self, path: &str) -> Result<(), CliError> {
        let text = serde_json::to_string(self).expect("checkpoints serialize");
        let tmp = format!("{path}.tmp");
        std::fs::write(&tmp, text).map_err(|e| CliError::io(&tmp, e))?;
        std::fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))
    }

    pub fn read(path: &str) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Json {
            context: path.into(),
            source: e,
        })
    }
}
