//! Resumable census state, content-hashed with SHA-256.

use super::context::GroupContext;
use super::run::StratumCounts;
use crate::bits::ElemSet;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckpointHeader {
    pub group: String,
    pub order: usize,
    /// Normal subgroups as hex bit vectors, in census order.
    pub normal_subgroups: Vec<String>,
    pub c: usize,
    pub version: u32,
}

#[derive(Serialize, Deserialize)]
struct Payload {
    header: CheckpointHeader,
    next_index: u64,
    counts: Vec<StratumCounts>,
}

#[derive(Serialize, Deserialize)]
struct OnDisk {
    #[serde(flatten)]
    payload: Payload,
    hash: String,
}

#[derive(Debug)]
pub struct Checkpoint {
    pub header: CheckpointHeader,
    pub next_index: u64,
    pub counts: Vec<StratumCounts>,
}

fn digest(p: &Payload) -> Result<String> {
    let bytes = serde_json::to_vec(p)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

impl Checkpoint {
    pub fn header(gctx: &GroupContext, ns: &[ElemSet]) -> CheckpointHeader {
        let n = gctx.group.order();
        CheckpointHeader {
            group: gctx.group.label().to_string(),
            order: n,
            normal_subgroups: ns.iter().map(|s| s.to_hex(n)).collect(),
            c: gctx.c,
            version: CHECKPOINT_VERSION,
        }
    }

    pub fn new(header: CheckpointHeader, next_index: u64, counts: Vec<StratumCounts>) -> Self {
        Checkpoint { header, next_index, counts }
    }

    /// Writes to a sibling temporary file and renames it into place.
    pub fn save(&self, path: &Path) -> Result<()> {
        let payload = Payload { header: self.header.clone(), next_index: self.next_index, counts: self.counts.clone() };
        let hash = digest(&payload)?;
        let text = serde_json::to_string_pretty(&OnDisk { payload, hash })?;
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, text)?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let disk: OnDisk =
            serde_json::from_str(&text).map_err(|e| Error::Checkpoint(format!("unreadable: {e}")))?;
        if digest(&disk.payload)? != disk.hash {
            return Err(Error::Checkpoint("content hash mismatch".into()));
        }
        let p = disk.payload;
        if p.header.version != CHECKPOINT_VERSION {
            return Err(Error::Checkpoint(format!("unsupported version {}", p.header.version)));
        }
        Ok(Checkpoint { header: p.header, next_index: p.next_index, counts: p.counts })
    }

    pub fn check_header(&self, expected: &CheckpointHeader) -> Result<()> {
        if &self.header != expected {
            return Err(Error::Checkpoint("header does not match this census".into()));
        }
        if self.counts.len() != expected.normal_subgroups.len() {
            return Err(Error::Checkpoint("count vector length mismatch".into()));
        }
        Ok(())
    }
}
