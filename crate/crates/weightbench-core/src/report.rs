//! JSON report envelope and the serializable payload shapes the CLI
//! emits.  Reports must be byte-identical across runs for fixed inputs
//! and caps, so: struct fields serialize in declaration order, any maps
//! are BTreeMaps, and wall-clock timing goes to stderr, never in here.

use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::chains::{ChainClass, ChainPairing};
use crate::error::Result;
use crate::fusion::{AxiomReport, FusionData};

#[derive(Serialize, Clone, Debug)]
pub struct Report<T: Serialize> {
    pub version: &'static str,
    pub command: String,
    pub input_digest: String,
    pub payload: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &str, input_digest: String, payload: T) -> Self {
        Report {
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            input_digest,
            payload,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }
}

pub fn digest_bytes(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    hex(&h.finalize())
}

/// Digest of several input files: each contributes its file name and
/// contents, so renaming or reordering inputs changes the digest.
pub fn digest_files(paths: &[&Path]) -> Result<String> {
    let mut h = Sha256::new();
    for p in paths {
        let name = p
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        h.update(name.as_bytes());
        h.update([0u8]);
        h.update(std::fs::read(p)?);
        h.update([0u8]);
    }
    Ok(hex(&h.finalize()))
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{:02x}", b)).collect()
}

#[derive(Serialize, Clone, Debug)]
pub struct FusionClassEntry {
    pub order: usize,
    pub class_size: usize,
    pub centric: bool,
    pub f_radical: bool,
    pub dade_radical: bool,
    pub normalizer_order: usize,
    pub centralizer_order: usize,
    pub automizer_order: usize,
}

#[derive(Serialize, Clone, Debug)]
pub struct FusionPayload {
    pub prime: u64,
    pub group_order: usize,
    pub sylow_order: usize,
    pub classes: Vec<FusionClassEntry>,
    pub axioms: AxiomReport,
}

pub fn fusion_payload(fusion: &FusionData, axioms: AxiomReport, group_order: usize) -> FusionPayload {
    FusionPayload {
        prime: fusion.prime,
        group_order,
        sylow_order: fusion.sylow.order(),
        axioms,
        classes: fusion
            .classes
            .iter()
            .map(|c| FusionClassEntry {
                order: c.order,
                class_size: c.class_size,
                centric: c.centric,
                f_radical: c.f_radical,
                dade_radical: c.dade_radical,
                normalizer_order: c.normalizer.order(),
                centralizer_order: c.centralizer.order(),
                automizer_order: c.automizer.order(),
            })
            .collect(),
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct ChainClassEntry {
    pub length: usize,
    pub member_orders: Vec<usize>,
    pub orbit_size: usize,
    pub normalizer_order: usize,
    pub in_normal_series: bool,
    pub dade_radical_chain: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct ChainsPayload {
    pub prime: u64,
    pub group_order: usize,
    pub class_count: usize,
    pub dade_class_count: usize,
    pub classes: Vec<ChainClassEntry>,
}

pub fn chain_entries(classes: &[ChainClass]) -> Vec<ChainClassEntry> {
    classes
        .iter()
        .map(|c| ChainClassEntry {
            length: c.length(),
            member_orders: c.rep.members.iter().map(|m| m.order()).collect(),
            orbit_size: c.orbit_size,
            normalizer_order: c.normalizer.order(),
            in_normal_series: c.in_normal_series,
            dade_radical_chain: c.dade_radical_chain,
        })
        .collect()
}

#[derive(Serialize, Clone, Debug)]
pub struct PairingPayload {
    pub mode: String,
    pub class_count: usize,
    pub paired_count: usize,
    pub survivor_count: usize,
    pub survivor_lengths: Vec<usize>,
    pub verified: bool,
}

pub fn pairing_payload(classes: &[ChainClass], pairing: &ChainPairing, mode: &str) -> PairingPayload {
    let paired = pairing.partner.iter().filter(|p| p.is_some()).count();
    PairingPayload {
        mode: mode.to_string(),
        class_count: classes.len(),
        paired_count: paired,
        survivor_count: pairing.survivors.len(),
        survivor_lengths: pairing.survivors.iter().map(|&i| classes[i].length()).collect(),
        verified: true,
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct SweepEntry {
    pub file: String,
    pub prime: u64,
    pub group_order: usize,
    pub brauer_count: u64,
    pub weight_count: u64,
    pub alperin_equal: bool,
    pub sums_all_equal: bool,
    pub tau_survivors: usize,
    pub varpi_survivors: usize,
    pub pairings_verified: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct SweepPayload {
    pub entries: Vec<SweepEntry>,
    pub all_ok: bool,
}
