//! The splitting function `r`, computed by team diagonalization, and the
//! sets it induces.
//!
//! `r(0) = r(1) = r(2) = initial_r`. For `i >= 2`, `r(i+1)` is obtained from
//! the prefix `r(0..=i)`: with `j = r(i) / k` and `T = d^j + j` where
//! `d = depth_fn(i)`, the attempt is abandoned when `cost(T) >= i`.
//! Otherwise every `y` with `|y| <= d` is tried, in length-lexicographic
//! order, as a witness that SAT differs from `M_j` run with oracle part
//! `(r(i) + 1) mod k`. A witness advances `r` by one.
//!
//! Part `p` of the split holds the members `x` of S with `r(|x|) mod k = p`.
//! With `k = 2`, part 0 is A (r even) and part 1 is B (r odd); an even `r`
//! diagonalizes against B and an odd `r` against A.

mod gate;
mod membership;
mod table;

pub use gate::{ceil_log2, gate_fails, gate_exponent, gate_t};
pub use membership::{member_d, member_part, oracle_answer, part_label, parse_part_label};
pub use table::{check_witness, r, DiagEvent, RTable, WitnessProbe};

use sha2::{Digest, Sha256};
use std::fmt;
use std::str::FromStr;

use crate::deciders::{make_sat_sdecider, SDecider};
use crate::enumeration::EnumerationMode;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("circularity violation at i = {i}: oracle query of length {query_len} (must be < i)")]
    Circularity { i: u64, query_len: usize },
    #[error("r({len}) is not determined yet (table holds r(0..={known}))")]
    Undetermined { len: u64, known: u64 },
    #[error("part {part} out of range for k = {k}")]
    PartOutOfRange { part: u32, k: u32 },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Named depth functions bounding the witness length at step `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DepthFn {
    /// `⌊log2 max(1, ⌊log2 i⌋)⌋` for `i >= 2`, else 0.
    DLogLog,
    /// `⌊log2 max(1, dloglog(i))⌋` for `i >= 2`, else 0.
    DLogLogLog,
    /// `⌊log2 i⌋` (0 for `i <= 1`).
    Log2,
    /// `⌊⌊log2 i⌋ / 2⌋` (0 for `i <= 1`).
    HalfLog2,
}

fn floor_log2(v: u64) -> u64 {
    if v <= 1 {
        0
    } else {
        u64::from(63 - v.leading_zeros())
    }
}

impl DepthFn {
    pub const ALL: [DepthFn; 4] = [DepthFn::DLogLog, DepthFn::DLogLogLog, DepthFn::Log2, DepthFn::HalfLog2];

    pub fn eval(self, i: u64) -> u64 {
        match self {
            DepthFn::DLogLog if i >= 2 => floor_log2(floor_log2(i).max(1)),
            DepthFn::DLogLogLog if i >= 2 => floor_log2(DepthFn::DLogLog.eval(i).max(1)),
            DepthFn::DLogLog | DepthFn::DLogLogLog => 0,
            DepthFn::Log2 => floor_log2(i),
            DepthFn::HalfLog2 => floor_log2(i) / 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DepthFn::DLogLog => "dloglog",
            DepthFn::DLogLogLog => "dlogloglog",
            DepthFn::Log2 => "log2",
            DepthFn::HalfLog2 => "half-log2",
        }
    }
}

impl fmt::Display for DepthFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DepthFn {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DepthFn::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| EngineError::Config(format!("unknown depth function `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub s_decider: SDecider,
    /// Number of parts (teams), at least 2.
    pub k: u32,
    pub depth_fn: DepthFn,
    pub enumeration: EnumerationMode,
    pub initial_r: u64,
}

impl Default for EngineConfig {
    /// S = SAT by brute force (c = 2), k = 2, dloglog depth, goedel mode.
    fn default() -> Self {
        EngineConfig {
            s_decider: make_sat_sdecider(),
            k: 2,
            depth_fn: DepthFn::DLogLog,
            enumeration: EnumerationMode::Goedel,
            initial_r: 2,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<(), EngineError> {
        if self.k < 2 {
            return Err(EngineError::Config(format!("k must be at least 2, got {}", self.k)));
        }
        if self.s_decider.exponent_c < 1 {
            return Err(EngineError::Config("exponent c must be at least 1".into()));
        }
        Ok(())
    }

    pub fn with_k(mut self, k: u32) -> Self {
        self.k = k;
        self
    }

    pub fn with_depth(mut self, depth_fn: DepthFn) -> Self {
        self.depth_fn = depth_fn;
        self
    }

    pub fn with_exponent(mut self, c: u32) -> Self {
        self.s_decider = self.s_decider.with_exponent(c);
        self
    }

    pub fn with_enumeration(mut self, mode: EnumerationMode) -> Self {
        self.enumeration = mode;
        self
    }

    /// Canonical key-value rendering; everything that can change a value of
    /// `r` appears here. Roster machines enter through a digest of their
    /// canonical text.
    pub fn canonical_document(&self) -> String {
        let mut doc = String::new();
        doc.push_str(&format!("decider={}\n", self.s_decider.name));
        doc.push_str(&format!("c={}\n", self.s_decider.exponent_c));
        doc.push_str(&format!("cost={}\n", self.s_decider.cost_fn.describe()));
        doc.push_str(&format!("k={}\n", self.k));
        doc.push_str(&format!("depth={}\n", self.depth_fn));
        doc.push_str(&format!("enumeration={}\n", self.enumeration.name()));
        if let EnumerationMode::Roster(machines) = &self.enumeration {
            let mut h = Sha256::new();
            for m in machines {
                h.update(m.to_string().as_bytes());
                h.update(b"--\n");
            }
            doc.push_str(&format!("roster={}\n", hex::encode(h.finalize())));
        }
        doc.push_str(&format!("initial_r={}\n", self.initial_r));
        doc
    }

    pub fn fingerprint(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_document().as_bytes()))
    }

    /// One-line summary used in trace headers.
    pub fn summary(&self) -> String {
        self.canonical_document()
            .lines()
            .filter(|l| !l.starts_with("roster="))
            .collect::<Vec<_>>()
            .join(" ")
    }
}
