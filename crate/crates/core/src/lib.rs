//! Team diagonalization laboratory.
//!
//! Builds the splitting function `r` that partitions a set S (by default
//! SAT over a fixed binary encoding) into parts `x ∈ S, r(|x|) ≡ p (mod k)`,
//! together with everything it runs on: clocked oracle machines, their
//! enumeration, a brute-force SAT decider, and the composition `g ∘ f`.

pub mod bits;
pub mod deciders;
pub mod engine;
pub mod enumeration;
pub mod harness;
pub mod optp;
pub mod tm;

pub use bits::BitString;
pub use deciders::{make_sat_sdecider, sat_brute, CnfFormula, SDecider};
pub use engine::{DepthFn, DiagEvent, EngineConfig, EngineError, RTable};
pub use enumeration::EnumerationMode;
pub use tm::{MachineDescription, RunOutcome, Verdict};
