//! The clocked enumeration `M_1, M_2, ...` and the universal simulator.
//!
//! Index `j` runs its program for at most `|x|^j + j` steps on input `x`.
//!
//! In goedel mode `j` is split by the Cantor unpairing `j = pair(a, b)`,
//! `pair(a, b) = (a + b)(a + b + 1)/2 + b`. The binary expansion of `a`
//! (most significant bit first, empty for `a = 0`) is decoded with
//! [`decode_program`]. `b` only serves to make every code recur at infinitely
//! many indices: program `p` with code value `a` sits at
//! `pair(a, 0) < pair(a, 1) < ...`, so its first `m` indices are found within
//! the bound `pair(a, m - 1)`.
//!
//! In roster mode `j >= 1` runs `roster[(j - 1) mod len]`, so a chosen
//! machine appears at a small index and again every `len` indices after it.
//!
//! Index 0 is outside the enumeration proper. It is reserved in both modes
//! for the dummy rejector (`pair(0, 0)` has the empty code), which is what
//! the k-way engine targets while `r < k`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::bits::BitString;
use crate::tm::{self, decode_program, encode_program, fixtures, MachineDescription, RunOutcome};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumerationMode {
    Goedel,
    Roster(Vec<MachineDescription>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerationError {
    #[error("roster mode needs at least one machine")]
    EmptyRoster,
    #[error("roster entry {0} is malformed: {1}")]
    MalformedRosterEntry(usize, tm::TmError),
}

impl EnumerationMode {
    pub fn roster(machines: Vec<MachineDescription>) -> Result<Self, EnumerationError> {
        if machines.is_empty() {
            return Err(EnumerationError::EmptyRoster);
        }
        for (k, m) in machines.iter().enumerate() {
            m.validate().map_err(|e| EnumerationError::MalformedRosterEntry(k, e))?;
        }
        Ok(EnumerationMode::Roster(machines))
    }

    pub fn name(&self) -> &'static str {
        match self {
            EnumerationMode::Goedel => "goedel",
            EnumerationMode::Roster(_) => "roster",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClockedMachine {
    pub index: BigUint,
    pub program: MachineDescription,
    pub clock_exponent: BigUint,
}

impl ClockedMachine {
    /// `|x|^j + j`, saturating at `u64::MAX`.
    pub fn budget(&self, input_len: usize) -> u64 {
        clock_budget(input_len as u64, &self.clock_exponent)
    }
}

/// `base^exp` with the convention `0^0 = 0`, saturating at `u64::MAX`.
///
/// The zero-base convention makes `T = d^j + j` vanish at `d = j = 0`.
pub fn pow_clock(base: u64, exp: u64) -> u64 {
    match base {
        0 => 0,
        1 => 1,
        _ => u32::try_from(exp)
            .ok()
            .and_then(|e| base.checked_pow(e))
            .unwrap_or(u64::MAX),
    }
}

/// `n^j + j` saturating at `u64::MAX`.
pub fn clock_budget(n: u64, j: &BigUint) -> u64 {
    let Some(j) = j.to_u64() else { return u64::MAX };
    pow_clock(n, j).saturating_add(j)
}

pub fn pair(a: &BigUint, b: &BigUint) -> BigUint {
    let s = a + b;
    (&s * (&s + 1u32)) / 2u32 + b
}

pub fn unpair(z: &BigUint) -> (BigUint, BigUint) {
    let w = ((z * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let b = z - t;
    let a = w - &b;
    (a, b)
}

/// Binary expansion of `a`, empty for zero.
fn expansion(a: &BigUint) -> BitString {
    if a.is_zero() {
        return BitString::empty();
    }
    let bits = a.bits();
    (0..bits).rev().map(|k| a.bit(k)).collect()
}

/// The integer whose binary expansion is `code`.
fn code_value(code: &[bool]) -> BigUint {
    code.iter().fold(BigUint::zero(), |acc, &b| (acc << 1u32) + u32::from(b))
}

/// Goedel-mode code value of a program (its canonical code as a number).
pub fn program_code_value(p: &MachineDescription) -> BigUint {
    code_value(&encode_program(p))
}

/// The `copies` smallest goedel indices of the well-formed program `p`
/// carrying its canonical code, i.e. `pair(a, 0), ..., pair(a, copies - 1)`.
pub fn goedel_indices(p: &MachineDescription, copies: u32) -> Vec<BigUint> {
    let a = program_code_value(p);
    (0..copies).map(|b| pair(&a, &BigUint::from(b))).collect()
}

pub fn index_to_machine(j: &BigUint, mode: &EnumerationMode) -> ClockedMachine {
    let program = if j.is_zero() {
        fixtures::dummy_rejector()
    } else {
        match mode {
            EnumerationMode::Goedel => decode_program(&expansion(&unpair(j).0)),
            EnumerationMode::Roster(roster) => {
                let len = BigUint::from(roster.len());
                let pos = ((j - 1u32) % len).to_usize().expect("position below roster length");
                roster[pos].clone()
            }
        }
    };
    ClockedMachine { index: j.clone(), program, clock_exponent: j.clone() }
}

/// Simulates `M_j` on `x` under its clock.
pub fn universal_run<F>(j: &BigUint, x: &[bool], mode: &EnumerationMode, oracle: F) -> RunOutcome
where
    F: FnMut(&BitString) -> bool,
{
    let m = index_to_machine(j, mode);
    let budget = m.budget(x.len());
    tm::run(&m.program, x, budget, oracle).expect("enumerated programs are well formed")
}

/// True iff `M_j` accepts `x` within `|x|^j + j` steps.
pub fn universal_accepts<F>(j: &BigUint, x: &[bool], mode: &EnumerationMode, oracle: F) -> bool
where
    F: FnMut(&BitString) -> bool,
{
    universal_run(j, x, mode, oracle).accepted()
}

/// All `1 <= j <= limit` whose program equals `p`, ascending.
///
/// Codes that fail to decode all land on the dummy, so the dummy's indices
/// are dense and are found by scanning `1..=limit`; keep `limit` modest
/// when asking for it. Any other well-formed program has exactly one code
/// value `a` and its indices are `pair(a, b)` for `b = 0, 1, ...`.
pub fn indices_of_program(p: &MachineDescription, limit: &BigUint, mode: &EnumerationMode) -> Vec<BigUint> {
    match mode {
        EnumerationMode::Roster(roster) => {
            let len = BigUint::from(roster.len());
            let mut out: Vec<BigUint> = Vec::new();
            for (pos, m) in roster.iter().enumerate() {
                if m != p {
                    continue;
                }
                let mut j = BigUint::from(pos + 1);
                while &j <= limit {
                    out.push(j.clone());
                    j += &len;
                }
            }
            out.sort();
            out
        }
        EnumerationMode::Goedel if *p == fixtures::dummy_rejector() => {
            let mut out = Vec::new();
            let mut j = BigUint::one();
            while &j <= limit {
                if index_to_machine(&j, mode).program == *p {
                    out.push(j.clone());
                }
                j += 1u32;
            }
            out
        }
        EnumerationMode::Goedel => {
            if p.validate().is_err() {
                return Vec::new();
            }
            let a = program_code_value(p);
            let mut out = Vec::new();
            let mut b = BigUint::zero();
            loop {
                let j = pair(&a, &b);
                if &j > limit {
                    break out;
                }
                out.push(j);
                b += 1u32;
            }
        }
    }
}
