//! Canonical binary code for machine programs.
//!
//! ```text
//! code   := "1" gamma(n) id(start) id(accept) id(reject) oracle rows
//! oracle := "0" | "1" id(query) id(yes) id(no)
//! rows   := for each state s in 0..n, for each symbol in (0, 1, blank): slot
//! slot   := "0"                                   (no transition)
//!         | "1" id(next) sym move emit
//! sym    := "00" -> 0 | "01" -> 1 | "10" -> blank          ("11" invalid)
//! move   := "00" -> L | "01" -> R | "10" -> S              ("11" invalid)
//! emit   := "0" | "1" bit                         (append bit to query tape)
//! ```
//!
//! `gamma(n)` is the Elias gamma code of the state count `n >= 1`:
//! `bitlen(n) - 1` zeros followed by `n` in binary. `id(s)` is `s` written in
//! exactly `bitlen(n - 1)` bits (zero bits when `n = 1`). The leading "1"
//! makes every code the binary expansion of a positive integer.
//!
//! Decoding is total: a string that is not exactly one code word, or whose
//! table fails validation, decodes to [`fixtures::dummy_rejector`]. Every
//! well-formed table has exactly one code word, so decoding inverts
//! [`encode_program`].

use super::{fixtures, MachineDescription, Move, OracleStates, Symbol, Transition};
use crate::bits::BitString;

fn bit_len(v: u64) -> u32 {
    64 - v.leading_zeros()
}

fn id_width(state_count: u32) -> u32 {
    bit_len(u64::from(state_count.saturating_sub(1)))
}

fn push_uint(out: &mut BitString, value: u64, width: u32) {
    for k in (0..width).rev() {
        out.push((value >> k) & 1 == 1);
    }
}

/// Encodes a program. The machine is expected to be well formed; the output
/// for a malformed machine decodes to the dummy.
pub fn encode_program(m: &MachineDescription) -> BitString {
    let n = m.state_count;
    let w = id_width(n);
    let mut out = BitString::empty();
    out.push(true);
    let nl = bit_len(u64::from(n));
    for _ in 1..nl {
        out.push(false);
    }
    push_uint(&mut out, u64::from(n), nl);
    for id in [m.start, m.accept, m.reject] {
        push_uint(&mut out, u64::from(id), w);
    }
    match m.oracle {
        None => out.push(false),
        Some(o) => {
            out.push(true);
            for id in [o.query, o.yes, o.no] {
                push_uint(&mut out, u64::from(id), w);
            }
        }
    }
    for slot in &m.transitions {
        match slot {
            None => out.push(false),
            Some(t) => {
                out.push(true);
                push_uint(&mut out, u64::from(t.next), w);
                push_uint(&mut out, t.write.index() as u64, 2);
                let mv = match t.head {
                    Move::Left => 0,
                    Move::Right => 1,
                    Move::Stay => 2,
                };
                push_uint(&mut out, mv, 2);
                match t.emit {
                    None => out.push(false),
                    Some(b) => {
                        out.push(true);
                        out.push(b);
                    }
                }
            }
        }
    }
    out
}

struct Reader<'a> {
    bits: &'a [bool],
    pos: usize,
}

impl Reader<'_> {
    fn bit(&mut self) -> Option<bool> {
        let b = *self.bits.get(self.pos)?;
        self.pos += 1;
        Some(b)
    }

    fn uint(&mut self, width: u32) -> Option<u64> {
        let mut v = 0u64;
        for _ in 0..width {
            v = (v << 1) | u64::from(self.bit()?);
        }
        Some(v)
    }

    fn state(&mut self, width: u32) -> Option<u32> {
        self.uint(width).map(|v| v as u32)
    }
}

/// Largest state count the decoder accepts. Bounds allocation for
/// adversarial codes; such a table needs far more bits than any index the
/// engine reaches.
const MAX_STATES: u64 = 1 << 16;

fn try_decode(code: &[bool]) -> Option<MachineDescription> {
    let mut r = Reader { bits: code, pos: 0 };
    if !r.bit()? {
        return None;
    }
    let mut zeros = 0u32;
    while !r.bit()? {
        zeros += 1;
        if zeros >= 17 {
            return None;
        }
    }
    let n = (1u64 << zeros) | r.uint(zeros)?;
    if n > MAX_STATES {
        return None;
    }
    let n = n as u32;
    let w = id_width(n);
    let (start, accept, reject) = (r.state(w)?, r.state(w)?, r.state(w)?);
    let mut m = MachineDescription::new(n, start, accept, reject);
    if r.bit()? {
        m.oracle = Some(OracleStates { query: r.state(w)?, yes: r.state(w)?, no: r.state(w)? });
    }
    for slot in m.transitions.iter_mut() {
        if !r.bit()? {
            continue;
        }
        let next = r.state(w)?;
        let write = match r.uint(2)? {
            0 => Symbol::Zero,
            1 => Symbol::One,
            2 => Symbol::Blank,
            _ => return None,
        };
        let head = match r.uint(2)? {
            0 => Move::Left,
            1 => Move::Right,
            2 => Move::Stay,
            _ => return None,
        };
        let emit = if r.bit()? { Some(r.bit()?) } else { None };
        *slot = Some(Transition { next, write, head, emit });
    }
    if r.pos != code.len() {
        return None;
    }
    m.validate().ok()?;
    Some(m)
}

/// Decodes a program code; anything that is not a well-formed code word
/// yields the one-step dummy rejector.
pub fn decode_program(code: &[bool]) -> MachineDescription {
    try_decode(code).unwrap_or_else(fixtures::dummy_rejector)
}
