//! Deterministic oracle Turing machines with one work tape and a write-only
//! query tape, and a step-budgeted simulator for them.
//!
//! A machine reads and writes the work tape over {0, 1, blank}. A transition
//! may additionally append one bit to the query tape. Entering the query
//! state costs one step: the oracle is consulted on the query tape contents,
//! the query tape is cleared, and control moves to the yes or no state.

mod code;
pub mod fixtures;
mod run;
mod text;

pub use code::{decode_program, encode_program};
pub use run::{run, Configuration, QueryRecord, RunOutcome, Verdict};
pub use text::ParseMachineError;

pub type StateId = u32;

/// Work tape alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Zero,
    One,
    Blank,
}

impl Symbol {
    pub const ALL: [Symbol; 3] = [Symbol::Zero, Symbol::One, Symbol::Blank];

    pub fn index(self) -> usize {
        match self {
            Symbol::Zero => 0,
            Symbol::One => 1,
            Symbol::Blank => 2,
        }
    }

    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Symbol::One
        } else {
            Symbol::Zero
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Left,
    Right,
    Stay,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub next: StateId,
    pub write: Symbol,
    pub head: Move,
    /// Bit appended to the query tape, if any.
    pub emit: Option<bool>,
}

/// The query, yes and no states of a machine that consults its oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OracleStates {
    pub query: StateId,
    pub yes: StateId,
    pub no: StateId,
}

/// A machine program. `transitions[state * 3 + symbol]` is the move taken in
/// `state` reading `symbol`; a missing entry on a live state halts and rejects.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MachineDescription {
    pub state_count: u32,
    pub start: StateId,
    pub accept: StateId,
    pub reject: StateId,
    pub oracle: Option<OracleStates>,
    pub transitions: Vec<Option<Transition>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TmError {
    #[error("malformed machine: {0}")]
    Malformed(String),
}

impl MachineDescription {
    /// A machine with `state_count` states and no transitions yet.
    pub fn new(state_count: u32, start: StateId, accept: StateId, reject: StateId) -> Self {
        MachineDescription {
            state_count,
            start,
            accept,
            reject,
            oracle: None,
            transitions: vec![None; state_count as usize * 3],
        }
    }

    pub fn with_oracle(mut self, query: StateId, yes: StateId, no: StateId) -> Self {
        self.oracle = Some(OracleStates { query, yes, no });
        self
    }

    /// Sets the transition for `(state, symbol)`. Panics if `state` is out of range.
    pub fn set(&mut self, state: StateId, symbol: Symbol, t: Transition) -> &mut Self {
        let slot = state as usize * 3 + symbol.index();
        self.transitions[slot] = Some(t);
        self
    }

    pub fn transition(&self, state: StateId, symbol: Symbol) -> Option<&Transition> {
        self.transitions
            .get(state as usize * 3 + symbol.index())
            .and_then(Option::as_ref)
    }

    fn has_transitions(&self, state: StateId) -> bool {
        Symbol::ALL.iter().any(|&s| self.transition(state, s).is_some())
    }

    pub fn is_query_state(&self, state: StateId) -> bool {
        self.oracle.is_some_and(|o| o.query == state)
    }

    /// Checks the structural invariants the simulator relies on.
    pub fn validate(&self) -> Result<(), TmError> {
        let n = self.state_count;
        let bad = |msg: String| Err(TmError::Malformed(msg));
        if n == 0 {
            return bad("no states".into());
        }
        if self.transitions.len() != n as usize * 3 {
            return bad(format!(
                "transition table has {} slots, expected {}",
                self.transitions.len(),
                n as usize * 3
            ));
        }
        for (name, id) in [("start", self.start), ("accept", self.accept), ("reject", self.reject)] {
            if id >= n {
                return bad(format!("{name} state {id} out of range (state_count {n})"));
            }
        }
        if self.accept == self.reject {
            return bad("accept and reject states coincide".into());
        }
        for (name, id) in [("accept", self.accept), ("reject", self.reject)] {
            if self.has_transitions(id) {
                return bad(format!("{name} state {id} has outgoing transitions"));
            }
        }
        if let Some(o) = self.oracle {
            for (name, id) in [("query", o.query), ("yes", o.yes), ("no", o.no)] {
                if id >= n {
                    return bad(format!("{name} state {id} out of range (state_count {n})"));
                }
            }
            if o.query == self.accept || o.query == self.reject {
                return bad("query state is a halting state".into());
            }
            if self.has_transitions(o.query) {
                return bad(format!("query state {} has outgoing transitions", o.query));
            }
        }
        for (slot, t) in self.transitions.iter().enumerate() {
            if let Some(t) = t {
                if t.next >= n {
                    return bad(format!(
                        "transition from state {} references state {} (state_count {n})",
                        slot / 3,
                        t.next
                    ));
                }
            }
        }
        Ok(())
    }
}
