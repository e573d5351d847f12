//! Small hand-built machines used by tests, demos and the bundled roster.
//!
//! Every fixture uses state 0 as start, 1 as accept and 2 as reject.

use super::{MachineDescription, Move, Symbol, Transition};

fn stay(next: u32, write: Symbol) -> Transition {
    Transition { next, write, head: Move::Stay, emit: None }
}

/// The canonical dummy: ignores everything and rejects in one step. Every
/// malformed program code decodes to this machine.
pub fn dummy_rejector() -> MachineDescription {
    let mut m = MachineDescription::new(3, 0, 1, 2);
    for s in Symbol::ALL {
        m.set(0, s, stay(2, s));
    }
    m
}

/// Rejects every input. Structurally the dummy.
pub fn always_reject() -> MachineDescription {
    dummy_rejector()
}

/// Accepts every input in one step.
pub fn always_accept() -> MachineDescription {
    let mut m = MachineDescription::new(3, 0, 1, 2);
    for s in Symbol::ALL {
        m.set(0, s, stay(1, s));
    }
    m
}

/// Copies its input onto the query tape, asks the oracle, and accepts iff
/// the answer is yes. States: 0 copy, 1 accept, 2 reject (also "no"),
/// 3 query, 4 yes. Runs `|x| + 3` steps on a yes answer and `|x| + 2` on no.
pub fn copier_query() -> MachineDescription {
    let mut m = MachineDescription::new(5, 0, 1, 2).with_oracle(3, 4, 2);
    for (sym, bit) in [(Symbol::Zero, false), (Symbol::One, true)] {
        m.set(0, sym, Transition { next: 0, write: sym, head: Move::Right, emit: Some(bit) });
    }
    m.set(0, Symbol::Blank, stay(3, Symbol::Blank));
    for s in Symbol::ALL {
        m.set(4, s, stay(1, s));
    }
    m
}

/// Walks right forever.
pub fn move_right_forever() -> MachineDescription {
    let mut m = MachineDescription::new(3, 0, 1, 2);
    for s in Symbol::ALL {
        m.set(0, s, Transition { next: 0, write: s, head: Move::Right, emit: None });
    }
    m
}
