use super::{MachineDescription, Move, StateId, Symbol, TmError};
use crate::bits::BitString;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accepted,
    Rejected,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QueryRecord {
    pub query: BitString,
    pub answer: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RunOutcome {
    pub verdict: Verdict,
    pub steps_used: u64,
    pub queries: Vec<QueryRecord>,
    pub max_query_length: usize,
}

impl RunOutcome {
    /// Language membership: an exhausted clock counts as rejection.
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }
}

/// Instantaneous description of a running machine. The work tape grows with
/// blanks on demand in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub state: StateId,
    /// Cells at positions 0, 1, 2, ...
    right: Vec<Symbol>,
    /// Cells at positions -1, -2, ...
    left: Vec<Symbol>,
    pub head_position: i64,
    pub query_tape: BitString,
    pub steps_taken: u64,
}

impl Configuration {
    pub fn initial(machine: &MachineDescription, input: &[bool]) -> Self {
        Configuration {
            state: machine.start,
            right: input.iter().map(|&b| Symbol::from_bit(b)).collect(),
            left: Vec::new(),
            head_position: 0,
            query_tape: BitString::empty(),
            steps_taken: 0,
        }
    }

    pub fn read(&self) -> Symbol {
        let cell = if self.head_position >= 0 {
            self.right.get(self.head_position as usize)
        } else {
            self.left.get((-self.head_position - 1) as usize)
        };
        cell.copied().unwrap_or(Symbol::Blank)
    }

    fn write(&mut self, symbol: Symbol) {
        let (tape, idx) = if self.head_position >= 0 {
            (&mut self.right, self.head_position as usize)
        } else {
            (&mut self.left, (-self.head_position - 1) as usize)
        };
        if idx >= tape.len() {
            if symbol == Symbol::Blank {
                return;
            }
            tape.resize(idx + 1, Symbol::Blank);
        }
        tape[idx] = symbol;
    }

    /// Work tape contents from the leftmost to the rightmost touched cell.
    pub fn work_tape(&self) -> Vec<Symbol> {
        self.left.iter().rev().chain(self.right.iter()).copied().collect()
    }
}

/// Simulates `machine` on `input` for at most `budget` steps.
///
/// Every transition costs one step, and so does every oracle consultation,
/// whatever the query length. Reaching the accept or reject state ends the
/// run; a live state with no transition for the scanned symbol halts and
/// rejects without spending a step.
pub fn run<F>(
    machine: &MachineDescription,
    input: &[bool],
    budget: u64,
    mut oracle: F,
) -> Result<RunOutcome, TmError>
where
    F: FnMut(&BitString) -> bool,
{
    machine.validate()?;
    let mut cfg = Configuration::initial(machine, input);
    let mut queries = Vec::new();
    let verdict = loop {
        if cfg.state == machine.accept {
            break Verdict::Accepted;
        }
        if cfg.state == machine.reject {
            break Verdict::Rejected;
        }
        if cfg.steps_taken >= budget {
            break Verdict::BudgetExhausted;
        }
        match machine.oracle {
            Some(o) if o.query == cfg.state => {
                let query = std::mem::take(&mut cfg.query_tape);
                let answer = oracle(&query);
                queries.push(QueryRecord { query, answer });
                cfg.state = if answer { o.yes } else { o.no };
            }
            _ => {
                let Some(t) = machine.transition(cfg.state, cfg.read()).copied() else {
                    break Verdict::Rejected;
                };
                cfg.write(t.write);
                if let Some(bit) = t.emit {
                    cfg.query_tape.push(bit);
                }
                match t.head {
                    Move::Left => cfg.head_position -= 1,
                    Move::Right => cfg.head_position += 1,
                    Move::Stay => {}
                }
                cfg.state = t.next;
            }
        }
        cfg.steps_taken += 1;
    };
    let max_query_length = queries.iter().map(|q| q.query.len()).max().unwrap_or(0);
    Ok(RunOutcome { verdict, steps_used: cfg.steps_taken, queries, max_query_length })
}
