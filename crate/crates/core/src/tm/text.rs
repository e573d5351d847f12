//! Canonical text format for machines.
//!
//! ```text
//! # comments and blank lines are ignored
//! states 5
//! start 0
//! accept 1
//! reject 2
//! query 3        # query, yes and no are given together or not at all
//! yes 4
//! no 2
//! 0 0 -> 0 0 R !0
//! 0 1 -> 0 1 R !1
//! 0 _ -> 3 _ S
//! ```
//!
//! A transition line is `state symbol -> state symbol move [!bit]` with
//! symbols `0`, `1`, `_` (blank) and moves `L`, `R`, `S`. The optional
//! `!bit` appends `bit` to the query tape.

use std::fmt;
use std::str::FromStr;

use super::{MachineDescription, Move, OracleStates, StateId, Symbol, Transition};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseMachineError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing header `{0}`")]
    MissingHeader(&'static str),
    #[error("query, yes and no must be given together")]
    PartialOracle,
    #[error(transparent)]
    Invalid(#[from] super::TmError),
}

fn symbol_token(s: Symbol) -> &'static str {
    match s {
        Symbol::Zero => "0",
        Symbol::One => "1",
        Symbol::Blank => "_",
    }
}

impl fmt::Display for MachineDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states {}", self.state_count)?;
        writeln!(f, "start {}", self.start)?;
        writeln!(f, "accept {}", self.accept)?;
        writeln!(f, "reject {}", self.reject)?;
        if let Some(o) = self.oracle {
            writeln!(f, "query {}", o.query)?;
            writeln!(f, "yes {}", o.yes)?;
            writeln!(f, "no {}", o.no)?;
        }
        for (slot, t) in self.transitions.iter().enumerate() {
            let Some(t) = t else { continue };
            let mv = match t.head {
                Move::Left => "L",
                Move::Right => "R",
                Move::Stay => "S",
            };
            write!(
                f,
                "{} {} -> {} {} {}",
                slot / 3,
                symbol_token(Symbol::ALL[slot % 3]),
                t.next,
                symbol_token(t.write),
                mv
            )?;
            match t.emit {
                Some(b) => writeln!(f, " !{}", u8::from(b))?,
                None => writeln!(f)?,
            }
        }
        Ok(())
    }
}

impl FromStr for MachineDescription {
    type Err = ParseMachineError;

    fn from_str(src: &str) -> Result<Self, Self::Err> {
        let mut header: [Option<StateId>; 7] = [None; 7];
        const KEYS: [&str; 7] = ["states", "start", "accept", "reject", "query", "yes", "no"];
        let mut rows: Vec<(usize, StateId, Symbol, Transition)> = Vec::new();

        for (idx, raw) in src.lines().enumerate() {
            let line_no = idx + 1;
            let err = |msg: String| ParseMachineError::Syntax { line: line_no, msg };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let num = |t: &str| t.parse::<StateId>().map_err(|_| err(format!("bad state id `{t}`")));
            if let Some(k) = KEYS.iter().position(|&k| k == toks[0]) {
                if toks.len() != 2 {
                    return Err(err(format!("`{}` takes one value", toks[0])));
                }
                if header[k].replace(num(toks[1])?).is_some() {
                    return Err(err(format!("duplicate `{}`", toks[0])));
                }
                continue;
            }
            let sym = |t: &str| match t {
                "0" => Ok(Symbol::Zero),
                "1" => Ok(Symbol::One),
                "_" => Ok(Symbol::Blank),
                _ => Err(err(format!("bad symbol `{t}`"))),
            };
            if !(toks.len() == 6 || toks.len() == 7) || toks[2] != "->" {
                return Err(err("expected `state symbol -> state symbol move [!bit]`".into()));
            }
            let head = match toks[5] {
                "L" => Move::Left,
                "R" => Move::Right,
                "S" => Move::Stay,
                t => return Err(err(format!("bad move `{t}`"))),
            };
            let emit = match toks.get(6) {
                None => None,
                Some(&"!0") => Some(false),
                Some(&"!1") => Some(true),
                Some(t) => return Err(err(format!("bad query emission `{t}`"))),
            };
            let t = Transition { next: num(toks[3])?, write: sym(toks[4])?, head, emit };
            rows.push((line_no, num(toks[0])?, sym(toks[1])?, t));
        }

        let get = |k: usize| header[k].ok_or(ParseMachineError::MissingHeader(KEYS[k]));
        let n = get(0)?;
        let mut m = MachineDescription::new(n, get(1)?, get(2)?, get(3)?);
        m.oracle = match (header[4], header[5], header[6]) {
            (Some(query), Some(yes), Some(no)) => Some(OracleStates { query, yes, no }),
            (None, None, None) => None,
            _ => return Err(ParseMachineError::PartialOracle),
        };
        for (line, state, symbol, t) in rows {
            if state >= n {
                return Err(ParseMachineError::Syntax {
                    line,
                    msg: format!("state {state} out of range (states {n})"),
                });
            }
            let slot = &mut m.transitions[state as usize * 3 + symbol.index()];
            if slot.replace(t).is_some() {
                return Err(ParseMachineError::Syntax { line, msg: "duplicate transition".into() });
            }
        }
        m.validate()?;
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tm::fixtures;

    #[test]
    fn text_round_trip() {
        for m in [fixtures::dummy_rejector(), fixtures::always_accept(), fixtures::copier_query()] {
            let text = m.to_string();
            assert_eq!(text.parse::<MachineDescription>().unwrap(), m);
        }
    }

    #[test]
    fn copier_text() {
        let text = fixtures::copier_query().to_string();
        assert!(text.contains("0 0 -> 0 0 R !0\n"));
        assert!(text.contains("0 _ -> 3 _ S\n"));
        assert!(text.contains("query 3\nyes 4\nno 2\n"));
    }

    #[test]
    fn rejects_dangling_and_partial() {
        let src = "states 3\nstart 0\naccept 1\nreject 2\n0 0 -> 5 0 S\n";
        assert!(matches!(src.parse::<MachineDescription>(), Err(ParseMachineError::Invalid(_))));
        let src = "states 3\nstart 0\naccept 1\nreject 2\nquery 0\n";
        assert_eq!(src.parse::<MachineDescription>(), Err(ParseMachineError::PartialOracle));
        let src = "states 3\nstart 0\naccept 1\n";
        assert_eq!(src.parse::<MachineDescription>(), Err(ParseMachineError::MissingHeader("reject")));
    }
}
