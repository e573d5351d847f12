//! SAT over a self-delimiting binary encoding, a brute-force decider for it,
//! and the pluggable exponential-time decider for the set being split.
//!
//! Encoding of a CNF formula with `n >= 1` variables:
//!
//! ```text
//! code    := "1"^n "0" clauses
//! clauses := ("1" clause)* "0"
//! clause  := ("1" literal)+ "0"
//! literal := var sign        var: bitlen(n - 1) bits, MSB first
//!                            sign: "1" positive, "0" negated
//! ```
//!
//! A string is a code word only if it parses completely. Anything else is
//! not a formula and therefore not in SAT; in particular ε and "1" are not
//! code words, and the shortest code word is "100" (one variable, no
//! clauses, satisfiable).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use crate::bits::BitString;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: u32,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: u32) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: u32) -> Self {
        Literal { var, positive: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    pub variable_count: u32,
    pub clauses: Vec<Vec<Literal>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CnfError {
    #[error("a formula needs at least one variable")]
    NoVariables,
    #[error("empty clause at position {0}")]
    EmptyClause(usize),
    #[error("literal references variable {var} but the formula has {count}")]
    VariableOutOfRange { var: u32, count: u32 },
    #[error("line {0}: {1}")]
    Dimacs(usize, String),
}

impl CnfFormula {
    pub fn new(variable_count: u32, clauses: Vec<Vec<Literal>>) -> Result<Self, CnfError> {
        if variable_count == 0 {
            return Err(CnfError::NoVariables);
        }
        for (k, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(CnfError::EmptyClause(k));
            }
            if let Some(l) = c.iter().find(|l| l.var >= variable_count) {
                return Err(CnfError::VariableOutOfRange { var: l.var, count: variable_count });
            }
        }
        Ok(CnfFormula { variable_count, clauses })
    }

    /// Parses a DIMACS-like clause list: optional `c` comment lines, an
    /// optional `p cnf VARS CLAUSES` header, then clauses as signed 1-based
    /// integers, each terminated by `0`. Without a header the variable count
    /// is the largest variable mentioned.
    pub fn from_dimacs(src: &str) -> Result<Self, CnfError> {
        let mut declared: Option<u32> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (k, line) in src.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                match toks.as_slice() {
                    ["cnf", v, _] => {
                        declared = Some(v.parse().map_err(|_| CnfError::Dimacs(k + 1, "bad variable count".into()))?)
                    }
                    _ => return Err(CnfError::Dimacs(k + 1, "expected `p cnf VARS CLAUSES`".into())),
                }
                continue;
            }
            for tok in line.split_whitespace() {
                let v: i64 = tok.parse().map_err(|_| CnfError::Dimacs(k + 1, format!("bad literal `{tok}`")))?;
                if v == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    let var = u32::try_from(v.unsigned_abs() - 1)
                        .map_err(|_| CnfError::Dimacs(k + 1, format!("variable `{tok}` too large")))?;
                    current.push(Literal { var, positive: v > 0 });
                }
            }
        }
        if !current.is_empty() {
            clauses.push(current);
        }
        let used = clauses.iter().flatten().map(|l| l.var + 1).max().unwrap_or(1);
        CnfFormula::new(declared.unwrap_or(used), clauses)
    }

    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| assignment[l.var as usize] == l.positive))
    }
}

impl fmt::Display for CnfFormula {
    /// DIMACS rendering.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.variable_count, self.clauses.len())?;
        for c in &self.clauses {
            for l in c {
                let v = i64::from(l.var) + 1;
                write!(f, "{} ", if l.positive { v } else { -v })?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

fn var_width(n: u32) -> u32 {
    32 - (n - 1).leading_zeros()
}

pub fn encode_cnf(formula: &CnfFormula) -> BitString {
    let n = formula.variable_count;
    let w = var_width(n);
    let mut out = BitString::ones(n as usize);
    out.push(false);
    for clause in &formula.clauses {
        out.push(true);
        for lit in clause {
            out.push(true);
            for k in (0..w).rev() {
                out.push((lit.var >> k) & 1 == 1);
            }
            out.push(lit.positive);
        }
        out.push(false);
    }
    out.push(false);
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
}

/// Decodes `y`, also reporting how many bits the decoder read.
fn decode_counted(y: &[bool]) -> (Option<CnfFormula>, u64) {
    let mut r = Reader { bits: y, pos: 0 };
    let parsed = (|| {
        let mut n = 0u32;
        while r.bit()? {
            n += 1;
        }
        if n == 0 {
            return None;
        }
        let w = var_width(n);
        let mut clauses = Vec::new();
        while r.bit()? {
            let mut clause = Vec::new();
            while r.bit()? {
                let mut var = 0u32;
                for _ in 0..w {
                    var = (var << 1) | u32::from(r.bit()?);
                }
                if var >= n {
                    return None;
                }
                clause.push(Literal { var, positive: r.bit()? });
            }
            if clause.is_empty() {
                return None;
            }
            clauses.push(clause);
        }
        (r.pos == y.len()).then_some(CnfFormula { variable_count: n, clauses })
    })();
    (parsed, r.pos as u64)
}

pub fn decode_cnf(y: &[bool]) -> Option<CnfFormula> {
    decode_counted(y).0
}

/// Membership in SAT together with the work spent: decoder bits read plus
/// one unit per literal evaluated during exhaustive assignment search.
pub fn sat_brute_counted(y: &[bool]) -> (bool, u64) {
    let (formula, mut work) = decode_counted(y);
    let Some(f) = formula else { return (false, work) };
    let n = f.variable_count as usize;
    assert!(n < 64, "exhaustive search over {n} variables");
    let mut assignment = vec![false; n];
    for mask in 0..1u64 << n {
        for (k, a) in assignment.iter_mut().enumerate() {
            *a = (mask >> k) & 1 == 1;
        }
        let mut all = true;
        for clause in &f.clauses {
            let mut any = false;
            for l in clause {
                work += 1;
                if assignment[l.var as usize] == l.positive {
                    any = true;
                    break;
                }
            }
            if !any {
                all = false;
                break;
            }
        }
        if all {
            return (true, work);
        }
    }
    (false, work)
}

/// True iff `y` encodes a satisfiable formula, by trying every assignment.
pub fn sat_brute(y: &[bool]) -> bool {
    sat_brute_counted(y).0
}

/// `⌈log2 i⌉`, with `⌈log2 0⌉ = ⌈log2 1⌉ = 0`.
pub fn ceil_log2(i: u64) -> u64 {
    if i <= 1 {
        0
    } else {
        u64::from(64 - (i - 1).leading_zeros())
    }
}

/// A nondecreasing upper bound on the time to decide inputs of length `T`.
pub trait CostBound: Send + Sync {
    fn describe(&self) -> String;

    /// Whether `cost(t) >= i`.
    fn reaches(&self, t: u64, i: u64) -> bool;

    /// `cost(t)` as an exact integer, if it fits in `max_bits` bits.
    fn evaluate(&self, t: u64, max_bits: u64) -> Option<BigUint>;
}

/// `T ↦ 2^(T^c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpPolyCost {
    pub c: u32,
}

impl ExpPolyCost {
    /// `T^c`, saturating.
    pub fn exponent(&self, t: u64) -> u64 {
        t.checked_pow(self.c).unwrap_or(u64::MAX)
    }
}

impl CostBound for ExpPolyCost {
    fn describe(&self) -> String {
        format!("2^(T^{})", self.c)
    }

    /// `2^e >= i` iff `e >= ceil(log2 i)`; `i <= u64::MAX` keeps the right
    /// side at most 64, so saturation of `e` cannot change the answer.
    fn reaches(&self, t: u64, i: u64) -> bool {
        self.exponent(t) >= ceil_log2(i)
    }

    fn evaluate(&self, t: u64, max_bits: u64) -> Option<BigUint> {
        let e = self.exponent(t);
        (e < max_bits).then(|| BigUint::one() << e)
    }
}

pub type DecideFn = dyn Fn(&[bool]) -> bool + Send + Sync;

/// A decider for the set being split, with the declared `c` such that it
/// runs in time `2^(n^c)`.
#[derive(Clone)]
pub struct SDecider {
    pub name: String,
    pub decide: Arc<DecideFn>,
    pub exponent_c: u32,
    pub cost_fn: Arc<dyn CostBound>,
}

impl fmt::Debug for SDecider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SDecider")
            .field("name", &self.name)
            .field("exponent_c", &self.exponent_c)
            .field("cost_fn", &self.cost_fn.describe())
            .finish()
    }
}

impl SDecider {
    /// A decider with the default cost `T ↦ 2^(T^c)`.
    pub fn new(name: impl Into<String>, decide: Arc<DecideFn>, exponent_c: u32) -> Self {
        assert!(exponent_c >= 1, "exponent c must be at least 1");
        SDecider {
            name: name.into(),
            decide,
            exponent_c,
            cost_fn: Arc::new(ExpPolyCost { c: exponent_c }),
        }
    }

    /// Same decider with a different declared exponent (and default cost).
    pub fn with_exponent(&self, c: u32) -> Self {
        SDecider::new(self.name.clone(), Arc::clone(&self.decide), c)
    }

    pub fn decide(&self, x: &[bool]) -> bool {
        (self.decide)(x)
    }
}

/// SAT via [`sat_brute`], declared with `c = 2`.
///
/// Brute force costs about `T + T * 2^T` under the work metric of
/// [`sat_brute_counted`], which stays below `2^(T^2)` for every `T`; the
/// tests check this for all inputs up to length 16.
pub fn make_sat_sdecider() -> SDecider {
    SDecider::new("sat-brute", Arc::new(sat_brute), 2)
}
