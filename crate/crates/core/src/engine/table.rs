use num_bigint::BigUint;

use super::{gate_fails, gate_t, oracle_answer, EngineConfig, EngineError};
use crate::bits::BitString;
use crate::deciders::sat_brute;
use crate::enumeration::universal_run;
use crate::tm::RunOutcome;

/// Record of one attempt to compute `r(i+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagEvent {
    pub i: u64,
    pub r_i: u64,
    /// `⌊r_i / k⌋`
    pub target_index: u64,
    /// `(r_i + 1) mod k`
    pub oracle_part: u32,
    pub depth: u64,
    pub gate_failed: bool,
    pub witness: Option<BitString>,
    pub strings_examined: u64,
    pub max_query_length: u64,
    pub advanced: bool,
}

/// The memoized prefix `r(0..=n)` and the events that produced it.
///
/// `events[m]` describes step `i = m + 2`, which determined `values[i + 1]`.
#[derive(Clone, Debug)]
pub struct RTable {
    config: EngineConfig,
    values: Vec<u64>,
    events: Vec<DiagEvent>,
}

impl PartialEq for RTable {
    fn eq(&self, other: &Self) -> bool {
        self.config.fingerprint() == other.config.fingerprint()
            && self.values == other.values
            && self.events == other.events
    }
}

/// Outcome of testing one candidate witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessProbe {
    pub holds: bool,
    pub in_s: bool,
    pub run: RunOutcome,
}

/// Whether `y` separates SAT from `M_j` run with oracle part `part`:
/// `sat(y) XOR M_j^part(y)`. Every oracle query must be shorter than `i`;
/// a longer one means the table is being read where it is not yet fixed.
pub fn check_witness(y: &[bool], i: u64, j: u64, part: u32, table: &RTable) -> Result<WitnessProbe, EngineError> {
    let depth = table.config.depth_fn.eval(i);
    if y.len() as u64 > depth {
        return Err(EngineError::Precondition(format!(
            "witness candidate of length {} exceeds depth {depth} at i = {i}",
            y.len()
        )));
    }
    let mut failure: Option<EngineError> = None;
    let run = universal_run(&BigUint::from(j), y, &table.config.enumeration, |q| {
        if failure.is_some() {
            return false;
        }
        if q.len() as u64 >= i {
            failure = Some(EngineError::Circularity { i, query_len: q.len() });
            return false;
        }
        oracle_answer(part, q, table).unwrap_or_else(|e| {
            failure = Some(e);
            false
        })
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let in_s = sat_brute(y);
    Ok(WitnessProbe { holds: in_s != run.accepted(), in_s, run })
}

impl RTable {
    pub fn new(config: EngineConfig) -> Result<Self, EngineError> {
        config.validate()?;
        let r0 = config.initial_r;
        Ok(RTable { config, values: vec![r0; 3], events: Vec::new() })
    }

    /// Rebuilds a table from stored parts, checking the table laws.
    pub fn from_parts(config: EngineConfig, values: Vec<u64>, events: Vec<DiagEvent>) -> Result<Self, EngineError> {
        let t = RTable { config, values, events };
        t.check_laws()?;
        Ok(t)
    }

    /// Table laws: three initial values, unit-or-zero steps, one event per
    /// step consistent with the values it produced.
    pub fn check_laws(&self) -> Result<(), EngineError> {
        let bad = |m: String| Err(EngineError::Precondition(m));
        self.config.validate()?;
        let r0 = self.config.initial_r;
        if self.values.len() < 3 || self.values[..3] != [r0; 3] {
            return bad(format!("r(0..=2) must equal {r0}"));
        }
        if self.events.len() + 3 != self.values.len() {
            return bad(format!("{} events for {} values", self.events.len(), self.values.len()));
        }
        for (m, e) in self.events.iter().enumerate() {
            let i = m as u64 + 2;
            let step = self.values[m + 3].checked_sub(self.values[m + 2]);
            if e.i != i || e.r_i != self.values[m + 2] {
                return bad(format!("event {m} does not describe step {i}"));
            }
            if !matches!(step, Some(0 | 1)) || (step == Some(1)) != e.advanced {
                return bad(format!("step {i} -> {} is not consistent with its event", i + 1));
            }
        }
        Ok(())
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn events(&self) -> &[DiagEvent] {
        &self.events
    }

    /// Largest `n` with `r(n)` determined.
    pub fn known(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn get(&self, n: u64) -> Option<u64> {
        self.values.get(usize::try_from(n).ok()?).copied()
    }

    /// Truncates to `r(0..=n)` (no-op if shorter).
    pub fn truncate(&mut self, n: u64) {
        let n = n.max(2) as usize;
        self.values.truncate(n + 1);
        self.events.truncate(n.saturating_sub(2));
    }

    /// Computes `r(i+1)` for `i = known()`.
    pub fn extend(&mut self) -> Result<&DiagEvent, EngineError> {
        let i = self.known();
        let r_i = self.values[i as usize];
        let k = self.config.k;
        let target_index = r_i / u64::from(k);
        let oracle_part = ((r_i + 1) % u64::from(k)) as u32;
        let depth = self.config.depth_fn.eval(i);
        let mut event = DiagEvent {
            i,
            r_i,
            target_index,
            oracle_part,
            depth,
            gate_failed: gate_fails(i, r_i, &self.config),
            witness: None,
            strings_examined: 0,
            max_query_length: 0,
            advanced: false,
        };
        if !event.gate_failed {
            let bound = gate_t(i, r_i, &self.config);
            for y in BitString::up_to_length(depth as usize) {
                event.strings_examined += 1;
                let probe = check_witness(&y, i, target_index, oracle_part, self)?;
                let qlen = probe.run.max_query_length as u64;
                event.max_query_length = event.max_query_length.max(qlen);
                debug_assert!(qlen <= bound && qlen < i);
                if probe.holds {
                    event.witness = Some(y);
                    event.advanced = true;
                    break;
                }
            }
        }
        self.values.push(r_i + u64::from(event.advanced));
        self.events.push(event);
        Ok(self.events.last().expect("just pushed"))
    }

    /// Extends until `r(n)` is known; returns it.
    pub fn extend_to(&mut self, n: u64) -> Result<u64, EngineError> {
        while self.known() < n {
            self.extend()?;
        }
        Ok(self.values[n as usize])
    }
}

/// `r(n)` under `config`, continuing from `cache` when it was produced by
/// the same configuration and obeys the table laws. A mismatching cache is
/// ignored and the table is recomputed from scratch. Returns the value and
/// the (possibly extended) table.
pub fn r(n: u64, config: &EngineConfig, cache: Option<RTable>) -> Result<(u64, RTable), EngineError> {
    let mut table = match cache {
        Some(t) if t.config.fingerprint() == config.fingerprint() && t.check_laws().is_ok() => t,
        _ => RTable::new(config.clone())?,
    };
    let v = table.extend_to(n)?;
    Ok((v, table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deciders::{encode_cnf, CnfFormula, Literal};
    use crate::engine::DepthFn;
    use crate::enumeration::EnumerationMode;
    use crate::tm::fixtures;

    fn roster(ms: Vec<crate::tm::MachineDescription>) -> EnumerationMode {
        EnumerationMode::roster(ms).unwrap()
    }

    fn accelerated(k: u32, ms: Vec<crate::tm::MachineDescription>) -> EngineConfig {
        EngineConfig::default()
            .with_k(k)
            .with_exponent(1)
            .with_depth(DepthFn::HalfLog2)
            .with_enumeration(roster(ms))
    }

    fn unit_v0() -> BitString {
        encode_cnf(&CnfFormula::new(1, vec![vec![Literal::pos(0)]]).unwrap())
    }

    #[test]
    fn initial_values() {
        let (v, t) = r(2, &EngineConfig::default(), None).unwrap();
        assert_eq!(v, 2);
        assert_eq!(t.values(), &[2, 2, 2]);
        assert!(t.events().is_empty());
    }

    #[test]
    fn first_extension_under_defaults() {
        let mut t = RTable::new(EngineConfig::default()).unwrap();
        let e = t.extend().unwrap().clone();
        assert_eq!((e.i, e.r_i, e.target_index, e.oracle_part, e.depth), (2, 2, 1, 1, 0));
        assert!(e.gate_failed && !e.advanced);
        assert_eq!(e.strings_examined, 0);
        assert_eq!(t.get(3), Some(2));
    }

    #[test]
    fn defaults_stay_at_two_up_to_a_thousand() {
        // The gate only opens at i = 3 (depth 0) and the only candidate, ε,
        // is no formula and the goedel M_1 is the dummy.
        let (v, t) = r(1000, &EngineConfig::default(), None).unwrap();
        assert_eq!(v, 2);
        let open: Vec<u64> = t.events().iter().filter(|e| !e.gate_failed).map(|e| e.i).collect();
        assert_eq!(open, vec![3]);
    }

    #[test]
    fn check_witness_truth_table() {
        let t = RTable::new(accelerated(2, vec![fixtures::always_reject(), fixtures::always_accept()])).unwrap();
        let i = 1 << 14; // half-log depth 7
        let junk: BitString = "1".parse().unwrap();
        // j = 1 is always_reject, j = 2 always_accept
        assert!(!check_witness(&junk, i, 1, 0, &t).unwrap().holds);
        assert!(check_witness(&unit_v0(), i, 1, 1, &t).unwrap().holds);
        assert!(!check_witness(&unit_v0(), i, 2, 0, &t).unwrap().holds);
        assert!(check_witness(&junk, i, 2, 1, &t).unwrap().holds);
    }

    #[test]
    fn check_witness_refuses_overlong_candidates() {
        let t = RTable::new(EngineConfig::default()).unwrap();
        let y: BitString = "0".parse().unwrap();
        assert!(matches!(check_witness(&y, 3, 1, 0, &t), Err(EngineError::Precondition(_))));
    }

    #[test]
    fn circular_query_is_detected() {
        // Emits six 1s and queries them. Run without the gate, at i = 4 with a
        // clock large enough, the query reaches lengths whose r is not fixed.
        use crate::tm::{MachineDescription, Move, Symbol, Transition};
        let mut m = MachineDescription::new(10, 3, 1, 2).with_oracle(9, 1, 2);
        for s in 3..=8 {
            for sym in Symbol::ALL {
                m.set(s, sym, Transition { next: s + 1, write: sym, head: Move::Stay, emit: Some(true) });
            }
        }
        let t = RTable::new(accelerated(2, vec![m])).unwrap();
        let e = check_witness(&BitString::empty(), 4, 7, 0, &t).unwrap_err();
        assert_eq!(e, EngineError::Circularity { i: 4, query_len: 6 });
    }

    #[test]
    fn accelerated_rejector_advances_with_least_satisfiable_code() {
        let mut t = RTable::new(accelerated(2, vec![fixtures::always_reject()])).unwrap();
        t.extend_to(200).unwrap();
        let first = t.events().iter().find(|e| e.advanced).unwrap().clone();
        // first i with half-log depth 3 whose gate is open
        assert_eq!(first.depth, 3);
        assert_eq!(first.witness.as_ref().unwrap().to_string(), "100");
        // independent check: least satisfiable code word up to that depth
        let least = BitString::up_to_length(first.depth as usize).find(|y| sat_brute(y)).unwrap();
        assert_eq!(first.witness.as_ref(), Some(&least));
        assert_eq!(first.strings_examined, 12);
    }

    #[test]
    fn copier_roster_respects_query_bounds() {
        // always_accept at j = 1 lets r reach 4 by i = 6; the copier at j = 2
        // then needs |y| + 2 <= |y|^2 + 2 steps to reach its query.
        let mut t = RTable::new(accelerated(2, vec![fixtures::always_accept(), fixtures::copier_query()])).unwrap();
        t.extend_to(5000).unwrap();
        let mut queried = false;
        for e in t.events() {
            if !e.gate_failed {
                assert!(e.max_query_length < e.i);
                assert!(e.max_query_length <= gate_t(e.i, e.r_i, t.config()));
                queried |= e.max_query_length > 0;
            }
            assert!(e.strings_examined < (2u64 << e.depth));
        }
        assert!(queried, "copier never reached the oracle");
    }

    #[test]
    fn cache_reuse_and_mismatch() {
        let cfg = accelerated(2, vec![fixtures::always_reject()]);
        let (_, half) = r(3000, &cfg, None).unwrap();
        let (v, full) = r(6000, &cfg, Some(half.clone())).unwrap();
        let (w, scratch) = r(6000, &cfg, None).unwrap();
        assert_eq!(v, w);
        assert_eq!(full, scratch);
        // different configuration: cache is ignored, result is still right
        let (d, _) = r(10, &EngineConfig::default(), Some(half)).unwrap();
        assert_eq!(d, 2);
    }

    #[test]
    fn truncate_keeps_laws() {
        let mut t = RTable::new(accelerated(2, vec![fixtures::always_reject()])).unwrap();
        t.extend_to(300).unwrap();
        t.truncate(100);
        assert_eq!(t.known(), 100);
        t.check_laws().unwrap();
    }
}
