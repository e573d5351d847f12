//! Verification suites. Each suite scans the configuration up to the given
//! bounds and reports one line per property, with the first counterexample
//! for any property that fails.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::One;

use crate::bits::BitString;
use crate::engine::{gate_t, gate_fails, member_d, member_part, r, DepthFn, EngineConfig, RTable};
use crate::enumeration::{goedel_indices, index_to_machine, indices_of_program, EnumerationMode};
use crate::optp::{compose_gf, f, g, SplitHandles};
use crate::tm::{fixtures, MachineDescription};

use super::trace::{export_trace, import_trace, TraceFormat};
use super::HarnessError;

pub const SUITE_NAMES: [&str; 7] = ["partition", "rtable", "noncircular", "compose", "enumeration", "gate-oracle", "kway"];

/// Scan limits shared by the suites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteBounds {
    /// Longest string scanned by the partition and compose suites.
    pub maxlen: usize,
    /// Table length for the rtable, noncircular and kway suites.
    pub n: u64,
    pub gate_max_i: u64,
    pub gate_max_r: u64,
    pub kway_k: u32,
    pub kway_maxlen: usize,
    /// Table length of the accelerated side run in the kway suite.
    pub accelerated_n: u64,
    /// Scan bound for the dummy rejector's goedel indices. Other programs
    /// are searched up to `pair(code, 1)`, which holds their first two.
    pub dummy_scan: u64,
}

impl Default for SuiteBounds {
    fn default() -> Self {
        SuiteBounds {
            maxlen: 10,
            n: 100_000,
            gate_max_i: 10_000,
            gate_max_r: 40,
            kway_k: 3,
            kway_maxlen: 8,
            accelerated_n: 1 << 16,
            dummy_scan: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub description: String,
    pub passed: bool,
    /// First violation, or a diagnostic; always present on failure.
    pub counterexample: Option<String>,
}

impl Check {
    fn new(description: impl Into<String>, violation: Option<String>) -> Self {
        Check { description: description.into(), passed: violation.is_none(), counterexample: violation }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: String,
    pub fingerprint: String,
    pub checks: Vec<Check>,
    pub wall_time: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (config {})", self.name, &self.fingerprint[..16])?;
        for c in &self.checks {
            match (&c.passed, &c.counterexample) {
                (true, _) => writeln!(f, "  PASS {}", c.description)?,
                (false, Some(cx)) => writeln!(f, "  FAIL {}: {cx}", c.description)?,
                (false, None) => writeln!(f, "  FAIL {}", c.description)?,
            }
        }
        write!(
            f,
            "{} in {:.2}s",
            if self.passed() { "passed" } else { "FAILED" },
            self.wall_time.as_secs_f64()
        )
    }
}

pub fn run_suite(name: &str, config: &EngineConfig, bounds: &SuiteBounds) -> Result<SuiteReport, HarnessError> {
    config.validate()?;
    let start = Instant::now();
    let checks = match name {
        "partition" => partition(config, bounds.maxlen)?,
        "rtable" => rtable(config, bounds.n)?,
        "noncircular" => noncircular(config, bounds.n),
        "compose" => compose(config, bounds.maxlen)?,
        "enumeration" => enumeration(bounds.dummy_scan),
        "gate-oracle" => gate_oracle(config, bounds.gate_max_i, bounds.gate_max_r),
        "kway" => kway(config, bounds)?,
        other => return Err(HarnessError::UnknownSuite(other.to_owned())),
    };
    Ok(SuiteReport {
        name: name.to_owned(),
        fingerprint: config.fingerprint(),
        checks,
        wall_time: start.elapsed(),
    })
}

/// Table for `config` extended to `n`, or the engine failure as a check.
fn built_table(config: &EngineConfig, n: u64) -> Result<RTable, Check> {
    let mut t = RTable::new(config.clone()).map_err(|e| Check::new("engine configuration", Some(e.to_string())))?;
    t.extend_to(n)
        .map_err(|e| Check::new(format!("r-table extends to n = {n}"), Some(e.to_string())))?;
    Ok(t)
}

fn partition(config: &EngineConfig, maxlen: usize) -> Result<Vec<Check>, HarnessError> {
    let mut t = match built_table(config, maxlen as u64) {
        Ok(t) => t,
        Err(c) => return Ok(vec![c]),
    };
    let k = config.k;
    let mut overlap = None;
    let mut union = None;
    let mut feeders: BTreeMap<usize, BTreeSet<u32>> = BTreeMap::new();
    let mut a_in_d = None;
    let mut b_out_d = None;
    for x in BitString::up_to_length(maxlen) {
        let mut parts = Vec::new();
        for p in 0..k {
            if member_part(&x, p, &mut t)? {
                parts.push(p);
            }
        }
        if parts.len() > 1 && overlap.is_none() {
            overlap = Some(format!("x = {x} lies in parts {parts:?}"));
        }
        let in_s = config.s_decider.decide(&x);
        if in_s != !parts.is_empty() && union.is_none() {
            union = Some(format!("x = {x}: S says {in_s}, parts {parts:?}"));
        }
        feeders.entry(x.len()).or_default().extend(&parts);
        if k == 2 {
            let d = member_d(&x, &mut t)?;
            if parts.contains(&0) && !d && a_in_d.is_none() {
                a_in_d = Some(format!("x = {x} is in A but not in D"));
            }
            if parts.contains(&1) && d && b_out_d.is_none() {
                b_out_d = Some(format!("x = {x} is in both B and D"));
            }
        }
    }
    let crowded = feeders
        .iter()
        .find(|(_, ps)| ps.len() > 1)
        .map(|(len, ps)| format!("length {len} feeds parts {ps:?}"));
    let mut checks = vec![
        Check::new(format!("parts pairwise disjoint on |x| <= {maxlen}"), overlap),
        Check::new(format!("union of parts equals S on |x| <= {maxlen}"), union),
        Check::new(format!("each length <= {maxlen} feeds at most one part"), crowded),
    ];
    if k == 2 {
        checks.push(Check::new(format!("A within D on |x| <= {maxlen}"), a_in_d));
        checks.push(Check::new(format!("B disjoint from D on |x| <= {maxlen}"), b_out_d));
    }
    Ok(checks)
}

fn law_violation(t: &RTable) -> Option<String> {
    let v = t.values();
    let r0 = t.config().initial_r;
    if v.len() < 3 || v[..3] != [r0; 3] {
        return Some(format!("r(0..=2) = {:?}", &v[..v.len().min(3)]));
    }
    v.windows(2)
        .position(|w| !(w[0] <= w[1] && w[1] - w[0] <= 1))
        .map(|n| format!("r({n}) = {}, r({}) = {}", v[n], n + 1, v[n + 1]))
}

fn rtable(config: &EngineConfig, n: u64) -> Result<Vec<Check>, HarnessError> {
    let scratch = match built_table(config, n) {
        Ok(t) => t,
        Err(c) => return Ok(vec![c]),
    };
    let mut checks = vec![Check::new(format!("initial values and unit steps up to n = {n}"), law_violation(&scratch))];

    let (_, half) = r(n / 2, config, None)?;
    let cached = import_trace(&export_trace(&half, TraceFormat::Text), config)?;
    let (_, replayed) = r(n, config, Some(cached))?;
    let diverge = (replayed != scratch).then(|| {
        let at = scratch.values().iter().zip(replayed.values()).position(|(a, b)| a != b);
        match at {
            Some(i) => format!("r({i}) differs between scratch and cached replay"),
            None => "events differ between scratch and cached replay".into(),
        }
    });
    checks.push(Check::new(format!("replay from a cache at n/2 is identical to scratch at n = {n}"), diverge));

    let round = import_trace(&export_trace(&scratch, TraceFormat::Text), config)?;
    checks.push(Check::new("text export then import is the identity", (round != scratch).then(|| "tables differ".into())));
    Ok(checks)
}

fn noncircular(config: &EngineConfig, n: u64) -> Vec<Check> {
    let t = match built_table(config, n) {
        Ok(t) => t,
        Err(c) => return vec![c],
    };
    let first = |pred: &dyn Fn(&crate::engine::DiagEvent) -> Option<String>| t.events().iter().find_map(pred);
    vec![
        Check::new(
            format!("queries shorter than i whenever the gate passed (i < {n})"),
            first(&|e| (!e.gate_failed && e.max_query_length >= e.i).then(|| format!("{e:?}"))),
        ),
        Check::new(
            "queries no longer than depth^j + j",
            first(&|e| (e.max_query_length > gate_t(e.i, e.r_i, t.config())).then(|| format!("{e:?}"))),
        ),
        Check::new(
            "at most 2^(depth+1) - 1 strings examined",
            first(&|e| {
                let cap = 1u128.checked_shl(e.depth as u32 + 1).map_or(u128::MAX, |v| v - 1);
                (u128::from(e.strings_examined) > cap).then(|| format!("{e:?}"))
            }),
        ),
        Check::new(
            "a failed gate examines nothing; advancing needs a witness",
            first(&|e| {
                let bad = (e.gate_failed && (e.strings_examined > 0 || e.witness.is_some()))
                    || e.advanced != e.witness.is_some();
                bad.then(|| format!("{e:?}"))
            }),
        ),
    ]
}

fn compose(config: &EngineConfig, maxlen: usize) -> Result<Vec<Check>, HarnessError> {
    let t = match built_table(config, maxlen as u64) {
        Ok(t) => t,
        Err(c) => return Ok(vec![c]),
    };
    let h = SplitHandles::from_table(t)?;
    let mut identity = None;
    let mut lengths = None;
    for x in BitString::up_to_length(maxlen) {
        let fx = f(&x, &h);
        let gfx = g(&fx, &h);
        let in_s = config.s_decider.decide(&x);
        if compose_gf(&x, &h) != in_s && identity.is_none() {
            identity = Some(format!("x = {x}: g(f(x)) = {gfx}, S says {in_s}"));
        }
        if (fx.len() != x.len() + 1 || gfx.len() != 1) && lengths.is_none() {
            lengths = Some(format!("x = {x}: f(x) = {fx}, g(f(x)) = {gfx}"));
        }
    }
    Ok(vec![
        Check::new(format!("g(f(x)) = 1 iff x in S for |x| <= {maxlen}"), identity),
        Check::new("|f(x)| = |x| + 1 and |g(z)| = 1", lengths),
    ])
}

/// Documented search bound for [`indices_of_program`] in goedel mode.
pub fn enumeration_bound(p: &MachineDescription, dummy_scan: u64) -> BigUint {
    if *p == fixtures::dummy_rejector() {
        BigUint::from(dummy_scan)
    } else {
        goedel_indices(p, 2).pop().expect("two indices requested")
    }
}

fn enumeration(dummy_scan: u64) -> Vec<Check> {
    let programs = [
        ("dummy rejector", fixtures::dummy_rejector()),
        ("always-accept", fixtures::always_accept()),
        ("copier-query", fixtures::copier_query()),
    ];
    programs
        .into_iter()
        .map(|(name, p)| {
            let bound = enumeration_bound(&p, dummy_scan);
            let found = indices_of_program(&p, &bound, &EnumerationMode::Goedel);
            let distinct: BTreeSet<&BigUint> = found.iter().collect();
            let wrong = found.iter().find(|j| index_to_machine(j, &EnumerationMode::Goedel).program != p);
            let violation = if let Some(j) = wrong {
                Some(format!("index {j} decodes to another program"))
            } else if distinct.len() < 2 {
                Some(format!("only {} index(es) up to {bound}", distinct.len()))
            } else {
                None
            };
            Check::new(format!("{name}: at least two goedel indices up to {bound}"), violation)
        })
        .collect()
}

/// Direct evaluation of `2^(T^c) >= i` with `T = d^j + j` (and `0^j = 0`).
fn gate_by_bignum(i: u64, r_i: u64, config: &EngineConfig) -> bool {
    let d = config.depth_fn.eval(i);
    let j = r_i / u64::from(config.k);
    let power = if d == 0 { BigUint::ZERO } else { BigUint::from(d).pow(j as u32) };
    let t = power + j;
    let e = t.pow(config.s_decider.exponent_c);
    // beyond 2^20 the power of two dwarfs every u64
    if e.bits() > 20 {
        return true;
    }
    let e = u32::try_from(&e).expect("below 2^20");
    (BigUint::one() << e) >= BigUint::from(i)
}

fn gate_oracle(config: &EngineConfig, max_i: u64, max_r: u64) -> Vec<Check> {
    let mut mismatch = None;
    'scan: for i in 2..=max_i {
        for r_i in 0..=max_r {
            let (fast, slow) = (gate_fails(i, r_i, config), gate_by_bignum(i, r_i, config));
            if fast != slow {
                mismatch = Some(format!("i = {i}, r_i = {r_i}: gate {fast}, direct {slow}"));
                break 'scan;
            }
        }
    }
    vec![Check::new(format!("gate agrees with 2^(T^c) >= i for i <= {max_i}, r_i <= {max_r}"), mismatch)]
}

/// Block checks over an event log: every step targets `⌊r/k⌋` against part
/// `(r+1) mod k`, distinct r values of one block use distinct parts, and a
/// block whose k values all occur covers every part once. Returns the
/// number of complete blocks and the first violation.
fn block_coverage(t: &RTable) -> (usize, Option<String>) {
    let k = u64::from(t.config().k);
    let mut blocks: BTreeMap<u64, BTreeMap<u64, (u64, u32)>> = BTreeMap::new();
    for e in t.events() {
        if e.target_index != e.r_i / k || u64::from(e.oracle_part) != (e.r_i + 1) % k || u64::from(e.oracle_part) == e.r_i % k
        {
            return (0, Some(format!("step {} pairs target {} with part {}", e.i, e.target_index, e.oracle_part)));
        }
        blocks.entry(e.r_i / k).or_default().insert(e.r_i, (e.target_index, e.oracle_part));
    }
    let mut complete = 0;
    for (b, seen) in &blocks {
        let parts: BTreeSet<u32> = seen.values().map(|&(_, p)| p).collect();
        if parts.len() != seen.len() {
            return (complete, Some(format!("block {b} reuses a part: {seen:?}")));
        }
        if seen.len() as u64 == k {
            complete += 1;
        }
    }
    (complete, None)
}

fn kway(config: &EngineConfig, bounds: &SuiteBounds) -> Result<Vec<Check>, HarnessError> {
    let k = bounds.kway_k;
    let cfg = config.clone().with_k(k);
    let mut checks = partition(&cfg, bounds.kway_maxlen)?;
    checks.retain(|c| !c.description.contains(" D "));
    let t = match built_table(&cfg, bounds.n) {
        Ok(t) => t,
        Err(c) => {
            checks.push(c);
            return Ok(checks);
        }
    };
    let (_, violation) = block_coverage(&t);
    checks.push(Check::new(format!("k = {k}: block pairing rule over the event log up to n = {}", bounds.n), violation));

    let accelerated = EngineConfig::default()
        .with_k(k)
        .with_exponent(1)
        .with_depth(DepthFn::HalfLog2)
        .with_enumeration(EnumerationMode::Roster(vec![fixtures::always_reject()]));
    let description = format!("k = {k} accelerated run (roster always-reject, half-log2, c = 1) completes a block");
    match built_table(&accelerated, bounds.accelerated_n) {
        Ok(t) => {
            let (complete, violation) = block_coverage(&t);
            let violation = violation.or_else(|| (complete == 0).then(|| "no complete block observed".into()));
            checks.push(Check::new(description, violation));
        }
        Err(c) => checks.push(c),
    }
    Ok(checks)
}
