//! The r-table text schema (also the cache file format) and its csv twin.
//!
//! ```text
//! # splitlab r-table v1
//! # fingerprint 3f1c...
//! # config decider=sat-brute c=2 cost=2^(T^2) k=2 depth=dloglog enumeration=goedel initial_r=2
//! # i r advanced gate_failed j part depth witness strings_examined max_qlen
//! 0 2 - - - - - - - -
//! 1 2 - - - - - - - -
//! 2 2 0 1 1 1 0 - 0 0
//! 3 2 0 0 1 1 0 - 1 0
//! 4 2 - - - - - - - -
//! ```
//!
//! Row `i` carries the event of step `i` (which fixed `r(i+1)`); rows
//! without one hold dashes. A witness is `-` when absent and `~` when it is
//! the empty string.

use std::fmt::Write as _;
use std::path::Path;

use crate::bits::BitString;
use crate::engine::{DiagEvent, EngineConfig, RTable};

use super::HarnessError;

const MAGIC: &str = "# splitlab r-table v1";
const COLUMNS: [&str; 10] =
    ["i", "r", "advanced", "gate_failed", "j", "part", "depth", "witness", "strings_examined", "max_qlen"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceFormat {
    Text,
    Csv,
}

impl std::str::FromStr for TraceFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(TraceFormat::Text),
            "csv" => Ok(TraceFormat::Csv),
            _ => Err(format!("unknown trace format `{s}` (text or csv)")),
        }
    }
}

fn witness_token(w: &Option<BitString>) -> String {
    match w {
        None => "-".into(),
        Some(y) if y.is_empty() => "~".into(),
        Some(y) => y.to_string(),
    }
}

fn row_fields(i: u64, r: u64, e: Option<&DiagEvent>, format: TraceFormat) -> Vec<String> {
    let flag = |b: bool| match (format, b) {
        (TraceFormat::Text, b) => u8::from(b).to_string(),
        (TraceFormat::Csv, b) => b.to_string(),
    };
    let mut out = vec![i.to_string(), r.to_string()];
    match e {
        Some(e) => out.extend([
            flag(e.advanced),
            flag(e.gate_failed),
            e.target_index.to_string(),
            e.oracle_part.to_string(),
            e.depth.to_string(),
            witness_token(&e.witness),
            e.strings_examined.to_string(),
            e.max_query_length.to_string(),
        ]),
        None => out.extend(std::iter::repeat_n(
            if format == TraceFormat::Text { "-" } else { "" }.to_owned(),
            8,
        )),
    }
    out
}

pub fn export_trace(table: &RTable, format: TraceFormat) -> String {
    export_trace_filtered(table, format, false)
}

/// As [`export_trace`], optionally keeping only rows whose step advanced
/// `r`. A filtered text export is a report, not a cache.
pub fn export_trace_filtered(table: &RTable, format: TraceFormat, only_advanced: bool) -> String {
    let mut out = String::new();
    let sep = match format {
        TraceFormat::Text => {
            let cfg = table.config();
            let _ = writeln!(out, "{MAGIC}");
            let _ = writeln!(out, "# fingerprint {}", cfg.fingerprint());
            let _ = writeln!(out, "# config {}", cfg.summary());
            let _ = writeln!(out, "# {}", COLUMNS.join(" "));
            " "
        }
        TraceFormat::Csv => {
            let _ = writeln!(out, "{}", COLUMNS.join(","));
            ","
        }
    };
    for (i, &r) in table.values().iter().enumerate() {
        let e = i.checked_sub(2).and_then(|m| table.events().get(m));
        if only_advanced && !e.is_some_and(|e| e.advanced) {
            continue;
        }
        let _ = writeln!(out, "{}", row_fields(i as u64, r, e, format).join(sep));
    }
    out
}

fn field<T: std::str::FromStr>(tok: &str, name: &str, line: usize) -> Result<T, HarnessError> {
    tok.parse().map_err(|_| HarnessError::Trace { line, msg: format!("bad {name} `{tok}`") })
}

fn flag(tok: &str, name: &str, line: usize) -> Result<bool, HarnessError> {
    match tok {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(HarnessError::Trace { line, msg: format!("bad {name} `{tok}` (0 or 1)") }),
    }
}

/// Reads a full text export back. The embedded fingerprint must match
/// `config`, and the rows must satisfy the table laws.
pub fn import_trace(src: &str, config: &EngineConfig) -> Result<RTable, HarnessError> {
    let mut lines = src.lines().enumerate().map(|(n, l)| (n + 1, l));
    match lines.next() {
        Some((_, l)) if l.trim() == MAGIC => {}
        _ => return Err(HarnessError::Trace { line: 1, msg: "not an r-table file".into() }),
    }
    let mut fingerprint = None;
    let mut values = Vec::new();
    let mut events = Vec::new();
    for (line, raw) in lines {
        let text = raw.trim();
        if let Some(rest) = text.strip_prefix('#') {
            if let Some(fp) = rest.trim().strip_prefix("fingerprint ") {
                fingerprint = Some(fp.trim().to_owned());
            }
            continue;
        }
        if text.is_empty() {
            continue;
        }
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() != COLUMNS.len() {
            return Err(HarnessError::Trace { line, msg: format!("expected {} fields", COLUMNS.len()) });
        }
        let i: u64 = field(toks[0], "i", line)?;
        if i != values.len() as u64 {
            return Err(HarnessError::Trace { line, msg: format!("row {i} out of order") });
        }
        let r: u64 = field(toks[1], "r", line)?;
        values.push(r);
        if toks[2..].iter().all(|t| *t == "-") {
            continue;
        }
        let witness = match toks[7] {
            "-" => None,
            "~" => Some(BitString::empty()),
            w => Some(field::<BitString>(w, "witness", line)?),
        };
        let e = DiagEvent {
            i,
            r_i: r,
            advanced: flag(toks[2], "advanced", line)?,
            gate_failed: flag(toks[3], "gate_failed", line)?,
            target_index: field(toks[4], "j", line)?,
            oracle_part: field(toks[5], "part", line)?,
            depth: field(toks[6], "depth", line)?,
            witness,
            strings_examined: field(toks[8], "strings_examined", line)?,
            max_query_length: field(toks[9], "max_qlen", line)?,
        };
        let k = u64::from(config.k);
        if e.target_index != r / k || u64::from(e.oracle_part) != (r + 1) % k || e.depth != config.depth_fn.eval(i) {
            return Err(HarnessError::Trace { line, msg: "event disagrees with the configuration".into() });
        }
        events.push(e);
    }
    let found = fingerprint.ok_or(HarnessError::Trace { line: 2, msg: "missing fingerprint".into() })?;
    let expected = config.fingerprint();
    if found != expected {
        return Err(HarnessError::FingerprintMismatch { expected, found });
    }
    Ok(RTable::from_parts(config.clone(), values, events)?)
}

/// Loads a cache file for `config`. A missing file is `Ok(None)`.
pub fn load_cache(path: &Path, config: &EngineConfig) -> Result<Option<RTable>, HarnessError> {
    match std::fs::read_to_string(path) {
        Ok(src) => import_trace(&src, config).map(Some),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(HarnessError::io(path, e)),
    }
}

/// Writes the table through a sibling temporary file and a rename.
pub fn save_cache(path: &Path, table: &RTable) -> Result<(), HarnessError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }
    let tmp = path.with_extension("rtable.tmp");
    std::fs::write(&tmp, export_trace(table, TraceFormat::Text)).map_err(|e| HarnessError::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| HarnessError::io(path, e))
}
