//! Flat key-value configuration documents.
//!
//! ```text
//! # comments start with '#'
//! decider = sat-brute        # the only built-in decider
//! c = 2                      # declared exponent, S ∈ DTIME(2^(n^c))
//! k = 2                      # number of parts
//! depth = dloglog            # dloglog | dlogloglog | log2 | half-log2
//! enumeration = goedel       # goedel | roster
//! roster = roster.txt        # required with enumeration = roster
//! initial_r = 2
//! ```
//!
//! Every key is optional; missing keys take the defaults shown. A roster
//! file lists machine files in the canonical text format, one path per
//! line, relative to the roster file. Order is significant.

use std::path::{Path, PathBuf};

use crate::deciders::make_sat_sdecider;
use crate::engine::{DepthFn, EngineConfig};
use crate::enumeration::EnumerationMode;
use crate::tm::MachineDescription;

use super::HarnessError;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConfigDocument {
    pub decider: Option<String>,
    pub c: Option<u32>,
    pub k: Option<u32>,
    pub depth: Option<String>,
    pub enumeration: Option<String>,
    pub roster: Option<PathBuf>,
    pub initial_r: Option<u64>,
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str, line: usize) -> Result<T, HarnessError> {
    v.parse()
        .map_err(|_| HarnessError::Config(format!("line {line}: `{key}` expects a number, got `{v}`")))
}

impl ConfigDocument {
    pub fn parse(src: &str) -> Result<Self, HarnessError> {
        let mut doc = ConfigDocument::default();
        for (idx, raw) in src.lines().enumerate() {
            let line = idx + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let (key, value) = text
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| HarnessError::Config(format!("line {line}: expected `key = value`")))?;
            match key {
                "decider" => doc.decider = Some(value.to_owned()),
                "c" => doc.c = Some(parse_num(key, value, line)?),
                "k" => doc.k = Some(parse_num(key, value, line)?),
                "depth" => doc.depth = Some(value.to_owned()),
                "enumeration" => doc.enumeration = Some(value.to_owned()),
                "roster" => doc.roster = Some(PathBuf::from(value)),
                "initial_r" => doc.initial_r = Some(parse_num(key, value, line)?),
                other => return Err(HarnessError::Config(format!("line {line}: unknown key `{other}`"))),
            }
        }
        Ok(doc)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let src = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        let mut doc = ConfigDocument::parse(&src)?;
        if let (Some(r), Some(dir)) = (&doc.roster, path.parent()) {
            doc.roster = Some(dir.join(r));
        }
        Ok(doc)
    }

    /// Resolves the document into an engine configuration.
    pub fn build(&self) -> Result<EngineConfig, HarnessError> {
        let mut cfg = EngineConfig::default();
        match self.decider.as_deref() {
            None | Some("sat-brute") => cfg.s_decider = make_sat_sdecider(),
            Some(other) => return Err(HarnessError::Config(format!("unknown decider `{other}`"))),
        }
        if let Some(c) = self.c {
            if c == 0 {
                return Err(HarnessError::Config("c must be at least 1".into()));
            }
            cfg.s_decider = cfg.s_decider.with_exponent(c);
        }
        if let Some(k) = self.k {
            cfg.k = k;
        }
        if let Some(d) = &self.depth {
            cfg.depth_fn = d.parse::<DepthFn>()?;
        }
        if let Some(r) = self.initial_r {
            cfg.initial_r = r;
        }
        cfg.enumeration = match (self.enumeration.as_deref(), &self.roster) {
            (None | Some("goedel"), _) => EnumerationMode::Goedel,
            (Some("roster"), Some(path)) => EnumerationMode::roster(load_roster(path)?)?,
            (Some("roster"), None) => {
                return Err(HarnessError::Config("enumeration = roster needs a roster file".into()))
            }
            (Some(other), _) => return Err(HarnessError::Config(format!("unknown enumeration `{other}`"))),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Reads a roster file: one machine file path per line, relative to the
/// roster file's directory.
pub fn load_roster(path: &Path) -> Result<Vec<MachineDescription>, HarnessError> {
    let src = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut machines = Vec::new();
    for line in src.lines() {
        let entry = line.split('#').next().unwrap_or("").trim();
        if entry.is_empty() {
            continue;
        }
        let file = dir.join(entry);
        let text = std::fs::read_to_string(&file).map_err(|e| HarnessError::io(&file, e))?;
        let m = text
            .parse::<MachineDescription>()
            .map_err(|e| HarnessError::Config(format!("{}: {e}", file.display())))?;
        machines.push(m);
    }
    if machines.is_empty() {
        return Err(HarnessError::Config(format!("{}: roster is empty", path.display())));
    }
    Ok(machines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tm::fixtures;

    #[test]
    fn empty_document_is_default() {
        let cfg = ConfigDocument::parse("# nothing\n\n").unwrap().build().unwrap();
        assert_eq!(cfg.fingerprint(), EngineConfig::default().fingerprint());
    }

    #[test]
    fn parses_all_keys() {
        let doc = ConfigDocument::parse("decider = sat-brute\nc=1\nk = 3 # three parts\ndepth = half-log2\ninitial_r = 4\n").unwrap();
        let cfg = doc.build().unwrap();
        assert_eq!((cfg.s_decider.exponent_c, cfg.k, cfg.depth_fn, cfg.initial_r), (1, 3, DepthFn::HalfLog2, 4));
    }

    #[test]
    fn rejects_bad_documents() {
        for bad in ["k = two", "colour = red", "just words", "decider = dpll", "depth = sqrt", "k = 1", "c = 0", "enumeration = roster"] {
            assert!(ConfigDocument::parse(bad).and_then(|d| d.build()).is_err(), "{bad}");
        }
    }

    #[test]
    fn roster_from_files() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("rej.tm"), fixtures::always_reject().to_string()).unwrap();
        std::fs::write(dir.path().join("copy.tm"), fixtures::copier_query().to_string()).unwrap();
        std::fs::write(dir.path().join("roster.txt"), "rej.tm\n# comment\ncopy.tm\n").unwrap();
        std::fs::write(dir.path().join("run.cfg"), "enumeration = roster\nroster = roster.txt\n").unwrap();
        let cfg = ConfigDocument::load(&dir.path().join("run.cfg")).unwrap().build().unwrap();
        assert_eq!(
            cfg.enumeration,
            EnumerationMode::Roster(vec![fixtures::always_reject(), fixtures::copier_query()])
        );
    }
}
