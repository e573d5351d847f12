use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};

use splitlab_core::deciders::{decode_cnf, encode_cnf};
use splitlab_core::engine::{member_d, member_part, parse_part_label, part_label};
use splitlab_core::harness::{
    cache_path, export_trace_filtered, load_cache, run_suite, save_cache, ConfigDocument, HarnessError,
    SuiteBounds, TraceFormat, SUITE_NAMES,
};
use splitlab_core::optp::{f, g, SplitHandles};
use splitlab_core::{sat_brute, BitString, CnfFormula, EngineConfig, EngineError, RTable};

/// Exit statuses besides 0 (success) and 2 (usage, from clap).
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 3;
const EXIT_ENGINE: u8 = 4;

#[derive(Parser)]
#[command(name = "splitlab", version, about = "Team diagonalization laboratory: split SAT by a slow-growing r")]
struct Cli {
    /// Flat key-value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// r-table cache file (default: a fingerprint-named file in $SPLITLAB_CACHE_DIR).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    enumeration: Option<Mode>,
    /// Roster file listing machine files, one per line.
    #[arg(long, global = true)]
    roster_file: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Goedel,
    Roster,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print r(n).
    R {
        #[arg(long)]
        n: u64,
    },
    /// Membership of x in one part (A, B, C, ... or a number).
    Member {
        #[arg(long)]
        part: String,
        #[arg(long)]
        x: BitString,
    },
    /// Membership of x in D = { x : r(|x|) even } (k = 2 only).
    MemberD {
        #[arg(long)]
        x: BitString,
    },
    /// Print the r-table with its diagonalization events.
    Trace {
        #[arg(long)]
        upto: u64,
        #[arg(long)]
        only_advanced: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print f(x), g(f(x)) and membership of x in S.
    Compose {
        #[arg(long)]
        x: BitString,
    },
    /// Check g(f(x)) against S for every |x| <= maxlen.
    ComposeVerify {
        #[arg(long, default_value_t = 10)]
        maxlen: usize,
    },
    /// Run a verification suite (or `all`).
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        maxlen: Option<usize>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        gate_max_i: Option<u64>,
        #[arg(long)]
        gate_max_r: Option<u64>,
        #[arg(long)]
        kway_maxlen: Option<usize>,
    },
    /// Encode a DIMACS clause list read from stdin.
    EncodeCnf,
    /// Decide y with the brute-force SAT decider.
    Sat {
        #[arg(long)]
        y: BitString,
    },
    /// Decode y as a formula (DIMACS output).
    Decode {
        #[arg(long)]
        y: BitString,
    },
}

fn engine_config(cli: &Cli) -> Result<EngineConfig> {
    let mut doc = match &cli.config {
        Some(path) => ConfigDocument::load(path)?,
        None => ConfigDocument::default(),
    };
    if let Some(mode) = cli.enumeration {
        doc.enumeration = Some(match mode {
            Mode::Goedel => "goedel",
            Mode::Roster => "roster",
        }
        .to_owned());
    }
    if let Some(r) = &cli.roster_file {
        doc.roster = Some(r.clone());
        // a roster file alone implies roster mode
        doc.enumeration.get_or_insert_with(|| "roster".to_owned());
    }
    let config = doc.build()?;
    Ok(config)
}

/// Table for `config`, continued from the cache when one applies.
fn open_table(cli: &Cli, config: &EngineConfig) -> Result<(RTable, Option<PathBuf>)> {
    let path = cache_path(config, cli.cache.as_deref());
    let cached = match &path {
        Some(p) => match load_cache(p, config) {
            Ok(t) => t,
            Err(e @ (HarnessError::FingerprintMismatch { .. } | HarnessError::Trace { .. })) => {
                eprintln!("warning: ignoring cache {}: {e}", p.display());
                None
            }
            Err(e) => return Err(e.into()),
        },
        None => None,
    };
    let table = match cached {
        Some(t) => t,
        None => RTable::new(config.clone())?,
    };
    Ok((table, path))
}

fn persist(table: &RTable, path: Option<&Path>, known_before: u64) -> Result<()> {
    if let Some(p) = path {
        if table.known() > known_before || !p.exists() {
            save_cache(p, table)?;
        }
    }
    Ok(())
}

/// Runs `body` on the (cached) table and writes the table back afterwards.
fn with_table<T>(cli: &Cli, config: &EngineConfig, body: impl FnOnce(&mut RTable) -> Result<T>) -> Result<T> {
    let (mut table, path) = open_table(cli, config)?;
    let before = table.known();
    let out = body(&mut table);
    persist(&table, path.as_deref(), before)?;
    out
}

fn bounds_with(
    maxlen: Option<usize>,
    n: Option<u64>,
    gate_max_i: Option<u64>,
    gate_max_r: Option<u64>,
    kway_maxlen: Option<usize>,
) -> SuiteBounds {
    let d = SuiteBounds::default();
    SuiteBounds {
        maxlen: maxlen.unwrap_or(d.maxlen),
        n: n.unwrap_or(d.n),
        gate_max_i: gate_max_i.unwrap_or(d.gate_max_i),
        gate_max_r: gate_max_r.unwrap_or(d.gate_max_r),
        kway_maxlen: kway_maxlen.unwrap_or(d.kway_maxlen),
        ..d
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::EncodeCnf => {
            let mut src = String::new();
            std::io::stdin().read_to_string(&mut src).context("reading stdin")?;
            let formula = CnfFormula::from_dimacs(&src)?;
            println!("{}", encode_cnf(&formula));
            return Ok(ExitCode::SUCCESS);
        }
        Command::Sat { y } => {
            println!("{}", sat_brute(y));
            return Ok(ExitCode::SUCCESS);
        }
        Command::Decode { y } => {
            return Ok(match decode_cnf(y) {
                Some(formula) => {
                    print!("{formula}");
                    ExitCode::SUCCESS
                }
                None => {
                    eprintln!("{} is not a formula code word", if y.is_empty() { "ε".into() } else { y.to_string() });
                    ExitCode::from(EXIT_CHECK_FAILED)
                }
            });
        }
        _ => {}
    }

    let config = engine_config(cli)?;
    match &cli.command {
        Command::R { n } => {
            let v = with_table(cli, &config, |t| Ok(t.extend_to(*n)?))?;
            println!("{v}");
        }
        Command::Member { part, x } => {
            let p = parse_part_label(part).ok_or_else(|| anyhow!("unknown part `{part}`"))?;
            let inside = with_table(cli, &config, |t| Ok(member_part(x, p, t)?))?;
            println!("{inside}");
        }
        Command::MemberD { x } => {
            let inside = with_table(cli, &config, |t| Ok(member_d(x, t)?))?;
            println!("{inside}");
        }
        Command::Trace { upto, only_advanced, format } => {
            let format = match format {
                Format::Text => TraceFormat::Text,
                Format::Csv => TraceFormat::Csv,
            };
            let text = with_table(cli, &config, |t| {
                t.extend_to(*upto)?;
                let mut view = t.clone();
                view.truncate(*upto);
                Ok(export_trace_filtered(&view, format, *only_advanced))
            })?;
            print!("{text}");
        }
        Command::Compose { x } => {
            let (mut table, path) = open_table(cli, &config)?;
            let before = table.known();
            table.extend_to(x.len() as u64 + 1)?;
            persist(&table, path.as_deref(), before)?;
            let h = SplitHandles::from_table(table)?;
            let fx = f(x, &h);
            let gfx = g(&fx, &h);
            println!("f(x) = {fx}");
            println!("g(f(x)) = {gfx}");
            println!("chi_S(x) = {}", u8::from(h.chi_s(x)));
            let part = (0..2).find(|&p| if p == 0 { (h.member_a)(x) } else { (h.member_b)(x) });
            if let Some(p) = part {
                println!("part = {}", part_label(p));
            }
        }
        Command::ComposeVerify { maxlen } => {
            let bounds = SuiteBounds { maxlen: *maxlen, ..SuiteBounds::default() };
            let report = run_suite("compose", &config, &bounds)?;
            println!("{report}");
            return Ok(status(report.passed()));
        }
        Command::Verify { suite, maxlen, n, gate_max_i, gate_max_r, kway_maxlen } => {
            let bounds = bounds_with(*maxlen, *n, *gate_max_i, *gate_max_r, *kway_maxlen);
            let names: Vec<&str> = if suite == "all" { SUITE_NAMES.to_vec() } else { vec![suite.as_str()] };
            let mut ok = true;
            for name in names {
                let report = run_suite(name, &config, &bounds)?;
                println!("{report}");
                ok &= report.passed();
            }
            return Ok(status(ok));
        }
        Command::EncodeCnf | Command::Sat { .. } | Command::Decode { .. } => unreachable!("handled above"),
    }
    Ok(ExitCode::SUCCESS)
}

fn status(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}

/// Engine failures other than configuration errors map to their own status.
fn exit_code_for(err: &anyhow::Error) -> u8 {
    let engine = err.chain().any(|e| {
        let inner = e
            .downcast_ref::<EngineError>()
            .or_else(|| match e.downcast_ref::<HarnessError>() {
                Some(HarnessError::Engine(inner)) => Some(inner),
                _ => None,
            });
        inner.is_some_and(|e| !matches!(e, EngineError::Config(_)))
    });
    if engine {
        EXIT_ENGINE
    } else {
        EXIT_INPUT
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
