//! Command-line front end.

pub mod cache;
pub mod config;
pub mod render;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use clap::{Parser, Subcommand};

pub use config::{Format, JobArgs, JobConfig};

use crate::error::{Error, Result};
use crate::oracle::{transition_table, FlagCohomology};
use crate::steenrod::{steenrod_table, SteenrodTable};
use crate::weyl::{CosetTable, EnumerateOptions};

#[derive(Debug, Parser)]
#[command(name = "flag-steenrod", version, about = "Reduced powers on Schubert classes of flag manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the minimal coset representatives with their minimal words.
    Basis(JobArgs),
    /// Tabulate P^k on every Schubert class.
    Steenrod(JobArgs),
    /// Cross-check the engine against the type A oracle.
    Verify(JobArgs),
}

pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Config { .. } | Error::InvalidType { .. } | Error::InvalidCartan(_) | Error::NodeOutOfRange { .. } => {
            EXIT_CONFIG
        }
        _ => 1,
    }
}

/// Rendered output and exit status of a successful run.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

fn cosets(cfg: &JobConfig) -> Result<Arc<CosetTable>> {
    let opts = EnumerateOptions { max_length: None, budget: cfg.budget };
    cache::load_or_enumerate(cfg.cache_dir.as_deref(), &cfg.cartan, &cfg.parabolic, opts).map(Arc::new)
}

fn tables(cfg: &JobConfig, cosets: &Arc<CosetTable>) -> Result<Vec<SteenrodTable>> {
    cfg.ks.iter().map(|(&p, ks)| steenrod_table(cosets.clone(), p, ks)).collect()
}

fn run_basis(cfg: &JobConfig) -> Result<Outcome> {
    let t = cosets(cfg)?;
    let output = match cfg.format {
        Format::Text => render::basis_text(&t),
        Format::Json => render::basis_json(&t),
        Format::Csv => render::basis_csv(&t),
        Format::Latex => render::basis_latex(&t),
    };
    Ok(Outcome { output, exit_code: 0 })
}

fn run_steenrod(cfg: &JobConfig) -> Result<Outcome> {
    let t = cosets(cfg)?;
    let tabs = tables(cfg, &t)?;
    let output = match cfg.format {
        Format::Text => render::steenrod_text(&t, &tabs),
        Format::Json => render::steenrod_json(&t, &tabs),
        Format::Csv => render::steenrod_csv(&t, &tabs),
        Format::Latex => render::steenrod_latex(&t, &tabs),
    };
    Ok(Outcome { output, exit_code: 0 })
}

fn run_verify(cfg: &JobConfig) -> Result<Outcome> {
    let n = cfg.cartan.rank() + 1;
    let is_type_a = crate::cartan::CartanData::builtin('A', cfg.cartan.rank()).is_ok_and(|a| a.matrix() == cfg.cartan.matrix());
    if !is_type_a || n > crate::oracle::MAX_N {
        return Err(Error::config("type", format!("verify needs type A of rank at most {}", crate::oracle::MAX_N - 1)));
    }
    let t = cosets(cfg)?;
    let ring = FlagCohomology::new(n)?;
    let mut output = String::new();
    let mut mismatches = 0usize;
    for table in tables(cfg, &t)? {
        let p = table.prime();
        let oracle = transition_table(&t, &ring.total_powers(p)?, table.ks())?;
        let engine: BTreeMap<_, _> = table.nonzero_entries().collect();
        let keys: BTreeSet<_> = engine.keys().chain(oracle.keys()).copied().collect();
        let mut compared = 0usize;
        let mut bad = 0usize;
        for &k in table.ks() {
            for u in 0..t.total_size() {
                if let Some(d) = table.target_length(k, u) {
                    compared += t.grade_ids(d).len();
                }
            }
        }
        for key in keys {
            let (e, o) = (engine.get(&key).copied().unwrap_or(0), oracle.get(&key).copied().unwrap_or(0));
            if e != o {
                bad += 1;
                if bad <= 20 {
                    let (k, u, w) = key;
                    let (ur, ui) = t.label(u);
                    let (wr, wi) = t.label(w);
                    writeln!(output, "p={p} k={k} s_{{{ur},{ui}}} -> s_{{{wr},{wi}}}: engine {e}, oracle {o}").unwrap();
                }
            }
        }
        writeln!(output, "p={p}: {compared} coefficients compared, {bad} mismatches").unwrap();
        mismatches += bad;
    }
    Ok(Outcome { output, exit_code: if mismatches == 0 { 0 } else { EXIT_MISMATCH } })
}

/// Validate the arguments and run one subcommand on a pool of the
/// configured size.
pub fn run(command: &Command) -> Result<Outcome> {
    let (args, need_primes) = match command {
        Command::Basis(a) => (a, false),
        Command::Steenrod(a) | Command::Verify(a) => (a, true),
    };
    let cfg = JobConfig::from_args(args, need_primes)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::config("threads", e.to_string()))?;
    pool.install(|| match command {
        Command::Basis(_) => run_basis(&cfg),
        Command::Steenrod(_) => run_steenrod(&cfg),
        Command::Verify(_) => run_verify(&cfg),
    })
}
