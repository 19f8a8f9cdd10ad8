use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;

use crate::cartan::CartanData;
use crate::error::{Error, Result};
use crate::scalar::is_prime;
use crate::weyl::DEFAULT_BUDGET;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct JobArgs {
    /// Lie type such as G2, F4, D6 or A6.
    #[arg(long = "type", value_name = "TYPE")]
    pub lie_type: Option<String>,

    /// JSON file holding a Cartan matrix, either `[[2,-1],[-1,2]]` or
    /// `{"name": "...", "matrix": [[...]]}`.
    #[arg(long, value_name = "PATH", conflicts_with = "lie_type")]
    pub cartan_file: Option<PathBuf>,

    /// Simple roots of the subgroup, 1-based, comma separated.
    #[arg(long, value_name = "NODES", default_value = "")]
    pub parabolic: String,

    /// Primes, comma separated.
    #[arg(long = "prime", value_name = "P")]
    pub primes: Option<String>,

    /// Exponents k: `1..3`, `1,2`, or per prime `3=1..2,5=1..3`.
    #[arg(long = "k", value_name = "SPEC", default_value = "1")]
    pub k: String,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Directory for cached coset tables.
    #[arg(long, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Maximum number of coset representatives to enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,

    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    pub threads: Option<usize>,
}

/// A validated job.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub cartan: CartanData,
    /// 0-based node indices.
    pub parabolic: BTreeSet<usize>,
    /// Prime to the exponents requested for it.
    pub ks: BTreeMap<u32, BTreeSet<u32>>,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub budget: usize,
    pub threads: Option<usize>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CartanFile {
    Bare(Vec<Vec<i64>>),
    Named { name: Option<String>, matrix: Vec<Vec<i64>> },
}

fn load_cartan(path: &Path) -> Result<CartanData> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::config("cartan-file", format!("{}: {e}", path.display())))?;
    let parsed: CartanFile =
        serde_json::from_str(&text).map_err(|e| Error::config("cartan-file", format!("{}: {e}", path.display())))?;
    let (name, matrix) = match parsed {
        CartanFile::Bare(m) => (None, m),
        CartanFile::Named { name, matrix } => (name, matrix),
    };
    let c = CartanData::new(matrix).map_err(|e| Error::config("cartan-file", e.to_string()))?;
    Ok(match name {
        Some(n) => c.with_name(n),
        None => c,
    })
}

fn parse_list(field: &'static str, s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|_| Error::config(field, format!("'{t}' is not a nonnegative integer"))))
        .collect()
}

fn parse_range(s: &str) -> Result<Vec<u32>> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| Error::config("k", format!("'{t}' is not a nonnegative integer")));
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(Error::config("k", format!("empty range {s}")));
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![num(s)?]),
    }
}

/// Parse `--k` for the given primes.
pub fn parse_k_spec(spec: &str, primes: &[u32]) -> Result<BTreeMap<u32, BTreeSet<u32>>> {
    let mut out: BTreeMap<u32, BTreeSet<u32>> = primes.iter().map(|&p| (p, BTreeSet::new())).collect();
    for item in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match item.split_once('=') {
            Some((p, range)) if !p.starts_with('.') && !p.ends_with('.') => {
                let p: u32 = p.trim().parse().map_err(|_| Error::config("k", format!("'{p}' is not a prime")))?;
                let set = out
                    .get_mut(&p)
                    .ok_or_else(|| Error::config("k", format!("prime {p} is not among --prime")))?;
                set.extend(parse_range(range)?);
            }
            _ => {
                let ks = parse_range(item)?;
                for set in out.values_mut() {
                    set.extend(ks.iter().copied());
                }
            }
        }
    }
    for (p, set) in &out {
        if set.is_empty() {
            return Err(Error::config("k", format!("no exponents given for p = {p}")));
        }
    }
    Ok(out)
}

impl JobConfig {
    /// Validate the flags. `need_primes` is false for jobs that only
    /// enumerate cosets.
    pub fn from_args(args: &JobArgs, need_primes: bool) -> Result<Self> {
        let cartan = match (&args.lie_type, &args.cartan_file) {
            (Some(t), None) => CartanData::parse_type(t).map_err(|e| Error::config("type", e.to_string()))?,
            (None, Some(path)) => load_cartan(path)?,
            _ => return Err(Error::config("type", "give exactly one of --type and --cartan-file")),
        };
        let rank = cartan.rank();
        let mut parabolic = BTreeSet::new();
        for j in parse_list("parabolic", &args.parabolic)? {
            if j < 1 || j as usize > rank {
                return Err(Error::config("parabolic", format!("node {j} is outside 1..={rank}")));
            }
            parabolic.insert(j as usize - 1);
        }
        let primes = match &args.primes {
            Some(s) => parse_list("prime", s)?,
            None => Vec::new(),
        };
        if need_primes && primes.is_empty() {
            return Err(Error::config("prime", "at least one prime is required"));
        }
        for &p in &primes {
            if !is_prime(p as u64) {
                return Err(Error::config("prime", format!("{p} is not prime")));
            }
            if p > 251 {
                return Err(Error::config("prime", format!("{p} is too large (at most 251)")));
            }
        }
        let ks = parse_k_spec(&args.k, &primes)?;
        if args.budget == 0 {
            return Err(Error::config("budget", "must be positive"));
        }
        if args.threads == Some(0) {
            return Err(Error::config("threads", "must be positive"));
        }
        Ok(JobConfig {
            cartan,
            parabolic,
            ks,
            format: args.format,
            cache_dir: args.cache_dir.clone(),
            budget: args.budget,
            threads: args.threads,
        })
    }
}
