//! On-disk cache of coset tables, keyed by a hash of the Cartan matrix and
//! the parabolic node set.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cartan::{CartanData, WeightVector};
use crate::error::{Error, Result};
use crate::weyl::{CosetTable, EnumerateOptions, WeylElement};

pub const CACHE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct CachedElement {
    length: usize,
    /// 1-based node indices.
    word: Vec<usize>,
    image: WeightVector,
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    schema_version: u32,
    cartan_matrix: Vec<Vec<i64>>,
    /// 1-based node indices.
    parabolic: Vec<usize>,
    grades: Vec<Vec<CachedElement>>,
}

/// Hex SHA-256 of the matrix and parabolic set.
pub fn cache_key(cartan: &CartanData, parabolic: &BTreeSet<usize>) -> String {
    let payload = serde_json::json!({
        "cartan_matrix": cartan.matrix(),
        "parabolic": parabolic.iter().map(|j| j + 1).collect::<Vec<_>>(),
    });
    hex::encode(Sha256::digest(payload.to_string().as_bytes()))
}

pub fn cache_path(dir: &Path, cartan: &CartanData, parabolic: &BTreeSet<usize>) -> PathBuf {
    dir.join(format!("cosets-{}.json", &cache_key(cartan, parabolic)[..32]))
}

pub fn save(path: &Path, table: &CosetTable) -> Result<()> {
    let top = table.top_length();
    let file = CacheFile {
        schema_version: CACHE_SCHEMA_VERSION,
        cartan_matrix: table.cartan().matrix().to_vec(),
        parabolic: table.parabolic().iter().map(|j| j + 1).collect(),
        grades: (0..=top)
            .map(|r| {
                table
                    .grade(r)
                    .iter()
                    .map(|e| CachedElement {
                        length: e.length(),
                        word: e.word.iter().map(|i| i + 1).collect(),
                        image: e.image.clone(),
                    })
                    .collect()
            })
            .collect(),
    };
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("json.tmp");
    std::fs::write(&tmp, serde_json::to_vec(&file)?)?;
    std::fs::rename(tmp, path)?;
    Ok(())
}

/// Read a cached table, checking it against the request and rebuilding
/// every invariant from the stored words.
pub fn load(path: &Path, cartan: &CartanData, parabolic: &BTreeSet<usize>) -> Result<CosetTable> {
    let file: CacheFile = serde_json::from_slice(&std::fs::read(path)?)?;
    if file.schema_version != CACHE_SCHEMA_VERSION {
        return Err(Error::Cache(format!("schema version {} is not {CACHE_SCHEMA_VERSION}", file.schema_version)));
    }
    if file.cartan_matrix != cartan.matrix() {
        return Err(Error::Cache("Cartan matrix differs".into()));
    }
    let par: BTreeSet<usize> = file.parabolic.iter().map(|j| j.wrapping_sub(1)).collect();
    if &par != parabolic {
        return Err(Error::Cache("parabolic set differs".into()));
    }
    let mut elements = Vec::new();
    for (r, grade) in file.grades.into_iter().enumerate() {
        for e in grade {
            if e.length != r || e.word.len() != r {
                return Err(Error::Cache(format!("element with word {:?} listed under length {r}", e.word)));
            }
            if e.word.contains(&0) {
                return Err(Error::Cache("node index 0 in word".into()));
            }
            elements.push(WeylElement { image: e.image, word: e.word.iter().map(|i| i - 1).collect() });
        }
    }
    CosetTable::from_elements(cartan, parabolic, elements, true)
}

/// Load from the cache when possible, otherwise enumerate and store.
/// A cache file that fails validation is reported and replaced.
pub fn load_or_enumerate(
    dir: Option<&Path>,
    cartan: &CartanData,
    parabolic: &BTreeSet<usize>,
    opts: EnumerateOptions,
) -> Result<CosetTable> {
    let Some(dir) = dir else {
        return CosetTable::enumerate(cartan, parabolic, opts);
    };
    let path = cache_path(dir, cartan, parabolic);
    if path.exists() {
        match load(&path, cartan, parabolic) {
            Ok(t) => {
                log::info!("loaded coset table from {}", path.display());
                return Ok(t);
            }
            Err(e) => log::warn!("ignoring cache file {}: {e}; recomputing", path.display()),
        }
    }
    let table = CosetTable::enumerate(cartan, parabolic, opts)?;
    if let Err(e) = save(&path, &table) {
        log::warn!("could not write cache file {}: {e}", path.display());
    }
    Ok(table)
}
