//! Matrices of the reduced powers `P^k` in the Schubert basis.

mod batched;
mod direct;

pub use batched::{coefficients_for_word, MAX_WORD_LENGTH};
pub use direct::{cartan_matrix_of_word, coefficient_from_words, solve_subsequences, steenrod_coefficient};

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::is_prime;
use crate::weyl::CosetTable;

/// Sparse vector over coset ids with coefficients mod `p`.
pub type ClassVector = BTreeMap<usize, u32>;

/// The coefficients `a^k_{w,u}` mod `p` for every `u`, `w` of a coset table
/// and every requested `k`.
#[derive(Debug, Clone)]
pub struct SteenrodTable {
    cosets: Arc<CosetTable>,
    prime: u32,
    ks: BTreeSet<u32>,
    /// Nonzero entries keyed by `(k, u, w)`.
    entries: BTreeMap<(u32, usize, usize), u32>,
}

/// Compute the table of `P^k`, `k` in `ks`, on all Schubert classes.
///
/// Work is split by `w` and runs on the current rayon pool.
pub fn steenrod_table(cosets: Arc<CosetTable>, p: u32, ks: &BTreeSet<u32>) -> Result<SteenrodTable> {
    if !is_prime(p as u64) || p > 251 {
        return Err(Error::domain(format!("{p} is not a supported prime")));
    }
    if cosets.top_length() > MAX_WORD_LENGTH {
        return Err(Error::domain(format!("lengths above {MAX_WORD_LENGTH} are not supported")));
    }
    let k_max = ks.iter().copied().max().unwrap_or(0);
    let per_w: Vec<Vec<(usize, u32, u32)>> = (0..cosets.total_size())
        .into_par_iter()
        .map(|w| coefficients_for_word(&cosets, &cosets.element(w).word, p, k_max))
        .collect::<Result<_>>()?;
    let mut entries = BTreeMap::new();
    for (w, list) in per_w.into_iter().enumerate() {
        for (u, k, c) in list {
            if ks.contains(&k) {
                entries.insert((k, u, w), c);
            }
        }
    }
    Ok(SteenrodTable { cosets, prime: p, ks: ks.clone(), entries })
}

impl SteenrodTable {
    pub fn cosets(&self) -> &CosetTable {
        &self.cosets
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn ks(&self) -> &BTreeSet<u32> {
        &self.ks
    }

    /// Length of `P^k(s_u)`, or `None` if it exceeds the top grade.
    pub fn target_length(&self, k: u32, u: usize) -> Option<usize> {
        let d = self.cosets.element(u).length() + k as usize * (self.prime as usize - 1);
        (d <= self.cosets.top_length()).then_some(d)
    }

    /// `a^k_{w,u}`, or `None` when `k` was not computed or the lengths of
    /// `u` and `w` are incompatible with `P^k`.
    pub fn coefficient(&self, k: u32, u: usize, w: usize) -> Option<u32> {
        if !self.ks.contains(&k) || self.target_length(k, u) != Some(self.cosets.element(w).length()) {
            return None;
        }
        Some(self.entries.get(&(k, u, w)).copied().unwrap_or(0))
    }

    /// Nonzero terms of `P^k(s_u)` ordered by `w`.
    pub fn expansion(&self, k: u32, u: usize) -> Vec<(usize, u32)> {
        self.entries.range((k, u, 0)..=(k, u, usize::MAX)).map(|(&(_, _, w), &c)| (w, c)).collect()
    }

    /// Ids `u` with at least one nonzero `P^k(s_u)` over the computed `k`.
    pub fn nontrivial_rows(&self) -> Vec<usize> {
        let rows: BTreeSet<usize> = self.entries.keys().map(|&(_, u, _)| u).collect();
        rows.into_iter().collect()
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = ((u32, usize, usize), u32)> + '_ {
        self.entries.iter().map(|(&key, &c)| (key, c))
    }

    /// `P^k` applied to a combination of Schubert classes.
    pub fn apply(&self, k: u32, v: &ClassVector) -> Result<ClassVector> {
        if !self.ks.contains(&k) {
            return Err(Error::domain(format!("P^{k} was not computed")));
        }
        let p = self.prime as u64;
        let mut out = ClassVector::new();
        for (&u, &c) in v {
            for (w, a) in self.expansion(k, u) {
                let e = out.entry(w).or_insert(0);
                *e = ((*e as u64 + c as u64 * a as u64) % p) as u32;
            }
        }
        out.retain(|_, c| *c != 0);
        Ok(out)
    }
}
