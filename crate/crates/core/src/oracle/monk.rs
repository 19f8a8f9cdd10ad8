//! Reduced powers computed inside `H^*(Fl_n; F_p)` in the Schubert basis.
//!
//! Multiplication by `x_r` follows Monk's rule and Schubert polynomials are
//! generated by the transition recursion
//! `S_u = x_r S_v + sum_{i<r} S_{v t_{ir}}`, so the total power
//! `S_u(x + x^p)` of every class is built from the total powers of smaller
//! classes without ever expanding a polynomial. Classes of a partial flag
//! manifold pull back injectively, so one table over `S_n` serves every
//! parabolic subgroup.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rustc_hash::FxHashMap;

use super::{coset_permutations, inversions, type_a_size, word_to_permutation, Permutation, MAX_N};
use crate::error::{Error, Result};
use crate::scalar::is_prime;
use crate::weyl::CosetTable;

/// Sparse class in the Schubert basis: `(permutation index, coefficient)`.
type Class = Vec<(u32, u32)>;

/// Schubert basis of `H^*(Fl_n)` with Monk's rule tabulated.
#[derive(Debug, Clone)]
pub struct FlagCohomology {
    n: usize,
    perms: Vec<Permutation>,
    index: FxHashMap<Permutation, u32>,
    lengths: Vec<usize>,
    /// Entry `w * n + r`: terms of `S_w x_{r+1}` as `(target, negated)`.
    monk: Vec<Vec<(u32, bool)>>,
}

/// `w t_{ij}` covers `w` in Bruhat order.
fn covers(w: &[u8], i: usize, j: usize) -> bool {
    w[i] < w[j] && !w[i + 1..j].iter().any(|&x| w[i] < x && x < w[j])
}

impl FlagCohomology {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::domain(format!("flag cohomology needs 1 <= n <= {MAX_N}")));
        }
        let perms: Vec<Permutation> = (1..=n as u8).permutations(n).collect();
        let index: FxHashMap<Permutation, u32> = perms.iter().enumerate().map(|(k, w)| (w.clone(), k as u32)).collect();
        let lengths = perms.iter().map(|w| inversions(w)).collect();
        let mut monk = Vec::with_capacity(perms.len() * n);
        for w in &perms {
            for r in 0..n {
                let mut terms = Vec::new();
                let mut push = |i: usize, j: usize, negated: bool| {
                    let mut v = w.clone();
                    v.swap(i, j);
                    terms.push((index[&v], negated));
                };
                for j in r + 1..n {
                    if covers(w, r, j) {
                        push(r, j, false);
                    }
                }
                for i in 0..r {
                    if covers(w, i, r) {
                        push(i, r, true);
                    }
                }
                monk.push(terms);
            }
        }
        Ok(FlagCohomology { n, perms, index, lengths, monk })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    /// `c * x_{r+1}` accumulated into the dense vector `out`.
    fn add_times_x(&self, r: usize, c: &[u32], out: &mut [u32], p: u32) {
        for (w, &a) in c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for &(t, negated) in &self.monk[w * self.n + r] {
                let slot = &mut out[t as usize];
                *slot = if negated { (*slot + p - a) % p } else { (*slot + a) % p };
            }
        }
    }

    /// Dense `c * (x_{r+1} + x_{r+1}^p)`.
    fn times_total_x(&self, r: usize, c: &[u32], p: u32) -> Vec<u32> {
        let mut out = vec![0; self.len()];
        self.add_times_x(r, c, &mut out, p);
        let mut power = out.clone();
        for _ in 1..p {
            let mut next = vec![0; self.len()];
            self.add_times_x(r, &power, &mut next, p);
            power = next;
        }
        for (o, q) in out.iter_mut().zip(power) {
            *o = (*o + q) % p;
        }
        out
    }

    /// Index of `S_v` and of the same-length classes in the transition
    /// expansion of `S_u`, together with the row `r`; `None` for the identity.
    fn transition(&self, u: usize) -> Option<(usize, usize, Vec<usize>)> {
        let w = &self.perms[u];
        let r = (0..self.n - 1).rev().find(|&r| w[r] > w[r + 1])?;
        let s = (r + 1..self.n).rev().find(|&s| w[s] < w[r]).expect("r is a descent");
        let mut v = w.clone();
        v.swap(r, s);
        let rest = (0..r)
            .filter(|&i| covers(&v, i, r))
            .map(|i| {
                let mut t = v.clone();
                t.swap(i, r);
                self.index[&t] as usize
            })
            .collect();
        Some((r, self.index[&v] as usize, rest))
    }

    /// Total power of every Schubert class mod `p`.
    pub fn total_powers(&self, p: u32) -> Result<TotalPowers<'_>> {
        if !is_prime(p as u64) || p > 251 {
            return Err(Error::domain(format!("{p} is not a supported prime")));
        }
        let mut done: Vec<Option<Class>> = vec![None; self.len()];
        let id = self.index[&(1..=self.n as u8).collect::<Permutation>()] as usize;
        done[id] = Some(vec![(id as u32, 1)]);
        for start in 0..self.len() {
            let mut stack = vec![start];
            while let Some(&u) = stack.last() {
                if done[u].is_some() {
                    stack.pop();
                    continue;
                }
                let (r, v, rest) = self.transition(u).expect("identity is seeded");
                let missing: Vec<usize> = std::iter::once(v).chain(rest.iter().copied()).filter(|&d| done[d].is_none()).collect();
                if !missing.is_empty() {
                    stack.extend(missing);
                    continue;
                }
                let mut dense = vec![0u32; self.len()];
                for &(t, a) in done[v].as_ref().expect("computed") {
                    dense[t as usize] = a;
                }
                let mut out = self.times_total_x(r, &dense, p);
                for &d in &rest {
                    for &(t, a) in done[d].as_ref().expect("computed") {
                        out[t as usize] = (out[t as usize] + a) % p;
                    }
                }
                done[u] = Some(out.iter().enumerate().filter(|(_, &a)| a != 0).map(|(t, &a)| (t as u32, a)).collect());
                stack.pop();
            }
        }
        Ok(TotalPowers { ring: self, p, classes: done.into_iter().map(|c| c.expect("all computed")).collect() })
    }
}

/// `S_u(x + x^p)` in the Schubert basis for every `u` in `S_n`.
#[derive(Debug, Clone)]
pub struct TotalPowers<'a> {
    ring: &'a FlagCohomology,
    p: u32,
    classes: Vec<Class>,
}

impl TotalPowers<'_> {
    pub fn prime(&self) -> u32 {
        self.p
    }

    /// Coefficient of `S_w` in the total power of `S_u`.
    pub fn coefficient(&self, u: &[u8], w: &[u8]) -> u32 {
        let (u, w) = (self.ring.index[u], self.ring.index[w]);
        self.classes[u as usize].iter().find(|&&(t, _)| t == w).map_or(0, |&(_, a)| a)
    }
}

/// Same contract as [`super::oracle_table`], read off precomputed total
/// powers of `S_n`.
pub fn transition_table(
    cosets: &CosetTable,
    powers: &TotalPowers<'_>,
    ks: &BTreeSet<u32>,
) -> Result<BTreeMap<(u32, usize, usize), u32>> {
    let n = type_a_size(cosets.cartan())?;
    let ring = powers.ring;
    if ring.n != n {
        return Err(Error::domain(format!("cohomology is for n = {}, need {n}", ring.n)));
    }
    let grades = coset_permutations(n, cosets.parabolic());
    let mut to_id = FxHashMap::default();
    for (id, e) in cosets.elements().iter().enumerate() {
        to_id.insert(ring.index[&word_to_permutation(n, &e.word)], id);
    }
    if to_id.len() != grades.iter().map(Vec::len).sum::<usize>() {
        return Err(Error::domain("coset table does not match the permutation count"));
    }
    let step = powers.p as usize - 1;
    let mut out = BTreeMap::new();
    for (&u, &uid) in &to_id {
        for &(w, a) in &powers.classes[u as usize] {
            let Some(&wid) = to_id.get(&w) else { continue };
            let (lu, lw) = (ring.lengths[u as usize], ring.lengths[w as usize]);
            if lw < lu || (lw - lu) % step != 0 {
                continue;
            }
            let k = ((lw - lu) / step) as u32;
            if ks.contains(&k) {
                out.insert((k, uid, wid), a);
            }
        }
    }
    Ok(out)
}
