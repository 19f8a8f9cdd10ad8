//! Independent check of the reduced powers in type `A_{n-1}`.
//!
//! Schubert classes of the flag manifold of `C^n` are represented by
//! Schubert polynomials. Each Chern root `x` has total power `x + x^p`, so
//! the total power of a class is its Schubert polynomial with
//! `x_i -> x_i + x_i^p`; the coefficient of `S_w` in a homogeneous `f` of
//! degree `l(w)` is the constant `d_w f`. Nothing here uses the coset
//! enumeration or the evaluator of the main engine: permutations are
//! enumerated directly and only matched to coset ids at the end.

mod monk;

use std::collections::{BTreeMap, BTreeSet};

use rustc_hash::FxHashMap;

use crate::cartan::CartanData;
use crate::error::{Error, Result};
use crate::poly::{Monomial, SparsePoly};
use crate::scalar::{is_prime, Coefficient};
use crate::weyl::CosetTable;

pub use monk::{transition_table, FlagCohomology, TotalPowers};

/// Largest `n` handled: exponent vectors are packed into one `u64`.
pub const MAX_N: usize = 8;

/// Permutation in one-line notation with values `1..=n`.
pub type Permutation = Vec<u8>;

/// Divided difference `(f - s_i f) / (x_i - x_{i+1})` for 0-based `i`.
pub fn divided_difference<C: Coefficient>(i: usize, f: &SparsePoly<C>) -> Result<SparsePoly<C>> {
    if i + 1 >= f.nvars() {
        return Err(Error::domain(format!("no divided difference {} on {} variables", i + 1, f.nvars())));
    }
    let mut out = match f.modulus() {
        Some(p) => SparsePoly::zero(f.nvars()).reduce_mod(p),
        None => SparsePoly::zero(f.nvars()),
    };
    for (e, c) in f.terms() {
        let (a, b) = (e[i], e[i + 1]);
        if a == b {
            continue;
        }
        let (lo, d, sign) = if a > b { (b, a - b, c.clone()) } else { (a, b - a, -c.clone()) };
        for t in 0..d {
            let mut g: Monomial = e.clone();
            g[i] = lo + d - 1 - t;
            g[i + 1] = lo + t;
            out.add_term(g, sign.clone());
        }
    }
    Ok(out)
}

/// One-line notation of `s_{a_1} s_{a_2} ... s_{a_l}` with `s_a = (a+1, a+2)`.
pub fn word_to_permutation(n: usize, word: &[usize]) -> Permutation {
    let mut perm: Permutation = (1..=n as u8).collect();
    for &a in word {
        perm.swap(a, a + 1);
    }
    perm
}

pub fn inversions(perm: &[u8]) -> usize {
    (0..perm.len()).map(|i| (i + 1..perm.len()).filter(|&j| perm[i] > perm[j]).count()).sum()
}

/// Schubert polynomials of all permutations of `1..=n`.
#[derive(Debug, Clone)]
pub struct SchubertPolyBasis {
    n: usize,
    elements: BTreeMap<Permutation, SparsePoly<i64>>,
}

impl SchubertPolyBasis {
    /// Downward from `x_1^{n-1} x_2^{n-2} ... x_{n-1}` by divided differences.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::domain(format!("Schubert basis needs 1 <= n <= {MAX_N}")));
        }
        let w0: Permutation = (1..=n as u8).rev().collect();
        let top: Monomial = (0..n).map(|i| (n - 1 - i) as u8).collect();
        let mut elements = BTreeMap::new();
        elements.insert(w0.clone(), SparsePoly::monomial(top, 1i64));
        let mut layer = vec![w0];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for w in &layer {
                for i in 0..n - 1 {
                    if w[i] > w[i + 1] {
                        let mut v = w.clone();
                        v.swap(i, i + 1);
                        if !elements.contains_key(&v) {
                            let f = divided_difference(i, &elements[w])?;
                            elements.insert(v.clone(), f);
                            next.push(v);
                        }
                    }
                }
            }
            layer = next;
        }
        Ok(SchubertPolyBasis { n, elements })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, perm: &[u8]) -> Option<&SparsePoly<i64>> {
        self.elements.get(perm)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &SparsePoly<i64>)> {
        self.elements.iter()
    }
}

/// Packed polynomial mod p: 8 bits per exponent.
type Packed = FxHashMap<u64, u32>;

#[inline]
fn exp(m: u64, i: usize) -> u8 {
    (m >> (8 * i)) as u8
}

#[inline]
fn packed_degree(m: u64) -> usize {
    (0..8).map(|i| exp(m, i) as usize).sum()
}

fn packed_dd(i: usize, f: &Packed, p: u64, max_degree: usize) -> Packed {
    let mut out = Packed::default();
    for (&m, &c) in f {
        let (a, b) = (exp(m, i), exp(m, i + 1));
        if a == b || packed_degree(m) > max_degree + 1 {
            continue;
        }
        let (lo, d, c) = if a > b { (b, a - b, c as u64) } else { (a, b - a, p - c as u64) };
        let cleared = m & !(0xffff << (8 * i));
        for t in 0..d {
            let g = cleared | ((lo + d - 1 - t) as u64) << (8 * i) | ((lo + t) as u64) << (8 * (i + 1));
            let e = out.entry(g).or_insert(0);
            *e = ((*e as u64 + c) % p) as u32;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn binomial_mod(n: u32, k: u32, p: u64) -> u64 {
    let mut b = 1u64;
    for i in 0..k {
        b = b * (n - i) as u64 / (i + 1) as u64;
    }
    b % p
}

/// `f(x_1 + x_1^p, ..., x_n + x_n^p)` mod p, terms of degree above `max_degree` dropped.
fn total_power(f: &SparsePoly<i64>, p: u32, max_degree: usize) -> Packed {
    let pm = p as u64;
    let mut out = Packed::default();
    for (e, c) in f.terms() {
        // choose how many factors of each (x + x^p)^{e_i} take x^p
        let mut partial: Vec<(u64, u64, usize)> = vec![(0, c.rem_euclid(p as i64) as u64, 0)];
        for (i, &ei) in e.iter().enumerate() {
            let mut next = Vec::new();
            for &(m, coef, deg) in &partial {
                for t in 0..=ei as u32 {
                    let d = deg + ei as usize + t as usize * (p as usize - 1);
                    if d > max_degree {
                        break;
                    }
                    let b = binomial_mod(ei as u32, t, pm);
                    if b != 0 {
                        let ex = ei as u64 + t as u64 * (p as u64 - 1);
                        next.push((m | ex << (8 * i), coef * b % pm, d));
                    }
                }
            }
            partial = next;
        }
        for (m, coef, _) in partial {
            let x = out.entry(m).or_insert(0);
            *x = ((*x as u64 + coef) % pm) as u32;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Minimal coset representatives as permutations, grouped by length.
fn coset_permutations(n: usize, parabolic: &BTreeSet<usize>) -> Vec<Vec<Permutation>> {
    let id: Permutation = (1..=n as u8).collect();
    let mut grades = vec![vec![id]];
    let mut seen: BTreeSet<Permutation> = grades[0].iter().cloned().collect();
    loop {
        let mut next = Vec::new();
        for v in grades.last().expect("nonempty") {
            // left multiplication by s_a swaps the values a+1, a+2
            for a in 0..n - 1 {
                let (pa, pb) = (v.iter().position(|&x| x as usize == a + 1), v.iter().position(|&x| x as usize == a + 2));
                if pa < pb {
                    let mut w = v.clone();
                    w.swap(pa.unwrap(), pb.unwrap());
                    let minimal = parabolic.iter().all(|&j| w[j] < w[j + 1]);
                    if minimal && seen.insert(w.clone()) {
                        next.push(w);
                    }
                }
            }
        }
        if next.is_empty() {
            return grades;
        }
        next.sort();
        grades.push(next);
    }
}

/// The type-A Cartan matrix of rank `n - 1`, or an error naming the input.
fn type_a_size(cartan: &CartanData) -> Result<usize> {
    let r = cartan.rank();
    let a = CartanData::builtin('A', r)?;
    if a.matrix() != cartan.matrix() {
        return Err(Error::domain(format!("oracle supports type A only, got {}", cartan.describe())));
    }
    Ok(r + 1)
}

/// `a^k_{w,u}` by the oracle for every `u`, `w` in `cosets` and every `k` in
/// `ks`, keyed `(k, u, w)` with coset ids; zeros are omitted.
pub fn oracle_table(
    cosets: &CosetTable,
    basis: &SchubertPolyBasis,
    p: u32,
    ks: &BTreeSet<u32>,
) -> Result<BTreeMap<(u32, usize, usize), u32>> {
    let n = type_a_size(cosets.cartan())?;
    if basis.n() != n {
        return Err(Error::domain(format!("basis is for n = {}, need {n}", basis.n())));
    }
    if !is_prime(p as u64) || p > 251 {
        return Err(Error::domain(format!("{p} is not a supported prime")));
    }
    let grades = coset_permutations(n, cosets.parabolic());
    let top = grades.len() - 1;
    let mut to_id = FxHashMap::default();
    for (id, e) in cosets.elements().iter().enumerate() {
        to_id.insert(word_to_permutation(n, &e.word), id);
    }
    if to_id.len() != grades.iter().map(Vec::len).sum::<usize>() {
        return Err(Error::domain("coset table does not match the permutation count"));
    }
    let pm = p as u64;
    let mut out = BTreeMap::new();
    for (ru, layer) in grades.iter().enumerate() {
        for u in layer {
            let uid = *to_id.get(u).ok_or_else(|| Error::domain("permutation missing from coset table"))?;
            let mut prev: BTreeMap<Permutation, Packed> = BTreeMap::new();
            let id: Permutation = (1..=n as u8).collect();
            prev.insert(id, total_power(basis.get(u).expect("basis covers S_n"), p, top));
            for (rv, vs) in grades.iter().enumerate().skip(1) {
                let mut cur = BTreeMap::new();
                for v in vs {
                    // smallest left descent a: a+2 appears before a+1
                    let a = (0..n - 1)
                        .find(|&a| {
                            let pa = v.iter().position(|&x| x as usize == a + 1);
                            let pb = v.iter().position(|&x| x as usize == a + 2);
                            pa > pb
                        })
                        .expect("nonidentity permutation has a left descent");
                    let mut parent = v.clone();
                    let (pa, pb) = (
                        parent.iter().position(|&x| x as usize == a + 1).unwrap(),
                        parent.iter().position(|&x| x as usize == a + 2).unwrap(),
                    );
                    parent.swap(pa, pb);
                    let Some(g) = prev.get(&parent) else { continue };
                    // d_v = d_a d_{s_a v}
                    let h = packed_dd(a, g, pm, top - rv);
                    if !h.is_empty() {
                        cur.insert(v.clone(), h);
                    }
                }
                for (v, h) in &cur {
                    if rv < ru {
                        continue;
                    }
                    let diff = rv - ru;
                    if diff % (p as usize - 1) != 0 {
                        continue;
                    }
                    let k = (diff / (p as usize - 1)) as u32;
                    if !ks.contains(&k) {
                        continue;
                    }
                    if let Some(&c) = h.get(&0) {
                        if c != 0 {
                            out.insert((k, uid, to_id[v]), c);
                        }
                    }
                }
                prev = cur;
            }
            if ks.contains(&0) {
                out.insert((0, uid, uid), 1);
            }
        }
    }
    Ok(out)
}

/// Expansion of `P^k(s_u)` by the oracle, as `(w id, coefficient)` pairs.
pub fn oracle_steenrod(cosets: &CosetTable, basis: &SchubertPolyBasis, p: u32, k: u32, u: usize) -> Result<Vec<(usize, u32)>> {
    let table = oracle_table(cosets, basis, p, &[k].into())?;
    Ok(table.into_iter().filter(|&((_, uu, _), _)| uu == u).map(|((_, _, w), c)| (w, c)).collect())
}
