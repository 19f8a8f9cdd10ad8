//! All coefficients `a^k_{w,u}` for one `w` in a single pass.
//!
//! Positions of the word of `w` are processed from the last to the first.
//! At each position the subsequence either skips it or takes it with
//! exponent 1 or `p`, and the variable of that position is then eliminated
//! exactly as `T_A` does. States are keyed by the product of the chosen
//! suffix (a coset representative) and the number of `p`-exponents so far,
//! which shares the work across every `u` and `k`.
//!
//! The carried polynomials are kept in a squarefree normal form. `T_A`
//! vanishes on `g * x_j (x_j - L_j)` with `L_j = sum_{i<j} a_{i,j} x_i`,
//! so `x_j^2` may be replaced by `x_j L_j`; this keeps every intermediate
//! polynomial a combination of subsets of positions, stored as bitmasks.

use rustc_hash::FxHashMap;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::weyl::CosetTable;

/// Longest word the bitmask representation supports.
pub const MAX_WORD_LENGTH: usize = 128;

type Terms = Rc<[(u128, u32)]>;

struct Reducer {
    p: u64,
    /// `a[i][j]` mod p, row-major, for `i < j`.
    a: Vec<u32>,
    m: usize,
    mul_x_memo: FxHashMap<(u8, u128), Terms>,
    mul_l_memo: FxHashMap<(u8, u8, u128), Terms>,
}

fn add_into(acc: &mut FxHashMap<u128, u32>, key: u128, c: u64, p: u64) {
    let e = acc.entry(key).or_insert(0);
    *e = ((*e as u64 + c) % p) as u32;
}

fn collect(acc: FxHashMap<u128, u32>) -> Terms {
    acc.into_iter().filter(|&(_, c)| c != 0).collect::<Vec<_>>().into()
}

impl Reducer {
    fn new(cartan_rows: impl Fn(usize, usize) -> i64, m: usize, p: u32) -> Self {
        let mut a = vec![0u32; m * m];
        for j in 0..m {
            for i in 0..j {
                a[i * m + j] = cartan_rows(i, j).rem_euclid(p as i64) as u32;
            }
        }
        Reducer { p: p as u64, a, m, mul_x_memo: FxHashMap::default(), mul_l_memo: FxHashMap::default() }
    }

    /// Normal form of `x_l * x_S`.
    fn mul_x(&mut self, l: usize, s: u128) -> Terms {
        let bit = 1u128 << l;
        if s & bit == 0 {
            return Rc::from([(s | bit, 1u32)]);
        }
        // only positions up to l take part in the rewriting
        let mask = if l == 127 { u128::MAX } else { (bit << 1) - 1 };
        let (low, high) = (s & mask, s & !mask);
        let low_terms = match self.mul_x_memo.get(&(l as u8, low)) {
            Some(t) => t.clone(),
            None => {
                let mut acc = FxHashMap::default();
                for i in 0..l {
                    let c = self.a[i * self.m + l] as u64;
                    if c != 0 {
                        for &(t, d) in self.mul_x(i, low).iter() {
                            add_into(&mut acc, t, c * d as u64, self.p);
                        }
                    }
                }
                let t = collect(acc);
                self.mul_x_memo.insert((l as u8, low), t.clone());
                t
            }
        };
        if high == 0 {
            low_terms
        } else {
            low_terms.iter().map(|&(t, c)| (t | high, c)).collect::<Vec<_>>().into()
        }
    }

    /// Normal form of `L_j^beta * x_S` for `S` inside positions `< j`.
    fn mul_l(&mut self, j: usize, beta: u8, s: u128) -> Terms {
        if beta == 0 {
            return Rc::from([(s, 1u32)]);
        }
        if let Some(t) = self.mul_l_memo.get(&(j as u8, beta, s)) {
            return t.clone();
        }
        let prev = self.mul_l(j, beta - 1, s);
        let mut acc = FxHashMap::default();
        for &(t, c) in prev.iter() {
            for i in 0..j {
                let a = self.a[i * self.m + j] as u64;
                if a != 0 {
                    for &(t2, d) in self.mul_x(i, t).iter() {
                        add_into(&mut acc, t2, c as u64 * a % self.p * d as u64, self.p);
                    }
                }
            }
        }
        let t = collect(acc);
        self.mul_l_memo.insert((j as u8, beta, s), t.clone());
        t
    }
}

/// Nonzero coefficients `(u, k, a^k_{w,u})` for a fixed reduced word of `w`,
/// restricted to `k <= k_max`.
pub fn coefficients_for_word(cosets: &CosetTable, word: &[usize], p: u32, k_max: u32) -> Result<Vec<(usize, u32, u32)>> {
    let m = word.len();
    if m > MAX_WORD_LENGTH {
        return Err(Error::domain(format!("words longer than {MAX_WORD_LENGTH} are not supported")));
    }
    let cartan = cosets.cartan();
    for &i in word {
        cartan.check_node(i)?;
    }
    let mut red = Reducer::new(|i, j| -cartan.entry(word[i], word[j]), m, p);
    let pm1 = p as usize - 1;
    let pu = p as u64;
    let degree = |id: usize, k: u32| cosets.element(id).length() + k as usize * pm1;

    let mut states: FxHashMap<(u32, u32), FxHashMap<u128, u32>> = FxHashMap::default();
    states.insert((0, 0), [(0u128, 1u32)].into_iter().collect());
    for lev in (0..m).rev() {
        let letter = word[lev];
        let bit = 1u128 << lev;
        let mut next: FxHashMap<(u32, u32), FxHashMap<u128, u32>> = FxHashMap::default();
        for ((v, k), poly) in states {
            let mut options = vec![(0u8, v as usize, k)];
            if let Some(v2) = cosets.left_ascent(v as usize, letter) {
                options.push((1, v2, k));
                if k < k_max {
                    options.push((p as u8, v2, k + 1));
                }
            }
            for (alpha, v2, k2) in options {
                let d = degree(v2, k2);
                if d > m || d + lev * (p as usize) < m {
                    continue;
                }
                let mut out = next.remove(&(v2 as u32, k2)).unwrap_or_default();
                for (&s, &c) in &poly {
                    let (beta, rest) = if s & bit != 0 {
                        (alpha, s & !bit)
                    } else if alpha == 0 {
                        continue;
                    } else {
                        (alpha - 1, s)
                    };
                    for &(t, e) in red.mul_l(lev, beta, rest).iter() {
                        add_into(&mut out, t, c as u64 * e as u64, pu);
                    }
                }
                out.retain(|_, c| *c != 0);
                if !out.is_empty() {
                    next.insert((v2 as u32, k2), out);
                }
            }
        }
        states = next;
    }
    let mut out: Vec<(usize, u32, u32)> = states
        .into_iter()
        .filter(|&((v, k), _)| degree(v as usize, k) == m)
        .filter_map(|((v, k), poly)| poly.get(&0).map(|&c| (v as usize, k, c)))
        .filter(|&(_, _, c)| c != 0)
        .collect();
    out.sort_unstable();
    Ok(out)
}
