use rustc_hash::FxHashMap;

use super::{mul_monomials, Monomial, SparsePoly};
use crate::error::{Error, Result};
use crate::scalar::Coefficient;

/// Strictly upper triangular integer matrix `a[i][j]`, `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordCartanMatrix {
    size: usize,
    entries: Vec<i64>,
}

impl WordCartanMatrix {
    pub fn zero(size: usize) -> Self {
        WordCartanMatrix { size, entries: vec![0; size * size] }
    }

    /// Build from `f(i, j)` evaluated for every `i < j`.
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut a = Self::zero(size);
        for j in 0..size {
            for i in 0..j {
                a.entries[i * size + j] = f(i, j);
            }
        }
        a
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.size + j]
    }

    /// Set `a[i][j]`; only `i < j` is accepted.
    pub fn set(&mut self, i: usize, j: usize, v: i64) -> Result<()> {
        if i >= j || j >= self.size {
            return Err(Error::domain(format!("entry ({i}, {j}) is not strictly upper triangular")));
        }
        self.entries[i * self.size + j] = v;
        Ok(())
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.size.max(1)).take(self.size).map(|r| r.to_vec()).collect()
    }
}

/// A monomial can only survive the descent from level `m` to level 1 if
/// every prefix `x_1..x_j` carries total degree at most `j`: exponents of
/// earlier variables only grow as later ones are eliminated.
fn prefix_ok(e: &[u8], upto: usize) -> bool {
    let mut s = 0usize;
    for (j, &k) in e[..upto].iter().enumerate() {
        s += k as usize;
        if s > j + 1 {
            return false;
        }
    }
    true
}

fn accumulate<C: Coefficient>(map: &mut FxHashMap<Monomial, C>, e: Monomial, c: C, modulus: &Option<C>) {
    let entry = map.entry(e).or_insert_with(C::zero);
    *entry = entry.clone() + c;
    if let Some(p) = modulus {
        *entry = entry.reduce(p);
    }
}

/// Evaluate `T_A` on a polynomial homogeneous of degree `m` in `m`
/// variables, where `m` is the size of `A`.
///
/// The last variable is eliminated first: a term `g * x_m^r` with `g` free
/// of `x_m` becomes `g * (a_{1,m} x_1 + ... + a_{m-1,m} x_{m-1})^(r-1)`, and
/// terms without `x_m` vanish. Identical monomials are merged after each
/// level. Arithmetic follows the polynomial's modulus, if any.
pub fn t_a_evaluate<C: Coefficient>(a: &WordCartanMatrix, h: &SparsePoly<C>) -> Result<C> {
    let m = a.size();
    if h.nvars() != m {
        return Err(Error::VariableMismatch { left: m, right: h.nvars() });
    }
    if h.is_zero() {
        return Ok(C::zero());
    }
    match h.homogeneous_degree() {
        Some(d) if d == m => {}
        Some(d) => return Err(Error::domain(format!("T_A needs degree {m}, got {d}"))),
        None => return Err(Error::domain("T_A needs a homogeneous polynomial")),
    }
    let modulus = h.modulus().cloned();
    if m == 0 {
        return Ok(h.coefficient_of(&[]));
    }
    let mut cur: FxHashMap<Monomial, C> =
        h.terms().filter(|(e, _)| prefix_ok(e, m)).map(|(e, c)| (e.clone(), c.clone())).collect();
    for l in (1..m).rev() {
        let max_r = cur.keys().map(|e| e[l] as usize).max().unwrap_or(0);
        let powers = linear_powers(a, l, max_r.saturating_sub(1), &modulus);
        let mut next = FxHashMap::default();
        for (mut e, c) in cur {
            let r = e[l] as usize;
            if r == 0 {
                continue;
            }
            e[l] = 0;
            for (f, d) in &powers[r - 1] {
                let g = mul_monomials(&e, f)?;
                if prefix_ok(&g, l) {
                    accumulate(&mut next, g, c.clone() * d.clone(), &modulus);
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        cur = next;
    }
    let mut total = C::zero();
    for (e, c) in cur {
        if e[0] == 1 {
            total = total + c;
        }
    }
    Ok(match &modulus {
        Some(p) => total.reduce(p),
        None => total,
    })
}

/// `L^j` for `j = 0..=max`, where `L = sum_{i<l} a[i][l] x_i`.
fn linear_powers<C: Coefficient>(
    a: &WordCartanMatrix,
    l: usize,
    max: usize,
    modulus: &Option<C>,
) -> Vec<Vec<(Monomial, C)>> {
    let m = a.size();
    let mut out = vec![vec![(Monomial::from_elem(0, m), C::one())]];
    for _ in 0..max {
        let prev = out.last().expect("nonempty");
        let mut map = FxHashMap::default();
        for (e, c) in prev {
            for i in 0..l {
                let v = a.get(i, l);
                if v != 0 {
                    let mut f = e.clone();
                    f[i] += 1;
                    accumulate(&mut map, f, c.clone() * C::from_small(v), modulus);
                }
            }
        }
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|x, y| x.0.cmp(&y.0));
        out.push(terms);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mono(e: &[u8]) -> SparsePoly<i64> {
        SparsePoly::monomial(Monomial::from_slice(e), 1)
    }

    #[test]
    fn rank_two() {
        for a in [-3, -1, 0, 2, 7] {
            let mat = WordCartanMatrix::from_fn(2, |_, _| a);
            assert_eq!(t_a_evaluate(&mat, &mono(&[1, 1])).unwrap(), 1);
            assert_eq!(t_a_evaluate(&mat, &mono(&[0, 2])).unwrap(), a);
            assert_eq!(t_a_evaluate(&mat, &mono(&[2, 0])).unwrap(), 0);
        }
    }

    #[test]
    fn rank_three_cube() {
        // x3^3 -> T((b x1 + c x2)^2) = 2bc + a c^2
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let (a, b, c) = (rng.gen_range(-4..=4), rng.gen_range(-4..=4), rng.gen_range(-4..=4));
            let mut mat = WordCartanMatrix::zero(3);
            mat.set(0, 1, a).unwrap();
            mat.set(0, 2, b).unwrap();
            mat.set(1, 2, c).unwrap();
            assert_eq!(t_a_evaluate(&mat, &mono(&[0, 0, 3])).unwrap(), 2 * b * c + a * c * c);
        }
    }

    #[test]
    fn rank_three_general_monomial() {
        // x1^r1 x2^r2 x3^r3 -> T_{A'}(x1^r1 x2^r2 (b x1 + c x2)^(r3-1)), checked via substitute
        let (a, b, c) = (2i64, -3, 5);
        let mut mat = WordCartanMatrix::zero(3);
        mat.set(0, 1, a).unwrap();
        mat.set(0, 2, b).unwrap();
        mat.set(1, 2, c).unwrap();
        let sub = WordCartanMatrix::from_fn(2, |_, _| a);
        for (r1, r2) in [(0u8, 1u8), (1, 0), (0, 0), (1, 1), (0, 2), (2, 0)] {
            let r3 = 3 - r1 - r2;
            if r3 == 0 {
                continue;
            }
            let direct = t_a_evaluate(&mat, &mono(&[r1, r2, r3])).unwrap();
            let lin = SparsePoly::from_terms(2, [(Monomial::from_slice(&[1, 0]), b), (Monomial::from_slice(&[0, 1]), c)]).unwrap();
            let reduced = mono(&[r1, r2]).mul(&lin.pow(r3 as u32 - 1).unwrap()).unwrap();
            assert_eq!(direct, t_a_evaluate(&sub, &reduced).unwrap(), "{r1} {r2} {r3}");
        }
    }

    #[test]
    fn product_of_all_variables_is_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for m in 1..=12 {
            for _ in 0..5 {
                let mat = WordCartanMatrix::from_fn(m, |_, _| rng.gen_range(-3..=3));
                let h = mono(&vec![1; m]);
                assert_eq!(t_a_evaluate(&mat, &h).unwrap(), 1);
            }
        }
    }

    #[test]
    fn rejects_bad_degree() {
        let mat = WordCartanMatrix::zero(2);
        assert!(t_a_evaluate(&mat, &mono(&[1, 0])).is_err());
        assert!(t_a_evaluate(&mat, &mono(&[1, 1]).add(&mono(&[1, 0])).unwrap()).is_err());
        assert!(t_a_evaluate(&mat, &mono(&[1, 1, 0])).is_err());
        assert!(mat.clone().set(1, 0, 3).is_err());
    }

    fn random_poly(rng: &mut ChaCha8Rng, m: usize, terms: usize) -> SparsePoly<i64> {
        let mut p = SparsePoly::zero(m);
        for _ in 0..terms {
            let mut e = Monomial::from_elem(0, m);
            for _ in 0..m {
                e[rng.gen_range(0..m)] += 1;
            }
            p.add_term(e, rng.gen_range(-9..=9));
        }
        p
    }

    proptest! {
        #[test]
        fn additive_and_commutes_with_reduction(seed in any::<u64>(), m in 2usize..7) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mat = WordCartanMatrix::from_fn(m, |_, _| rng.gen_range(-3..=3));
            let h1 = random_poly(&mut rng, m, 6);
            let h2 = random_poly(&mut rng, m, 6);
            let t1 = t_a_evaluate(&mat, &h1).unwrap();
            let t2 = t_a_evaluate(&mat, &h2).unwrap();
            prop_assert_eq!(t_a_evaluate(&mat, &h1.add(&h2).unwrap()).unwrap(), t1 + t2);
            for p in [2i64, 3, 5, 7] {
                prop_assert_eq!(t_a_evaluate(&mat, &h1.reduce_mod(&p)).unwrap(), t1.rem_euclid(p));
            }
            let big = SparsePoly::<BigInt>::from_terms(m, h1.terms().map(|(e, c)| (e.clone(), BigInt::from(*c)))).unwrap();
            prop_assert_eq!(t_a_evaluate(&mat, &big).unwrap(), BigInt::from(t1));
        }

        #[test]
        fn terms_without_last_variable_vanish(seed in any::<u64>(), m in 2usize..7) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mat = WordCartanMatrix::from_fn(m, |_, _| rng.gen_range(-3..=3));
            let mut e = Monomial::from_elem(0, m);
            for _ in 0..m {
                e[rng.gen_range(0..m - 1)] += 1;
            }
            prop_assert_eq!(t_a_evaluate(&mat, &SparsePoly::monomial(e, 1i64)).unwrap(), 0);
        }
    }
}
