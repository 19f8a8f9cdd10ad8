//! The coefficient formula evaluated literally: enumerate the subsequences
//! `J` with `s_J = u`, sum `m_{k,p}(x_J)` and apply `T_{A_w}` mod `p`.

use crate::cartan::{CartanData, WeightVector};
use crate::error::{Error, Result};
use crate::poly::{monomial_symmetric, t_a_evaluate, Monomial, SparsePoly, WordCartanMatrix};
use crate::weyl::CosetTable;

/// `a[i][j] = -C[word[i]][word[j]]` for `i < j`.
pub fn cartan_matrix_of_word(cartan: &CartanData, word: &[usize]) -> Result<WordCartanMatrix> {
    for &i in word {
        cartan.check_node(i)?;
    }
    Ok(WordCartanMatrix::from_fn(word.len(), |i, j| -cartan.entry(word[i], word[j])))
}

/// All position sets `J` (0-based, increasing) of size `l(u)` whose ordered
/// product of simple reflections equals `u`.
///
/// `u_word` is any reduced word of `u`. Positions are chosen from the right
/// and a branch is abandoned as soon as a chosen reflection fails to
/// lengthen the partial product.
pub fn solve_subsequences(cartan: &CartanData, w_word: &[usize], u_word: &[usize]) -> Result<Vec<Vec<usize>>> {
    let rho = cartan.rho();
    let target = cartan.apply_word(u_word, &rho)?;
    for &i in w_word {
        cartan.check_node(i)?;
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    search(cartan, w_word, w_word.len(), u_word.len(), &rho, &target, &mut chosen, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    cartan: &CartanData,
    word: &[usize],
    end: usize,
    need: usize,
    current: &WeightVector,
    target: &WeightVector,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if need == 0 {
        if current == target {
            let mut j = chosen.clone();
            j.reverse();
            out.push(j);
        }
        return;
    }
    for pos in (need - 1..end).rev() {
        let s = word[pos];
        if current.0[s] <= 0 {
            continue;
        }
        let next = cartan.reflect(s, current).expect("node checked");
        chosen.push(pos);
        search(cartan, word, pos, need - 1, &next, target, chosen, out);
        chosen.pop();
    }
}

/// `a^k_{w,u}` mod `p` for arbitrary reduced words of `u` and `w`.
///
/// Requires `l(w) = l(u) + k(p-1)`. For `k > l(u)` the coefficient is 0;
/// `k = 0` gives the identity operation.
pub fn coefficient_from_words(cartan: &CartanData, p: u32, k: u32, u_word: &[usize], w_word: &[usize]) -> Result<u32> {
    let (r, m) = (u_word.len(), w_word.len());
    if r + k as usize * (p as usize - 1) != m {
        return Err(Error::domain(format!(
            "P^{k} sends degree {r} to degree {}, not {m}",
            r + k as usize * (p as usize - 1)
        )));
    }
    if k as usize > r {
        return Ok(0);
    }
    let modulus = p as i64;
    let mut h = SparsePoly::<i64>::zero(m).reduce_mod(&modulus);
    for j in solve_subsequences(cartan, w_word, u_word)? {
        let term = if k == 0 {
            let mut e = Monomial::from_elem(0, m);
            j.iter().for_each(|&i| e[i] = 1);
            SparsePoly::monomial(e, 1)
        } else {
            monomial_symmetric(&j, k as usize, p, m)?
        };
        h = h.add(&term)?;
    }
    let a = cartan_matrix_of_word(cartan, w_word)?;
    Ok(t_a_evaluate(&a, &h)? as u32)
}

/// `a^k_{w,u}` mod `p` for coset representatives given by id.
pub fn steenrod_coefficient(table: &CosetTable, p: u32, k: u32, u: usize, w: usize) -> Result<u32> {
    coefficient_from_words(table.cartan(), p, k, &table.element(u).word, &table.element(w).word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::EnumerateOptions;

    fn g2() -> (CartanData, CosetTable) {
        let c = CartanData::parse_type("G2").unwrap();
        let t = CosetTable::enumerate(&c, &Default::default(), EnumerateOptions::default()).unwrap();
        (c, t)
    }

    #[test]
    fn word_matrix_g2() {
        let (c, _) = g2();
        let a = cartan_matrix_of_word(&c, &[1, 0, 1]).unwrap();
        assert_eq!((a.get(0, 1), a.get(0, 2), a.get(1, 2)), (3, -2, 1));
        assert_eq!(cartan_matrix_of_word(&c, &[0]).unwrap().rows(), vec![vec![0]]);
        assert_eq!(cartan_matrix_of_word(&c, &[0, 0]).unwrap().get(0, 1), -2);
        assert!(cartan_matrix_of_word(&c, &[2]).is_err());
    }

    #[test]
    fn subsequences_g2() {
        let (c, _) = g2();
        assert_eq!(solve_subsequences(&c, &[0, 1, 0], &[0]).unwrap(), vec![vec![2], vec![0]]);
        assert_eq!(solve_subsequences(&c, &[1, 0, 1], &[1]).unwrap(), vec![vec![2], vec![0]]);
        assert_eq!(solve_subsequences(&c, &[1, 0, 1], &[]).unwrap(), vec![Vec::<usize>::new()]);
        assert!(solve_subsequences(&c, &[1, 0, 1], &[0, 0]).unwrap().is_empty());
    }

    #[test]
    fn subsequences_match_brute_force() {
        let c = CartanData::parse_type("B3").unwrap();
        let t = CosetTable::enumerate(&c, &Default::default(), EnumerateOptions::default()).unwrap();
        let rho = c.rho();
        for w in t.grade(5) {
            for u in t.grade(2) {
                let target = c.apply_word(&u.word, &rho).unwrap();
                let mut brute = Vec::new();
                for mask in 0u32..(1 << w.word.len()) {
                    if mask.count_ones() == 2 {
                        let j: Vec<usize> = (0..w.word.len()).filter(|i| mask >> i & 1 == 1).collect();
                        let sub: Vec<usize> = j.iter().map(|&i| w.word[i]).collect();
                        if c.apply_word(&sub, &rho).unwrap() == target {
                            brute.push(j);
                        }
                    }
                }
                brute.sort();
                let mut got = solve_subsequences(&c, &w.word, &u.word).unwrap();
                got.sort();
                assert_eq!(got, brute);
            }
        }
    }

    #[test]
    fn g2_coefficients() {
        let (_, t) = g2();
        let id = |r, i| t.id_of_label(r, i).unwrap();
        assert_eq!(steenrod_coefficient(&t, 3, 1, id(1, 2), id(3, 2)).unwrap(), 2);
        assert_eq!(steenrod_coefficient(&t, 3, 1, id(1, 2), id(3, 1)).unwrap(), 0);
        for w in 1..=2 {
            assert_eq!(steenrod_coefficient(&t, 3, 1, id(1, 1), id(3, w)).unwrap(), 0);
        }
        assert!(steenrod_coefficient(&t, 3, 1, id(1, 1), id(2, 1)).is_err());
        // k above the degree of u
        assert_eq!(steenrod_coefficient(&t, 2, 2, id(1, 1), id(3, 1)).unwrap(), 0);
        // P^0 is the identity
        assert_eq!(steenrod_coefficient(&t, 5, 0, id(3, 1), id(3, 1)).unwrap(), 1);
        assert_eq!(steenrod_coefficient(&t, 5, 0, id(3, 1), id(3, 2)).unwrap(), 0);
    }
}
