use itertools::Itertools;

use super::{Monomial, SparsePoly};
use crate::error::{Error, Result};
use crate::scalar::Coefficient;

/// The monomial symmetric function of the partition `(p^k, 1^(r-k))` in the
/// variables at `positions` (0-based, distinct), embedded in `m` variables.
///
/// Every term has coefficient 1: `p` on `k` of the chosen variables and 1
/// on the remaining `r - k`.
pub fn monomial_symmetric<C: Coefficient>(positions: &[usize], k: usize, p: u32, m: usize) -> Result<SparsePoly<C>> {
    let r = positions.len();
    if k < 1 || k > r {
        return Err(Error::domain(format!("partition (p^{k}, 1^{}) needs 1 <= k <= {r}", r as i64 - k as i64)));
    }
    if positions.iter().any(|&i| i >= m) || positions.iter().duplicates().next().is_some() {
        return Err(Error::domain("positions must be distinct variables in range"));
    }
    let p = u8::try_from(p).map_err(|_| Error::domain("prime too large for exponent storage"))?;
    let mut base = Monomial::from_elem(0, m);
    for &i in positions {
        base[i] = 1;
    }
    let mut out = SparsePoly::zero(m);
    for chosen in positions.iter().combinations(k) {
        let mut e = base.clone();
        for &i in chosen {
            e[i] = p;
        }
        out.add_term(e, C::one());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn three_variables() {
        let f = monomial_symmetric::<i64>(&[0, 1, 2], 1, 5, 3).unwrap();
        assert_eq!(f.len(), 3);
        for e in [[5, 1, 1], [1, 5, 1], [1, 1, 5]] {
            assert_eq!(f.coefficient_of(&e), 1);
        }
        let g = monomial_symmetric::<i64>(&[0, 1, 2], 3, 5, 3).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.coefficient_of(&[5, 5, 5]), 1);
    }

    #[test]
    fn single_variable() {
        let f = monomial_symmetric::<i64>(&[4], 1, 2, 6).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.coefficient_of(&[0, 0, 0, 0, 2, 0]), 1);
    }

    #[test]
    fn domain_errors() {
        assert!(monomial_symmetric::<i64>(&[0, 1], 3, 3, 2).is_err());
        assert!(monomial_symmetric::<i64>(&[0, 1], 0, 3, 2).is_err());
        assert!(monomial_symmetric::<i64>(&[0, 0], 1, 3, 2).is_err());
        assert!(monomial_symmetric::<i64>(&[0, 5], 1, 3, 2).is_err());
    }

    proptest! {
        #[test]
        fn shape_and_order_independence(
            set in proptest::sample::subsequence((0..9usize).collect::<Vec<_>>(), 1..7),
            seed in any::<u64>(),
            p in proptest::sample::select(vec![2u32, 3, 5, 7]),
        ) {
            let r = set.len();
            let k = 1 + (seed as usize) % r;
            let f = monomial_symmetric::<i64>(&set, k, p, 9).unwrap();
            let mut shuffled = set.clone();
            shuffled.rotate_left((seed as usize / 7) % r);
            shuffled.reverse();
            prop_assert_eq!(&f, &monomial_symmetric::<i64>(&shuffled, k, p, 9).unwrap());
            let binom = (0..k).fold(1usize, |acc, i| acc * (r - i) / (i + 1));
            prop_assert_eq!(f.len(), binom);
            prop_assert_eq!(f.homogeneous_degree(), Some(r + k * (p as usize - 1)));
        }
    }
}
