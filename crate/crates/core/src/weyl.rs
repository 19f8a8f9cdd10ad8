//! Minimal coset representatives `W/W'` enumerated as the orbit of a weight.
//!
//! The stabiliser of `v0` (1 off the parabolic nodes, 0 on them) is the
//! parabolic subgroup `W'`, so orbit points are in bijection with cosets
//! `wW'` and the breadth-first depth of a point is the length of the
//! shortest representative. For an orbit point `x = w(v0)` with `w`
//! minimal, `x[i] < 0` exactly when `s_i` is a left descent of `w`, and
//! `x[i] > 0` exactly when `s_i w` is again minimal and one longer.

use std::collections::BTreeSet;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::cartan::{CartanData, WeightVector};
use crate::error::{Error, Result};

/// Default cap on the number of orbit points.
pub const DEFAULT_BUDGET: usize = 10_000_000;

/// A Weyl group element (or minimal coset representative) given by its
/// image of the table's base weight and its minimal reduced word.
///
/// Words are read left to right as products `s_{word[0]} s_{word[1]} ...`;
/// node indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub image: WeightVector,
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(base: WeightVector) -> Self {
        WeylElement { image: base, word: Vec::new() }
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }
}

/// Lexicographically least reduced word of the element sending a dominant
/// weight to `image`: repeatedly strip the smallest left descent.
///
/// Returns the word and the dominant weight it ends on.
pub fn greedy_word(cartan: &CartanData, image: &WeightVector) -> (Vec<usize>, WeightVector) {
    let mut v = image.clone();
    let mut word = Vec::new();
    while let Some(i) = v.0.iter().position(|&c| c < 0) {
        cartan.reflect_in_place(i, &mut v.0);
        word.push(i);
    }
    (word, v)
}

/// `+1` if `s_i w` is longer than `w`, `-1` if shorter, `0` if it lies in
/// the same coset.
pub fn length_change(w: &WeylElement, i: usize) -> i32 {
    w.image.0[i].signum() as i32
}

/// Left multiplication `s_i w`, with the minimal word recomputed.
pub fn compose(cartan: &CartanData, w: &WeylElement, i: usize) -> Result<WeylElement> {
    let image = cartan.reflect(i, &w.image)?;
    let (word, _) = greedy_word(cartan, &image);
    Ok(WeylElement { image, word })
}

/// Options for [`CosetTable::enumerate`].
#[derive(Debug, Clone, Copy)]
pub struct EnumerateOptions {
    /// Stop after this grade; `None` runs until the orbit closes.
    pub max_length: Option<usize>,
    /// Maximum number of orbit points.
    pub budget: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { max_length: None, budget: DEFAULT_BUDGET }
    }
}

/// The graded, ordered set of minimal coset representatives.
#[derive(Debug, Clone)]
pub struct CosetTable {
    cartan: CartanData,
    parabolic: BTreeSet<usize>,
    base: WeightVector,
    elements: Vec<WeylElement>,
    grade_starts: Vec<usize>,
    index: FxHashMap<WeightVector, usize>,
    left: Vec<u32>,
    complete: bool,
}

const NONE: u32 = u32::MAX;

impl CosetTable {
    /// Breadth-first enumeration of `W/W'` for the given parabolic node set.
    pub fn enumerate(cartan: &CartanData, parabolic: &BTreeSet<usize>, opts: EnumerateOptions) -> Result<Self> {
        for &j in parabolic {
            cartan.check_node(j)?;
        }
        let n = cartan.rank();
        let base = parabolic_weight(n, parabolic);
        let mut elements = vec![WeylElement::identity(base.clone())];
        let mut index = FxHashMap::default();
        index.insert(base.clone(), 0usize);
        let mut grade_starts = vec![0, 1];
        let mut complete = true;
        loop {
            let r = grade_starts.len() - 2;
            let (lo, hi) = (grade_starts[r], grade_starts[r + 1]);
            let mut fresh: FxHashSet<WeightVector> = FxHashSet::default();
            for x in &elements[lo..hi] {
                for i in 0..n {
                    if x.image.0[i] > 0 {
                        let mut y = x.image.clone();
                        cartan.reflect_in_place(i, &mut y.0);
                        fresh.insert(y);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            if opts.max_length.is_some_and(|m| r + 1 > m) {
                complete = false;
                break;
            }
            if elements.len() + fresh.len() > opts.budget {
                return Err(Error::BudgetExceeded { budget: opts.budget });
            }
            let mut next: Vec<WeylElement> = fresh
                .into_iter()
                .map(|y| {
                    let i = y.0.iter().position(|&c| c < 0).expect("non-base orbit point has a descent");
                    let mut x = y.clone();
                    cartan.reflect_in_place(i, &mut x.0);
                    let parent = &elements[index[&x]];
                    let mut word = Vec::with_capacity(parent.word.len() + 1);
                    word.push(i);
                    word.extend_from_slice(&parent.word);
                    WeylElement { image: y, word }
                })
                .collect();
            next.sort_by(|a, b| a.word.cmp(&b.word));
            for e in next {
                index.insert(e.image.clone(), elements.len());
                elements.push(e);
            }
            grade_starts.push(elements.len());
        }
        let left = left_table(cartan, &elements, &index);
        Ok(CosetTable {
            cartan: cartan.clone(),
            parabolic: parabolic.clone(),
            base,
            elements,
            grade_starts,
            index,
            left,
            complete,
        })
    }

    /// Rebuild a table from stored elements, checking every invariant.
    pub fn from_elements(
        cartan: &CartanData,
        parabolic: &BTreeSet<usize>,
        elements: Vec<WeylElement>,
        complete: bool,
    ) -> Result<Self> {
        for &j in parabolic {
            cartan.check_node(j)?;
        }
        let n = cartan.rank();
        let base = parabolic_weight(n, parabolic);
        let bad = |msg: String| Err(Error::Cache(msg));
        if elements.first().map(|e| (&e.image, e.word.len())) != Some((&base, 0)) {
            return bad("first element is not the identity".into());
        }
        let mut index = FxHashMap::default();
        let mut grade_starts = vec![0];
        for (id, e) in elements.iter().enumerate() {
            if e.image.len() != n || e.word.iter().any(|&i| i >= n) {
                return bad(format!("element {id} has the wrong rank"));
            }
            if cartan.apply_word(&e.word, &base)? != e.image {
                return bad(format!("element {id}: word does not produce the stored image"));
            }
            let (word, end) = greedy_word(cartan, &e.image);
            if end != base || word != e.word {
                return bad(format!("element {id}: stored word is not the minimal reduced word"));
            }
            if index.insert(e.image.clone(), id).is_some() {
                return bad(format!("element {id} is a duplicate"));
            }
            let r = e.word.len();
            while grade_starts.len() <= r {
                grade_starts.push(id);
            }
            if grade_starts.len() != r + 1 {
                return bad(format!("element {id} is out of grade order"));
            }
            if id > 0 && elements[id - 1].word.len() == r && elements[id - 1].word >= e.word {
                return bad(format!("element {id} is out of order within its grade"));
            }
        }
        grade_starts.push(elements.len());
        let left = left_table(cartan, &elements, &index);
        // a closed orbit has every ascent present
        if complete {
            for id in 0..elements.len() {
                for i in 0..n {
                    if elements[id].image.0[i] > 0 && left[id * n + i] == NONE {
                        return bad(format!("orbit is not closed at element {id}"));
                    }
                }
            }
        }
        Ok(CosetTable {
            cartan: cartan.clone(),
            parabolic: parabolic.clone(),
            base,
            elements,
            grade_starts,
            index,
            left,
            complete,
        })
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn parabolic(&self) -> &BTreeSet<usize> {
        &self.parabolic
    }

    /// The weight `v0` whose orbit is enumerated.
    pub fn base(&self) -> &WeightVector {
        &self.base
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn total_size(&self) -> usize {
        self.elements.len()
    }

    /// Largest length present.
    pub fn top_length(&self) -> usize {
        self.grade_starts.len() - 2
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &WeylElement {
        &self.elements[id]
    }

    /// Element ids of grade `r` (empty past the top).
    pub fn grade_ids(&self, r: usize) -> std::ops::Range<usize> {
        if r + 1 < self.grade_starts.len() {
            self.grade_starts[r]..self.grade_starts[r + 1]
        } else {
            0..0
        }
    }

    pub fn grade(&self, r: usize) -> &[WeylElement] {
        &self.elements[self.grade_ids(r)]
    }

    pub fn grade_sizes(&self) -> Vec<usize> {
        self.grade_starts.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn id_of(&self, image: &WeightVector) -> Option<usize> {
        self.index.get(image).copied()
    }

    /// `(r, i)` with `i` 1-based, as in `w_{r,i}`.
    pub fn label(&self, id: usize) -> (usize, usize) {
        let r = self.elements[id].word.len();
        (r, id - self.grade_starts[r] + 1)
    }

    pub fn id_of_label(&self, r: usize, i: usize) -> Option<usize> {
        let range = self.grade_ids(r);
        (i >= 1 && i <= range.len()).then(|| range.start + i - 1)
    }

    /// Id of `s_i w` when it is a minimal representative one longer than `w`.
    #[inline]
    pub fn left_ascent(&self, id: usize, i: usize) -> Option<usize> {
        let v = self.left[id * self.cartan.rank() + i];
        (v != NONE).then_some(v as usize)
    }

    /// Minimal reduced word of an orbit point.
    pub fn minimal_word(&self, image: &WeightVector) -> Result<Vec<usize>> {
        let id = self.id_of(image).ok_or(Error::NotInOrbit)?;
        Ok(self.elements[id].word.clone())
    }
}

fn parabolic_weight(n: usize, parabolic: &BTreeSet<usize>) -> WeightVector {
    WeightVector((0..n).map(|i| if parabolic.contains(&i) { 0 } else { 1 }).collect())
}

fn left_table(cartan: &CartanData, elements: &[WeylElement], index: &FxHashMap<WeightVector, usize>) -> Vec<u32> {
    let n = cartan.rank();
    let mut left = vec![NONE; elements.len() * n];
    let mut y = WeightVector::zero(n);
    for (id, e) in elements.iter().enumerate() {
        for i in 0..n {
            if e.image.0[i] > 0 {
                y.0.copy_from_slice(&e.image.0);
                cartan.reflect_in_place(i, &mut y.0);
                if let Some(&t) = index.get(&y) {
                    left[id * n + i] = t as u32;
                }
            }
        }
    }
    left
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(t: &str, parabolic: &[usize]) -> CosetTable {
        let c = CartanData::parse_type(t).unwrap();
        CosetTable::enumerate(&c, &parabolic.iter().copied().collect(), EnumerateOptions::default()).unwrap()
    }

    fn words(t: &CosetTable, r: usize) -> Vec<Vec<usize>> {
        t.grade(r).iter().map(|e| e.word.iter().map(|i| i + 1).collect()).collect()
    }

    #[test]
    fn g2_full_flag() {
        let t = table("G2", &[]);
        assert_eq!(t.grade_sizes(), vec![1, 2, 2, 2, 2, 2, 1]);
        assert_eq!(words(&t, 2), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(words(&t, 6), vec![vec![1, 2, 1, 2, 1, 2]]);
        assert_eq!(t.label(t.id_of_label(3, 2).unwrap()), (3, 2));
    }

    #[test]
    fn full_parabolic_is_trivial() {
        let t = table("F4", &[0, 1, 2, 3]);
        assert_eq!(t.total_size(), 1);
        assert_eq!(t.top_length(), 0);
        assert!(t.element(0).word.is_empty());
    }

    #[test]
    fn known_quotient_sizes() {
        assert_eq!(table("F4", &[1, 2, 3]).total_size(), 1152 / 48);
        assert_eq!(table("D6", &[0, 1, 2, 3, 4]).total_size(), 23040 / 720);
        let a6 = table("A6", &[0, 1, 3, 4, 5]);
        assert_eq!(a6.total_size(), 35);
        assert_eq!(a6.grade_sizes(), vec![1, 1, 2, 3, 4, 4, 5, 4, 4, 3, 2, 1, 1]);
        assert_eq!(table("A6", &[]).total_size(), 5040);
        assert_eq!(table("E6", &[0, 1, 2, 3, 4]).total_size(), 27);
    }

    #[test]
    fn f4_first_words() {
        let t = table("F4", &[1, 2, 3]);
        assert_eq!(words(&t, 1), vec![vec![1]]);
        assert_eq!(words(&t, 4), vec![vec![2, 3, 2, 1], vec![4, 3, 2, 1]]);
    }

    #[test]
    fn budget_is_enforced() {
        let c = CartanData::parse_type("E8").unwrap();
        let err = CosetTable::enumerate(&c, &BTreeSet::new(), EnumerateOptions { max_length: None, budget: 1000 });
        assert!(matches!(err, Err(Error::BudgetExceeded { budget: 1000 })));
    }

    #[test]
    fn max_length_truncates() {
        let c = CartanData::parse_type("E8").unwrap();
        let t = CosetTable::enumerate(&c, &BTreeSet::new(), EnumerateOptions { max_length: Some(3), ..Default::default() }).unwrap();
        assert!(!t.is_complete());
        assert_eq!(t.top_length(), 3);
    }

    #[test]
    fn compose_and_length_change() {
        let c = CartanData::parse_type("G2").unwrap();
        let id = WeylElement::identity(c.rho());
        let s1 = compose(&c, &id, 0).unwrap();
        assert_eq!(s1.length(), 1);
        assert_eq!(length_change(&id, 0), 1);
        assert_eq!(compose(&c, &s1, 0).unwrap(), id);
        // s1 s2 s1 built by prepending
        let w = compose(&c, &compose(&c, &s1, 1).unwrap(), 0).unwrap();
        let t = table("G2", &[]);
        assert_eq!(t.label(t.id_of(&w.image).unwrap()), (3, 1));
        assert_eq!(w.word, vec![0, 1, 0]);
        assert_eq!(length_change(&w, 0), -1);
    }

    #[test]
    fn minimal_word_lookup() {
        let t = table("G2", &[]);
        assert_eq!(t.minimal_word(t.base()).unwrap(), Vec::<usize>::new());
        assert!(matches!(t.minimal_word(&WeightVector(vec![5, 5])), Err(Error::NotInOrbit)));
    }

    #[test]
    fn right_descents_avoid_parabolic() {
        // w s_j is longer for every parabolic j: checked on rho images
        let c = CartanData::parse_type("D6").unwrap();
        let par: BTreeSet<usize> = (0..5).collect();
        let t = CosetTable::enumerate(&c, &par, EnumerateOptions::default()).unwrap();
        let rho = c.rho();
        for e in t.elements() {
            let len = |word: &[usize]| greedy_word(&c, &c.apply_word(word, &rho).unwrap()).0.len();
            assert_eq!(len(&e.word), e.length());
            for &j in &par {
                let mut longer = e.word.clone();
                longer.push(j);
                assert_eq!(len(&longer), e.length() + 1);
            }
        }
    }

    #[test]
    fn from_elements_round_trip_and_tamper() {
        let c = CartanData::parse_type("G2").unwrap();
        let t = table("G2", &[]);
        let again = CosetTable::from_elements(&c, t.parabolic(), t.elements().to_vec(), true).unwrap();
        assert_eq!(again.elements(), t.elements());
        let mut bad = t.elements().to_vec();
        bad[3].word.reverse();
        assert!(CosetTable::from_elements(&c, t.parabolic(), bad, true).is_err());
        let mut short = t.elements().to_vec();
        short.pop();
        assert!(CosetTable::from_elements(&c, t.parabolic(), short, true).is_err());
    }
}
