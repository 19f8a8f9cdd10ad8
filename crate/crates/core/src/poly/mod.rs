//! Sparse multivariate polynomials with exact coefficients.

mod symmetric;
mod t_a;

pub use symmetric::monomial_symmetric;
pub use t_a::{t_a_evaluate, WordCartanMatrix};

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::Coefficient;

/// Exponent vector, one byte per variable.
pub type Monomial = SmallVec<[u8; 16]>;

/// A polynomial in `x_1..x_n` with coefficients in `C`, or in `C/(p)` when
/// a modulus is set. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
    modulus: Option<C>,
}

impl<C: Coefficient> SparsePoly<C> {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly { nvars, terms: BTreeMap::new(), modulus: None }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::from_elem(0, nvars), c);
        p
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = Monomial::from_elem(0, nvars);
        e[i] = 1;
        Self::monomial(e, C::one())
    }

    pub fn monomial(exponents: impl Into<Monomial>, c: C) -> Self {
        let e = exponents.into();
        let mut p = Self::zero(e.len());
        p.add_term(e, c);
        p
    }

    pub fn from_terms<I, M>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (M, C)>,
        M: Into<Monomial>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            let e = e.into();
            if e.len() != nvars {
                return Err(Error::VariableMismatch { left: nvars, right: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Same polynomial with coefficients reduced into `0..p`.
    pub fn reduce_mod(&self, p: &C) -> Self {
        let mut out = SparsePoly { nvars: self.nvars, terms: BTreeMap::new(), modulus: Some(p.clone()) };
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn modulus(&self) -> Option<&C> {
        self.modulus.as_ref()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient_of(&self, exponents: &[u8]) -> C {
        self.terms.get(exponents).cloned().unwrap_or_else(C::zero)
    }

    /// Common total degree of all terms; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|e| degree(e));
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_component(&self, d: usize) -> Self {
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| degree(e) == d).map(|(e, c)| (e.clone(), c.clone())).collect(),
            modulus: self.modulus.clone(),
        }
    }

    /// Accumulate `c * x^e`, dropping the term if it cancels.
    pub fn add_term(&mut self, e: Monomial, c: C) {
        debug_assert_eq!(e.len(), self.nvars);
        let c = match &self.modulus {
            Some(p) => c.reduce(p),
            None => c,
        };
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let mut s = o.get().clone() + c;
                if let Some(p) = &self.modulus {
                    s = s.reduce(p);
                }
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn compatible(&self, other: &Self) -> Result<Option<C>> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch { left: self.nvars, right: other.nvars });
        }
        match (&self.modulus, &other.modulus) {
            (Some(a), Some(b)) if a != b => Err(Error::domain(format!("moduli {a} and {b} differ"))),
            (a, b) => Ok(a.clone().or_else(|| b.clone())),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let modulus = self.compatible(other)?;
        let mut out = SparsePoly { nvars: self.nvars, terms: BTreeMap::new(), modulus };
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-C::one()))
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = SparsePoly { nvars: self.nvars, terms: BTreeMap::new(), modulus: self.modulus.clone() };
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let modulus = self.compatible(other)?;
        let mut out = SparsePoly { nvars: self.nvars, terms: BTreeMap::new(), modulus };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(mul_monomials(e1, e2)?, c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut out = Self::constant(self.nvars, C::one());
        out.modulus = self.modulus.clone();
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Substitute `x_i -> images[i]`. The result lives in the images' ring.
    pub fn substitute(&self, images: &[SparsePoly<C>]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::VariableMismatch { left: self.nvars, right: images.len() });
        }
        let target = images.first().map_or(0, |p| p.nvars);
        let mut out = Self::zero(target);
        out.modulus = self.modulus.clone();
        for (e, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            t.modulus = self.modulus.clone();
            for (img, &k) in images.iter().zip(e.iter()) {
                if k > 0 {
                    t = t.mul(&img.pow(k as u32)?)?;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }
}

pub(crate) fn degree(e: &[u8]) -> usize {
    e.iter().map(|&k| k as usize).sum()
}

pub(crate) fn mul_monomials(a: &[u8], b: &[u8]) -> Result<Monomial> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| x.checked_add(y).ok_or_else(|| Error::domain("exponent overflow")))
        .collect()
}

impl<C: Coefficient> fmt::Display for SparsePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{a}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
