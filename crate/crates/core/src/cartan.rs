//! Cartan matrices of finite type and the simple reflections they define.
//!
//! Entries follow the convention `C[i][j] = 2(b_i, b_j) / (b_j, b_j)` for
//! simple roots `b_i`, and weights are written in the basis of fundamental
//! weights. In that basis the simple root `b_i` is row `i` of `C`, so the
//! simple reflection `s_i` acts by `v -> v - v[i] * C[i]`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn zero(rank: usize) -> Self {
        WeightVector(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when no coordinate is negative.
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A validated Cartan matrix of finite type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    matrix: Vec<Vec<i64>>,
    labels: Vec<String>,
    name: Option<String>,
}

impl CartanData {
    /// Validate a user supplied matrix.
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        validate(&matrix)?;
        let labels = (1..=matrix.len()).map(|i| i.to_string()).collect();
        Ok(CartanData { matrix, labels, name: None })
    }

    /// The Cartan matrix of a finite simple type, nodes numbered as in
    /// Humphreys' tables (and Bourbaki's).
    pub fn builtin(letter: char, rank: usize) -> Result<Self> {
        let letter = letter.to_ascii_uppercase();
        let bad = || Error::InvalidType { letter, rank };
        let valid = match letter {
            'A' => rank >= 1,
            'B' | 'C' => rank >= 2,
            'D' => rank >= 3,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if !valid {
            return Err(bad());
        }
        let n = rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut bond = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match letter {
            'A' | 'B' | 'C' | 'F' => {
                for i in 0..n - 1 {
                    bond(i, i + 1);
                }
            }
            'D' => {
                for i in 0..n - 2 {
                    bond(i, i + 1);
                }
                bond(n - 3, n - 1);
            }
            'E' => {
                bond(0, 2);
                bond(2, 3);
                bond(1, 3);
                for i in 3..n - 1 {
                    bond(i, i + 1);
                }
            }
            'G' => bond(0, 1),
            _ => unreachable!(),
        }
        match letter {
            // last node short
            'B' => c[n - 2][n - 1] = -2,
            // last node long
            'C' => c[n - 1][n - 2] = -2,
            // nodes 1, 2 long; 3, 4 short
            'F' => c[1][2] = -2,
            // node 1 short, node 2 long
            'G' => c[1][0] = -3,
            _ => {}
        }
        let mut data = CartanData::new(c)?;
        data.name = Some(format!("{letter}{rank}"));
        Ok(data)
    }

    /// Parse a type name such as `"G2"` or `"d6"`.
    pub fn parse_type(name: &str) -> Result<Self> {
        let name = name.trim();
        let mut chars = name.chars();
        let letter = chars.next().ok_or_else(|| Error::config("type", "empty type name"))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::config("type", format!("cannot parse rank in {name:?}")))?;
        CartanData::builtin(letter, rank)
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Type name for builtin matrices.
    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// `name()` or a literal rendering of the matrix.
    pub fn describe(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => format!("{:?}", self.matrix),
        }
    }

    /// The regular weight with every coordinate 1.
    pub fn rho(&self) -> WeightVector {
        WeightVector(vec![1; self.rank()])
    }

    pub fn check_node(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { index: i, rank: self.rank() })
        }
    }

    /// Simple reflection `s_i` applied to `v`.
    pub fn reflect(&self, i: usize, v: &WeightVector) -> Result<WeightVector> {
        self.check_node(i)?;
        if v.len() != self.rank() {
            return Err(Error::VariableMismatch { left: v.len(), right: self.rank() });
        }
        let mut out = v.clone();
        self.reflect_in_place(i, &mut out.0);
        Ok(out)
    }

    #[inline]
    pub(crate) fn reflect_in_place(&self, i: usize, v: &mut [i64]) {
        let vi = v[i];
        if vi != 0 {
            for (x, &c) in v.iter_mut().zip(&self.matrix[i]) {
                *x -= vi * c;
            }
        }
    }

    /// Apply the word `w = s_{w[0]} s_{w[1]} ...` to `v` (rightmost letter first).
    pub fn apply_word(&self, word: &[usize], v: &WeightVector) -> Result<WeightVector> {
        let mut out = v.clone();
        for &i in word.iter().rev() {
            self.check_node(i)?;
            self.reflect_in_place(i, &mut out.0);
        }
        Ok(out)
    }

    /// Order of `s_i s_j` in the Weyl group.
    pub fn coxeter_order(&self, i: usize, j: usize) -> u32 {
        if i == j {
            return 1;
        }
        match self.matrix[i][j] * self.matrix[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            _ => unreachable!("validated finite type"),
        }
    }
}

fn validate(c: &[Vec<i64>]) -> Result<()> {
    let n = c.len();
    if n == 0 {
        return Err(Error::InvalidCartan("empty matrix".into()));
    }
    for (i, row) in c.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidCartan(format!("row {} has {} entries, expected {n}", i + 1, row.len())));
        }
        if row[i] != 2 {
            return Err(Error::InvalidCartan(format!("diagonal entry ({0},{0}) is not 2", i + 1)));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if !(-3..=0).contains(&c[i][j]) {
                return Err(Error::InvalidCartan(format!(
                    "entry ({},{}) = {} outside {{0,-1,-2,-3}}",
                    i + 1,
                    j + 1,
                    c[i][j]
                )));
            }
            if (c[i][j] == 0) != (c[j][i] == 0) {
                return Err(Error::InvalidCartan(format!(
                    "entries ({0},{1}) and ({1},{0}) must vanish together",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let d = symmetrizer(c)?;
    // S[i][j] = C[i][j] * d[j] is symmetric; finite type iff positive definite.
    let s: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| c[i][j] as i128 * d[j] as i128).collect())
        .collect();
    if !positive_definite(s) {
        return Err(Error::InvalidCartan("not of finite type (symmetrization is not positive definite)".into()));
    }
    Ok(())
}

/// Positive integers `d` with `C[i][j] d[j] = C[j][i] d[i]`.
fn symmetrizer(c: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = c.len();
    // fractions num/den, assigned component by component
    let mut d: Vec<Option<(i64, i64)>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some((1, 1));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let (ni, di) = d[i].unwrap();
            for j in 0..n {
                if i == j || c[i][j] == 0 {
                    continue;
                }
                // d[j] = d[i] * C[j][i] / C[i][j]
                let num = ni * c[j][i];
                let den = di * c[i][j];
                let g = num.gcd(&den);
                let (num, den) = if den / g < 0 { (-num / g, -den / g) } else { (num / g, den / g) };
                match d[j] {
                    None => {
                        d[j] = Some((num, den));
                        stack.push(j);
                    }
                    Some((nj, dj)) => {
                        if nj * den != num * dj {
                            return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
                        }
                    }
                }
            }
        }
    }
    let lcm = d.iter().fold(1i64, |acc, x| acc.lcm(&x.unwrap().1));
    Ok(d.into_iter().map(|x| {
        let (num, den) = x.unwrap();
        num * (lcm / den)
    }).collect())
}

/// Sylvester's criterion with fraction-free elimination.
fn positive_definite(mut a: Vec<Vec<i128>>) -> bool {
    let n = a.len();
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] <= 0 {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    true
}
