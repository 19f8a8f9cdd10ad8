//! Coefficient rings.
//!
//! Polynomials are generic over any exact signed integer type from the
//! `num` family (`i64`, `i128`, [`num_bigint::BigInt`], ...). Reduction
//! modulo a prime is carried as an optional modulus on the polynomial
//! rather than as a separate field type, so the same code serves the
//! integral and the mod-p computations.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact integer coefficient type.
pub trait Coefficient:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync
{
    /// Lift a small integer into the coefficient ring.
    fn from_small(v: i64) -> Self {
        Self::from_i64(v).expect("coefficient type cannot hold an i64")
    }

    /// Canonical representative in `0..modulus`.
    fn reduce(&self, modulus: &Self) -> Self {
        self.mod_floor(modulus)
    }
}

impl<T> Coefficient for T where
    T: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync
{
}

/// Trial-division primality test; the primes used here are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic in Z/p for a small prime, on `u32` residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Option<Self> {
        is_prime(p as u64).then_some(PrimeField { p })
    }

    #[inline]
    pub fn prime(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
}
