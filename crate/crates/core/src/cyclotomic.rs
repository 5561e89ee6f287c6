//! Exact arithmetic in `Z[ω]` for `ω` a primitive root of unity, in the
//! redundant power basis `ω^0, …, ω^(order−1)`.
//!
//! For prime order the minimal polynomial of `ω` is `1 + x + … + x^(p−1)`, so
//! an element is zero precisely when all its power-basis coefficients are
//! equal. That turns "is this eigenvalue zero" into an integer comparison,
//! with no floating point anywhere.

use crate::error::{Error, Result};
use num_traits::{One, Zero};

/// Integer combination of the powers of one fixed root of unity.
///
/// Generic over the coefficient scalar; [`crate::CyclotomicElement`] fixes
/// the scalar used throughout this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclotomic<T> {
    order: u32,
    coeffs: Vec<T>,
}

impl<T: Zero + One + Clone + PartialEq> Cyclotomic<T> {
    /// The zero element for roots of the given order.
    pub fn zero(order: u32) -> Result<Self> {
        if order < 2 {
            return Err(Error::invalid("root order must be at least 2"));
        }
        Ok(Cyclotomic {
            order,
            coeffs: vec![T::zero(); order as usize],
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coefficients, index `i` holding the weight of `ω^i`.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Adds `ω^exp`, reducing the exponent modulo the order.
    pub fn add_root_power(&mut self, exp: i64) {
        let m = self.order as i64;
        let idx = exp.rem_euclid(m) as usize;
        let bumped = self.coeffs[idx].clone() + T::one();
        self.coeffs[idx] = bumped;
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::DimensionMismatch {
                expected: self.order as usize,
                got: other.order as usize,
            });
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = a.clone() + b.clone();
        }
        Ok(())
    }

    /// Zero test, valid only when the order is prime: the coefficient vector
    /// represents zero iff it is constant.
    pub fn is_zero_assuming_prime_order(&self) -> bool {
        self.coeffs.iter().all(|c| *c == self.coeffs[0])
    }
}
