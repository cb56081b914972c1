//! Dense univariate polynomials over a prime field, in the deformation
//! variable `t`.

use super::{ExactAlgError, PrimeField};
use std::fmt;

/// Polynomial in `t` with coefficients in `F_p`, lowest degree first.
/// The zero polynomial has an empty coefficient vector; otherwise the
/// highest-degree coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl UniPoly {
    pub fn new(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        for c in &coeffs {
            debug_assert!(*c < field.modulus());
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: PrimeField) -> Self {
        UniPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: PrimeField, v: u64) -> Self {
        Self::new(field, vec![v])
    }

    /// `v * t`
    pub fn linear(field: PrimeField, v: u64) -> Self {
        Self::new(field, vec![0, v])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent with a nonzero coefficient; `None` for the zero
    /// polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn eval(&self, t: u64) -> u64 {
        let f = &self.field;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = f.mul_add(c, acc, t);
        }
        acc
    }

    pub fn add(&self, other: &UniPoly) -> Result<UniPoly, ExactAlgError> {
        self.check_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.field.add(self.coeff(k), other.coeff(k));
        }
        Ok(UniPoly::new(self.field, out))
    }

    pub fn mul(&self, other: &UniPoly) -> Result<UniPoly, ExactAlgError> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(UniPoly::zero(self.field));
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = self.field.mul_add(out[i + j], a, b);
            }
        }
        Ok(UniPoly::new(self.field, out))
    }

    pub fn scale(&self, v: u64) -> UniPoly {
        UniPoly::new(
            self.field,
            self.coeffs.iter().map(|&c| self.field.mul(c, v)).collect(),
        )
    }

    fn check_field(&self, other: &UniPoly) -> Result<(), ExactAlgError> {
        if self.field != other.field {
            return Err(ExactAlgError::MixedModuli(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn normalization_and_valuation() {
        let p = UniPoly::new(f101(), vec![0, 3, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.valuation(), Some(1));
        assert!(UniPoly::new(f101(), vec![0, 0]).is_zero());
        assert_eq!(UniPoly::zero(f101()).valuation(), None);
    }

    #[test]
    fn arithmetic() {
        let f = f101();
        // (2 + t)(3 + t) = 6 + 5t + t^2
        let a = UniPoly::new(f, vec![2, 1]);
        let b = UniPoly::new(f, vec![3, 1]);
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.coeffs(), &[6, 5, 1]);
        assert_eq!(prod.eval(10), (6 + 50 + 100) % 101);
        let sum = a.add(&b).unwrap();
        assert_eq!(sum.coeffs(), &[5, 2]);
    }

    #[test]
    fn mixed_moduli_rejected() {
        let a = UniPoly::constant(f101(), 1);
        let b = UniPoly::constant(PrimeField::new(103).unwrap(), 1);
        assert!(matches!(
            a.add(&b),
            Err(ExactAlgError::MixedModuli(101, 103))
        ));
    }
}
