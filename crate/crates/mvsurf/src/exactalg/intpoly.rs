//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients, over a fixed finite variable universe.
//!
//! Only the tiny symbolic computations go through here (the base-case
//! determinant and its content), so the representation favours clarity:
//! a map from exponent vectors to coefficients, no zero terms stored.

use super::{ExactAlgError, PrimeField};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, BigInt>,
}

impl IntMultiPoly {
    pub fn zero(nvars: usize) -> Self {
        IntMultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        let mut p = Self::zero(nvars);
        if c != 0 {
            p.terms.insert(vec![0; nvars], BigInt::from(c));
        }
        p
    }

    /// The polynomial consisting of the single variable `var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars);
        let mut expts = vec![0u16; nvars];
        expts[var] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(expts, BigInt::from(1));
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactAlgError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let slot = out.terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *slot += c;
            if slot.is_zero() {
                out.terms.remove(e);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExactAlgError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactAlgError> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let slot = out.terms.entry(e).or_insert_with(BigInt::zero);
                *slot += ca * cb;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// gcd of the integer coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
        }
        g.abs()
    }

    /// Degrees of the individual terms under the given per-variable weights;
    /// the polynomial is weight-homogeneous iff the set is a singleton.
    pub fn weighted_term_degrees(&self, weights: &[i64]) -> std::collections::BTreeSet<i64> {
        assert_eq!(weights.len(), self.nvars);
        self.terms
            .keys()
            .map(|e| {
                e.iter()
                    .zip(weights)
                    .map(|(&x, &w)| x as i64 * w)
                    .sum::<i64>()
            })
            .collect()
    }

    pub fn total_degrees(&self) -> std::collections::BTreeSet<i64> {
        self.weighted_term_degrees(&vec![1; self.nvars])
    }

    /// Evaluate modulo `p` at the given point (one value per variable).
    pub fn eval_mod(&self, field: PrimeField, point: &[u64]) -> u64 {
        assert_eq!(point.len(), self.nvars);
        let p = field.modulus();
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut term = {
                let r = (c % BigInt::from(p) + BigInt::from(p)) % BigInt::from(p);
                let digits = r.to_u64_digits().1;
                digits.first().copied().unwrap_or(0)
            };
            for (k, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = field.mul(term, field.pow(point[k], exp as u64));
                }
            }
            acc = field.add(acc, term);
        }
        acc
    }

    fn check_vars(&self, other: &Self) -> Result<(), ExactAlgError> {
        if self.nvars != other.nvars {
            return Err(ExactAlgError::VariableMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }
}

/// Maximum size accepted by `symbolic_det`; cofactor expansion beyond this
/// is not something the artifact ever needs.
pub const SYMBOLIC_DET_LIMIT: usize = 8;

/// Exact determinant of a small matrix of integer polynomials, by cofactor
/// expansion along the first column.
pub fn symbolic_det(m: &[Vec<IntMultiPoly>]) -> Result<IntMultiPoly, ExactAlgError> {
    let n = m.len();
    if n > SYMBOLIC_DET_LIMIT {
        return Err(ExactAlgError::SymbolicSizeExceeded {
            limit: SYMBOLIC_DET_LIMIT,
            got: n,
        });
    }
    for row in m {
        if row.len() != n {
            return Err(ExactAlgError::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
    }
    let nvars = match m.first() {
        None => return Ok(IntMultiPoly::constant(0, 1)),
        Some(row) => row[0].nvars(),
    };
    let idx: Vec<usize> = (0..n).collect();
    expand(m, &idx, &idx, nvars)
}

fn expand(
    m: &[Vec<IntMultiPoly>],
    rows: &[usize],
    cols: &[usize],
    nvars: usize,
) -> Result<IntMultiPoly, ExactAlgError> {
    if rows.is_empty() {
        return Ok(IntMultiPoly::constant(nvars, 1));
    }
    let mut acc = IntMultiPoly::zero(nvars);
    let col = cols[0];
    let rest_cols: Vec<usize> = cols[1..].to_vec();
    for (k, &row) in rows.iter().enumerate() {
        let e = &m[row][col];
        if e.is_zero() {
            continue;
        }
        let mut rest_rows = rows.to_vec();
        rest_rows.remove(k);
        let minor = expand(m, &rest_rows, &rest_cols, nvars)?;
        let term = e.mul(&minor)?;
        acc = if k % 2 == 0 {
            acc.add(&term)?
        } else {
            acc.sub(&term)?
        };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_2x2_det() {
        // variables a b c d; det [[a,b],[c,d]] = ad - bc
        let v = |k| IntMultiPoly::var(4, k);
        let m = vec![vec![v(0), v(1)], vec![v(2), v(3)]];
        let d = symbolic_det(&m).unwrap();
        assert_eq!(d.num_terms(), 2);
        assert_eq!(d.content(), BigInt::from(1));
        let mut ad = vec![0u16; 4];
        ad[0] = 1;
        ad[3] = 1;
        let terms: Vec<_> = d.terms().collect();
        assert!(terms.iter().any(|(e, c)| *e == &ad[..] && **c == BigInt::from(1)));
    }

    #[test]
    fn zero_row_gives_zero() {
        let v = |k| IntMultiPoly::var(4, k);
        let z = IntMultiPoly::zero(4);
        let m = vec![vec![v(0), v(1)], vec![z.clone(), z]];
        assert!(symbolic_det(&m).unwrap().is_zero());
    }

    #[test]
    fn size_guard() {
        let z = IntMultiPoly::zero(1);
        let m = vec![vec![z; 9]; 9];
        assert!(matches!(
            symbolic_det(&m),
            Err(ExactAlgError::SymbolicSizeExceeded { limit: 8, got: 9 })
        ));
    }

    #[test]
    fn content_examples() {
        // 6x + 9y -> 3; 0 -> 0
        let x = IntMultiPoly::var(2, 0);
        let y = IntMultiPoly::var(2, 1);
        let p = x
            .mul(&IntMultiPoly::constant(2, 6))
            .unwrap()
            .add(&y.mul(&IntMultiPoly::constant(2, 9)).unwrap())
            .unwrap();
        assert_eq!(p.content(), BigInt::from(3));
        assert_eq!(IntMultiPoly::zero(2).content(), BigInt::from(0));
    }

    #[test]
    fn eval_mod_matches_structure() {
        let f = PrimeField::new(101).unwrap();
        // p = 2xy - 7, at x=5, y=9: 90 - 7 = 83
        let x = IntMultiPoly::var(2, 0);
        let y = IntMultiPoly::var(2, 1);
        let p = x
            .mul(&y)
            .unwrap()
            .mul(&IntMultiPoly::constant(2, 2))
            .unwrap()
            .add(&IntMultiPoly::constant(2, -7))
            .unwrap();
        assert_eq!(p.eval_mod(f, &[5, 9]), 83);
    }

    #[test]
    fn weighted_degrees() {
        let x = IntMultiPoly::var(2, 0);
        let y = IntMultiPoly::var(2, 1);
        let p = x.mul(&x).unwrap().add(&y).unwrap(); // x^2 + y
        let degs = p.weighted_term_degrees(&[1, 2]);
        assert_eq!(degs.len(), 1); // homogeneous under w = (1,2)
        assert!(degs.contains(&2));
    }
}
