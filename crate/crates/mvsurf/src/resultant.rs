//! The bidegree sparse resultant of three `(m,n)`-polynomials, realized by
//! the classical Dixon construction: a determinant in doubled variables,
//! exactly divided by `(x1-y1)(x2-y2)`, whose coefficient matrix is square
//! of size `2mn` with determinant equal to the resultant up to sign.
//!
//! This is the independent third factor of the moving-quadric factorization
//! check; nothing here touches the plane/quadric builders.

use crate::builders::{BuildError, CoefficientIndex, FieldAssignment};
use crate::exactalg::{ExactAlgError, FieldMatrix, PrimeField};
use crate::latticegeom::LatticePoint;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResultantError {
    #[error("coefficient grids disagree in shape or field")]
    GridMismatch,
    #[error("division by {0} left a nonzero remainder; input outside the bidegree model")]
    NonExactDivision(&'static str),
    #[error(transparent)]
    Exact(#[from] ExactAlgError),
    #[error(transparent)]
    Build(#[from] BuildError),
}

/// Dense `(m+1) x (n+1)` coefficient grid of one specialized bidegree
/// polynomial; entry `(a1, a2)` is the coefficient of `x1^{a1} x2^{a2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientGrid {
    field: PrimeField,
    m: i64,
    n: i64,
    coeffs: Vec<u64>,
}

impl CoefficientGrid {
    pub fn zeros(field: PrimeField, m: i64, n: i64) -> Self {
        assert!(m >= 1 && n >= 1);
        CoefficientGrid {
            field,
            m,
            n,
            coeffs: vec![0; ((m + 1) * (n + 1)) as usize],
        }
    }

    pub fn random<R: Rng>(field: PrimeField, m: i64, n: i64, rng: &mut R) -> Self {
        let mut g = Self::zeros(field, m, n);
        for c in g.coeffs.iter_mut() {
            *c = field.rand_element(rng);
        }
        g
    }

    /// Extract one block of a full assignment on the rectangle `[0,m]x[0,n]`.
    pub fn from_assignment(
        asg: &FieldAssignment,
        block: u8,
        m: i64,
        n: i64,
    ) -> Result<Self, BuildError> {
        let mut g = Self::zeros(asg.field(), m, n);
        for a1 in 0..=m {
            for a2 in 0..=n {
                let v = asg.get(CoefficientIndex {
                    block,
                    point: LatticePoint::new(a1, a2),
                })?;
                g.set(a1, a2, v);
            }
        }
        Ok(g)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn shape(&self) -> (i64, i64) {
        (self.m, self.n)
    }

    pub fn get(&self, a1: i64, a2: i64) -> u64 {
        self.coeffs[(a1 * (self.n + 1) + a2) as usize]
    }

    pub fn set(&mut self, a1: i64, a2: i64, v: u64) {
        debug_assert!(v < self.field.modulus());
        self.coeffs[(a1 * (self.n + 1) + a2) as usize] = v;
    }

    pub fn scale(&self, lambda: u64) -> Self {
        let mut g = self.clone();
        for c in g.coeffs.iter_mut() {
            *c = self.field.mul(*c, lambda);
        }
        g
    }

    pub fn eval(&self, x1: u64, x2: u64) -> u64 {
        let f = self.field;
        let mut acc = 0u64;
        for a1 in (0..=self.m).rev() {
            let mut row = 0u64;
            for a2 in (0..=self.n).rev() {
                row = f.mul_add(self.get(a1, a2), row, x2);
            }
            acc = f.mul_add(row, acc, x1);
        }
        acc
    }
}

/// Dense polynomial in the four Dixon variables `(x1, x2, y1, y2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadPoly {
    field: PrimeField,
    dims: [usize; 4],
    coeffs: Vec<u64>,
}

impl QuadPoly {
    fn zeros(field: PrimeField, dims: [usize; 4]) -> Self {
        QuadPoly {
            field,
            dims,
            coeffs: vec![0; dims.iter().product()],
        }
    }

    fn idx(&self, e: [usize; 4]) -> usize {
        ((e[0] * self.dims[1] + e[1]) * self.dims[2] + e[2]) * self.dims[3] + e[3]
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Exclusive exponent bounds per variable.
    pub fn dims(&self) -> [usize; 4] {
        self.dims
    }

    pub fn coeff(&self, e: [usize; 4]) -> u64 {
        for k in 0..4 {
            if e[k] >= self.dims[k] {
                return 0;
            }
        }
        self.coeffs[self.idx(e)]
    }

    fn set(&mut self, e: [usize; 4], v: u64) {
        let i = self.idx(e);
        self.coeffs[i] = v;
    }

    fn add_assign_at(&mut self, e: [usize; 4], v: u64) {
        let i = self.idx(e);
        self.coeffs[i] = self.field.add(self.coeffs[i], v);
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Actual degree in variable `var`, `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<usize> {
        let mut best: Option<usize> = None;
        self.for_each_nonzero(|e, _| {
            best = Some(best.map_or(e[var], |b| b.max(e[var])));
        });
        best
    }

    pub fn eval(&self, point: [u64; 4]) -> u64 {
        let f = self.field;
        let mut acc = 0u64;
        self.for_each_nonzero(|e, c| {
            let mut term = c;
            for k in 0..4 {
                term = f.mul(term, f.pow(point[k], e[k] as u64));
            }
            acc = f.add(acc, term);
        });
        acc
    }

    fn for_each_nonzero<F: FnMut([usize; 4], u64)>(&self, mut visit: F) {
        for e0 in 0..self.dims[0] {
            for e1 in 0..self.dims[1] {
                for e2 in 0..self.dims[2] {
                    for e3 in 0..self.dims[3] {
                        let c = self.coeffs[self.idx([e0, e1, e2, e3])];
                        if c != 0 {
                            visit([e0, e1, e2, e3], c);
                        }
                    }
                }
            }
        }
    }

    /// Exact division by `(X - Y)` where `X = vars[vx]`, `Y = vars[vy]`,
    /// by synthetic division in `X`. Errors if the remainder is nonzero.
    fn divide_linear(
        &self,
        vx: usize,
        vy: usize,
        label: &'static str,
    ) -> Result<QuadPoly, ResultantError> {
        let f = self.field;
        let dx = self.dims[vx];
        if dx <= 1 {
            // no X at all: divisible only by being zero
            if self.is_zero() {
                let mut dims = self.dims;
                dims[vx] = dims[vx].max(1);
                return Ok(QuadPoly::zeros(f, dims));
            }
            return Err(ResultantError::NonExactDivision(label));
        }
        let mut dims = self.dims;
        dims[vx] = dx - 1;
        let mut out = QuadPoly::zeros(f, dims);
        // q_{d-1} = a_d; q_{k} = a_{k+1} + Y * q_{k+1}; remainder a_0 + Y * q_0
        for k in (0..dx - 1).rev() {
            let mut e = [0usize; 4];
            loop {
                // value = a_{k+1}[e] + (q_{k+1} shifted by Y)[e]
                let mut src = e;
                src[vx] = k + 1;
                let mut v = self.coeff(src);
                if e[vy] > 0 && k + 1 < dx - 1 {
                    let mut prev = e;
                    prev[vx] = k + 1;
                    prev[vy] -= 1;
                    v = f.add(v, out.coeff(prev));
                }
                let mut dst = e;
                dst[vx] = k;
                out.set(dst, v);
                if !next_index(&mut e, &self.dims, vx) {
                    break;
                }
            }
        }
        // remainder check: a_0 + Y * q_0 == 0
        let mut e = [0usize; 4];
        loop {
            let mut src = e;
            src[vx] = 0;
            let mut r = self.coeff(src);
            if e[vy] > 0 {
                let mut prev = e;
                prev[vx] = 0;
                prev[vy] -= 1;
                r = f.add(r, out.coeff(prev));
            }
            if r != 0 {
                return Err(ResultantError::NonExactDivision(label));
            }
            if !next_index(&mut e, &self.dims, vx) {
                break;
            }
        }
        Ok(out)
    }
}

/// Advance a multi-index over all dims except `skip`; returns false at the end.
fn next_index(e: &mut [usize; 4], dims: &[usize; 4], skip: usize) -> bool {
    for k in (0..4).rev() {
        if k == skip {
            continue;
        }
        e[k] += 1;
        if e[k] < dims[k] {
            return true;
        }
        e[k] = 0;
    }
    false
}

fn check_grids(
    f1: &CoefficientGrid,
    f2: &CoefficientGrid,
    f3: &CoefficientGrid,
) -> Result<(PrimeField, i64, i64), ResultantError> {
    if f1.shape() != f2.shape()
        || f2.shape() != f3.shape()
        || f1.field() != f2.field()
        || f2.field() != f3.field()
    {
        return Err(ResultantError::GridMismatch);
    }
    let (m, n) = f1.shape();
    Ok((f1.field(), m, n))
}

/// The Dixon polynomial: determinant of the 3x3 matrix whose rows evaluate
/// `(f1, f2, f3)` at `(x1,x2)`, `(x1,y2)` and `(y1,y2)`, divided exactly by
/// `(x1-y1)(x2-y2)`. Degrees: `x1 <= 2m-1`, `x2 <= n-1`, `y1 <= m-1`,
/// `y2 <= 2n-1`.
pub fn dixon_polynomial(
    f1: &CoefficientGrid,
    f2: &CoefficientGrid,
    f3: &CoefficientGrid,
) -> Result<QuadPoly, ResultantError> {
    let (field, m, n) = check_grids(f1, f2, f3)?;
    let (m, n) = (m as usize, n as usize);
    // numerator bounds: x1 <= 2m (rows 1,2), x2 <= n (row 1),
    //                   y1 <= m (row 3),    y2 <= 2n (rows 2,3)
    let dims = [2 * m + 1, n + 1, m + 1, 2 * n + 1];
    let mut num = QuadPoly::zeros(field, dims);
    let grids = [f1, f2, f3];
    // det = sum over permutations sigma of sgn * prod_r grids[sigma(r)](row r vars)
    const PERMS: [([usize; 3], bool); 6] = [
        ([0, 1, 2], false),
        ([0, 2, 1], true),
        ([1, 0, 2], true),
        ([1, 2, 0], false),
        ([2, 0, 1], false),
        ([2, 1, 0], true),
    ];
    for (perm, odd) in PERMS {
        // product of g0(x1,x2) * g1(x1,y2) * g2(y1,y2)
        let (g0, g1, g2) = (grids[perm[0]], grids[perm[1]], grids[perm[2]]);
        for a1 in 0..=m as i64 {
            for a2 in 0..=n as i64 {
                let c0 = g0.get(a1, a2);
                if c0 == 0 {
                    continue;
                }
                for b1 in 0..=m as i64 {
                    for b2 in 0..=n as i64 {
                        let c01 = field.mul(c0, g1.get(b1, b2));
                        if c01 == 0 {
                            continue;
                        }
                        for d1 in 0..=m as i64 {
                            for d2 in 0..=n as i64 {
                                let c = field.mul(c01, g2.get(d1, d2));
                                if c == 0 {
                                    continue;
                                }
                                let v = if odd { field.neg(c) } else { c };
                                num.add_assign_at(
                                    [
                                        (a1 + b1) as usize,
                                        a2 as usize,
                                        d1 as usize,
                                        (b2 + d2) as usize,
                                    ],
                                    v,
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    let q1 = num.divide_linear(0, 2, "(x1-y1)")?; // x1 - y1
    let q2 = q1.divide_linear(1, 3, "(x2-y2)")?; // x2 - y2
    // trim to the Dixon box, verifying nothing lives outside it
    let target = [2 * m, n, m, 2 * n];
    let mut out = QuadPoly::zeros(field, target);
    let mut exact = true;
    q2.for_each_nonzero(|e, c| {
        if e[0] < target[0] && e[1] < target[1] && e[2] < target[2] && e[3] < target[3] {
            out.set(e, c);
        } else {
            exact = false;
        }
    });
    if !exact {
        return Err(ResultantError::NonExactDivision("dixon box"));
    }
    Ok(out)
}

/// Coefficient matrix of the Dixon polynomial: rows indexed by the `2mn`
/// monomials `x1^{0..2m-1} x2^{0..n-1}`, columns by the `2mn` monomials
/// `y1^{0..m-1} y2^{0..2n-1}`, both ascending lex.
pub fn dixon_matrix(delta: &QuadPoly, m: i64, n: i64) -> FieldMatrix {
    let (m, n) = (m as usize, n as usize);
    let rows = 2 * m * n;
    let row_labels = (0..2 * m)
        .flat_map(|a| (0..n).map(move |b| format!("x1^{a}*x2^{b}")))
        .collect();
    let col_labels = (0..m)
        .flat_map(|a| (0..2 * n).map(move |b| format!("y1^{a}*y2^{b}")))
        .collect();
    let mut out = FieldMatrix::with_labels(delta.field(), rows, rows, row_labels, col_labels)
        .expect("label lengths match by construction");
    for e1 in 0..2 * m {
        for e2 in 0..n {
            let r = e1 * n + e2;
            for e3 in 0..m {
                for e4 in 0..2 * n {
                    let c = e3 * 2 * n + e4;
                    out.set(r, c, delta.coeff([e1, e2, e3, e4]));
                }
            }
        }
    }
    out
}

/// The tensor sparse resultant of three bidegree-`(m,n)` polynomials, up to
/// a global sign: the determinant of the Dixon matrix. Zero signals a
/// common root (or otherwise degenerate input).
pub fn tensor_resultant(
    f1: &CoefficientGrid,
    f2: &CoefficientGrid,
    f3: &CoefficientGrid,
) -> Result<u64, ResultantError> {
    let (_, m, n) = check_grids(f1, f2, f3)?;
    let delta = dixon_polynomial(f1, f2, f3)?;
    Ok(dixon_matrix(&delta, m, n).det()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::trial_rng;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn repeated_polynomial_gives_zero_delta() {
        let mut rng = trial_rng(3, "dixon", 0);
        let f = CoefficientGrid::random(f101(), 2, 1, &mut rng);
        let g = CoefficientGrid::random(f101(), 2, 1, &mut rng);
        let delta = dixon_polynomial(&f, &f, &g).unwrap();
        assert!(delta.is_zero());
        assert_eq!(tensor_resultant(&f, &f, &g).unwrap(), 0);
    }

    #[test]
    fn degree_bounds_m1_n1() {
        let mut rng = trial_rng(4, "dixon", 0);
        let f = CoefficientGrid::random(f101(), 1, 1, &mut rng);
        let g = CoefficientGrid::random(f101(), 1, 1, &mut rng);
        let h = CoefficientGrid::random(f101(), 1, 1, &mut rng);
        let delta = dixon_polynomial(&f, &g, &h).unwrap();
        assert!(delta.degree_in(0) <= Some(1)); // x1
        assert_eq!(delta.degree_in(1), Some(0)); // x2
        assert_eq!(delta.degree_in(2), Some(0)); // y1
        assert!(delta.degree_in(3) <= Some(1)); // y2
        let m = dixon_matrix(&delta, 1, 1);
        assert_eq!((m.rows(), m.cols()), (2, 2));
    }

    #[test]
    fn dixon_matrix_shape_2_2() {
        let mut rng = trial_rng(5, "dixon", 0);
        let f = CoefficientGrid::random(f101(), 2, 2, &mut rng);
        let g = CoefficientGrid::random(f101(), 2, 2, &mut rng);
        let h = CoefficientGrid::random(f101(), 2, 2, &mut rng);
        let delta = dixon_polynomial(&f, &g, &h).unwrap();
        let m = dixon_matrix(&delta, 2, 2);
        assert_eq!((m.rows(), m.cols()), (8, 8));
    }

    #[test]
    fn zero_delta_zero_matrix() {
        let z = QuadPoly::zeros(f101(), [4, 1, 1, 2]);
        let m = dixon_matrix(&z, 2, 1);
        assert_eq!(m.det().unwrap(), 0);
    }

    #[test]
    fn common_root_kills_resultant() {
        // coefficients of each polynomial sum to zero => all vanish at (1,1)
        let field = f101();
        let mut rng = trial_rng(6, "dixon", 0);
        let mut grids = Vec::new();
        for _ in 0..3 {
            let mut g = CoefficientGrid::random(field, 2, 1, &mut rng);
            let mut total = 0u64;
            for a1 in 0..=2 {
                for a2 in 0..=1 {
                    if (a1, a2) != (0, 0) {
                        total = field.add(total, g.get(a1, a2));
                    }
                }
            }
            g.set(0, 0, field.neg(total));
            assert_eq!(g.eval(1, 1), 0);
            grids.push(g);
        }
        assert_eq!(tensor_resultant(&grids[0], &grids[1], &grids[2]).unwrap(), 0);
    }

    #[test]
    fn block_scaling_exponent_2mn() {
        // scaling f1 by lambda scales the resultant by lambda^(2mn)
        let field = PrimeField::new(2_147_483_647).unwrap();
        let (m, n) = (2, 1);
        let mut rng = trial_rng(7, "dixon", 0);
        let f = CoefficientGrid::random(field, m, n, &mut rng);
        let g = CoefficientGrid::random(field, m, n, &mut rng);
        let h = CoefficientGrid::random(field, m, n, &mut rng);
        let base = tensor_resultant(&f, &g, &h).unwrap();
        assert_ne!(base, 0);
        for _ in 0..5 {
            let lambda = field.rand_scaling(&mut rng);
            let scaled = tensor_resultant(&f.scale(lambda), &g, &h).unwrap();
            assert_eq!(
                scaled,
                field.mul(base, field.pow(lambda, (2 * m * n) as u64))
            );
        }
    }

    #[test]
    fn swap_changes_at_most_sign() {
        let field = f101();
        let mut rng = trial_rng(8, "dixon", 0);
        let f = CoefficientGrid::random(field, 2, 2, &mut rng);
        let g = CoefficientGrid::random(field, 2, 2, &mut rng);
        let h = CoefficientGrid::random(field, 2, 2, &mut rng);
        let a = tensor_resultant(&f, &g, &h).unwrap();
        let b = tensor_resultant(&g, &f, &h).unwrap();
        assert!(a == b || a == field.neg(b));
    }

    #[test]
    fn grid_mismatch_rejected() {
        let f = CoefficientGrid::zeros(f101(), 1, 1);
        let g = CoefficientGrid::zeros(f101(), 2, 1);
        assert!(matches!(
            tensor_resultant(&f, &f, &g),
            Err(ResultantError::GridMismatch)
        ));
    }
}
