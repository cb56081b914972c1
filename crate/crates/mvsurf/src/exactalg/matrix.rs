//! Dense matrices over `F_p` and over `F_p[t]`, with the determinant
//! kernels used by every identity check.

use super::{ExactAlgError, PrimeField, UniPoly};

/// Dense row-major matrix over a prime field, with opaque row/column labels
/// carried along for dumps and reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

impl FieldMatrix {
    /// Zero matrix with empty (but correctly sized) labels.
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
            row_labels: vec![String::new(); rows],
            col_labels: vec![String::new(); cols],
        }
    }

    pub fn with_labels(
        field: PrimeField,
        rows: usize,
        cols: usize,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
    ) -> Result<Self, ExactAlgError> {
        if row_labels.len() != rows || col_labels.len() != cols {
            return Err(ExactAlgError::LabelMismatch {
                rows,
                cols,
                row_labels: row_labels.len(),
                col_labels: col_labels.len(),
            });
        }
        Ok(FieldMatrix {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
            row_labels,
            col_labels,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        debug_assert!(v < self.field.modulus());
        self.entries[r * self.cols + c] = v;
    }

    pub fn add_assign_at(&mut self, r: usize, c: usize, v: u64) {
        let cur = self.get(r, c);
        self.set(r, c, self.field.add(cur, v));
    }

    pub fn nonzeros_in_row(&self, r: usize) -> usize {
        self.entries[r * self.cols..(r + 1) * self.cols]
            .iter()
            .filter(|&&v| v != 0)
            .count()
    }

    /// Determinant by Gaussian elimination, pivoting on the first nonzero
    /// entry of each column. The input is left untouched.
    ///
    /// The 0x0 determinant is 1 (empty product).
    pub fn det(&self) -> Result<u64, ExactAlgError> {
        if self.rows != self.cols {
            return Err(ExactAlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1 % self.field.modulus());
        }
        let f = self.field;
        let p = f.modulus();
        let mut m = self.entries.clone();
        let mut negate = false;
        let mut acc = 1u64;
        for col in 0..n {
            let pivot = match (col..n).find(|&r| m[r * n + col] != 0) {
                Some(r) => r,
                None => return Ok(0),
            };
            if pivot != col {
                for k in col..n {
                    m.swap(pivot * n + k, col * n + k);
                }
                negate = !negate;
            }
            let pv = m[col * n + col];
            acc = f.mul(acc, pv);
            let inv = f.inv(pv);
            for r in col + 1..n {
                let factor = f.mul(m[r * n + col], inv);
                if factor == 0 {
                    continue;
                }
                let neg_factor = p - factor;
                for k in col..n {
                    m[r * n + k] = f.mul_add(m[r * n + k], neg_factor, m[col * n + k]);
                }
            }
        }
        Ok(if negate { f.neg(acc) } else { acc })
    }

    /// Plain numeric CSV, one row per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Dense matrix with `F_p[t]` entries.
#[derive(Debug, Clone)]
pub struct PolyMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<UniPoly>,
}

impl PolyMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            field,
            rows,
            cols,
            entries: vec![UniPoly::zero(field); rows * cols],
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &UniPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: UniPoly) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn max_entry_degree(&self) -> usize {
        self.entries
            .iter()
            .filter_map(|e| e.degree())
            .max()
            .unwrap_or(0)
    }

    /// Entrywise evaluation at `t = t0`.
    pub fn eval(&self, t0: u64) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(self.field, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).eval(t0));
            }
        }
        m
    }

    /// Determinant as a polynomial in `t`, by evaluation at
    /// `t = 0, 1, ..., degree_bound` followed by Newton interpolation.
    ///
    /// Requires `degree_bound >= rows * max entry degree` and a modulus
    /// large enough to supply `degree_bound + 1` distinct points.
    pub fn det_interpolated(&self, degree_bound: usize) -> Result<UniPoly, ExactAlgError> {
        if self.rows != self.cols {
            return Err(ExactAlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let f = self.field;
        let points = degree_bound + 1;
        if (f.modulus() as u128) < points as u128 {
            return Err(ExactAlgError::ModulusTooSmall {
                modulus: f.modulus(),
                points,
            });
        }
        debug_assert!(degree_bound >= self.rows * self.max_entry_degree());
        let values: Vec<u64> = (0..points as u64)
            .map(|t0| self.eval(t0).det())
            .collect::<Result<_, _>>()?;
        Ok(newton_interpolate(f, &values))
    }
}

/// Interpolate the polynomial taking value `values[i]` at `t = i`.
fn newton_interpolate(f: PrimeField, values: &[u64]) -> UniPoly {
    let n = values.len();
    // divided differences in place
    let mut coef = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(coef[i], coef[i - 1]);
            coef[i] = f.mul(num, f.inv(j as u64 % f.modulus()));
        }
    }
    // expand the Newton form: sum_k coef[k] * prod_{j<k} (t - j)
    let mut poly = vec![0u64; n];
    let mut basis = vec![1u64]; // running product, lowest degree first
    for (k, &ck) in coef.iter().enumerate() {
        for (d, &bv) in basis.iter().enumerate() {
            poly[d] = f.mul_add(poly[d], ck, bv);
        }
        if k + 1 < n {
            // basis *= (t - k)
            let root = f.reduce_i64(k as i64);
            let mut next = vec![0u64; basis.len() + 1];
            for (d, &bv) in basis.iter().enumerate() {
                next[d] = f.sub(next[d], f.mul(root, bv));
                next[d + 1] = f.add(next[d + 1], bv);
            }
            basis = next;
        }
    }
    UniPoly::new(f, poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn det_empty_is_one() {
        let m = FieldMatrix::zeros(f101(), 0, 0);
        assert_eq!(m.det().unwrap(), 1);
    }

    #[test]
    fn det_identity_7() {
        let mut m = FieldMatrix::zeros(f101(), 7, 7);
        for i in 0..7 {
            m.set(i, i, 1);
        }
        assert_eq!(m.det().unwrap(), 1);
    }

    #[test]
    fn det_2x2() {
        let mut m = FieldMatrix::zeros(f101(), 2, 2);
        m.set(0, 0, 3);
        m.set(0, 1, 7);
        m.set(1, 0, 2);
        m.set(1, 1, 5);
        assert_eq!(m.det().unwrap(), 1); // 15 - 14
        // swap rows: sign flips
        let mut s = FieldMatrix::zeros(f101(), 2, 2);
        s.set(0, 0, 2);
        s.set(0, 1, 5);
        s.set(1, 0, 3);
        s.set(1, 1, 7);
        assert_eq!(s.det().unwrap(), 100);
    }

    #[test]
    fn det_nonsquare_rejected() {
        let m = FieldMatrix::zeros(f101(), 2, 3);
        assert!(matches!(
            m.det(),
            Err(ExactAlgError::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn det_singular() {
        let mut m = FieldMatrix::zeros(f101(), 3, 3);
        for c in 0..3 {
            m.set(0, c, c as u64 + 1);
            m.set(1, c, c as u64 + 1); // equal rows
            m.set(2, c, 7);
        }
        assert_eq!(m.det().unwrap(), 0);
    }

    #[test]
    fn poly_det_diag_tt() {
        let f = f101();
        let mut m = PolyMatrix::zeros(f, 2, 2);
        m.set(0, 0, UniPoly::linear(f, 1));
        m.set(1, 1, UniPoly::linear(f, 1));
        let d = m.det_interpolated(2).unwrap();
        assert_eq!(d.coeffs(), &[0, 0, 1]); // t^2
    }

    #[test]
    fn poly_det_t_squared_minus_one() {
        let f = f101();
        let mut m = PolyMatrix::zeros(f, 2, 2);
        m.set(0, 0, UniPoly::linear(f, 1));
        m.set(0, 1, UniPoly::constant(f, 1));
        m.set(1, 0, UniPoly::constant(f, 1));
        m.set(1, 1, UniPoly::linear(f, 1));
        let d = m.det_interpolated(2).unwrap();
        assert_eq!(d.coeffs(), &[100, 0, 1]); // t^2 - 1
    }

    #[test]
    fn poly_det_modulus_too_small() {
        let f = PrimeField::new(3).unwrap();
        let m = PolyMatrix::zeros(f, 2, 2);
        assert!(matches!(
            m.det_interpolated(4),
            Err(ExactAlgError::ModulusTooSmall { .. })
        ));
    }

    #[test]
    fn label_mismatch_rejected() {
        let bad = FieldMatrix::with_labels(f101(), 2, 2, vec!["r".into()], vec![]);
        assert!(matches!(bad, Err(ExactAlgError::LabelMismatch { .. })));
    }
}
