//! Labeled matrix templates: entries are generic coefficient indices (or
//! sums of products of two of them) until an assignment turns them into
//! field or polynomial values.

use super::assignment::{FieldAssignment, PolyAssignment};
use super::BuildError;
use crate::exactalg::{FieldMatrix, IntMultiPoly, PolyMatrix};
use crate::latticegeom::LatticePoint;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

/// One generic coefficient `c_{i,a}`: block index `i` in `1..=4` and a
/// support point `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoefficientIndex {
    pub block: u8,
    pub point: LatticePoint,
}

impl fmt::Display for CoefficientIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c[{}][{},{}]", self.block, self.point.a1, self.point.a2)
    }
}

/// Template of a linear map `(A_1,..,A_4) -> sum A_i F_i` in monomial bases:
/// row `(i, s)` is the coefficient row of `x^s * F_i`, so the entry in
/// column `x^b` is `c_{i, b-s}` whenever `b - s` lies in the support.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearTemplate {
    support: Vec<LatticePoint>,
    rows: Vec<(u8, LatticePoint)>,
    cols: Vec<LatticePoint>,
    col_index: HashMap<LatticePoint, usize>,
}

impl LinearTemplate {
    pub(super) fn new(
        mut support: Vec<LatticePoint>,
        rows: Vec<(u8, LatticePoint)>,
        cols: Vec<LatticePoint>,
    ) -> Self {
        support.sort();
        support.dedup();
        let col_index = cols.iter().enumerate().map(|(j, &b)| (b, j)).collect();
        LinearTemplate {
            support,
            rows,
            cols,
            col_index,
        }
    }

    pub fn support(&self) -> &[LatticePoint] {
        &self.support
    }

    pub fn rows(&self) -> &[(u8, LatticePoint)] {
        &self.rows
    }

    pub fn cols(&self) -> &[LatticePoint] {
        &self.cols
    }

    /// The generic coefficient at `(r, c)`, or `None` where the template is
    /// structurally zero.
    pub fn entry(&self, r: usize, c: usize) -> Option<CoefficientIndex> {
        let (i, s) = self.rows[r];
        let a = self.cols[c].sub(s);
        if self.support.binary_search(&a).is_ok() {
            Some(CoefficientIndex { block: i, point: a })
        } else {
            None
        }
    }

    /// All coefficient indices a total assignment must cover.
    pub fn coefficient_universe(&self) -> Vec<CoefficientIndex> {
        let mut out = Vec::with_capacity(4 * self.support.len());
        for block in 1..=4u8 {
            for &point in &self.support {
                out.push(CoefficientIndex { block, point });
            }
        }
        out
    }

    pub fn row_labels(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|&(i, s)| format!("x^({},{})*F{}", s.a1, s.a2, i))
            .collect()
    }

    pub fn col_labels(&self) -> Vec<String> {
        self.cols
            .iter()
            .map(|b| format!("x^({},{})", b.a1, b.a2))
            .collect()
    }

    /// Replace every coefficient index by its assigned field value.
    pub fn specialize(&self, asg: &FieldAssignment) -> Result<FieldMatrix, BuildError> {
        let mut m = FieldMatrix::with_labels(
            asg.field(),
            self.rows.len(),
            self.cols.len(),
            self.row_labels(),
            self.col_labels(),
        )?;
        for (r, &(i, s)) in self.rows.iter().enumerate() {
            for &a in &self.support {
                if let Some(&c) = self.col_index.get(&s.add(a)) {
                    m.set(r, c, asg.get(CoefficientIndex { block: i, point: a })?);
                }
            }
        }
        Ok(m)
    }

    /// Replace every coefficient index by its assigned `F_p[t]` value.
    pub fn specialize_poly(&self, asg: &PolyAssignment) -> Result<PolyMatrix, BuildError> {
        let mut m = PolyMatrix::zeros(asg.field(), self.rows.len(), self.cols.len());
        for (r, &(i, s)) in self.rows.iter().enumerate() {
            for &a in &self.support {
                if let Some(&c) = self.col_index.get(&s.add(a)) {
                    m.set(
                        r,
                        c,
                        asg.get(CoefficientIndex { block: i, point: a })?.clone(),
                    );
                }
            }
        }
        Ok(m)
    }

    /// The template as a matrix of integer polynomials, together with the
    /// variable universe (one variable per coefficient index, ordered by
    /// `(block, a1, a2)`).
    pub fn symbolic_matrix(&self) -> (Vec<CoefficientIndex>, Vec<Vec<IntMultiPoly>>) {
        let universe = self.coefficient_universe();
        let var_of: HashMap<CoefficientIndex, usize> = universe
            .iter()
            .enumerate()
            .map(|(k, &ci)| (ci, k))
            .collect();
        let nvars = universe.len();
        let mut m = vec![vec![IntMultiPoly::zero(nvars); self.cols.len()]; self.rows.len()];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, slot) in row.iter_mut().enumerate() {
                if let Some(ci) = self.entry(r, c) {
                    *slot = IntMultiPoly::var(nvars, var_of[&ci]);
                }
            }
        }
        (universe, m)
    }

    pub fn dump(&self) -> TemplateDump {
        let entries = (0..self.rows.len())
            .map(|r| {
                (0..self.cols.len())
                    .map(|c| match self.entry(r, c) {
                        Some(ci) => ci.to_string(),
                        None => "0".to_string(),
                    })
                    .collect()
            })
            .collect();
        TemplateDump {
            rows: self.rows.len(),
            cols: self.cols.len(),
            row_labels: self.row_labels(),
            col_labels: self.col_labels(),
            entries,
        }
    }
}

/// Template of the quadric map: row `((i,j), s)` is the coefficient row of
/// `x^s * F_i * F_j`, so the entry in column `x^b` is the sum of
/// `c_{i,u} c_{j,v}` over ordered pairs with `u + v = b - s`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadricTemplate {
    support: Vec<LatticePoint>,
    rows: Vec<((u8, u8), LatticePoint)>,
    cols: Vec<LatticePoint>,
    col_index: HashMap<LatticePoint, usize>,
}

impl QuadricTemplate {
    pub(super) fn new(
        mut support: Vec<LatticePoint>,
        rows: Vec<((u8, u8), LatticePoint)>,
        cols: Vec<LatticePoint>,
    ) -> Self {
        support.sort();
        support.dedup();
        let col_index = cols.iter().enumerate().map(|(j, &b)| (b, j)).collect();
        QuadricTemplate {
            support,
            rows,
            cols,
            col_index,
        }
    }

    pub fn support(&self) -> &[LatticePoint] {
        &self.support
    }

    pub fn rows(&self) -> &[((u8, u8), LatticePoint)] {
        &self.rows
    }

    pub fn cols(&self) -> &[LatticePoint] {
        &self.cols
    }

    /// The formal sum of ordered coefficient pairs at `(r, c)`; empty when
    /// the entry is structurally zero.
    pub fn entry(&self, r: usize, c: usize) -> Vec<(CoefficientIndex, CoefficientIndex)> {
        let ((i, j), s) = self.rows[r];
        let w = self.cols[c].sub(s);
        let mut out = Vec::new();
        for &u in &self.support {
            let v = w.sub(u);
            if self.support.binary_search(&v).is_ok() {
                out.push((
                    CoefficientIndex { block: i, point: u },
                    CoefficientIndex { block: j, point: v },
                ));
            }
        }
        out
    }

    pub fn row_labels(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|&((i, j), s)| {
                if i == j {
                    format!("x^({},{})*F{}^2", s.a1, s.a2, i)
                } else {
                    format!("x^({},{})*F{}*F{}", s.a1, s.a2, i, j)
                }
            })
            .collect()
    }

    pub fn col_labels(&self) -> Vec<String> {
        self.cols
            .iter()
            .map(|b| format!("x^({},{})", b.a1, b.a2))
            .collect()
    }

    /// Evaluate every entry as a sum of products of assigned values.
    pub fn specialize(&self, asg: &FieldAssignment) -> Result<FieldMatrix, BuildError> {
        let field = asg.field();
        let mut m = FieldMatrix::with_labels(
            field,
            self.rows.len(),
            self.cols.len(),
            self.row_labels(),
            self.col_labels(),
        )?;
        for (r, &((i, j), s)) in self.rows.iter().enumerate() {
            for &u in &self.support {
                let ci = asg.get(CoefficientIndex { block: i, point: u })?;
                if ci == 0 {
                    continue;
                }
                for &v in &self.support {
                    if let Some(&c) = self.col_index.get(&s.add(u).add(v)) {
                        let cj = asg.get(CoefficientIndex { block: j, point: v })?;
                        m.add_assign_at(r, c, field.mul(ci, cj));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn dump(&self) -> TemplateDump {
        let entries = (0..self.rows.len())
            .map(|r| {
                (0..self.cols.len())
                    .map(|c| {
                        let pairs = self.entry(r, c);
                        if pairs.is_empty() {
                            "0".to_string()
                        } else {
                            pairs
                                .iter()
                                .map(|(a, b)| format!("{a}*{b}"))
                                .collect::<Vec<_>>()
                                .join(" + ")
                        }
                    })
                    .collect()
            })
            .collect();
        TemplateDump {
            rows: self.rows.len(),
            cols: self.cols.len(),
            row_labels: self.row_labels(),
            col_labels: self.col_labels(),
            entries,
        }
    }
}

/// JSON shape of a labeled template dump.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TemplateDump {
    pub rows: usize,
    pub cols: usize,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

/// JSON shape of a specialized matrix dump. Values are decimal strings so
/// that 62-bit entries survive JSON round trips.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixDump {
    pub rows: usize,
    pub cols: usize,
    pub prime: String,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

impl MatrixDump {
    pub fn from_matrix(m: &FieldMatrix) -> Self {
        MatrixDump {
            rows: m.rows(),
            cols: m.cols(),
            prime: m.field().modulus().to_string(),
            row_labels: m.row_labels().to_vec(),
            col_labels: m.col_labels().to_vec(),
            entries: (0..m.rows())
                .map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect())
                .collect(),
        }
    }
}
