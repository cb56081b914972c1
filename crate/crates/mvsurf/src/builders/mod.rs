//! Construction of the labeled coefficient matrices behind the moving-plane
//! and moving-quadric maps, for rectangular `[0,m] x [0,n]` supports and for
//! arbitrary 2D lattice supports with a boundary chain removed, plus the row
//! deletions that square them up and the specialization of generic
//! coefficients to field values.

mod assignment;
mod template;

pub use assignment::{Axis, FieldAssignment, PolyAssignment};
pub use template::{
    CoefficientIndex, LinearTemplate, MatrixDump, QuadricTemplate, TemplateDump,
};

use crate::exactalg::ExactAlgError;
use crate::latticegeom::{
    support_basis, ehrhart, EdgeChain, GeomError, LatticePoint, SupportSpec,
};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("bidegree ({m},{n}) must have positive components")]
    NonPositiveBidegree { m: i64, n: i64 },
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("chain too long: boundary count {boundary} < 2 * chain length {chain_length}")]
    ChainTooLong { boundary: i64, chain_length: i64 },
    #[error("deletion set has {got} points, expected {expected}")]
    DeletionSizeMismatch { expected: i64, got: usize },
    #[error("deletion point {0} is not in the domain basis")]
    DeletionOutsideDomain(LatticePoint),
    #[error("deletion point {0} listed twice")]
    DuplicateDeletion(LatticePoint),
    #[error("assignment missing value for {0}")]
    IncompleteAssignment(CoefficientIndex),
    #[error(transparent)]
    Exact(#[from] ExactAlgError),
}

/// The set of rows to delete from the `F_4` block, as monomial shifts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DeletionSpec {
    points: Vec<LatticePoint>,
}

impl DeletionSpec {
    pub fn new(points: Vec<LatticePoint>) -> Self {
        DeletionSpec { points }
    }

    pub fn empty() -> Self {
        DeletionSpec { points: Vec::new() }
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        self.points.contains(&p)
    }
}

/// The nine quadric blocks of the tensor map, in listing order:
/// F1^2, F2^2, F3^2, F1F2, F1F3, F1F4, F2F3, F2F4, F3F4.
pub const QUADRIC_PAIRS: [(u8, u8); 9] = [
    (1, 1),
    (2, 2),
    (3, 3),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];

fn check_bidegree(m: i64, n: i64) -> Result<(), BuildError> {
    if m < 1 || n < 1 {
        return Err(BuildError::NonPositiveBidegree { m, n });
    }
    Ok(())
}

fn lex_box(m1: i64, m2: i64) -> Vec<LatticePoint> {
    (0..=m1)
        .flat_map(|a1| (0..=m2).map(move |a2| LatticePoint::new(a1, a2)))
        .collect()
}

/// Matrix of the map `(A_1,..,A_4) -> sum A_i F_i` from four copies of the
/// inner `m x n` monomial grid to the `2m x 2n` grid. Square of size `4mn`;
/// rows ordered shifts-outer (ascending lex), block index inner.
pub fn tensor_moving_plane(m: i64, n: i64) -> Result<LinearTemplate, BuildError> {
    check_bidegree(m, n)?;
    let support = lex_box(m, n);
    let shifts = lex_box(m - 1, n - 1);
    let rows: Vec<(u8, LatticePoint)> = shifts
        .iter()
        .flat_map(|&s| (1..=4u8).map(move |i| (i, s)))
        .collect();
    let cols = lex_box(2 * m - 1, 2 * n - 1);
    Ok(LinearTemplate::new(support, rows, cols))
}

/// Matrix of the nine-term quadric map: rows are (shift, pair) with shifts
/// outer and the `QUADRIC_PAIRS` order inner; square of size `9mn`.
pub fn tensor_moving_quadric(m: i64, n: i64) -> Result<QuadricTemplate, BuildError> {
    check_bidegree(m, n)?;
    let support = lex_box(m, n);
    let shifts = lex_box(m - 1, n - 1);
    let rows: Vec<((u8, u8), LatticePoint)> = shifts
        .iter()
        .flat_map(|&s| QUADRIC_PAIRS.iter().map(move |&pr| (pr, s)))
        .collect();
    let cols = lex_box(3 * m - 1, 3 * n - 1);
    Ok(QuadricTemplate::new(support, rows, cols))
}

/// The 4x4 template of the four corner coefficient columns
/// `(0,0), (m,0), (0,n), (m,n)`, rows `F_1..F_4`. Its determinant is the
/// irreducible quartic that the corner specialization collapses onto.
pub fn corner_template(m: i64, n: i64) -> Result<LinearTemplate, BuildError> {
    check_bidegree(m, n)?;
    let support = lex_box(m, n);
    let zero = LatticePoint::new(0, 0);
    let rows: Vec<(u8, LatticePoint)> = (1..=4u8).map(|i| (i, zero)).collect();
    let cols = vec![
        LatticePoint::new(0, 0),
        LatticePoint::new(m, 0),
        LatticePoint::new(0, n),
        LatticePoint::new(m, n),
    ];
    Ok(LinearTemplate::new(support, rows, cols))
}

struct GeneralBases {
    domain: Vec<LatticePoint>,
    ehrhart: crate::latticegeom::EhrhartData,
}

fn general_bases(
    spec: &SupportSpec,
    chain: &EdgeChain,
    deletion: &DeletionSpec,
) -> Result<GeneralBases, BuildError> {
    let e = ehrhart(spec, chain)?;
    if e.deletion_size() < 0 {
        return Err(BuildError::ChainTooLong {
            boundary: e.boundary,
            chain_length: e.chain_length,
        });
    }
    if deletion.len() as i64 != e.deletion_size() {
        return Err(BuildError::DeletionSizeMismatch {
            expected: e.deletion_size(),
            got: deletion.len(),
        });
    }
    let domain = support_basis(spec, chain, 1)?;
    let mut seen = std::collections::BTreeSet::new();
    for &p in deletion.points() {
        if domain.binary_search(&p).is_err() {
            return Err(BuildError::DeletionOutsideDomain(p));
        }
        if !seen.insert(p) {
            return Err(BuildError::DuplicateDeletion(p));
        }
    }
    Ok(GeneralBases { domain, ehrhart: e })
}

/// Moving-plane matrix for an arbitrary support: domain basis
/// `(Q \ E_I) ∩ Z^2` over four blocks, minus the deleted `F_4` rows; columns
/// are the basis of `S_{2Q \ 2E_I}`. Square of order `4A + B - 2B_I`.
pub fn general_moving_plane(
    spec: &SupportSpec,
    chain: &EdgeChain,
    deletion: &DeletionSpec,
) -> Result<LinearTemplate, BuildError> {
    let bases = general_bases(spec, chain, deletion)?;
    let rows: Vec<(u8, LatticePoint)> = bases
        .domain
        .iter()
        .flat_map(|&s| (1..=4u8).map(move |i| (i, s)))
        .filter(|&(i, s)| !(i == 4 && deletion.contains(s)))
        .collect();
    let cols = support_basis(spec, chain, 2)?;
    assert_eq!(rows.len(), cols.len(), "plane builder must be square");
    assert_eq!(rows.len() as i64, bases.ehrhart.plane_order());
    Ok(LinearTemplate::new(spec.points().to_vec(), rows, cols))
}

/// Moving-quadric matrix for an arbitrary support: ten quadric blocks over
/// the domain basis, with every `F_4^2` row removed and, for each deletion
/// shift, the three `F_1F_4, F_2F_4, F_3F_4` rows removed; columns are the
/// basis of `S_{3Q \ 3E_I}`. Square of order `9A + (3/2)B - 3B_I`.
pub fn general_moving_quadric(
    spec: &SupportSpec,
    chain: &EdgeChain,
    deletion: &DeletionSpec,
) -> Result<QuadricTemplate, BuildError> {
    let bases = general_bases(spec, chain, deletion)?;
    let rows: Vec<((u8, u8), LatticePoint)> = bases
        .domain
        .iter()
        .flat_map(|&s| QUADRIC_PAIRS.iter().map(move |&pr| (pr, s)))
        .filter(|&((_, j), s)| !(j == 4 && deletion.contains(s)))
        .collect();
    let cols = support_basis(spec, chain, 3)?;
    assert_eq!(rows.len(), cols.len(), "quadric builder must be square");
    assert_eq!(rows.len() as i64, bases.ehrhart.quadric_order());
    Ok(QuadricTemplate::new(spec.points().to_vec(), rows, cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latticegeom::SupportSpec;

    fn pt(a1: i64, a2: i64) -> LatticePoint {
        LatticePoint::new(a1, a2)
    }

    #[test]
    fn tensor_plane_sizes() {
        for (m, n, sz) in [(1i64, 1i64, 4usize), (2, 1, 8), (3, 2, 24)] {
            let t = tensor_moving_plane(m, n).unwrap();
            assert_eq!(t.rows().len(), sz);
            assert_eq!(t.cols().len(), sz);
        }
    }

    #[test]
    fn tensor_plane_1_1_rows_are_the_generic_4x4() {
        let t = tensor_moving_plane(1, 1).unwrap();
        // one shift, four blocks; every column entry is c[i][col]
        for (r, &(i, s)) in t.rows().iter().enumerate() {
            assert_eq!(s, pt(0, 0));
            assert_eq!(i as usize, r + 1);
            for (c, &b) in t.cols().iter().enumerate() {
                let e = t.entry(r, c).unwrap();
                assert_eq!(e.block, i);
                assert_eq!(e.point, b);
            }
        }
    }

    #[test]
    fn tensor_plane_row_nonzero_count_is_support_size() {
        let t = tensor_moving_plane(3, 2).unwrap();
        for r in 0..t.rows().len() {
            let nz = (0..t.cols().len()).filter(|&c| t.entry(r, c).is_some()).count();
            assert_eq!(nz, 12); // (m+1)(n+1)
        }
    }

    #[test]
    fn tensor_quadric_sizes() {
        assert_eq!(tensor_moving_quadric(1, 1).unwrap().rows().len(), 9);
        assert_eq!(tensor_moving_quadric(2, 2).unwrap().rows().len(), 36);
    }

    #[test]
    fn quadric_entry_f1f2_at_x1x2() {
        // row (F1F2, shift (0,0)), column x1x2: four ordered pairs
        let t = tensor_moving_quadric(1, 1).unwrap();
        let r = t
            .rows()
            .iter()
            .position(|&(pr, s)| pr == (1, 2) && s == pt(0, 0))
            .unwrap();
        let c = t.cols().iter().position(|&b| b == pt(1, 1)).unwrap();
        let mut got = t.entry(r, c);
        got.sort();
        let mut expect = vec![
            (pt(1, 0), pt(0, 1)),
            (pt(0, 1), pt(1, 0)),
            (pt(0, 0), pt(1, 1)),
            (pt(1, 1), pt(0, 0)),
        ]
        .into_iter()
        .map(|(u, v)| {
            (
                CoefficientIndex { block: 1, point: u },
                CoefficientIndex { block: 2, point: v },
            )
        })
        .collect::<Vec<_>>();
        expect.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn corner_template_columns() {
        let t = corner_template(2, 3).unwrap();
        assert_eq!(
            t.cols(),
            &[pt(0, 0), pt(2, 0), pt(0, 3), pt(2, 3)]
        );
        assert_eq!(t.rows().len(), 4);
        // (1,1): same column index set as the full template
        let t11 = corner_template(1, 1).unwrap();
        let mut a: Vec<_> = t11.cols().to_vec();
        a.sort();
        assert_eq!(a, tensor_moving_plane(1, 1).unwrap().cols());
    }

    #[test]
    fn nonpositive_bidegree_rejected() {
        assert!(matches!(
            tensor_moving_plane(0, 1),
            Err(BuildError::NonPositiveBidegree { .. })
        ));
        assert!(matches!(
            tensor_moving_quadric(2, 0),
            Err(BuildError::NonPositiveBidegree { .. })
        ));
    }

    fn tri2() -> (SupportSpec, EdgeChain) {
        let pts: Vec<LatticePoint> = (0..=2)
            .flat_map(|a| (0..=2 - a).map(move |b| pt(a, b)))
            .collect();
        (SupportSpec::new(pts).unwrap(), EdgeChain::new(1, 1))
    }

    #[test]
    fn general_triangle_orders() {
        let (spec, chain) = tri2();
        let del = DeletionSpec::new(vec![pt(1, 0), pt(0, 1)]);
        let f = general_moving_plane(&spec, &chain, &del).unwrap();
        assert_eq!(f.rows().len(), 10);
        let q = general_moving_quadric(&spec, &chain, &del).unwrap();
        assert_eq!(q.rows().len(), 21);
    }

    #[test]
    fn general_constraint_errors() {
        let (spec, chain) = tri2();
        // wrong |I|
        assert!(matches!(
            general_moving_plane(&spec, &chain, &DeletionSpec::new(vec![pt(0, 0)])),
            Err(BuildError::DeletionSizeMismatch { expected: 2, got: 1 })
        ));
        // point on the chain is outside the domain basis
        assert!(matches!(
            general_moving_plane(
                &spec,
                &chain,
                &DeletionSpec::new(vec![pt(0, 0), pt(1, 1)])
            ),
            Err(BuildError::DeletionOutsideDomain(_))
        ));
        // duplicated point
        assert!(matches!(
            general_moving_plane(
                &spec,
                &chain,
                &DeletionSpec::new(vec![pt(0, 0), pt(0, 0)])
            ),
            Err(BuildError::DuplicateDeletion(_))
        ));
        // chain covering too much boundary
        let chain_all = EdgeChain::new(0, 3);
        assert!(matches!(
            general_moving_plane(&spec, &chain_all, &DeletionSpec::empty()),
            Err(BuildError::ChainTooLong { .. })
        ));
    }

    #[test]
    fn rectangle_reduces_to_tensor() {
        let spec = SupportSpec::rectangle(2, 1);
        let chain = EdgeChain::new(1, 2);
        let f = general_moving_plane(&spec, &chain, &DeletionSpec::empty()).unwrap();
        let ft = tensor_moving_plane(2, 1).unwrap();
        assert_eq!(f, ft);
        let q = general_moving_quadric(&spec, &chain, &DeletionSpec::empty()).unwrap();
        let qt = tensor_moving_quadric(2, 1).unwrap();
        assert_eq!(q, qt);
    }
}
