//! 2D lattice geometry: convex hulls, lattice-point enumeration, Ehrhart
//! coefficients, boundary edge chains, and the monomial support bases cut
//! out by removing a chain from a dilated polygon.
//!
//! Every point set here is a set of exponent vectors; `x^a` means
//! `x1^{a1} x2^{a2}`. Orderings are ascending lexicographic by `(a1, a2)`
//! throughout, which fixes all matrix row/column orders downstream.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("support is degenerate: need at least 3 non-collinear lattice points")]
    DegenerateSupport,
    #[error("edge chain (start {start}, edges {edges}) invalid for a hull with {hull_edges} edges")]
    InvalidChain {
        start: usize,
        edges: usize,
        hull_edges: usize,
    },
}

/// Exponent vector of a monomial `x1^{a1} x2^{a2}`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
pub struct LatticePoint {
    pub a1: i64,
    pub a2: i64,
}

impl LatticePoint {
    pub fn new(a1: i64, a2: i64) -> Self {
        LatticePoint { a1, a2 }
    }

    pub fn add(self, other: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.a1 + other.a1, self.a2 + other.a2)
    }

    pub fn sub(self, other: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.a1 - other.a1, self.a2 - other.a2)
    }

    pub fn scale(self, k: i64) -> LatticePoint {
        LatticePoint::new(self.a1 * k, self.a2 * k)
    }
}

impl std::fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.a1, self.a2)
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from(p: (i64, i64)) -> Self {
        LatticePoint::new(p.0, p.1)
    }
}

fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i128 {
    let (ax, ay) = ((a.a1 - o.a1) as i128, (a.a2 - o.a2) as i128);
    let (bx, by) = ((b.a1 - o.a1) as i128, (b.a2 - o.a2) as i128);
    ax * by - ay * bx
}

fn edge_lattice_length(u: LatticePoint, v: LatticePoint) -> i64 {
    num_integer::gcd((v.a1 - u.a1).abs(), (v.a2 - u.a2).abs())
}

/// Counterclockwise cycle of the extreme points, starting at the
/// lexicographically least vertex. No three consecutive vertices are
/// collinear. Degenerate inputs (fewer than 3 distinct points, or all
/// collinear) are rejected.
pub fn convex_hull(points: &[LatticePoint]) -> Result<Vec<LatticePoint>, GeomError> {
    let pts: Vec<LatticePoint> = points
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if pts.len() < 3 {
        return Err(GeomError::DegenerateSupport);
    }
    let mut lower: Vec<LatticePoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    let hull: Vec<LatticePoint> = lower.into_iter().chain(upper).collect();
    if hull.len() < 3 {
        return Err(GeomError::DegenerateSupport);
    }
    Ok(hull)
}

/// A finite lattice support together with its convex hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSpec {
    points: Vec<LatticePoint>,
    hull: Vec<LatticePoint>,
}

impl SupportSpec {
    pub fn new(points: Vec<LatticePoint>) -> Result<Self, GeomError> {
        let hull = convex_hull(&points)?;
        let points: Vec<LatticePoint> = points
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Ok(SupportSpec { points, hull })
    }

    /// The full rectangular support `[0,m] x [0,n]`.
    pub fn rectangle(m: i64, n: i64) -> Self {
        assert!(m >= 1 && n >= 1, "bidegree must be positive");
        let points = (0..=m)
            .flat_map(|a1| (0..=n).map(move |a2| LatticePoint::new(a1, a2)))
            .collect();
        SupportSpec::new(points).expect("rectangle is non-degenerate")
    }

    /// Points in ascending lex order.
    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    /// Hull vertex cycle, counterclockwise from the lex-least vertex.
    pub fn hull(&self) -> &[LatticePoint] {
        &self.hull
    }

    pub fn hull_edge_count(&self) -> usize {
        self.hull.len()
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        self.points.binary_search(&p).is_ok()
    }
}

/// A connected run of hull edges, given by the index of its starting vertex
/// in the hull cycle and the number of consecutive edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeChain {
    pub start: usize,
    pub edges: usize,
}

impl EdgeChain {
    pub fn new(start: usize, edges: usize) -> Self {
        EdgeChain { start, edges }
    }

    pub fn validate(&self, spec: &SupportSpec) -> Result<(), GeomError> {
        let hull_edges = spec.hull_edge_count();
        if self.start >= hull_edges || self.edges < 1 || self.edges > hull_edges {
            return Err(GeomError::InvalidChain {
                start: self.start,
                edges: self.edges,
                hull_edges,
            });
        }
        Ok(())
    }

    /// Vertices of the chain polyline in walk order (edges + 1 of them).
    pub fn vertices(&self, spec: &SupportSpec) -> Result<Vec<LatticePoint>, GeomError> {
        self.validate(spec)?;
        let hull = spec.hull();
        Ok((0..=self.edges)
            .map(|j| hull[(self.start + j) % hull.len()])
            .collect())
    }
}

/// The Ehrhart data of a support: `E(t) = A t^2 + (B/2) t + 1` plus the
/// lattice length `B_I` of a chosen boundary chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EhrhartData {
    /// Euclidean area of the hull, an exact rational with denominator 1 or 2.
    pub area: Ratio<i64>,
    /// Number of boundary lattice points.
    pub boundary: i64,
    /// Lattice length of the chain.
    pub chain_length: i64,
}

impl EhrhartData {
    /// `#(kQ ∩ Z^2) = A k^2 + (B/2) k + 1`, exact.
    pub fn dilate_count(&self, k: i64) -> i64 {
        let two = (self.area * 2).to_integer() * k * k + self.boundary * k + 2;
        debug_assert!(two % 2 == 0);
        two / 2
    }

    /// `#(k E_I ∩ Z^2) = B_I k + 1`.
    pub fn chain_count(&self, k: i64) -> i64 {
        self.chain_length * k + 1
    }

    /// Size of the monomial basis of `S_{kQ \ kE_I}`.
    pub fn basis_count(&self, k: i64) -> i64 {
        self.dilate_count(k) - self.chain_count(k)
    }

    /// Square order of the moving-plane matrix after row deletion:
    /// `4A + B - 2B_I`.
    pub fn plane_order(&self) -> i64 {
        (self.area * 4).to_integer() + self.boundary - 2 * self.chain_length
    }

    /// Square order of the moving-quadric matrix after row deletion:
    /// `9A + (3/2)B - 3B_I`. Always an integer by Pick's theorem.
    pub fn quadric_order(&self) -> i64 {
        let twice = (self.area * 18).to_integer() + 3 * self.boundary - 6 * self.chain_length;
        assert!(twice % 2 == 0, "quadric order must be integral");
        twice / 2
    }

    /// Number of deletion points: `B - 2B_I`.
    pub fn deletion_size(&self) -> i64 {
        self.boundary - 2 * self.chain_length
    }
}

/// Area, boundary count and chain length for a support and chain.
pub fn ehrhart(spec: &SupportSpec, chain: &EdgeChain) -> Result<EhrhartData, GeomError> {
    chain.validate(spec)?;
    let hull = spec.hull();
    let v = hull.len();
    let mut twice_area: i128 = 0;
    let mut boundary = 0i64;
    for i in 0..v {
        let a = hull[i];
        let b = hull[(i + 1) % v];
        twice_area += a.a1 as i128 * b.a2 as i128 - b.a1 as i128 * a.a2 as i128;
        boundary += edge_lattice_length(a, b);
    }
    let mut chain_length = 0i64;
    for j in 0..chain.edges {
        let a = hull[(chain.start + j) % v];
        let b = hull[(chain.start + j + 1) % v];
        chain_length += edge_lattice_length(a, b);
    }
    Ok(EhrhartData {
        area: Ratio::new(twice_area as i64, 2),
        boundary,
        chain_length,
    })
}

/// All lattice points of `k * Q` (hull scaled vertexwise), ascending lex.
pub fn lattice_points_in_dilate(spec: &SupportSpec, k: i64) -> Vec<LatticePoint> {
    assert!(k >= 1, "dilation factor must be >= 1");
    let hull: Vec<LatticePoint> = spec.hull().iter().map(|p| p.scale(k)).collect();
    let v = hull.len();
    let (min1, max1) = hull
        .iter()
        .fold((i64::MAX, i64::MIN), |(lo, hi), p| (lo.min(p.a1), hi.max(p.a1)));
    let (min2, max2) = hull
        .iter()
        .fold((i64::MAX, i64::MIN), |(lo, hi), p| (lo.min(p.a2), hi.max(p.a2)));
    let mut out = Vec::new();
    for a1 in min1..=max1 {
        for a2 in min2..=max2 {
            let p = LatticePoint::new(a1, a2);
            if (0..v).all(|i| cross(hull[i], hull[(i + 1) % v], p) >= 0) {
                out.push(p);
            }
        }
    }
    out
}

/// Lattice points lying on the `k`-dilated chain polyline, ascending lex.
pub fn chain_points_in_dilate(
    spec: &SupportSpec,
    chain: &EdgeChain,
    k: i64,
) -> Result<Vec<LatticePoint>, GeomError> {
    assert!(k >= 1, "dilation factor must be >= 1");
    let verts = chain.vertices(spec)?;
    let mut pts: BTreeSet<LatticePoint> = BTreeSet::new();
    for w in verts.windows(2) {
        let (u, v) = (w[0].scale(k), w[1].scale(k));
        let g = edge_lattice_length(u, v);
        let step = LatticePoint::new((v.a1 - u.a1) / g, (v.a2 - u.a2) / g);
        for s in 0..=g {
            pts.insert(u.add(step.scale(s)));
        }
    }
    Ok(pts.into_iter().collect())
}

/// Monomial basis of `S_{kQ \ kE_I}`: the dilate's lattice points with the
/// dilated chain's points removed, ascending lex.
pub fn support_basis(
    spec: &SupportSpec,
    chain: &EdgeChain,
    k: i64,
) -> Result<Vec<LatticePoint>, GeomError> {
    let on_chain: BTreeSet<LatticePoint> =
        chain_points_in_dilate(spec, chain, k)?.into_iter().collect();
    Ok(lattice_points_in_dilate(spec, k)
        .into_iter()
        .filter(|p| !on_chain.contains(p))
        .collect())
}

/// On-disk form of a support: point list plus an optional default chain.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SupportFile {
    pub points: Vec<[i64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<EdgeChain>,
}

impl SupportFile {
    pub fn to_spec(&self) -> Result<SupportSpec, GeomError> {
        SupportSpec::new(
            self.points
                .iter()
                .map(|&[a1, a2]| LatticePoint::new(a1, a2))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<LatticePoint> {
        v.iter().map(|&(a, b)| LatticePoint::new(a, b)).collect()
    }

    #[test]
    fn hull_rectangle_grid() {
        // [0,2] x [0,1], all 6 points
        let spec = SupportSpec::rectangle(2, 1);
        assert_eq!(
            spec.hull(),
            pts(&[(0, 0), (2, 0), (2, 1), (0, 1)]).as_slice()
        );
    }

    #[test]
    fn hull_drops_edge_interior_point() {
        let hull = convex_hull(&pts(&[(0, 0), (2, 0), (0, 2), (1, 1)])).unwrap();
        assert_eq!(hull, pts(&[(0, 0), (2, 0), (0, 2)]));
    }

    #[test]
    fn hull_collinear_rejected() {
        assert_eq!(
            convex_hull(&pts(&[(0, 0), (1, 0), (2, 0)])).unwrap_err(),
            GeomError::DegenerateSupport
        );
        assert_eq!(
            convex_hull(&pts(&[(0, 0), (1, 1)])).unwrap_err(),
            GeomError::DegenerateSupport
        );
    }

    #[test]
    fn hull_idempotent_on_vertices() {
        let spec = SupportSpec::new(pts(&[(0, 0), (3, 0), (1, 1), (0, 1), (2, 0)])).unwrap();
        let again = convex_hull(spec.hull()).unwrap();
        assert_eq!(again, spec.hull());
    }

    #[test]
    fn ehrhart_rectangle() {
        // [0,m]x[0,n] with the two edges through (m,n)
        for (m, n) in [(2i64, 1i64), (3, 3), (1, 4)] {
            let spec = SupportSpec::rectangle(m, n);
            let chain = EdgeChain::new(1, 2);
            let e = ehrhart(&spec, &chain).unwrap();
            assert_eq!(e.area, Ratio::from_integer(m * n));
            assert_eq!(e.boundary, 2 * m + 2 * n);
            assert_eq!(e.chain_length, m + n);
            assert_eq!(e.dilate_count(1), (m + 1) * (n + 1));
        }
    }

    #[test]
    fn ehrhart_triangle() {
        // conv{(0,0),(3,0),(0,3)}, chain = hypotenuse
        let spec = SupportSpec::new(pts(&[(0, 0), (3, 0), (0, 3)])).unwrap();
        let chain = EdgeChain::new(1, 1);
        let e = ehrhart(&spec, &chain).unwrap();
        assert_eq!(e.area, Ratio::new(9, 2));
        assert_eq!(e.boundary, 9);
        assert_eq!(e.chain_length, 3);
    }

    #[test]
    fn unit_square_pick() {
        let spec = SupportSpec::rectangle(1, 1);
        let e = ehrhart(&spec, &EdgeChain::new(1, 2)).unwrap();
        assert_eq!(e.dilate_count(1), 4); // (1+1)(1+1)
    }

    #[test]
    fn dilate_counts() {
        let spec = SupportSpec::rectangle(2, 1);
        assert_eq!(lattice_points_in_dilate(&spec, 2).len(), 5 * 3);

        let tri = SupportSpec::new(pts(&[(0, 0), (2, 0), (0, 2)])).unwrap();
        assert_eq!(lattice_points_in_dilate(&tri, 1).len(), 6);
        // A=2, B=6: E(3) = 2*9 + 3*3 + 1 = 28
        assert_eq!(lattice_points_in_dilate(&tri, 3).len(), 28);
    }

    #[test]
    fn chain_points_unit_square() {
        let spec = SupportSpec::rectangle(1, 1);
        let chain = EdgeChain::new(1, 2); // (1,0) -> (1,1) -> (0,1)
        let got = chain_points_in_dilate(&spec, &chain, 1).unwrap();
        assert_eq!(got, pts(&[(0, 1), (1, 0), (1, 1)]));
        assert_eq!(chain_points_in_dilate(&spec, &chain, 2).unwrap().len(), 5);
    }

    #[test]
    fn chain_points_triangle_hypotenuse() {
        let tri = SupportSpec::new(pts(&[(0, 0), (3, 0), (0, 3)])).unwrap();
        let chain = EdgeChain::new(1, 1);
        assert_eq!(chain_points_in_dilate(&tri, &chain, 2).unwrap().len(), 7);
    }

    #[test]
    fn support_basis_rectangle_is_inner_grid() {
        for (m, n) in [(2i64, 1i64), (3, 2)] {
            let spec = SupportSpec::rectangle(m, n);
            let chain = EdgeChain::new(1, 2);
            let basis = support_basis(&spec, &chain, 1).unwrap();
            let expected: Vec<LatticePoint> = (0..m)
                .flat_map(|a1| (0..n).map(move |a2| LatticePoint::new(a1, a2)))
                .collect();
            assert_eq!(basis, expected);
            assert_eq!(
                support_basis(&spec, &chain, 2).unwrap().len() as i64,
                4 * m * n
            );
        }
    }

    #[test]
    fn support_basis_triangle() {
        let tri = SupportSpec::new(pts(&[(0, 0), (2, 0), (0, 2)])).unwrap();
        let chain = EdgeChain::new(1, 1);
        let basis = support_basis(&tri, &chain, 1).unwrap();
        assert_eq!(basis, pts(&[(0, 0), (0, 1), (1, 0)]));
    }

    #[test]
    fn invalid_chain_rejected() {
        let spec = SupportSpec::rectangle(1, 1);
        assert!(EdgeChain::new(4, 1).validate(&spec).is_err());
        assert!(EdgeChain::new(0, 0).validate(&spec).is_err());
        assert!(EdgeChain::new(0, 5).validate(&spec).is_err());
    }
}
