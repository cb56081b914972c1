//! Assignments of field or `F_p[t]` values to the generic coefficients,
//! including the structured specializations the identity checks rely on:
//! corner-only, one-layer-times-t, block scaling and weight scaling.

use super::template::CoefficientIndex;
use super::BuildError;
use crate::exactalg::{PrimeField, UniPoly};
use crate::latticegeom::LatticePoint;
use rand::Rng;
use std::collections::BTreeMap;

/// Which exponent coordinate a weight or layer refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    One,
    Two,
}

impl Axis {
    pub fn coord(&self, p: LatticePoint) -> i64 {
        match self {
            Axis::One => p.a1,
            Axis::Two => p.a2,
        }
    }

    pub fn index(&self) -> u8 {
        match self {
            Axis::One => 1,
            Axis::Two => 2,
        }
    }
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "axis{}", self.index())
    }
}

/// Total map from coefficient indices to field elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldAssignment {
    field: PrimeField,
    values: BTreeMap<CoefficientIndex, u64>,
}

impl FieldAssignment {
    pub fn new(field: PrimeField) -> Self {
        FieldAssignment {
            field,
            values: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn set(&mut self, idx: CoefficientIndex, v: u64) {
        debug_assert!(v < self.field.modulus());
        self.values.insert(idx, v);
    }

    pub fn get(&self, idx: CoefficientIndex) -> Result<u64, BuildError> {
        self.values
            .get(&idx)
            .copied()
            .ok_or(BuildError::IncompleteAssignment(idx))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CoefficientIndex, &u64)> {
        self.values.iter()
    }

    /// Uniform random values on all four blocks over the support.
    pub fn random<R: Rng>(field: PrimeField, support: &[LatticePoint], rng: &mut R) -> Self {
        let mut asg = Self::new(field);
        for block in 1..=4u8 {
            for &point in support {
                asg.set(
                    CoefficientIndex { block, point },
                    field.rand_element(rng),
                );
            }
        }
        asg
    }

    /// Constant value everywhere (the all-ones assignment makes every block
    /// row equal, so the plane matrix goes singular).
    pub fn constant(field: PrimeField, support: &[LatticePoint], v: u64) -> Self {
        let mut asg = Self::new(field);
        for block in 1..=4u8 {
            for &point in support {
                asg.set(CoefficientIndex { block, point }, v);
            }
        }
        asg
    }

    /// The corner specialization: random on the four rectangle corners,
    /// zero elsewhere.
    pub fn corner_random<R: Rng>(field: PrimeField, m: i64, n: i64, rng: &mut R) -> Self {
        let corners = [
            LatticePoint::new(0, 0),
            LatticePoint::new(m, 0),
            LatticePoint::new(0, n),
            LatticePoint::new(m, n),
        ];
        let mut asg = Self::new(field);
        for block in 1..=4u8 {
            for a1 in 0..=m {
                for a2 in 0..=n {
                    let point = LatticePoint::new(a1, a2);
                    let v = if corners.contains(&point) {
                        field.rand_element(rng)
                    } else {
                        0
                    };
                    asg.set(CoefficientIndex { block, point }, v);
                }
            }
        }
        asg
    }

    /// Multiply one block's coefficients by `lambda`.
    pub fn scale_block(&self, block: u8, lambda: u64) -> Self {
        let mut out = self.clone();
        for (idx, v) in out.values.iter_mut() {
            if idx.block == block {
                *v = self.field.mul(*v, lambda);
            }
        }
        out
    }

    /// Multiply each coefficient by `lambda^w` where `w` is the chosen
    /// exponent coordinate of its support point; `None` scales uniformly.
    pub fn scale_weight(&self, axis: Option<Axis>, lambda: u64) -> Self {
        let mut out = self.clone();
        for (idx, v) in out.values.iter_mut() {
            let w = match axis {
                Some(ax) => ax.coord(idx.point) as u64,
                None => 1,
            };
            *v = self.field.mul(*v, self.field.pow(lambda, w));
        }
        out
    }
}

/// Total map from coefficient indices to `F_p[t]` values.
#[derive(Debug, Clone)]
pub struct PolyAssignment {
    field: PrimeField,
    values: BTreeMap<CoefficientIndex, UniPoly>,
}

impl PolyAssignment {
    pub fn new(field: PrimeField) -> Self {
        PolyAssignment {
            field,
            values: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn set(&mut self, idx: CoefficientIndex, v: UniPoly) {
        self.values.insert(idx, v);
    }

    pub fn get(&self, idx: CoefficientIndex) -> Result<&UniPoly, BuildError> {
        self.values
            .get(&idx)
            .ok_or(BuildError::IncompleteAssignment(idx))
    }

    /// The one-layer deformation: coefficients whose chosen exponent
    /// coordinate is zero become `t * (random value)`, the rest stay random
    /// constants.
    pub fn t_layer_random<R: Rng>(
        field: PrimeField,
        support: &[LatticePoint],
        axis: Axis,
        rng: &mut R,
    ) -> Self {
        let mut asg = Self::new(field);
        for block in 1..=4u8 {
            for &point in support {
                let v = field.rand_element(rng);
                let poly = if axis.coord(point) == 0 {
                    UniPoly::linear(field, v)
                } else {
                    UniPoly::constant(field, v)
                };
                asg.set(CoefficientIndex { block, point }, poly);
            }
        }
        asg
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::DEFAULT_PRIME;
    use crate::verify::trial_rng;

    fn field() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    fn support() -> Vec<LatticePoint> {
        vec![
            LatticePoint::new(0, 0),
            LatticePoint::new(0, 1),
            LatticePoint::new(1, 0),
            LatticePoint::new(1, 1),
        ]
    }

    #[test]
    fn missing_value_reported() {
        let asg = FieldAssignment::new(field());
        let idx = CoefficientIndex {
            block: 1,
            point: LatticePoint::new(0, 0),
        };
        assert!(matches!(
            asg.get(idx),
            Err(BuildError::IncompleteAssignment(i)) if i == idx
        ));
    }

    #[test]
    fn block_scaling_touches_one_block() {
        let mut rng = trial_rng(7, "asg-test", 0);
        let asg = FieldAssignment::random(field(), &support(), &mut rng);
        let scaled = asg.scale_block(2, 5);
        for (idx, v) in asg.iter() {
            let w = scaled.get(*idx).unwrap();
            if idx.block == 2 {
                assert_eq!(w, field().mul(*v, 5));
            } else {
                assert_eq!(w, *v);
            }
        }
    }

    #[test]
    fn weight_scaling_uses_coordinate() {
        let mut rng = trial_rng(8, "asg-test", 0);
        let asg = FieldAssignment::random(field(), &support(), &mut rng);
        let scaled = asg.scale_weight(Some(Axis::Two), 3);
        for (idx, v) in asg.iter() {
            let expect = field().mul(*v, field().pow(3, idx.point.a2 as u64));
            assert_eq!(scaled.get(*idx).unwrap(), expect);
        }
    }

    #[test]
    fn t_layer_degrees() {
        let mut rng = trial_rng(9, "asg-test", 0);
        let asg = PolyAssignment::t_layer_random(field(), &support(), Axis::One, &mut rng);
        for (idx, poly) in asg.values.iter() {
            if idx.point.a1 == 0 {
                assert_eq!(poly.coeff(0), 0);
            } else {
                assert!(poly.degree() <= Some(0));
            }
        }
    }
}
