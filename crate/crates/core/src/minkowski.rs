//! Weighted Minkowski sums `(1 − λ)P ⊕ λQ` of two polytopes.
//!
//! With `P` stacked at height 0 and `Q` at height 1, the hull meets the
//! plane `x_{d+1} = λ` exactly in `{((1 − λ)p + λq, λ)}` over `p ∈ P`,
//! `q ∈ Q`, so the section is the sum. A section vertex on the edge from
//! `(p, 0)` to `(q, 1)` is already the point `(1 − λ)p + λq` with `λ`
//! appended; dropping the last coordinate realizes the sum. For the plain
//! sum `P ⊕ Q`, take `λ = 1/2` and scale by 2.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exact::{Hyperplane, Point, Rational};
use crate::lattice::{hull, slice, FaceLattice};
use crate::parallel::{stacked_hull, Layer, LayeredPointSet};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedSumSpec {
    pub p: Vec<Point>,
    pub q: Vec<Point>,
    pub lambda: Rational,
}

impl WeightedSumSpec {
    pub fn new(p: Vec<Point>, q: Vec<Point>, lambda: Rational) -> Result<Self> {
        if p.is_empty() || q.is_empty() {
            return Err(Error::EmptyInput);
        }
        if !(lambda > Rational::zero() && lambda < Rational::one()) {
            return Err(Error::InvalidInput(alloc::format!("weight {lambda} is not in (0, 1)")));
        }
        let d = p[0].dim();
        if let Some(x) = p.iter().chain(&q).find(|x| x.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: x.dim() });
        }
        Ok(WeightedSumSpec { p, q, lambda })
    }

    pub fn dim(&self) -> usize {
        self.p[0].dim()
    }

    fn layered(&self) -> Result<LayeredPointSet> {
        LayeredPointSet::new(
            self.dim(),
            alloc::vec![
                Layer { height: Rational::zero(), points: self.p.clone() },
                Layer { height: Rational::one(), points: self.q.clone() },
            ],
        )
    }
}

/// Face lattice of `(1 − λ)P ⊕ λQ` as a section of the stacked hull.
pub fn weighted_minkowski(spec: &WeightedSumSpec) -> Result<FaceLattice> {
    let d = spec.dim();
    let lifted = stacked_hull(&spec.layered()?)?;
    let section = slice(&lifted, &Hyperplane::axis(d + 1, d, spec.lambda.clone()))?;
    let lambda = spec.lambda.clone();
    Ok(section.lattice.map_geometry(d, Point::projected, move |h| {
        let (b, a) = h.normal.split_last().expect("lifted normals are non-empty");
        Hyperplane { normal: a.to_vec(), offset: &h.offset - b * &lambda }
    }))
}

/// Hull of all `|P|·|Q|` points `(1 − λ)p + λq`.
pub fn minkowski_oracle(spec: &WeightedSumSpec) -> Result<FaceLattice> {
    let sums: Vec<Point> = spec.p.iter().flat_map(|p| spec.q.iter().map(|q| p.lerp(q, &spec.lambda))).collect();
    hull(&sums)
}

/// `n·m^⌊d/2⌋ + m·n^⌊d/2⌋`, the order of the worst-case face count of a sum
/// of an `n`-vertex and an `m`-vertex polytope in odd dimension `d ≥ 3`.
pub fn sum_bound(n: u64, m: u64, d: u32) -> u128 {
    let (n, m, e) = (n as u128, m as u128, d / 2);
    n * m.pow(e) + m * n.pow(e)
}
