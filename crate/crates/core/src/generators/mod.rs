//! Rational instance generators: points on the trigonometric moment curve,
//! the lower-bound sphere families, and seeded random inputs.

mod lower_bound;

pub use lower_bound::{
    check_conditions, lb2_instance, lbm_instance, Certificate, Check, Condition, LowerBoundInstance,
};

use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::exact::{int, rat, Point, Rational};
use crate::parallel::{Layer, LayeredPointSet};
use crate::rng::{self, Rng};
use crate::sphere::{Sphere, SphereSet};
use crate::{Error, Result};

/// Points `γ(t) = (cos t, sin t, …, cos δt, sin δt)` given by `s = tan(t/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentCurveParams {
    pub delta: usize,
    pub s: Vec<Rational>,
}

impl MomentCurveParams {
    pub fn new(delta: usize, s: Vec<Rational>) -> Result<Self> {
        if delta == 0 {
            return Err(Error::InvalidInput("moment curve needs δ ≥ 1".into()));
        }
        if s.iter().any(|v| !v.is_positive()) {
            return Err(Error::InvalidInput("curve parameters must be positive".into()));
        }
        let mut sorted = s.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("curve parameters must be distinct".into()));
        }
        Ok(MomentCurveParams { delta, s })
    }

    /// `s = 1, 2, …, n`: angles spread over `(π/2, π)` after the first.
    pub fn integers(delta: usize, n: usize) -> Self {
        MomentCurveParams { delta, s: (1..=n as i64).map(int).collect() }
    }
}

/// One point of the curve; its squared norm is exactly `δ`.
pub fn moment_curve_point(delta: usize, s: &Rational) -> Point {
    let den = Rational::one() + s * s;
    let c1 = (Rational::one() - s * s) / &den;
    let s1 = int(2) * s / &den;
    let two_c = int(2) * &c1;
    let mut coords = Vec::with_capacity(2 * delta);
    let (mut c_prev, mut s_prev) = (Rational::one(), int(0));
    let (mut c, mut sn) = (c1, s1);
    for _ in 0..delta {
        coords.push(c.clone());
        coords.push(sn.clone());
        let c_next = &two_c * &c - &c_prev;
        let s_next = &two_c * &sn - &s_prev;
        c_prev = core::mem::replace(&mut c, c_next);
        s_prev = core::mem::replace(&mut sn, s_next);
    }
    Point::new(coords)
}

pub fn moment_curve_points(params: &MomentCurveParams) -> Vec<Point> {
    params.s.iter().map(|s| moment_curve_point(params.delta, s)).collect()
}

/// `count` distinct curve parameters `k/den` with `0 < k/den < bound`,
/// sorted increasingly.
pub(crate) fn distinct_parameters(rng: &mut Rng, count: usize, bound: &Rational) -> Vec<Rational> {
    let den = 4 * (count as i64 + 1);
    let slots = (bound * int(den)).ceil().to_integer();
    let slots: i64 = i64::try_from(slots).expect("parameter bound is small") - 1;
    assert!(slots >= count as i64, "not enough parameter slots");
    let perm = rng::permutation(rng, slots as usize);
    let mut ks: Vec<i64> = perm[..count].iter().map(|&k| k as i64 + 1).collect();
    ks.sort_unstable();
    ks.into_iter().map(|k| rat(k, den)).collect()
}

/// Random layered point set: `counts[i]` points of `E^d` with coordinates in
/// `[−range, range]` (denominator `den`) on layer `i` at height `i`.
pub fn random_layered(rng: &mut Rng, d: usize, counts: &[usize], range: i64, den: i64) -> LayeredPointSet {
    let layers = counts
        .iter()
        .enumerate()
        .map(|(i, &n)| Layer {
            height: int(i as i64),
            points: (0..n).map(|_| rng::point_in_box(rng, d, range, den)).collect(),
        })
        .collect();
    LayeredPointSet::new(d, layers).expect("heights increase")
}

/// Random spheres: `counts[i]` centers in `[−range, range]^d` with radius
/// `(i + 1)/(2m)` for the `i`-th of `m` classes.
pub fn random_spheres(rng: &mut Rng, d: usize, counts: &[usize], range: i64) -> SphereSet {
    let m = counts.len() as i64;
    let mut spheres = Vec::new();
    for (i, &n) in counts.iter().enumerate() {
        let radius = rat(i as i64 + 1, 2 * m);
        for _ in 0..n {
            spheres.push(Sphere::new(rng::point_in_box(rng, d, range, 4), radius.clone()));
        }
    }
    SphereSet::new(d, spheres).expect("dimensions agree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::dot;
    use crate::lattice::hull;

    #[test]
    fn quarter_turn() {
        let p = moment_curve_point(2, &int(1));
        assert_eq!(p, Point::from_ints(&[0, 1, -1, 0]));
    }

    #[test]
    fn half_parameter_point() {
        let p = moment_curve_point(2, &rat(1, 2));
        assert_eq!(p.0, vec![rat(3, 5), rat(4, 5), rat(-7, 25), rat(24, 25)]);
        assert_eq!(dot(&p, &p), int(2));
    }

    #[test]
    fn norms_are_exactly_delta() {
        for delta in 1..5 {
            for s in [rat(1, 7), rat(2, 3), int(3), rat(11, 4)] {
                let p = moment_curve_point(delta, &s);
                assert_eq!(p.sq_norm(), int(delta as i64));
            }
        }
    }

    #[test]
    fn eight_points_span_a_cyclic_polytope() {
        let pts = moment_curve_points(&MomentCurveParams::integers(2, 8));
        let l = hull(&pts).unwrap();
        assert_eq!(l.facets().count(), 20);
        assert_eq!(l.vertex_ids().len(), 8);
    }

    #[test]
    fn params_are_validated() {
        assert!(MomentCurveParams::new(2, vec![int(1), int(1)]).is_err());
        assert!(MomentCurveParams::new(2, vec![int(0)]).is_err());
        assert!(MomentCurveParams::new(0, vec![int(1)]).is_err());
    }

    #[test]
    fn distinct_parameters_are_sorted_and_bounded() {
        let mut r = rng::stream(5, 0);
        let s = distinct_parameters(&mut r, 30, &rat(1, 2));
        assert_eq!(s.len(), 30);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert!(s.iter().all(|v| v.is_positive() && *v < rat(1, 2)));
    }
}
