//! Exact scalars, points, hyperplanes and the two small optimizers every
//! other module leans on.

mod linalg;
mod lp;
mod qp;
mod rational;

pub use linalg::{
    affine_rank, det, dot, nullspace, orient, orthogonal_complement, rank, row_reduce, solve,
    sub, RowEchelon,
};
pub use lp::{lp_interior_point, max_slack, snap_strict, LpOutcome};
pub use qp::{min_norm_qp, QpSolution};
pub use rational::{format_rational, int, parse_rational, rat, Point, Rational};

use alloc::vec::Vec;
use num_traits::{Signed, Zero};

use crate::{Error, Result};

/// An oriented hyperplane `{x : normal·x = offset}`; its positive side is
/// `normal·x > offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        if normal.iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput("hyperplane normal is zero".into()));
        }
        Ok(Hyperplane { normal, offset })
    }

    /// Horizontal hyperplane `x_axis = value` in `dim` dimensions.
    pub fn axis(dim: usize, axis: usize, value: Rational) -> Self {
        let mut normal = alloc::vec![Rational::zero(); dim];
        normal[axis] = int(1);
        Hyperplane { normal, offset: value }
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `normal·x − offset`; positive beyond, negative beneath.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        dot(&self.normal, x) - &self.offset
    }

    pub fn side(&self, x: &[Rational]) -> core::cmp::Ordering {
        let v = self.eval(x);
        if v.is_positive() {
            core::cmp::Ordering::Greater
        } else if v.is_negative() {
            core::cmp::Ordering::Less
        } else {
            core::cmp::Ordering::Equal
        }
    }

    pub fn flipped(&self) -> Self {
        Hyperplane {
            normal: self.normal.iter().map(|c| -c).collect(),
            offset: -&self.offset,
        }
    }

    /// Scales so the first non-zero normal entry is ±1, giving one
    /// representative per oriented hyperplane.
    pub fn normalized(&self) -> Self {
        let lead = self
            .normal
            .iter()
            .find(|c| !c.is_zero())
            .expect("hyperplane normal is zero")
            .abs();
        Hyperplane {
            normal: self.normal.iter().map(|c| c / &lead).collect(),
            offset: &self.offset / &lead,
        }
    }

    /// Squared Euclidean distance from `x` to the hyperplane.
    pub fn sq_distance(&self, x: &[Rational]) -> Rational {
        let v = self.eval(x);
        &v * &v / dot(&self.normal, &self.normal)
    }
}
