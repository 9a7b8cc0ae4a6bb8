//! Normal cones of lifted faces and the Lorentz-cone membership test.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::exact::{dot, min_norm_qp, orthogonal_complement, rank, sub, Rational};
use crate::lattice::FaceLattice;

/// Generators of the normal cone of a face of a lifted hull in `E^{d+1}`,
/// each split into its horizontal part `u ∈ E^d` and vertical part `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalConeGenerators {
    pub face: usize,
    /// Outward normals of the facets containing the face.
    pub generators: Vec<(Vec<Rational>, Rational)>,
    /// Basis of the orthogonal complement of the hull's affine span; both
    /// signs of each vector belong to the cone.
    pub lineality_basis: Vec<(Vec<Rational>, Rational)>,
}

fn split(v: &[Rational]) -> (Vec<Rational>, Rational) {
    let (t, u) = v.split_last().expect("lifted vectors are non-empty");
    (u.to_vec(), t.clone())
}

impl NormalConeGenerators {
    pub fn for_face(lattice: &FaceLattice, face: usize) -> Self {
        let top = lattice.intrinsic_dim as i32;
        let mut up = alloc::collections::BTreeSet::new();
        let mut stack = alloc::vec![face];
        if lattice.face(face).dim == top - 1 {
            up.insert(face);
        }
        while let Some(g) = stack.pop() {
            for &h in &lattice.face(g).superfaces {
                if up.insert(h) {
                    stack.push(h);
                }
            }
        }
        let generators = up
            .into_iter()
            .filter_map(|g| {
                let g = lattice.face(g);
                (g.dim == top - 1).then_some(g.hyperplane.as_ref()).flatten().map(|h| split(&h.normal))
            })
            .collect();
        let lineality_basis = if lattice.is_full_dimensional() { Vec::new() } else { lineality(lattice) };
        NormalConeGenerators { face, generators, lineality_basis }
    }

    /// All generators with the lineality directions in both orientations.
    pub fn all(&self) -> Vec<(Vec<Rational>, Rational)> {
        let mut out = self.generators.clone();
        for (u, t) in &self.lineality_basis {
            out.push((u.clone(), t.clone()));
            out.push((u.iter().map(|x| -x).collect(), -t));
        }
        out
    }
}

/// Orthogonal complement of the directions spanned by the lattice vertices.
pub(crate) fn lineality(lattice: &FaceLattice) -> Vec<(Vec<Rational>, Rational)> {
    let verts = lattice.vertex_ids();
    let base = &lattice.points[verts[0]];
    let dirs: Vec<Vec<Rational>> = verts[1..].iter().map(|&v| sub(&lattice.points[v], base)).collect();
    let dim = lattice.ambient_dim;
    let basis = if dirs.is_empty() || rank(&dirs) == 0 {
        orthogonal_complement(&[alloc::vec![Rational::zero(); dim]], dim)
    } else {
        orthogonal_complement(&dirs, dim)
    };
    basis.iter().map(|b| split(b)).collect()
}

/// Sign of `t − ‖u‖`, decided exactly through squares.
pub fn lorentz_sign(u: &[Rational], t: &Rational) -> core::cmp::Ordering {
    use core::cmp::Ordering::*;
    let nu = dot(u, u);
    if t.is_negative() {
        return Less;
    }
    (t * t).cmp(&nu)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Membership {
    Pass,
    Fail,
    Degenerate,
}

/// Position of the slice `t = 1` of a normal cone relative to the open
/// unit ball: `min ‖u‖²` below, at or above 1, or no vector with `t > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Reach {
    Inside,
    Touching,
    Outside,
    Empty,
}

/// A generator strictly inside the Lorentz cone settles `Inside` without
/// the QP.
pub(crate) fn reach(gens: &[(Vec<Rational>, Rational)]) -> Reach {
    use core::cmp::Ordering::*;
    if gens.iter().any(|(u, t)| lorentz_sign(u, t) == Greater) {
        return Reach::Inside;
    }
    match min_norm_qp(gens) {
        None => Reach::Empty,
        Some(s) => match s.min_sq.cmp(&Rational::from_integer(1.into())) {
            Less => Reach::Inside,
            Equal => Reach::Touching,
            Greater => Reach::Outside,
        },
    }
}

/// Decides whether the relative interior of the normal cone contains some
/// `(u, t)` with `t = ‖u‖ > 0`.
///
/// The cone minus the origin is connected (its dimension is at least 2 for
/// faces below the facets), so such a vector exists once the relative
/// interior has a point strictly outside the Lorentz cone `t ≥ ‖u‖` and one
/// strictly inside it. Outside is witnessed by a generator with `t < ‖u‖`.
/// Inside is witnessed by a generator with `t > ‖u‖`, or by the minimum of
/// `‖u‖²` over the cone's slice `t = 1` being below 1. Witnesses exactly on
/// the Lorentz boundary make the answer `Degenerate`.
pub fn gauss_membership(cone: &NormalConeGenerators) -> Membership {
    let gens = cone.all();
    membership_given(&gens, reach(&gens))
}

pub(crate) fn membership_given(gens: &[(Vec<Rational>, Rational)], reach: Reach) -> Membership {
    use core::cmp::Ordering::*;
    if gens.is_empty() {
        return Membership::Fail;
    }
    let signs: Vec<_> = gens.iter().map(|(u, t)| lorentz_sign(u, t)).collect();
    let boundary = signs.contains(&Equal);
    let outside = if signs.contains(&Less) {
        Some(true)
    } else if boundary {
        None
    } else {
        Some(false)
    };
    let inside = match reach {
        Reach::Inside => Some(true),
        Reach::Touching => None,
        _ if boundary => None,
        _ => Some(false),
    };
    match (outside, inside) {
        (Some(true), Some(true)) => Membership::Pass,
        (Some(false), _) | (_, Some(false)) => Membership::Fail,
        _ => Membership::Degenerate,
    }
}
