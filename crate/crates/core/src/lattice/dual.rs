//! Polar duals.

use alloc::vec::Vec;

use num_traits::{One, Signed};

use super::FaceLattice;
use crate::exact::{dot, sub, Hyperplane, Point, Rational};
use crate::{Error, Result};

/// Polar of a full-dimensional polytope about an interior `center`.
///
/// Facet `a·x ≤ b` becomes the vertex `center + a/(b − a·center)` (vertex id =
/// index of the facet among the input's facets, in canonical order). Vertex `v`
/// becomes the facet `(v − c)·x ≤ 1 + (v − c)·c`, so the pole of that facet is
/// `v` again and taking the dual twice about the same center returns the
/// input exactly.
pub fn polar_dual(lattice: &FaceLattice, center: &Point) -> Result<FaceLattice> {
    if !lattice.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            intrinsic: lattice.intrinsic_dim,
            ambient: lattice.ambient_dim,
        });
    }
    if center.dim() != lattice.ambient_dim {
        return Err(Error::DimensionMismatch { expected: lattice.ambient_dim, found: center.dim() });
    }
    let facets: Vec<_> = lattice.facets().collect();
    let mut poles = Vec::with_capacity(facets.len());
    for f in &facets {
        let h = f.hyperplane.as_ref().expect("facets carry hyperplanes");
        let beta = &h.offset - dot(&h.normal, center);
        if !beta.is_positive() {
            return Err(Error::CenterNotInterior);
        }
        poles.push(Point::new(
            center.iter().zip(&h.normal).map(|(c, n)| c + n / &beta).collect(),
        ));
    }
    let dual_facets: Vec<(Hyperplane, Vec<usize>)> = lattice
        .vertex_ids()
        .into_iter()
        .map(|v| {
            let normal: Vec<Rational> = sub(&lattice.points[v], center);
            let offset = Rational::one() + dot(&normal, center);
            let verts = facets
                .iter()
                .enumerate()
                .filter(|(_, f)| f.vertices.binary_search(&v).is_ok())
                .map(|(i, _)| i)
                .collect();
            (Hyperplane { normal, offset }, verts)
        })
        .collect();
    Ok(FaceLattice::from_facets(lattice.ambient_dim, lattice.intrinsic_dim, poles, dual_facets))
}
