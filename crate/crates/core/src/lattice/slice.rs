//! Hyperplane sections.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::{is_subset, FaceLattice};
use crate::exact::{Hyperplane, Point, Rational};
use crate::{Error, Result};

/// Section of a polytope by a hyperplane, with the generating face of every
/// section face.
#[derive(Debug, Clone)]
pub struct Section {
    pub lattice: FaceLattice,
    /// `generators[id]` is the face of the input whose relative interior
    /// meets the plane in the relative interior of section face `id`.
    pub generators: Vec<usize>,
}

/// Intersects `lattice` with `plane`, which must pass through the relative
/// interior of the polytope.
///
/// Section vertices are the input vertices on the plane (in id order)
/// followed by the crossing points of edges with endpoints strictly on both
/// sides (in edge id order). A face crossing the plane yields a section face
/// one dimension lower; a face lying inside the plane yields itself.
pub fn slice(lattice: &FaceLattice, plane: &Hyperplane) -> Result<Section> {
    if plane.dim() != lattice.ambient_dim {
        return Err(Error::DimensionMismatch { expected: lattice.ambient_dim, found: plane.dim() });
    }
    let mut value: BTreeMap<usize, Rational> = BTreeMap::new();
    for v in lattice.vertex_ids() {
        value.insert(v, plane.eval(&lattice.points[v]));
    }
    let crosses = |verts: &[usize]| {
        verts.iter().any(|v| value[v].is_negative()) && verts.iter().any(|v| value[v].is_positive())
    };
    let top = lattice.top();
    if !crosses(&top.vertices) {
        return Err(Error::PlaneMissesInterior);
    }

    let mut points: Vec<Point> = Vec::new();
    let mut on_plane: BTreeMap<usize, usize> = BTreeMap::new();
    for (&v, s) in &value {
        if s.is_zero() {
            on_plane.insert(v, points.len());
            points.push(lattice.points[v].clone());
        }
    }
    let mut edge_points: Vec<(usize, usize)> = Vec::new();
    for e in lattice.faces_of_dim(1) {
        if crosses(&e.vertices) {
            let (a, b) = (e.vertices[0], e.vertices[1]);
            let t = &value[&a] / (&value[&a] - &value[&b]);
            edge_points.push((e.id, points.len()));
            points.push(lattice.points[a].lerp(&lattice.points[b], &t));
        }
    }

    // Section vertex set and dimension of each generating face.
    let k = lattice.intrinsic_dim as i32;
    let mut generated: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut facets: Vec<(Hyperplane, Vec<usize>)> = Vec::new();
    for f in lattice.faces().iter().filter(|f| f.dim >= 0) {
        let contained = f.vertices.iter().all(|v| value[v].is_zero());
        if !contained && !crosses(&f.vertices) {
            continue;
        }
        let mut verts: Vec<usize> = f.vertices.iter().filter_map(|v| on_plane.get(v).copied()).collect();
        for &(e, p) in &edge_points {
            if is_subset(&lattice.face(e).vertices, &f.vertices) {
                verts.push(p);
            }
        }
        verts.sort_unstable();
        let dim = if contained { f.dim } else { f.dim - 1 };
        if dim == k - 2 {
            let h = match &f.hyperplane {
                Some(h) if !contained => h.clone(),
                _ => f
                    .superfaces
                    .iter()
                    .find_map(|&g| lattice.face(g).hyperplane.clone())
                    .expect("a face inside the plane lies in a facet"),
            };
            facets.push((h, verts.clone()));
        }
        generated.insert(verts, f.id);
    }

    let section = if k == 1 {
        FaceLattice::point(lattice.ambient_dim, points, 0)
    } else {
        FaceLattice::from_facets(lattice.ambient_dim, (k - 1) as usize, points, facets)
    };
    let generators = section
        .faces()
        .iter()
        .map(|f| if f.dim < 0 { lattice.empty_face().id } else { generated[&f.vertices] })
        .collect();
    Ok(Section { lattice: section, generators })
}
