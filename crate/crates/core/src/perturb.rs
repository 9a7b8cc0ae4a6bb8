//! Beyond/beneath tests and vertex pulling.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::exact::{dot, lp_interior_point, nullspace, snap_strict, Hyperplane, Point, Rational};
use crate::lattice::{hull_of, Face, FaceLattice};
use crate::parallel::{Layer, LayeredPointSet};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeyondBeneath {
    Beyond,
    Beneath,
    On,
}

/// Position of `point` relative to a facet's supporting hyperplane.
pub fn classify(point: &[Rational], facet: &Face) -> Result<BeyondBeneath> {
    let h = facet
        .hyperplane
        .as_ref()
        .ok_or_else(|| Error::InvalidInput(alloc::format!("face {} is not a facet", facet.id)))?;
    let s = h.eval(point);
    Ok(if s.is_positive() {
        BeyondBeneath::Beyond
    } else if s.is_negative() {
        BeyondBeneath::Beneath
    } else {
        BeyondBeneath::On
    })
}

#[derive(Debug, Clone)]
pub struct Pull {
    pub point: Point,
    pub lattice: FaceLattice,
    /// Facets of the old hull that the new point is beyond.
    pub beyond: Vec<usize>,
}

/// Moves vertex `v` to a point beyond every facet containing it and beneath
/// every other facet, optionally staying on `constraint`. Facets lying in the
/// constraint hyperplane are exempt. The hull is rebuilt from the old
/// vertices with `v` replaced.
pub fn pull_vertex(lattice: &FaceLattice, v: usize, constraint: Option<&Hyperplane>) -> Result<Pull> {
    let dim = lattice.ambient_dim;
    if !lattice.is_full_dimensional() {
        return Err(Error::NotFullDimensional { intrinsic: lattice.intrinsic_dim, ambient: dim });
    }
    let vertices = lattice.vertex_ids();
    if vertices.binary_search(&v).is_err() {
        return Err(Error::InvalidInput(alloc::format!("point {v} is not a vertex")));
    }
    let vp = &lattice.points[v];

    // x = v + B·y, with B spanning the constraint's direction space.
    let basis: Vec<Vec<Rational>> = match constraint {
        Some(h) => {
            if !h.eval(vp).is_zero() {
                return Err(Error::InvalidInput("pulled vertex is off its constraint plane".into()));
            }
            nullspace(core::slice::from_ref(&h.normal), dim)
        }
        None => (0..dim)
            .map(|i| (0..dim).map(|j| Rational::from_integer(((i == j) as i64).into())).collect())
            .collect(),
    };
    let in_constraint = |f: &Face| {
        constraint.is_some_and(|h| f.vertices.iter().all(|&u| h.eval(&lattice.points[u]).is_zero()))
    };

    let mut halfspaces = Vec::new();
    let mut beyond = Vec::new();
    for f in lattice.facets() {
        let h = f.hyperplane.as_ref().expect("facets carry hyperplanes");
        let contains = f.vertices.binary_search(&v).is_ok();
        if contains && in_constraint(f) {
            continue;
        }
        // n·(v + B y) − b = (nB)·y − (b − n·v)
        let normal: Vec<Rational> = basis.iter().map(|col| dot(&h.normal, col)).collect();
        let offset = &h.offset - dot(&h.normal, vp);
        let hs = Hyperplane { normal, offset };
        if contains {
            beyond.push(f.id);
            halfspaces.push(hs);
        } else {
            halfspaces.push(hs.flipped());
        }
    }
    let y = lp_interior_point(&halfspaces)
        .point()
        .ok_or_else(|| Error::Infeasible(alloc::format!("no pull position for vertex {v}")))?;
    let y = snap_strict(&y, &halfspaces);
    let mut x = vp.clone();
    for (col, yi) in basis.iter().zip(&y) {
        for (xj, cj) in x.iter_mut().zip(col) {
            *xj += yi * cj;
        }
    }

    let mut points = lattice.points.clone();
    points[v] = x.clone();
    let rebuilt = hull_of(&points, &vertices)?;
    if rebuilt.vertex_ids() != vertices {
        return Err(Error::Infeasible(alloc::format!("pulling vertex {v} changed the vertex set")));
    }
    Ok(Pull { point: x, lattice: rebuilt, beyond })
}

/// Pulls, within their own layer planes, first every vertex of the first
/// layer, then of the last layer, then every hull vertex of the
/// intermediate layers, each phase in increasing id. Afterwards every face
/// not lying in the first or last layer plane is a simplex. Points that are
/// not vertices of the stacked hull are dropped from the output.
///
/// Every layer must span its plane.
pub fn make_layerwise_simplicial(layered: &LayeredPointSet) -> Result<LayeredPointSet> {
    let m = layered.layers.len();
    if m < 2 {
        return Err(Error::InvalidInput("layerwise pulling needs two layers".into()));
    }
    for (i, l) in layered.layers.iter().enumerate() {
        let flat = l.points.is_empty() || !crate::lattice::hull(&l.points)?.is_full_dimensional();
        if flat {
            return Err(Error::InvalidInput(alloc::format!("layer {} does not span its plane", i + 1)));
        }
    }
    let mut lattice = crate::parallel::stacked_hull(layered)?;
    if !lattice.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            intrinsic: lattice.intrinsic_dim,
            ambient: layered.d + 1,
        });
    }
    let mut phases: Vec<usize> = alloc::vec![0, m - 1];
    phases.extend(1..m - 1);
    for layer in phases {
        let plane = layered.plane(layer);
        for v in layered.ids_of_layer(layer) {
            if lattice.vertex_ids().binary_search(&v).is_err() {
                continue;
            }
            lattice = pull_vertex(&lattice, v, Some(&plane))?.lattice;
        }
    }
    let vertices = lattice.vertex_ids();
    let layers = layered
        .layers
        .iter()
        .enumerate()
        .map(|(i, l)| Layer {
            height: l.height.clone(),
            points: layered
                .ids_of_layer(i)
                .filter(|v| vertices.binary_search(v).is_ok())
                .map(|v| lattice.points[v].projected())
                .collect(),
        })
        .collect();
    LayeredPointSet::new(layered.d, layers)
}

/// True when every face with a vertex off the first and last layer planes is
/// a simplex.
pub fn is_layerwise_simplicial(lattice: &FaceLattice, layered: &LayeredPointSet) -> bool {
    let last = layered.layers.len() - 1;
    let top = lattice.intrinsic_dim as i32;
    lattice.faces().iter().filter(|f| f.dim >= 0 && f.dim < top).all(|f| {
        let all_in = |layer: usize| f.vertices.iter().all(|&v| layered.layer_of(v) == layer);
        all_in(0) || all_in(last) || f.is_simplex()
    })
}
