//! Face lattices of convex polytopes.
//!
//! A [`FaceLattice`] stores every face from the empty face up to the polytope
//! itself, each as the sorted set of its vertex ids, with cover links between
//! consecutive dimensions. Vertex ids index into the lattice's point list, so
//! a hull built from input points keeps the input numbering. Faces are kept in
//! canonical order `(dim, vertex ids)`, which makes face ids depend only on
//! the combinatorics.

mod dual;
mod hull;
mod slice;
mod vectors;

pub use dual::polar_dual;
pub use hull::{hull, hull_in_order, hull_of, hull_shuffled};
pub use slice::{slice, Section};
pub use vectors::{dehn_sommerville_check, h_from_f, h_vector, reconstruct_f_from_h, FVector, HVector};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use num_traits::Signed;

use crate::exact::{rank, Hyperplane, Point, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    /// −1 for the empty face.
    pub dim: i32,
    pub vertices: Vec<usize>,
    /// Supporting hyperplane, present on facets only. Every vertex of the
    /// polytope satisfies `eval ≤ 0`, with equality exactly on this face.
    pub hyperplane: Option<Hyperplane>,
    /// Faces of dimension `dim − 1` contained in this one.
    pub subfaces: Vec<usize>,
    /// Faces of dimension `dim + 1` containing this one.
    pub superfaces: Vec<usize>,
}

impl Face {
    pub fn outward_normal(&self) -> Option<&[Rational]> {
        self.hyperplane.as_ref().map(|h| h.normal.as_slice())
    }

    /// FNV-1a hash of `(dim, vertex ids)`.
    pub fn key(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        };
        eat(self.dim as i64 as u64);
        for &v in &self.vertices {
            eat(v as u64);
        }
        h
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() as i64 == self.dim as i64 + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceLattice {
    pub ambient_dim: usize,
    pub intrinsic_dim: usize,
    /// Coordinates indexed by vertex id. May contain points that are not
    /// vertices (interior or repeated input points).
    pub points: Vec<Point>,
    faces: Vec<Face>,
    index: BTreeMap<Vec<usize>, usize>,
}

pub fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

/// Inclusion-maximal sets among `sets` (sorted id lists), deduplicated.
pub(crate) fn maximal_sets(mut sets: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    sets.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<Vec<usize>> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| k.len() > s.len() && is_subset(&s, k)) {
            kept.push(s);
        }
    }
    kept
}

struct RawFace {
    dim: i32,
    vertices: Vec<usize>,
    hyperplane: Option<Hyperplane>,
    subfaces: Vec<usize>,
}

impl FaceLattice {
    /// Builds the full lattice from the facets of a polytope of dimension
    /// `intrinsic_dim ≥ 1`. Lower faces are found top-down: the facets of a
    /// face `F` are the maximal proper non-empty sets `F ∩ G` over facets `G`.
    pub fn from_facets(
        ambient_dim: usize,
        intrinsic_dim: usize,
        points: Vec<Point>,
        facets: Vec<(Hyperplane, Vec<usize>)>,
    ) -> Self {
        assert!(intrinsic_dim >= 1, "use FaceLattice::point for a single vertex");
        let mut all: Vec<usize> = facets.iter().flat_map(|(_, v)| v.iter().copied()).collect();
        all.sort_unstable();
        all.dedup();

        let mut raw: Vec<RawFace> = Vec::new();
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        raw.push(RawFace { dim: -1, vertices: Vec::new(), hyperplane: None, subfaces: Vec::new() });
        index.insert(Vec::new(), 0);
        let top = raw.len();
        raw.push(RawFace {
            dim: intrinsic_dim as i32,
            vertices: all.clone(),
            hyperplane: None,
            subfaces: Vec::new(),
        });
        index.insert(all.clone(), top);

        let mut incident: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut level = Vec::new();
        for (fi, (h, mut verts)) in facets.into_iter().enumerate() {
            verts.sort_unstable();
            verts.dedup();
            for &v in &verts {
                incident.entry(v).or_default().push(fi);
            }
            let id = raw.len();
            index.insert(verts.clone(), id);
            raw.push(RawFace {
                dim: intrinsic_dim as i32 - 1,
                vertices: verts,
                hyperplane: Some(h),
                subfaces: Vec::new(),
            });
            level.push(id);
            raw[top].subfaces.push(id);
        }

        let mut dim = intrinsic_dim as i32 - 1;
        while dim >= 1 {
            let mut next = Vec::new();
            for &fid in &level {
                let verts = raw[fid].vertices.clone();
                let mut shared: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
                for &v in &verts {
                    for &g in &incident[&v] {
                        shared.entry(g).or_default().push(v);
                    }
                }
                let candidates: Vec<Vec<usize>> = shared
                    .into_iter()
                    .filter(|(_, s)| s.len() < verts.len())
                    .map(|(_, s)| s)
                    .collect();
                for child in maximal_sets(candidates) {
                    let cid = match index.get(&child) {
                        Some(&c) => c,
                        None => {
                            let c = raw.len();
                            index.insert(child.clone(), c);
                            raw.push(RawFace {
                                dim: dim - 1,
                                vertices: child,
                                hyperplane: None,
                                subfaces: Vec::new(),
                            });
                            next.push(c);
                            c
                        }
                    };
                    debug_assert_eq!(raw[cid].dim, dim - 1, "lattice is not graded");
                    raw[fid].subfaces.push(cid);
                }
            }
            level = next;
            dim -= 1;
        }
        for &vid in &level {
            raw[vid].subfaces.push(0);
        }
        Self::canonical(ambient_dim, intrinsic_dim, points, raw)
    }

    /// Same combinatorics with points and facet hyperplanes carried into
    /// `E^{ambient_dim}` by `point` and `plane`.
    pub(crate) fn map_geometry(
        self,
        ambient_dim: usize,
        point: impl Fn(&Point) -> Point,
        plane: impl Fn(&Hyperplane) -> Hyperplane,
    ) -> Self {
        let points = self.points.iter().map(point).collect();
        let faces = self
            .faces
            .into_iter()
            .map(|f| Face { hyperplane: f.hyperplane.as_ref().map(&plane), ..f })
            .collect();
        FaceLattice { ambient_dim, intrinsic_dim: self.intrinsic_dim, points, faces, index: self.index }
    }

    /// Lattice of a single point `vertex`.
    pub fn point(ambient_dim: usize, points: Vec<Point>, vertex: usize) -> Self {
        let raw = alloc::vec![
            RawFace { dim: -1, vertices: Vec::new(), hyperplane: None, subfaces: Vec::new() },
            RawFace { dim: 0, vertices: alloc::vec![vertex], hyperplane: None, subfaces: alloc::vec![0] },
        ];
        Self::canonical(ambient_dim, 0, points, raw)
    }

    fn canonical(ambient_dim: usize, intrinsic_dim: usize, points: Vec<Point>, raw: Vec<RawFace>) -> Self {
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by(|&a, &b| (raw[a].dim, &raw[a].vertices).cmp(&(raw[b].dim, &raw[b].vertices)));
        let mut new_id = alloc::vec![0; raw.len()];
        for (pos, &old) in order.iter().enumerate() {
            new_id[old] = pos;
        }
        let mut faces: Vec<Face> = Vec::with_capacity(raw.len());
        let mut subs: Vec<Vec<usize>> = alloc::vec![Vec::new(); raw.len()];
        let mut raw: Vec<Option<RawFace>> = raw.into_iter().map(Some).collect();
        for (pos, &old) in order.iter().enumerate() {
            let r = raw[old].take().expect("each face is visited once");
            let mut s: Vec<usize> = r.subfaces.iter().map(|&c| new_id[c]).collect();
            s.sort_unstable();
            s.dedup();
            subs[pos] = s;
            faces.push(Face {
                id: pos,
                dim: r.dim,
                vertices: r.vertices,
                hyperplane: r.hyperplane,
                subfaces: Vec::new(),
                superfaces: Vec::new(),
            });
        }
        for (pos, s) in subs.into_iter().enumerate() {
            for &c in &s {
                faces[c].superfaces.push(pos);
            }
            faces[pos].subfaces = s;
        }
        let index = faces.iter().map(|f| (f.vertices.clone(), f.id)).collect();
        FaceLattice { ambient_dim, intrinsic_dim, points, faces, index }
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    pub fn empty_face(&self) -> &Face {
        &self.faces[0]
    }

    pub fn top(&self) -> &Face {
        self.faces.last().expect("lattice has a top face")
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.intrinsic_dim == self.ambient_dim
    }

    /// Face with exactly this (sorted) vertex set.
    pub fn find(&self, vertices: &[usize]) -> Option<&Face> {
        self.index.get(vertices).map(|&id| &self.faces[id])
    }

    pub fn faces_of_dim(&self, dim: i32) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == dim)
    }

    pub fn facets(&self) -> impl Iterator<Item = &Face> {
        self.faces_of_dim(self.intrinsic_dim as i32 - 1)
    }

    /// Vertex ids in increasing order.
    pub fn vertex_ids(&self) -> Vec<usize> {
        self.top().vertices.clone()
    }

    pub fn coords(&self, vertex: usize) -> &Point {
        &self.points[vertex]
    }

    /// Number of faces of each dimension `−1..=intrinsic_dim`.
    pub fn face_counts(&self) -> Vec<u64> {
        let mut counts = alloc::vec![0u64; self.intrinsic_dim + 2];
        for f in &self.faces {
            counts[(f.dim + 1) as usize] += 1;
        }
        counts
    }

    pub fn f_vector(&self) -> FVector {
        let mut c = self.face_counts();
        c.pop();
        FVector(c)
    }

    /// True when every facet is a simplex.
    pub fn is_simplicial(&self) -> bool {
        self.facets().all(Face::is_simplex)
    }

    /// Sorted `(dim, vertex ids)` of every face.
    pub fn combinatorial_signature(&self) -> Vec<(i32, Vec<usize>)> {
        self.faces.iter().map(|f| (f.dim, f.vertices.clone())).collect()
    }

    /// Sorted `(dim, sorted vertex coordinates)` of every face; equal for two
    /// lattices exactly when they describe the same polytope with the same
    /// face structure, regardless of vertex numbering.
    pub fn geometric_signature(&self) -> Vec<(i32, Vec<Point>)> {
        let mut sig: Vec<(i32, Vec<Point>)> = self
            .faces
            .iter()
            .map(|f| {
                let mut pts: Vec<Point> = f.vertices.iter().map(|&v| self.points[v].clone()).collect();
                pts.sort();
                (f.dim, pts)
            })
            .collect();
        sig.sort();
        sig
    }

    /// One face per line, `dim; v1,v2,…`, in canonical order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for f in &self.faces {
            let ids: Vec<String> = f.vertices.iter().map(|v| alloc::format!("{v}")).collect();
            let _ = writeln!(out, "{}; {}", f.dim, ids.join(","));
        }
        out
    }

    /// Checks the structural invariants: Euler–Poincaré, gradedness, the
    /// diamond property, atomicity, vertex counts and facet hyperplanes.
    pub fn verify(&self) -> core::result::Result<(), String> {
        let euler: i64 = self
            .face_counts()
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { -(c as i64) } else { c as i64 })
            .sum();
        if euler != 0 {
            return Err(alloc::format!("Euler characteristic sum is {euler}"));
        }
        let top_dim = self.intrinsic_dim as i32;
        if self.faces_of_dim(-1).count() != 1 || self.faces_of_dim(top_dim).count() != 1 {
            return Err("expected one empty face and one top face".into());
        }
        for f in &self.faces {
            if f.dim >= 0 && f.vertices.len() < f.dim as usize + 1 {
                return Err(alloc::format!("face {} has too few vertices", f.id));
            }
            for &s in &f.subfaces {
                if self.faces[s].dim != f.dim - 1 || !is_subset(&self.faces[s].vertices, &f.vertices) {
                    return Err(alloc::format!("bad cover link {} -> {}", f.id, s));
                }
            }
            if f.dim == 0 && f.vertices.len() != 1 {
                return Err(alloc::format!("vertex face {} is not a singleton", f.id));
            }
            if f.dim >= 1 {
                let mut joined: Vec<usize> =
                    f.subfaces.iter().flat_map(|&s| self.faces[s].vertices.iter().copied()).collect();
                joined.sort_unstable();
                joined.dedup();
                if joined != f.vertices {
                    return Err(alloc::format!("face {} is not the join of its facets", f.id));
                }
            }
            // Diamond: every interval of length 2 has exactly two middle elements.
            for &s in &f.subfaces {
                for &t in &self.faces[s].subfaces {
                    let middle = f
                        .subfaces
                        .iter()
                        .filter(|&&m| self.faces[m].subfaces.contains(&t))
                        .count();
                    if middle != 2 {
                        return Err(alloc::format!("interval [{t}, {}] has {middle} middle faces", f.id));
                    }
                }
            }
        }
        for facet in self.facets() {
            let Some(h) = &facet.hyperplane else {
                if top_dim == 0 {
                    continue;
                }
                return Err(alloc::format!("facet {} lacks a hyperplane", facet.id));
            };
            for &v in &self.top().vertices {
                let s = h.eval(&self.points[v]);
                let on = facet.vertices.binary_search(&v).is_ok();
                if s.is_positive() || (on != (s == Rational::from_integer(0.into()))) {
                    return Err(alloc::format!("facet {} hyperplane misplaces vertex {v}", facet.id));
                }
            }
        }
        // Vertices must be extreme: the facet normals through each span the polytope's directions.
        if top_dim >= 1 {
            for &v in &self.top().vertices {
                let normals: Vec<Vec<Rational>> = self
                    .facets()
                    .filter(|f| f.vertices.binary_search(&v).is_ok())
                    .filter_map(|f| f.hyperplane.as_ref().map(|h| h.normal.clone()))
                    .collect();
                if rank(&normals) < self.intrinsic_dim {
                    return Err(alloc::format!("vertex {v} is not extreme"));
                }
            }
        }
        Ok(())
    }
}
