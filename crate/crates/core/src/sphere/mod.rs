//! Hulls of spheres through the lifting map `(c, r) ↦ (c, r)`.
//!
//! A supporting hyperplane of the sphere hull with outward unit normal `u`
//! touches the spheres maximizing `u·c + r`, i.e. the vertices of the face of
//! the lifted hull maximizing `(u, 1)`. So the sphere-hull faces tangent to
//! the spheres of a lifted face `F` are the connected pieces of the unit
//! directions inside the relative interior of `F`'s normal cone at height 1.
//! A face of dimension `ℓ` yields faces of circularity `d − ℓ − 1`.
//!
//! Upward normals `(u, t)` with `t > 0` are automatically "above" any
//! interior point of a full-dimensional lifted hull: a supporting hyperplane
//! leaves the whole hull on its negative side.

mod cone;
mod regions;

pub use cone::{gauss_membership, lorentz_sign, Membership, NormalConeGenerators};
pub use regions::Regions;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::exact::{dot, sub, Point, Rational};
use crate::lattice::{hull, hull_of, FaceLattice};
use crate::parallel::{Layer, LayeredPointSet};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sphere {
    pub center: Point,
    pub radius: Rational,
}

impl Sphere {
    pub fn new(center: Point, radius: Rational) -> Self {
        Sphere { center, radius }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereSet {
    pub d: usize,
    pub spheres: Vec<Sphere>,
}

impl SphereSet {
    pub fn new(d: usize, spheres: Vec<Sphere>) -> Result<Self> {
        for s in &spheres {
            if s.center.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, found: s.center.dim() });
            }
            if s.radius.is_negative() {
                return Err(Error::InvalidInput("negative radius".into()));
            }
        }
        Ok(SphereSet { d, spheres })
    }

    /// Distinct radii in increasing order with their multiplicities.
    pub fn radii_classes(&self) -> Vec<(Rational, usize)> {
        let mut m: BTreeMap<&Rational, usize> = BTreeMap::new();
        for s in &self.spheres {
            *m.entry(&s.radius).or_default() += 1;
        }
        m.into_iter().map(|(r, c)| (r.clone(), c)).collect()
    }

    /// Every center and radius multiplied by `factor`.
    pub fn scaled(&self, factor: &Rational) -> SphereSet {
        SphereSet {
            d: self.d,
            spheres: self
                .spheres
                .iter()
                .map(|s| Sphere {
                    center: Point::new(s.center.iter().map(|x| x * factor).collect()),
                    radius: &s.radius * factor,
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.spheres.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spheres.is_empty()
    }
}

/// Lifted spheres: one layer per distinct radius.
#[derive(Debug, Clone)]
pub struct Lifted {
    pub layered: LayeredPointSet,
    /// Sphere index of each stacked point.
    pub sphere_of: Vec<usize>,
    /// Stacked ids of centers that are not vertices of their layer's hull.
    pub dropped: Vec<usize>,
}

impl Lifted {
    /// Stacked ids of the kept points.
    pub fn kept(&self) -> Vec<usize> {
        (0..self.sphere_of.len()).filter(|i| self.dropped.binary_search(i).is_err()).collect()
    }
}

pub fn lift(spheres: &SphereSet) -> Result<Lifted> {
    if spheres.is_empty() {
        return Err(Error::EmptyInput);
    }
    let classes = spheres.radii_classes();
    let mut layers = Vec::new();
    let mut sphere_of = Vec::new();
    let mut dropped = Vec::new();
    for (radius, _) in &classes {
        let members: Vec<usize> = (0..spheres.len()).filter(|&i| spheres.spheres[i].radius == *radius).collect();
        let centers: Vec<Point> = members.iter().map(|&i| spheres.spheres[i].center.clone()).collect();
        let layer_hull = hull(&centers)?;
        let keep = layer_hull.vertex_ids();
        for (local, &i) in members.iter().enumerate() {
            if keep.binary_search(&local).is_err() {
                dropped.push(sphere_of.len());
            }
            sphere_of.push(i);
        }
        layers.push(Layer { height: radius.clone(), points: centers });
    }
    Ok(Lifted { layered: LayeredPointSet::new(spheres.d, layers)?, sphere_of, dropped })
}

/// Result of testing one lifted face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceOutcome {
    pub face: usize,
    pub dim: i32,
    pub membership: Membership,
    pub regions: Regions,
}

#[derive(Debug, Clone)]
pub struct CircularityReport {
    pub d: usize,
    /// Number of sphere-hull faces per circularity `0..d`: connected
    /// tangency regions summed over lifted faces.
    pub counts: Vec<u64>,
    /// Number of lifted faces passing [`gauss_membership`] per circularity.
    pub image_counts: Vec<u64>,
    /// Lifted faces carrying at least one sphere-hull face, per circularity.
    pub witnesses: Vec<Vec<usize>>,
    /// Lifted faces whose tangency set touches the Lorentz boundary without
    /// crossing it; excluded from the counts.
    pub degenerate: Vec<usize>,
    /// Lifted faces whose tangency set has several components.
    pub multi_component: Vec<(usize, u64)>,
    pub outcomes: Vec<FaceOutcome>,
    pub lifted: Lifted,
    pub lattice: FaceLattice,
}

impl CircularityReport {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn outcome(&self, face: usize) -> Option<&FaceOutcome> {
        self.outcomes.iter().find(|o| o.face == face)
    }

    /// Lifted face supporting the spheres in direction `u` (see
    /// [`direction_probe`]).
    pub fn probe(&self, u: &[Rational]) -> Result<usize> {
        probe_lattice(&self.lattice, u)
    }

    /// Witness dump: `circularity; v1,v2,…` per sphere-hull face, listing
    /// the sphere indices of the lifted face.
    pub fn witness_dump(&self) -> alloc::string::String {
        use core::fmt::Write;
        let mut out = alloc::string::String::new();
        for (circ, faces) in self.witnesses.iter().enumerate() {
            for &f in faces {
                let mut spheres: Vec<usize> =
                    self.lattice.face(f).vertices.iter().map(|&v| self.lifted.sphere_of[v]).collect();
                spheres.sort_unstable();
                let ids: Vec<alloc::string::String> = spheres.iter().map(|s| alloc::format!("{s}")).collect();
                let _ = writeln!(out, "{circ}; {}", ids.join(","));
            }
        }
        out
    }
}

/// Faces of the sphere hull, counted per circularity.
pub fn sphere_hull_faces(spheres: &SphereSet) -> Result<CircularityReport> {
    let d = spheres.d;
    let lifted = lift(spheres)?;
    let points = lifted.layered.stack();
    let lattice = hull_of(&points, &lifted.kept())?;

    // Edges leaving each vertex, for the normal-cone inequalities.
    let mut neighbours: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in lattice.faces_of_dim(1) {
        neighbours.entry(e.vertices[0]).or_default().push(e.vertices[1]);
        neighbours.entry(e.vertices[1]).or_default().push(e.vertices[0]);
    }
    let mut report = CircularityReport {
        d,
        counts: alloc::vec![0; d],
        image_counts: alloc::vec![0; d],
        witnesses: alloc::vec![Vec::new(); d],
        degenerate: Vec::new(),
        multi_component: Vec::new(),
        outcomes: Vec::new(),
        lifted: lifted.clone(),
        lattice: lattice.clone(),
    };
    let full = lattice.is_full_dimensional();
    for face in lattice.faces() {
        if face.dim < 0 || (face.id == lattice.top().id && full) {
            continue;
        }
        let cone = NormalConeGenerators::for_face(&lattice, face.id);
        let gens = cone.all();
        let section = (full && (face.dim as usize) < d).then(|| regions::ConeSection::new(&lattice, face.id));
        let reach = match &section {
            Some(s) if s.meets_lorentz() => cone::Reach::Inside,
            _ => cone::reach(&gens),
        };
        let membership = cone::membership_given(&gens, reach);

        let regions = if face.dim as usize >= d {
            match reach {
                cone::Reach::Touching if membership != Membership::Fail => Regions::Degenerate,
                _ => Regions::Count(0),
            }
        } else if let (Some(s), cone::Reach::Inside) = (&section, reach) {
            s.count()
        } else {
            chart_regions(d, &points, &neighbours, face, reach)
        };

        let circ = d as i32 - face.dim - 1;
        match (&regions, membership) {
            (Regions::Degenerate, _) | (_, Membership::Degenerate) => report.degenerate.push(face.id),
            (Regions::Count(n), _) if circ >= 0 => {
                let circ = circ as usize;
                report.counts[circ] += n;
                if *n > 0 {
                    report.witnesses[circ].push(face.id);
                }
                if *n > 1 {
                    report.multi_component.push((face.id, *n));
                }
                if membership == Membership::Pass {
                    report.image_counts[circ] += 1;
                }
            }
            _ => {}
        }
        report.outcomes.push(FaceOutcome { face: face.id, dim: face.dim, membership, regions });
    }
    Ok(report)
}

fn split(p: &Point) -> (Vec<Rational>, Rational) {
    let (r, c) = p.split_last().expect("lifted points are non-empty");
    (c.to_vec(), r.clone())
}

/// Tangency regions of `face` through an explicit description of
/// `{u : (u, 1) ∈ N_F}` by the edges leaving the face.
fn chart_regions(
    d: usize,
    points: &[Point],
    neighbours: &BTreeMap<usize, Vec<usize>>,
    face: &crate::lattice::Face,
    reach: cone::Reach,
) -> Regions {
    let (c0, r0) = split(&points[face.vertices[0]]);
    let equalities: Vec<(Vec<Rational>, Rational)> = face.vertices[1..]
        .iter()
        .map(|&v| {
            let (c, r) = split(&points[v]);
            (sub(&c, &c0), &r0 - r)
        })
        .collect();
    let mut inequalities = Vec::new();
    for &v in &face.vertices {
        let (cv, rv) = split(&points[v]);
        for &w in neighbours.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            if face.vertices.binary_search(&w).is_ok() {
                continue;
            }
            let (cw, rw) = split(&points[w]);
            inequalities.push((sub(&cw, &cv), &rv - rw));
        }
    }
    regions::count_regions(d, &equalities, &inequalities, reach)
}

/// Rational unit vector from stereographic coordinates `s ∈ Q^{d−1}`:
/// `(2s, 1 − |s|²) / (1 + |s|²)`.
pub fn rational_unit_vector(s: &[Rational]) -> Vec<Rational> {
    let n = dot(s, s);
    let den = Rational::one() + &n;
    let mut u: Vec<Rational> = s.iter().map(|x| Rational::from_integer(2.into()) * x / &den).collect();
    u.push((Rational::one() - n) / den);
    u
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    let root = |n: &num_bigint::BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    if x.is_negative() {
        return None;
    }
    Some(Rational::new(root(x.numer())?, root(x.denom())?))
}

fn probe_lattice(lattice: &FaceLattice, u: &[Rational]) -> Result<usize> {
    let d = lattice.ambient_dim - 1;
    if u.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: u.len() });
    }
    let norm_sq = dot(u, u);
    if norm_sq.is_zero() {
        return Err(Error::BadDirection("zero direction".into()));
    }
    let norm = rational_sqrt(&norm_sq)
        .ok_or_else(|| Error::BadDirection("direction length is irrational".into()))?;
    let mut best: Option<Rational> = None;
    let mut arg = Vec::new();
    for v in lattice.vertex_ids() {
        let p = &lattice.points[v];
        let (r, c) = p.split_last().expect("lifted points are non-empty");
        let val = dot(c, u) + r * &norm;
        match best.as_ref().map(|b| val.cmp(b)) {
            None | Some(core::cmp::Ordering::Greater) => {
                best = Some(val);
                arg = alloc::vec![v];
            }
            Some(core::cmp::Ordering::Equal) => arg.push(v),
            Some(core::cmp::Ordering::Less) => {}
        }
    }
    lattice
        .find(&arg)
        .map(|f| f.id)
        .ok_or_else(|| Error::InvalidInput("maximizers do not form a face".into()))
}

/// Face of the lifted hull touched by the supporting hyperplane with outward
/// normal `u`: the face maximizing `(u, ‖u‖)`. `‖u‖` must be rational.
pub fn direction_probe(spheres: &SphereSet, u: &[Rational]) -> Result<usize> {
    let lifted = lift(spheres)?;
    let lattice = hull_of(&lifted.layered.stack(), &lifted.kept())?;
    probe_lattice(&lattice, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn sph(c: &[i64], r: Rational) -> Sphere {
        Sphere::new(Point::from_ints(c), r)
    }

    #[test]
    fn single_sphere_is_one_face() {
        let s = SphereSet::new(3, vec![sph(&[0, 0, 0], int(2))]).unwrap();
        let l = lift(&s).unwrap();
        assert_eq!(l.layered.stack(), vec![Point::from_ints(&[0, 0, 0, 2])]);
        let r = sphere_hull_faces(&s).unwrap();
        assert_eq!(r.counts, vec![0, 0, 1]);
        assert_eq!(r.image_counts, vec![0, 0, 1]);
    }

    #[test]
    fn two_disjoint_spheres() {
        let s = SphereSet::new(3, vec![sph(&[0, 0, 0], int(1)), sph(&[10, 0, 0], int(2))]).unwrap();
        let r = sphere_hull_faces(&s).unwrap();
        assert_eq!(r.counts, vec![0, 1, 2]);
        assert_eq!(r.image_counts, vec![0, 1, 2]);
        assert!(r.degenerate.is_empty());
    }

    #[test]
    fn nested_spheres() {
        let s = SphereSet::new(3, vec![sph(&[0, 0, 0], int(3)), sph(&[0, 0, 0], int(1))]).unwrap();
        let r = sphere_hull_faces(&s).unwrap();
        assert_eq!(r.counts, vec![0, 0, 1]);
        let big = r.lattice.find(&[1]).unwrap().id;
        let small = r.lattice.find(&[0]).unwrap().id;
        assert_eq!(r.outcome(big).unwrap().membership, Membership::Pass);
        assert_eq!(r.outcome(small).unwrap().membership, Membership::Fail);
        assert_eq!(r.outcome(r.lattice.top().id).unwrap().membership, Membership::Fail);
    }

    #[test]
    fn points_reduce_to_the_point_hull() {
        let s = SphereSet::new(
            3,
            vec![sph(&[0, 0, 0], int(0)), sph(&[1, 0, 0], int(0)), sph(&[0, 1, 0], int(0)), sph(&[0, 0, 1], int(0))],
        )
        .unwrap();
        let r = sphere_hull_faces(&s).unwrap();
        assert_eq!(r.counts, vec![4, 6, 4]);
    }

    #[test]
    fn dominated_middle_sphere() {
        let s = SphereSet::new(
            3,
            vec![sph(&[0, 0, 0], int(1)), sph(&[5, 0, 0], int(1)), sph(&[10, 0, 0], int(1))],
        )
        .unwrap();
        let l = lift(&s).unwrap();
        assert_eq!(l.dropped, vec![1]);
        let r = sphere_hull_faces(&s).unwrap();
        assert_eq!(r.counts, vec![0, 1, 2]);
    }

    #[test]
    fn probes_find_the_right_faces() {
        let s = SphereSet::new(3, vec![sph(&[0, 0, 0], int(1)), sph(&[10, 0, 0], int(2))]).unwrap();
        let r = sphere_hull_faces(&s).unwrap();
        let toward_big = r.probe(&[int(1), int(0), int(0)]).unwrap();
        assert_eq!(r.lattice.face(toward_big).vertices, vec![1]);
        // Perpendicular direction tilted by the radius difference: the common tangent.
        let tangent = rational_unit_vector(&[rat(1, 20), int(0)]);
        let _ = r.probe(&tangent).unwrap();
        let up = r.probe(&[int(0), int(0), int(1)]).unwrap();
        assert_eq!(r.lattice.face(up).vertices, vec![1]);
        assert!(matches!(r.probe(&[int(0), int(0), int(0)]), Err(Error::BadDirection(_))));
        assert!(matches!(r.probe(&[int(1), int(1), int(0)]), Err(Error::BadDirection(_))));
    }

    #[test]
    fn stereographic_vectors_have_unit_length() {
        let u = rational_unit_vector(&[rat(1, 2), rat(-3, 7)]);
        assert_eq!(dot(&u, &u), int(1));
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]
        #[test]
        fn cone_and_chart_regions_agree(seed in 0u64..1_000_000, d in 2usize..4) {
            let mut rng = crate::rng::stream(seed, 0);
            let set = crate::generators::random_spheres(&mut rng, d, &[4, 3], 3);
            let lifted = lift(&set).unwrap();
            let points = lifted.layered.stack();
            let lattice = hull_of(&points, &lifted.kept()).unwrap();
            proptest::prop_assume!(lattice.is_full_dimensional());
            let mut neighbours: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for e in lattice.faces_of_dim(1) {
                neighbours.entry(e.vertices[0]).or_default().push(e.vertices[1]);
                neighbours.entry(e.vertices[1]).or_default().push(e.vertices[0]);
            }
            for face in lattice.faces().iter().filter(|f| f.dim >= 0 && (f.dim as usize) < d) {
                let cone = NormalConeGenerators::for_face(&lattice, face.id);
                let reach = cone::reach(&cone.all());
                if reach == cone::Reach::Inside {
                    let fast = regions::ConeSection::new(&lattice, face.id).count();
                    let slow = chart_regions(d, &points, &neighbours, face, reach);
                    proptest::prop_assert_eq!(fast, slow, "face {:?}", face.vertices);
                }
            }
        }
    }

    #[test]
    fn similarity_invariance() {
        let s = SphereSet::new(
            2,
            vec![sph(&[0, 0], int(1)), sph(&[4, 0], int(2)), sph(&[1, 5], int(1)), sph(&[2, 2], int(2))],
        )
        .unwrap();
        let a = sphere_hull_faces(&s).unwrap();
        let b = sphere_hull_faces(&s.scaled(&rat(7, 3))).unwrap();
        assert_eq!(a.counts, b.counts);
        assert_eq!(a.witnesses, b.witnesses);
    }
}
