//! Sphere families whose hulls have many faces of circularity `d − 1`.
//!
//! Two copies `Σ_1 ⊂ {x_d = z_1}`, `Σ_2 ⊂ {x_d = z_2}` of a cyclic
//! configuration span a prism `Δ`; a stack of equal spheres `Σ_3` on the
//! `x_d`-axis crosses every vertical facet of `Δ` but no ridge. Shifting the
//! `k`-th stack sphere by `ε(2 − 2^{−k})` along `x_1` makes each of them
//! contribute one cap per vertical facet in `{x_1 > 0}`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use num_traits::{One, Signed, Zero};

use super::{distinct_parameters, moment_curve_point};
use crate::exact::{dot, int, min_norm_qp, rat, sub, Point, Rational};
use crate::lattice::{hull, FaceLattice};
use crate::rng;
use crate::sphere::{sphere_hull_faces, Regions, Sphere, SphereSet};
use crate::{Error, Result};

const BISECTION_STEPS: usize = 96;
const HALVING_STEPS: usize = 96;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// The sphere misses a ridge of the prism.
    RidgeClear,
    /// The ball reaches a vertical facet: `dist(c, F) < ρ`.
    FacetCrossing,
    /// Some vertex of the facet lies outside the sphere.
    VertexOutside,
    /// `σ_k ∩ σ_k'` lies strictly beneath a vertical facet.
    RadicalInside,
    /// The lateral faces of the sphere prism match those of the point prism.
    PrismEquivalence,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::RidgeClear => "ridge-clear",
            Condition::FacetCrossing => "facet-crossing",
            Condition::VertexOutside => "vertex-outside",
            Condition::RadicalInside => "radical-inside",
            Condition::PrismEquivalence => "prism-equivalence",
        }
    }
}

/// One checked predicate. It holds iff `margin > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub condition: Condition,
    /// Index `k` of the stack sphere.
    pub sphere: usize,
    /// Whether the shifted center `c_k'` was used.
    pub perturbed: bool,
    /// Prism vertex ids of the ridge or facet.
    pub face: Vec<usize>,
    pub margin: Rational,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.margin.is_positive()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Certificate {
    pub checks: Vec<Check>,
}

impl Certificate {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn count(&self, condition: Condition) -> usize {
        self.checks.iter().filter(|c| c.condition == condition).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundInstance {
    pub d: usize,
    /// `(n_1, n_2)`, or the class sizes of the `m`-radii family.
    pub n: Vec<usize>,
    pub z1: Rational,
    pub z2: Rational,
    /// Rational stand-in for `√δ`, with `R² ≥ δ`.
    pub big_r: Rational,
    pub rho: Rational,
    pub eps: Rational,
    /// Base of the tiny radii in the `m`-radii family.
    pub r: Option<Rational>,
    /// `Σ_1`: centers in `{x_d = z_1}`; the last one lies in `{x_1 < 0}`.
    pub base: Vec<Sphere>,
    /// Size of the stack `Σ_3`.
    pub stack: usize,
    /// Search steps, one line each.
    pub trace: Vec<String>,
    pub certificate: Certificate,
}

impl LowerBoundInstance {
    pub fn sigma1(&self) -> Range<usize> {
        0..self.base.len()
    }

    pub fn sigma2(&self) -> Range<usize> {
        self.base.len()..2 * self.base.len()
    }

    pub fn sigma3(&self) -> Range<usize> {
        2 * self.base.len()..2 * self.base.len() + self.stack
    }

    /// `c_k`, or `c_k' = c_k + ε(2 − 2^{−k})e_1` when `perturbed`.
    pub fn stack_center(&self, k: usize, perturbed: bool) -> Point {
        let mut c = alloc::vec![Rational::zero(); self.d];
        c[self.d - 1] = int(2 * k as i64 + 1) * &self.big_r;
        if perturbed {
            c[0] = &self.eps * shift(k);
        }
        Point::new(c)
    }

    /// Centers of `Σ_1 ∪ Σ_2`, the vertices of the point prism.
    pub fn prism_points(&self) -> Vec<Point> {
        [&self.z1, &self.z2]
            .into_iter()
            .flat_map(|z| {
                self.base.iter().map(move |s| {
                    let mut c = s.center.clone();
                    c.0[self.d - 1] = z.clone();
                    c
                })
            })
            .collect()
    }

    /// `Σ_1 ∪ Σ_2` with their radii.
    pub fn prism_spheres(&self) -> SphereSet {
        let spheres = self
            .prism_points()
            .into_iter()
            .zip(self.base.iter().chain(&self.base))
            .map(|(c, s)| Sphere::new(c, s.radius.clone()))
            .collect();
        SphereSet::new(self.d, spheres).expect("dimensions agree")
    }

    /// `Σ_1 ∪ Σ_2 ∪ Σ_3'`.
    pub fn spheres(&self) -> SphereSet {
        let mut set = self.prism_spheres();
        for k in 0..self.stack {
            set.spheres.push(Sphere::new(self.stack_center(k, true), self.rho.clone()));
        }
        set
    }

    fn r_max(&self) -> Rational {
        self.base.iter().map(|s| s.radius.clone()).max().unwrap_or_else(Rational::zero)
    }

    /// Vertical facets of the point prism with every vertex in `{x_1 > 0}`.
    pub fn vertical_facets_in_y_plus(&self) -> Result<usize> {
        Ok(Prism::new(self.d, self.prism_points())?.y_plus.len())
    }
}

/// `2 − 2^{−k}`.
fn shift(k: usize) -> Rational {
    int(2) - Rational::new(1.into(), num_bigint::BigInt::from(2).pow(k as u32))
}

struct Prism {
    lattice: FaceLattice,
    ridges: Vec<usize>,
    vertical: Vec<usize>,
    y_plus: Vec<usize>,
}

impl Prism {
    fn new(d: usize, points: Vec<Point>) -> Result<Self> {
        let lattice = hull(&points)?;
        if !lattice.is_full_dimensional() {
            return Err(Error::NotFullDimensional { intrinsic: lattice.intrinsic_dim, ambient: d });
        }
        let ridges: Vec<usize> = lattice.faces_of_dim(d as i32 - 2).map(|f| f.id).collect();
        let vertical: Vec<usize> = lattice
            .facets()
            .filter(|f| f.outward_normal().is_some_and(|n| n[d - 1].is_zero()))
            .map(|f| f.id)
            .collect();
        let y_plus = vertical
            .iter()
            .copied()
            .filter(|&f| lattice.face(f).vertices.iter().all(|&v| points[v][0].is_positive()))
            .collect();
        Ok(Prism { lattice, ridges, vertical, y_plus })
    }

    fn face_sq(&self, c: &Point, face: usize) -> Rational {
        let rows: Vec<(Vec<Rational>, Rational)> = self
            .lattice
            .face(face)
            .vertices
            .iter()
            .map(|&v| (sub(&self.lattice.points[v], c), Rational::one()))
            .collect();
        min_norm_qp(&rows).expect("faces are non-empty").min_sq
    }

    fn facet_distances(&self, c: &Point, facet: usize) -> FacetDistances {
        let face = self.lattice.face(facet);
        let far_sq = face
            .vertices
            .iter()
            .map(|&v| {
                let w = sub(&self.lattice.points[v], c);
                dot(&w, &w)
            })
            .max()
            .expect("facets have vertices");
        FacetDistances { dist_sq: self.face_sq(c, facet), far_sq }
    }

    /// `−h|h| − (1 + r)(ρ² − s²/4)‖n_⊥‖² − (r + r²)‖n‖²` over `‖n‖²`, where
    /// `h` is the signed value of the facet plane at the radical center and
    /// `n_⊥` the part of the facet normal orthogonal to `e_1`. Positive only
    /// if the radical sphere of `σ_k, σ_k'` thickened by `r` lies beneath the
    /// facet, by `(a + b)² ≤ (1 + r)a² + (1 + 1/r)b²`; exact for `r = 0`.
    fn radical_margin(&self, c: &Point, s: &Rational, rho: &Rational, r: &Rational, facet: usize) -> Rational {
        let h = self.lattice.face(facet).hyperplane.as_ref().expect("facets carry hyperplanes");
        let mut m = c.clone();
        m.0[0] += s / int(2);
        let val = h.eval(&m);
        let nn = dot(&h.normal, &h.normal);
        let n_perp = &nn - &h.normal[0] * &h.normal[0];
        let rad_sq = rho * rho - s * s / int(4);
        let one = Rational::one();
        let spread = (&one + r) * rad_sq * n_perp + (r + r * r) * &nn;
        (-&val * val.abs() - spread) / nn
    }
}

struct FacetDistances {
    dist_sq: Rational,
    far_sq: Rational,
}

struct Margins<'a> {
    rho: &'a Rational,
    r: &'a Rational,
}

impl Margins<'_> {
    fn ridge(&self, dist_sq: &Rational) -> Rational {
        let reach = self.rho + self.r;
        dist_sq - &reach * &reach
    }

    fn crossing(&self, dist_sq: &Rational) -> Rational {
        let reach = self.rho - self.r;
        &reach * reach.abs() - dist_sq
    }

    fn vertex(&self, far_sq: &Rational) -> Rational {
        let reach = self.rho + self.r;
        far_sq - &reach * &reach
    }
}

fn facet_checks(
    out: &mut Vec<Check>,
    prism: &Prism,
    m: &Margins<'_>,
    k: usize,
    perturbed: bool,
    facet: usize,
    fd: &FacetDistances,
) {
    let face = prism.lattice.face(facet).vertices.clone();
    let mut push = |condition, margin| {
        out.push(Check { condition, sphere: k, perturbed, face: face.clone(), margin });
    };
    push(Condition::FacetCrossing, m.crossing(&fd.dist_sq));
    push(Condition::VertexOutside, m.vertex(&fd.far_sq));
}

/// Checks for the stack sphere `k`: ridges and facets (all vertical facets
/// when unperturbed, those in `{x_1 > 0}` otherwise), plus the radical
/// condition for perturbed spheres. Crossing a facet's interior is certified
/// by the point of the facet nearest the center lying inside the sphere and
/// some facet vertex outside it. With the ridges clear, the nearest point is
/// in the relative interior, and so is the segment from it towards the
/// vertex up to where it meets the sphere.
fn stack_checks(inst: &LowerBoundInstance, prism: &Prism, k: usize, perturbed: bool, with_ridges: bool) -> Vec<Check> {
    let r = inst.r_max();
    let m = Margins { rho: &inst.rho, r: &r };
    let c = inst.stack_center(k, perturbed);
    let mut out = Vec::new();
    let facets = if perturbed { &prism.y_plus } else { &prism.vertical };
    for &f in facets {
        facet_checks(&mut out, prism, &m, k, perturbed, f, &prism.facet_distances(&c, f));
        if perturbed {
            let s = &inst.eps * shift(k);
            let base = inst.stack_center(k, false);
            out.push(Check {
                condition: Condition::RadicalInside,
                sphere: k,
                perturbed,
                face: prism.lattice.face(f).vertices.clone(),
                margin: prism.radical_margin(&base, &s, &inst.rho, &r, f),
            });
        }
    }
    if with_ridges {
        for &ridge in &prism.ridges {
            out.push(Check {
                condition: Condition::RidgeClear,
                sphere: k,
                perturbed,
                face: prism.lattice.face(ridge).vertices.clone(),
                margin: m.ridge(&prism.face_sq(&c, ridge)),
            });
        }
    }
    out
}

/// Compares the lateral faces (vertices on both `Σ_1` and `Σ_2`) of the
/// point prism with the sphere-hull faces of `Σ_1 ∪ Σ_2`, each lateral
/// `j`-face needing exactly one tangency region of circularity `d − j − 1`
/// on the same spheres. Margin `1` on a match, `−1` otherwise.
fn prism_equivalence(inst: &LowerBoundInstance, prism: &Prism) -> Result<Check> {
    let d = inst.d as i32;
    let split = inst.base.len();
    let lateral = |vs: &[usize]| vs.iter().any(|&v| v < split) && vs.iter().any(|&v| v >= split);
    let expected: BTreeSet<(i32, Vec<usize>)> = prism
        .lattice
        .faces()
        .iter()
        .filter(|f| f.dim >= 1 && f.dim < d && lateral(&f.vertices))
        .map(|f| (d - f.dim - 1, f.vertices.clone()))
        .collect();
    let report = sphere_hull_faces(&inst.prism_spheres())?;
    let mut found = BTreeSet::new();
    let mut ok = report.degenerate.is_empty();
    for o in &report.outcomes {
        let Regions::Count(n) = o.regions else { continue };
        if n == 0 {
            continue;
        }
        let mut spheres: Vec<usize> =
            report.lattice.face(o.face).vertices.iter().map(|&v| report.lifted.sphere_of[v]).collect();
        spheres.sort_unstable();
        if lateral(&spheres) {
            ok &= n == 1;
            ok &= found.insert((d - o.dim - 1, spheres));
        }
    }
    ok &= found == expected;
    Ok(Check {
        condition: Condition::PrismEquivalence,
        sphere: 0,
        perturbed: false,
        face: Vec::new(),
        margin: if ok { int(1) } else { int(-1) },
    })
}

/// Re-derives every predicate of the construction from the instance
/// parameters.
pub fn check_conditions(instance: &LowerBoundInstance) -> Result<Certificate> {
    let prism = Prism::new(instance.d, instance.prism_points())?;
    let mut checks = Vec::new();
    for perturbed in [false, true] {
        for k in 0..instance.stack {
            checks.extend(stack_checks(instance, &prism, k, perturbed, true));
        }
    }
    if instance.r.is_some() {
        checks.push(prism_equivalence(instance, &prism)?);
    }
    Ok(Certificate { checks })
}

/// Smallest `k/4` whose square is at least `δ`.
fn root_bound(delta: usize) -> Rational {
    let mut k = 1i64;
    while k * k < 16 * delta as i64 {
        k += 1;
    }
    rat(k, 4)
}

fn first_failure(checks: &[Check]) -> Option<Condition> {
    checks.iter().find(|c| !c.passed()).map(|c| c.condition)
}

fn exhausted(condition: &str) -> Error {
    Error::SearchExhausted { condition: condition.into() }
}

/// Σ_1, Σ_2 and Σ_3' with points for `Σ_1, Σ_2`; `ρ` by bisection, then `ε`
/// by halving.
fn skeleton(d: usize, n1: usize, n2: usize, seed: u64) -> Result<(LowerBoundInstance, Prism)> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("dimension must be odd and at least 3, got {d}")));
    }
    if n1 < d || n2 < 1 {
        return Err(Error::InvalidInput("need n1 ≥ d and n2 ≥ 1".into()));
    }
    let delta = (d - 1) / 2;
    let big_r = root_bound(delta);
    let mut rng = rng::stream(seed, 0);
    let mut params = distinct_parameters(&mut rng, n1, &rat(1, 2));
    params.push(int(2));
    let z1 = Rational::zero();
    let z2 = int(2 * (n2 as i64 + 2) + 1) * &big_r;
    let base = params
        .iter()
        .map(|s| Sphere::new(moment_curve_point(delta, s).lifted(z1.clone()), Rational::zero()))
        .collect();
    let mut inst = LowerBoundInstance {
        d,
        n: alloc::vec![n1, n2],
        z1,
        z2,
        big_r: big_r.clone(),
        rho: Rational::zero(),
        eps: Rational::zero(),
        r: None,
        base,
        stack: n2 + 2,
        trace: Vec::new(),
        certificate: Certificate::default(),
    };
    let prism = Prism::new(d, inst.prism_points())?;

    // ρ: too small misses a facet, too large touches a ridge or swallows a facet.
    let ridge_sq: Vec<Vec<Rational>> = (0..inst.stack)
        .map(|k| {
            let c = inst.stack_center(k, false);
            prism.ridges.iter().map(|&r| prism.face_sq(&c, r)).collect()
        })
        .collect();
    let facet_dist: Vec<FacetDistances> = (0..inst.stack)
        .flat_map(|k| {
            let c = inst.stack_center(k, false);
            prism.vertical.iter().map(|&f| prism.facet_distances(&c, f)).collect::<Vec<_>>()
        })
        .collect();
    // Every ρ crossing the farthest facet also reaches the nearest ridge.
    // This happens once the base has edges passing near the axis, as the
    // neighborly bases in d ≥ 5 do.
    let farthest_facet = facet_dist.iter().map(|fd| &fd.dist_sq).max().expect("prisms have vertical facets");
    let nearest_ridge = ridge_sq.iter().flatten().min().expect("prisms have ridges");
    if farthest_facet >= nearest_ridge {
        return Err(exhausted("facet-crossing and ridge-clear"));
    }
    let (mut lo, mut hi) = (Rational::zero(), big_r);
    let mut found = false;
    for _ in 0..BISECTION_STEPS {
        inst.rho = (&lo + &hi) / int(2);
        let m = Margins { rho: &inst.rho, r: &Rational::zero() };
        let too_small = facet_dist.iter().any(|fd| !m.crossing(&fd.dist_sq).is_positive());
        let too_large = ridge_sq.iter().flatten().any(|s| !m.ridge(s).is_positive())
            || facet_dist.iter().any(|fd| !m.vertex(&fd.far_sq).is_positive());
        inst.trace.push(format!(
            "rho {}: {}",
            inst.rho,
            match (too_small, too_large) {
                (false, false) => "ok",
                (true, false) => "misses a facet",
                (false, true) => "touches a ridge",
                (true, true) => "both",
            }
        ));
        match (too_small, too_large) {
            (false, false) => {
                found = true;
                break;
            }
            (true, false) => lo = inst.rho.clone(),
            (false, true) => hi = inst.rho.clone(),
            (true, true) => return Err(exhausted("facet-crossing and ridge-clear")),
        }
    }
    if !found {
        return Err(exhausted("facet-crossing and ridge-clear"));
    }

    // ε: halve until the shifted stack passes. A shift of at most 2ε keeps
    // ridges clear once dist(c_k, ridge) > ρ + 2ε, which avoids a QP per step.
    let closest_ridge = ridge_sq.iter().flatten().min().cloned().unwrap_or_else(Rational::zero);
    inst.eps = Rational::one();
    let mut failing = None;
    for _ in 0..HALVING_STEPS {
        let checks: Vec<Check> = (0..inst.stack).flat_map(|k| stack_checks(&inst, &prism, k, true, false)).collect();
        failing = first_failure(&checks);
        let reach = &inst.rho + int(2) * &inst.eps;
        if failing.is_none() && closest_ridge <= &reach * &reach {
            failing = Some(Condition::RidgeClear);
        }
        inst.trace.push(format!("eps {}: {}", inst.eps, failing.map_or("ok", Condition::name)));
        if failing.is_none() {
            break;
        }
        inst.eps /= int(2);
    }
    if let Some(c) = failing {
        return Err(exhausted(c.name()));
    }
    Ok((inst, prism))
}

/// Two radii: `n1 + 1` points on each of two parallel hyperplanes and a
/// shifted stack of `n2 + 2` spheres of radius `ρ`.
pub fn lb2_instance(d: usize, n1: usize, n2: usize, seed: u64) -> Result<LowerBoundInstance> {
    let (mut inst, _) = skeleton(d, n1, n2, seed)?;
    inst.certificate = check_conditions(&inst)?;
    if let Some(c) = inst.certificate.failures().next() {
        return Err(exhausted(c.condition.name()));
    }
    Ok(inst)
}

/// `m ≥ 3` radii: the two-radius skeleton with `N_1 = n_2 + … + n_m` and
/// `N_2 = n_1`, where `n_i` of the points in `{x_1 > 0}` become spheres of
/// radius `r^i` (`i ≥ 2`) and the point in `{x_1 < 0}` gets radius `r²`.
/// `r` is halved until the certificate passes against margins of `r²`.
pub fn lbm_instance(d: usize, n: &[usize], seed: u64) -> Result<LowerBoundInstance> {
    if n.len() < 3 {
        return Err(Error::InvalidInput("need at least three radius classes".into()));
    }
    let big_n1: usize = n[1..].iter().sum();
    let (mut inst, _) = skeleton(d, big_n1, n[0], seed)?;
    inst.n = n.to_vec();
    let mut rng = rng::stream(seed, 1);
    let order = rng::permutation(&mut rng, big_n1);
    let mut class = alloc::vec![0u32; big_n1 + 1];
    let mut next = 0;
    for (i, &count) in n.iter().enumerate().skip(1) {
        for &p in &order[next..next + count] {
            class[p] = i as u32 + 1;
        }
        next += count;
    }
    class[big_n1] = 2;

    let mut r = rat(1, 2);
    let mut failing = None;
    for _ in 0..HALVING_STEPS {
        for (s, &e) in inst.base.iter_mut().zip(&class) {
            s.radius = num_traits::pow(r.clone(), e as usize);
        }
        inst.r = Some(r.clone());
        let cert = check_conditions(&inst)?;
        failing = cert.failures().next().map(|c| c.condition);
        inst.trace.push(format!("r {}: {}", r, failing.map_or("ok", Condition::name)));
        if failing.is_none() {
            inst.certificate = cert;
            break;
        }
        r /= int(2);
    }
    match failing {
        Some(c) => Err(exhausted(c.name())),
        None => Ok(inst),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lb2_small_instance_passes() {
        let inst = lb2_instance(3, 4, 2, 1).unwrap();
        assert_eq!(inst.spheres().len(), 14);
        assert!(inst.certificate.all_pass());
        assert!(inst.rho < inst.big_r);
        assert!(inst.z2.clone() - &inst.z1 > int(2 * (2 + 2)) * &inst.big_r);
        let again = lb2_instance(3, 4, 2, 1).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn prism_shape() {
        let inst = lb2_instance(3, 5, 1, 3).unwrap();
        let pts = inst.prism_points();
        let y_minus: Vec<usize> = (0..pts.len()).filter(|&i| pts[i][0].is_negative()).collect();
        assert_eq!(y_minus, vec![5, 11]);
        for s in &inst.base {
            let c = &s.center;
            assert_eq!(dot(&c[..2], &c[..2]), int(1));
        }
        // six polygon edges, four of them in x_1 > 0
        let prism = Prism::new(3, pts).unwrap();
        assert_eq!(prism.vertical.len(), 6);
        assert_eq!(prism.y_plus.len(), 4);
        for e in prism.lattice.faces_of_dim(1) {
            let (a, b) = (&prism.lattice.points[e.vertices[0]], &prism.lattice.points[e.vertices[1]]);
            if a[2] != b[2] {
                assert_eq!(a[..2], b[..2]);
            }
        }
    }

    #[test]
    fn doubled_radius_touches_a_ridge() {
        let mut inst = lb2_instance(3, 4, 2, 1).unwrap();
        inst.rho *= int(2);
        let cert = check_conditions(&inst).unwrap();
        assert!(cert.failures().any(|c| c.condition == Condition::RidgeClear));
    }

    #[test]
    fn unit_shift_breaks_the_radical_condition() {
        let mut inst = lb2_instance(3, 4, 2, 1).unwrap();
        inst.eps = int(1);
        let cert = check_conditions(&inst).unwrap();
        assert!(cert.failures().any(|c| c.condition == Condition::RadicalInside));
    }

    #[test]
    fn many_radii_instance_passes() {
        let inst = lbm_instance(3, &[2, 2, 2], 1).unwrap();
        assert!(inst.certificate.all_pass());
        let r = inst.r.clone().unwrap();
        let radii: Vec<Rational> = inst.spheres().radii_classes().into_iter().map(|c| c.0).collect();
        assert_eq!(radii, vec![&r * &r * &r, &r * &r, inst.rho.clone()]);
    }

    #[test]
    fn radical_margin_is_continuous_in_r() {
        let inst = lb2_instance(3, 4, 2, 1).unwrap();
        let prism = Prism::new(3, inst.prism_points()).unwrap();
        let c = inst.stack_center(1, false);
        let f = prism.y_plus[0];
        let at = |r: Rational| prism.radical_margin(&c, &inst.eps, &inst.rho, &r, f);
        let base = at(Rational::zero());
        let tiny = at(rat(1, 1 << 40));
        assert!(tiny < base);
        assert!((base - tiny) < rat(1, 1 << 30));
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(lb2_instance(4, 5, 1, 0).is_err());
        assert!(lb2_instance(3, 2, 1, 0).is_err());
        assert!(lbm_instance(3, &[2, 2], 0).is_err());
    }
}
