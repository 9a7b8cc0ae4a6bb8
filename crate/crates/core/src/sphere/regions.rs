//! Connected tangency regions of a lifted face.
//!
//! For a face `F` of the lifted hull, the unit directions `u` whose
//! supporting hyperplane touches exactly the spheres of `F` form
//! `relint(Q) ∩ S^{d−1}`, where
//!
//! `Q = {u : u·(c_w − c_v) ≤ r_v − r_w for edges vw leaving F,
//!           u·(c_v − c_0) = r_0 − r_v for v ∈ F}`.
//!
//! Each connected component is one face of the sphere hull. When `Q` meets
//! the open unit ball, radial projection from a point of that intersection
//! shows the components of `Q ∩ S` match those of `Q` minus the open ball,
//! and clipping by any box containing the ball changes nothing. For a convex
//! polytope minus an open convex body, components are read off the
//! vertex-edge graph: vertices outside the body, joined by edges that avoid
//! it.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::exact::{dot, lp_interior_point, nullspace, snap_strict, solve, sub, Hyperplane, Point, Rational};
use crate::lattice::{hull, FaceLattice};
use super::cone::Reach;

/// Affine chart `u = a0 + Σ y_i b_i` of the equality part of `Q`, with
/// `b_i` mutually orthogonal and `a0` orthogonal to all of them.
struct Chart {
    a0: Vec<Rational>,
    basis: Vec<Vec<Rational>>,
    /// `‖b_i‖²`.
    gram: Vec<Rational>,
}

impl Chart {
    fn new(eq_rows: &[Vec<Rational>], eq_rhs: &[Rational], d: usize) -> Option<Chart> {
        let particular = if eq_rows.is_empty() {
            alloc::vec![Rational::zero(); d]
        } else {
            solve(eq_rows, eq_rhs)?
        };
        let raw = if eq_rows.is_empty() {
            (0..d)
                .map(|i| (0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
                .collect()
        } else {
            nullspace(eq_rows, d)
        };
        let mut basis: Vec<Vec<Rational>> = Vec::new();
        let mut gram: Vec<Rational> = Vec::new();
        for v in raw {
            let mut w = v;
            for (b, g) in basis.iter().zip(&gram) {
                let c = dot(&w, b) / g;
                w = w.iter().zip(b).map(|(x, y)| x - &c * y).collect();
            }
            gram.push(dot(&w, &w));
            basis.push(w);
        }
        let mut a0 = particular;
        for (b, g) in basis.iter().zip(&gram) {
            let c = dot(&a0, b) / g;
            a0 = a0.iter().zip(b).map(|(x, y)| x - &c * y).collect();
        }
        Some(Chart { a0, basis, gram })
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Σ g_i y_i²`, so that `‖u‖² = ‖a0‖² + q(y)`.
    fn q(&self, y: &[Rational]) -> Rational {
        y.iter().zip(&self.gram).map(|(yi, g)| yi * yi * g).sum()
    }

    fn q_bilinear(&self, a: &[Rational], b: &[Rational]) -> Rational {
        a.iter().zip(b).zip(&self.gram).map(|((x, y), g)| x * y * g).sum()
    }
}

/// Outcome of counting the tangency regions of one face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regions {
    /// Number of connected components (possibly 0).
    Count(u64),
    /// The region touches the unit sphere without crossing it.
    Degenerate,
}

/// Counts components of `{u ∈ Q : ‖u‖ = 1}` given the equality rows
/// `(c_v − c_0, r_0 − r_v)` and inequality rows `(c_w − c_v, r_v − r_w)`, and
/// where `Q` sits relative to the unit ball.
pub(crate) fn count_regions(
    d: usize,
    equalities: &[(Vec<Rational>, Rational)],
    inequalities: &[(Vec<Rational>, Rational)],
    reach: Reach,
) -> Regions {
    let one = Rational::one();
    match reach {
        Reach::Empty | Reach::Outside => return Regions::Count(0),
        Reach::Touching => return Regions::Degenerate,
        Reach::Inside => {}
    }
    let rows: Vec<Vec<Rational>> = equalities.iter().map(|(r, _)| r.clone()).collect();
    let rhs: Vec<Rational> = equalities.iter().map(|(_, b)| b.clone()).collect();
    let Some(chart) = Chart::new(&rows, &rhs, d) else { return Regions::Count(0) };
    let m = chart.dim();
    let rho_sq = &one - dot(&chart.a0, &chart.a0);
    if m == 0 || !rho_sq.is_positive() {
        // Reaching inside the ball rules these out; kept for robustness.
        return Regions::Degenerate;
    }

    // Halfspaces g·y ≤ h in chart coordinates: Q's inequalities and a box
    // |y_i| ≤ M strictly containing the ellipsoid q(y) < ρ².
    let mut g_rows: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for (row, b) in inequalities {
        let g: Vec<Rational> = chart.basis.iter().map(|bi| dot(row, bi)).collect();
        let h = b - dot(row, &chart.a0);
        if g.iter().all(Zero::is_zero) {
            if h.is_negative() {
                return Regions::Count(0);
            }
            continue;
        }
        g_rows.push((g, h));
    }
    let big = chart.gram.iter().map(|g| &rho_sq / g).fold(Rational::zero(), |a, b| if b > a { b } else { a }) + &one;
    for i in 0..m {
        for sign in [1i64, -1] {
            let mut g = alloc::vec![Rational::zero(); m];
            g[i] = Rational::from_integer(sign.into());
            g_rows.push((g, big.clone()));
        }
    }

    let (vertices, edges) = vertices_and_edges(&g_rows, m);
    let outside: Vec<bool> = vertices.iter().map(|y| chart.q(y) >= rho_sq).collect();
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    for &(a, b) in &edges {
        if !(outside[a] && outside[b]) {
            continue;
        }
        // Minimum of q on the segment.
        let dir = sub(&vertices[b], &vertices[a]);
        let dd = chart.q(&dir);
        let ad = chart.q_bilinear(&vertices[a], &dir);
        let s = if dd.is_zero() { Rational::zero() } else { -&ad / &dd };
        let s = if s.is_negative() { Rational::zero() } else if s > one { one.clone() } else { s };
        let pt: Vec<Rational> = vertices[a].iter().zip(&dir).map(|(x, y)| x + &s * y).collect();
        if chart.q(&pt) >= rho_sq {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let roots: BTreeSet<usize> = (0..vertices.len()).filter(|&i| outside[i]).map(|i| find(&mut parent, i)).collect();
    Regions::Count(roots.len() as u64)
}

/// Components of `{(u, t) ∈ N_F : t = ‖u‖ > 0}` for a face `F` of a
/// full-dimensional lifted hull whose normal cone `N_F` meets the open
/// Lorentz cone `L = {t > ‖u‖}`.
///
/// `N_F` is pointed, so some affine hyperplane cuts it in a polytope `P`
/// whose vertices are the facet normals through `F` and whose edges come
/// from the ridges through `F`. Retracting radially from a point of
/// `P ∩ L`, the components of `P ∩ ∂L` are those of `P ∖ L`, read off the
/// vertex-edge graph. Everything is invariant under positive scaling, so
/// the section is never formed: an edge avoids `L` iff the convex
/// combinations of its two normals do.
///
/// [`ConeSection::count`] assumes the cone meets `L`.
pub(crate) struct ConeSection {
    /// Per facet through `F`: whether its normal lies outside `L`.
    outside: Vec<bool>,
    /// Ridges through `F` as pairs of facet positions, with whether the
    /// edge between them enters `L`.
    edges: Vec<(usize, usize, bool)>,
}

impl ConeSection {
    pub(crate) fn new(lattice: &FaceLattice, face: usize) -> Self {
        let top = lattice.intrinsic_dim as i32;
        let mut up: BTreeSet<usize> = BTreeSet::new();
        let mut stack = alloc::vec![face];
        while let Some(g) = stack.pop() {
            for &h in &lattice.face(g).superfaces {
                if up.insert(h) {
                    stack.push(h);
                }
            }
        }
        let facets: Vec<usize> = up.iter().copied().filter(|&g| lattice.face(g).dim == top - 1).collect();
        let normal = |g: usize| &lattice.face(g).hyperplane.as_ref().expect("facets carry hyperplanes").normal;
        let outside: Vec<bool> =
            facets.iter().map(|&g| lorentz_excess(normal(g)).is_none_or(|e| !e.is_positive())).collect();
        let index = |g: usize| facets.binary_search(&g).expect("superfaces of a ridge through F contain F");
        let edges = up
            .iter()
            .filter(|&&r| lattice.face(r).dim == top - 2)
            .filter_map(|&r| match lattice.face(r).superfaces.as_slice() {
                &[g, h] => {
                    let (a, b) = (index(g), index(h));
                    let enters = !(outside[a] && outside[b]) || segment_enters_cone(normal(g), normal(h));
                    Some((a, b, enters))
                }
                _ => None,
            })
            .collect();
        ConeSection { outside, edges }
    }

    /// Whether a vertex or an edge of the section lies in `L`. Sufficient
    /// for the cone to meet `L`, not necessary.
    pub(crate) fn meets_lorentz(&self) -> bool {
        self.outside.iter().any(|o| !o) || self.edges.iter().any(|e| e.2)
    }

    pub(crate) fn count(&self) -> Regions {
        let mut parent: Vec<usize> = (0..self.outside.len()).collect();
        for &(a, b, enters) in &self.edges {
            if !enters {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        let roots: BTreeSet<usize> =
            (0..self.outside.len()).filter(|&i| self.outside[i]).map(|i| find(&mut parent, i)).collect();
        Regions::Count(roots.len() as u64)
    }
}

/// `t² − ‖u‖²` for `x = (u, t)` with `t > 0`, `None` otherwise.
fn lorentz_excess(x: &[Rational]) -> Option<Rational> {
    let (t, u) = x.split_last().expect("lifted vectors are non-empty");
    t.is_positive().then(|| t * t - dot(u, u))
}

/// Whether the segment `[a, b]` meets the open cone `t > ‖u‖`.
fn segment_enters_cone(a: &[Rational], b: &[Rational]) -> bool {
    let dir = sub(b, a);
    let (ta, ua) = a.split_last().expect("non-empty");
    let (dt, du) = dir.split_last().expect("non-empty");
    // f(s) = t(s)² − ‖u(s)‖² = qa s² + qb s + qc on the part of [0, 1] with t ≥ 0.
    let qa = dt * dt - dot(du, du);
    let qb = Rational::from_integer(2.into()) * (ta * dt - dot(ua, du));
    let qc = ta * ta - dot(ua, ua);
    let zero = Rational::zero();
    let one = Rational::one();
    let (lo, hi) = if dt.is_zero() {
        if ta.is_negative() {
            return false;
        }
        (zero, one)
    } else {
        let root = -ta / dt;
        if dt.is_positive() {
            (if root > zero { root } else { zero }, one)
        } else {
            (zero, if root < one { root } else { one })
        }
    };
    if lo > hi {
        return false;
    }
    let f = |s: &Rational| &qa * s * s + &qb * s + &qc;
    let mut candidates = alloc::vec![lo.clone(), hi.clone()];
    if qa.is_negative() {
        let s = -&qb / (Rational::from_integer(2.into()) * &qa);
        if s > lo && s < hi {
            candidates.push(s);
        }
    }
    candidates.iter().any(|s| f(s).is_positive())
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut c = x;
    while p[c] != r {
        let n = p[c];
        p[c] = r;
        c = n;
    }
    r
}

/// Vertices and edges of the bounded polytope `{y : g·y ≤ h}` in `E^m`,
/// through the polar: its vertices are the facets of the hull of the poles
/// `g/(h − g·c)` about an interior point `c`, and its edges are the ridges.
fn vertices_and_edges(rows: &[(Vec<Rational>, Rational)], m: usize) -> (Vec<Vec<Rational>>, Vec<(usize, usize)>) {
    let strict: Vec<Hyperplane> = rows
        .iter()
        .map(|(g, h)| Hyperplane { normal: g.iter().map(|x| -x).collect(), offset: -h })
        .collect();
    let Some(c) = lp_interior_point(&strict).point() else {
        return (Vec::new(), Vec::new());
    };
    let c = snap_strict(&c, &strict);
    let poles: Vec<Point> = rows
        .iter()
        .map(|(g, h)| {
            let beta = h - dot(g, &c);
            Point::new(g.iter().map(|x| x / &beta).collect())
        })
        .collect();
    let dual: FaceLattice = hull(&poles).expect("poles of a bounded polytope");
    debug_assert_eq!(dual.intrinsic_dim, m);
    let facets: Vec<_> = dual.facets().collect();
    let vertices: Vec<Vec<Rational>> = facets
        .iter()
        .map(|f| {
            let h = f.hyperplane.as_ref().expect("facets carry hyperplanes");
            c.iter().zip(&h.normal).map(|(ci, n)| ci + n / &h.offset).collect()
        })
        .collect();
    let index = |id: usize| facets.iter().position(|f| f.id == id).expect("superface is a facet");
    let edges = dual
        .faces_of_dim(m as i32 - 2)
        .filter(|r| r.superfaces.len() == 2)
        .map(|r| (index(r.superfaces[0]), index(r.superfaces[1])))
        .collect();
    (vertices, edges)
}
