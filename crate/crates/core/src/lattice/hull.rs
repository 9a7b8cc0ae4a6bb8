//! Incremental beneath-beyond hull.
//!
//! Points are projected onto coordinates that parametrize their affine hull
//! and scaled per coordinate to integers, so every side test is an integer
//! dot product. Facets are kept as (primitive hyperplane, vertex set); points
//! on a facet's hyperplane join that facet instead of splitting it, so
//! coplanar groups produce non-simplicial facets.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{maximal_sets, FaceLattice};
use crate::exact::{nullspace, rank, row_reduce, sub, Hyperplane, Point, Rational};
use crate::{rng, Error, Result};

/// Hull of `points`, inserting in index order.
pub fn hull(points: &[Point]) -> Result<FaceLattice> {
    let order: Vec<usize> = (0..points.len()).collect();
    hull_in_order(points, &order)
}

/// Hull of `points`, inserting in an order shuffled by `seed`.
pub fn hull_shuffled(points: &[Point], seed: u64) -> Result<FaceLattice> {
    let order = rng::permutation(&mut rng::stream(seed, 0), points.len());
    hull_in_order(points, &order)
}

/// Hull of `points` with the insertion order given as a permutation of
/// indices. The result does not depend on the order.
pub fn hull_in_order(points: &[Point], order: &[usize]) -> Result<FaceLattice> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let ambient = first.dim();
    if let Some(p) = points.iter().find(|p| p.dim() != ambient) {
        return Err(Error::DimensionMismatch { expected: ambient, found: p.dim() });
    }
    if order.len() != points.len() {
        return Err(Error::InvalidInput("insertion order is not a permutation".into()));
    }
    hull_of(points, order)
}

/// Hull of the points whose indices appear in `ids`, inserted in that order.
/// Vertex ids in the result still index into `points`.
pub fn hull_of(points: &[Point], ids: &[usize]) -> Result<FaceLattice> {
    let first = ids.first().map(|&i| points.get(i)).ok_or(Error::EmptyInput)?;
    let ambient = first.ok_or_else(|| Error::InvalidInput("point id out of range".into()))?.dim();
    let mut seen = alloc::vec![false; points.len()];
    if ids.iter().any(|&i| i >= points.len() || core::mem::replace(&mut seen[i], true)) {
        return Err(Error::InvalidInput("point ids repeat or are out of range".into()));
    }
    if let Some(&i) = ids.iter().find(|&&i| points[i].dim() != ambient) {
        return Err(Error::DimensionMismatch { expected: ambient, found: points[i].dim() });
    }
    let order = ids;

    // Equal points collapse onto their lowest index.
    let mut sorted_ids = ids.to_vec();
    sorted_ids.sort_unstable();
    let mut rep: BTreeMap<&[Rational], usize> = BTreeMap::new();
    for &i in &sorted_ids {
        rep.entry(points[i].coords()).or_insert(i);
    }
    let ord: Vec<usize> = order.iter().copied().filter(|&i| rep[points[i].coords()] == i).collect();

    // Affine basis, greedily in insertion order.
    let base = ord[0];
    let mut basis = alloc::vec![base];
    let mut diffs: Vec<Vec<Rational>> = Vec::new();
    for &i in &ord[1..] {
        if diffs.len() == ambient {
            break;
        }
        let mut trial = diffs.clone();
        trial.push(sub(&points[i], &points[base]));
        if rank(&trial) > diffs.len() {
            diffs = trial;
            basis.push(i);
        }
    }
    let k = diffs.len();
    if k == 0 {
        return Ok(FaceLattice::point(ambient, points.to_vec(), base));
    }
    let pivots = row_reduce(&diffs, ambient).pivots;

    // Per-coordinate scale making every projected coordinate an integer.
    let scale: Vec<BigInt> = pivots
        .iter()
        .map(|&c| ord.iter().fold(BigInt::one(), |acc, &i| acc.lcm(points[i][c].denom())))
        .collect();
    let mut xs: Vec<Vec<BigInt>> = alloc::vec![Vec::new(); points.len()];
    for &i in &ord {
        xs[i] = pivots
            .iter()
            .zip(&scale)
            .map(|(&c, s)| (&points[i][c] * Rational::from_integer(s.clone())).to_integer())
            .collect();
    }

    let to_ambient = |h: &IntPlane| -> Hyperplane {
        let mut normal = alloc::vec![Rational::zero(); ambient];
        for ((&c, s), n) in pivots.iter().zip(&scale).zip(&h.normal) {
            normal[c] = Rational::from_integer(n * s);
        }
        let g = normal
            .iter()
            .fold(h.offset.abs(), |acc, x| acc.gcd(x.numer()));
        let g = Rational::from_integer(g);
        Hyperplane {
            normal: normal.into_iter().map(|x| x / &g).collect(),
            offset: Rational::from_integer(h.offset.clone()) / g,
        }
    };

    let facets: Vec<(IntPlane, Vec<usize>)> = if k == 1 {
        let lo = *ord.iter().min_by(|&&a, &&b| xs[a][0].cmp(&xs[b][0])).expect("non-empty");
        let hi = *ord.iter().max_by(|&&a, &&b| xs[a][0].cmp(&xs[b][0])).expect("non-empty");
        alloc::vec![
            (IntPlane { normal: alloc::vec![BigInt::one()], offset: xs[hi][0].clone() }, alloc::vec![hi]),
            (IntPlane { normal: alloc::vec![-BigInt::one()], offset: -xs[lo][0].clone() }, alloc::vec![lo]),
        ]
    } else {
        let mut state = Incremental::new(&xs, &basis, k);
        for &i in &ord {
            if !basis.contains(&i) {
                state.insert(&xs, i);
            }
        }
        state.into_facets()
    };
    let facets = facets.into_iter().map(|(h, v)| (to_ambient(&h), v)).collect();
    Ok(FaceLattice::from_facets(ambient, k, points.to_vec(), facets))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct IntPlane {
    normal: Vec<BigInt>,
    offset: BigInt,
}

impl IntPlane {
    fn eval(&self, x: &[BigInt]) -> BigInt {
        self.normal.iter().zip(x).fold(BigInt::zero(), |acc, (a, b)| acc + a * b) - &self.offset
    }

    /// Hyperplane through `pts` (affinely independent, `k` of them in `E^k`),
    /// oriented so that `interior_sum / scale` lies strictly beneath, and
    /// reduced to primitive integers.
    fn through(pts: &[&[BigInt]], interior_sum: &[BigInt], scale: usize) -> IntPlane {
        let k = pts[0].len();
        let rows: Vec<Vec<Rational>> = pts[1..]
            .iter()
            .map(|p| p.iter().zip(pts[0]).map(|(a, b)| Rational::from_integer(a - b)).collect())
            .collect();
        let ns = nullspace(&rows, k);
        debug_assert_eq!(ns.len(), 1);
        let den = ns[0].iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut normal: Vec<BigInt> = ns[0]
            .iter()
            .map(|x| (x * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let g = normal.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for x in normal.iter_mut() {
            *x /= &g;
        }
        let mut offset = normal.iter().zip(pts[0]).fold(BigInt::zero(), |acc, (a, b)| acc + a * b);
        let c = normal.iter().zip(interior_sum).fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            - &offset * BigInt::from(scale);
        debug_assert!(!c.is_zero(), "interior point on a facet hyperplane");
        if c.is_positive() {
            for x in normal.iter_mut() {
                *x = -&*x;
            }
            offset = -offset;
        }
        IntPlane { normal, offset }
    }
}

struct Facet {
    plane: IntPlane,
    verts: Vec<usize>,
}

struct Incremental {
    k: usize,
    facets: Vec<Option<Facet>>,
    incident: BTreeMap<usize, BTreeSet<usize>>,
    interior_sum: Vec<BigInt>,
}

impl Incremental {
    fn new(xs: &[Vec<BigInt>], basis: &[usize], k: usize) -> Self {
        let mut interior_sum = alloc::vec![BigInt::zero(); k];
        for &b in basis {
            for (s, x) in interior_sum.iter_mut().zip(&xs[b]) {
                *s += x;
            }
        }
        let mut state = Incremental { k, facets: Vec::new(), incident: BTreeMap::new(), interior_sum };
        for skip in 0..basis.len() {
            let mut verts: Vec<usize> = basis.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &b)| b).collect();
            verts.sort_unstable();
            let pts: Vec<&[BigInt]> = verts.iter().map(|&v| xs[v].as_slice()).collect();
            let plane = IntPlane::through(&pts, &state.interior_sum, k + 1);
            state.add_facet(plane, verts);
        }
        state
    }

    fn add_facet(&mut self, plane: IntPlane, verts: Vec<usize>) {
        let id = self.facets.len();
        for &v in &verts {
            self.incident.entry(v).or_default().insert(id);
        }
        self.facets.push(Some(Facet { plane, verts }));
    }

    fn remove_facet(&mut self, id: usize) -> Facet {
        let f = self.facets[id].take().expect("facet alive");
        for v in &f.verts {
            if let Some(s) = self.incident.get_mut(v) {
                s.remove(&id);
            }
        }
        f
    }

    fn facet(&self, id: usize) -> &Facet {
        self.facets[id].as_ref().expect("facet alive")
    }

    fn insert(&mut self, xs: &[Vec<BigInt>], p: usize) {
        let x = &xs[p];
        let visible: BTreeSet<usize> = self
            .facets
            .iter()
            .enumerate()
            .filter_map(|(i, f)| f.as_ref().filter(|f| f.plane.eval(x).is_positive()).map(|_| i))
            .collect();
        if visible.is_empty() {
            return;
        }

        // Horizon ridges: maximal intersections of a visible facet with its
        // neighbours, where the neighbour is not visible.
        let mut coplanar: BTreeSet<usize> = BTreeSet::new();
        let mut created: BTreeMap<IntPlane, BTreeSet<usize>> = BTreeMap::new();
        for &v in &visible {
            let mut shared: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for &u in &self.facet(v).verts {
                for &g in &self.incident[&u] {
                    if g != v {
                        shared.entry(g).or_default().push(u);
                    }
                }
            }
            let ridges = maximal_sets(shared.values().cloned().collect());
            for (g, ridge) in shared {
                if visible.contains(&g) || !ridges.contains(&ridge) {
                    continue;
                }
                if self.facet(g).plane.eval(x).is_zero() {
                    coplanar.insert(g);
                    continue;
                }
                let mut chosen: Vec<&[BigInt]> = alloc::vec![x.as_slice()];
                let mut diffs: Vec<Vec<Rational>> = Vec::new();
                for &u in &ridge {
                    if chosen.len() == self.k {
                        break;
                    }
                    let mut trial = diffs.clone();
                    trial.push(xs[u].iter().zip(x).map(|(a, b)| Rational::from_integer(a - b)).collect());
                    if rank(&trial) > diffs.len() {
                        diffs = trial;
                        chosen.push(&xs[u]);
                    }
                }
                debug_assert_eq!(chosen.len(), self.k);
                let plane = IntPlane::through(&chosen, &self.interior_sum, self.k + 1);
                let entry = created.entry(plane).or_default();
                entry.extend(ridge.iter().copied());
                entry.insert(p);
            }
        }

        let mut touched: BTreeSet<usize> = BTreeSet::new();
        for v in visible {
            touched.extend(self.remove_facet(v).verts);
        }
        for g in coplanar {
            let f = self.facets[g].as_mut().expect("facet alive");
            let pos = f.verts.binary_search(&p).unwrap_err();
            f.verts.insert(pos, p);
            self.incident.entry(p).or_default().insert(g);
        }
        for (plane, verts) in created {
            self.add_facet(plane, verts.into_iter().collect());
        }

        // Old vertices can stop being extreme once p is in; a vertex is
        // extreme iff the normals of its facets have full rank.
        for u in touched {
            let Some(fs) = self.incident.get(&u) else { continue };
            if fs.is_empty() {
                continue;
            }
            if !spans(fs.iter().map(|&f| &self.facet(f).plane.normal), self.k) {
                let fs: Vec<usize> = fs.iter().copied().collect();
                for f in fs {
                    let facet = self.facets[f].as_mut().expect("facet alive");
                    facet.verts.retain(|&w| w != u);
                }
                self.incident.remove(&u);
            }
        }
    }

    fn into_facets(self) -> Vec<(IntPlane, Vec<usize>)> {
        self.facets.into_iter().flatten().map(|f| (f.plane, f.verts)).collect()
    }
}

/// Whether the integer vectors span `Z^k ⊗ Q`; stops at the first `k`
/// independent ones.
fn spans<'a>(rows: impl Iterator<Item = &'a Vec<BigInt>>, k: usize) -> bool {
    // Echelon rows with their pivot columns, kept fraction-free.
    let mut basis: Vec<(usize, Vec<BigInt>)> = Vec::with_capacity(k);
    for row in rows {
        let mut r = row.clone();
        for (c, b) in &basis {
            if !r[*c].is_zero() {
                let (f, g) = (b[*c].clone(), r[*c].clone());
                for (x, y) in r.iter_mut().zip(b) {
                    *x = &*x * &f - y * &g;
                }
            }
        }
        if let Some(c) = r.iter().position(|x| !x.is_zero()) {
            let g = r.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            for x in r.iter_mut() {
                *x /= &g;
            }
            basis.push((c, r));
            if basis.len() == k {
                return true;
            }
        }
    }
    false
}
