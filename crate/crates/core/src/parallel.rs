//! Point sets on parallel hyperplanes `x_{d+1} = height_i`.

use alloc::vec::Vec;

use crate::exact::{lp_interior_point, snap_strict, Hyperplane, Point, Rational};
use crate::lattice::{hull, FaceLattice};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub height: Rational,
    pub points: Vec<Point>,
}

/// Layers of points in `E^d`, stacked at strictly increasing heights into
/// `E^{d+1}`. Stacked point ids run through the layers in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredPointSet {
    pub d: usize,
    pub layers: Vec<Layer>,
}

impl LayeredPointSet {
    pub fn new(d: usize, layers: Vec<Layer>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::EmptyInput);
        }
        if layers.windows(2).any(|w| w[0].height >= w[1].height) {
            return Err(Error::InvalidInput("layer heights must increase strictly".into()));
        }
        for p in layers.iter().flat_map(|l| &l.points) {
            if p.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
            }
        }
        Ok(LayeredPointSet { d, layers })
    }

    pub fn counts(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.points.len()).collect()
    }

    pub fn len(&self) -> usize {
        self.layers.iter().map(|l| l.points.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Layer index of stacked point `id`.
    pub fn layer_of(&self, id: usize) -> usize {
        let mut start = 0;
        for (i, l) in self.layers.iter().enumerate() {
            start += l.points.len();
            if id < start {
                return i;
            }
        }
        panic!("point id {id} out of range");
    }

    /// Stacked ids of layer `i`.
    pub fn ids_of_layer(&self, i: usize) -> core::ops::Range<usize> {
        let start: usize = self.layers[..i].iter().map(|l| l.points.len()).sum();
        start..start + self.layers[i].points.len()
    }

    /// Every point `p` of layer `i` as `(p, height_i)`.
    pub fn stack(&self) -> Vec<Point> {
        self.layers
            .iter()
            .flat_map(|l| l.points.iter().map(move |p| p.lifted(l.height.clone())))
            .collect()
    }

    /// The hyperplane `x_{d+1} = height_i`.
    pub fn plane(&self, i: usize) -> Hyperplane {
        Hyperplane::axis(self.d + 1, self.d, self.layers[i].height.clone())
    }
}

pub fn stacked_hull(layered: &LayeredPointSet) -> Result<FaceLattice> {
    hull(&layered.stack())
}

/// Number of vertices of `face` on each layer.
pub fn layer_signature(face: &[usize], layered: &LayeredPointSet) -> Vec<usize> {
    let mut sig = alloc::vec![0; layered.layers.len()];
    for &v in face {
        sig[layered.layer_of(v)] += 1;
    }
    sig
}

/// Proper faces with vertices on both sides of the gap between layer `gap`
/// and layer `gap + 1` (0-based), i.e. the faces meeting any hyperplane
/// strictly between those two layers.
pub fn crossing_faces(lattice: &FaceLattice, layered: &LayeredPointSet, gap: usize) -> Vec<usize> {
    let top = lattice.intrinsic_dim as i32;
    lattice
        .faces()
        .iter()
        .filter(|f| f.dim >= 0 && f.dim < top)
        .filter(|f| {
            let below = f.vertices.iter().any(|&v| layered.layer_of(v) <= gap);
            let above = f.vertices.iter().any(|&v| layered.layer_of(v) > gap);
            below && above
        })
        .map(|f| f.id)
        .collect()
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Calls `visit` with every `A` of length `m` with `|A| = total` and every
/// entry at most `cap`.
fn compositions(m: usize, total: u64, cap: u64, visit: &mut impl FnMut(&[u64])) {
    fn go(a: &mut Vec<u64>, m: usize, left: u64, cap: u64, visit: &mut impl FnMut(&[u64])) {
        if a.len() == m - 1 {
            if left <= cap {
                a.push(left);
                visit(a);
                a.pop();
            }
            return;
        }
        for x in 0..=left.min(cap) {
            a.push(x);
            go(a, m, left - x, cap, visit);
            a.pop();
        }
    }
    if m > 0 {
        go(&mut Vec::with_capacity(m), m, total, cap, visit);
    }
}

/// Upper bound on crossing k-faces for the gap below the last layer:
/// `Σ Π C(n_i, α_i)` over `A` with `(0,…,0,1) ≼ A ≼ (k,…,k)` and `|A| = k+1`.
pub fn fbound_formula(k: u64, n: &[u64]) -> u128 {
    gap_bound(k, n, n.len().saturating_sub(2))
}

/// Same bound for the gap after layer `gap` (0-based): `A` needs a vertex on
/// each side of the gap and at most `k` vertices per layer. For the last gap
/// this is [`fbound_formula`]; it holds for non-simplicial hulls too, since a
/// crossing k-face has an affine basis of `k+1` vertices with one on each
/// side and at most `k` in any layer, and that basis determines the face.
pub fn gap_bound(k: u64, n: &[u64], gap: usize) -> u128 {
    let mut total = 0u128;
    compositions(n.len(), k + 1, k, &mut |a| {
        let below: u64 = a[..=gap].iter().sum();
        let above: u64 = a[gap + 1..].iter().sum();
        if below >= 1 && above >= 1 {
            total += a.iter().zip(n).map(|(&ai, &ni)| binomial(ni, ai)).product::<u128>();
        }
    });
    total
}

/// `Σ_{i≠j} n_i · n_j^{⌊d/2⌋}`.
pub fn master_bound(n: &[u64], d: u32) -> u128 {
    let e = d / 2;
    let mut total = 0u128;
    for (i, &ni) in n.iter().enumerate() {
        for (j, &nj) in n.iter().enumerate() {
            if i != j {
                total += ni as u128 * (nj as u128).pow(e);
            }
        }
    }
    total
}

/// Row of the apex identity: `f_k(Q)` against
/// `f_k(P) + f_{k−1}(∂P_1) + f_{k−1}(∂P_m) − α_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApexRow {
    pub k: usize,
    pub measured: u64,
    pub expected: i64,
}

#[derive(Debug, Clone)]
pub struct ApexReport {
    pub y: Point,
    pub z: Point,
    pub rows: Vec<ApexRow>,
}

impl ApexReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.measured as i64 == r.expected)
    }
}

/// Face counts `f_{−1}..f_{dim−1}` of the boundary of face `id`.
fn boundary_counts(lattice: &FaceLattice, id: usize) -> Vec<u64> {
    let face = lattice.face(id);
    let mut counts = alloc::vec![0u64; face.dim as usize + 1];
    for f in lattice.faces() {
        if f.dim < face.dim && crate::lattice::is_subset(&f.vertices, &face.vertices) {
            counts[(f.dim + 1) as usize] += 1;
        }
    }
    counts
}

/// Adds an apex `y` below the first layer and `z` above the last, each seeing
/// only its layer's facet, and compares the face counts of the new hull with
/// the prediction from `P` and the two layer facets.
pub fn apex_augment(layered: &LayeredPointSet, lattice: &FaceLattice) -> Result<(FaceLattice, ApexReport)> {
    let dim = layered.d + 1;
    if layered.layers.len() < 2 {
        return Err(Error::InvalidInput("apex augmentation needs two layers".into()));
    }
    if lattice.intrinsic_dim != dim {
        return Err(Error::NotFullDimensional { intrinsic: lattice.intrinsic_dim, ambient: dim });
    }
    let m = layered.layers.len();
    let layer_facet = |layer: usize| {
        lattice
            .facets()
            .find(|f| f.vertices.iter().all(|&v| layered.layer_of(v) == layer))
            .map(|f| f.id)
            .ok_or_else(|| Error::Infeasible(alloc::format!("layer {} does not span a facet", layer + 1)))
    };
    let bottom = layer_facet(0)?;
    let top = layer_facet(m - 1)?;
    let apex = |facet: usize| -> Result<Point> {
        let halfspaces: Vec<Hyperplane> = lattice
            .facets()
            .map(|f| {
                let h = f.hyperplane.clone().expect("facets carry hyperplanes");
                if f.id == facet {
                    h
                } else {
                    h.flipped()
                }
            })
            .collect();
        let x = lp_interior_point(&halfspaces)
            .point()
            .ok_or_else(|| Error::Infeasible("no apex position sees exactly one facet".into()))?;
        Ok(Point::new(snap_strict(&x, &halfspaces)))
    };
    let y = apex(bottom)?;
    let z = apex(top)?;

    let mut points = layered.stack();
    points.push(y.clone());
    points.push(z.clone());
    let q = hull(&points)?;

    let fq = q.face_counts();
    let fp = lattice.face_counts();
    let b1 = boundary_counts(lattice, bottom);
    let bm = boundary_counts(lattice, top);
    let rows = (0..=layered.d)
        .map(|k| {
            let alpha = if k == layered.d { 2 } else { 0 };
            ApexRow {
                k,
                measured: fq[k + 1],
                expected: (fp[k + 1] + b1[k] + bm[k]) as i64 - alpha,
            }
        })
        .collect();
    Ok((q, ApexReport { y, z, rows }))
}
