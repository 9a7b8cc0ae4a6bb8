use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::{Error, Result};

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Reduced row echelon form of a matrix together with its pivot columns.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    /// Non-zero rows of the RREF, one per pivot.
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn row_reduce(rows: &[Vec<Rational>], ncols: usize) -> RowEchelon {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    RowEchelon { rows: m, pivots, ncols }
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    row_reduce(rows, first.len()).rank()
}

/// Dimension of the affine hull of `points` (−1 for no points is reported as 0
/// rows; callers check emptiness).
pub fn affine_rank(points: &[&[Rational]]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let base = points[0];
    let diffs: Vec<Vec<Rational>> = points[1..].iter().map(|p| sub(p, base)).collect();
    rank(&diffs)
}

/// Basis of `{x : rows·x = 0}` in `ncols` unknowns.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let ech = row_reduce(rows, ncols);
    let mut is_pivot = alloc::vec![false; ncols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = alloc::vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            v[p] = -&row[free];
        }
        basis.push(v);
    }
    basis
}

/// Basis of the orthogonal complement of `span(vectors)` in `E^dim`.
pub fn orthogonal_complement(vectors: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    nullspace(vectors, dim)
}

/// Some solution of `a·x = b` (free variables set to zero), or `None` if the
/// system is inconsistent.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let ech = row_reduce(&aug, n + 1);
    if ech.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = alloc::vec![Rational::zero(); n];
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        x[p] = row[n].clone();
    }
    Some(x)
}

/// Determinant of a square matrix by exact elimination.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = Rational::one() / &a[c][c];
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    d
}

/// Orientation of `D+1` points in `E^D`: the sign of
/// `det[p_1 − p_0, …, p_D − p_0]`. Zero iff the points are affinely dependent.
pub fn orient(points: &[&[Rational]]) -> Result<i8> {
    let Some(first) = points.first() else {
        return Err(Error::EmptyInput);
    };
    let dim = first.len();
    if points.len() != dim + 1 {
        return Err(Error::DimensionMismatch { expected: dim + 1, found: points.len() });
    }
    if let Some(p) = points.iter().find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
    }
    let rows: Vec<Vec<Rational>> = points[1..].iter().map(|p| sub(p, first)).collect();
    let d = det(&rows);
    Ok(if d.is_positive() {
        1
    } else if d.is_negative() {
        -1
    } else {
        0
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|p| p.iter().map(|&c| int(c)).collect()).collect()
    }

    fn refs(v: &[Vec<Rational>]) -> Vec<&[Rational]> {
        v.iter().map(Vec::as_slice).collect()
    }

    #[test]
    fn orient_examples() {
        let a = pts(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(orient(&refs(&a)).unwrap(), 1);
        let b = pts(&[&[0, 0], &[1, 0], &[2, 0]]);
        assert_eq!(orient(&refs(&b)).unwrap(), 0);
        // det[[1,0,0],[0,1,0],[0,0,-1]] = -1
        let c = pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]);
        assert_eq!(orient(&refs(&c)).unwrap(), -1);
    }

    #[test]
    fn orient_rejects_bad_shapes() {
        let a = pts(&[&[0, 0], &[1, 0]]);
        assert!(matches!(orient(&refs(&a)), Err(Error::DimensionMismatch { .. })));
        let b = vec![vec![int(0), int(0)], vec![int(1)], vec![int(0), int(1)]];
        assert!(orient(&refs(&b)).is_err());
    }

    #[test]
    fn nullspace_and_solve() {
        let m = vec![vec![int(1), int(2), int(3)]];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(dot(&m[0], v).is_zero());
        }
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let x = solve(&a, &[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        let inconsistent = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert!(solve(&inconsistent, &[int(1), int(3)]).is_none());
    }

    proptest! {
        #[test]
        fn orient_is_antisymmetric(coords in proptest::collection::vec(-20i64..20, 12), i in 0usize..4, j in 0usize..4) {
            prop_assume!(i != j);
            let p: Vec<Vec<Rational>> = coords.chunks(3).map(|c| c.iter().map(|&x| int(x)).collect()).collect();
            let mut q = p.clone();
            q.swap(i, j);
            let a = orient(&refs(&p)).unwrap();
            let b = orient(&refs(&q)).unwrap();
            prop_assert_eq!(a, -b);
        }

        #[test]
        fn arithmetic_stays_in_lowest_terms(a in -50i64..50, b in 1i64..50, c in -50i64..50, e in 1i64..50) {
            let x = rat(a, b);
            let y = rat(c, e);
            let mut results = vec![&x + &y, &x - &y, &x * &y];
            if !y.is_zero() { results.push(&x / &y); }
            for r in results {
                prop_assert!(r.denom().is_positive());
                prop_assert!(num_integer::Integer::gcd(r.numer(), r.denom()) == num_bigint::BigInt::from(1) || r.numer().is_zero());
            }
        }
    }
}
