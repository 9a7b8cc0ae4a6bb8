//! f- and h-vectors and the Dehn–Sommerville relations.

use alloc::vec::Vec;

use super::FaceLattice;
use crate::{Error, Result};

/// Face counts `f_{−1}, f_0, …, f_{dim−1}` of a polytope boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FVector(pub Vec<u64>);

/// `h_0, …, h_dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HVector(pub Vec<i128>);

impl FVector {
    /// `f_k` for `k ≥ −1`.
    pub fn get(&self, k: i32) -> u64 {
        self.0[(k + 1) as usize]
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }
}

pub(crate) fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// `h_k = Σ_{i≤k} (−1)^{k−i} C(dim−i, dim−k) f_{i−1}`.
pub fn h_from_f(f: &FVector, dim: usize) -> HVector {
    let d = dim as i64;
    let h = (0..=d)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let fi = f.0.get(i as usize).copied().unwrap_or(0) as i128;
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(d - i, d - k) * fi
                })
                .sum()
        })
        .collect();
    HVector(h)
}

/// h-vector of a simplicial polytope's boundary.
pub fn h_vector(lattice: &FaceLattice) -> Result<HVector> {
    if !lattice.is_simplicial() {
        return Err(Error::NotSimplicial);
    }
    Ok(h_from_f(&lattice.f_vector(), lattice.intrinsic_dim))
}

/// `h_k = h_{dim−k}` for every `k`.
pub fn dehn_sommerville_check(h: &HVector) -> bool {
    let n = h.0.len();
    (0..n).all(|k| h.0[k] == h.0[n - 1 - k])
}

/// Recovers `f` from the lower half of a symmetric `h`:
/// `f_{k−1} = Σ*_{i=0}^{δ/2} (C(δ−i, k−i) + C(i, k−δ+i)) h_i`, where the
/// starred sum halves its last term when `δ/2` is an integer.
pub fn reconstruct_f_from_h(h: &HVector) -> FVector {
    let delta = h.0.len() as i64 - 1;
    let top = delta / 2;
    let f = (0..=delta)
        .map(|k| {
            let twice: i128 = (0..=top)
                .map(|i| {
                    let c = binomial(delta - i, k - i) + binomial(i, k - delta + i);
                    let w = if delta % 2 == 0 && i == top { 1 } else { 2 };
                    w * c * h.0[i as usize]
                })
                .sum();
            (twice / 2) as u64
        })
        .collect();
    FVector(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_boundary() {
        let h = h_from_f(&FVector(vec![1, 4, 6, 4]), 3);
        assert_eq!(h.0, vec![1, 1, 1, 1]);
    }

    #[test]
    fn octahedron() {
        let f = FVector(vec![1, 6, 12, 8]);
        let h = h_from_f(&f, 3);
        assert_eq!(h.0, vec![1, 3, 3, 1]);
        assert!(dehn_sommerville_check(&h));
        assert_eq!(reconstruct_f_from_h(&h), f);
    }

    #[test]
    fn asymmetric_fails() {
        assert!(!dehn_sommerville_check(&HVector(vec![1, 2, 3, 1])));
    }

    #[test]
    fn cross_polytope_in_four_dimensions() {
        let f = FVector(vec![1, 8, 24, 32, 16]);
        let h = h_from_f(&f, 4);
        assert_eq!(h.0, vec![1, 4, 6, 4, 1]);
        assert_eq!(reconstruct_f_from_h(&h), f);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(4, -1), 0);
        assert_eq!(binomial(0, 0), 1);
    }
}
