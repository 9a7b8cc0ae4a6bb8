//! Exact minimum-norm point of `{Σ λ_j u_j : λ ≥ 0, Σ λ_j t_j = 1}`.
//!
//! Primal active-set method. The free set always contains an index with
//! positive weight; each iteration projects the origin onto the affine face
//! spanned by the free generators. When the projection is reached, the
//! multipliers `r_j = u_j·x − ‖x‖² t_j` decide optimality. The entering
//! index is the most negative `r_j` relative to the generator's 1-norm; after
//! many iterations the rule falls back to the smallest index with `r_j < 0`
//! (Bland ordering) to rule out cycling.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::{dot, row_reduce, solve, Rational};

/// Optimal value and multipliers of [`min_norm_qp`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QpSolution {
    /// `‖Σ λ_j u_j‖²` at the optimum.
    pub min_sq: Rational,
    pub lambda: Vec<Rational>,
}

/// Minimizes `‖Σ λ_j u_j‖²` subject to `λ ≥ 0` and `Σ λ_j t_j = 1`.
/// Returns `None` when no `t_j` is positive (the constraint set is empty).
pub fn min_norm_qp(generators: &[(Vec<Rational>, Rational)]) -> Option<QpSolution> {
    // Start at the generator whose point on the slice is closest to the origin.
    let start = generators
        .iter()
        .enumerate()
        .filter(|(_, (_, t))| t.is_positive())
        .min_by(|(_, (ua, ta)), (_, (ub, tb))| (dot(ua, ua) * tb * tb).cmp(&(dot(ub, ub) * ta * ta)))
        .map(|(j, _)| j)?;
    let dim = generators[start].0.len();
    let n = generators.len();
    let mut lambda = alloc::vec![Rational::zero(); n];
    lambda[start] = Rational::from_integer(1.into()) / &generators[start].1;
    let mut free: Vec<usize> = alloc::vec![start];

    let weight: Vec<Rational> = generators
        .iter()
        .map(|(u, t)| u.iter().fold(t.abs(), |acc, c| acc + c.abs()))
        .collect();
    for iteration in 0..1_000_000 {
        let x = combine(generators, &lambda, dim);
        let anchor = *free
            .iter()
            .find(|&&j| lambda[j].is_positive() && !generators[j].1.is_zero())
            .expect("free set carries the equality constraint");
        let (ua, ta) = &generators[anchor];

        // Directions inside the face: w_j = u_j − (t_j / t_a) u_a.
        let mut basis_idx: Vec<usize> = Vec::new();
        let mut basis_vecs: Vec<Vec<Rational>> = Vec::new();
        for &j in free.iter().filter(|&&j| j != anchor) {
            let ratio = &generators[j].1 / ta;
            let w: Vec<Rational> = generators[j]
                .0
                .iter()
                .zip(ua)
                .map(|(a, b)| a - &ratio * b)
                .collect();
            let mut trial = basis_vecs.clone();
            trial.push(w.clone());
            if row_reduce(&trial, dim).rank() == trial.len() {
                basis_vecs.push(w);
                basis_idx.push(j);
            }
        }

        let mut step_dir = alloc::vec![Rational::zero(); n];
        let mut moved = false;
        if !basis_vecs.is_empty() {
            let gram: Vec<Vec<Rational>> = basis_vecs
                .iter()
                .map(|a| basis_vecs.iter().map(|b| dot(a, b)).collect())
                .collect();
            let rhs: Vec<Rational> = basis_vecs.iter().map(|a| -dot(a, &x)).collect();
            let z = solve(&gram, &rhs).expect("Gram matrix of independent vectors is regular");
            if z.iter().any(|c| !c.is_zero()) {
                moved = true;
                for (k, &j) in basis_idx.iter().enumerate() {
                    step_dir[j] += &z[k];
                    step_dir[anchor] -= &z[k] * &generators[j].1 / ta;
                }
            }
        }

        if !moved {
            let mu = dot(&x, &x);
            let candidates = (0..n).filter(|j| !free.contains(j)).filter_map(|j| {
                let r = dot(&generators[j].0, &x) - &mu * &generators[j].1;
                r.is_negative().then_some((j, r))
            });
            let entering = if iteration < 20 * n {
                candidates.min_by(|(a, ra), (b, rb)| (ra * &weight[*b]).cmp(&(rb * &weight[*a]))).map(|(j, _)| j)
            } else {
                candidates.map(|(j, _)| j).next()
            };
            match entering {
                Some(j) => {
                    free.push(j);
                    free.sort_unstable();
                    continue;
                }
                None => return Some(QpSolution { min_sq: mu, lambda }),
            }
        }

        let mut alpha = Rational::from_integer(1.into());
        let mut blocking: Option<usize> = None;
        for &j in &free {
            if step_dir[j].is_negative() {
                let a = -&lambda[j] / &step_dir[j];
                if a < alpha || (a == alpha && blocking.is_some_and(|b| j < b)) {
                    alpha = a;
                    blocking = Some(j);
                }
            }
        }
        for &j in &free {
            if !step_dir[j].is_zero() {
                lambda[j] += &alpha * &step_dir[j];
            }
        }
        if let Some(b) = blocking {
            lambda[b] = Rational::zero();
            free.retain(|&j| j != b);
        }
    }
    panic!("min_norm_qp failed to converge");
}

fn combine(generators: &[(Vec<Rational>, Rational)], lambda: &[Rational], dim: usize) -> Vec<Rational> {
    let mut x = alloc::vec![Rational::zero(); dim];
    for ((u, _), l) in generators.iter().zip(lambda) {
        if l.is_zero() {
            continue;
        }
        for (xi, ui) in x.iter_mut().zip(u) {
            *xi += l * ui;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn g(u: &[i64], t: i64) -> (Vec<Rational>, Rational) {
        (u.iter().map(|&c| int(c)).collect(), int(t))
    }

    fn check_kkt(gens: &[(Vec<Rational>, Rational)], sol: &QpSolution) {
        let dim = gens[0].0.len();
        let x = combine(gens, &sol.lambda, dim);
        assert_eq!(dot(&x, &x), sol.min_sq);
        let total: Rational = gens.iter().zip(&sol.lambda).map(|((_, t), l)| t * l).sum();
        assert_eq!(total, int(1));
        for ((u, t), l) in gens.iter().zip(&sol.lambda) {
            assert!(!l.is_negative());
            let r = dot(u, &x) - &sol.min_sq * t;
            assert!(!r.is_negative(), "dual infeasible");
            if l.is_positive() {
                assert!(r.is_zero(), "complementary slackness");
            }
        }
    }

    #[test]
    fn single_ray() {
        let gens = vec![g(&[1], 1)];
        let s = min_norm_qp(&gens).unwrap();
        assert_eq!(s.min_sq, int(1));
        assert_eq!(s.lambda, vec![int(1)]);
    }

    #[test]
    fn symmetric_cancellation() {
        let gens = vec![g(&[1], 1), g(&[-1], 1)];
        let s = min_norm_qp(&gens).unwrap();
        assert_eq!(s.min_sq, int(0));
        assert_eq!(s.lambda, vec![rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn two_orthogonal_generators() {
        // Active sets: {1}: λ=(1,0) → ‖(2,0)‖² = 4; {2}: 4; {1,2}: λ=(1/2,1/2) → (1,1), norm² 2.
        let gens = vec![g(&[2, 0], 1), g(&[0, 2], 1)];
        let s = min_norm_qp(&gens).unwrap();
        assert_eq!(s.min_sq, int(2));
        assert_eq!(s.lambda, vec![rat(1, 2), rat(1, 2)]);
        check_kkt(&gens, &s);
    }

    #[test]
    fn infeasible_without_positive_weight() {
        assert!(min_norm_qp(&[g(&[1, 0], 0), g(&[0, 1], -2)]).is_none());
        assert!(min_norm_qp(&[]).is_none());
    }

    #[test]
    fn negative_weights_combine() {
        // λ1·1 − λ2·1 = 1; x = λ1(1,0) + λ2(1,0) → minimum at λ2 = 0.
        let gens = vec![g(&[1, 0], 1), g(&[1, 0], -1), g(&[-3, 0], -1)];
        let s = min_norm_qp(&gens).unwrap();
        check_kkt(&gens, &s);
        // λ1(1,0) + λ3(−3,0) with λ1 − λ3 = 1: x = (1 − 2λ3... ) reaches zero at λ3 = 1/4.
        assert_eq!(s.min_sq, int(0));
    }

    /// Oracle: minimum over a dense simplex grid of feasible λ (all t = 1).
    fn grid_min(gens: &[(Vec<Rational>, Rational)], steps: i64) -> Rational {
        let k = gens.len();
        let mut best: Option<Rational> = None;
        let mut idx = vec![0i64; k];
        loop {
            if idx.iter().sum::<i64>() == steps {
                let lambda: Vec<Rational> = idx.iter().map(|&i| rat(i, steps)).collect();
                let x = combine(gens, &lambda, gens[0].0.len());
                let v = dot(&x, &x);
                if best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
            let mut p = 0;
            loop {
                if p == k {
                    return best.unwrap();
                }
                idx[p] += 1;
                if idx[p] <= steps {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
        }
    }

    proptest! {
        #[test]
        fn matches_grid_oracle(coords in proptest::collection::vec(-6i64..6, 6), k in 1usize..4) {
            let gens: Vec<_> = coords.chunks(2).take(k).map(|c| g(c, 1)).collect();
            let s = min_norm_qp(&gens).unwrap();
            check_kkt(&gens, &s);
            let grid = grid_min(&gens, 24);
            prop_assert!(s.min_sq <= grid);
        }

        #[test]
        fn kkt_holds_on_mixed_weights(coords in proptest::collection::vec(-5i64..6, 24), ts in proptest::collection::vec(-2i64..3, 8)) {
            let gens: Vec<_> = coords.chunks(3).zip(&ts).map(|(c, &t)| g(c, t)).collect();
            if let Some(s) = min_norm_qp(&gens) {
                check_kkt(&gens, &s);
            } else {
                prop_assert!(gens.iter().all(|(_, t)| !t.is_positive()));
            }
        }
    }
}
