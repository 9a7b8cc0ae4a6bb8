//! Strict feasibility by slack maximization.
//!
//! `{x : a_i·x > b_i}` is non-empty iff `max s` subject to `a_i·x − b_i ≥ s`,
//! `s ≤ 1` is positive. Shifting `s` by its value at `x = 0` makes the origin
//! a feasible dictionary, so a single phase of Bland-rule simplex suffices.

use alloc::vec::Vec;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Hyperplane, Point, Rational};

/// Result of [`lp_interior_point`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Feasible(Point),
    Infeasible,
}

impl LpOutcome {
    pub fn point(self) -> Option<Point> {
        match self {
            LpOutcome::Feasible(p) => Some(p),
            LpOutcome::Infeasible => None,
        }
    }
}

/// A point strictly on the positive side of every hyperplane, or
/// `Infeasible`.
pub fn lp_interior_point(halfspaces: &[Hyperplane]) -> LpOutcome {
    let Some(first) = halfspaces.first() else {
        return LpOutcome::Infeasible;
    };
    let (x, s) = max_slack(halfspaces, first.dim());
    if s.is_positive() {
        LpOutcome::Feasible(Point(x))
    } else {
        LpOutcome::Infeasible
    }
}

/// Maximizes the common slack `min_i (a_i·x − b_i)`, capped at 1. Returns the
/// optimal point and slack.
pub fn max_slack(halfspaces: &[Hyperplane], dim: usize) -> (Vec<Rational>, Rational) {
    let m = halfspaces.len();
    // s0 = min(1, min_i −b_i): the slack attainable at x = 0.
    let s0 = halfspaces
        .iter()
        .map(|h| -&h.offset)
        .fold(Rational::one(), |a, b| if b < a { b } else { a });
    // Columns: x⁺ (dim), x⁻ (dim), σ⁺, σ⁻ with s = s0 + σ⁺ − σ⁻.
    let n = 2 * dim + 2;
    let mut a = Vec::with_capacity(m + 1);
    let mut b = Vec::with_capacity(m + 1);
    for h in halfspaces {
        let mut row = Vec::with_capacity(n);
        row.extend(h.normal.iter().map(|c| -c));
        row.extend(h.normal.iter().cloned());
        row.push(Rational::one());
        row.push(-Rational::one());
        a.push(row);
        b.push(-&h.offset - &s0);
    }
    let mut cap = alloc::vec![Rational::zero(); n];
    cap[2 * dim] = Rational::one();
    cap[2 * dim + 1] = -Rational::one();
    a.push(cap);
    b.push(Rational::one() - &s0);
    let mut c = alloc::vec![Rational::zero(); n];
    c[2 * dim] = Rational::one();
    c[2 * dim + 1] = -Rational::one();

    let y = simplex_max(a, b, &c).expect("slack objective is bounded by the cap row");
    let x = (0..dim).map(|i| &y[i] - &y[dim + i]).collect();
    let s = s0 + &y[2 * dim] - &y[2 * dim + 1];
    (x, s)
}

/// `max c·y` s.t. `A y ≤ b`, `y ≥ 0`, with `b ≥ 0`. `None` when unbounded.
///
/// Compact (Tucker) tableau: row `i` reads `basic_i + Σ_j T[i][j]·nonbasic_j = rhs_i`.
fn simplex_max(a: Vec<Vec<Rational>>, b: Vec<Rational>, c: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    let n = c.len();
    debug_assert!(b.iter().all(|v| !v.is_negative()));
    let mut t = a;
    let mut rhs = b;
    let mut obj: Vec<Rational> = c.iter().map(|v| -v).collect();
    let mut obj_rhs = Rational::zero();
    // Labels: originals 0..n, slacks n..n+m.
    let mut nonbasic: Vec<usize> = (0..n).collect();
    let mut basic: Vec<usize> = (n..n + m).collect();

    loop {
        // Bland: entering = smallest label with negative reduced cost.
        let entering = (0..n)
            .filter(|&j| obj[j].is_negative())
            .min_by_key(|&j| nonbasic[j]);
        let Some(s) = entering else { break };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][s].is_positive() {
                let ratio = &rhs[i] / &t[i][s];
                let better = match &leave {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && basic[i] < basic[*r])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave?;
        pivot(&mut t, &mut rhs, &mut obj, &mut obj_rhs, r, s);
        core::mem::swap(&mut basic[r], &mut nonbasic[s]);
    }

    let mut y = alloc::vec![Rational::zero(); n];
    for (i, &lab) in basic.iter().enumerate() {
        if lab < n {
            y[lab] = rhs[i].clone();
        }
    }
    Some(y)
}

fn pivot(
    t: &mut [Vec<Rational>],
    rhs: &mut [Rational],
    obj: &mut [Rational],
    obj_rhs: &mut Rational,
    r: usize,
    s: usize,
) {
    let inv = Rational::one() / &t[r][s];
    let n = obj.len();
    for j in 0..n {
        if j != s {
            t[r][j] *= &inv;
        }
    }
    rhs[r] *= &inv;
    t[r][s] = inv.clone();
    let prow = t[r].clone();
    let prhs = rhs[r].clone();
    let eliminate = |row: &mut [Rational], rhs_i: &mut Rational| {
        let f = row[s].clone();
        if f.is_zero() {
            return;
        }
        for j in 0..n {
            if j == s {
                row[j] = -&f * &inv;
            } else if !prow[j].is_zero() {
                row[j] -= &f * &prow[j];
            }
        }
        *rhs_i -= &f * &prhs;
    };
    for i in 0..t.len() {
        if i != r {
            let (row, rhs_i) = (&mut t[i], &mut rhs[i]);
            eliminate(row, rhs_i);
        }
    }
    eliminate(obj, obj_rhs);
}

/// Replaces `x` by a nearby small-denominator point that still satisfies
/// every strict inequality, trying denominators 1, 2, 4, …, 2^48. Falls back
/// to `x` itself.
pub fn snap_strict(x: &[Rational], halfspaces: &[Hyperplane]) -> Vec<Rational> {
    let ok = |p: &[Rational]| halfspaces.iter().all(|h| h.eval(p).is_positive());
    let mut q = num_bigint::BigInt::one();
    for _ in 0..=48 {
        let qr = Rational::from_integer(q.clone());
        let cand: Vec<Rational> = x
            .iter()
            .map(|c| {
                let scaled = c * &qr + BigRational::new(1.into(), 2.into());
                let fl = scaled.numer().div_floor(scaled.denom());
                BigRational::new(fl, q.clone())
            })
            .collect();
        if ok(&cand) {
            return cand;
        }
        q *= 2;
    }
    x.to_vec()
}
