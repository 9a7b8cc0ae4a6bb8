//! Growth sweeps over instance families.
//!
//! Row `i` of a sweep draws its randomness from `stream(seed, i)`; direction
//! probes use `stream(seed + 1, i)`. Rows run on separate threads and are
//! reported in schedule order.

use std::collections::BTreeSet;
use std::fmt::Write;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use parhull::exact::rat;
use parhull::generators::{lb2_instance, lbm_instance, moment_curve_points, random_layered, MomentCurveParams};
use parhull::lattice::hull;
use parhull::minkowski::{sum_bound, weighted_minkowski, WeightedSumSpec};
use parhull::parallel::{master_bound, stacked_hull};
use parhull::rng::{point_in_box, rational_in, stream};
use parhull::sphere::{rational_unit_vector, sphere_hull_faces, Membership, SphereSet};
use parhull::{FaceLattice, Point};

use crate::fit::{growth_fit, Fit};

pub const CSV_HEADER: &str = "family,d,n_vector,total_faces,counts_json,bound,seconds";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    /// Two-radius lower-bound spheres; sizes `n` or `n1xn2`.
    Lb2,
    /// Many-radius lower-bound spheres; sizes `n1xn2x…`.
    Lbm,
    /// Random points on parallel hyperplanes; sizes are layer counts.
    StackedRandom,
    /// Moment-curve points in even dimension; sizes `n`.
    Cyclic,
    /// Sum of two random polytopes at weight 1/2; sizes `n` or `nxm`.
    MinkowskiRandom,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Lb2 => "lb2",
            Family::Lbm => "lbm",
            Family::StackedRandom => "stacked-random",
            Family::Cyclic => "cyclic",
            Family::MinkowskiRandom => "minkowski-random",
        }
    }

    fn is_sphere_family(self) -> bool {
        matches!(self, Family::Lb2 | Family::Lbm)
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub family: Family,
    pub d: usize,
    pub sizes: Vec<Vec<usize>>,
    pub seed: u64,
    /// Degenerate tangencies become row errors.
    pub general_position: bool,
    /// Direction probes per sphere instance.
    pub oracle_directions: usize,
}

/// Parses `8,16,32` or `4x4,8x8`.
pub fn parse_sizes(text: &str) -> Result<Vec<Vec<usize>>> {
    text.split(',')
        .map(|entry| {
            entry
                .split('x')
                .map(|n| n.trim().parse::<usize>().with_context(|| format!("bad size {entry:?}")))
                .collect()
        })
        .collect()
}

impl SweepSpec {
    /// Size tuples after filling in the family's defaults.
    pub fn schedule(&self) -> Result<Vec<Vec<usize>>> {
        ensure!(!self.sizes.is_empty(), "empty size schedule");
        let sched: Vec<Vec<usize>> = self
            .sizes
            .iter()
            .map(|s| match (self.family, s.as_slice()) {
                (Family::Lb2 | Family::MinkowskiRandom, &[n]) => Ok(vec![n, n]),
                (Family::Lb2 | Family::MinkowskiRandom, [_, _]) => Ok(s.clone()),
                (Family::Cyclic, [_]) => Ok(s.clone()),
                (Family::Lbm, _) if s.len() >= 2 => Ok(s.clone()),
                (Family::StackedRandom, _) if !s.is_empty() => Ok(s.clone()),
                _ => bail!("size {s:?} does not fit family {}", self.family.name()),
            })
            .collect::<Result<_>>()?;
        if sched.iter().flatten().any(|&n| n == 0) {
            bail!("sizes must be positive");
        }
        let totals: Vec<usize> = sched.iter().map(|s| s.iter().sum()).collect();
        ensure!(totals.windows(2).all(|w| w[0] < w[1]), "schedule must increase strictly in total size");
        match self.family {
            Family::Lb2 | Family::Lbm => ensure!(self.d >= 3 && self.d % 2 == 1, "lower-bound families need odd d ≥ 3"),
            Family::Cyclic => ensure!(self.d >= 2 && self.d.is_multiple_of(2), "cyclic polytopes need even d"),
            _ => ensure!(self.d >= 1, "d must be positive"),
        }
        Ok(sched)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Measured {
    pub total_faces: u64,
    /// Per circularity for sphere families, the f-vector otherwise.
    pub counts: Vec<u64>,
    /// Distinct lifted faces hit by direction probes.
    pub oracle_faces: Option<u64>,
    /// Vertical prism facets with both vertices in `Y⁺` (`lb2` only).
    pub vertical_y_plus: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub n_vector: Vec<usize>,
    pub bound: u128,
    pub seconds: f64,
    pub outcome: Result<Measured, String>,
}

#[derive(Debug, Clone)]
pub struct Sweep {
    pub spec: SweepSpec,
    pub rows: Vec<Row>,
}

pub fn run_sweep(spec: &SweepSpec) -> Result<Sweep> {
    let sched = spec.schedule()?;
    let rows = std::thread::scope(|scope| {
        let handles: Vec<_> =
            sched.iter().enumerate().map(|(i, n)| scope.spawn(move || run_row(spec, i as u64, n))).collect();
        handles.into_iter().map(|h| h.join().expect("sweep row panicked")).collect()
    });
    Ok(Sweep { spec: spec.clone(), rows })
}

fn bound_for(spec: &SweepSpec, n: &[usize]) -> u128 {
    let n64: Vec<u64> = n.iter().map(|&x| x as u64).collect();
    match spec.family {
        Family::Cyclic => cyclic_facets(n64[0], spec.d as u64 / 2),
        Family::MinkowskiRandom => sum_bound(n64[0], n64[1], spec.d as u32),
        Family::StackedRandom => master_bound(&n64, spec.d as u32),
        // Taken from the radius classes of the generated instance.
        Family::Lb2 | Family::Lbm => 0,
    }
}

/// Facets of a cyclic `2δ`-polytope with `n` vertices: `n/(n−δ)·C(n−δ, δ)`.
pub fn cyclic_facets(n: u64, delta: u64) -> u128 {
    if n <= 2 * delta {
        return 0;
    }
    let mut c: u128 = 1;
    for i in 0..delta {
        c = c * u128::from(n - delta - i) / u128::from(i + 1);
    }
    c * u128::from(n) / u128::from(n - delta)
}

fn run_row(spec: &SweepSpec, index: u64, n: &[usize]) -> Row {
    let start = Instant::now();
    let mut bound = bound_for(spec, n);
    let outcome = measure(spec, index, n, &mut bound).map_err(|e| format!("{e:#}"));
    Row { n_vector: n.to_vec(), bound, seconds: start.elapsed().as_secs_f64(), outcome }
}

/// `f_0, …, f_{dim−1}`.
fn proper_faces(lattice: &FaceLattice) -> Vec<u64> {
    lattice.f_vector().0[1..].to_vec()
}

fn polytope_row(lattice: &FaceLattice) -> Measured {
    let counts = proper_faces(lattice);
    Measured { total_faces: counts.iter().sum(), counts, oracle_faces: None, vertical_y_plus: None }
}

fn measure(spec: &SweepSpec, index: u64, n: &[usize], bound: &mut u128) -> Result<Measured> {
    let d = spec.d;
    let mut rng = stream(spec.seed, index);
    match spec.family {
        Family::Cyclic => {
            let pts = moment_curve_points(&MomentCurveParams::integers(d / 2, n[0]));
            Ok(polytope_row(&hull(&pts)?))
        }
        Family::StackedRandom => {
            let layered = random_layered(&mut rng, d, n, 16, 1);
            Ok(polytope_row(&stacked_hull(&layered)?))
        }
        Family::MinkowskiRandom => {
            let p: Vec<Point> = (0..n[0]).map(|_| point_in_box(&mut rng, d, 16, 1)).collect();
            let q: Vec<Point> = (0..n[1]).map(|_| point_in_box(&mut rng, d, 16, 1)).collect();
            Ok(polytope_row(&weighted_minkowski(&WeightedSumSpec::new(p, q, rat(1, 2))?)?))
        }
        Family::Lb2 | Family::Lbm => {
            let inst = if spec.family == Family::Lb2 {
                lb2_instance(d, n[0], n[1], spec.seed)?
            } else {
                lbm_instance(d, n, spec.seed)?
            };
            let spheres = inst.spheres();
            let classes: Vec<u64> = spheres.radii_classes().iter().map(|c| c.1 as u64).collect();
            *bound = master_bound(&classes, d as u32);
            let mut m = sphere_row(spec, index, &spheres)?;
            if spec.family == Family::Lb2 {
                m.vertical_y_plus = Some(inst.vertical_facets_in_y_plus()? as u64);
            }
            Ok(m)
        }
    }
}

/// Circularity counts of a sphere set, with the optional probe check.
pub fn sphere_row(spec: &SweepSpec, index: u64, spheres: &SphereSet) -> Result<Measured> {
    let report = sphere_hull_faces(spheres)?;
    if spec.general_position && !report.degenerate.is_empty() {
        bail!("{} lifted faces touch the Lorentz cone degenerately", report.degenerate.len());
    }
    let oracle_faces = if spec.oracle_directions > 0 && spec.family.is_sphere_family() {
        let mut rng = stream(spec.seed.wrapping_add(1), index);
        let mut hit = BTreeSet::new();
        for _ in 0..spec.oracle_directions {
            let s: Vec<_> = (0..spheres.d - 1).map(|_| rational_in(&mut rng, 4, 64)).collect();
            let face = report.probe(&rational_unit_vector(&s))?;
            match report.outcome(face).map(|o| o.membership) {
                Some(Membership::Pass) => {}
                other => bail!("direction probe hit lifted face {face} with membership {other:?}"),
            }
            hit.insert(face);
        }
        Some(hit.len() as u64)
    } else {
        None
    };
    Ok(Measured { total_faces: report.total(), counts: report.counts.clone(), oracle_faces, vertical_y_plus: None })
}

impl Sweep {
    /// CSV with the fixed header; `seconds` is written as 0 without timing.
    pub fn to_csv(&self, timing: bool) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER.split(','))?;
        for row in &self.rows {
            let n_vector = row.n_vector.iter().map(|n| n.to_string()).collect::<Vec<_>>().join("x");
            let (total, counts) = match &row.outcome {
                Ok(m) => (m.total_faces.to_string(), serde_json::to_string(&m.counts)?),
                Err(e) => (String::new(), serde_json::json!({ "error": e }).to_string()),
            };
            let seconds = if timing { format!("{:.3}", row.seconds) } else { "0".into() };
            w.write_record([
                self.spec.family.name(),
                &self.spec.d.to_string(),
                &n_vector,
                &total,
                &counts,
                &row.bound.to_string(),
                &seconds,
            ])?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    /// Size parameter `Σ n_i` and total face count of every successful row.
    fn points(&self) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        let mut bs = Vec::new();
        for row in &self.rows {
            if let Ok(m) = &row.outcome {
                xs.push(row.n_vector.iter().sum::<usize>() as f64);
                ys.push(m.total_faces as f64);
                bs.push(row.bound as f64);
            }
        }
        (xs, ys, bs)
    }

    /// Fit of the measured totals, with the smallest size dropped.
    pub fn fit(&self) -> Option<Fit> {
        let (xs, ys, _) = self.points();
        growth_fit(&xs, &ys)
    }

    /// Same fit applied to the bound column: the exponent theory predicts
    /// along this schedule.
    pub fn bound_fit(&self) -> Option<Fit> {
        let (xs, _, bs) = self.points();
        growth_fit(&xs, &bs)
    }

    pub fn report(&self) -> String {
        let mut out = String::new();
        match (self.fit(), self.bound_fit()) {
            (Some(f), Some(b)) => {
                let _ = writeln!(
                    out,
                    "slope {:.4} (bound {:.4}), intercept {:.4}, residual {:.4}, {} points",
                    f.slope, b.slope, f.intercept, f.residual, f.points
                );
            }
            _ => out.push_str("not enough rows to fit\n"),
        }
        for row in &self.rows {
            match &row.outcome {
                Ok(Measured { oracle_faces: Some(k), total_faces, .. }) => {
                    let _ = writeln!(out, "{:?}: {k} lifted faces hit by probes, {total_faces} counted", row.n_vector);
                }
                Err(e) => {
                    let _ = writeln!(out, "{:?}: error: {e}", row.n_vector);
                }
                _ => {}
            }
        }
        out
    }
}
