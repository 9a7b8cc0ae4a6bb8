//! Acceptance suite: one line per criterion, with wall time and budget.
//!
//! Runs without the libtest harness so the lines always reach the output.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use parhull::exact::{int, rat};
use parhull::generators::{lb2_instance, moment_curve_points, random_layered, random_spheres, MomentCurveParams};
use parhull::lattice::{dehn_sommerville_check, h_vector, hull, polar_dual, reconstruct_f_from_h};
use parhull::minkowski::{minkowski_oracle, weighted_minkowski, WeightedSumSpec};
use parhull::parallel::{
    apex_augment, crossing_faces, fbound_formula, gap_bound, stacked_hull, Layer, LayeredPointSet,
};
use parhull::perturb::{make_layerwise_simplicial, pull_vertex};
use parhull::rng::{below, int_in, point_in_box, rational_in, stream};
use parhull::sphere::{rational_unit_vector, sphere_hull_faces, CircularityReport, Membership, Sphere, SphereSet};
use parhull::{FaceLattice, Point, Rational};
use parhull_cli::fit::growth_fit;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn cyclic_count() -> Outcome {
    for n in 6..=12usize {
        let l = hull(&moment_curve_points(&MomentCurveParams::integers(2, n))).map_err(err)?;
        let facets = l.facets().count();
        check(facets == n * (n - 3) / 2, || format!("n = {n}: {facets} facets"))?;
    }
    Ok("n = 6..12 all match n(n−3)/2".into())
}

fn sph(c: &[i64], r: Rational) -> Sphere {
    Sphere::new(Point::from_ints(c), r)
}

fn ground_truth_sets() -> Vec<(SphereSet, Vec<u64>)> {
    vec![
        (SphereSet::new(3, vec![sph(&[0, 0, 0], int(1)), sph(&[5, 0, 0], int(2))]).unwrap(), vec![0, 1, 2]),
        (SphereSet::new(3, vec![sph(&[0, 0, 0], int(3)), sph(&[0, 0, 0], int(1))]).unwrap(), vec![0, 0, 1]),
        (
            SphereSet::new(
                3,
                vec![
                    sph(&[0, 0, 0], int(0)),
                    sph(&[1, 0, 0], int(0)),
                    sph(&[0, 1, 0], int(0)),
                    sph(&[0, 0, 1], int(0)),
                ],
            )
            .unwrap(),
            vec![4, 6, 4],
        ),
    ]
}

fn sphere_ground_truths(reports: &mut Vec<(String, SphereSet, CircularityReport)>) -> Outcome {
    for (i, (set, want)) in ground_truth_sets().into_iter().enumerate() {
        let r = sphere_hull_faces(&set).map_err(err)?;
        check(r.counts == want, || format!("set {i}: {:?}, expected {want:?}", r.counts))?;
        reports.push((format!("ground truth {i}"), set, r));
    }
    Ok("(0,1,2), (0,0,1), (4,6,4)".into())
}

fn minkowski_equivalence() -> Outcome {
    let mut runs = 0;
    for seed in 0..50u64 {
        let mut rng = stream(seed, 3);
        let np = int_in(&mut rng, 1, 10) as usize;
        let nq = int_in(&mut rng, 1, 10) as usize;
        let p: Vec<Point> = (0..np).map(|_| point_in_box(&mut rng, 3, 12, 1)).collect();
        let q: Vec<Point> = (0..nq).map(|_| point_in_box(&mut rng, 3, 12, 1)).collect();
        for lambda in [rat(1, 2), rat(1, 3)] {
            let spec = WeightedSumSpec::new(p.clone(), q.clone(), lambda.clone()).map_err(err)?;
            let a = weighted_minkowski(&spec).map_err(err)?;
            let b = minkowski_oracle(&spec).map_err(err)?;
            check(a.geometric_signature() == b.geometric_signature(), || {
                format!("seed {seed}, λ = {lambda}: {:?} vs {:?}", a.face_counts(), b.face_counts())
            })?;
            runs += 1;
        }
    }
    Ok(format!("{runs} runs identical"))
}

fn layer(h: i64, pts: &[&[i64]]) -> Layer {
    Layer { height: int(h), points: pts.iter().map(|p| Point::from_ints(p)).collect() }
}

/// Face counts of a polytope's boundary from the hull of its vertices alone,
/// shifted by one: `out[k] = f_{k−1}`, with `f_{−1} = 1` and `f_{dim} = 0`.
fn boundary_shifted(points: &[Point]) -> Result<Vec<i64>, String> {
    let l = hull(points).map_err(err)?;
    let mut f: Vec<i64> = l.face_counts().iter().map(|&c| c as i64).collect();
    f.pop();
    f.push(0);
    Ok(f)
}

/// Independent evaluation of the apex identity: both layer boundaries come
/// from separate hulls in `E^d`, the apex hull from scratch.
fn apex_identity(s: &LayeredPointSet) -> Result<(), String> {
    let p = stacked_hull(s).map_err(err)?;
    let (_, report) = apex_augment(s, &p).map_err(err)?;
    let mut pts = s.stack();
    pts.push(report.y.clone());
    pts.push(report.z.clone());
    let q = hull(&pts).map_err(err)?;
    let fq = q.face_counts();
    let fp = p.face_counts();
    let b1 = boundary_shifted(&s.layers[0].points)?;
    let bm = boundary_shifted(&s.layers.last().unwrap().points)?;
    for k in 0..=s.d {
        let alpha = if k == s.d { 2 } else { 0 };
        let rhs = fp[k + 1] as i64 + b1[k] + bm[k] - alpha;
        check(fq[k + 1] as i64 == rhs, || format!("k = {k}: f_k(Q) = {}, formula {rhs}", fq[k + 1]))?;
    }
    check(report.holds(), || "library report disagrees".into())
}

/// Random layers, redrawn from the same stream until each spans its plane.
fn spanning_layers(rng: &mut parhull::rng::Rng, d: usize, counts: &[usize]) -> LayeredPointSet {
    loop {
        let s = random_layered(rng, d, counts, 6, 1);
        if s.layers.iter().all(|l| hull(&l.points).is_ok_and(|h| h.is_full_dimensional())) {
            return s;
        }
    }
}

fn apex_augmentation() -> Outcome {
    let sq: &[&[i64]] = &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]];
    let tri: &[&[i64]] = &[&[0, 0], &[1, 0], &[0, 1]];
    apex_identity(&LayeredPointSet::new(2, vec![layer(0, sq), layer(1, sq)]).unwrap()).map_err(|e| format!("cube: {e}"))?;
    apex_identity(&LayeredPointSet::new(2, vec![layer(0, tri), layer(1, tri)]).unwrap())
        .map_err(|e| format!("prism: {e}"))?;
    for seed in 0..25u64 {
        let mut rng = stream(seed, 4);
        let d = 2 + below(&mut rng, 2) as usize;
        let counts = [int_in(&mut rng, d as i64 + 1, 7) as usize, int_in(&mut rng, d as i64 + 1, 7) as usize];
        let raw = spanning_layers(&mut rng, d, &counts);
        let s = make_layerwise_simplicial(&raw).map_err(|e| format!("seed {seed}, d = {d}, {counts:?}: {e}"))?;
        apex_identity(&s).map_err(|e| format!("seed {seed}: {e}"))?;
    }
    Ok("cube, prism and 25 random stacks".into())
}

fn random_points(seed: u64, index: u64, d: usize, n: usize) -> Vec<Point> {
    let mut rng = stream(seed, index);
    (0..n).map(|_| point_in_box(&mut rng, d, 1000, 1)).collect()
}

fn dehn_sommerville() -> Outcome {
    let mut done = 0;
    let mut seed = 0u64;
    while done < 100 {
        seed += 1;
        let d = 3 + (seed % 3) as usize;
        let cap = [40, 24, 14][d - 3];
        let n = d + 2 + (seed as usize * 7) % (cap - d - 1);
        let l = hull(&random_points(seed, 5, d, n)).map_err(err)?;
        if !l.is_simplicial() {
            continue;
        }
        let h = h_vector(&l).map_err(err)?;
        check(dehn_sommerville_check(&h), || format!("seed {seed}: h = {:?}", h.0))?;
        let half = h.0.len();
        for k in 0..half {
            check(h.0[k] == h.0[half - 1 - k], || format!("seed {seed}: h_{k} ≠ h_{}", half - 1 - k))?;
        }
        check(reconstruct_f_from_h(&h) == l.f_vector(), || format!("seed {seed}: f not reconstructed"))?;
        done += 1;
    }
    Ok(format!("100 hulls, seeds 1..={seed}"))
}

fn crossing_bound() -> Outcome {
    let mut checked = 0;
    for seed in 0..25u64 {
        let mut rng = stream(seed, 6);
        let m = 2 + (seed % 2) as usize;
        let counts: Vec<usize> = (0..m).map(|_| int_in(&mut rng, 4, 8) as usize).collect();
        let s = random_layered(&mut rng, 3, &counts, 8, 1);
        let l = stacked_hull(&s).map_err(err)?;
        let n: Vec<u64> = counts.iter().map(|&c| c as u64).collect();
        for gap in 0..m - 1 {
            let crossing = crossing_faces(&l, &s, gap);
            for k in 0..=3u64 {
                let measured = crossing.iter().filter(|&&f| l.face(f).dim == k as i32).count() as u128;
                let bound = if gap == m - 2 { fbound_formula(k, &n) } else { gap_bound(k, &n, gap) };
                check(measured <= bound, || format!("seed {seed}, gap {gap}, k = {k}: {measured} > {bound}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (instance, gap, k) triples within bound"))
}

/// Every face with a vertex strictly between the extreme layer planes is a
/// simplex.
fn simplicial_off_extremes(l: &FaceLattice, s: &LayeredPointSet) -> bool {
    let first = &s.layers[0].height;
    let last = &s.layers.last().unwrap().height;
    let top = l.intrinsic_dim as i32;
    l.faces().iter().filter(|f| f.dim >= 0 && f.dim < top).all(|f| {
        let heights: Vec<&Rational> = f.vertices.iter().map(|&v| l.points[v].last().unwrap()).collect();
        heights.iter().all(|h| *h == first) || heights.iter().all(|h| *h == last) || f.vertices.len() == f.dim as usize + 1
    })
}

fn pulling_monotonicity() -> Outcome {
    for seed in 0..50u64 {
        let mut rng = stream(seed, 7);
        let constrained = seed % 2 == 1;
        let (l, layered) = if constrained {
            let s = random_layered(&mut rng, 2, &[5, 5], 6, 1);
            (stacked_hull(&s).map_err(err)?, Some(s))
        } else {
            (hull(&(0..10).map(|_| point_in_box(&mut rng, 3, 6, 1)).collect::<Vec<_>>()).map_err(err)?, None)
        };
        let verts = l.vertex_ids();
        let v = verts[below(&mut rng, verts.len() as u64) as usize];
        let constraint = layered.as_ref().map(|s| s.plane(s.layer_of(v)));
        let pulled = pull_vertex(&l, v, constraint.as_ref()).map_err(|e| format!("seed {seed}: {e}"))?;
        let (a, b) = (l.f_vector(), pulled.lattice.f_vector());
        check(a.get(0) == b.get(0), || format!("seed {seed}: vertex count changed"))?;
        for k in 1..a.dim() as i32 {
            check(b.get(k) >= a.get(k), || format!("seed {seed}: f_{k} dropped from {} to {}", a.get(k), b.get(k)))?;
        }
        if let Some(h) = &constraint {
            check(h.eval(&pulled.point) == int(0), || format!("seed {seed}: left the layer plane"))?;
        }
    }
    for seed in 0..10u64 {
        let mut rng = stream(seed, 8);
        let m = 2 + (seed % 2) as usize;
        let s = spanning_layers(&mut rng, 2, &vec![5; m]);
        let out = make_layerwise_simplicial(&s).map_err(err)?;
        let l = stacked_hull(&out).map_err(err)?;
        check(simplicial_off_extremes(&l, &out), || format!("layerwise seed {seed}: non-simplex face"))?;
    }
    Ok("50 pulls, 10 layerwise triangulations".into())
}

fn lower_bound_growth(reports: &mut Vec<(String, SphereSet, CircularityReport)>) -> Outcome {
    let sizes = [8usize, 16, 32, 64];
    let rows: Vec<Result<(usize, SphereSet, CircularityReport, usize), String>> = std::thread::scope(|scope| {
        let handles: Vec<_> = sizes
            .iter()
            .map(|&n| {
                scope.spawn(move || {
                    let inst = lb2_instance(3, n, n, 7).map_err(err)?;
                    let yplus = inst.vertical_facets_in_y_plus().map_err(err)?;
                    let set = inst.spheres();
                    let report = sphere_hull_faces(&set).map_err(err)?;
                    Ok((n, set, report, yplus))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("no panics")).collect()
    });
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut totals = Vec::new();
    for row in rows {
        let (n, set, report, yplus) = row?;
        let c2 = report.counts[2];
        check(c2 >= (n * yplus) as u64, || format!("n = {n}: circularity-2 count {c2} < {n}·{yplus}"))?;
        xs.push(n as f64);
        ys.push(report.total() as f64);
        totals.push(report.total());
        reports.push((format!("lb2 n = {n}"), set, report));
    }
    let fit = growth_fit(&xs, &ys).ok_or("fit failed")?;
    check((fit.slope - 2.0).abs() <= 0.25, || format!("slope {:.4} outside 2 ± 0.25 (totals {totals:?})", fit.slope))?;
    Ok(format!("slope {:.4}, totals {totals:?}", fit.slope))
}

fn oracle_soundness(reports: &[(String, SphereSet, CircularityReport)]) -> Outcome {
    let mut probes = 0;
    for (i, (name, set, report)) in reports.iter().enumerate() {
        let mut rng = stream(99, i as u64);
        let mut hit = BTreeSet::new();
        for _ in 0..10_000 {
            let s: Vec<Rational> = (0..set.d - 1).map(|_| rational_in(&mut rng, 4, 97)).collect();
            let u = rational_unit_vector(&s);
            let face = report.probe(&u).map_err(err)?;
            let m = report.outcome(face).map(|o| o.membership);
            check(m == Some(Membership::Pass), || format!("{name}: probe hit face {face} with {m:?}"))?;
            hit.insert(face);
            probes += 1;
        }
        let counted: u64 = report.total();
        check(counted >= hit.len() as u64, || format!("{name}: {} faces hit, {counted} counted", hit.len()))?;
    }
    Ok(format!("{probes} probes over {} instances, all PASS", reports.len()))
}

fn random_sphere_sets(reports: &mut Vec<(String, SphereSet, CircularityReport)>) -> Result<(), String> {
    for seed in 0..4u64 {
        let set = random_spheres(&mut stream(seed, 9), 3, &[6, 5], 6);
        let report = sphere_hull_faces(&set).map_err(err)?;
        reports.push((format!("random spheres seed {seed}"), set, report));
    }
    Ok(())
}

fn duality_involution() -> Outcome {
    for seed in 0..20u64 {
        let d = 3 + (seed % 3) as usize;
        let l = hull(&random_points(seed, 10, d, d + 4 + (seed as usize % 5))).map_err(err)?;
        check(l.is_full_dimensional(), || format!("seed {seed}: flat hull"))?;
        let verts = l.vertex_ids();
        let mut c = vec![Rational::from_integer(0.into()); d];
        for &v in &verts {
            for (ci, x) in c.iter_mut().zip(l.points[v].iter()) {
                *ci += x;
            }
        }
        let k = Rational::from_integer((verts.len() as i64).into());
        let center = Point::new(c.into_iter().map(|x| x / &k).collect());
        let twice = polar_dual(&polar_dual(&l, &center).map_err(err)?, &center).map_err(err)?;
        check(twice.geometric_signature() == l.geometric_signature(), || format!("seed {seed}: lattices differ"))?;
    }
    Ok("20 hulls in E³–E⁵".into())
}

fn main() {
    // `cargo test -- --list` and filters are not meaningful here.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut reports = Vec::new();
    let mut failed = 0;
    let run = |id: usize, name: &str, budget: Duration, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let result = match outcome {
            Ok(detail) if took <= budget => Ok(detail),
            Ok(detail) => Err(format!("{detail}; over budget")),
            Err(e) => Err(e),
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        println!("criterion {id:>2} {tag} {name} ({:.1}s / {}s): {detail}", took.as_secs_f64(), budget.as_secs());
        usize::from(result.is_err())
    };
    let secs = Duration::from_secs;
    let unbounded = secs(600);
    failed += run(1, "cyclic count", secs(10), &mut cyclic_count);
    failed += run(2, "sphere-hull ground truths", secs(1), &mut || sphere_ground_truths(&mut reports));
    failed += run(3, "minkowski equivalence", secs(60), &mut minkowski_equivalence);
    failed += run(4, "apex augmentation", secs(60), &mut apex_augmentation);
    failed += run(5, "dehn-sommerville", secs(120), &mut dehn_sommerville);
    failed += run(6, "crossing-face bound", unbounded, &mut crossing_bound);
    failed += run(7, "pulling monotonicity", unbounded, &mut pulling_monotonicity);
    failed += run(8, "lower-bound growth", secs(300), &mut || lower_bound_growth(&mut reports));
    if let Err(e) = random_sphere_sets(&mut reports) {
        println!("random sphere sets: {e}");
        failed += 1;
    }
    failed += run(9, "oracle soundness", unbounded, &mut || oracle_soundness(&reports));
    failed += run(10, "duality involution", unbounded, &mut duality_involution);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
