//! Sphere hulls against point hulls, rigid motions and direction probes.

use std::collections::BTreeSet;

use parhull::exact::{int, rat, Rational};
use parhull::generators::random_spheres;
use parhull::lattice::hull;
use parhull::rng::{rational_in, stream};
use parhull::sphere::{rational_unit_vector, sphere_hull_faces, Membership, Sphere, SphereSet};
use parhull::Point;
use proptest::prelude::*;

fn centers(d: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::btree_set(prop::collection::vec(-6i64..=6, d), d + 1..d + 7)
        .prop_map(|s| s.into_iter().map(|c| Point::from_ints(&c)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Equal radii: a face of circularity `c` is a `(d−1−c)`-face of the
    /// hull of the centers.
    #[test]
    fn equal_radii_follow_the_center_hull(pts in centers(3), num in 0i64..4) {
        let l = hull(&pts).unwrap();
        prop_assume!(l.is_full_dimensional());
        let set = SphereSet::new(3, pts.iter().map(|c| Sphere::new(c.clone(), rat(num, 2))).collect()).unwrap();
        let r = sphere_hull_faces(&set).unwrap();
        let f = l.f_vector();
        let want: Vec<u64> = (0..3).map(|c| f.get(2 - c)).collect();
        prop_assert_eq!(r.counts, want);
    }

    #[test]
    fn translation_keeps_counts(seed in 0u64..1000, shift in prop::collection::vec(-5i64..=5, 3)) {
        let set = random_spheres(&mut stream(seed, 0), 3, &[4, 3], 5);
        let moved = SphereSet::new(
            3,
            set.spheres
                .iter()
                .map(|s| {
                    let c = s.center.iter().zip(&shift).map(|(x, t)| x + int(*t)).collect();
                    Sphere::new(Point::new(c), s.radius.clone())
                })
                .collect(),
        )
        .unwrap();
        prop_assert_eq!(sphere_hull_faces(&set).unwrap().counts, sphere_hull_faces(&moved).unwrap().counts);
    }

    /// Permuting coordinates is an isometry.
    #[test]
    fn coordinate_swap_keeps_counts(seed in 0u64..1000) {
        let set = random_spheres(&mut stream(seed, 1), 3, &[5, 2], 5);
        let swapped = SphereSet::new(
            3,
            set.spheres
                .iter()
                .map(|s| Sphere::new(Point::new(vec![s.center[2].clone(), s.center[0].clone(), s.center[1].clone()]), s.radius.clone()))
                .collect(),
        )
        .unwrap();
        prop_assert_eq!(sphere_hull_faces(&set).unwrap().counts, sphere_hull_faces(&swapped).unwrap().counts);
    }
}

#[test]
fn probes_only_hit_passing_faces() {
    for seed in 0..6u64 {
        let set = random_spheres(&mut stream(seed, 2), 3, &[5, 4, 3], 4);
        let report = sphere_hull_faces(&set).unwrap();
        let mut rng = stream(seed, 3);
        let mut hit = BTreeSet::new();
        for _ in 0..500 {
            let s: Vec<Rational> = (0..2).map(|_| rational_in(&mut rng, 3, 50)).collect();
            let face = report.probe(&rational_unit_vector(&s)).unwrap();
            assert_eq!(report.outcome(face).map(|o| o.membership), Some(Membership::Pass), "seed {seed}");
            hit.insert(face);
        }
        assert!(report.total() >= hit.len() as u64);
    }
}

#[test]
fn planar_disks() {
    // Two disks of radii 1 and 2 far apart: two arcs and two segments.
    let set = SphereSet::new(2, vec![
        Sphere::new(Point::from_ints(&[0, 0]), int(1)),
        Sphere::new(Point::from_ints(&[6, 0]), int(2)),
    ])
    .unwrap();
    assert_eq!(sphere_hull_faces(&set).unwrap().counts, vec![2, 2]);
}

#[test]
fn a_swallowed_sphere_is_dropped() {
    let set = SphereSet::new(3, vec![
        Sphere::new(Point::from_ints(&[0, 0, 0]), int(4)),
        Sphere::new(Point::from_ints(&[1, 0, 0]), int(1)),
        Sphere::new(Point::from_ints(&[0, 1, 0]), int(1)),
    ])
    .unwrap();
    assert_eq!(sphere_hull_faces(&set).unwrap().counts, vec![0, 0, 1]);
}
