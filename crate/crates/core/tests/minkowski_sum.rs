//! Weighted Minkowski sums by slicing against the pairwise-sum hull.

use parhull::exact::{rat, Rational};
use parhull::minkowski::{minkowski_oracle, weighted_minkowski, WeightedSumSpec};
use parhull::Point;
use proptest::prelude::*;

fn point(d: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(-9i64..=9, d).prop_map(|c| Point::from_ints(&c))
}

fn weight() -> impl Strategy<Value = Rational> {
    (2i64..=15).prop_flat_map(|den| (1..den).prop_map(move |num| rat(num, den)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn slice_matches_pairwise_hull(
        p in prop::collection::vec(point(3), 1..9),
        q in prop::collection::vec(point(3), 1..9),
        lambda in weight(),
    ) {
        let spec = WeightedSumSpec::new(p, q, lambda).unwrap();
        let sum = weighted_minkowski(&spec).unwrap();
        let oracle = minkowski_oracle(&spec).unwrap();
        prop_assert_eq!(sum.geometric_signature(), oracle.geometric_signature());
        prop_assert!(sum.verify().is_ok());
    }

    #[test]
    fn planar_sums_match(
        p in prop::collection::vec(point(2), 1..8),
        q in prop::collection::vec(point(2), 1..8),
    ) {
        let spec = WeightedSumSpec::new(p, q, rat(1, 2)).unwrap();
        prop_assert_eq!(
            weighted_minkowski(&spec).unwrap().geometric_signature(),
            minkowski_oracle(&spec).unwrap().geometric_signature()
        );
    }
}

#[test]
fn sum_of_polygons_has_edges_of_both() {
    // Triangle plus square: a generic planar sum has f_1(P) + f_1(Q) edges.
    let tri = vec![Point::from_ints(&[0, 0]), Point::from_ints(&[4, 1]), Point::from_ints(&[1, 3])];
    let sq = vec![
        Point::from_ints(&[0, 0]),
        Point::from_ints(&[2, 0]),
        Point::from_ints(&[2, 2]),
        Point::from_ints(&[0, 2]),
    ];
    let sum = weighted_minkowski(&WeightedSumSpec::new(tri, sq, rat(1, 3)).unwrap()).unwrap();
    assert_eq!(sum.f_vector().get(1), 7);
}
