use floorcount::invariants::{g_s_real, g_totally_real, g_totally_real_enumerated, Point};
use floorcount::lattice::{lift, vector_partition, ParametricPolytopeSpec, VectorConfiguration, WeightedCounter};
use floorcount::oracle::{brute_g, brute_weighted_count, pi_x};
use floorcount::{Count, MultiplicityWindow, Sides};
use num::Zero;
use proptest::prelude::*;

fn sides(k: i64) -> Sides {
    Sides::new(vec![k, 0], vec![0], vec![1, 1], vec![2]).unwrap()
}

/// `(k, x1, y1, y2)` on the lattice with nothing zero.
fn lattice_point() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    (prop::sample::select(vec![3i64, 4, 5]), -5i64..=5, -5i64..=5)
        .prop_map(|(k, y1, y2)| (k, -(y1 + y2 + k), y1, y2))
        .prop_filter("nonzero", |&(_, x, y1, y2)| x != 0 && y1 != 0 && y2 != 0)
}

fn small_config() -> impl Strategy<Value = VectorConfiguration> {
    // nonnegative columns with a positive entry keep the polytope bounded
    (1usize..=2, 1usize..=4)
        .prop_flat_map(|(d, m)| prop::collection::vec(prop::collection::vec(0i64..=2, d), m))
        .prop_filter_map("nonzero columns", |cols| {
            cols.iter().all(|c| c.iter().any(|&v| v > 0)).then(|| VectorConfiguration::from_columns(cols[0].len(), &cols))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn routes_agree_with_oracle((k, x, y1, y2) in lattice_point()) {
        let s = sides(k);
        let lat = g_totally_real(&s, 1, &[x], &[y1, y2]).unwrap();
        let en = g_totally_real_enumerated(&s, 1, &[x], &[y1, y2]).unwrap();
        let br = brute_g(&s, 1, 0, &[x], &[y1, y2], &[], &[], MultiplicityWindow::Literal);
        prop_assert_eq!(&lat, &en);
        prop_assert_eq!(&lat, &br);
    }

    #[test]
    fn symmetric_in_y((k, x, y1, y2) in lattice_point()) {
        let s = sides(k);
        prop_assert_eq!(
            g_totally_real(&s, 1, &[x], &[y1, y2]).unwrap(),
            g_totally_real(&s, 1, &[x], &[y2, y1]).unwrap()
        );
    }

    #[test]
    fn s_zero_is_totally_real((k, x, y1, y2) in lattice_point(), g in 0usize..=1) {
        let s = sides(k);
        let p = Point::totally_real(vec![x], vec![y1, y2]);
        prop_assert_eq!(
            g_s_real(&s, g, 0, &p, MultiplicityWindow::Literal).unwrap(),
            g_totally_real(&s, g, &[x], &[y1, y2]).unwrap()
        );
    }

    #[test]
    fn odd_supported((k, x, y1, y2) in lattice_point()) {
        let v = g_totally_real(&sides(k), 1, &[x], &[y1, y2]).unwrap();
        if [k, x, y1, y2].iter().any(|v| v % 2 == 0) {
            prop_assert!(v.is_zero());
        }
    }

    #[test]
    fn s_one_matches_oracle((k, x, y1, y2) in lattice_point(), shifted in any::<bool>()) {
        let w = if shifted { MultiplicityWindow::Shifted } else { MultiplicityWindow::Literal };
        let p = Point::totally_real(vec![x], vec![y1, y2]);
        prop_assert_eq!(
            g_s_real(&sides(k), 0, 1, &p, w).unwrap(),
            brute_g(&sides(k), 0, 1, &[x], &[y1, y2], &[], &[], w)
        );
    }

    #[test]
    fn lifting_identity(x in small_config(), c in prop::collection::vec(0i64..=4, 2)) {
        let c = &c[..x.dim()];
        let m = x.len();
        let spec = ParametricPolytopeSpec { c: vec![vec![1, 1]], d: vec![vec![1]; m], e: vec![0] };
        let w = WeightedCounter::new(&x, &spec).unwrap();
        let direct = w.direct(c).unwrap();
        prop_assert_eq!(&direct, &w.lifted(c).unwrap());
        // |Q(z)| = Σz + 1
        let f = |z: &[i64]| Count::from(z.iter().sum::<i64>() + 1);
        prop_assert_eq!(Some(direct.clone()), brute_weighted_count(&x, c, &f));
        let (a, b) = lift(&x, &spec, c).unwrap();
        prop_assert_eq!(direct, vector_partition(&a, &b).unwrap());
    }

    #[test]
    fn unit_weights_count_points(x in small_config(), c in prop::collection::vec(0i64..=4, 2)) {
        let c = &c[..x.dim()];
        let trivial = ParametricPolytopeSpec::trivial(x.len());
        let w = WeightedCounter::new(&x, &trivial).unwrap();
        prop_assert_eq!(w.direct(c).unwrap(), vector_partition(&x, c).unwrap());
        prop_assert_eq!(
            Some(vector_partition(&x, c).unwrap()),
            brute_weighted_count(&x, c, &|_| Count::from(1))
        );
    }

    #[test]
    fn odd_weight_indicator(z in prop::collection::vec(-6i64..=6, 0..4)) {
        let all_odd = z.iter().all(|v| v % 2 != 0);
        prop_assert_eq!(pi_x(&z), Count::from(all_odd as u8));
    }
}

#[test]
fn even_slope_vanishes() {
    for (x, y1, y2) in [(-3, -2, -1), (-1, -3, -2), (1, -4, -3)] {
        assert!(g_totally_real(&sides(6), 1, &[x], &[y1, y2]).unwrap().is_zero());
    }
}

#[test]
fn off_lattice_rejected() {
    assert!(g_totally_real(&sides(5), 1, &[-3], &[-1, -2]).is_err());
}
