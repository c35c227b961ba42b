mod common;

use common::*;
use deltatour::coverage::{coverage_radius, is_delta_tour};
use deltatour::discrete::{exact_shortest_tour, stop_position_set};
use deltatour::graph::Point;
use deltatour::io::{parse_graph, parse_tour, tour_to_json, write_graph};
use deltatour::rational::{fmt_rational, one, parse_rational, rat, Rational};
use deltatour::regimes::{solve, solve_with, LargeMode, SolveOptions};
use deltatour::tour::make_nice;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn delta_strategy() -> impl Strategy<Value = Rational> {
    (0i64..=40, prop::sample::select(vec![1i64, 2, 3, 4, 5, 6, 8, 10, 12, 40])).prop_map(|(p, q)| rat(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalization_keeps_length_stops_and_coverage(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 8);
        let t = random_tour(&g, &mut rng, 20);
        let n1 = make_nice(&g, &t);
        prop_assert!(n1.length(&g) <= t.length(&g));
        prop_assert!(n1.alpha() <= t.alpha());
        prop_assert_eq!(make_nice(&g, &n1), n1.clone());
        prop_assert!(is_delta_tour(&g, &n1, &coverage_radius(&g, &t)));
    }

    #[test]
    fn extension_passes_everything_the_tour_passes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 7);
        let t = make_nice(&g, &random_tour(&g, &mut rng, 14));
        if let Ok(ext) = t.extension(&g) {
            for p in t.cycle() {
                prop_assert!(ext.passes(&g, p));
            }
            for (a, b) in t.segments() {
                if let Some((u, v)) = g.common_edge(a, b) {
                    let mid = (a.position_from(u, v) + b.position_from(u, v)) / rat(2, 1);
                    prop_assert!(ext.passes(&g, &Point::on_edge(u, v, mid)));
                }
            }
        }
    }

    #[test]
    fn unpassed_points_are_nearest_to_a_stop(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 7);
        let t = random_tour(&g, &mut rng, 10);
        for &(u, v) in g.edges() {
            for k in 0..=8 {
                let p = Point::on_edge(u, v, rat(k, 8));
                if !t.passes(&g, &p) {
                    prop_assert_eq!(t.distance_to(&g, &p), t.distance_to_stops(&g, &p));
                }
            }
        }
    }

    #[test]
    fn solver_output_is_valid_and_bounded(seed in any::<u64>(), delta in delta_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 9);
        for mode in [LargeMode::Fixed, LargeMode::InputDelta] {
            let r = solve_with(&g, &delta, &SolveOptions { mode }).unwrap();
            prop_assert!(is_delta_tour(&g, &r.tour, &delta));
            prop_assert_eq!(r.length.clone(), r.tour.length(&g));
            for (_, lb) in &r.lower_bounds {
                prop_assert!(*lb <= r.length);
            }
            if let Some(c) = &r.certified_ratio {
                prop_assert!(*c >= one());
            }
        }
    }

    #[test]
    fn exact_never_beaten(seed in any::<u64>(), delta in delta_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 5);
        let e = exact_shortest_tour(&g, &delta, Some(40)).unwrap();
        let s = solve(&g, &delta).unwrap();
        prop_assert!(e.length <= s.length);
        prop_assert!(is_delta_tour(&g, &e.tour, &delta));
    }

    #[test]
    fn positions_symmetric_and_sorted(delta in delta_strategy()) {
        let s = stop_position_set(&delta).unwrap();
        prop_assert!(s.windows(2).all(|w| w[0] < w[1]));
        for x in &s {
            prop_assert!(s.contains(&(one() - x)));
        }
    }

    #[test]
    fn formats_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 9);
        let g2 = parse_graph(&write_graph(&g)).unwrap();
        prop_assert_eq!(g2.edges(), g.edges());
        let t = random_tour(&g, &mut rng, 12);
        let back = parse_tour(&g, &tour_to_json(&t).to_string()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn rationals_round_trip(p in -1000i64..1000, q in 1i64..1000) {
        let x = rat(p, q);
        prop_assert_eq!(parse_rational(&fmt_rational(&x)).unwrap(), x);
    }
}
