//! Property tests: algorithm results against brute-force oracles and the
//! structural identities of the counting function, on randomized rational
//! societies.

mod common;

use circ_pierce::arc::{Arc, Closure};
use circ_pierce::counting::{counting_function, extremum_intervals};
use circ_pierce::error::Error;
use circ_pierce::io::{parse_society, society_to_json};
use circ_pierce::piercing::{
    circular_pierce_alg2, exact_pierce, extract_disjoint_family, shrink_to_closed,
};
use circ_pierce::society::{AnySociety, Society};
use common::{brute_force_pierce, max_disjoint_brute, rat, DENOM};
use num_rational::BigRational;
use proptest::prelude::*;

#[derive(Clone, Debug)]
struct ArcSpec {
    left: i64,
    length: i64,
    half_open: bool,
}

fn arc_spec() -> impl Strategy<Value = ArcSpec> {
    (0..DENOM, 1..DENOM, any::<bool>()).prop_map(|(left, length, half_open)| ArcSpec {
        left,
        length,
        half_open,
    })
}

fn build(specs: &[ArcSpec]) -> Society<BigRational> {
    let arcs = specs
        .iter()
        .map(|s| {
            Arc::new(
                rat(s.left, DENOM),
                rat(s.length, DENOM),
                if s.half_open {
                    Closure::HalfOpen
                } else {
                    Closure::Closed
                },
            )
            .unwrap()
        })
        .collect();
    Society::new(arcs).unwrap()
}

fn rotate(s: &Society<BigRational>, by: &BigRational) -> Society<BigRational> {
    Society::new(s.arcs().iter().map(|a| a.shift(by)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_matches_brute_force(specs in prop::collection::vec(arc_spec(), 1..=6)) {
        let s = build(&specs);
        let r = exact_pierce(&s);
        prop_assert_eq!(r.size(), brute_force_pierce(&s));
        prop_assert!(r.optimal);
        prop_assert!(r.verify_against(&shrink_to_closed(&s)));
    }

    #[test]
    fn piercing_number_is_rotation_invariant(
        specs in prop::collection::vec(arc_spec(), 1..=5),
        by in 0..DENOM,
    ) {
        let s = build(&specs);
        let t = rotate(&s, &rat(by, DENOM));
        prop_assert_eq!(exact_pierce(&s).size(), exact_pierce(&t).size());
    }

    #[test]
    fn alg2_is_within_one_of_optimal(
        specs in prop::collection::vec(arc_spec(), 1..=6),
        cut in 0..(2 * DENOM),
    ) {
        let s = build(&specs);
        let tau = brute_force_pierce(&s);
        let r = circular_pierce_alg2(&s, &rat(cut, 2 * DENOM));
        prop_assert!(r.size() == tau || r.size() == tau + 1,
            "alg2 gave {} with tau {}", r.size(), tau);
        prop_assert!(r.verify_against(&shrink_to_closed(&s)));
    }

    #[test]
    fn shrinking_preserves_the_piercing_number(
        specs in prop::collection::vec(arc_spec(), 1..=6)
    ) {
        let s = build(&specs);
        let c = shrink_to_closed(&s);
        prop_assert_eq!(brute_force_pierce(&s), brute_force_pierce(&c));
    }

    #[test]
    fn packing_never_exceeds_piercing(specs in prop::collection::vec(arc_spec(), 1..=7)) {
        let s = build(&specs);
        // one piercing point meets at most one arc of a disjoint family
        prop_assert!(max_disjoint_brute(&s) <= brute_force_pierce(&s));
        let fam = extract_disjoint_family(&s);
        let arcs = s.arcs();
        for (i, &a) in fam.arc_indices.iter().enumerate() {
            for &b in &fam.arc_indices[i + 1..] {
                prop_assert!(!arcs[a].intersects(&arcs[b]));
            }
        }
    }

    #[test]
    fn intersection_is_symmetric(a in arc_spec(), b in arc_spec()) {
        let s = build(&[a, b]);
        let (x, y) = (&s.arcs()[0], &s.arcs()[1]);
        prop_assert_eq!(x.intersects(y), y.intersects(x));
    }

    #[test]
    fn integral_identities_hold(specs in prop::collection::vec(arc_spec(), 1..=8)) {
        let s = build(&specs);
        let c = counting_function(&s);
        let total: BigRational = s
            .arcs()
            .iter()
            .map(|a| a.length().clone())
            .fold(rat(0, 1), |acc, l| acc + l);
        prop_assert_eq!(c.riemann_integral(), total);
        if s.all_closed() {
            prop_assert_eq!(c.euler_integral(), s.len() as i64);
            match extremum_intervals(&s) {
                Ok(ext) => prop_assert_eq!(ext.alternating_sum(), s.len() as i64),
                Err(Error::ConstantCountingFunction) => {}
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }
    }

    #[test]
    fn counting_function_value_matches_direct_count(
        specs in prop::collection::vec(arc_spec(), 1..=8),
        num in 0..(2 * DENOM),
    ) {
        let s = build(&specs);
        let c = counting_function(&s);
        let x = rat(num, 2 * DENOM);
        prop_assert_eq!(c.value_at(&x), s.count_at(&x));
    }

    #[test]
    fn society_json_round_trips(specs in prop::collection::vec(arc_spec(), 1..=6)) {
        let s = build(&specs);
        let json = society_to_json(&AnySociety::Rational(s.clone()), Some("prop"));
        let loaded = parse_society(&json).unwrap();
        match loaded.society {
            AnySociety::Rational(t) => prop_assert_eq!(s, t),
            AnySociety::Float(_) => prop_assert!(false, "kind changed"),
        }
        prop_assert_eq!(loaded.name.as_deref(), Some("prop"));
    }
}
