mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rkit::halving::{Rule, ShapeState};
use rkit::random::{random_genome, DupSpec, RandomSpec, ShapeSpec};
use rkit::Genome;

fn rule() -> impl Strategy<Value = Rule> {
    prop_oneof![
        Just(Rule::One),
        Just(Rule::Two),
        Just(Rule::ThreeA),
        Just(Rule::ThreeB),
        Just(Rule::ThreeC),
        Just(Rule::ThreeD),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parity_flips_only_under_3d(d in 0usize..40, c in 0usize..40, r in rule()) {
        let s = ShapeState { doubled: d, single: c };
        if let Some(t) = r.apply(s) {
            prop_assert_eq!(t.parity() != s.parity(), r == Rule::ThreeD);
            prop_assert!(t.chromosomes() <= s.chromosomes());
        }
    }

    #[test]
    fn text_round_trip(n in 1usize..9, k in 1usize..4, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let spec = RandomSpec { n, duplication: DupSpec::Partial(p), shape: ShapeSpec::Mixed(k), same_signed: false, seed };
        if let Ok(g) = random_genome(&spec) {
            let back: Genome = g.to_string().parse().unwrap();
            prop_assert!(back.same_as(&g));
        }
    }

    #[test]
    fn scenarios_match_distances(seed in any::<u64>()) {
        let t = common::scenario_properties(4, 6, seed);
        prop_assert!(t.failures.is_empty(), "{:?}", t.failures);
    }

    #[test]
    fn greedy_packing_is_half_approximate(seed in any::<u64>()) {
        let (_, fails) = common::greedy_vs_exact(4, 10, seed);
        prop_assert!(fails.is_empty(), "{:?}", fails);
    }

    #[test]
    fn complementation_matches_rebuild(seed in any::<u64>()) {
        let (_, fails) = common::overlap_complementation(2, 7, seed);
        prop_assert!(fails.is_empty(), "{:?}", fails);
    }
}

#[test]
fn random_instances_are_totally_duplicated() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let g = common::random_instance(&mut rng, 8);
        assert!(rkit::classify::is_totally_duplicated(&g));
    }
}
