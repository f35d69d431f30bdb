mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use raag_spine::autos::{check_homomorphism, outer_equal, whitehead_auto, RaagAutomorphism};
use raag_spine::norms::{candidate_pairs, count_partition, norm_delta, MarkedSalvetti, NormContext};
use raag_spine::partitions::{compatible, opposite_quadrant_partitions};
use raag_spine::sample::{random_graph, random_symmetric_marking, random_word};
use raag_spine::words::{conj_canon, cyclic_reduce, equal_elements};
use raag_spine::{DefiningGraph, Word};

use common::*;

fn setup(seed: u64) -> (ChaCha8Rng, DefiningGraph) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 + (seed % 4) as usize;
    let g = random_graph(&mut rng, n, 0.35);
    (rng, g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn automorphisms_have_two_sided_inverses(seed in any::<u64>(), len in 0usize..8) {
        let (mut rng, g) = setup(seed);
        let a = random_symmetric_marking(&mut rng, &g, 5);
        let b = a.invert(&g);
        prop_assert!(a.compose(&g, &b).is_identity());
        prop_assert!(b.compose(&g, &a).is_identity());
        prop_assert!(check_homomorphism(&g, a.images()).is_ok());
        let w = random_word(&mut rng, &g, len);
        prop_assert!(equal_elements(&g, &b.apply(&g, &a.apply(&g, &w)), &w));
    }

    #[test]
    fn symmetric_automorphisms_are_closed(seed in any::<u64>()) {
        let (mut rng, g) = setup(seed);
        let a = random_symmetric_marking(&mut rng, &g, 4);
        let b = random_symmetric_marking(&mut rng, &g, 4);
        prop_assert!(a.is_symmetric(&g) && b.is_symmetric(&g));
        prop_assert!(a.compose(&g, &b).is_symmetric(&g));
        prop_assert!(a.invert(&g).is_symmetric(&g));
    }

    #[test]
    fn whitehead_images_match_rules(seed in any::<u64>(), len in 0usize..7) {
        let (mut rng, g) = setup(seed);
        for pair in candidate_pairs(&g, false) {
            let a = whitehead_auto(&g, &pair);
            let w = random_word(&mut rng, &g, len);
            let oracle = normal_form(&g, &substitute(&whitehead_images(&g, &pair), &seq(&w)));
            prop_assert_eq!(normal_form(&g, &seq(&a.apply(&g, &w))), oracle);
        }
    }

    #[test]
    fn images_round_trip_through_factorization(seed in any::<u64>()) {
        let (mut rng, g) = setup(seed);
        let a = random_symmetric_marking(&mut rng, &g, 4);
        let b = RaagAutomorphism::from_images(&g, a.images().to_vec()).unwrap();
        prop_assert!(outer_equal(&g, &a, &b).is_some());
        prop_assert_eq!(b.images(), a.images());
    }

    #[test]
    fn cyclic_length_matches_oracle(seed in any::<u64>(), len in 0usize..9) {
        let (mut rng, g) = setup(seed);
        let w = random_word(&mut rng, &g, len);
        prop_assert_eq!(cyclic_reduce(&g, &w).len(), cyclic_length(&g, &seq(&w)));
        prop_assert_eq!(conj_canon(&g, &w).len(), cyclic_length(&g, &seq(&w)));
    }

    #[test]
    fn opposite_quadrants_do_not_raise_norm(seed in any::<u64>(), len in 1usize..6) {
        // |X| + |Y| ≤ |P| + |Q| for the opposite-quadrant partitions of an
        // incompatible pair, measured on a cyclically reduced word.
        let (mut rng, g) = setup(seed);
        let parts = raag_spine::partitions::all_partitions(&g, false);
        let w: Word = cyclic_reduce(&g, &random_word(&mut rng, &g, len));
        for p in parts.iter().take(20) {
            for q in parts.iter().take(20) {
                if compatible(&g, p, q) {
                    continue;
                }
                let found = opposite_quadrant_partitions(&g, p, q).unwrap();
                prop_assert!(found.is_some());
                let (x, y) = found.unwrap();
                let lhs = count_partition(&g, &x, &w).unwrap() + count_partition(&g, &y, &w).unwrap();
                let rhs = count_partition(&g, p, &w).unwrap() + count_partition(&g, q, &w).unwrap();
                prop_assert!(lhs <= rhs, "{} {} -> {} {} on {}", p.to_text(&g), q.to_text(&g), x.to_text(&g), y.to_text(&g), w.to_text(&g));
            }
        }
    }

    #[test]
    fn inverse_move_undoes_norm_change(seed in any::<u64>()) {
        let (mut rng, g) = setup(seed);
        let sigma = MarkedSalvetti::new(&g, random_symmetric_marking(&mut rng, &g, 3));
        let ctx = NormContext::length_one(&g, 2);
        for pair in candidate_pairs(&g, false).into_iter().take(10) {
            let moved = sigma.whitehead_move(&g, &pair);
            let back = moved.whitehead_move(&g, &pair.inverse(&g));
            prop_assert!(outer_equal(&g, back.marking(), sigma.marking()).is_some());
            let d = norm_delta(&g, &sigma, &ctx, &pair);
            let e = norm_delta(&g, &moved, &ctx, &pair.inverse(&g));
            prop_assert_eq!(d.w_entry, -e.w_entry);
        }
    }
}
