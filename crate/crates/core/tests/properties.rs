//! Randomized invariants over the generator space.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rankpath::instance::{gen_random_planar, parse_instance, write_instance, MatroidKind, MatroidSpec};
use rankpath::matroid::representative_family;
use rankpath::oracle::{check_representative, check_truncation};
use rankpath::matroid::{truncate, TruncationMode};
use rankpath::{Domain, ExactMatrix, LinearMatroid, VertexId};

fn random_matroid(seed: u64, n: usize, rows: usize) -> LinearMatroid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mat: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..n).map(|_| rng.gen_range(0..101)).collect())
        .collect();
    let refs: Vec<&[i64]> = mat.iter().map(|r| r.as_slice()).collect();
    LinearMatroid::new(
        (0..n as VertexId).collect(),
        ExactMatrix::from_i64_rows(Domain::Gfp(101), &refs),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn instance_text_round_trips(seed in 0u64..5000, n in 5usize..11, k in 0usize..4) {
        let spec = MatroidSpec { kind: MatroidKind::Uniform { rank: 3 }, k };
        let bundle = gen_random_planar(n, 0.7, &spec, seed).unwrap();
        let text = write_instance(&bundle).unwrap();
        let reparsed = parse_instance(&text).unwrap();
        prop_assert_eq!(write_instance(&reparsed).unwrap(), text);
    }

    #[test]
    fn representative_subfamilies_stay_small_and_cover(seed in 0u64..5000) {
        let m = random_matroid(seed, 10, 4);
        prop_assume!(m.full_rank() == 4);
        let mut family: Vec<Vec<VertexId>> = Vec::new();
        for a in 0..10u32 {
            for b in (a + 1)..10 {
                if m.is_independent(&[a, b]) {
                    family.push(vec![a, b]);
                }
            }
        }
        let sub = representative_family(&m, &family, 2, 2).unwrap();
        prop_assert!(sub.len() <= 6);
        prop_assert!(check_representative(&m, &family, &sub, 2).unwrap());
    }

    #[test]
    fn truncation_caps_every_rank(seed in 0u64..5000, k in 1usize..4) {
        let m = random_matroid(seed, 8, 4);
        let mt = truncate(&m, k, TruncationMode::Auto).unwrap();
        prop_assert!(check_truncation(&m, &mt, k).unwrap());
    }
}
