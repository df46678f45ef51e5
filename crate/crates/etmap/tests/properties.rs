mod common;

use common::*;
use etmap::classes::{EtClass, Op};
use etmap::perm::Perm;
use etmap::realize::{realize_table1, realize_table3, GroupFamily, Verdict};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn classify_of_build_is_expected_class() {
    let bad = classify_matches_expected(0x5eed, 240);
    assert!(bad.is_empty(), "{bad:#?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_spec_lands_in_expected_class(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let s = sample(&mut rng).unwrap();
        prop_assert_eq!(etmap::classes::classify(&s.map), Some(s.expected));
    }

    #[test]
    fn dual_and_petrie_are_equivariant_involutions(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let s = sample(&mut rng).unwrap();
        let bad = omega_failures(&s.map);
        prop_assert!(bad.is_empty(), "{:?}", bad);
    }

    #[test]
    fn jordan_on_random_pairs(seed in any::<u64>(), d in 5usize..=8) {
        let mut rng = StdRng::seed_from_u64(seed);
        let gens = random_generators(&mut rng, d, 2);
        prop_assert_ne!(jordan_holds(&gens), Some(false));
    }
}

#[test]
fn basic_maps_are_omega_equivariant() {
    for t in EtClass::ALL {
        let m = t.basic_map();
        assert!(omega_failures(&m).is_empty(), "{t}");
        assert_eq!(Op::D.apply(&m).flags(), m.flags());
    }
}

#[test]
fn jordan_on_realisation_corpus() {
    let mut applied = 0;
    for n in 5..=8u32 {
        for f in [GroupFamily::Sym { n }, GroupFamily::Alt { n }] {
            for t in EtClass::ALL {
                for v in [realize_table1(f, t), realize_table3(f, t)] {
                    let Ok(Verdict::Realizable(r)) = v else { continue };
                    let Ok(imgs) = r.spec.ordered_images() else { continue };
                    let gens: Vec<Perm> = imgs.iter().map(|s| Perm::parse(s, Some(n as usize)).unwrap()).collect();
                    if let Some(ok) = jordan_holds(&gens) {
                        assert!(ok, "{}", r.spec.to_json());
                        applied += 1;
                    }
                }
            }
        }
    }
    assert!(applied > 20, "only {applied} corpus groups met the hypothesis");
}

#[test]
fn jordan_example() {
    let gens = [Perm::parse("(2,3,4,5,6,7,8)", Some(8)).unwrap(), Perm::parse("(1,2)(3,4)", Some(8)).unwrap()];
    assert_eq!(jordan_holds(&gens), Some(true));
}
