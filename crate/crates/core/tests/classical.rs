use proptest::prelude::*;
use qcluster::classical::{apply_word, mutate_classical, verify_poisson_preserved, verify_trivial, ClassicalVars, Kind};
use qcluster::seed::{RelationKind, RelationSpec, Seed, Step};

fn rank2(kind: RelationKind) -> Seed {
    let (e, d) = match kind {
        RelationKind::A1xA1 => (vec![vec![0, 0], vec![0, 0]], vec![1, 1]),
        RelationKind::A2 => (vec![vec![0, 1], vec![-1, 0]], vec![1, 1]),
        RelationKind::B2 => (vec![vec![0, 2], vec![-1, 0]], vec![1, 2]),
        RelationKind::G2 => (vec![vec![0, 3], vec![-1, 0]], vec![1, 3]),
        RelationKind::A1 => unreachable!(),
    };
    Seed::new(e, d).unwrap()
}

#[test]
fn polygon_words_are_trivial_for_a_and_x() {
    for rk in [RelationKind::A1xA1, RelationKind::A2, RelationKind::B2, RelationKind::G2] {
        let s = rank2(rk);
        let w = RelationSpec::new(rk, 0, 1).polygon_word(2);
        for kind in [Kind::A, Kind::X] {
            let r = verify_trivial(&s, &w, kind).unwrap();
            assert!(r.is_trivial, "{rk} {kind}: {:?}", r.witness);
        }
    }
}

#[test]
fn polygon_words_on_d_seeds() {
    for rk in [RelationKind::A1xA1, RelationKind::A2, RelationKind::B2, RelationKind::G2] {
        let s = rank2(rk);
        let w = RelationSpec::new(rk, 0, 1).polygon_word(2);
        let r = verify_trivial(&s, &w, Kind::D).unwrap();
        println!("D-kind {rk}: trivial = {} witness = {:?}", r.is_trivial, r.witness);
        assert!(r.is_trivial, "{rk}: {:?}", r.variables);
    }
}

#[test]
fn polygon_with_spectator() {
    let s = Seed::new(vec![vec![0, 1, 1], vec![-1, 0, -1], vec![-1, 1, 0]], vec![1, 1, 1]).unwrap();
    let r = s.detect_relation(0, 1).unwrap();
    assert_eq!(r.kind, RelationKind::A2);
    for kind in Kind::ALL {
        assert!(verify_trivial(&s, &r.polygon_word(3), kind).unwrap().is_trivial, "{kind}");
    }
}

#[test]
fn laurent_denominators_along_words() {
    let s = Seed::new(vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]], vec![1, 1, 1]).unwrap();
    let w: Vec<Step> = [0, 1, 2, 0, 1, 2, 1, 0].iter().map(|&k| Step::Mu(k)).collect();
    let mut v = ClassicalVars::initial(Kind::A, &s);
    for st in &w {
        v = apply_word(&v, std::slice::from_ref(st)).unwrap();
        for e in &v.main {
            assert!(e.has_monomial_denominator(), "{e}");
        }
    }
}

#[test]
fn poisson_preserved_on_rank_two_seeds() {
    for rk in [RelationKind::A2, RelationKind::B2, RelationKind::G2] {
        for k in 0..2 {
            for kind in [Kind::X, Kind::D] {
                assert!(verify_poisson_preserved(&rank2(rk), k, kind).unwrap(), "{rk} k={k} {kind}");
            }
        }
    }
}

fn seed_strategy() -> impl Strategy<Value = Seed> {
    (2usize..=4, any::<u64>()).prop_map(|(n, x)| {
        use rand::SeedableRng;
        Seed::random(&mut rand_chacha::ChaCha8Rng::seed_from_u64(x), n, 3, 1)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn double_mutation_is_trivial(s in seed_strategy(), k in 0usize..4, kind in prop_oneof![Just(Kind::A), Just(Kind::X), Just(Kind::D)]) {
        let k = k % s.n();
        let r = verify_trivial(&s, &[Step::Mu(k), Step::Mu(k)], kind).unwrap();
        prop_assert!(r.is_trivial, "{s} k={k} {kind}: {:?}", r.witness);
    }

    #[test]
    fn mutation_outputs_are_subtraction_free(s in seed_strategy(), k in 0usize..4) {
        let k = k % s.n();
        for kind in Kind::ALL {
            let v = mutate_classical(&ClassicalVars::initial(kind, &s), k).unwrap();
            for (name, e) in v.named() {
                prop_assert!(e.is_subtraction_free(), "{name} = {e}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn poisson_preserved_random_rank_three(x in any::<u64>(), k in 0usize..3) {
        use rand::SeedableRng;
        let s = Seed::random(&mut rand_chacha::ChaCha8Rng::seed_from_u64(x), 3, 2, 1);
        prop_assert!(verify_poisson_preserved(&s, k, Kind::X).unwrap(), "{s}");
    }
}
