use proptest::prelude::*;
use qcluster::exact::{int, rat, RatMatrix};
use qcluster::heisenberg::{bracket, mutation_shift, seed_forms, LinearForm, Rep, SpecialAffine};
use qcluster::rewrite::{verify_phase_constant, Rule};
use qcluster::seed::{RelationKind, RelationSpec, Seed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn blocks() -> Vec<(Vec<Vec<i64>>, Vec<i64>, RelationKind)> {
    vec![
        (vec![vec![0, 0], vec![0, 0]], vec![1, 1], RelationKind::A1xA1),
        (vec![vec![0, 1], vec![-1, 0]], vec![1, 1], RelationKind::A2),
        (vec![vec![0, 2], vec![-1, 0]], vec![1, 2], RelationKind::B2),
        (vec![vec![0, 3], vec![-1, 0]], vec![1, 3], RelationKind::G2),
    ]
}

/// The 2×2 block plus a third index whose row and column are random in
/// `{-2..2}` subject to skew-symmetrizability.
fn spectator(rng: &mut ChaCha8Rng, e: &[Vec<i64>], d: &[i64]) -> Seed {
    loop {
        let d3 = rng.gen_range(1..=3);
        let mut m = vec![vec![0; 3]; 3];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = e[i][j];
            }
            m[i][2] = rng.gen_range(-2..=2);
            // ε_i3 d_i = -ε_3i d_3
            if (m[i][2] * d[i]) % d3 != 0 {
                continue;
            }
            m[2][i] = -m[i][2] * d[i] / d3;
        }
        if m[2].iter().any(|x| x.abs() > 2) {
            continue;
        }
        if let Ok(s) = Seed::new(m, vec![d[0], d[1], d3]) {
            return s;
        }
    }
}

fn random_shift(rng: &mut ChaCha8Rng, n: usize) -> SpecialAffine {
    // products of elementary transvections and sign flips
    let mut g = SpecialAffine::identity(n);
    for _ in 0..4 {
        let mut c = RatMatrix::identity(n);
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            c.set(i, i, int(-1));
        } else {
            c.set(i, j, int(rng.gen_range(-2..=2)));
        }
        g = g.compose(&SpecialAffine::linear(c).unwrap());
    }
    g
}

fn random_form(rng: &mut ChaCha8Rng, n: usize) -> LinearForm {
    let mut l = LinearForm::zero(n);
    for i in 0..n {
        l.pcoef[i] = rat(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        l.qcoef[i] = int(rng.gen_range(-3..=3));
    }
    l
}

#[test]
fn rank_one_on_random_seeds() {
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=5);
        let s = Seed::random(&mut rng, n, 3, 2);
        let k = rng.gen_range(0..n);
        let c = verify_phase_constant(&s, &RelationSpec::a1(k)).unwrap();
        assert!(c.is_identity(), "{s} k={k}");
    }
}

#[test]
fn spectator_embeddings() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (e, d, kind) in blocks() {
        for _ in 0..10 {
            let s = spectator(&mut rng, &e, &d);
            let r = s.detect_relation(0, 1).unwrap();
            assert_eq!(r.kind, kind);
            let t = std::time::Instant::now();
            let c = verify_phase_constant(&s, &r).unwrap_or_else(|err| panic!("{s}: {err}"));
            assert!(c.is_identity(), "{s}");
            assert!(t.elapsed().as_secs_f64() < 1.0, "{s} took {:?}", t.elapsed());
            let end = c.result.trace.replay(&c.word).unwrap();
            assert!(end.is_empty());
        }
    }
}

#[test]
fn octagon_needs_the_quadratic_push() {
    let s = Seed::new(vec![vec![0, 3], vec![-1, 0]], vec![1, 3]).unwrap();
    let c = verify_phase_constant(&s, &s.detect_relation(0, 1).unwrap()).unwrap();
    assert!(c.result.trace.count(Rule::QuadPush) > 0);
    assert_eq!(c.result.trace.count(Rule::Polygon), 2);
}

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn shift_push_round_trip(seed in 0u64..100_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=4);
        let g = random_shift(&mut rng, n);
        let l = random_form(&mut rng, n);
        let m = random_form(&mut rng, n);
        let gl = g.conjugate(&l);
        prop_assert_eq!(g.inverse().conjugate(&gl), l.clone());
        prop_assert_eq!(bracket(&gl, &g.conjugate(&m)), bracket(&l, &m));
        let h = random_shift(&mut rng, n);
        prop_assert_eq!(g.compose(&h).conjugate(&l), g.conjugate(&h.conjugate(&l)));
    }

    #[test]
    fn affine_group_axioms(seed in 0u64..100_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=4);
        let t = |rng: &mut ChaCha8Rng| (0..n).map(|_| rat(rng.gen_range(-3..=3), rng.gen_range(1..=2))).collect::<Vec<_>>();
        let mk = |rng: &mut ChaCha8Rng| { let g = random_shift(rng, n); SpecialAffine::new(g.c().clone(), t(rng)).unwrap() };
        let (a, b, c) = (mk(&mut rng), mk(&mut rng), mk(&mut rng));
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        // distinct elements move the probe points 0, e_1, .., e_n differently
        let images = |g: &SpecialAffine| {
            (0..=n).map(|i| {
                let e: Vec<_> = (0..n).map(|j| int((j + 1 == i) as i64)).collect();
                g.c().left_apply(&e).into_iter().zip(g.t()).map(|(x, y)| x + y).collect::<Vec<_>>()
            }).collect::<Vec<_>>()
        };
        prop_assert_eq!(a == b, images(&a) == images(&b));
    }

    #[test]
    fn seed_form_identities(seed in 0u64..100_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=5);
        let s = Seed::random(&mut rng, n, 3, 2);
        for rep in [Rep::Old, Rep::New] {
            let f = seed_forms(&s, rep);
            for i in 0..n {
                let sum = (0..n).fold(f.x[i].clone(), |acc, j| acc.axpy(&int(s.eps(i, j)), &f.b[j]));
                prop_assert_eq!(&f.xt[i], &sum);
            }
        }
        let f = seed_forms(&s, Rep::Old);
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { rat(1, s.di(i)) } else { int(0) };
                prop_assert_eq!(bracket(&f.x[i], &f.b[j]), want);
            }
        }
        // mutation shifts preserve every bracket
        for k in 0..n {
            let g = mutation_shift(&s, k);
            prop_assert!(g.compose(&g).is_identity());
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(bracket(&g.conjugate(&f.x[i]), &g.conjugate(&f.xt[j])), bracket(&f.x[i], &f.xt[j]));
                }
            }
        }
    }
}
