use std::sync::Arc;

use proptest::prelude::*;
use qcluster::classical::{apply_word, ClassicalVars, Kind};
use qcluster::exact::{QCoeff, QContext};
use qcluster::quantum::{mu_sharp, ratexpr_series, run_branch, Gen, QSeries, SharpMode, TorusContext};
use qcluster::seed::{Seed, Step};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn random_seed(seed: u64, n_max: usize) -> Seed {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 + (seed as usize % (n_max - 1));
    Seed::random(&mut rng, n, 3, 1)
}

/// A short random element of the torus: a few monomials with small
/// exponents and `u`-power coefficients.
fn random_element(ctx: &Arc<TorusContext>, raw: &[(i8, i8, i8, i8, i8)]) -> QSeries {
    let n = ctx.n();
    raw.iter().fold(QSeries::zero(ctx), |acc, &(c, b0, x0, x1, e)| {
        let mut b = vec![0; n];
        let mut x = vec![0; n];
        b[0] = (b0 % 2) as i64;
        x[0] = (x0 % 3).abs() as i64;
        x[n - 1] += (x1 % 2).abs() as i64;
        let coef = &QCoeff::u_pow((e % 4) as i64, ctx.qctx()) * &QCoeff::from_rational(&qcluster::exact::int((c % 3) as i64 + 1), ctx.qctx());
        acc.add(&QSeries::monomial(ctx, coef, &b, &x))
    })
}

proptest! {
    #![proptest_config(cfg(40))]

    #[test]
    fn product_is_associative(seed in 0u64..10_000, a in prop::collection::vec(any::<(i8, i8, i8, i8, i8)>(), 1..4),
                              b in prop::collection::vec(any::<(i8, i8, i8, i8, i8)>(), 1..4),
                              c in prop::collection::vec(any::<(i8, i8, i8, i8, i8)>(), 1..4)) {
        let ctx = Arc::new(TorusContext::primal(&random_seed(seed, 3)));
        let (a, b, c) = (random_element(&ctx, &a), random_element(&ctx, &b), random_element(&ctx, &c));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn star_is_an_involutive_antiautomorphism(seed in 0u64..10_000, a in prop::collection::vec(any::<(i8, i8, i8, i8, i8)>(), 1..4),
                                              b in prop::collection::vec(any::<(i8, i8, i8, i8, i8)>(), 1..4)) {
        let ctx = Arc::new(TorusContext::primal(&random_seed(seed, 3)));
        let (a, b) = (random_element(&ctx, &a), random_element(&ctx, &b));
        prop_assert_eq!(a.star().star(), a.clone());
        prop_assert_eq!(a.mul(&b).star(), b.star().mul(&a.star()));
    }
}

proptest! {
    #![proptest_config(cfg(50))]

    #[test]
    fn closed_form_matches_conjugation(seed in 0u64..100_000, k in 0usize..3) {
        let s = random_seed(seed, 3);
        let k = k % s.n();
        let ctx = Arc::new(TorusContext::primal(&s));
        for g in Gen::all(s.n()) {
            let a = mu_sharp(&ctx, g, k, SharpMode::ClosedForm, 6).unwrap();
            let b = mu_sharp(&ctx, g, k, SharpMode::Conjugation, 6).unwrap();
            let p = a.prec().unwrap_or(i64::MAX).min(b.prec().unwrap_or(i64::MAX)).min(7);
            prop_assert!(p >= 6);
            prop_assert!(a.agrees_below(&b, p), "seed {:?} k={} {}", s.epsilon(), k, g);
        }
    }
}

proptest! {
    #![proptest_config(cfg(25))]

    #[test]
    fn mutation_at_q_one_is_classical(seed in 0u64..100_000, k in 0usize..3) {
        let s = random_seed(seed, 3);
        let n = s.n();
        let k = k % n;
        let ctx = Arc::new(TorusContext::primal(&s));
        let cctx = Arc::new(TorusContext::commutative(n));
        let steps = [Step::Mu(k)];
        let q = run_branch(&ctx, &steps, 8).unwrap();
        let cl = apply_word(&ClassicalVars::initial(Kind::D, &s), &steps).unwrap();
        for (i, g) in Gen::all(n).into_iter().enumerate() {
            let e = match g { Gen::B(j) => &cl.b[j], Gen::X(j) => &cl.main[j] };
            let p = q[i].prec().unwrap_or(7).min(7);
            let c = ratexpr_series(e, &cctx, p).unwrap();
            prop_assert!(q[i].at_q_one(&cctx).unwrap().agrees_below(&c, p), "{}", g);
        }
    }
}

#[test]
fn generator_relations_of_a_b2_torus() {
    let s = Seed::new(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]).unwrap();
    let ctx = Arc::new(TorusContext::primal(&s));
    let x1 = QSeries::gen(&ctx, Gen::X(0));
    let x2 = QSeries::gen(&ctx, Gen::X(1));
    // lam_12 = 2R ε_12 / d_2 with R = 2, so X1 X2 = u^4 X2 X1 = q^2 X2 X1
    let u4 = QSeries::constant(&ctx, QCoeff::u_pow(4, ctx.qctx()));
    assert_eq!(x1.mul(&x2), u4.mul(&x2).mul(&x1));
    assert_eq!(ctx.qctx(), QContext::new(2));
}
