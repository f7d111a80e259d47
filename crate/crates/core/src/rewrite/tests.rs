use super::*;
use crate::seed::RelationKind;

fn seed(e: Vec<Vec<i64>>, d: Vec<i64>) -> Seed {
    Seed::new(e, d).unwrap()
}

fn canonical() -> Vec<(Seed, RelationSpec)> {
    let a1 = seed(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]);
    let z = seed(vec![vec![0, 0], vec![0, 0]], vec![1, 1]);
    let a2 = a1.clone();
    let b2 = seed(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]);
    let g2 = seed(vec![vec![0, 3], vec![-1, 0]], vec![1, 3]);
    vec![
        (a1, RelationSpec::a1(0)),
        (z.clone(), z.detect_relation(0, 1).unwrap()),
        (a2.clone(), a2.detect_relation(0, 1).unwrap()),
        (b2.clone(), b2.detect_relation(0, 1).unwrap()),
        (g2.clone(), g2.detect_relation(0, 1).unwrap()),
    ]
}

#[test]
fn self_test_passes() {
    polygon_self_test().unwrap();
}

#[test]
fn k_word_examples() {
    let a2 = seed(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]);
    let w = build_k_word(&a2, 0);
    assert_eq!(w.to_string(), "Phi_1(1/2 p1 - q2) Phi_1(1/2 p1 + q2)^-1 S([[-1, 0], [0, 1]], [0, 0])");
    let b2 = seed(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]);
    let w = build_k_word(&b2, 1);
    for f in &w.factors[..2] {
        let OpFactor::Phi { scale, .. } = f else { panic!() };
        assert_eq!(*scale.scale(), crate::exact::rat(1, 2));
    }
}

#[test]
fn relation_word_lengths() {
    let lens: Vec<usize> = canonical().iter().map(|(s, r)| build_relation_word(s, r).unwrap().len()).collect();
    assert_eq!(lens, vec![6, 12, 16, 18, 24]);
}

#[test]
fn canonical_constants_are_one() {
    for (s, r) in canonical() {
        let c = verify_phase_constant(&s, &r).unwrap_or_else(|e| panic!("{r}: {e}"));
        assert!(c.is_identity(), "{r}: {:?}", c.result.phase);
        let end = c.result.trace.replay(&c.word).unwrap();
        assert!(end.is_empty() && end.phase.is_empty());
    }
}

#[test]
fn a1_uses_the_rank_one_moves() {
    let (s, r) = canonical().remove(0);
    let c = verify_phase_constant(&s, &r).unwrap();
    let t = &c.result.trace;
    assert_eq!(t.count(Rule::Involution), 2);
    assert_eq!(t.count(Rule::QuadPair), 1);
    assert_eq!(t.count(Rule::Polygon), 0);
}

#[test]
fn polygon_fires_once_per_family() {
    for (s, r) in canonical().into_iter().skip(2) {
        let c = verify_phase_constant(&s, &r).unwrap();
        assert!(c.result.trace.count(Rule::Polygon) >= 2, "{r}");
        assert!(r.kind != RelationKind::A2 || c.result.trace.count(Rule::Polygon) == 2);
    }
}

#[test]
fn wrong_scale_is_not_certified() {
    let (s, r) = canonical().remove(2);
    let mut w = build_relation_word(&s, &r).unwrap();
    for f in w.factors.iter_mut() {
        if let OpFactor::Phi { scale, .. } = f {
            *scale = ScaledPlanck::new(crate::exact::rat(1, 2)).unwrap();
            break;
        }
    }
    match normalize(&w) {
        Err(RewriteError::Stuck(_)) => {}
        Ok(n) => assert!(!n.is_identity()),
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn certificate_json_shape() {
    let (s, r) = canonical().remove(3);
    let v = verify_phase_constant(&s, &r).unwrap().to_json();
    for k in ["relation", "seed", "verdict", "phase_exponents", "shift", "trace"] {
        assert!(v.get(k).is_some(), "{k}");
    }
    assert_eq!(v["verdict"], "constant = 1");
    assert_eq!(v["shift"]["c"][0][0], "1");
}
