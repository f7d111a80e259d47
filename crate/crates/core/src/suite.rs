//! The reproduction checklist. Each criterion is a self-contained run that
//! reports a verdict, a one-line detail and its wall time.

use std::fmt;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classical::{verify_poisson_preserved, verify_trivial, Kind};
use crate::dilog::{run_identity_suite_with, DilogParams, SuiteOptions};
use crate::exact::rational::lcm_i64;
use crate::heisenberg::{kprime_conjugation_check, Rep};
use crate::quantum::{verify_compact_identity, verify_quantum_relation, CompactIdentity};
use crate::rewrite::verify_phase_constant;
use crate::seed::{find_relation, RelationKind, RelationSpec, Seed, Step};

pub const CRITERIA: [(u8, &str); 8] = [
    (1, "phase constants"),
    (2, "rank-1 robustness"),
    (3, "classical trivial transformations"),
    (4, "poisson compatibility"),
    (5, "compact dilogarithm identities"),
    (6, "quantum mutation consistency"),
    (7, "representation discrepancy"),
    (8, "dilogarithm numerics"),
];

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
    /// Stated runtime budget in seconds, if any.
    pub budget: Option<f64>,
}

impl CriterionResult {
    pub fn within_budget(&self) -> bool {
        self.budget.is_none_or(|b| self.seconds <= b)
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "[{v}] {} {}: {} ({:.2} s", self.id, self.name, self.detail, self.seconds)?;
        match self.budget {
            Some(b) if self.seconds > b => write!(f, ", over the {b} s budget)"),
            Some(b) => write!(f, ", budget {b} s)"),
            None => write!(f, ")"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    /// Truncation order of the quantum layer.
    pub order: i64,
    pub seed: u64,
    pub hbars: Vec<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { order: 6, seed: 2024, hbars: vec![0.7, 1.3, std::f64::consts::SQRT_2] }
    }
}

fn seed(e: Vec<Vec<i64>>, d: Vec<i64>) -> Seed {
    Seed::new(e, d).expect("canonical seed")
}

/// The bundled seeds, in the order A1, A1xA1, A2, B2, G2.
pub fn canonical_seeds() -> Vec<(RelationKind, Seed)> {
    vec![
        (RelationKind::A1, seed(vec![vec![0]], vec![1])),
        (RelationKind::A1xA1, seed(vec![vec![0, 0], vec![0, 0]], vec![1, 1])),
        (RelationKind::A2, seed(vec![vec![0, 1], vec![-1, 0]], vec![1, 1])),
        (RelationKind::B2, seed(vec![vec![0, 2], vec![-1, 0]], vec![1, 2])),
        (RelationKind::G2, seed(vec![vec![0, 3], vec![-1, 0]], vec![1, 3])),
    ]
}

/// The relation a canonical seed carries at indices 1 and 2 (or 1 for A1).
pub fn canonical_relation(kind: RelationKind, s: &Seed) -> RelationSpec {
    find_relation(s, kind).expect("relation applies")
}

/// `base` padded to rank `n` with random spectator indices, `d ≤ 3`.
pub fn spectator_variant<R: Rng>(rng: &mut R, base: &Seed, n: usize) -> Seed {
    let m = base.n();
    let mut d = base.d().to_vec();
    d.extend((m..n).map(|_| rng.gen_range(1..=3)));
    let mut e = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i < m && j < m {
                e[i][j] = base.eps(i, j);
            }
        }
    }
    for j in m..n {
        for i in 0..j {
            let l = lcm_i64(d[i], d[j]);
            let t = rng.gen_range(-1..=1);
            e[i][j] = t * l / d[i];
            e[j][i] = -t * l / d[j];
        }
    }
    Seed::new(e, d).expect("constructed valid")
}

fn timed(id: u8, budget: Option<f64>, run: impl FnOnce() -> (bool, String)) -> CriterionResult {
    let t = Instant::now();
    let (pass, detail) = run();
    let name = CRITERIA[id as usize - 1].1;
    CriterionResult { id, name, pass, detail, seconds: t.elapsed().as_secs_f64(), budget }
}

pub fn criterion_1(cfg: &SuiteConfig) -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    // a per-instance budget; the criterion total is only reported
    timed(1, None, || {
        let (mut ok, mut total, mut worst) = (0, 0, 0f64);
        let mut failures = vec![];
        for (kind, base) in canonical_seeds() {
            let r = canonical_relation(kind, &base);
            let mut instances = vec![base.clone()];
            instances.extend((0..10).map(|_| spectator_variant(&mut rng, &base, 3)));
            for s in instances {
                total += 1;
                let t = Instant::now();
                match verify_phase_constant(&s, &r) {
                    Ok(c) if c.is_identity() => ok += 1,
                    Ok(c) => failures.push(format!("{kind} on {s}: {}", c.verdict())),
                    Err(e) => failures.push(format!("{kind} on {s}: {e}")),
                }
                worst = worst.max(t.elapsed().as_secs_f64());
            }
        }
        let mut detail = format!("{ok}/{total} instances constant = 1, slowest {worst:.3} s (limit 1 s)");
        if let Some(f) = failures.first() {
            detail += &format!("; first failure {f}");
        }
        (ok == total && worst < 1.0, detail)
    })
}

pub fn criterion_2(cfg: &SuiteConfig) -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 2);
    timed(2, Some(10.0), || {
        let (mut ok, mut total) = (0, 0);
        for _ in 0..50 {
            let n = rng.gen_range(1..=5);
            let s = Seed::random(&mut rng, n, 3, 2);
            for k in 0..n {
                total += 1;
                if verify_phase_constant(&s, &RelationSpec::a1(k)).is_ok_and(|c| c.is_identity()) {
                    ok += 1;
                }
            }
        }
        (ok == total, format!("{ok}/{total} twice-flip words normalize to the identity"))
    })
}

pub fn criterion_3(cfg: &SuiteConfig) -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 3);
    timed(3, Some(30.0), || {
        let (mut flips, mut flip_total) = (0, 0);
        for _ in 0..100 {
            let n = rng.gen_range(1..=4);
            let s = Seed::random(&mut rng, n, 3, 1);
            for k in 0..n {
                for kind in Kind::ALL {
                    flip_total += 1;
                    if verify_trivial(&s, &[Step::Mu(k), Step::Mu(k)], kind).is_ok_and(|r| r.is_trivial) {
                        flips += 1;
                    }
                }
            }
        }
        let (mut polys, mut poly_total) = (0, 0);
        for (kind, s) in canonical_seeds().into_iter().skip(1) {
            let r = canonical_relation(kind, &s);
            for k in Kind::ALL {
                poly_total += 1;
                if verify_trivial(&s, &r.polygon_word(s.n()), k).is_ok_and(|x| x.is_trivial) {
                    polys += 1;
                }
            }
        }
        (
            flips == flip_total && polys == poly_total,
            format!("{flips}/{flip_total} double flips, {polys}/{poly_total} (h+2)-gon words trivial"),
        )
    })
}

pub fn criterion_4(cfg: &SuiteConfig) -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 4);
    timed(4, None, || {
        let (mut ok, mut total) = (0, 0);
        for _ in 0..50 {
            let n = rng.gen_range(1..=4);
            let s = Seed::random(&mut rng, n, 3, 1);
            let k = rng.gen_range(0..n);
            for kind in [Kind::X, Kind::D] {
                total += 1;
                if verify_poisson_preserved(&s, k, kind) == Ok(true) {
                    ok += 1;
                }
            }
        }
        (ok == total, format!("{ok}/{total} (seed, k, kind) cases preserve the bracket"))
    })
}

pub fn criterion_5(_: &SuiteConfig) -> CriterionResult {
    timed(5, Some(60.0), || {
        let mut parts = vec![];
        let mut pass = true;
        for (c, order) in [
            (CompactIdentity::Pentagon, 8),
            (CompactIdentity::Split2, 8),
            (CompactIdentity::Split3, 8),
            (CompactIdentity::Hexagon, 6),
            (CompactIdentity::Octagon, 6),
        ] {
            let ok = verify_compact_identity(c, order);
            pass &= ok;
            parts.push(format!("{c}@{order} {}", if ok { "ok" } else { "FAILS" }));
        }
        (pass, parts.join(", "))
    })
}

pub fn criterion_6(cfg: &SuiteConfig) -> CriterionResult {
    timed(6, None, || {
        let mut parts = vec![];
        let mut pass = true;
        for (kind, s) in canonical_seeds() {
            let r = canonical_relation(kind, &s);
            let v = match verify_quantum_relation(&s, &r, cfg.order) {
                Ok(rep) => {
                    let ok = rep.holds && rep.classical_limit;
                    pass &= ok;
                    match (rep.holds, rep.classical_limit) {
                        (true, true) => "ok".to_string(),
                        (h, c) => format!("holds={h} q->1={c}"),
                    }
                }
                Err(e) => {
                    pass = false;
                    e.to_string()
                }
            };
            parts.push(format!("{kind} {v}"));
        }
        (pass, format!("order {}: {}", cfg.order, parts.join(", ")))
    })
}

pub fn criterion_7(_: &SuiteConfig) -> CriterionResult {
    timed(7, None, || {
        let s = seed(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]);
        let old_ok = (0..2).all(|k| kprime_conjugation_check(&s, k, Rep::Old).holds);
        let new = kprime_conjugation_check(&s, 0, Rep::New);
        let witness = new.mismatches.first().map(|m| format!("{}: got {}, expected {}", m.identity, m.got, m.expected));
        let pass = old_ok && !new.holds && witness.is_some();
        let detail = format!("old holds={old_ok}; new mismatch {}", witness.unwrap_or_else(|| "none".into()));
        (pass, detail)
    })
}

pub fn criterion_8(cfg: &SuiteConfig) -> CriterionResult {
    timed(8, Some(60.0), || {
        let opts = SuiteOptions { seed: cfg.seed, ..SuiteOptions::default() };
        let mut params: Vec<_> = cfg.hbars.iter().map(|&h| DilogParams::real(h)).collect();
        params.push(DilogParams::new(Complex64::new(0.8, 0.3)));
        let mut worst: Vec<(&'static str, f64)> = vec![];
        let mut pass = true;
        for p in params {
            let Ok(p) = p else {
                pass = false;
                continue;
            };
            let rep = run_identity_suite_with(&p, &opts);
            pass &= rep.all_pass();
            for e in rep.entries {
                match worst.iter_mut().find(|w| w.0 == e.identity) {
                    Some(w) => w.1 = w.1.max(e.max_residual),
                    None => worst.push((e.identity, e.max_residual)),
                }
            }
        }
        let d: Vec<String> = worst.iter().map(|(n, r)| format!("{n} {r:.1e}")).collect();
        (pass, format!("max residuals: {}", d.join(", ")))
    })
}

pub fn criterion(id: u8, cfg: &SuiteConfig) -> Option<CriterionResult> {
    Some(match id {
        1 => criterion_1(cfg),
        2 => criterion_2(cfg),
        3 => criterion_3(cfg),
        4 => criterion_4(cfg),
        5 => criterion_5(cfg),
        6 => criterion_6(cfg),
        7 => criterion_7(cfg),
        8 => criterion_8(cfg),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectators_keep_the_block() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (kind, base) in canonical_seeds() {
            for _ in 0..20 {
                let s = spectator_variant(&mut rng, &base, 3);
                assert_eq!(s.n(), 3);
                assert_eq!(find_relation(&s, kind).unwrap(), canonical_relation(kind, &base));
            }
        }
    }

    #[test]
    fn fast_criteria() {
        let cfg = SuiteConfig::default();
        for id in [2, 4, 7] {
            let r = criterion(id, &cfg).unwrap();
            assert!(r.pass, "{r}");
        }
        assert!(criterion(9, &cfg).is_none());
    }

    #[test]
    fn result_line() {
        let r = CriterionResult { id: 5, name: "x", pass: false, detail: "d".into(), seconds: 2.0, budget: Some(1.0) };
        assert_eq!(r.to_string(), "[FAIL] 5 x: d (2.00 s, over the 1 s budget)");
        assert!(!r.within_budget());
    }
}
