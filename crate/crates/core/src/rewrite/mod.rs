//! Rewriting of intertwiner words down to a scalar times a shift.
//!
//! A relation word `RHS^{-1} · LHS` is driven through a fixed schedule:
//! shifts are pushed to the right and merged, the `x̂` and `x̃̂` factors are
//! commuted apart, and cancellation, involution, polygon and quadratic pair
//! rules fire leftmost first. A bounded breadth-first search takes over if
//! the schedule stalls. The phase constant is `1` exactly when the ledger
//! is empty and the leftover shift is `(id, 0)`.

mod rules;
mod word;

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::exact::int;
use crate::heisenberg::{LinearForm, ScaledPlanck, SpecialAffine};
use crate::seed::{RelationSpec, Seed, SeedError};

pub use rules::{apply as apply_rule, polygon_middle, polygon_rhs, Rule};
pub use word::{build_k_word, build_relation_word, OpFactor, OperatorWord, PhaseLedger};

use word::{family, Family};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error("normalization failed, stuck at: {0}")]
    Stuck(String),
    #[error("trace does not replay at step {step}: {reason}")]
    BadTrace { step: usize, reason: String },
    #[error("polygon rule self-test failed for m = {0}")]
    SelfTest(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: Rule,
    pub pos: usize,
    pub before: Vec<OpFactor>,
    pub after: Vec<OpFactor>,
}

impl TraceStep {
    fn to_json(&self) -> serde_json::Value {
        let s = |v: &[OpFactor]| v.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" ");
        serde_json::json!({"rule": self.rule.name(), "pos": self.pos, "before": s(&self.before), "after": s(&self.after)})
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RewriteTrace {
    pub steps: Vec<TraceStep>,
}

impl RewriteTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn count(&self, rule: Rule) -> usize {
        self.steps.iter().filter(|s| s.rule == rule).count()
    }

    /// Re-runs every step from `start`, re-deriving each right side from the
    /// rule itself, and returns the final word.
    pub fn replay(&self, start: &OperatorWord) -> Result<OperatorWord, RewriteError> {
        let mut w = start.clone();
        for (i, st) in self.steps.iter().enumerate() {
            let bad = |reason: &str| RewriteError::BadTrace { step: i, reason: reason.to_string() };
            let end = st.pos + st.rule.arity();
            if end > w.len() || w.factors[st.pos..end] != st.before[..] {
                return Err(bad("left side not found"));
            }
            let (after, delta) = rules::apply(st.rule, &st.before).ok_or_else(|| bad("rule does not apply"))?;
            if after != st.after {
                return Err(bad("right side differs"));
            }
            w.factors.splice(st.pos..end, after);
            for (s, e) in delta {
                w.phase.add(&s, e);
            }
        }
        Ok(w)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.steps.iter().map(TraceStep::to_json).collect())
    }
}

#[derive(Clone, Debug)]
pub struct Normalized {
    pub phase: PhaseLedger,
    pub shift: SpecialAffine,
    pub trace: RewriteTrace,
}

impl Normalized {
    pub fn is_identity(&self) -> bool {
        self.phase.is_empty() && self.shift.is_identity()
    }
}

struct Engine {
    w: OperatorWord,
    trace: Vec<TraceStep>,
}

impl Engine {
    fn fire(&mut self, rule: Rule, pos: usize) -> bool {
        let end = pos + rule.arity();
        if end > self.w.len() {
            return false;
        }
        let before = self.w.factors[pos..end].to_vec();
        let Some((after, delta)) = rules::apply(rule, &before) else {
            return false;
        };
        self.w.factors.splice(pos..end, after.iter().cloned());
        for (s, e) in delta {
            self.w.phase.add(&s, e);
        }
        self.trace.push(TraceStep { rule, pos, before, after });
        true
    }

    fn push_shifts(&mut self) {
        loop {
            let f = &self.w.factors;
            let Some(i) = (0..f.len()).find(|&i| match &f[i] {
                OpFactor::Shift { g } => g.is_identity() || i + 1 < f.len(),
                _ => false,
            }) else {
                return;
            };
            let ok = self.fire(Rule::ShiftDrop, i) || self.fire(Rule::ShiftMerge, i) || self.fire(Rule::ShiftPush, i);
            assert!(ok, "a shift can always move right");
        }
    }

    fn key(&self, i: usize) -> Option<u8> {
        let OpFactor::Phi { arg, .. } = &self.w.factors[i] else {
            return None;
        };
        match family(&self.w.frame, arg) {
            Family::Both | Family::X => Some(0),
            Family::XTilde => Some(1),
            Family::Other => None,
        }
    }

    /// Stable sort of the analytic factors into the `x̂` block followed by the
    /// `x̃̂` block, one commuting swap at a time.
    fn separate(&mut self) {
        loop {
            let mut moved = false;
            for i in 0..self.w.len().saturating_sub(1) {
                if let (Some(a), Some(b)) = (self.key(i), self.key(i + 1)) {
                    if a > b && self.fire(Rule::Commute, i) {
                        moved = true;
                    }
                }
            }
            if !moved {
                return;
            }
        }
    }

    fn local(&mut self) -> bool {
        for pos in 0..self.w.len() {
            for rule in [Rule::Cancel, Rule::Involution, Rule::QuadPair, Rule::Polygon] {
                if self.fire(rule, pos) {
                    return true;
                }
            }
        }
        false
    }

    /// Brings two separated factors together by commuting one of them across
    /// the gap when that lets a two-factor rule fire.
    fn assisted(&mut self) -> bool {
        let len = self.w.len();
        for gap in 2..len {
            for i in 0..len - gap {
                let j = i + gap;
                let f = &self.w.factors;
                let pair = [f[i].clone(), f[j].clone()];
                let Some(rule) = [Rule::Cancel, Rule::Involution, Rule::QuadPair].into_iter().find(|&r| rules::apply(r, &pair).is_some())
                else {
                    continue;
                };
                if (i + 1..j).all(|k| rules::can_commute(&f[k], &f[j])) {
                    for k in (i + 1..j).rev() {
                        assert!(self.fire(Rule::Commute, k));
                    }
                    assert!(self.fire(rule, i));
                    return true;
                }
                if (i + 1..j).all(|k| rules::can_commute(&f[i], &f[k])) {
                    for k in i..j - 1 {
                        assert!(self.fire(Rule::Commute, k));
                    }
                    assert!(self.fire(rule, j - 1));
                    return true;
                }
            }
        }
        false
    }

    /// Moves the leftmost quadratic exponential that sits just before a `Φ`
    /// one place to the right. Quadratic exponentials never pass each other.
    fn drift(&mut self) -> bool {
        let f = &self.w.factors;
        let Some(i) = (0..f.len().saturating_sub(1))
            .find(|&i| matches!(f[i], OpFactor::QuadExp { .. }) && matches!(f[i + 1], OpFactor::Phi { .. }))
        else {
            return false;
        };
        self.fire(Rule::Commute, i) || self.fire(Rule::QuadPush, i)
    }

    fn schedule(&mut self) {
        for _ in 0..10_000 {
            self.push_shifts();
            self.separate();
            if !(self.local() || self.assisted() || self.drift()) {
                return;
            }
        }
    }

    /// Breadth-first search over single rule applications until the word has
    /// no analytic factor left.
    fn search(&mut self) -> bool {
        const MAX_DEPTH: usize = 64;
        const MAX_NODES: usize = 4_000;
        let start = self.w.clone();
        let mut seen = HashSet::from([start.to_string()]);
        let mut queue = VecDeque::from([(start, Vec::<TraceStep>::new())]);
        while let Some((w, path)) = queue.pop_front() {
            if w.is_shift_only() {
                let mut e = Engine { w, trace: path };
                e.push_shifts();
                self.w = e.w;
                self.trace.extend(e.trace);
                return true;
            }
            if path.len() >= MAX_DEPTH || seen.len() > MAX_NODES {
                continue;
            }
            for pos in 0..w.len() {
                for rule in Rule::ALL {
                    let mut e = Engine { w: w.clone(), trace: path.clone() };
                    if e.fire(rule, pos) && seen.insert(e.w.to_string()) {
                        queue.push_back((e.w, e.trace));
                    }
                }
            }
        }
        false
    }
}

/// Checks once that the unified polygon rule reproduces the pentagon,
/// hexagon and octagon corollaries with `L1 = mP`, `L2 = Q`, `[P, Q] = 2πiℏ`.
pub fn polygon_self_test() -> Result<(), RewriteError> {
    static DONE: OnceLock<Result<(), RewriteError>> = OnceLock::new();
    DONE.get_or_init(|| {
        let p = LinearForm::p(1, 0);
        let q = LinearForm::q(1, 0);
        let lin = |a: i64, b: i64| p.scale(&int(a)).axpy(&int(b), &q);
        let h = |s: i64| ScaledPlanck::new(int(s)).unwrap();
        let phi = |s: i64, a: i64, b: i64| OpFactor::phi(h(s), lin(a, b), false);
        for m in 1..=3 {
            let expected = match m {
                1 => vec![phi(1, 0, 1), phi(1, 1, 1)],
                2 => vec![phi(1, 0, 1), phi(2, 2, 2), phi(1, 2, 1)],
                _ => vec![phi(1, 0, 1), phi(3, 3, 3), phi(1, 3, 2), phi(3, 6, 3), phi(1, 3, 1)],
            };
            let mut expected = expected;
            expected.push(OpFactor::QuadExp { scale: h(m), arg: lin(m, 0), inverted: false });
            let lhs = [phi(m, m, 0), phi(1, 0, 1), phi(m, -m, 0)];
            match rules::apply(Rule::Polygon, &lhs) {
                Some((got, delta)) if got == expected && delta == vec![(h(m), 1)] => {}
                _ => return Err(RewriteError::SelfTest(m)),
            }
            let inv: Vec<OpFactor> = lhs.iter().rev().map(OpFactor::inverse).collect();
            let want: Vec<OpFactor> = expected.iter().rev().map(OpFactor::inverse).collect();
            match rules::apply(Rule::Polygon, &inv) {
                Some((got, delta)) if got == want && delta == vec![(h(m), -1)] => {}
                _ => return Err(RewriteError::SelfTest(m)),
            }
        }
        Ok(())
    })
    .clone()
}

pub fn normalize(w: &OperatorWord) -> Result<Normalized, RewriteError> {
    polygon_self_test()?;
    let mut e = Engine { w: w.clone(), trace: vec![] };
    e.schedule();
    if !e.w.is_shift_only() && !e.search() {
        return Err(RewriteError::Stuck(e.w.to_string()));
    }
    e.push_shifts();
    let shift = match e.w.factors.as_slice() {
        [] => SpecialAffine::identity(w.n()),
        [OpFactor::Shift { g }] => g.clone(),
        _ => unreachable!("shifts merge into one"),
    };
    Ok(Normalized { phase: e.w.phase, shift, trace: RewriteTrace { steps: e.trace } })
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub relation: RelationSpec,
    pub seed: Seed,
    pub word: OperatorWord,
    pub result: Normalized,
}

#[derive(Serialize)]
struct Summary<'a> {
    relation: String,
    verdict: &'a str,
    rules: Vec<(&'static str, usize)>,
}

impl Certificate {
    pub fn is_identity(&self) -> bool {
        self.result.is_identity()
    }

    pub fn verdict(&self) -> &'static str {
        if self.is_identity() {
            "constant = 1"
        } else {
            "not identity"
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "relation": self.relation.to_string(),
            "seed": serde_json::from_str::<serde_json::Value>(&self.seed.to_json()).unwrap(),
            "verdict": self.verdict(),
            "phase_exponents": self.result.phase.to_json(),
            "shift": self.result.shift.to_json(),
            "trace": self.result.trace.to_json(),
        })
    }

    /// Rule counts, for the terse CLI output.
    pub fn summary_json(&self) -> serde_json::Value {
        let rules = Rule::ALL.iter().map(|&r| (r.name(), self.result.trace.count(r))).filter(|x| x.1 > 0).collect();
        serde_json::to_value(Summary { relation: self.relation.to_string(), verdict: self.verdict(), rules }).unwrap()
    }
}

/// Builds the relation word for `r` at `s` and normalizes it.
pub fn verify_phase_constant(s: &Seed, r: &RelationSpec) -> Result<Certificate, RewriteError> {
    let word = build_relation_word(s, r)?;
    let result = normalize(&word)?;
    Ok(Certificate { relation: r.clone().with_rank(s.n()), seed: s.clone(), word, result })
}

#[cfg(test)]
mod tests;
