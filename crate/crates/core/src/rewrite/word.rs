//! Operator factors, words and the scalar ledger.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::heisenberg::{seed_forms, mutation_shift, LinearForm, Rep, ScaledPlanck, SpecialAffine};
use crate::seed::{relation_sequence, RelationSpec, Seed, SeedError, Step};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpFactor {
    /// `Φ^{ℏ_s}(arg)` or its inverse.
    Phi { scale: ScaledPlanck, arg: LinearForm, inverted: bool },
    /// `exp(±arg²/(4πiℏ_s))`, the minus sign when inverted.
    QuadExp { scale: ScaledPlanck, arg: LinearForm, inverted: bool },
    Shift { g: SpecialAffine },
}

impl OpFactor {
    pub fn phi(scale: ScaledPlanck, arg: LinearForm, inverted: bool) -> Self {
        assert!(!arg.is_zero(), "Φ of the zero form");
        OpFactor::Phi { scale, arg, inverted }
    }

    pub fn inverse(&self) -> OpFactor {
        match self {
            OpFactor::Phi { scale, arg, inverted } => OpFactor::Phi { scale: scale.clone(), arg: arg.clone(), inverted: !inverted },
            OpFactor::QuadExp { scale, arg, inverted } => {
                OpFactor::QuadExp { scale: scale.clone(), arg: arg.clone(), inverted: !inverted }
            }
            OpFactor::Shift { g } => OpFactor::Shift { g: g.inverse() },
        }
    }

    pub fn arg(&self) -> Option<&LinearForm> {
        match self {
            OpFactor::Phi { arg, .. } | OpFactor::QuadExp { arg, .. } => Some(arg),
            OpFactor::Shift { .. } => None,
        }
    }

    pub fn is_shift(&self) -> bool {
        matches!(self, OpFactor::Shift { .. })
    }

    pub(crate) fn with_arg(&self, new: LinearForm) -> OpFactor {
        match self {
            OpFactor::Phi { scale, inverted, .. } => OpFactor::Phi { scale: scale.clone(), arg: new, inverted: *inverted },
            OpFactor::QuadExp { scale, inverted, .. } => OpFactor::QuadExp { scale: scale.clone(), arg: new, inverted: *inverted },
            OpFactor::Shift { .. } => self.clone(),
        }
    }
}

impl fmt::Display for OpFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv = |b: &bool| if *b { "^-1" } else { "" };
        match self {
            OpFactor::Phi { scale, arg, inverted } => write!(f, "Phi_{scale}({arg}){}", inv(inverted)),
            OpFactor::QuadExp { scale, arg, inverted } => write!(f, "Quad_{scale}({arg}){}", inv(inverted)),
            OpFactor::Shift { g } => write!(f, "S{g}"),
        }
    }
}

/// Exponents of the constants `c_{ℏ_s}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhaseLedger(BTreeMap<ScaledPlanck, i64>);

impl PhaseLedger {
    pub fn add(&mut self, s: &ScaledPlanck, e: i64) {
        let v = self.0.entry(s.clone()).or_insert(0);
        *v += e;
        if *v == 0 {
            self.0.remove(s);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&ScaledPlanck, &i64)> {
        self.0.iter()
    }

    pub fn negated(&self) -> PhaseLedger {
        PhaseLedger(self.0.iter().map(|(k, v)| (k.clone(), -v)).collect())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(self.0.iter().map(|(k, v)| (k.to_string(), serde_json::Value::from(*v))).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorWord {
    pub phase: PhaseLedger,
    pub factors: Vec<OpFactor>,
    /// Seed whose Hilbert space the leftmost factor acts on.
    pub frame: Seed,
}

impl OperatorWord {
    pub fn new(frame: Seed) -> Self {
        OperatorWord { phase: PhaseLedger::default(), factors: vec![], frame }
    }

    pub fn n(&self) -> usize {
        self.frame.n()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Formal inverse; the frame becomes `target`, the seed the word maps from.
    pub fn inverse(&self, target: Seed) -> OperatorWord {
        OperatorWord {
            phase: self.phase.negated(),
            factors: self.factors.iter().rev().map(OpFactor::inverse).collect(),
            frame: target,
        }
    }

    pub fn concat(&self, o: &OperatorWord) -> OperatorWord {
        let mut w = self.clone();
        w.factors.extend(o.factors.iter().cloned());
        for (s, e) in o.phase.entries() {
            w.phase.add(s, *e);
        }
        w
    }

    /// True once every analytic factor is gone.
    pub fn is_shift_only(&self) -> bool {
        self.factors.iter().all(OpFactor::is_shift)
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, e) in self.phase.entries() {
            write!(f, "c_{s}^{e} ")?;
        }
        let v: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        if v.is_empty() {
            f.write_str("id")
        } else {
            f.write_str(&v.join(" "))
        }
    }
}

/// `K = Φ_{1/d_k}(x̂_k) Φ_{1/d_k}(x̃̂_k)^{-1} S(K')` with old-representation forms.
pub fn build_k_word(s: &Seed, k: usize) -> OperatorWord {
    let f = seed_forms(s, Rep::Old);
    let sc = ScaledPlanck::for_d(s.di(k));
    let mut w = OperatorWord::new(s.clone());
    w.factors = vec![
        OpFactor::phi(sc.clone(), f.x[k].clone(), false),
        OpFactor::phi(sc, f.xt[k].clone(), true),
        OpFactor::Shift { g: mutation_shift(s, k) },
    ];
    w
}

fn branch_word(s: &Seed, steps: &[Step]) -> Result<(OperatorWord, Seed), SeedError> {
    let mut w = OperatorWord::new(s.clone());
    let mut cur = s.clone();
    for st in steps {
        match st {
            Step::Mu(k) => {
                w = w.concat(&build_k_word(&cur, *k));
            }
            Step::Perm(sigma) => {
                w.factors.push(OpFactor::Shift { g: SpecialAffine::permutation(sigma) });
            }
        }
        cur = cur.apply(st)?;
    }
    Ok((w, cur))
}

/// `RHS^{-1} · LHS` for the relation `r` based at `s`, acting on the
/// Hilbert space of the seed both branches end at.
pub fn build_relation_word(s: &Seed, r: &RelationSpec) -> Result<OperatorWord, SeedError> {
    relation_sequence(s, r)?;
    let r = r.clone().with_rank(s.n());
    let (l, end) = branch_word(s, &r.lhs)?;
    let (rw, _) = branch_word(s, &r.rhs)?;
    Ok(rw.inverse(end).concat(&l))
}

/// Which half of the old representation a form belongs to, relative to
/// the frame seed: combinations `Σ c_i x̂_i`, `Σ c_i x̃̂_i`, or both at once.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Family {
    Both,
    X,
    XTilde,
    Other,
}

pub(crate) fn family(frame: &Seed, l: &LinearForm) -> Family {
    let n = frame.n();
    // x̂_i has p-coefficient 1/(2 d_i) and q-coefficients -ε_ij.
    let c: Vec<_> = (0..n).map(|i| &l.pcoef[i] * crate::exact::int(2 * frame.di(i))).collect();
    let ce: Vec<_> = (0..n)
        .map(|j| (0..n).fold(crate::exact::Rational::zero(), |acc, i| acc + &c[i] * crate::exact::int(frame.eps(i, j))))
        .collect();
    let is_x = l.qcoef.iter().zip(&ce).all(|(b, v)| *b == -v.clone());
    let is_xt = l.qcoef.iter().zip(&ce).all(|(b, v)| b == v);
    match (is_x, is_xt) {
        (true, true) => Family::Both,
        (true, false) => Family::X,
        (false, true) => Family::XTilde,
        (false, false) => Family::Other,
    }
}
