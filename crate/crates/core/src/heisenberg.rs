//! Linear forms in `p̂_1..p̂_n, q̂_1..q̂_n` with `[p̂_i, q̂_j] = 2πiℏ δ_ij`,
//! and the special affine group acting on them by conjugation.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::rational::{fmt_rat, int, pos, rat};
use crate::exact::{RatMatrix, Rational};
use crate::seed::Seed;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeisenbergError {
    #[error("not a recognized quadratic pair: {0}")]
    NotQuadPair(String),
    #[error("|det c| != 1")]
    NotUnimodular,
}

/// `Σ a_i p̂_i + Σ b_i q̂_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    pub pcoef: Vec<Rational>,
    pub qcoef: Vec<Rational>,
}

impl LinearForm {
    pub fn zero(n: usize) -> Self {
        LinearForm { pcoef: vec![Rational::zero(); n], qcoef: vec![Rational::zero(); n] }
    }

    pub fn p(n: usize, i: usize) -> Self {
        let mut l = Self::zero(n);
        l.pcoef[i] = Rational::one();
        l
    }

    pub fn q(n: usize, i: usize) -> Self {
        let mut l = Self::zero(n);
        l.qcoef[i] = Rational::one();
        l
    }

    pub fn n(&self) -> usize {
        self.pcoef.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pcoef.iter().chain(&self.qcoef).all(|x| x.is_zero())
    }

    pub fn add(&self, o: &LinearForm) -> LinearForm {
        let z = |a: &[Rational], b: &[Rational]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        LinearForm { pcoef: z(&self.pcoef, &o.pcoef), qcoef: z(&self.qcoef, &o.qcoef) }
    }

    pub fn sub(&self, o: &LinearForm) -> LinearForm {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> LinearForm {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, r: &Rational) -> LinearForm {
        LinearForm { pcoef: self.pcoef.iter().map(|x| x * r).collect(), qcoef: self.qcoef.iter().map(|x| x * r).collect() }
    }

    /// `self + r·o`
    pub fn axpy(&self, r: &Rational, o: &LinearForm) -> LinearForm {
        self.add(&o.scale(r))
    }

    pub fn is_pure_p(&self) -> bool {
        self.qcoef.iter().all(|x| x.is_zero())
    }

    pub fn is_pure_q(&self) -> bool {
        self.pcoef.iter().all(|x| x.is_zero())
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (sym, v) in [("p", &self.pcoef), ("q", &self.qcoef)] {
            for (i, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let neg = c.is_negative();
                if first {
                    if neg {
                        f.write_str("-")?;
                    }
                } else {
                    f.write_str(if neg { " - " } else { " + " })?;
                }
                first = false;
                let a = c.abs();
                if !a.is_one() {
                    write!(f, "{} ", fmt_rat(&a))?;
                }
                write!(f, "{sym}{}", i + 1)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `[L1, L2] = 2πiℏ · bracket(L1, L2)`.
pub fn bracket(l1: &LinearForm, l2: &LinearForm) -> Rational {
    assert_eq!(l1.n(), l2.n(), "dimension mismatch");
    let mut r = Rational::zero();
    for i in 0..l1.n() {
        r += &l1.pcoef[i] * &l2.qcoef[i] - &l2.pcoef[i] * &l1.qcoef[i];
    }
    r
}

/// `ℏ_s = s·ℏ`, `s > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScaledPlanck {
    scale: Rational,
}

impl ScaledPlanck {
    pub fn new(scale: Rational) -> Option<Self> {
        scale.is_positive().then_some(ScaledPlanck { scale })
    }

    /// `ℏ_k = ℏ/d_k`
    pub fn for_d(d: i64) -> Self {
        ScaledPlanck { scale: rat(1, d) }
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }
}

impl fmt::Display for ScaledPlanck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rat(&self.scale))
    }
}

/// `(S f)(a) = f(a c + t)` for a row vector `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialAffine {
    c: RatMatrix,
    t: Vec<Rational>,
}

impl SpecialAffine {
    pub fn new(c: RatMatrix, t: Vec<Rational>) -> Result<Self, HeisenbergError> {
        assert_eq!(c.n(), t.len(), "dimension mismatch");
        if !c.has_unit_abs_det() {
            return Err(HeisenbergError::NotUnimodular);
        }
        Ok(SpecialAffine { c, t })
    }

    pub fn linear(c: RatMatrix) -> Result<Self, HeisenbergError> {
        let n = c.n();
        Self::new(c, vec![Rational::zero(); n])
    }

    pub fn identity(n: usize) -> Self {
        SpecialAffine { c: RatMatrix::identity(n), t: vec![Rational::zero(); n] }
    }

    /// The relabeling operator of `σ`: conjugation sends the forms indexed
    /// `σ(i)` to the ones indexed `i`, so `c[i][σ(i)] = 1`.
    pub fn permutation(sigma: &[usize]) -> Self {
        let n = sigma.len();
        let mut c = RatMatrix::zeros(n);
        for (i, &s) in sigma.iter().enumerate() {
            c.set(i, s, Rational::one());
        }
        SpecialAffine { c, t: vec![Rational::zero(); n] }
    }

    pub fn c(&self) -> &RatMatrix {
        &self.c
    }

    pub fn t(&self) -> &[Rational] {
        &self.t
    }

    pub fn n(&self) -> usize {
        self.c.n()
    }

    pub fn is_identity(&self) -> bool {
        self.c.is_identity() && self.t.iter().all(|x| x.is_zero())
    }

    /// `(c, t)(c', t') = (c c', t c' + t')`
    pub fn compose(&self, o: &SpecialAffine) -> SpecialAffine {
        let tc = o.c.left_apply(&self.t);
        SpecialAffine { c: self.c.mul(&o.c), t: tc.iter().zip(&o.t).map(|(a, b)| a + b).collect() }
    }

    pub fn inverse(&self) -> SpecialAffine {
        let ci = self.c.inverse().expect("unimodular");
        let t = ci.left_apply(&self.t).into_iter().map(|x| -x).collect();
        SpecialAffine { c: ci, t }
    }

    /// `S L S^{-1}`: `p̂_i ↦ Σ_j (c^{-1})_{ij} p̂_j`, `q̂_i ↦ Σ_j c_{ji} q̂_j`.
    /// The translation part only shifts `q̂` by scalars, which these forms
    /// never carry, so it must be zero here.
    pub fn conjugate(&self, l: &LinearForm) -> LinearForm {
        assert!(self.t.iter().all(|x| x.is_zero()), "conjugation by a translation");
        let ci = self.c.inverse().expect("unimodular");
        LinearForm { pcoef: ci.left_apply(&l.pcoef), qcoef: self.c.apply(&l.qcoef) }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"c": self.c.to_strings(), "t": self.t.iter().map(fmt_rat).collect::<Vec<_>>()})
    }
}

impl fmt::Display for SpecialAffine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.t.iter().map(fmt_rat).collect();
        write!(f, "({}, [{}])", self.c, t.join(", "))
    }
}

pub fn affine_compose(g1: &SpecialAffine, g2: &SpecialAffine) -> SpecialAffine {
    g1.compose(g2)
}

pub fn conjugate_linear_form(g: &SpecialAffine, l: &LinearForm) -> LinearForm {
    g.conjugate(l)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rep {
    Old,
    New,
}

impl fmt::Display for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rep::Old => "old",
            Rep::New => "new",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedForms {
    pub b: Vec<LinearForm>,
    pub x: Vec<LinearForm>,
    pub xt: Vec<LinearForm>,
}

pub fn seed_forms(s: &Seed, rep: Rep) -> SeedForms {
    let n = s.n();
    let mut f = SeedForms { b: vec![], x: vec![], xt: vec![] };
    for i in 0..n {
        let mut x = LinearForm::zero(n);
        let mut xt = LinearForm::zero(n);
        match rep {
            Rep::Old => {
                f.b.push(LinearForm::q(n, i).scale(&int(2)));
                x.pcoef[i] = rat(1, 2 * s.di(i));
                xt.pcoef[i] = rat(1, 2 * s.di(i));
                for j in 0..n {
                    x.qcoef[j] = int(-s.eps(i, j));
                    xt.qcoef[j] = int(s.eps(i, j));
                }
            }
            Rep::New => {
                f.b.push(LinearForm::q(n, i));
                x.pcoef[i] = rat(1, s.di(i));
                xt.pcoef[i] = rat(1, s.di(i));
                for j in 0..n {
                    x.qcoef[j] = int(-pos(s.eps(i, j)));
                    xt.qcoef[j] = int(-pos(-s.eps(i, j)));
                }
            }
        }
        f.x.push(x);
        f.xt.push(xt);
    }
    f
}

/// The shift part `K'` of the intertwiner at `k`; its own inverse.
pub fn mutation_shift(s: &Seed, k: usize) -> SpecialAffine {
    let n = s.n();
    let mut c = RatMatrix::identity(n);
    c.set(k, k, int(-1));
    for i in (0..n).filter(|&i| i != k) {
        c.set(i, k, int(pos(-s.eps(k, i))));
    }
    SpecialAffine { c, t: vec![Rational::zero(); n] }
}

/// `exp(L1²/(4πiℏ_s)) exp(-L2²/(4πiℏ_s))` as a shift, when `L1 + L2` is a
/// single momentum `α p̂_k` and `L1 - L2 = Σ β_j q̂_j` with `β_k = 0`.
/// `L2` may be replaced by `-L2` since only its square enters.
pub fn quad_pair_to_shift(l1: &LinearForm, l2: &LinearForm, s: &ScaledPlanck) -> Result<SpecialAffine, HeisenbergError> {
    let n = l1.n();
    if l1 == l2 || *l1 == l2.neg() {
        return Ok(SpecialAffine::identity(n));
    }
    for l2 in [l2.clone(), l2.neg()] {
        let sum = l1.add(&l2);
        let diff = l1.sub(&l2);
        if !bracket(&sum, &diff).is_zero() || !sum.is_pure_p() || !diff.is_pure_q() {
            continue;
        }
        let nz: Vec<usize> = (0..n).filter(|&i| !sum.pcoef[i].is_zero()).collect();
        let [k] = nz[..] else { continue };
        if !diff.qcoef[k].is_zero() {
            continue;
        }
        let alpha = &sum.pcoef[k];
        let mut c = RatMatrix::identity(n);
        for j in (0..n).filter(|&j| j != k) {
            c.set(j, k, alpha * &diff.qcoef[j] / (int(2) * s.scale()));
        }
        return Ok(SpecialAffine { c, t: vec![Rational::zero(); n] });
    }
    Err(HeisenbergError::NotQuadPair(format!("({l1}, {l2})")))
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjugationMismatch {
    /// Which identity failed, e.g. `x'_1`.
    pub identity: String,
    pub got: String,
    pub expected: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct KPrimeReport {
    pub k: usize,
    pub rep: Rep,
    pub holds: bool,
    pub mismatches: Vec<ConjugationMismatch>,
}

/// Conjugates the forms of `μ_k(s)` by `K'` and compares with the
/// expected images in the frame of `s`.
pub fn kprime_conjugation_check(s: &Seed, k: usize, rep: Rep) -> KPrimeReport {
    let n = s.n();
    let g = mutation_shift(s, k);
    let f = seed_forms(s, rep);
    let fp = seed_forms(&s.mutate(k).expect("index in range"), rep);
    let mut mismatches = vec![];
    let mut check = |name: String, got: LinearForm, expected: LinearForm| {
        if got != expected {
            mismatches.push(ConjugationMismatch { identity: name, got: got.to_string(), expected: expected.to_string() });
        }
    };
    for (tag, fam, famp) in [("x", &f.x, &fp.x), ("xt", &f.xt, &fp.xt)] {
        for i in 0..n {
            let expected = if i == k { fam[k].neg() } else { fam[i].axpy(&int(pos(s.eps(i, k))), &fam[k]) };
            check(format!("{tag}'_{}", i + 1), g.conjugate(&famp[i]), expected);
        }
    }
    for i in 0..n {
        let expected = if i == k {
            (0..n).fold(f.b[k].neg(), |acc, j| acc.axpy(&int(pos(-s.eps(k, j))), &f.b[j]))
        } else {
            f.b[i].clone()
        };
        check(format!("b'_{}", i + 1), g.conjugate(&fp.b[i]), expected);
    }
    KPrimeReport { k, rep, holds: mismatches.is_empty(), mismatches }
}
