//! Normal-ordered truncated series `Σ c · B^α X^β` in a quantum torus.
//!
//! The grading is the total `X`-degree `Σ β_i`; `B` exponents are not
//! graded. A series with precision `p` is known modulo terms of degree
//! `≥ p`; `None` means exact.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::exact::rational::Rational;
use crate::exact::{QCoeff, QContext};

use super::context::{Gen, TorusContext};
use super::QuantumError;

/// Exponent key `[α_1..α_n, β_1..β_n]`.
pub type Key = Vec<i64>;

#[derive(Clone, Debug)]
pub struct QSeries {
    ctx: Arc<TorusContext>,
    terms: BTreeMap<Key, QCoeff>,
    prec: Option<i64>,
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl QSeries {
    pub fn zero(ctx: &Arc<TorusContext>) -> QSeries {
        QSeries { ctx: ctx.clone(), terms: BTreeMap::new(), prec: None }
    }

    pub fn constant(ctx: &Arc<TorusContext>, c: QCoeff) -> QSeries {
        let mut s = Self::zero(ctx);
        if !c.is_zero() {
            s.terms.insert(vec![0; 2 * ctx.n()], c);
        }
        s
    }

    pub fn one(ctx: &Arc<TorusContext>) -> QSeries {
        Self::constant(ctx, QCoeff::one(ctx.qctx()))
    }

    /// `c · B^b X^x`, already in normal order.
    pub fn monomial(ctx: &Arc<TorusContext>, c: QCoeff, b: &[i64], x: &[i64]) -> QSeries {
        let mut s = Self::zero(ctx);
        if !c.is_zero() {
            s.terms.insert(b.iter().chain(x).copied().collect(), c);
        }
        s
    }

    pub fn gen(ctx: &Arc<TorusContext>, g: Gen) -> QSeries {
        let n = ctx.n();
        let mut key = vec![0; 2 * n];
        match g {
            Gen::B(i) => key[i] = 1,
            Gen::X(i) => key[n + i] = 1,
        }
        let mut s = Self::zero(ctx);
        s.terms.insert(key, QCoeff::one(ctx.qctx()));
        s
    }

    pub fn ctx(&self) -> &Arc<TorusContext> {
        &self.ctx
    }

    pub fn qctx(&self) -> QContext {
        self.ctx.qctx()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &QCoeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    pub fn coeff(&self, key: &[i64]) -> Option<&QCoeff> {
        self.terms.get(key)
    }

    pub fn degree(&self, key: &[i64]) -> i64 {
        key[self.ctx.n()..].iter().sum()
    }

    /// Lowest total `X`-degree of a stored term.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().map(|k| self.degree(k)).min()
    }

    /// Valuation, counting an empty truncated series as `O(prec)`.
    fn val_eff(&self) -> Option<i64> {
        match (self.valuation(), self.prec) {
            (Some(v), _) => Some(v),
            (None, p) => p,
        }
    }

    /// Drops terms of degree `≥ p` and lowers the precision to `p`.
    pub fn truncate(mut self, p: i64) -> QSeries {
        self.prec = min_prec(self.prec, Some(p));
        let n = self.ctx.n();
        self.terms.retain(|k, _| k[n..].iter().sum::<i64>() < p);
        self
    }

    fn check(&self, o: &QSeries) -> Result<(), QuantumError> {
        if Arc::ptr_eq(&self.ctx, &o.ctx) || *self.ctx == *o.ctx {
            Ok(())
        } else {
            Err(QuantumError::ContextMismatch)
        }
    }

    fn insert_add(terms: &mut BTreeMap<Key, QCoeff>, k: Key, c: QCoeff) {
        use std::collections::btree_map::Entry;
        match terms.entry(k) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = &*e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &QSeries) -> QSeries {
        self.check(o).expect("context mismatch");
        let mut t = self.terms.clone();
        for (k, c) in &o.terms {
            Self::insert_add(&mut t, k.clone(), c.clone());
        }
        let s = QSeries { ctx: self.ctx.clone(), terms: t, prec: min_prec(self.prec, o.prec) };
        match s.prec {
            Some(p) => s.truncate(p),
            None => s,
        }
    }

    pub fn neg(&self) -> QSeries {
        QSeries { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(), prec: self.prec }
    }

    pub fn sub(&self, o: &QSeries) -> QSeries {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &QCoeff) -> QSeries {
        if c.is_zero() {
            return QSeries { ctx: self.ctx.clone(), terms: BTreeMap::new(), prec: self.prec };
        }
        QSeries { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(k, a)| (k.clone(), a * c)).collect(), prec: self.prec }
    }

    /// Product of two normal-ordered monomials: the key of the result and
    /// the exponent of `u` picked up while reordering.
    pub fn mono_mul(ctx: &TorusContext, a: &[i64], b: &[i64]) -> (Key, i64) {
        let n = ctx.n();
        let (beta, gamma, delta) = (&a[n..], &b[..n], &b[n..]);
        let mut e = 0;
        for i in 0..n {
            e += beta[i] * gamma[i] * ctx.mu(i);
            if beta[i] != 0 {
                for j in 0..i {
                    e += beta[i] * delta[j] * ctx.lam(i, j);
                }
            }
        }
        (a.iter().zip(b).map(|(x, y)| x + y).collect(), e)
    }

    pub fn mul(&self, o: &QSeries) -> QSeries {
        self.check(o).expect("context mismatch");
        let prec = match (self.val_eff(), o.val_eff()) {
            (Some(va), Some(vb)) => min_prec(self.prec.map(|p| p + vb), o.prec.map(|p| p + va)),
            // an exact zero factor
            _ => None,
        };
        let n = self.ctx.n();
        let mut t = BTreeMap::new();
        let odeg: Vec<(i64, &Key, &QCoeff)> = o.terms.iter().map(|(k, c)| (k[n..].iter().sum(), k, c)).collect();
        for (ka, ca) in &self.terms {
            let da: i64 = ka[n..].iter().sum();
            for &(db, kb, cb) in &odeg {
                if prec.is_some_and(|p| da + db >= p) {
                    continue;
                }
                let (k, e) = Self::mono_mul(&self.ctx, ka, kb);
                Self::insert_add(&mut t, k, (ca * cb).mul_u_pow(e));
            }
        }
        QSeries { ctx: self.ctx.clone(), terms: t, prec }
    }

    /// Inverse of a normal-ordered monomial `c·B^α X^β`.
    fn mono_inv(ctx: &Arc<TorusContext>, key: &[i64], c: &QCoeff) -> Result<QSeries, QuantumError> {
        let neg: Key = key.iter().map(|x| -x).collect();
        let (_, e) = Self::mono_mul(ctx, &neg, key);
        let ci = c.inv()?.mul_u_pow(-e);
        let mut s = Self::zero(ctx);
        s.terms.insert(neg, ci);
        Ok(s)
    }

    /// Multiplicative inverse. Writes `a = m(1 + r)` with `m` the lowest
    /// degree part, which must be one monomial; an exact input is expanded
    /// to precision `pw`.
    pub fn inv(&self, pw: i64) -> Result<QSeries, QuantumError> {
        let v = self.valuation().ok_or(QuantumError::Algebra(crate::exact::AlgebraError::DivisionByZero))?;
        let low: Vec<(&Key, &QCoeff)> = self.terms.iter().filter(|(k, _)| self.degree(k) == v).collect();
        if low.len() != 1 || self.prec.is_some_and(|p| p <= v) {
            let shown: Vec<String> = low.iter().map(|(k, c)| format_term(&self.ctx, k, c)).collect();
            return Err(QuantumError::NotInvertible(shown.join(" + ")));
        }
        let (mk, mc) = low[0];
        let m_inv = Self::mono_inv(&self.ctx, mk, mc)?;
        if self.terms.len() == 1 && self.prec.is_none() {
            return Ok(m_inv);
        }
        let pa = self.prec.unwrap_or(pw + 2 * v);
        let a = self.clone().truncate(pa);
        // r = m^{-1} a - 1, of precision pa - v and valuation >= 1
        let r = m_inv.mul(&a).sub(&Self::one(&self.ctx));
        let big_p = pa - v;
        let one = Self::one(&self.ctx);
        let mut s = one.clone().truncate(big_p);
        for _ in 0..big_p.max(0) {
            s = one.sub(&r.mul(&s)).truncate(big_p);
        }
        Ok(s.mul(&m_inv))
    }

    pub fn pow(&self, e: i64, pw: i64) -> Result<QSeries, QuantumError> {
        let base = if e < 0 { self.inv(pw)? } else { self.clone() };
        let mut acc = Self::one(&self.ctx);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Agreement of all terms of degree `< p`.
    pub fn agrees_below(&self, o: &QSeries, p: i64) -> bool {
        let a = self.clone().truncate(p);
        let b = o.clone().truncate(p);
        a.terms == b.terms
    }

    /// Coefficients evaluated at `u = 1`, moved into `target`.
    pub fn at_q_one(&self, target: &Arc<TorusContext>) -> Result<QSeries, QuantumError> {
        let mut t = BTreeMap::new();
        for (k, c) in &self.terms {
            let r: Rational = c.eval_at_one()?;
            let c1 = QCoeff::from_rational(&r, target.qctx());
            if !c1.is_zero() {
                t.insert(k.clone(), c1);
            }
        }
        Ok(QSeries { ctx: target.clone(), terms: t, prec: self.prec })
    }

    /// The `*`-image: factors reversed, `u ↦ u^{-1}`, generators fixed.
    pub fn star(&self) -> QSeries {
        let n = self.ctx.n();
        let mut out = Self::zero(&self.ctx);
        out.prec = self.prec;
        for (k, c) in &self.terms {
            // B_1^{α_1}..B_n^{α_n} X_1^{β_1}..X_n^{β_n} reversed
            let mut m = Self::one(&self.ctx);
            for i in (0..n).rev() {
                let mut key = vec![0; 2 * n];
                key[n + i] = k[n + i];
                m = m.mul(&Self::monomial(&self.ctx, QCoeff::one(self.qctx()), &key[..n], &key[n..]));
            }
            for i in (0..n).rev() {
                let mut key = vec![0; 2 * n];
                key[i] = k[i];
                m = m.mul(&Self::monomial(&self.ctx, QCoeff::one(self.qctx()), &key[..n], &key[n..]));
            }
            out = out.add(&m.scale(&c.bar()));
        }
        out
    }

    /// The single term of a one-term series.
    pub fn as_monomial(&self) -> Option<(&Key, &QCoeff)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }
}

/// Normal-ordered product in the torus of `a` and `b`.
pub fn qtorus_mul(a: &QSeries, b: &QSeries) -> Result<QSeries, QuantumError> {
    a.check(b)?;
    Ok(a.mul(b))
}

fn format_term(ctx: &TorusContext, k: &[i64], c: &QCoeff) -> String {
    let n = ctx.n();
    let mut parts = vec![];
    for (i, &e) in k.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = if i < n { format!("B{}", i + 1) } else { format!("X{}", i - n + 1) };
        parts.push(if e == 1 { name } else { format!("{name}^{e}") });
    }
    let cs = c.to_string();
    if parts.is_empty() {
        return cs;
    }
    let mono = parts.join("*");
    if c.is_one() {
        mono
    } else if cs.chars().all(|ch| ch.is_alphanumeric() || ch == '^') {
        format!("{cs}*{mono}")
    } else {
        format!("({cs})*{mono}")
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&Key> = self.terms.keys().collect();
        keys.sort_by_key(|k| (self.degree(k), (*k).clone()));
        let parts: Vec<String> = keys.iter().map(|k| format_term(&self.ctx, k, &self.terms[*k])).collect();
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        match self.prec {
            Some(p) => write!(f, "{body} + O({p})"),
            None => write!(f, "{body}"),
        }
    }
}

impl PartialEq for QSeries {
    fn eq(&self, o: &QSeries) -> bool {
        self.terms == o.terms && self.prec == o.prec
    }
}
