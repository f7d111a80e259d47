//! Rational functions in named commuting indeterminates.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::mpoly::{fmt_mpoly, MPoly, Mono};
use super::rational::Rational;
use super::AlgebraError;

#[derive(Clone, Debug)]
pub struct RatExpr {
    num: MPoly,
    den: MPoly,
    vars: Arc<Vec<String>>,
}

/// Variable names shared by a family of expressions.
pub fn var_set(names: &[&str]) -> Arc<Vec<String>> {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

/// Reduces to lowest terms with a monic denominator. Idempotent.
pub fn ratexpr_simplify(e: &RatExpr) -> RatExpr {
    let mut r = e.clone();
    r.reduce();
    r
}

impl RatExpr {
    pub fn new(num: MPoly, den: MPoly, vars: Arc<Vec<String>>) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut r = RatExpr { num, den, vars };
        r.reduce();
        Ok(r)
    }

    pub fn from_poly(p: MPoly, vars: Arc<Vec<String>>) -> Self {
        let n = p.nvars();
        RatExpr { num: p, den: MPoly::one(n), vars }
    }

    pub fn zero(vars: Arc<Vec<String>>) -> Self {
        let n = vars.len();
        RatExpr { num: MPoly::zero(n), den: MPoly::one(n), vars }
    }

    pub fn one(vars: Arc<Vec<String>>) -> Self {
        Self::constant(Rational::one(), vars)
    }

    pub fn constant(c: Rational, vars: Arc<Vec<String>>) -> Self {
        let n = vars.len();
        RatExpr { num: MPoly::constant(n, c), den: MPoly::one(n), vars }
    }

    pub fn var(i: usize, vars: Arc<Vec<String>>) -> Self {
        let n = vars.len();
        RatExpr { num: MPoly::var(n, i), den: MPoly::one(n), vars }
    }

    /// Monomial `∏ x_i^{e_i}` with signed exponents.
    pub fn monomial(exps: &[i64], vars: Arc<Vec<String>>) -> Self {
        let n = vars.len();
        let up = Mono(exps.iter().map(|&e| e.max(0) as u32).collect());
        let down = Mono(exps.iter().map(|&e| (-e).max(0) as u32).collect());
        RatExpr {
            num: MPoly::term(Rational::one(), up),
            den: MPoly::term(Rational::one(), down),
            vars,
        }
        .with_nvars(n)
    }

    fn with_nvars(self, n: usize) -> Self {
        debug_assert_eq!(self.num.nvars(), n);
        self
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = MPoly::one(self.num.nvars());
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num = self.num.div_exact(&g).expect("gcd divides");
            self.den = self.den.div_exact(&g).expect("gcd divides");
        }
        let (_, lc) = self.den.lead().expect("nonzero denominator");
        if !lc.is_one() {
            let inv = lc.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatExpr) -> RatExpr {
        if self.den == o.den {
            let mut r = RatExpr { num: self.num.add(&o.num), den: self.den.clone(), vars: self.vars.clone() };
            r.reduce();
            return r;
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        let den = self.den.mul(&o.den);
        let mut r = RatExpr { num, den, vars: self.vars.clone() };
        r.reduce();
        r
    }

    pub fn neg(&self) -> RatExpr {
        RatExpr { num: self.num.neg(), den: self.den.clone(), vars: self.vars.clone() }
    }

    pub fn sub(&self, o: &RatExpr) -> RatExpr {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatExpr) -> RatExpr {
        if self.is_zero() || o.is_zero() {
            return RatExpr::zero(self.vars.clone());
        }
        // cancel crosswise first; both inputs are already reduced
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = o.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let mut r = RatExpr { num: n1.mul(&n2), den: d1.mul(&d2), vars: self.vars.clone() };
        let (_, lc) = r.den.lead().unwrap();
        if !lc.is_one() {
            let inv = lc.recip();
            r.num = r.num.scale(&inv);
            r.den = r.den.scale(&inv);
        }
        r
    }

    pub fn inv(&self) -> Result<RatExpr, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        RatExpr::new(self.den.clone(), self.num.clone(), self.vars.clone())
    }

    pub fn div(&self, o: &RatExpr) -> Result<RatExpr, AlgebraError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<RatExpr, AlgebraError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        // numerator and denominator are coprime, so powers stay reduced
        Ok(RatExpr { num: base.num.pow(e), den: base.den.pow(e), vars: self.vars.clone() })
    }

    pub fn scale(&self, c: &Rational) -> RatExpr {
        let mut r = RatExpr { num: self.num.scale(c), den: self.den.clone(), vars: self.vars.clone() };
        if r.num.is_zero() {
            r.den = MPoly::one(r.num.nvars());
        }
        r
    }

    /// Formal partial derivative in variable `v`.
    pub fn derivative(&self, v: usize) -> RatExpr {
        let num = self.num.derivative(v).mul(&self.den).sub(&self.num.mul(&self.den.derivative(v)));
        let den = self.den.mul(&self.den);
        RatExpr::new(num, den, self.vars.clone()).expect("nonzero")
    }

    pub fn eval(&self, x: &[Rational]) -> Result<Rational, AlgebraError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// Denominator is a single term.
    pub fn has_monomial_denominator(&self) -> bool {
        self.den.is_monomial()
    }

    /// Every coefficient of numerator and denominator is positive.
    pub fn is_subtraction_free(&self) -> bool {
        use num_traits::Signed;
        self.num.terms().all(|(_, c)| c.is_positive()) && self.den.terms().all(|(_, c)| c.is_positive())
    }
}

/// Equality by cross-multiplication.
impl PartialEq for RatExpr {
    fn eq(&self, o: &RatExpr) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl fmt::Display for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = fmt_mpoly(&self.num, &self.vars);
        if self.den.is_one() {
            write!(f, "{n}")
        } else {
            write!(f, "({n})/({})", fmt_mpoly(&self.den, &self.vars))
        }
    }
}

impl RatExpr {
    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn const_value(&self) -> Option<Rational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.constant_term() / self.den.constant_term())
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn vs() -> Arc<Vec<String>> {
        var_set(&["X1", "X2"])
    }

    #[test]
    fn simplify_cancels_common_factor() {
        let v = vs();
        let x1 = RatExpr::var(0, v.clone());
        let x2 = RatExpr::var(1, v.clone());
        let e = x1.mul(&x2).add(&x2).div(&x2).unwrap();
        assert_eq!(e, x1.add(&RatExpr::one(v.clone())));
        assert!(e.denom().is_one());
    }

    #[test]
    fn a_mutation_twice_returns() {
        let v = var_set(&["A1", "A2"]);
        let a1 = RatExpr::var(0, v.clone());
        let a2 = RatExpr::var(1, v.clone());
        let one = RatExpr::one(v.clone());
        let a1p = a2.add(&one).div(&a1).unwrap();
        let back = a2.add(&one).div(&a1p).unwrap();
        assert_eq!(back.numer(), a1.numer());
        assert!(back.denom().is_one());
    }

    #[test]
    fn zero_over_anything() {
        let v = vs();
        let e = RatExpr::zero(v.clone()).div(&RatExpr::var(0, v.clone()).add(&RatExpr::one(v))).unwrap();
        assert!(e.is_zero());
        assert!(e.denom().is_one());
    }

    #[test]
    fn simplify_is_idempotent() {
        let v = vs();
        let x1 = RatExpr::var(0, v.clone());
        let e = x1.scale(&int(3)).div(&x1.scale(&int(6)).add(&RatExpr::one(v))).unwrap();
        let once = ratexpr_simplify(&e);
        let twice = ratexpr_simplify(&once);
        assert_eq!(once.numer(), twice.numer());
        assert_eq!(once.denom(), twice.denom());
    }
}
