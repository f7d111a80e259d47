//! Exact rational functions in a formal root `u` of the quantum parameter.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use super::upoly::UPoly;
use super::AlgebraError;

/// Which formal parameter `u` is a root of, and of what order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QContext {
    /// `u = q^(1/root)`.
    pub root: u32,
    /// `true` when the parameter is the dual `q^∨`.
    pub dual: bool,
}

impl QContext {
    pub fn new(root: u32) -> Self {
        assert!(root > 0, "root order must be positive");
        QContext { root, dual: false }
    }

    pub fn dual(root: u32) -> Self {
        QContext { root, dual: true }
    }
}

/// `num/den` in lowest terms, `den` primitive with positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QCoeff {
    num: UPoly,
    den: UPoly,
    ctx: QContext,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic entry point.
pub fn qcoeff_arith(a: &QCoeff, b: &QCoeff, op: QOp) -> Result<QCoeff, AlgebraError> {
    if a.ctx != b.ctx {
        return Err(AlgebraError::ContextMismatch(format!("{:?} vs {:?}", a.ctx, b.ctx)));
    }
    Ok(match op {
        QOp::Add => a.add_ref(b),
        QOp::Sub => a.add_ref(&b.neg_ref()),
        QOp::Mul => a.mul_ref(b),
        QOp::Div => a.mul_ref(&b.inv()?),
    })
}

impl QCoeff {
    pub fn zero(ctx: QContext) -> Self {
        QCoeff { num: UPoly::zero(), den: UPoly::one(), ctx }
    }

    pub fn one(ctx: QContext) -> Self {
        Self::from_int(1, ctx)
    }

    pub fn from_int(n: i64, ctx: QContext) -> Self {
        QCoeff { num: UPoly::constant(BigInt::from(n)), den: UPoly::one(), ctx }
    }

    pub fn from_rational(r: &Rational, ctx: QContext) -> Self {
        Self::from_parts(UPoly::constant(r.numer().clone()), UPoly::constant(r.denom().clone()), ctx)
            .expect("nonzero denominator")
    }

    /// `u^k`, any integer `k`.
    pub fn u_pow(k: i64, ctx: QContext) -> Self {
        if k >= 0 {
            QCoeff { num: UPoly::monomial(BigInt::one(), k as usize), den: UPoly::one(), ctx }
        } else {
            QCoeff { num: UPoly::one(), den: UPoly::monomial(BigInt::one(), (-k) as usize), ctx }
        }
    }

    /// `q^(a/b)`; requires `root·a/b` to be an integer.
    pub fn q_pow(a: i64, b: i64, ctx: QContext) -> Result<Self, AlgebraError> {
        let e = a * ctx.root as i64;
        if e % b != 0 {
            return Err(AlgebraError::NotRepresentable(format!(
                "q^({a}/{b}) with u = q^(1/{})",
                ctx.root
            )));
        }
        Ok(Self::u_pow(e / b, ctx))
    }

    pub fn from_parts(num: UPoly, den: UPoly, ctx: QContext) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut c = QCoeff { num, den, ctx };
        c.canonicalize();
        Ok(c)
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.den = UPoly::one();
            return;
        }
        if !self.den.is_one() {
            let g = self.num.gcd(&self.den);
            if !g.is_one() {
                self.num = self.num.div_exact(&g).expect("gcd divides numerator");
                self.den = self.den.div_exact(&g).expect("gcd divides denominator");
            }
            if self.den.lc().is_negative() {
                self.num = -std::mem::take(&mut self.num);
                self.den = -std::mem::take(&mut self.den);
            }
        }
    }

    pub fn ctx(&self) -> QContext {
        self.ctx
    }

    pub fn numer(&self) -> &UPoly {
        &self.num
    }

    pub fn denom(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `±u^k` for some integer `k`, with its sign and exponent.
    pub fn as_signed_power(&self) -> Option<(i64, i64)> {
        if !self.num.is_monomial() || !self.den.is_monomial() {
            return None;
        }
        let (a, b) = (self.num.lc(), self.den.lc());
        if !b.is_one() || !a.abs().is_one() {
            return None;
        }
        let e = self.num.valuation()? as i64 - self.den.valuation()? as i64;
        Some((if a.is_negative() { -1 } else { 1 }, e))
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        QCoeff::from_parts(self.den.clone(), self.num.clone(), self.ctx)
    }

    fn check(&self, o: &QCoeff) {
        assert_eq!(self.ctx, o.ctx, "QCoeff context mismatch");
    }

    fn add_ref(&self, o: &QCoeff) -> QCoeff {
        self.check(o);
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            let mut c = QCoeff { num: &self.num + &o.num, den: self.den.clone(), ctx: self.ctx };
            c.canonicalize();
            return c;
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        let den = &self.den * &o.den;
        let mut c = QCoeff { num, den, ctx: self.ctx };
        c.canonicalize();
        c
    }

    fn mul_ref(&self, o: &QCoeff) -> QCoeff {
        self.check(o);
        if self.is_zero() || o.is_zero() {
            return QCoeff::zero(self.ctx);
        }
        if self.den.is_one() && o.den.is_one() {
            return QCoeff { num: &self.num * &o.num, den: UPoly::one(), ctx: self.ctx };
        }
        // cross-cancel before multiplying to keep degrees small
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = o.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let mut c = QCoeff { num: &n1 * &n2, den: &d1 * &d2, ctx: self.ctx };
        if c.den.lc().is_negative() {
            c.num = -c.num;
            c.den = -c.den;
        }
        c
    }

    fn neg_ref(&self) -> QCoeff {
        QCoeff { num: -self.num.clone(), den: self.den.clone(), ctx: self.ctx }
    }

    pub fn pow(&self, e: i64) -> Result<QCoeff, AlgebraError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = QCoeff::one(self.ctx);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul_ref(&base);
        }
        Ok(acc)
    }

    /// `self · u^k` without a gcd computation.
    pub fn mul_u_pow(&self, k: i64) -> QCoeff {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let (mut num, mut den) = (self.num.clone(), self.den.clone());
        if k > 0 {
            let c = (den.valuation().unwrap_or(0) as i64).min(k);
            den = den.shift_down(c as usize);
            num = num.shift_up((k - c) as usize);
        } else {
            let c = (num.valuation().unwrap_or(0) as i64).min(-k);
            num = num.shift_down(c as usize);
            den = den.shift_up((-k - c) as usize);
        }
        QCoeff { num, den, ctx: self.ctx }
    }

    /// Substitutes `u -> u^k` within the same context.
    pub fn inflate(&self, k: usize) -> QCoeff {
        QCoeff { num: self.num.inflate(k), den: self.den.inflate(k), ctx: self.ctx }
    }

    /// Value at `u = 1`.
    pub fn eval_at_one(&self) -> Result<Rational, AlgebraError> {
        let one = BigInt::one();
        let d = self.den.eval(&one);
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Rational::new(self.num.eval(&one), d))
    }

    /// The `*`-image: `u -> u^{-1}`.
    pub fn bar(&self) -> QCoeff {
        let flip = |p: &UPoly| -> (UPoly, usize) {
            let d = p.degree().unwrap_or(0);
            let mut c = p.coeffs().to_vec();
            c.reverse();
            (UPoly::from_coeffs(c), d)
        };
        // p(1/u) = rev(p)(u) / u^deg p
        let (rn, dn) = flip(&self.num);
        let (rd, dd) = flip(&self.den);
        let (num, den) = if dn >= dd {
            (rn, rd.shift_up(dn - dd))
        } else {
            (rn.shift_up(dd - dn), rd)
        };
        QCoeff::from_parts(num, den, self.ctx).expect("nonzero")
    }

    /// Numeric value at a complex `u`.
    pub fn eval_complex(&self, u: num_complex::Complex64) -> num_complex::Complex64 {
        use num_traits::ToPrimitive;
        let ev = |p: &UPoly| {
            let mut acc = num_complex::Complex64::new(0.0, 0.0);
            for a in p.coeffs().iter().rev() {
                acc = acc * u + a.to_f64().unwrap_or(f64::NAN);
            }
            acc
        };
        ev(&self.num) / ev(&self.den)
    }
}

impl Add for QCoeff {
    type Output = QCoeff;
    fn add(self, rhs: QCoeff) -> QCoeff {
        self.add_ref(&rhs)
    }
}

impl Add<&QCoeff> for &QCoeff {
    type Output = QCoeff;
    fn add(self, rhs: &QCoeff) -> QCoeff {
        self.add_ref(rhs)
    }
}

impl Sub for QCoeff {
    type Output = QCoeff;
    fn sub(self, rhs: QCoeff) -> QCoeff {
        self.add_ref(&rhs.neg_ref())
    }
}

impl Sub<&QCoeff> for &QCoeff {
    type Output = QCoeff;
    fn sub(self, rhs: &QCoeff) -> QCoeff {
        self.add_ref(&rhs.neg_ref())
    }
}

impl Mul for QCoeff {
    type Output = QCoeff;
    fn mul(self, rhs: QCoeff) -> QCoeff {
        self.mul_ref(&rhs)
    }
}

impl Mul<&QCoeff> for &QCoeff {
    type Output = QCoeff;
    fn mul(self, rhs: &QCoeff) -> QCoeff {
        self.mul_ref(rhs)
    }
}

/// Panics on division by zero; use [`qcoeff_arith`] for a checked form.
impl Div for QCoeff {
    type Output = QCoeff;
    fn div(self, rhs: QCoeff) -> QCoeff {
        self.mul_ref(&rhs.inv().expect("division by zero QCoeff"))
    }
}

impl Div<&QCoeff> for &QCoeff {
    type Output = QCoeff;
    fn div(self, rhs: &QCoeff) -> QCoeff {
        self.mul_ref(&rhs.inv().expect("division by zero QCoeff"))
    }
}

impl Neg for QCoeff {
    type Output = QCoeff;
    fn neg(self) -> QCoeff {
        self.neg_ref()
    }
}

impl Neg for &QCoeff {
    type Output = QCoeff;
    fn neg(self) -> QCoeff {
        self.neg_ref()
    }
}

impl fmt::Display for QCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = if self.ctx.dual { "v" } else { "u" };
        let n = self.num.to_string().replace('u', var);
        if self.den.is_one() {
            write!(f, "{n}")
        } else {
            let d = self.den.to_string().replace('u', var);
            write!(f, "({n})/({d})")
        }
    }
}
