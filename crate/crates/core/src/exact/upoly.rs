//! Dense univariate polynomials over the integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficients stored low degree first; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    c: Vec<BigInt>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(a: BigInt) -> Self {
        Self::from_coeffs(vec![a])
    }

    /// `a·u^k`.
    pub fn monomial(a: BigInt, k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = a;
        Self::from_coeffs(c)
    }

    pub fn from_coeffs(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_else(BigInt::zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    /// Single nonzero term.
    pub fn is_monomial(&self) -> bool {
        self.c.iter().filter(|x| !x.is_zero()).count() == 1
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for a in &self.c {
            g = g.gcd(a);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, a: &BigInt) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        UPoly { c: self.c.iter().map(|x| x * a).collect() }
    }

    /// Exact division of every coefficient by `a`.
    pub fn div_scalar(&self, a: &BigInt) -> Self {
        UPoly { c: self.c.iter().map(|x| x / a).collect() }
    }

    /// Multiplies by `u^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.c.iter().cloned());
        UPoly { c }
    }

    /// Divides by `u^k`; caller guarantees divisibility.
    pub fn shift_down(&self, k: usize) -> Self {
        UPoly { c: self.c[k.min(self.c.len())..].to_vec() }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        self.div_scalar(&g)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    /// Substitutes `u -> u^k`.
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); (self.c.len() - 1) * k + 1];
        for (i, a) in self.c.iter().enumerate() {
            c[i * k] = a.clone();
        }
        UPoly { c }
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a mod b`.
    pub fn pseudo_rem(&self, b: &UPoly) -> UPoly {
        let db = b.degree().expect("pseudo_rem by zero");
        let lb = b.lc();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lc();
            let t = b.shift_up(dr - db).scale(&lr);
            r = r.scale(&lb) - t;
        }
        r
    }

    /// Exact quotient over the integers, `None` if `b` does not divide `self`.
    pub fn div_exact(&self, b: &UPoly) -> Option<UPoly> {
        let db = b.degree()?;
        let lb = b.lc();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.c.len().saturating_sub(db).max(1)];
        while let Some(dr) = r.degree() {
            if dr < db {
                return None;
            }
            let (qc, rem) = r.lc().div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            r = r - b.shift_up(dr - db).scale(&qc);
            q[dr - db] = qc;
        }
        Some(UPoly::from_coeffs(q))
    }

    /// Gcd in Z[u], normalised to positive leading coefficient.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        if self.is_zero() {
            return other.normalized_sign();
        }
        if other.is_zero() {
            return self.normalized_sign();
        }
        let v = self.valuation().unwrap().min(other.valuation().unwrap());
        let a = self.shift_down(self.valuation().unwrap());
        let b = other.shift_down(other.valuation().unwrap());
        let cont = a.content().gcd(&b.content());
        let mut a = a.primitive();
        let mut b = b.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                a = UPoly::one();
                break;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().scale(&cont).shift_up(v)
    }

    fn normalized_sign(&self) -> UPoly {
        if self.lc().is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Add for UPoly {
    type Output = UPoly;
    fn add(self, rhs: UPoly) -> UPoly {
        &self + &rhs
    }
}

impl Add<&UPoly> for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.c.len().max(rhs.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.c.get(i);
            let b = rhs.c.get(i);
            c.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UPoly::from_coeffs(c)
    }
}

impl Sub for UPoly {
    type Output = UPoly;
    fn sub(self, rhs: UPoly) -> UPoly {
        &self + &(-rhs)
    }
}

impl Sub<&UPoly> for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        self + &(-rhs.clone())
    }
}

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly { c: self.c.into_iter().map(|x| -x).collect() }
    }
}

impl Mul for UPoly {
    type Output = UPoly;
    fn mul(self, rhs: UPoly) -> UPoly {
        &self * &rhs
    }
}

impl Mul<&UPoly> for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        UPoly::from_coeffs(c)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "u")?,
                (1, false) => write!(f, "{mag}*u")?,
                (_, true) => write!(f, "u^{k}")?,
                (_, false) => write!(f, "{mag}*u^{k}")?,
            }
        }
        Ok(())
    }
}
