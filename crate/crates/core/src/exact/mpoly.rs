//! Sparse multivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rat, Rational};

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn meet(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| *a.min(b)).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Mono, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(c, Mono::one(nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Rational::one(), Mono::var(nvars, i))
    }

    pub fn term(c: Rational, m: Mono) -> Self {
        let nvars = m.0.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().degree() == 0)
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Mono::one(self.nvars)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term in the total-degree-then-lex order.
    pub fn lead(&self) -> Option<(&Mono, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    pub fn has_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.0[v] > 0)
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_mono(&self) -> Mono {
        let mut it = self.terms.keys();
        match it.next() {
            None => Mono::one(self.nvars),
            Some(first) => it.fold(first.clone(), |acc, m| acc.meet(m)),
        }
    }

    fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c.clone());
        }
        r
    }

    pub fn neg(&self) -> MPoly {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, a: &Rational) -> MPoly {
        if a.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * a)).collect() }
    }

    pub fn mul_term(&self, m: &Mono, a: &Rational) -> MPoly {
        if a.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(k, c)| (k.mul(m), c * a)).collect() }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, v: usize) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[v] -= 1;
                r.add_term(m2, c * Rational::from_integer(e.into()));
            }
        }
        r
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= xi;
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (dm, dc) = d.lead()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut r = self.clone();
        let mut q = MPoly::zero(self.nvars);
        while let Some((rm, rc)) = r.lead() {
            if !dm.divides(rm) {
                return None;
            }
            let m = rm.div(&dm);
            let c = rc / &dc;
            r = r.sub(&d.mul_term(&m, &c));
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        match self.lead() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    fn divide_mono(&self, m: &Mono) -> MPoly {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(k, c)| (k.div(m), c.clone())).collect() }
    }

    /// Coefficients as a polynomial in `v`: index = degree in `v`.
    fn split(&self, v: usize) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(self.nvars); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2.0[v] as usize;
            m2.0[v] = 0;
            out[e].add_term(m2, c.clone());
        }
        out
    }

    fn join(parts: &[MPoly], v: usize, nvars: usize) -> MPoly {
        let mut r = MPoly::zero(nvars);
        for (e, p) in parts.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut m2 = m.clone();
                m2.0[v] += e as u32;
                r.add_term(m2, c.clone());
            }
        }
        r
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &MPoly) -> MPoly {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        let ma = self.min_mono();
        let mb = o.min_mono();
        let mg = ma.meet(&mb);
        let a = self.divide_mono(&ma);
        let b = o.divide_mono(&mb);
        let g = gcd_nomono(&a, &b);
        g.mul_term(&mg, &Rational::one()).monic()
    }
}

/// Gcd of polynomials that have no monomial factor.
fn gcd_nomono(a: &MPoly, b: &MPoly) -> MPoly {
    let n = a.nvars;
    if a.is_constant() || b.is_constant() {
        return MPoly::one(n);
    }
    if a.len() >= b.len() {
        if a.div_exact(b).is_some() {
            return b.monic();
        }
    } else if b.div_exact(a).is_some() {
        return a.monic();
    }
    let v = (0..n).find(|&v| a.has_var(v) || b.has_var(v)).unwrap();
    match (a.has_var(v), b.has_var(v)) {
        (true, false) => {
            let ca = content_in(a, v);
            gcd_any(&ca, b)
        }
        (false, true) => {
            let cb = content_in(b, v);
            gcd_any(a, &cb)
        }
        _ => {
            let ca = content_in(a, v);
            let cb = content_in(b, v);
            let c = gcd_any(&ca, &cb);
            let pa = a.div_exact(&ca).unwrap();
            let pb = b.div_exact(&cb).unwrap();
            let g = prs(pa, pb, v);
            c.mul(&g).monic()
        }
    }
}

fn gcd_any(a: &MPoly, b: &MPoly) -> MPoly {
    a.gcd(b)
}

/// Content with respect to `v`: gcd of the coefficients in the other variables.
fn content_in(a: &MPoly, v: usize) -> MPoly {
    let mut g = MPoly::zero(a.nvars);
    for c in a.split(v) {
        if c.is_zero() {
            continue;
        }
        g = g.gcd(&c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_in(a: &MPoly, v: usize) -> MPoly {
    if a.is_zero() {
        return a.clone();
    }
    let c = content_in(a, v);
    a.div_exact(&c).unwrap()
}

/// Primitive polynomial remainder sequence in `v`.
fn prs(a: MPoly, b: MPoly, v: usize) -> MPoly {
    let n = a.nvars;
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    while !b.is_zero() {
        if b.degree_in(v) == 0 {
            return MPoly::one(n);
        }
        let r = pseudo_rem(&a, &b, v);
        a = b;
        b = primitive_in(&r, v);
    }
    primitive_in(&a, v).monic()
}

fn pseudo_rem(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let n = a.nvars;
    let bs = b.split(v);
    let db = bs.len() - 1;
    let lb = bs[db].clone();
    let mut r = a.split(v);
    while r.len() > db && r.len() > 0 {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        for x in r.iter_mut() {
            *x = x.mul(&lb);
        }
        for (i, bc) in bs.iter().enumerate() {
            let t = bc.mul(&lr);
            r[dr - db + i] = r[dr - db + i].sub(&t);
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
    }
    MPoly::join(&r, v, n)
}

/// Formats with the given variable names.
pub fn fmt_mpoly(p: &MPoly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(names[i].clone()),
                _ => factors.push(format!("{}^{}", names[i], e)),
            }
        }
        if factors.is_empty() {
            out.push_str(&fmt_rat(&mag));
        } else {
            if !mag.is_one() {
                out.push_str(&fmt_rat(&mag));
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{}", i + 1)).collect();
        write!(f, "{}", fmt_mpoly(self, &names))
    }
}
