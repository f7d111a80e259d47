//! Classical cluster variables of kinds A, X and D as exact rational
//! functions of the initial variables, and the Poisson brackets on the
//! X and D tori.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::exact::rational::{pos, rat, sgn, Rational};
use crate::exact::{var_set, RatExpr};
use crate::seed::{Seed, SeedError, Step};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    A,
    X,
    D,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::A, Kind::X, Kind::D];
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::A => "A",
            Kind::X => "X",
            Kind::D => "D",
        })
    }
}

impl FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Kind, String> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Kind::A),
            "X" => Ok(Kind::X),
            "D" => Ok(Kind::D),
            _ => Err(format!("unknown kind {s:?} (expected A, X or D)")),
        }
    }
}

/// Current cluster variables, expressed in the initial ones, together with
/// the current seed.
///
/// For kinds A and X, `main` holds `A_i` or `X_i`. For kind D, `main` holds
/// `X_i` and `b` holds `B_i`; the initial variables are ordered
/// `B_1..B_n, X_1..X_n`.
#[derive(Clone, Debug)]
pub struct ClassicalVars {
    pub kind: Kind,
    pub seed: Seed,
    pub main: Vec<RatExpr>,
    pub b: Vec<RatExpr>,
}

impl ClassicalVars {
    pub fn initial(kind: Kind, seed: &Seed) -> ClassicalVars {
        let n = seed.n();
        let (names, off): (Vec<String>, usize) = match kind {
            Kind::A => ((1..=n).map(|i| format!("A{i}")).collect(), 0),
            Kind::X => ((1..=n).map(|i| format!("X{i}")).collect(), 0),
            Kind::D => ((1..=n).map(|i| format!("B{i}")).chain((1..=n).map(|i| format!("X{i}"))).collect(), n),
        };
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let vs = var_set(&refs);
        let main = (0..n).map(|i| RatExpr::var(off + i, vs.clone())).collect();
        let b = if kind == Kind::D { (0..n).map(|i| RatExpr::var(i, vs.clone())).collect() } else { vec![] };
        ClassicalVars { kind, seed: seed.clone(), main, b }
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        self.main[0].vars()
    }

    fn one(&self) -> RatExpr {
        RatExpr::one(self.vars().clone())
    }

    /// `X̃_i = X_i ∏_j B_j^{ε_ij}` (kind D only).
    pub fn x_tilde(&self, i: usize) -> RatExpr {
        assert_eq!(self.kind, Kind::D);
        (0..self.seed.n()).fold(self.main[i].clone(), |acc, j| acc.mul(&self.b[j].pow(self.seed.eps(i, j)).unwrap()))
    }

    /// Every variable paired with its display name in the current seed.
    pub fn named(&self) -> Vec<(String, &RatExpr)> {
        let p = if self.kind == Kind::A { "A" } else { "X" };
        let mut v: Vec<(String, &RatExpr)> = self.main.iter().enumerate().map(|(i, e)| (format!("{p}{}", i + 1), e)).collect();
        v.extend(self.b.iter().enumerate().map(|(i, e)| (format!("B{}", i + 1), e)));
        v
    }
}

fn prod_pow(vars: &[RatExpr], exps: impl Iterator<Item = (usize, i64)>, one: RatExpr) -> RatExpr {
    exps.filter(|&(_, e)| e != 0).fold(one, |acc, (j, e)| acc.mul(&vars[j].pow(e).unwrap()))
}

/// Mutation at `k` (0-based); the seed advances by matrix mutation.
pub fn mutate_classical(v: &ClassicalVars, k: usize) -> Result<ClassicalVars, SeedError> {
    let s = &v.seed;
    let n = s.n();
    let new_seed = s.mutate(k)?;
    let one = v.one();
    let mut out = v.clone();
    out.seed = new_seed;
    match v.kind {
        Kind::A => {
            let plus = prod_pow(&v.main, (0..n).map(|j| (j, pos(s.eps(k, j)))), one.clone());
            let minus = prod_pow(&v.main, (0..n).map(|j| (j, pos(-s.eps(k, j)))), one.clone());
            out.main[k] = plus.add(&minus).div(&v.main[k]).expect("nonzero cluster variable");
        }
        Kind::X | Kind::D => {
            let xk = &v.main[k];
            for i in 0..n {
                let e = s.eps(i, k);
                out.main[i] = if i == k {
                    xk.inv().unwrap()
                } else if e == 0 {
                    v.main[i].clone()
                } else {
                    let base = one.add(&xk.pow(sgn(-e)).unwrap());
                    v.main[i].mul(&base.pow(-e).unwrap())
                };
            }
            if v.kind == Kind::D {
                let bminus = prod_pow(&v.b, (0..n).map(|j| (j, pos(-s.eps(k, j)))), one.clone());
                let bplus = prod_pow(&v.b, (0..n).map(|j| (j, pos(s.eps(k, j)))), one.clone());
                let num = bminus.add(&xk.mul(&bplus));
                let den = v.b[k].mul(&one.add(xk));
                out.b[k] = num.div(&den).unwrap();
            }
        }
    }
    Ok(out)
}

/// `A′_{σ(i)} = A_i` (likewise for every kind).
pub fn permute_classical(v: &ClassicalVars, sigma: &[usize]) -> Result<ClassicalVars, SeedError> {
    let seed = v.seed.permute(sigma)?;
    let mut out = v.clone();
    out.seed = seed;
    for (i, &si) in sigma.iter().enumerate() {
        out.main[si] = v.main[i].clone();
        if v.kind == Kind::D {
            out.b[si] = v.b[i].clone();
        }
    }
    Ok(out)
}

pub fn apply_step(v: &ClassicalVars, step: &Step) -> Result<ClassicalVars, SeedError> {
    match step {
        Step::Mu(k) => mutate_classical(v, *k),
        Step::Perm(s) => permute_classical(v, s),
    }
}

/// Steps applied left to right to a base seed.
pub type TransformationWord = Vec<Step>;

pub fn parse_word(json: &str) -> Result<TransformationWord, SeedError> {
    serde_json::from_str(json).map_err(|e| SeedError::Json(e.to_string()))
}

pub fn apply_word(v: &ClassicalVars, w: &[Step]) -> Result<ClassicalVars, SeedError> {
    w.iter().try_fold(v.clone(), |acc, st| apply_step(&acc, st))
}

#[derive(Clone, Debug, Serialize)]
pub struct VarVerdict {
    pub name: String,
    pub equal: bool,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrivialReport {
    pub kind: Kind,
    pub is_trivial: bool,
    pub seed_restored: bool,
    /// First mismatching variable, 1-based.
    pub witness: Option<String>,
    pub variables: Vec<VarVerdict>,
}

pub fn verify_trivial(s: &Seed, w: &[Step], kind: Kind) -> Result<TrivialReport, SeedError> {
    let init = ClassicalVars::initial(kind, s);
    let fin = apply_word(&init, w)?;
    let seed_restored = fin.seed == *s;
    let variables: Vec<VarVerdict> = fin
        .named()
        .into_iter()
        .zip(init.named())
        .map(|((name, e), (_, e0))| VarVerdict { name, equal: e == e0, value: e.to_string() })
        .collect();
    let witness = variables.iter().find(|v| !v.equal).map(|v| v.name.clone());
    Ok(TrivialReport { kind, is_trivial: seed_restored && witness.is_none(), seed_restored, witness, variables })
}

/// The Poisson bracket on the X torus (`{X_i, X_j} = ε̂_ij X_i X_j`) or the
/// D torus (adding `{X_i, B_j} = d_i^{-1} δ_ij X_i B_j`, `{B_i, B_j} = 0`).
/// Variable layout follows [`ClassicalVars::initial`].
pub fn poisson_bracket(f: &RatExpr, g: &RatExpr, s: &Seed, kind: Kind) -> RatExpr {
    let n = s.n();
    let vs = f.vars().clone();
    let off = match kind {
        Kind::X => 0,
        Kind::D => n,
        Kind::A => panic!("no Poisson structure on the A torus"),
    };
    let x = |i: usize| RatExpr::var(off + i, vs.clone());
    let dfx: Vec<RatExpr> = (0..n).map(|i| f.derivative(off + i)).collect();
    let dgx: Vec<RatExpr> = (0..n).map(|i| g.derivative(off + i)).collect();
    let mut acc = RatExpr::zero(vs.clone());
    for i in 0..n {
        for j in 0..n {
            let e = s.eps_hat(i, j);
            if e == Rational::from_integer(0.into()) || dfx[i].is_zero() || dgx[j].is_zero() {
                continue;
            }
            acc = acc.add(&dfx[i].mul(&dgx[j]).mul(&x(i)).mul(&x(j)).scale(&e));
        }
    }
    if kind == Kind::D {
        for i in 0..n {
            let b = RatExpr::var(i, vs.clone());
            let t = dfx[i].mul(&g.derivative(i)).sub(&f.derivative(i).mul(&dgx[i]));
            if !t.is_zero() {
                acc = acc.add(&t.mul(&x(i)).mul(&b).scale(&rat(1, s.di(i))));
            }
        }
    }
    acc
}

/// Checks that mutation at `k` carries the bracket of the new seed to the
/// bracket of the old one.
pub fn verify_poisson_preserved(s: &Seed, k: usize, kind: Kind) -> Result<bool, SeedError> {
    let v = mutate_classical(&ClassicalVars::initial(kind, s), k)?;
    let s2 = &v.seed;
    let n = s.n();
    for i in 0..n {
        for j in 0..n {
            let lhs = poisson_bracket(&v.main[i], &v.main[j], s, kind);
            let rhs = v.main[i].mul(&v.main[j]).scale(&s2.eps_hat(i, j));
            if lhs != rhs {
                return Ok(false);
            }
            if kind == Kind::D {
                let lhs = poisson_bracket(&v.main[i], &v.b[j], s, kind);
                let rhs = if i == j { v.main[i].mul(&v.b[j]).scale(&rat(1, s2.di(i))) } else { RatExpr::zero(v.vars().clone()) };
                if lhs != rhs || !poisson_bracket(&v.b[i], &v.b[j], s, kind).is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Seed {
        Seed::new(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]).unwrap()
    }

    #[test]
    fn x_mutation_example() {
        let v = mutate_classical(&ClassicalVars::initial(Kind::X, &a2()), 0).unwrap();
        assert_eq!(v.main[0].to_string(), "(1)/(X1)");
        assert_eq!(v.main[1].to_string(), "X1*X2 + X2");
    }

    #[test]
    fn a_mutation_example() {
        let v = mutate_classical(&ClassicalVars::initial(Kind::A, &a2()), 0).unwrap();
        let vs = v.vars().clone();
        let expect = RatExpr::var(1, vs.clone()).add(&RatExpr::one(vs.clone())).div(&RatExpr::var(0, vs.clone())).unwrap();
        assert_eq!(v.main[0], expect);
        assert_eq!(v.main[1], RatExpr::var(1, vs));
    }

    #[test]
    fn d_mutation_example() {
        let v = mutate_classical(&ClassicalVars::initial(Kind::D, &a2()), 0).unwrap();
        let vs = v.vars().clone();
        let (b1, b2, x1) = (RatExpr::var(0, vs.clone()), RatExpr::var(1, vs.clone()), RatExpr::var(2, vs.clone()));
        let one = RatExpr::one(vs);
        let expect = one.add(&x1.mul(&b2)).div(&b1.mul(&one.add(&x1))).unwrap();
        assert_eq!(v.b[0], expect);
        assert_eq!(v.b[1], b2);
    }

    #[test]
    fn single_mutation_is_not_trivial() {
        let r = verify_trivial(&a2(), &[Step::Mu(0)], Kind::A).unwrap();
        assert!(!r.is_trivial);
        assert_eq!(r.witness.as_deref(), Some("A1"));
    }

    #[test]
    fn brackets() {
        let s = a2();
        let v = ClassicalVars::initial(Kind::D, &s);
        let br = poisson_bracket(&v.main[0], &v.main[1], &s, Kind::D);
        assert_eq!(br, v.main[0].mul(&v.main[1]));
        assert!(poisson_bracket(&v.b[0], &v.b[1], &s, Kind::D).is_zero());
        assert!(poisson_bracket(&v.main[0], &v.main[0], &s, Kind::D).is_zero());
    }

    #[test]
    fn poisson_preserved_small() {
        assert!(verify_poisson_preserved(&a2(), 0, Kind::X).unwrap());
        let b2 = Seed::new(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]).unwrap();
        assert!(verify_poisson_preserved(&b2, 0, Kind::X).unwrap());
    }
}
