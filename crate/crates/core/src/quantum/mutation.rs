//! The two factors `μ^♯_k ∘ μ′_k` of a quantum mutation map.

use std::sync::Arc;

use crate::exact::rational::{pos, sgn};
use crate::exact::QCoeff;

use super::context::{Gen, TorusContext};
use super::psi::{psi_inverse_series, psi_series};
use super::series::QSeries;
use super::QuantumError;

/// `μ′_k(G′)` for a generator `G′` of the mutated seed, as a monomial of
/// the torus `ctx` of the seed being mutated:
/// `B′_k ↦ B_k^{-1} ∏ B_j^{[-ε_kj]+}`, `X′_k ↦ X_k^{-1}`,
/// `X′_i ↦ q_k^{s·ε_ik[ε_ik]+} X_i X_k^{[ε_ik]+}` with `s = ctx.prime_sign`.
pub fn mu_prime(ctx: &Arc<TorusContext>, g: Gen, k: usize) -> QSeries {
    let n = ctx.n();
    let one = QCoeff::one(ctx.qctx());
    match g {
        Gen::B(i) if i != k => QSeries::gen(ctx, g),
        Gen::B(_) => {
            let mut b = vec![0; n];
            for (j, bj) in b.iter_mut().enumerate() {
                *bj = pos(-ctx.eps(k, j));
            }
            b[k] -= 1;
            QSeries::monomial(ctx, one, &b, &vec![0; n])
        }
        Gen::X(i) if i == k => {
            let mut x = vec![0; n];
            x[k] = -1;
            QSeries::monomial(ctx, one, &vec![0; n], &x)
        }
        Gen::X(i) => {
            let e = ctx.eps(i, k);
            let p = pos(e);
            let c = ctx.qk_pow(k, ctx.prime_sign * e * p);
            let mut xk = vec![0; n];
            xk[k] = p;
            QSeries::gen(ctx, Gen::X(i)).mul(&QSeries::monomial(ctx, c, &vec![0; n], &xk))
        }
    }
}

/// Evaluates a normal-ordered monomial `c·B^α X^β` under a homomorphism
/// given on generators, with negative powers inverted at precision `pw`.
pub fn eval_monomial(m: &QSeries, image: &dyn Fn(Gen) -> QSeries, target: &Arc<TorusContext>, pw: i64) -> Result<QSeries, QuantumError> {
    let (key, c) = m.as_monomial().expect("monomial");
    let n = m.ctx().n();
    let mut acc = QSeries::constant(target, c.clone());
    for i in 0..n {
        if key[i] != 0 {
            acc = acc.mul(&image(Gen::B(i)).pow(key[i], pw)?);
        }
    }
    for i in 0..n {
        if key[n + i] != 0 {
            acc = acc.mul(&image(Gen::X(i)).pow(key[n + i], pw)?);
        }
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SharpMode {
    ClosedForm,
    Conjugation,
}

/// Closed form of `μ^♯_k(g)` evaluated through `image`, which gives the
/// images of the generators of the torus `local` in some target torus:
/// `B_k ↦ B_k (1 + q_k X_k)(1 + q_k X̃_k)^{-1}`,
/// `X_i ↦ X_i ∏_{r=1}^{|ε_ik|} (1 + q_k^{s(2r-1)} X_k)^{s}`, `s = sgn(-ε_ik)`.
pub fn sharp_eval(local: &TorusContext, g: Gen, k: usize, image: &dyn Fn(Gen) -> QSeries, pw: i64) -> Result<QSeries, QuantumError> {
    let n = local.n();
    match g {
        Gen::B(i) if i != k => Ok(image(g)),
        Gen::B(_) => {
            let xk = image(Gen::X(k));
            let target = xk.ctx().clone();
            let q = QSeries::constant(&target, local.qk_pow(k, 1));
            let one = QSeries::one(&target);
            let mut xt = xk.clone();
            for j in 0..n {
                let e = local.eps(k, j);
                if e != 0 {
                    xt = xt.mul(&image(Gen::B(j)).pow(e, pw)?);
                }
            }
            let f1 = one.add(&q.mul(&xk));
            let f2 = one.add(&q.mul(&xt)).inv(pw)?;
            Ok(image(g).mul(&f1).mul(&f2))
        }
        Gen::X(i) => {
            let e = local.eps(i, k);
            let mut acc = image(g);
            if e == 0 {
                return Ok(acc);
            }
            let s = sgn(-e);
            let xk = image(Gen::X(k));
            let target = xk.ctx().clone();
            for r in 1..=e.abs() {
                let c = QSeries::constant(&target, local.qk_pow(k, s * (2 * r - 1)));
                let f = QSeries::one(&target).add(&c.mul(&xk));
                acc = acc.mul(&if s > 0 { f } else { f.inv(pw)? });
            }
            Ok(acc)
        }
    }
}

/// `μ^♯_k(g)` inside the torus `ctx` itself. In conjugation mode this is
/// `Ψ(X_k) Ψ(X̃_k)^{-1} g Ψ(X̃_k) Ψ(X_k)^{-1}` with `Ψ = Ψ^{q_k}`,
/// expanded to precision `pw`.
pub fn mu_sharp(ctx: &Arc<TorusContext>, g: Gen, k: usize, mode: SharpMode, pw: i64) -> Result<QSeries, QuantumError> {
    match mode {
        SharpMode::ClosedForm => sharp_eval(ctx, g, k, &|h| QSeries::gen(ctx, h), pw),
        SharpMode::Conjugation => {
            let n = ctx.n();
            let qk = ctx.qk_pow(k, 1);
            let xk = QSeries::gen(ctx, Gen::X(k));
            let mut b = vec![0; n];
            for (j, bj) in b.iter_mut().enumerate() {
                *bj = ctx.eps(k, j);
            }
            let mut x = vec![0; n];
            x[k] = 1;
            let xt = QSeries::monomial(ctx, QCoeff::one(ctx.qctx()), &b, &x);
            let m = pw.max(1) as usize;
            let psi = psi_series(&qk, m);
            let psi_inv = psi_inverse_series(&qk, m);
            let left = series_in(&xk, &psi, pw).mul(&series_in(&xt, &psi_inv, pw));
            let right = series_in(&xt, &psi, pw).mul(&series_in(&xk, &psi_inv, pw));
            let gs = QSeries::gen(ctx, g);
            Ok(left.mul(&gs).mul(&right))
        }
    }
}

/// `Σ_j c_j z^j` for a series `z` of positive valuation, to precision `p`.
pub fn series_in(z: &QSeries, coeffs: &[QCoeff], p: i64) -> QSeries {
    let ctx = z.ctx().clone();
    let mut acc = QSeries::zero(&ctx).truncate(p);
    let mut zp = QSeries::one(&ctx).truncate(p);
    for c in coeffs {
        acc = acc.add(&zp.scale(c));
        zp = zp.mul(z).truncate(p);
        if zp.is_empty() {
            break;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::Seed;

    fn ctx(e: Vec<Vec<i64>>, d: Vec<i64>) -> Arc<TorusContext> {
        Arc::new(TorusContext::primal(&Seed::new(e, d).unwrap()))
    }

    #[test]
    fn prime_examples() {
        let c = ctx(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]);
        assert_eq!(mu_prime(&c, Gen::X(1), 0), QSeries::gen(&c, Gen::X(1)));
        assert_eq!(mu_prime(&c, Gen::B(0), 0).to_string(), "B1^-1");
        assert_eq!(mu_prime(&c, Gen::X(0), 0).to_string(), "X1^-1");
    }

    #[test]
    fn sharp_on_x_with_negative_entry() {
        let c = ctx(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]);
        let img = mu_sharp(&c, Gen::X(1), 0, SharpMode::ClosedForm, 6).unwrap();
        let x1 = QSeries::gen(&c, Gen::X(0));
        let x2 = QSeries::gen(&c, Gen::X(1));
        let q = QSeries::constant(&c, QCoeff::u_pow(1, c.qctx()));
        assert_eq!(img, x2.mul(&QSeries::one(&c).add(&q.mul(&x1))));
        assert_eq!(mu_sharp(&c, Gen::B(1), 0, SharpMode::ClosedForm, 6).unwrap(), QSeries::gen(&c, Gen::B(1)));
    }

    #[test]
    fn conjugation_matches_closed_form() {
        for (e, d) in [
            (vec![vec![0, 1], vec![-1, 0]], vec![1, 1]),
            (vec![vec![0, 2], vec![-1, 0]], vec![1, 2]),
            (vec![vec![0, 3], vec![-1, 0]], vec![1, 3]),
        ] {
            let c = ctx(e, d);
            for k in 0..2 {
                for g in Gen::all(2) {
                    let a = mu_sharp(&c, g, k, SharpMode::ClosedForm, 6).unwrap();
                    let b = mu_sharp(&c, g, k, SharpMode::Conjugation, 6).unwrap();
                    let p = a.prec().unwrap_or(i64::MAX).min(b.prec().unwrap_or(i64::MAX));
                    assert!(p >= 6, "{g}: precision {p}");
                    assert!(a.agrees_below(&b, p), "k={k} {g}: {a} vs {b}");
                }
            }
        }
    }
}
