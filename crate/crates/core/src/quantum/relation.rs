//! Composites of quantum mutation and permutation maps along the two
//! branches of a relation, compared as truncated series.

use std::sync::Arc;

use serde::Serialize;

use crate::classical::{apply_word, ClassicalVars, Kind};
use crate::exact::{QCoeff, RatExpr};
use crate::seed::{mutate_matrix, relation_sequence, RelationSpec, Seed, Step};

use super::context::{Gen, TorusContext};
use super::mutation::{eval_monomial, mu_prime, sharp_eval};
use super::series::QSeries;
use super::QuantumError;

fn idx(n: usize, g: Gen) -> usize {
    match g {
        Gen::B(i) => i,
        Gen::X(i) => n + i,
    }
}

/// Images in the torus `ctx0` of the generators of the seed reached by
/// `steps`, listed as `B_1..B_n, X_1..X_n`.
pub fn run_branch(ctx0: &Arc<TorusContext>, steps: &[Step], pw: i64) -> Result<Vec<QSeries>, QuantumError> {
    let n = ctx0.n();
    let gens = Gen::all(n);
    let mut local = (**ctx0).clone();
    let mut v: Vec<QSeries> = gens.iter().map(|&g| QSeries::gen(ctx0, g)).collect();
    for st in steps {
        match st {
            Step::Mu(k) => {
                let local_arc = Arc::new(local.clone());
                let w = gens
                    .iter()
                    .map(|&g| sharp_eval(&local, g, *k, &|h| v[idx(n, h)].clone(), pw))
                    .collect::<Result<Vec<_>, _>>()?;
                v = gens
                    .iter()
                    .map(|&g| eval_monomial(&mu_prime(&local_arc, g, *k), &|h| w[idx(n, h)].clone(), ctx0, pw))
                    .collect::<Result<Vec<_>, _>>()?;
                local = local.mutated(*k);
            }
            Step::Perm(sigma) => {
                let mut nv = v.clone();
                for (i, &s) in sigma.iter().enumerate() {
                    nv[s] = v[i].clone();
                    nv[n + s] = v[n + i].clone();
                }
                v = nv;
                local = local.permuted(sigma);
            }
        }
    }
    Ok(v)
}

fn min_precision(v: &[QSeries]) -> i64 {
    v.iter().filter_map(|s| s.prec()).min().unwrap_or(i64::MAX)
}

/// Runs both branches, raising the working precision until every image is
/// known to degree `order`.
fn both_branches(ctx0: &Arc<TorusContext>, lhs: &[Step], rhs: &[Step], order: i64) -> Result<(Vec<QSeries>, Vec<QSeries>, i64), QuantumError> {
    let need = order + 1;
    let mut pw = need + 2;
    let mut achieved = i64::MIN;
    for _ in 0..6 {
        let l = run_branch(ctx0, lhs, pw)?;
        let r = run_branch(ctx0, rhs, pw)?;
        achieved = min_precision(&l).min(min_precision(&r));
        if achieved >= need {
            return Ok((l, r, achieved));
        }
        pw += need - achieved;
    }
    Err(QuantumError::TruncationOverflow { requested: need, achieved })
}

#[derive(Clone, Debug, Serialize)]
pub struct GenVerdict {
    pub generator: String,
    pub agrees: bool,
    pub classical_agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuantumRelationReport {
    pub relation: String,
    pub order: i64,
    /// Smallest precision reached by any image (`i64::MAX` if all exact).
    pub precision: i64,
    pub holds: bool,
    pub classical_limit: bool,
    pub generators: Vec<GenVerdict>,
}

/// Expands a classical rational function of `B_1..B_n, X_1..X_n` as a
/// commutative series to precision `p`.
pub fn ratexpr_series(e: &RatExpr, ctx: &Arc<TorusContext>, p: i64) -> Result<QSeries, QuantumError> {
    let n = ctx.n();
    let conv = |m: &crate::exact::MPoly| {
        let mut s = QSeries::zero(ctx);
        for (mono, c) in m.terms() {
            let k: Vec<i64> = mono.0.iter().map(|&x| x as i64).collect();
            s = s.add(&QSeries::monomial(ctx, QCoeff::from_rational(c, ctx.qctx()), &k[..n], &k[n..]));
        }
        s
    };
    let num = conv(e.numer());
    let den = conv(e.denom());
    let vn = num.valuation().unwrap_or(0);
    Ok(num.mul(&den.inv(p - vn)?).truncate(p))
}

/// Checks that the composites of quantum maps along both branches of `r`
/// agree on every generator to total `X`-degree `order`, and that at
/// `q = 1` they reduce to the classical D-kind composites.
pub fn verify_quantum_relation(s: &Seed, r: &RelationSpec, order: i64) -> Result<QuantumRelationReport, QuantumError> {
    let seq = relation_sequence(s, r)?;
    debug_assert!(seq.closed);
    let r = r.clone().with_rank(s.n());
    let ctx0 = Arc::new(TorusContext::primal(s));
    let (l, rr, achieved) = both_branches(&ctx0, &r.lhs, &r.rhs, order)?;
    let n = s.n();
    let cl = apply_word(&ClassicalVars::initial(Kind::D, s), &r.lhs)?;
    let cctx = Arc::new(TorusContext::commutative(n));
    let mut gens = vec![];
    for (gi, g) in Gen::all(n).into_iter().enumerate() {
        let p = [l[gi].prec(), rr[gi].prec()].iter().flatten().copied().min().unwrap_or(order + 1).min(order + 1);
        let agrees = l[gi].agrees_below(&rr[gi], p);
        let classical = match g {
            Gen::B(i) => &cl.b[i],
            Gen::X(i) => &cl.main[i],
        };
        let classical_agrees = match (l[gi].at_q_one(&cctx), ratexpr_series(classical, &cctx, p)) {
            (Ok(a), Ok(b)) => a.agrees_below(&b, p),
            _ => false,
        };
        gens.push(GenVerdict { generator: g.to_string(), agrees, classical_agrees });
    }
    let holds = gens.iter().all(|g| g.agrees);
    let classical_limit = gens.iter().all(|g| g.classical_agrees);
    Ok(QuantumRelationReport { relation: r.to_string(), order, precision: achieved, holds, classical_limit, generators: gens })
}

#[derive(Clone, Debug, Serialize)]
pub struct DualReport {
    pub k: usize,
    /// Dual of the mutated matrix equals the mutated dual matrix.
    pub matrix_commutes: bool,
    /// Twice-mutation is the identity with prefactor `(q^∨_k)^{-ε[ε]+}`.
    pub involution_weyl_sign: bool,
    /// The same with the prefactor `(q^∨_k)^{+ε[ε]+}`.
    pub involution_plus_sign: bool,
    /// For `d = (1,..,1)`, whether the dual images coincide with the primal
    /// ones after renaming `q^∨` to `q`.
    pub self_dual_matches: Option<bool>,
    pub holds: bool,
}

fn involution(ctx: &Arc<TorusContext>, k: usize, order: i64) -> Result<(bool, Vec<QSeries>), QuantumError> {
    let (l, r, _) = both_branches(ctx, &[Step::Mu(k), Step::Mu(k)], &[], order)?;
    Ok((l.iter().zip(&r).all(|(a, b)| a.agrees_below(b, order + 1)), l))
}

fn same_up_to_symbol(a: &QSeries, b: &QSeries, p: i64) -> bool {
    let a = a.clone().truncate(p);
    let b = b.clone().truncate(p);
    a.len() == b.len()
        && a.terms().zip(b.terms()).all(|((ka, ca), (kb, cb))| ka == kb && ca.numer() == cb.numer() && ca.denom() == cb.denom())
}

/// Quantum maps for the Langlands dual seed at direction `k`.
pub fn verify_dual_quantum(s: &Seed, k: usize, order: i64) -> Result<DualReport, QuantumError> {
    s.check_index(k)?;
    let dv = s.langlands_dual();
    let matrix_commutes = s.mutate(k)?.langlands_dual().epsilon_vee == mutate_matrix(&dv.epsilon_vee, k);
    let weyl = Arc::new(TorusContext::dual(s, -1));
    let plus = Arc::new(TorusContext::dual(s, 1));
    let (involution_weyl_sign, dual_images) = involution(&weyl, k, order)?;
    let (involution_plus_sign, _) = involution(&plus, k, order)?;
    let self_dual_matches = if s.d().iter().all(|&x| x == 1) {
        let (_, primal) = involution(&Arc::new(TorusContext::primal(s)), k, order)?;
        Some(primal.iter().zip(&dual_images).all(|(a, b)| same_up_to_symbol(a, b, order + 1)))
    } else {
        None
    };
    let holds = matrix_commutes && involution_weyl_sign && self_dual_matches.unwrap_or(true);
    Ok(DualReport { k, matrix_commutes, involution_weyl_sign, involution_plus_sign, self_dual_matches, holds })
}

/// Both branches of `r` for the Langlands dual seed.
pub fn verify_dual_relation(s: &Seed, r: &RelationSpec, order: i64) -> Result<bool, QuantumError> {
    relation_sequence(s, r)?;
    let r = r.clone().with_rank(s.n());
    let ctx = Arc::new(TorusContext::dual(s, -1));
    let (l, rr, _) = both_branches(&ctx, &r.lhs, &r.rhs, order)?;
    Ok(l.iter().zip(&rr).all(|(a, b)| a.agrees_below(b, order + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twice_mutation_is_identity() {
        let s = Seed::new(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]).unwrap();
        let rep = verify_quantum_relation(&s, &RelationSpec::a1(0), 4).unwrap();
        assert!(rep.holds, "{rep:?}");
        assert!(rep.classical_limit, "{rep:?}");
    }

    #[test]
    fn pentagon_relation() {
        let s = Seed::new(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]).unwrap();
        let rep = verify_quantum_relation(&s, &s.detect_relation(0, 1).unwrap(), 4).unwrap();
        assert!(rep.holds, "{rep:?}");
        assert!(rep.classical_limit, "{rep:?}");
    }

    #[test]
    fn dual_prime_sign() {
        let s = Seed::new(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]).unwrap();
        let rep = verify_dual_quantum(&s, 0, 4).unwrap();
        assert!(rep.matrix_commutes && rep.involution_weyl_sign);
        assert!(!rep.involution_plus_sign);
    }
}
