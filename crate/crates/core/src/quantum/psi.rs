//! The compact quantum dilogarithm `Ψ^q(z) = ∏_{i≥1} (1 + q^{2i-1} z)^{-1}`
//! as a formal power series, and its product identities.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::exact::QCoeff;

use super::context::{Gen, TorusContext};
use super::mutation::series_in;
use super::series::QSeries;

/// `Ψ^q(z)^{-1} = Σ c_k z^k`, `c_k = q^{k²} / ∏_{j=1}^k (1 - q^{2j})`, for
/// `k = 0..=m`.
pub fn psi_inverse_series(q: &QCoeff, m: usize) -> Vec<QCoeff> {
    let ctx = q.ctx();
    let one = QCoeff::one(ctx);
    let q2 = q * q;
    let mut out = vec![one.clone()];
    let mut q2k = one.clone();
    let mut q_odd = q.clone();
    for _ in 1..=m {
        q2k = &q2k * &q2;
        // c_k = c_{k-1} q^{2k-1} / (1 - q^{2k})
        let c = &(out.last().unwrap() * &q_odd) / &(&one - &q2k);
        out.push(c);
        q_odd = &q_odd * &q2;
    }
    out
}

/// `Ψ^q(z) = Σ (-1)^k q^k / ∏_{j=1}^k (1 - q^{2j}) z^k`, `k = 0..=m`.
pub fn psi_series(q: &QCoeff, m: usize) -> Vec<QCoeff> {
    let ctx = q.ctx();
    let one = QCoeff::one(ctx);
    let q2 = q * q;
    let mut out = vec![one.clone()];
    let mut q2k = one.clone();
    for _ in 1..=m {
        q2k = &q2k * &q2;
        let c = &-(out.last().unwrap() * q) / &(&one - &q2k);
        out.push(c);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CompactIdentity {
    Pentagon,
    Split2,
    Split3,
    Hexagon,
    Octagon,
}

impl CompactIdentity {
    pub const ALL: [CompactIdentity; 5] =
        [CompactIdentity::Pentagon, CompactIdentity::Split2, CompactIdentity::Split3, CompactIdentity::Hexagon, CompactIdentity::Octagon];
}

impl fmt::Display for CompactIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompactIdentity::Pentagon => "pentagon",
            CompactIdentity::Split2 => "split2",
            CompactIdentity::Split3 => "split3",
            CompactIdentity::Hexagon => "hexagon",
            CompactIdentity::Octagon => "octagon",
        })
    }
}

impl FromStr for CompactIdentity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        CompactIdentity::ALL
            .into_iter()
            .find(|c| c.to_string() == s.to_ascii_lowercase())
            .ok_or_else(|| format!("unknown identity {s:?}"))
    }
}

struct Compact {
    ctx: Arc<TorusContext>,
    p: i64,
}

impl Compact {
    fn u(&self, e: i64) -> QCoeff {
        QCoeff::u_pow(e, self.ctx.qctx())
    }

    /// `u^c U^a V^b`.
    fn mono(&self, c: i64, a: i64, b: i64) -> QSeries {
        QSeries::monomial(&self.ctx, self.u(c), &[0, 0], &[a, b])
    }

    /// `Ψ^{q^s}(arg)`, or its inverse.
    fn psi(&self, s: i64, arg: &QSeries, inverse: bool) -> QSeries {
        let m = self.p.max(0) as usize;
        let c = if inverse { psi_inverse_series(&self.u(s), m) } else { psi_series(&self.u(s), m) };
        series_in(arg, &c, self.p)
    }

    fn prod(&self, fs: &[QSeries]) -> QSeries {
        fs.iter().fold(QSeries::one(&self.ctx).truncate(self.p), |a, f| a.mul(f))
    }
}

/// Checks an identity between products of `Ψ` series in the torus
/// `UV = q^{2m} VU` up to total degree `order`.
pub fn verify_compact_identity(which: CompactIdentity, order: i64) -> bool {
    let m = match which {
        CompactIdentity::Pentagon | CompactIdentity::Split2 | CompactIdentity::Split3 => 1,
        CompactIdentity::Hexagon => 2,
        CompactIdentity::Octagon => 3,
    };
    let c = Compact { ctx: Arc::new(TorusContext::compact(m)), p: order + 1 };
    let u = QSeries::gen(&c.ctx, Gen::X(0));
    let v = QSeries::gen(&c.ctx, Gen::X(1));
    let (lhs, rhs) = match which {
        CompactIdentity::Pentagon => {
            // Ψ(Y)^{-1} Ψ(X)^{-1} = Ψ(X)^{-1} Ψ(qYX)^{-1} Ψ(Y)^{-1}, XY = q^2 YX;
            // qYX = q^{-1}XY in normal order
            let l = c.prod(&[c.psi(1, &v, true), c.psi(1, &u, true)]);
            let r = c.prod(&[c.psi(1, &u, true), c.psi(1, &c.mono(-1, 1, 1), true), c.psi(1, &v, true)]);
            (l, r)
        }
        CompactIdentity::Split2 => {
            let l = c.prod(&[c.psi(2, &c.mono(1, 1, 0), false), c.psi(2, &c.mono(-1, 1, 0), false)]);
            (l, c.psi(1, &u, false))
        }
        CompactIdentity::Split3 => {
            let l = c.prod(&[c.psi(3, &c.mono(-2, 1, 0), false), c.psi(3, &u, false), c.psi(3, &c.mono(2, 1, 0), false)]);
            (l, c.psi(1, &u, false))
        }
        CompactIdentity::Hexagon => {
            let l = c.prod(&[c.psi(2, &u, false), c.psi(1, &v, false)]);
            let r = c.prod(&[
                c.psi(1, &v, false),
                c.psi(2, &c.mono(-4, 1, 2), false),
                c.psi(1, &c.mono(-2, 1, 1), false),
                c.psi(2, &u, false),
            ]);
            (l, r)
        }
        CompactIdentity::Octagon => {
            let l = c.prod(&[c.psi(3, &u, false), c.psi(1, &v, false)]);
            let r = c.prod(&[
                c.psi(1, &v, false),
                c.psi(3, &c.mono(-9, 1, 3), false),
                c.psi(1, &c.mono(-6, 1, 2), false),
                c.psi(3, &c.mono(-18, 2, 3), false),
                c.psi(1, &c.mono(-3, 1, 1), false),
                c.psi(3, &u, false),
            ]);
            (l, r)
        }
    };
    lhs.agrees_below(&rhs, order + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{QContext, UPoly};

    #[test]
    fn first_inverse_coefficients() {
        let ctx = QContext::new(1);
        let q = QCoeff::u_pow(1, ctx);
        let c = psi_inverse_series(&q, 2);
        assert!(c[0].is_one());
        let c1 = QCoeff::from_parts(UPoly::from_i64(&[0, 1]), UPoly::from_i64(&[1, 0, -1]), ctx).unwrap();
        assert_eq!(c[1], c1);
        let c2 = QCoeff::from_parts(UPoly::from_i64(&[0, 0, 0, 0, 1]), &UPoly::from_i64(&[1, 0, -1]) * &UPoly::from_i64(&[1, 0, 0, 0, -1]), ctx)
            .unwrap();
        assert_eq!(c[2], c2);
    }

    #[test]
    fn psi_times_inverse_is_one() {
        let ctx = QContext::new(1);
        let q = QCoeff::u_pow(1, ctx);
        let a = psi_series(&q, 6);
        let b = psi_inverse_series(&q, 6);
        for k in 0..=6 {
            let s = (0..=k).fold(QCoeff::zero(ctx), |acc, j| &acc + &(&a[j] * &b[k - j]));
            assert_eq!(s.is_one(), k == 0, "k={k}");
            assert!(k == 0 || s.is_zero());
        }
    }

    #[test]
    fn order_zero_is_trivial() {
        for w in CompactIdentity::ALL {
            assert!(verify_compact_identity(w, 0), "{w}");
        }
    }

    #[test]
    fn pentagon_low_order() {
        assert!(verify_compact_identity(CompactIdentity::Pentagon, 2));
        assert!(verify_compact_identity(CompactIdentity::Split2, 4));
    }

    #[test]
    fn all_identities() {
        for (w, o) in [
            (CompactIdentity::Pentagon, 8),
            (CompactIdentity::Split2, 8),
            (CompactIdentity::Split3, 8),
            (CompactIdentity::Hexagon, 6),
            (CompactIdentity::Octagon, 6),
        ] {
            assert!(verify_compact_identity(w, o), "{w} at order {o}");
        }
    }
}
