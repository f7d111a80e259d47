//! Commutation data of a quantum torus.

use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::exact::rational::{int, Rational};
use crate::exact::{IntMatrix, QCoeff, QContext};
use crate::seed::{mutate_matrix, Seed};

/// A generator of a seed torus, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    B(usize),
    X(usize),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::B(i) => write!(f, "B{}", i + 1),
            Gen::X(i) => write!(f, "X{}", i + 1),
        }
    }
}

impl Gen {
    pub fn all(n: usize) -> Vec<Gen> {
        (0..n).map(Gen::B).chain((0..n).map(Gen::X)).collect()
    }
}

/// Relations `X_i X_j = u^{lam_ij} X_j X_i`, `X_i B_i = u^{mu_i} B_i X_i`,
/// all other pairs commuting, with `u = q^{1/root}` and `q_k = u^{qk_k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusContext {
    n: usize,
    eps: IntMatrix,
    d: Vec<Rational>,
    lam: Vec<Vec<i64>>,
    mu: Vec<i64>,
    qk: Vec<i64>,
    qctx: QContext,
    /// Sign `s` in the prefactor `q_k^{s·ε_ik[ε_ik]+}` of `μ′_k(X′_i)`.
    pub prime_sign: i64,
}

impl TorusContext {
    /// Torus of a seed: `root = lcm(d)`, `lam_ij = 2·root·ε_ij/d_j`.
    pub fn primal(s: &Seed) -> TorusContext {
        let d = s.d().iter().map(|&x| int(x)).collect();
        Self::from_data(s.epsilon().clone(), d, false, -1)
    }

    /// Torus of the Langlands dual seed over `q^∨`; `root = 1`,
    /// `lam_ij = 2 d_i ε_ij`, `mu_i = 2 d_i`, `q^∨_k = v^{d_k}`.
    pub fn dual(s: &Seed, prime_sign: i64) -> TorusContext {
        let dv = s.langlands_dual();
        Self::from_data(dv.epsilon_vee, dv.d_vee, true, prime_sign)
    }

    /// Generic constructor from an exchange matrix and a rational
    /// skew-symmetrizer; `root` is the lcm of the numerators of `d`.
    pub fn from_data(eps: IntMatrix, d: Vec<Rational>, dual: bool, prime_sign: i64) -> TorusContext {
        let n = d.len();
        let root = d.iter().fold(1i64, |a, x| a.lcm(&x.numer().to_i64().unwrap()));
        let r = int(root);
        let to_i = |x: Rational| -> i64 {
            assert!(x.is_integer(), "exponent {x} not integral");
            x.to_integer().to_i64().unwrap()
        };
        let lam = (0..n)
            .map(|i| (0..n).map(|j| to_i(int(2) * &r * int(eps.get(i, j)) / &d[j])).collect())
            .collect();
        let mu = (0..n).map(|i| to_i(int(2) * &r / &d[i])).collect();
        let qk = (0..n).map(|i| to_i(r.clone() / &d[i])).collect();
        let qctx = if dual { QContext::dual(root as u32) } else { QContext::new(root as u32) };
        TorusContext { n, eps, d, lam, mu, qk, qctx, prime_sign }
    }

    /// Two generators `U = X_1`, `V = X_2` with `UV = q^{2m} VU`, no `B`s.
    pub fn compact(m: i64) -> TorusContext {
        TorusContext {
            n: 2,
            eps: IntMatrix::zeros(2),
            d: vec![int(1), int(1)],
            lam: vec![vec![0, 2 * m], vec![-2 * m, 0]],
            mu: vec![0, 0],
            qk: vec![1, 1],
            qctx: QContext::new(1),
            prime_sign: -1,
        }
    }

    /// Commuting Laurent variables `B_1..B_n, X_1..X_n` over `ℚ`.
    pub fn commutative(n: usize) -> TorusContext {
        TorusContext {
            n,
            eps: IntMatrix::zeros(n),
            d: vec![int(1); n],
            lam: vec![vec![0; n]; n],
            mu: vec![0; n],
            qk: vec![0; n],
            qctx: QContext::new(1),
            prime_sign: -1,
        }
    }

    pub fn mutated(&self, k: usize) -> TorusContext {
        Self::from_data(mutate_matrix(&self.eps, k), self.d.clone(), self.qctx.dual, self.prime_sign)
    }

    pub fn permuted(&self, sigma: &[usize]) -> TorusContext {
        let n = self.n;
        let mut e = IntMatrix::zeros(n);
        let mut d = self.d.clone();
        for i in 0..n {
            d[sigma[i]] = self.d[i].clone();
            for j in 0..n {
                e.set(sigma[i], sigma[j], self.eps.get(i, j));
            }
        }
        Self::from_data(e, d, self.qctx.dual, self.prime_sign)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eps(&self, i: usize, j: usize) -> i64 {
        self.eps.get(i, j)
    }

    pub fn lam(&self, i: usize, j: usize) -> i64 {
        self.lam[i][j]
    }

    pub fn mu(&self, i: usize) -> i64 {
        self.mu[i]
    }

    /// Exponent of `q_k` in powers of `u`.
    pub fn qk(&self, k: usize) -> i64 {
        self.qk[k]
    }

    pub fn qctx(&self) -> QContext {
        self.qctx
    }

    pub fn root(&self) -> u32 {
        self.qctx.root
    }

    /// `q_k^e` as a coefficient.
    pub fn qk_pow(&self, k: usize, e: i64) -> QCoeff {
        QCoeff::u_pow(self.qk[k] * e, self.qctx)
    }
}
