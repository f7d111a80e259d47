//! Small dense square matrices over the integers and the rationals.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{fmt_rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    n: usize,
    a: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, a: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// From rows; `None` unless the rows form a square.
    pub fn from_rows(rows: &[Vec<i64>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(IntMatrix { n, a: rows.iter().flatten().copied().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.a[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.a.chunks(self.n.max(1)).map(|r| r.to_vec()).take(self.n).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix { n: self.n, a: self.a.iter().map(|&x| Rational::from_integer(x.into())).collect() }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    n: usize,
    a: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(n: usize) -> Self {
        RatMatrix { n, a: vec![Rational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(RatMatrix { n, a: rows.iter().flatten().cloned().collect() })
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Option<Self> {
        IntMatrix::from_rows(rows).map(|m| m.to_rat())
    }

    /// Matrix of the map `e_i -> e_{σ(i)}` acting on row vectors, i.e.
    /// `c[σ(i)][i] = 1`, so that `(a·c)_i = a_{σ(i)}`.
    pub fn permutation(sigma: &[usize]) -> Self {
        let n = sigma.len();
        let mut m = Self::zeros(n);
        for (i, &s) in sigma.iter().enumerate() {
            m.set(s, i, Rational::one());
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.a[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        (0..self.n).map(|i| self.a[i * self.n..(i + 1) * self.n].to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn mul(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, o.n, "dimension mismatch");
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = m.get(i, j) + a * b;
                        m.set(i, j, v);
                    }
                }
            }
        }
        m
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.n)
            .map(|j| (0..self.n).fold(Rational::zero(), |acc, i| acc + &v[i] * self.get(i, j)))
            .collect()
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.n)
            .map(|i| (0..self.n).fold(Rational::zero(), |acc, j| acc + self.get(i, j) * &v[j]))
            .collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn det(&self) -> Rational {
        let n = self.n;
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                for j in 0..n {
                    let t = m.get(p, j).clone();
                    m.set(p, j, m.get(col, j).clone());
                    m.set(col, j, t);
                }
                det = -det;
            }
            let piv = m.get(col, col).clone();
            det *= &piv;
            for r in col + 1..n {
                let f = m.get(r, col) / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = m.get(r, j) - &f * m.get(col, j);
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        let n = self.n;
        let mut m = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !m.get(r, col).is_zero())?;
            if p != col {
                for j in 0..n {
                    let t = m.get(p, j).clone();
                    m.set(p, j, m.get(col, j).clone());
                    m.set(col, j, t);
                    let t = inv.get(p, j).clone();
                    inv.set(p, j, inv.get(col, j).clone());
                    inv.set(col, j, t);
                }
            }
            let piv = m.get(col, col).recip();
            for j in 0..n {
                let v = m.get(col, j) * &piv;
                m.set(col, j, v);
                let v = inv.get(col, j) * &piv;
                inv.set(col, j, v);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = m.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = m.get(r, j) - &f * m.get(col, j);
                    m.set(r, j, v);
                    let v = inv.get(r, j) - &f * inv.get(col, j);
                    inv.set(r, j, v);
                }
            }
        }
        Some(inv)
    }

    pub fn has_unit_abs_det(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows().iter().map(|r| r.iter().map(fmt_rat).collect()).collect()
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.to_strings().iter().map(|r| format!("[{}]", r.join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn inverse_round_trip() {
        let m = RatMatrix::from_rows(&[vec![rat(2, 1), rat(1, 3)], vec![rat(-1, 2), rat(5, 1)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(m.det() * inv.det(), rat(1, 1));
    }

    #[test]
    fn permutation_matrix_acts_by_reindexing() {
        // sigma = (0 -> 1, 1 -> 2, 2 -> 0)
        let p = RatMatrix::permutation(&[1, 2, 0]);
        let a = vec![rat(10, 1), rat(20, 1), rat(30, 1)];
        assert_eq!(p.left_apply(&a), vec![rat(20, 1), rat(30, 1), rat(10, 1)]);
        assert!(p.has_unit_abs_det());
    }

    #[test]
    fn permutations_compose_as_permutations() {
        let s = [1, 2, 0];
        let t = [2, 0, 1];
        // (a·P_s)·P_t reads a_{s(t(i))}
        let st: Vec<usize> = (0..3).map(|i| s[t[i]]).collect();
        assert_eq!(RatMatrix::permutation(&s).mul(&RatMatrix::permutation(&t)), RatMatrix::permutation(&st));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = RatMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(m.inverse().is_none());
        assert_eq!(m.det(), rat(0, 1));
    }
}
