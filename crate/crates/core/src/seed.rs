//! Seeds: an integer exchange matrix with a skew-symmetrizer, their
//! mutations and relabelings, Langlands duals, and the rank-2 relations.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::rational::{lcm_i64, rat, Rational};
use crate::exact::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeedError {
    #[error("invalid seed: {0}")]
    Invalid(String),
    #[error("index {k} out of range 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("not a permutation of 1..={n}: {sigma:?}")]
    NotAPermutation { sigma: Vec<usize>, n: usize },
    #[error("relation {kind} does not apply at indices ({i}, {j})")]
    Inapplicable { kind: RelationKind, i: usize, j: usize },
    #[error("closure failed for {0}")]
    ClosureFailed(RelationKind),
    #[error("cannot parse step {0:?}")]
    BadStep(String),
    #[error("json: {0}")]
    Json(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seed {
    epsilon: IntMatrix,
    d: Vec<i64>,
    big_n: i64,
}

#[derive(Serialize, Deserialize)]
struct SeedFile {
    n: usize,
    epsilon: Vec<Vec<i64>>,
    d: Vec<i64>,
}

impl Seed {
    /// Validates every seed invariant; error messages use 1-based indices.
    pub fn new(epsilon: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Seed, SeedError> {
        let n = d.len();
        if epsilon.len() != n {
            return Err(SeedError::Invalid(format!("epsilon has {} rows but d has {} entries", epsilon.len(), n)));
        }
        for (i, row) in epsilon.iter().enumerate() {
            if row.len() != n {
                return Err(SeedError::Invalid(format!("epsilon row {} has length {}, expected {}", i + 1, row.len(), n)));
            }
        }
        for (i, &di) in d.iter().enumerate() {
            if di <= 0 {
                return Err(SeedError::Invalid(format!("d_{} = {} is not a positive integer", i + 1, di)));
            }
        }
        for i in 0..n {
            if epsilon[i][i] != 0 {
                return Err(SeedError::Invalid(format!("epsilon_{0}{0} = {1} must be 0", i + 1, epsilon[i][i])));
            }
            for j in 0..n {
                // ε_ij/d_j = −ε_ji/d_i  <=>  ε_ij d_i = −ε_ji d_j
                if epsilon[i][j] * d[i] != -epsilon[j][i] * d[j] {
                    return Err(SeedError::Invalid(format!(
                        "skew-symmetrizability fails: epsilon_{a}{b}/d_{b} = {x}/{y} but -epsilon_{b}{a}/d_{a} = {z}/{w}",
                        a = i + 1,
                        b = j + 1,
                        x = epsilon[i][j],
                        y = d[j],
                        z = -epsilon[j][i],
                        w = d[i]
                    )));
                }
            }
        }
        let epsilon = IntMatrix::from_rows(&epsilon).expect("square");
        let big_n = compute_big_n(&epsilon, &d);
        Ok(Seed { epsilon, d, big_n })
    }

    pub fn from_json(s: &str) -> Result<Seed, SeedError> {
        let f: SeedFile = serde_json::from_str(s).map_err(|e| SeedError::Json(e.to_string()))?;
        if f.n != f.d.len() {
            return Err(SeedError::Invalid(format!("n = {} but d has {} entries", f.n, f.d.len())));
        }
        Seed::new(f.epsilon, f.d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SeedFile { n: self.n(), epsilon: self.epsilon.rows(), d: self.d.clone() }).unwrap()
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn epsilon(&self) -> &IntMatrix {
        &self.epsilon
    }

    pub fn eps(&self, i: usize, j: usize) -> i64 {
        self.epsilon.get(i, j)
    }

    pub fn d(&self) -> &[i64] {
        &self.d
    }

    pub fn di(&self, i: usize) -> i64 {
        self.d[i]
    }

    /// `ε̂_ij = ε_ij / d_j`
    pub fn eps_hat(&self, i: usize, j: usize) -> Rational {
        rat(self.eps(i, j), self.d[j])
    }

    /// `ε̃_ij = d_i ε_ij`
    pub fn eps_tilde(&self, i: usize, j: usize) -> i64 {
        self.d[i] * self.eps(i, j)
    }

    /// Smallest `N > 0` with every `ε̂_ij` in `(1/N)ℤ`.
    pub fn big_n(&self) -> i64 {
        self.big_n
    }

    pub fn lcm_d(&self) -> i64 {
        self.d.iter().fold(1, |a, &b| lcm_i64(a, b))
    }

    pub fn check_index(&self, k: usize) -> Result<(), SeedError> {
        if k >= self.n() {
            return Err(SeedError::IndexOutOfRange { k: k + 1, n: self.n() });
        }
        Ok(())
    }

    /// Mutation in direction `k` (0-based).
    pub fn mutate(&self, k: usize) -> Result<Seed, SeedError> {
        self.check_index(k)?;
        let epsilon = mutate_matrix(&self.epsilon, k);
        let s = Seed { epsilon, d: self.d.clone(), big_n: self.big_n };
        debug_assert_eq!(compute_big_n(&s.epsilon, &s.d), s.big_n);
        Ok(s)
    }

    /// Relabeling with `ε′_{σ(i)σ(j)} = ε_ij`, `d′_{σ(i)} = d_i` (0-based σ).
    pub fn permute(&self, sigma: &[usize]) -> Result<Seed, SeedError> {
        check_perm(sigma, self.n())?;
        let n = self.n();
        let mut e = IntMatrix::zeros(n);
        let mut d = vec![0; n];
        for i in 0..n {
            d[sigma[i]] = self.d[i];
            for j in 0..n {
                e.set(sigma[i], sigma[j], self.eps(i, j));
            }
        }
        Ok(Seed { epsilon: e, d, big_n: self.big_n })
    }

    pub fn apply(&self, step: &Step) -> Result<Seed, SeedError> {
        match step {
            Step::Mu(k) => self.mutate(*k),
            Step::Perm(s) => self.permute(s),
        }
    }

    pub fn apply_all(&self, steps: &[Step]) -> Result<Seed, SeedError> {
        steps.iter().try_fold(self.clone(), |s, st| s.apply(st))
    }

    /// Classifies the pair `(i, j)` (0-based): `ε_ij = −p ε_ji` and `|ε_ij| = p`.
    pub fn detect_relation(&self, i: usize, j: usize) -> Option<RelationSpec> {
        if i == j || i >= self.n() || j >= self.n() {
            return None;
        }
        let (a, b) = (self.eps(i, j), self.eps(j, i));
        let kind = match (a.abs(), a == -a.abs() * b) {
            (0, _) if b == 0 => RelationKind::A1xA1,
            (1, true) => RelationKind::A2,
            (2, true) => RelationKind::B2,
            (3, true) => RelationKind::G2,
            _ => return None,
        };
        Some(RelationSpec::new(kind, i, j))
    }

    pub fn langlands_dual(&self) -> DualSeed {
        let n = self.n();
        let mut ev = IntMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let a = rat(self.d[i] * self.eps(i, j), self.d[j]);
                let b = -self.eps(j, i);
                assert_eq!(a, Rational::from_integer(b.into()), "dual formulas disagree");
                ev.set(i, j, b);
            }
        }
        DualSeed { epsilon_vee: ev, d_vee: self.d.iter().map(|&x| rat(1, x)).collect() }
    }

    /// Random valid seed with `d_i ∈ 1..=max_d` and entries built from
    /// multipliers in `-max_t..=max_t`.
    pub fn random<R: Rng>(rng: &mut R, n: usize, max_d: i64, max_t: i64) -> Seed {
        let d: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=max_d)).collect();
        let mut e = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let l = lcm_i64(d[i], d[j]);
                let t = rng.gen_range(-max_t..=max_t);
                e[i][j] = t * l / d[i];
                e[j][i] = -t * l / d[j];
            }
        }
        Seed::new(e, d).expect("constructed valid")
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "epsilon={} d={:?}", self.epsilon, self.d)
    }
}

fn compute_big_n(e: &IntMatrix, d: &[i64]) -> i64 {
    let n = d.len();
    let mut big_n = 1;
    for i in 0..n {
        for j in 0..n {
            big_n = lcm_i64(big_n, rat(e.get(i, j), d[j]).denom().try_into().unwrap());
        }
    }
    big_n
}

fn check_perm(sigma: &[usize], n: usize) -> Result<(), SeedError> {
    let mut seen = vec![false; n];
    let ok = sigma.len() == n
        && sigma.iter().all(|&s| s < n && !std::mem::replace(&mut seen[s], true));
    if ok {
        Ok(())
    } else {
        Err(SeedError::NotAPermutation { sigma: sigma.iter().map(|s| s + 1).collect(), n })
    }
}

/// `ε′_ij = −ε_ij` if `k ∈ {i, j}`, else `ε_ij + ½(|ε_ik|ε_kj + ε_ik|ε_kj|)`.
pub fn mutate_matrix(e: &IntMatrix, k: usize) -> IntMatrix {
    let n = e.n();
    let mut out = IntMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let v = if i == k || j == k {
                -e.get(i, j)
            } else {
                let (a, b) = (e.get(i, k), e.get(k, j));
                e.get(i, j) + (a.abs() * b + a * b.abs()) / 2
            };
            out.set(i, j, v);
        }
    }
    out
}

pub fn mutate_exchange(s: &Seed, k: usize) -> Result<Seed, SeedError> {
    s.mutate(k)
}

pub fn permute_seed(s: &Seed, sigma: &[usize]) -> Result<Seed, SeedError> {
    s.permute(sigma)
}

pub fn langlands_dual(s: &Seed) -> DualSeed {
    s.langlands_dual()
}

pub fn detect_relation(s: &Seed, i: usize, j: usize) -> Option<RelationSpec> {
    s.detect_relation(i, j)
}

pub fn transposition(n: usize, i: usize, j: usize) -> Vec<usize> {
    let mut s: Vec<usize> = (0..n).collect();
    s.swap(i, j);
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSeed {
    pub epsilon_vee: IntMatrix,
    pub d_vee: Vec<Rational>,
}

impl DualSeed {
    /// The dual seed with its symmetrizer rescaled to integers.
    pub fn as_seed(&self) -> Seed {
        let l = self.d_vee.iter().fold(1i64, |a, x| lcm_i64(a, x.denom().try_into().unwrap()));
        let d: Vec<i64> = self.d_vee.iter().map(|x| (x * Rational::from_integer(l.into())).to_integer().try_into().unwrap()).collect();
        Seed::new(self.epsilon_vee.rows(), d).expect("dual of a seed is a seed")
    }

    /// Applies the duality once more: `(ε^∨)^∨` with `(d^∨)^∨ = d`.
    pub fn dual(&self) -> (IntMatrix, Vec<Rational>) {
        let n = self.d_vee.len();
        let mut e = IntMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                e.set(i, j, -self.epsilon_vee.get(j, i));
            }
        }
        (e, self.d_vee.iter().map(|x| x.recip()).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelationKind {
    A1,
    A1xA1,
    A2,
    B2,
    G2,
}

impl RelationKind {
    pub const ALL: [RelationKind; 5] = [RelationKind::A1, RelationKind::A1xA1, RelationKind::A2, RelationKind::B2, RelationKind::G2];

    /// `h` in the `(h+2)`-gon relation; `None` for the rank one relation.
    pub fn h(self) -> Option<usize> {
        match self {
            RelationKind::A1 => None,
            RelationKind::A1xA1 => Some(2),
            RelationKind::A2 => Some(3),
            RelationKind::B2 => Some(4),
            RelationKind::G2 => Some(6),
        }
    }

    /// Number of distinct seeds `Γ^{(0)}, Γ^{(1)}, ...` along both branches.
    pub fn sequence_len(self) -> usize {
        match self {
            RelationKind::A1 => 2,
            RelationKind::A1xA1 => 4,
            RelationKind::A2 | RelationKind::B2 => 6,
            RelationKind::G2 => 8,
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RelationKind::A1 => "A1",
            RelationKind::A1xA1 => "A1xA1",
            RelationKind::A2 => "A2",
            RelationKind::B2 => "B2",
            RelationKind::G2 => "G2",
        };
        f.write_str(s)
    }
}

impl FromStr for RelationKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "a1" => Ok(RelationKind::A1),
            "a1xa1" | "a1*a1" => Ok(RelationKind::A1xA1),
            "a2" => Ok(RelationKind::A2),
            "b2" => Ok(RelationKind::B2),
            "g2" => Ok(RelationKind::G2),
            _ => Err(format!("unknown relation {s:?} (expected A1, A1xA1, A2, B2, G2)")),
        }
    }
}

/// One elementary step of a cluster transformation, 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Mu(usize),
    Perm(Vec<usize>),
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Mu(k) => write!(f, "mu:{}", k + 1),
            Step::Perm(s) => {
                let v: Vec<String> = s.iter().map(|x| (x + 1).to_string()).collect();
                write!(f, "perm:{}", v.join(","))
            }
        }
    }
}

impl FromStr for Step {
    type Err = SeedError;
    /// `"mu:k"` or `"perm:s1,s2,..."` with 1-based entries, `s_i = σ(i)`.
    fn from_str(s: &str) -> Result<Step, SeedError> {
        let bad = || SeedError::BadStep(s.to_string());
        let (tag, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let one_based = |x: &str| -> Result<usize, SeedError> {
            let v: usize = x.trim().parse().map_err(|_| bad())?;
            v.checked_sub(1).ok_or_else(bad)
        };
        match tag.trim() {
            "mu" => Ok(Step::Mu(one_based(rest)?)),
            "perm" => Ok(Step::Perm(rest.split(',').map(one_based).collect::<Result<_, _>>()?)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Step {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Step {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Step, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A consistency relation: two step sequences from the same base seed
/// that must induce the same transformation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSpec {
    pub kind: RelationKind,
    pub i: usize,
    pub j: usize,
    pub lhs: Vec<Step>,
    pub rhs: Vec<Step>,
}

impl RelationSpec {
    pub fn new(kind: RelationKind, i: usize, j: usize) -> RelationSpec {
        use Step::Mu;
        let (lhs, rhs) = match kind {
            RelationKind::A1 => (vec![Mu(i), Mu(i)], vec![]),
            RelationKind::A1xA1 => (vec![Mu(i), Mu(j)], vec![Mu(j), Mu(i)]),
            // the transposition is filled in by `with_rank`
            RelationKind::A2 => (vec![Mu(i), Mu(j), Mu(i)], vec![Mu(j), Mu(i), Step::Perm(vec![])]),
            RelationKind::B2 => (vec![Mu(i), Mu(j), Mu(i)], vec![Mu(j), Mu(i), Mu(j)]),
            RelationKind::G2 => (vec![Mu(i), Mu(j), Mu(i), Mu(j)], vec![Mu(j), Mu(i), Mu(j), Mu(i)]),
        };
        RelationSpec { kind, i, j, lhs, rhs }
    }

    /// Rank one relation at index `k`.
    pub fn a1(k: usize) -> RelationSpec {
        RelationSpec::new(RelationKind::A1, k, k)
    }

    /// Resolves rank-dependent steps (the transposition of `A2`).
    pub fn with_rank(mut self, n: usize) -> RelationSpec {
        for st in self.rhs.iter_mut() {
            if let Step::Perm(p) = st {
                if p.is_empty() {
                    *p = transposition(n, self.i, self.j);
                }
            }
        }
        self
    }

    /// The word `(P_{(i j)} ∘ μ_i)^{h+2}`, steps applied left to right.
    pub fn polygon_word(&self, n: usize) -> Vec<Step> {
        match self.kind.h() {
            None => vec![Step::Mu(self.i), Step::Mu(self.i)],
            Some(h) => (0..h + 2).flat_map(|_| [Step::Mu(self.i), Step::Perm(transposition(n, self.i, self.j))]).collect(),
        }
    }
}

impl fmt::Display for RelationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kind == RelationKind::A1 {
            write!(f, "A1(k={})", self.i + 1)
        } else {
            write!(f, "{}(i={}, j={})", self.kind, self.i + 1, self.j + 1)
        }
    }
}

#[derive(Clone, Debug)]
pub struct RelationSequence {
    /// `Γ^{(0)}, Γ^{(1)}, ...` in the order the two branches visit them.
    pub seeds: Vec<Seed>,
    /// Seeds after each step of the left branch, starting at the base.
    pub lhs: Vec<Seed>,
    pub rhs: Vec<Seed>,
    pub closed: bool,
}

/// Runs both branches of `r` from `s` and checks they end at the same seed.
pub fn relation_sequence(s: &Seed, r: &RelationSpec) -> Result<RelationSequence, SeedError> {
    let r = r.clone().with_rank(s.n());
    s.check_index(r.i)?;
    s.check_index(r.j)?;
    if r.kind != RelationKind::A1 && s.detect_relation(r.i, r.j).map(|x| x.kind) != Some(r.kind) {
        return Err(SeedError::Inapplicable { kind: r.kind, i: r.i + 1, j: r.j + 1 });
    }
    let walk = |steps: &[Step]| -> Result<Vec<Seed>, SeedError> {
        let mut v = vec![s.clone()];
        for st in steps {
            let nx = v.last().unwrap().apply(st)?;
            assert_eq!(nx.big_n(), s.big_n());
            v.push(nx);
        }
        Ok(v)
    };
    let lhs = walk(&r.lhs)?;
    let rhs = walk(&r.rhs)?;
    let closed = lhs.last() == rhs.last();
    let mut seeds = vec![s.clone()];
    if r.kind == RelationKind::A1 {
        seeds.push(lhs[1].clone());
    } else {
        seeds.extend(lhs[1..].iter().cloned());
        seeds.extend(rhs[1..rhs.len() - 1].iter().cloned());
    }
    if !closed {
        return Err(SeedError::ClosureFailed(r.kind));
    }
    Ok(RelationSequence { seeds, lhs, rhs, closed })
}

/// Convenience for tests and examples: 0-based `(i, j)` first match.
pub fn find_relation(s: &Seed, kind: RelationKind) -> Option<RelationSpec> {
    if kind == RelationKind::A1 {
        return (s.n() > 0).then(|| RelationSpec::a1(0));
    }
    for i in 0..s.n() {
        for j in 0..s.n() {
            if let Some(r) = s.detect_relation(i, j) {
                if r.kind == kind {
                    return Some(r);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn a2() -> Seed {
        Seed::new(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]).unwrap()
    }

    #[test]
    fn mutation_examples() {
        assert_eq!(a2().mutate(0).unwrap().epsilon().rows(), vec![vec![0, -1], vec![1, 0]]);
        let b2 = Seed::new(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]).unwrap();
        assert_eq!(b2.mutate(0).unwrap().eps(0, 1), -2);
        let a3 = Seed::new(vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]], vec![1, 1, 1]).unwrap();
        assert_eq!(a3.mutate(1).unwrap().epsilon().rows(), vec![vec![0, -1, 1], vec![1, 0, -1], vec![-1, 1, 0]]);
    }

    #[test]
    fn validation_messages_name_the_condition() {
        let e = Seed::new(vec![vec![0, 1], vec![1, 0]], vec![1, 1]).unwrap_err();
        assert!(e.to_string().contains("skew-symmetrizability"), "{e}");
        let e = Seed::new(vec![vec![0, 1], vec![-1, 0]], vec![1, 0]).unwrap_err();
        assert!(e.to_string().contains("d_2"), "{e}");
        let e = Seed::new(vec![vec![1, 1], vec![-1, 0]], vec![1, 1]).unwrap_err();
        assert!(e.to_string().contains("epsilon_11"), "{e}");
        assert!(matches!(a2().mutate(2), Err(SeedError::IndexOutOfRange { k: 3, n: 2 })));
    }

    #[test]
    fn big_n_values() {
        assert_eq!(a2().big_n(), 1);
        let b2 = Seed::new(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]).unwrap();
        assert_eq!(b2.big_n(), 1);
        let s = Seed::new(vec![vec![0, 1], vec![-1, 0]], vec![2, 2]).unwrap();
        assert_eq!(s.big_n(), 2);
        assert_eq!(s.lcm_d(), 2);
    }

    #[test]
    fn json_round_trip() {
        let s = Seed::from_json(r#"{"n":2,"epsilon":[[0,2],[-1,0]],"d":[1,2]}"#).unwrap();
        assert_eq!(Seed::from_json(&s.to_json()).unwrap(), s);
        assert!(Seed::from_json(r#"{"n":3,"epsilon":[[0,2],[-1,0]],"d":[1,2]}"#).is_err());
    }

    #[test]
    fn permutation_examples() {
        let s = a2();
        assert_eq!(s.permute(&[0, 1]).unwrap(), s);
        assert_eq!(s.permute(&[1, 0]).unwrap().epsilon().rows(), vec![vec![0, -1], vec![1, 0]]);
        assert!(s.permute(&[0, 0]).is_err());
    }

    #[test]
    fn dual_examples() {
        let b2 = Seed::new(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]).unwrap();
        let dv = b2.langlands_dual();
        assert_eq!(dv.epsilon_vee.rows(), vec![vec![0, 1], vec![-2, 0]]);
        assert_eq!(dv.d_vee, vec![rat(1, 1), rat(1, 2)]);
        let (e, d) = dv.dual();
        assert_eq!(e, *b2.epsilon());
        assert_eq!(d, vec![rat(1, 1), rat(2, 1)]);
        assert_eq!(a2().langlands_dual().epsilon_vee, *a2().epsilon());
    }

    #[test]
    fn detection() {
        let z = Seed::new(vec![vec![0, 0], vec![0, 0]], vec![1, 1]).unwrap();
        assert_eq!(z.detect_relation(0, 1).unwrap().kind, RelationKind::A1xA1);
        let b2 = Seed::new(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]).unwrap();
        assert_eq!(b2.detect_relation(0, 1).unwrap().kind, RelationKind::B2);
        assert!(b2.detect_relation(1, 0).is_none());
        let bad = Seed::new(vec![vec![0, 2], vec![-3, 0]], vec![3, 2]).unwrap();
        assert!(bad.detect_relation(0, 1).is_none());
    }

    #[test]
    fn a2_branch_signs() {
        let s = a2();
        let r = s.detect_relation(0, 1).unwrap();
        let seq = relation_sequence(&s, &r).unwrap();
        let signs: Vec<i64> = seq.seeds.iter().map(|g| g.eps(0, 1)).collect();
        assert_eq!(signs, vec![1, -1, 1, -1, -1, 1]);
        assert!(seq.closed);
    }

    #[test]
    fn sequence_lengths() {
        let g2 = Seed::new(vec![vec![0, 3], vec![-1, 0]], vec![1, 3]).unwrap();
        let seq = relation_sequence(&g2, &g2.detect_relation(0, 1).unwrap()).unwrap();
        assert_eq!(seq.seeds.len(), 8);
        let seq = relation_sequence(&a2(), &RelationSpec::a1(1)).unwrap();
        assert_eq!(seq.seeds.len(), 2);
        assert_eq!(seq.lhs[2], a2());
    }

    #[test]
    fn inapplicable_relation_is_rejected() {
        let r = RelationSpec::new(RelationKind::B2, 0, 1);
        assert!(matches!(relation_sequence(&a2(), &r), Err(SeedError::Inapplicable { .. })));
    }

    #[test]
    fn step_parsing() {
        assert_eq!("mu:2".parse::<Step>().unwrap(), Step::Mu(1));
        assert_eq!("perm:2,1".parse::<Step>().unwrap(), Step::Perm(vec![1, 0]));
        assert!("mu:0".parse::<Step>().is_err());
        assert!("nu:1".parse::<Step>().is_err());
        let w: Vec<Step> = serde_json::from_str(r#"["mu:1","perm:2,1"]"#).unwrap();
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"["mu:1","perm:2,1"]"#);
    }

    #[test]
    fn random_seeds_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let s = Seed::random(&mut rng, 4, 3, 1);
            assert!(s.lcm_d() % s.big_n() == 0);
        }
    }
}
