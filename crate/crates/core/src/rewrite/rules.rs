//! Local rewrite rules. Each acts on a contiguous run of factors and either
//! declines or returns the replacement and the change to the ledger.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::exact::int;
use crate::heisenberg::{bracket, quad_pair_to_shift, LinearForm, ScaledPlanck};

use super::word::OpFactor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// `S F = (S F S^{-1}) S`
    ShiftPush,
    ShiftMerge,
    /// Drops `S_{(id, 0)}`.
    ShiftDrop,
    /// Swaps two factors whose arguments have zero bracket.
    Commute,
    /// `F F^{-1} = 1`
    Cancel,
    /// `Φ_s(L) Φ_s(-L) = c_s Quad_s(L)`, and its inverse form.
    Involution,
    /// `Φ_{s1}(L1) Φ_{s2}(L2) Φ_{s1}(-L1)` for `s1 = m s2`, `m ≤ 3`.
    Polygon,
    /// `Quad_s(L1) Quad_s(L2)^{-1}` as a shift.
    QuadPair,
    /// `Quad_s(L)^{±1} F(M) = F(M ± br(L, M)/s · L) Quad_s(L)^{±1}`.
    QuadPush,
}

impl Rule {
    pub const ALL: [Rule; 9] = [
        Rule::ShiftPush,
        Rule::ShiftMerge,
        Rule::ShiftDrop,
        Rule::Commute,
        Rule::Cancel,
        Rule::Involution,
        Rule::Polygon,
        Rule::QuadPair,
        Rule::QuadPush,
    ];

    pub fn arity(self) -> usize {
        match self {
            Rule::ShiftDrop => 1,
            Rule::Polygon => 3,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::ShiftPush => "shift-push",
            Rule::ShiftMerge => "shift-merge",
            Rule::ShiftDrop => "shift-drop",
            Rule::Commute => "commute",
            Rule::Cancel => "cancel",
            Rule::Involution => "involution",
            Rule::Polygon => "polygon",
            Rule::QuadPair => "quad-pair",
            Rule::QuadPush => "quad-push",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = String;
    fn from_str(s: &str) -> Result<Rule, String> {
        Rule::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| format!("unknown rule {s:?}"))
    }
}

pub type PhaseDelta = Vec<(ScaledPlanck, i64)>;

/// Output of a rule that fired.
pub type Rewrite = (Vec<OpFactor>, PhaseDelta);

/// Middle factors of the polygon rule as `(uses s1, a, b)` for `Φ(a L1 + b L2)`.
pub fn polygon_middle(m: i64) -> &'static [(bool, i64, i64)] {
    match m {
        1 => &[(true, 1, 1)],
        2 => &[(true, 1, 2), (false, 1, 1)],
        3 => &[(true, 1, 3), (false, 1, 2), (true, 2, 3), (false, 1, 1)],
        _ => &[],
    }
}

fn commutes(a: &OpFactor, b: &OpFactor) -> bool {
    match (a.arg(), b.arg()) {
        (Some(x), Some(y)) => bracket(x, y).is_zero(),
        _ => false,
    }
}

pub fn apply(rule: Rule, f: &[OpFactor]) -> Option<Rewrite> {
    if f.len() != rule.arity() {
        return None;
    }
    match rule {
        Rule::ShiftPush => match (&f[0], &f[1]) {
            (OpFactor::Shift { g }, x) if !x.is_shift() => {
                Some((vec![x.with_arg(g.conjugate(x.arg()?)), f[0].clone()], vec![]))
            }
            _ => None,
        },
        Rule::ShiftMerge => match (&f[0], &f[1]) {
            (OpFactor::Shift { g }, OpFactor::Shift { g: h }) => Some((vec![OpFactor::Shift { g: g.compose(h) }], vec![])),
            _ => None,
        },
        Rule::ShiftDrop => match &f[0] {
            OpFactor::Shift { g } if g.is_identity() => Some((vec![], vec![])),
            _ => None,
        },
        Rule::Commute => commutes(&f[0], &f[1]).then(|| (vec![f[1].clone(), f[0].clone()], vec![])),
        Rule::Cancel => cancel(&f[0], &f[1]).then(|| (vec![], vec![])),
        Rule::Involution => involution(&f[0], &f[1]),
        Rule::Polygon => polygon(f),
        Rule::QuadPair => quad_pair(&f[0], &f[1]),
        Rule::QuadPush => quad_push(&f[0], &f[1]),
    }
}

fn cancel(a: &OpFactor, b: &OpFactor) -> bool {
    match (a, b) {
        (OpFactor::Phi { scale: s, arg: x, inverted: i }, OpFactor::Phi { scale: t, arg: y, inverted: j }) => s == t && x == y && i != j,
        // Quad(L) = Quad(-L)
        (OpFactor::QuadExp { scale: s, arg: x, inverted: i }, OpFactor::QuadExp { scale: t, arg: y, inverted: j }) => {
            s == t && (x == y || *x == y.neg()) && i != j
        }
        _ => false,
    }
}

fn involution(a: &OpFactor, b: &OpFactor) -> Option<Rewrite> {
    let (OpFactor::Phi { scale: s, arg: x, inverted: i }, OpFactor::Phi { scale: t, arg: y, inverted: j }) = (a, b) else {
        return None;
    };
    if s != t || i != j || *x != y.neg() {
        return None;
    }
    // Φ(L)Φ(-L) = c Quad(L);  Φ(-L)^{-1}Φ(L)^{-1} = c^{-1} Quad(L)^{-1} with L = y
    let (l, e) = if *i { (y.clone(), -1) } else { (x.clone(), 1) };
    Some((vec![OpFactor::QuadExp { scale: s.clone(), arg: l, inverted: *i }], vec![(s.clone(), e)]))
}

fn polygon(f: &[OpFactor]) -> Option<Rewrite> {
    let [OpFactor::Phi { scale: sa, arg: a, inverted: ia }, OpFactor::Phi { scale: sb, arg: b, inverted: ib }, OpFactor::Phi { scale: sc, arg: c, inverted: ic }] =
        f
    else {
        return None;
    };
    if ia != ib || ib != ic || sa != sc || *a != c.neg() {
        return None;
    }
    let inverted = *ia;
    let l1 = if inverted { c } else { a };
    let (s1, s2) = (sa, sb);
    let ratio = s1.scale() / s2.scale();
    let m = (1..=3).find(|&m| ratio == int(m))?;
    if bracket(l1, b) != *s1.scale() {
        return None;
    }
    Some(polygon_rhs(s1, s2, l1, b, m, inverted))
}

/// Right side of the polygon rule for `Φ_{s1}(L1) Φ_{s2}(L2) Φ_{s1}(-L1)`,
/// or of its formal inverse.
pub fn polygon_rhs(s1: &ScaledPlanck, s2: &ScaledPlanck, l1: &LinearForm, l2: &LinearForm, m: i64, inverted: bool) -> Rewrite {
    let mut out = vec![OpFactor::phi(s2.clone(), l2.clone(), false)];
    for &(big, a, b) in polygon_middle(m) {
        let arg = l1.scale(&int(a)).axpy(&int(b), l2);
        out.push(OpFactor::phi(if big { s1.clone() } else { s2.clone() }, arg, false));
    }
    out.push(OpFactor::QuadExp { scale: s1.clone(), arg: l1.clone(), inverted: false });
    if inverted {
        let out = out.iter().rev().map(OpFactor::inverse).collect();
        (out, vec![(s1.clone(), -1)])
    } else {
        (out, vec![(s1.clone(), 1)])
    }
}

fn quad_pair(a: &OpFactor, b: &OpFactor) -> Option<Rewrite> {
    let (OpFactor::QuadExp { scale: s, arg: x, inverted: i }, OpFactor::QuadExp { scale: t, arg: y, inverted: j }) = (a, b) else {
        return None;
    };
    if s != t || i == j || !bracket(x, y).is_zero() {
        return None;
    }
    // the two factors commute, so either order is Quad(L1) Quad(L2)^{-1}
    let (l1, l2) = if *i { (y, x) } else { (x, y) };
    let g = quad_pair_to_shift(l1, l2, s).ok()?;
    Some((vec![OpFactor::Shift { g }], vec![]))
}

// exp(L²/(4πiℏs)) M exp(-L²/(4πiℏs)) = M + [L², M]/(4πiℏs) = M + br(L, M)/s · L
fn quad_push(a: &OpFactor, b: &OpFactor) -> Option<Rewrite> {
    let OpFactor::QuadExp { scale, arg: l, inverted } = a else {
        return None;
    };
    let m = b.arg()?;
    let br = bracket(l, m);
    if br.is_zero() {
        return None;
    }
    let r = br / scale.scale();
    let r = if *inverted { -r } else { r };
    Some((vec![b.with_arg(m.axpy(&r, l)), a.clone()], vec![]))
}

pub(crate) fn can_commute(a: &OpFactor, b: &OpFactor) -> bool {
    commutes(a, b)
}

