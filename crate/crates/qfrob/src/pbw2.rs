//! Straightening of divided-power words in the positive part of rank two
//! quantum groups, with specialization to a root of unity and projection to
//! the Frobenius quotient.
//!
//! Normal forms are ordered monomials `E_b1^(r1) ... E_bk^(rk)` along a fixed
//! convex order of the positive roots. Products are rewritten pairwise:
//!
//! * equal roots merge by a Gaussian binomial;
//! * q-commuting pairs swap with the factor `q^(-(a,b) x y)`;
//! * remaining pairs use an encoded commutation rule, or are split into
//!   smaller divided powers, rewritten, and divided exactly by a q-integer.
//!
//! For `E_later E_earlier` with no rule the convention is
//! `E_later E_earlier = q^(-(a,b)) E_earlier E_later`, and the braided
//! commutator is `[X, Y] = XY - q^((wt X, wt Y)) YX`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use serde::Serialize;

use crate::cyclo::{q_binomial, q_int, specialize, CycloNum, LaurentPoly};
use crate::lattice::ell_alpha;
use crate::rootsys::Root;
use crate::Error;

/// Coefficient rings for PBW expressions.
pub trait Coefficient: Clone + PartialEq + fmt::Display {
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
}

impl Coefficient for LaurentPoly {
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl Coefficient for CycloNum {
    fn is_zero(&self) -> bool {
        CycloNum::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
}

/// Ordered monomial: `(position in the convex order, divided-power exponent)`
/// with strictly increasing positions and positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PbwMonomial(pub Vec<(usize, u32)>);

impl PbwMonomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn is_normal(&self) -> bool {
        self.0.iter().all(|f| f.1 > 0) && self.0.windows(2).all(|w| w[0].0 < w[1].0)
    }

    pub fn factors(&self) -> &[(usize, u32)] {
        &self.0
    }
}

/// Linear combination of monomials with nonzero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PbwExpression<C> {
    terms: BTreeMap<PbwMonomial, C>,
}

impl<C: Coefficient> Default for PbwExpression<C> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<C: Coefficient> PbwExpression<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(m: PbwMonomial, c: C) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (PbwMonomial, C)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old.plus(&c);
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.negated());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, x)| (m.clone(), x.times(c))))
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> PbwExpression<D> {
        PbwExpression::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn retain(&self, keep: impl Fn(&PbwMonomial) -> bool) -> Self {
        Self::from_terms(self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())))
    }
}

impl PbwExpression<LaurentPoly> {
    /// Divide every coefficient exactly by `d`; `None` if some quotient
    /// leaves `Z[q, q^-1]`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.div_exact(d)?);
        }
        Some(out)
    }

    pub fn specialize(&self, ell: u64) -> PbwExpression<CycloNum> {
        self.map_coeffs(|c| specialize(c, ell))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Rank2Type {
    A1xA1,
    /// `A2` with all pairings scaled by `d` (long-root `A2` uses `d = 2`).
    A2 { d: i64 },
    B2,
    G2,
}

impl fmt::Display for Rank2Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank2Type::A1xA1 => write!(f, "A1xA1"),
            Rank2Type::A2 { d: 1 } => write!(f, "A2"),
            Rank2Type::A2 { d } => write!(f, "A2(d={d})"),
            Rank2Type::B2 => write!(f, "B2"),
            Rank2Type::G2 => write!(f, "G2"),
        }
    }
}

/// Which commutation rules the engine may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleSet {
    /// Closed formulas for `A2` and `B2` in all exponents; for `G2` the
    /// quoted instances together with the elementary rules.
    Closed,
    /// Only rules for `E_a E_b` with both exponents one; everything else is
    /// reached by splitting divided powers.
    Elementary,
    /// For `G2`, only the quoted instances: words needing anything else are
    /// rejected with a rule gap. Same as `Closed` for the other types.
    QuotedOnly,
}

type Rhs = Vec<(LaurentPoly, Vec<(usize, u32)>)>;

/// Positive part of a rank two quantum group with a fixed convex order.
pub struct PbwAlgebra2 {
    kind: Rank2Type,
    rules: RuleSet,
    roots: Vec<Root>,
    gram: [[i64; 2]; 2],
    memo: Mutex<HashMap<(usize, u32, usize, u32), PbwExpression<LaurentPoly>>>,
}

impl fmt::Debug for PbwAlgebra2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PbwAlgebra2({}, {:?})", self.kind, self.rules)
    }
}

type Expr = PbwExpression<LaurentPoly>;

fn qp(e: i64) -> LaurentPoly {
    LaurentPoly::q_pow(e)
}

fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().copied())
}

fn mono(factors: &[(usize, u32)]) -> PbwMonomial {
    PbwMonomial(factors.iter().copied().filter(|f| f.1 > 0).collect())
}

// G2 positions in the convex order a2, a12, a11122, a112, a1112, a1.
const G_2: usize = 0;
const G_12: usize = 1;
const G_11122: usize = 2;
const G_112: usize = 3;
const G_1112: usize = 4;
const G_1: usize = 5;

impl PbwAlgebra2 {
    pub fn new(kind: Rank2Type) -> Self {
        Self::with_rules(kind, RuleSet::Closed)
    }

    pub fn with_rules(kind: Rank2Type, rules: RuleSet) -> Self {
        let (roots, gram): (Vec<(i64, i64)>, [[i64; 2]; 2]) = match kind {
            Rank2Type::A1xA1 => (vec![(0, 1), (1, 0)], [[2, 0], [0, 2]]),
            Rank2Type::A2 { d } => (vec![(0, 1), (1, 1), (1, 0)], [[2 * d, -d], [-d, 2 * d]]),
            Rank2Type::B2 => (vec![(0, 1), (1, 1), (2, 1), (1, 0)], [[2, -2], [-2, 4]]),
            Rank2Type::G2 => (vec![(0, 1), (1, 1), (3, 2), (2, 1), (3, 1), (1, 0)], [[2, -3], [-3, 6]]),
        };
        Self {
            kind,
            rules,
            roots: roots.into_iter().map(|(a, b)| Root(vec![a, b])).collect(),
            gram,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn kind(&self) -> Rank2Type {
        self.kind
    }

    pub fn rule_set(&self) -> RuleSet {
        self.rules
    }

    /// Positive roots in the convex order.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn position(&self, r: &Root) -> Option<usize> {
        self.roots.iter().position(|x| x == r)
    }

    /// Position of a root given by its digit label (`"a112"` or `"112"`).
    pub fn position_of_label(&self, label: &str) -> Result<usize, Error> {
        let want = if label.starts_with('a') { label.to_string() } else { format!("a{label}") };
        self.roots
            .iter()
            .position(|r| r.label() == want)
            .ok_or_else(|| Error::Domain(format!("{label} is not a positive root of {}", self.kind)))
    }

    /// Normal monomial from `(label, exponent)` pairs in convex order.
    pub fn monomial(&self, factors: &[(&str, u32)]) -> Result<PbwMonomial, Error> {
        let mut m = Vec::new();
        for (l, e) in factors {
            m.push((self.position_of_label(l)?, *e));
        }
        let m = PbwMonomial(m);
        if !m.is_normal() {
            return Err(Error::Domain("monomial is not in normal order".into()));
        }
        Ok(m)
    }

    pub fn pairing(&self, a: &Root, b: &Root) -> i64 {
        let mut s = 0;
        for i in 0..2 {
            for j in 0..2 {
                s += a.0[i] * self.gram[i][j] * b.0[j];
            }
        }
        s
    }

    /// `d` of the root at position `p`.
    pub fn d_at(&self, p: usize) -> i64 {
        self.pairing(&self.roots[p], &self.roots[p]) / 2
    }

    /// `Sum r * root` over the factors of a monomial.
    pub fn weight(&self, m: &PbwMonomial) -> Root {
        let mut w = Root(vec![0, 0]);
        for &(p, r) in &m.0 {
            w = w.add(&self.roots[p].scale(r as i64));
        }
        w
    }

    fn pair_at(&self, a: usize, b: usize) -> i64 {
        self.pairing(&self.roots[a], &self.roots[b])
    }

    /// Pairs (later, earlier) of positions that q-commute.
    fn q_commuting_positions(&self, a: usize, b: usize) -> bool {
        let (hi, lo) = if a > b { (a, b) } else { (b, a) };
        match self.kind {
            Rank2Type::A1xA1 => true,
            Rank2Type::A2 { .. } => matches!((hi, lo), (1, 0) | (2, 1)),
            Rank2Type::B2 => matches!((hi, lo), (1, 0) | (2, 1) | (3, 2)),
            Rank2Type::G2 => matches!(
                (hi, lo),
                (G_12, G_2) | (G_11122, G_12) | (G_112, G_11122) | (G_1112, G_112) | (G_1, G_1112)
            ),
        }
    }

    /// Pretty form such as `E2^(2) E12 E1`.
    pub fn render_monomial(&self, m: &PbwMonomial) -> String {
        if m.0.is_empty() {
            return "1".to_string();
        }
        m.0.iter()
            .map(|&(p, r)| {
                let name = &self.roots[p].label()[1..];
                if r == 1 {
                    format!("E{name}")
                } else {
                    format!("E{name}^({r})")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn render<C: Coefficient>(&self, e: &PbwExpression<C>) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        e.terms()
            .map(|(m, c)| format!("({c})*{}", self.render_monomial(m)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn rhs_to_expr(rhs: Rhs) -> Expr {
        Expr::from_terms(rhs.into_iter().map(|(c, f)| (mono(&f), c)))
    }

    /// Encoded rule for `E_a^(x) E_b^(y)`, `a` later than `b`.
    fn rule(&self, a: usize, x: u32, b: usize, y: u32) -> Option<Expr> {
        let elementary_only = self.rules == RuleSet::Elementary;
        let (k, kp) = (x as i64, y as i64);
        match self.kind {
            Rank2Type::A1xA1 => None,
            Rank2Type::A2 { d } => {
                if (a, b) != (2, 0) || (elementary_only && (x, y) != (1, 1)) {
                    return None;
                }
                let mut rhs: Rhs = Vec::new();
                for s in 0..=k.min(kp) {
                    let (r, t) = (kp - s, k - s);
                    rhs.push((qp(d * (t * r + s)), vec![(0, r as u32), (1, s as u32), (2, t as u32)]));
                }
                Some(Self::rhs_to_expr(rhs))
            }
            Rank2Type::B2 => {
                if elementary_only && (x, y) != (1, 1) {
                    return None;
                }
                let mut rhs: Rhs = Vec::new();
                match (a, b) {
                    (3, 0) => {
                        for r in 0..=kp {
                            for s in 0..=kp - r {
                                let t = kp - r - s;
                                let u = k - s - 2 * t;
                                if u < 0 {
                                    continue;
                                }
                                let e = 2 * r * u + 2 * r * t + u * s + 2 * s + 2 * t;
                                rhs.push((qp(e), vec![(0, r as u32), (1, s as u32), (2, t as u32), (3, u as u32)]));
                            }
                        }
                    }
                    (2, 0) => {
                        let mut prod = LaurentPoly::one();
                        for s in 0..=k.min(kp) {
                            if s > 0 {
                                prod = &prod * &lp(&[(2 - 4 * s, 1), (0, -1)]);
                            }
                            let (r, t) = (kp - s, k - s);
                            let c = &qp(-2 * s * r - 2 * s * t + 2 * s) * &prod;
                            rhs.push((c, vec![(0, r as u32), (1, 2 * s as u32), (2, t as u32)]));
                        }
                    }
                    (3, 1) => {
                        let mut prod = LaurentPoly::one();
                        for s in 0..=k.min(kp) {
                            if s > 0 {
                                prod = &prod * &lp(&[(0, 1), (-2 * s, 1)]);
                            }
                            let (r, t) = (kp - s, k - s);
                            let c = &qp(-s * r - s * t + s) * &prod;
                            rhs.push((c, vec![(1, r as u32), (2, s as u32), (3, t as u32)]));
                        }
                    }
                    _ => return None,
                }
                Some(Self::rhs_to_expr(rhs))
            }
            Rank2Type::G2 => self.g2_rule(a, x, b, y).map(Self::rhs_to_expr),
        }
    }

    fn g2_rule(&self, a: usize, x: u32, b: usize, y: u32) -> Option<Rhs> {
        let quoted = self.rules != RuleSet::Elementary;
        let elementary = self.rules != RuleSet::QuotedOnly;
        let q3 = q_int(3, 1);
        let q2 = q_int(2, 1);
        let elem: Option<Rhs> = match (a, x, b, y) {
            (G_1, 1, G_2, 1) => Some(vec![(qp(3), vec![(G_2, 1), (G_1, 1)]), (qp(3), vec![(G_12, 1)])]),
            (G_1, 1, G_12, 1) => Some(vec![(qp(1), vec![(G_12, 1), (G_1, 1)]), (&qp(1) * &q2, vec![(G_112, 1)])]),
            (G_1, 1, G_112, 1) => Some(vec![(qp(-1), vec![(G_112, 1), (G_1, 1)]), (&qp(-1) * &q3, vec![(G_1112, 1)])]),
            (G_11122, 1, G_2, 1) => Some(vec![
                (qp(-3), vec![(G_2, 1), (G_11122, 1)]),
                (&qp(-3) * &(&lp(&[(2, 1), (0, -1)]) * &lp(&[(4, 1), (0, -1)])), vec![(G_12, 3)]),
            ]),
            (G_1112, 1, G_2, 1) => Some(vec![
                (qp(3), vec![(G_2, 1), (G_1112, 1)]),
                (lp(&[(4, -1), (2, -1), (0, 1)]), vec![(G_11122, 1)]),
                (lp(&[(2, 1), (4, -1)]), vec![(G_12, 1), (G_112, 1)]),
            ]),
            _ => None,
        };
        if let Some(r) = elem {
            // these five are also quoted instances
            return Some(r);
        }
        if elementary {
            let supplement: Option<Rhs> = match (a, x, b, y) {
                (G_112, 1, G_2, 1) => Some(vec![(qp(0), vec![(G_2, 1), (G_112, 1)]), (lp(&[(-1, 1), (3, -1)]), vec![(G_12, 2)])]),
                (G_112, 1, G_12, 1) => Some(vec![(qp(-1), vec![(G_12, 1), (G_112, 1)]), (&qp(-1) * &q3, vec![(G_11122, 1)])]),
                (G_1112, 1, G_12, 1) => Some(vec![(qp(0), vec![(G_12, 1), (G_1112, 1)]), (lp(&[(-1, 1), (3, -1)]), vec![(G_112, 2)])]),
                (G_1112, 1, G_11122, 1) => Some(vec![
                    (qp(-3), vec![(G_11122, 1), (G_1112, 1)]),
                    (&qp(-3) * &(&lp(&[(2, 1), (0, -1)]) * &lp(&[(4, 1), (0, -1)])), vec![(G_112, 3)]),
                ]),
                (G_1, 1, G_11122, 1) => Some(vec![(qp(0), vec![(G_11122, 1), (G_1, 1)]), (lp(&[(-1, 1), (3, -1)]), vec![(G_112, 2)])]),
                _ => None,
            };
            if supplement.is_some() {
                return supplement;
            }
        }
        if !quoted {
            return None;
        }
        match (a, x, b, y) {
            (G_1, 1, G_2, 2) => Some(vec![(qp(6), vec![(G_2, 2), (G_1, 1)]), (qp(3), vec![(G_2, 1), (G_12, 1)])]),
            (G_1, 1, G_12, 2) => Some(vec![
                (qp(2), vec![(G_12, 2), (G_1, 1)]),
                (&q2 * &qp(1), vec![(G_12, 1), (G_112, 1)]),
                (q3, vec![(G_11122, 1)]),
            ]),
            (G_1, 1, G_12, 3) => Some(vec![
                (qp(3), vec![(G_12, 3), (G_1, 1)]),
                (&q2 * &qp(1), vec![(G_12, 2), (G_112, 1)]),
                (&q3 * &qp(-1), vec![(G_12, 1), (G_11122, 1)]),
            ]),
            (G_1, 1, G_112, 2) => Some(vec![(qp(-2), vec![(G_112, 2), (G_1, 1)]), (&qp(-3) * &q3, vec![(G_112, 1), (G_1112, 1)])]),
            (G_1, 2, G_2, 1) => Some(vec![
                (qp(6), vec![(G_2, 1), (G_1, 2)]),
                (qp(5), vec![(G_12, 1), (G_1, 1)]),
                (qp(4), vec![(G_112, 1)]),
            ]),
            (G_1, 3, G_2, 1) => Some(vec![
                (qp(9), vec![(G_2, 1), (G_1, 3)]),
                (qp(7), vec![(G_12, 1), (G_1, 2)]),
                (qp(5), vec![(G_112, 1), (G_1, 1)]),
                (qp(3), vec![(G_1112, 1)]),
            ]),
            (G_1, 1, G_11122, 2) => Some(vec![
                (qp(0), vec![(G_11122, 2), (G_1, 1)]),
                (&qp(-4) * &lp(&[(0, 1), (4, -1)]), vec![(G_11122, 1), (G_112, 2)]),
            ]),
            (G_112, 2, G_2, 1) => Some(vec![
                (qp(0), vec![(G_2, 1), (G_112, 2)]),
                (&qp(-2) * &lp(&[(-3, 1), (3, -1)]), vec![(G_12, 1), (G_11122, 1)]),
                (&q2 * &lp(&[(-1, 1), (1, -1)]), vec![(G_12, 2), (G_112, 1)]),
            ]),
            (G_112, 3, G_2, 1) => Some(vec![
                (qp(0), vec![(G_2, 1), (G_112, 3)]),
                (&qp(-4) * &lp(&[(-3, 1), (3, -1)]), vec![(G_12, 1), (G_11122, 1), (G_112, 1)]),
                (&qp(-3) * &lp(&[(-6, 1), (6, -1)]), vec![(G_11122, 2)]),
                (&qp(-1) * &lp(&[(-2, 1), (2, -1)]), vec![(G_12, 2), (G_112, 2)]),
            ]),
            _ => None,
        }
    }

    fn describe(&self, a: usize, x: u32, b: usize, y: u32) -> String {
        let f = |p: usize, e: u32| self.render_monomial(&PbwMonomial(vec![(p, e)]));
        format!("{} {} in {} ({:?} rules)", f(a, x), f(b, y), self.kind, self.rules)
    }

    /// Normal form of `E_a^(x) E_b^(y)` for positions `a > b`.
    fn mul_pair(&self, a: usize, x: u32, b: usize, y: u32) -> Result<Expr, Error> {
        let key = (a, x, b, y);
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let out = if self.q_commuting_positions(a, b) {
            let e = -self.pair_at(a, b) * x as i64 * y as i64;
            Expr::term(mono(&[(b, y), (a, x)]), qp(e))
        } else if let Some(r) = self.rule(a, x, b, y) {
            r
        } else if y > 1 {
            let head = self.mul_pair(a, x, b, y - 1)?;
            let mut acc = Expr::zero();
            for (m, c) in head.terms() {
                acc = acc.add(&self.mul_factor(m, b, 1)?.scale(c));
            }
            let d = q_int(y as i64, self.d_at(b));
            acc.div_exact(&d)
                .ok_or_else(|| Error::Inexact(format!("splitting {}", self.describe(a, x, b, y))))?
        } else if x > 1 {
            let tail = self.mul_pair(a, x - 1, b, y)?;
            let mut acc = Expr::zero();
            let left = PbwMonomial(vec![(a, 1)]);
            for (m, c) in tail.terms() {
                acc = acc.add(&self.mul_monomials(&left, m)?.scale(c));
            }
            let d = q_int(x as i64, self.d_at(a));
            acc.div_exact(&d)
                .ok_or_else(|| Error::Inexact(format!("splitting {}", self.describe(a, x, b, y))))?
        } else {
            return Err(Error::RuleGap(format!("no rule for {}", self.describe(a, x, b, y))));
        };
        self.memo.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// Normal form of `m * E_b^(y)` for a normal monomial `m`.
    fn mul_factor(&self, m: &PbwMonomial, b: usize, y: u32) -> Result<Expr, Error> {
        let Some((&(a, x), prefix)) = m.0.split_last() else {
            return Ok(Expr::term(mono(&[(b, y)]), LaurentPoly::one()));
        };
        let prefix = PbwMonomial(prefix.to_vec());
        if a == b {
            let c = q_binomial(x + y, x, self.d_at(a))?;
            let mut f = prefix.0;
            f.push((a, x + y));
            return Ok(Expr::term(PbwMonomial(f), c));
        }
        if a < b {
            let mut f = m.0.clone();
            f.push((b, y));
            return Ok(Expr::term(PbwMonomial(f), LaurentPoly::one()));
        }
        let swapped = self.mul_pair(a, x, b, y)?;
        let mut acc = Expr::zero();
        for (n, c) in swapped.terms() {
            acc = acc.add(&self.mul_monomials(&prefix, n)?.scale(c));
        }
        Ok(acc)
    }

    /// Normal form of the product of two normal monomials.
    pub fn mul_monomials(&self, left: &PbwMonomial, right: &PbwMonomial) -> Result<Expr, Error> {
        let mut acc = Expr::term(left.clone(), LaurentPoly::one());
        for &(b, y) in &right.0 {
            let mut next = Expr::zero();
            for (m, c) in acc.terms() {
                next = next.add(&self.mul_factor(m, b, y)?.scale(c));
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Normal form of a product of two expressions.
    pub fn mul(&self, x: &Expr, y: &Expr) -> Result<Expr, Error> {
        let mut acc = Expr::zero();
        for (m, c) in x.terms() {
            for (n, d) in y.terms() {
                acc = acc.add(&self.mul_monomials(m, n)?.scale(&(c * d)));
            }
        }
        Ok(acc)
    }

    /// Normal form of a word of divided powers given by positions.
    pub fn straighten_positions(&self, word: &[(usize, u32)]) -> Result<Expr, Error> {
        if let Some(&(p, _)) = word.iter().find(|f| f.0 >= self.roots.len()) {
            return Err(Error::Domain(format!("position {p} out of range for {}", self.kind)));
        }
        let mut acc = Expr::term(PbwMonomial::one(), LaurentPoly::one());
        for &(b, y) in word {
            if y == 0 {
                continue;
            }
            let mut next = Expr::zero();
            for (m, c) in acc.terms() {
                next = next.add(&self.mul_factor(m, b, y)?.scale(c));
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Normal form of a word of divided powers `E_r1^(e1) E_r2^(e2) ...`.
    pub fn straighten(&self, word: &[(Root, u32)]) -> Result<Expr, Error> {
        let mut w = Vec::with_capacity(word.len());
        for (r, e) in word {
            let p = self.position(r).ok_or_else(|| Error::Domain(format!("{r} is not a positive root of {}", self.kind)))?;
            w.push((p, *e));
        }
        self.straighten_positions(&w)
    }

    /// `E_a^(x) E_b^(y) - q^((a,b) x y) E_b^(y) E_a^(x)` in normal form.
    pub fn commutator(&self, a: &Root, x: u32, b: &Root, y: u32) -> Result<Expr, Error> {
        let left = self.straighten(&[(a.clone(), x), (b.clone(), y)])?;
        let right = self.straighten(&[(b.clone(), y), (a.clone(), x)])?;
        let e = self.pairing(a, b) * x as i64 * y as i64;
        Ok(left.sub(&right.scale(&qp(e))))
    }

    /// `l_a` of the root at position `p`.
    pub fn ell_at(&self, p: usize, ell: u64) -> u64 {
        ell_alpha(ell, self.d_at(p))
    }

    /// Drop every monomial with a factor `E_a^(k)` where `l_a` does not
    /// divide `k`; these lie in the ideal generated by the augmentation
    /// ideal of the small quantum group.
    pub fn project_specialized(&self, e: &PbwExpression<CycloNum>, ell: u64) -> PbwExpression<CycloNum> {
        e.retain(|m| m.0.iter().all(|&(p, k)| k as u64 % self.ell_at(p, ell) == 0))
    }

    /// Specialize at a primitive `l`-th root of unity and project to the
    /// Frobenius quotient.
    pub fn frobenius_project(&self, e: &Expr, ell: u64) -> PbwExpression<CycloNum> {
        self.project_specialized(&e.specialize(ell), ell)
    }

    /// The commutator specialized at `l` but not projected.
    pub fn bracket_unprojected(&self, a: &Root, x: u32, b: &Root, y: u32, ell: u64) -> Result<PbwExpression<CycloNum>, Error> {
        Ok(self.commutator(a, x, b, y)?.specialize(ell))
    }

    /// The commutator in the Frobenius quotient at `l`.
    pub fn bracket(&self, a: &Root, x: u32, b: &Root, y: u32, ell: u64) -> Result<PbwExpression<CycloNum>, Error> {
        Ok(self.frobenius_project(&self.commutator(a, x, b, y)?, ell))
    }

    /// Exponent `(a, b)` if `E_a E_b = q^((a,b)) E_b E_a` for the positive
    /// roots `a` (earlier) and `b` (later), `None` otherwise.
    pub fn q_commute_rule(&self, a: &Root, b: &Root) -> Option<i64> {
        let (pa, pb) = (self.position(a)?, self.position(b)?);
        if pa == pb || !self.q_commuting_positions(pa, pb) {
            return None;
        }
        Some(self.pairing(a, b))
    }
}

/// `E^(r) E^(s) = [r+s choose r]_{q^d} E^(r+s)`.
pub fn same_root_merge(r: u32, s: u32, d: i64) -> LaurentPoly {
    q_binomial(r + s, r, d).expect("r <= r + s")
}

/// Coefficients `(b, q^(d b (k-b)))` of `E^(k-b) (x) E^(b)` in the coproduct
/// of `E^(k)` in the braided tensor product.
pub fn divided_power_coproduct(k: u32, d: i64) -> Vec<(u32, LaurentPoly)> {
    (0..=k).map(|b| (b, qp(d * b as i64 * (k - b) as i64))).collect()
}
