//! Quantum shuffle model of the positive part at a generic value of `q`.
//!
//! The positive part embeds into the quantum shuffle algebra on the simple
//! root letters, so identities between PBW expressions can be checked by
//! evaluating both sides as linear combinations of words. Root vectors are
//! built directly from the generators, independently of the rewriting
//! tables of the straightening engine. Arithmetic is modulo the prime
//! `2^61 - 1`, with `q` a fixed element of large multiplicative order, so a
//! polynomial identity of moderate degree that holds at this point holds
//! with overwhelming probability.

#![allow(dead_code)]

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use qfrob::cyclo::LaurentPoly;
use qfrob::pbw2::{PbwAlgebra2, PbwExpression, PbwMonomial, Rank2Type};

const P: u64 = (1 << 61) - 1;

/// Element of the prime field of order `2^61 - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Q(pub u64);

impl Q {
    pub fn zero() -> Q {
        Q(0)
    }

    pub fn one() -> Q {
        Q(1)
    }

    pub fn from_i64(x: i64) -> Q {
        Q(x.rem_euclid(P as i64) as u64)
    }

    pub fn from_big(x: &BigInt) -> Q {
        let r = x % BigInt::from(P);
        Q::from_i64(r.to_i64().expect("reduced below the modulus"))
    }

    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }

    pub fn pow(self, mut e: u64) -> Q {
        let mut base = self;
        let mut acc = Q::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn recip(self) -> Q {
        assert!(!self.is_zero(), "division by zero in the shuffle model");
        self.pow(P - 2)
    }
}

impl Add for Q {
    type Output = Q;
    fn add(self, o: Q) -> Q {
        Q((self.0 + o.0) % P)
    }
}

impl Sub for Q {
    type Output = Q;
    fn sub(self, o: Q) -> Q {
        Q((self.0 + P - o.0) % P)
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q((P - self.0) % P)
    }
}

impl Mul for Q {
    type Output = Q;
    fn mul(self, o: Q) -> Q {
        Q(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

/// Evaluate a Laurent polynomial at `q`.
pub fn eval(p: &LaurentPoly, q: Q) -> Q {
    p.terms().fold(Q::zero(), |acc, (e, c)| acc + Q::from_big(c) * qpow(&q, e))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sh(pub BTreeMap<Vec<u8>, Q>);

pub fn qpow(q: &Q, e: i64) -> Q {
    if e >= 0 {
        q.pow(e as u64)
    } else {
        q.recip().pow((-e) as u64)
    }
}

/// Symmetric q-integer `[n]_{q^d}`.
pub fn qint(q: &Q, n: i64, d: i64) -> Q {
    (0..n).fold(Q::zero(), |s, k| s + qpow(q, d * (n - 1 - 2 * k)))
}

pub fn qfact(q: &Q, n: u32, d: i64) -> Q {
    (1..=n as i64).fold(Q::one(), |acc, k| acc * qint(q, k, d))
}

impl Sh {
    pub fn zero() -> Self {
        Sh(BTreeMap::new())
    }

    pub fn one() -> Self {
        Sh(BTreeMap::from([(Vec::new(), Q::one())]))
    }

    pub fn letter(i: u8) -> Self {
        Sh(BTreeMap::from([(vec![i], Q::one())]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_word(&mut self, w: Vec<u8>, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() = *o.get() + c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, o: &Sh) -> Sh {
        let mut out = self.clone();
        for (w, c) in &o.0 {
            out.add_word(w.clone(), *c);
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Sh {
        let mut out = Sh::zero();
        for (w, x) in &self.0 {
            out.add_word(w.clone(), *x * *c);
        }
        out
    }

    pub fn sub(&self, o: &Sh) -> Sh {
        self.add(&o.scale(&-Q::one()))
    }
}

/// Shuffle algebra of a rank two Cartan datum evaluated at `q`.
pub struct ShuffleModel {
    pub q: Q,
    pub gram: [[i64; 2]; 2],
    /// Root vectors in the convex order of the engine.
    pub roots: Vec<Sh>,
    pub d: Vec<i64>,
}

impl ShuffleModel {
    /// Quantum shuffle product: a letter of `v` jumping over a letter `a`
    /// of `u` contributes `q^(-(a, b))`.
    pub fn mul(&self, u: &Sh, v: &Sh) -> Sh {
        let mut memo: BTreeMap<(Vec<u8>, Vec<u8>), Vec<(Vec<u8>, i64)>> = BTreeMap::new();
        let mut out = Sh::zero();
        for (a, x) in &u.0 {
            for (b, y) in &v.0 {
                let key = (a.clone(), b.clone());
                let terms = memo.entry(key).or_insert_with(|| self.shuffle_words(a, b)).clone();
                let xy = *x * *y;
                for (w, e) in terms {
                    out.add_word(w, xy * qpow(&self.q, e));
                }
            }
        }
        out
    }

    fn shuffle_words(&self, a: &[u8], b: &[u8]) -> Vec<(Vec<u8>, i64)> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(a.len() + b.len());
        self.rec(a, b, 0, &mut cur, &mut out);
        out
    }

    fn rec(&self, a: &[u8], b: &[u8], e: i64, cur: &mut Vec<u8>, out: &mut Vec<(Vec<u8>, i64)>) {
        if a.is_empty() && b.is_empty() {
            out.push((cur.clone(), e));
            return;
        }
        if let Some((&x, rest)) = a.split_first() {
            cur.push(x);
            self.rec(rest, b, e, cur, out);
            cur.pop();
        }
        if let Some((&y, rest)) = b.split_first() {
            // y moves in front of every remaining letter of a
            let jump: i64 = a.iter().map(|&x| self.gram[x as usize][y as usize]).sum();
            cur.push(y);
            self.rec(a, rest, e - jump, cur, out);
            cur.pop();
        }
    }

    pub fn mul_all(&self, xs: &[Sh]) -> Sh {
        xs.iter().fold(Sh::one(), |acc, x| self.mul(&acc, x))
    }

    pub fn pow(&self, x: &Sh, n: u32) -> Sh {
        (0..n).fold(Sh::one(), |acc, _| self.mul(&acc, x))
    }

    pub fn divided(&self, pos: usize, n: u32) -> Sh {
        self.pow(&self.roots[pos], n).scale(&qfact(&self.q, n, self.d[pos]).recip())
    }

    pub fn monomial(&self, m: &PbwMonomial) -> Sh {
        let parts: Vec<Sh> = m.factors().iter().map(|&(p, r)| self.divided(p, r)).collect();
        self.mul_all(&parts)
    }

    pub fn expression(&self, e: &PbwExpression<LaurentPoly>) -> Sh {
        let mut out = Sh::zero();
        for (m, c) in e.terms() {
            out = out.add(&self.monomial(m).scale(&eval(c, self.q)));
        }
        out
    }

    pub fn new(kind: Rank2Type, q: Q) -> Self {
        let e1 = Sh::letter(0);
        let e2 = Sh::letter(1);
        let (gram, d) = match kind {
            Rank2Type::A1xA1 => ([[2, 0], [0, 2]], vec![1, 1]),
            Rank2Type::A2 { d } => ([[2 * d, -d], [-d, 2 * d]], vec![d, d, d]),
            Rank2Type::B2 => ([[2, -2], [-2, 4]], vec![2, 1, 2, 1]),
            Rank2Type::G2 => ([[2, -3], [-3, 6]], vec![3, 1, 3, 1, 3, 1]),
        };
        let mut m = ShuffleModel { q, gram, roots: Vec::new(), d };
        let p = |e: i64| qpow(&q, e);
        let roots = match kind {
            Rank2Type::A1xA1 => vec![e2, e1],
            Rank2Type::A2 { d } => {
                let e12 = m.mul(&e1, &e2).scale(&p(-d)).sub(&m.mul(&e2, &e1));
                vec![e2, e12, e1]
            }
            Rank2Type::B2 => {
                let e12 = m.mul(&e1, &e2).scale(&p(-2)).sub(&m.mul(&e2, &e1));
                let e112 = m.mul(&e1, &e12).sub(&m.mul(&e12, &e1)).scale(&qint(&q, 2, 1).recip());
                vec![e2, e12, e112, e1]
            }
            Rank2Type::G2 => {
                let three = qint(&q, 3, 1).recip();
                let e12 = m.mul(&e1, &e2).scale(&p(-3)).sub(&m.mul(&e2, &e1));
                let e112 = m.mul(&e1, &e12).sub(&m.mul(&e12, &e1).scale(&p(1))).scale(&(p(1) * qint(&q, 2, 1)).recip());
                let e1112 = m.mul(&e1, &e112).scale(&p(1)).sub(&m.mul(&e112, &e1)).scale(&three);
                let e11122 = m.mul(&e112, &e12).scale(&p(1)).sub(&m.mul(&e12, &e112)).scale(&three);
                vec![e2, e12, e11122, e112, e1112, e1]
            }
        };
        m.roots = roots;
        m
    }

    /// The model and the engine assign the same lengths to the roots.
    pub fn check_lengths(&self, alg: &PbwAlgebra2) -> bool {
        (0..self.roots.len()).all(|p| alg.d_at(p) == self.d[p])
    }
}

/// Generic evaluation points used for identity checks.
pub fn sample_points() -> Vec<Q> {
    vec![Q(1_234_567_891), Q(987_654_321_987), Q::from_i64(-31_415_926_535)]
}
