//! Exact arithmetic in `Z[q, q^-1]` and in `Z[q]/Phi_ell(q)`.
//!
//! [`LaurentPoly`] carries generic coefficients; [`CycloNum`] is the image of
//! a Laurent polynomial once `q` is specialized to a primitive `ell`-th root of
//! unity. [`CycloField`] is the same ring tensored with `Q`, used where
//! division is needed (ranks, unit tests).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::Error;

/// Element of `Z[q, q^-1]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^e`.
    pub fn monomial<T: Into<BigInt>>(c: T, e: i64) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Self { coeffs }
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I, T>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, T)>,
        T: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Substitution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Substitution `q -> q^k`.
    pub fn subs_pow(&self, k: i64) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(e, c)| (e * k, c.clone())))
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale<T: Into<BigInt>>(&self, c: T) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, x)| (*e, x * &c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Value at an arbitrary rational `q`.
    pub fn eval(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.coeffs {
            let p = if *e >= 0 {
                num_traits::pow(q.clone(), *e as usize)
            } else {
                num_traits::pow(q.recip(), (-*e) as usize)
            };
            acc += p * BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`
    /// in `Z[q, q^-1]`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dmin = d.min_exp().unwrap();
        let dmax = d.max_exp().unwrap();
        let lead = d.coeff(dmax);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        // Long division from the top; the remainder must vanish once its
        // span is shorter than that of `d`.
        while let Some(rmax) = rem.max_exp() {
            let rmin = rem.min_exp().unwrap();
            if rmax - rmin < dmax - dmin {
                return None;
            }
            let (c, r) = rem.coeff(rmax).div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            let e = rmax - dmax;
            let t = Self::monomial(c, e);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
owned_ops!(LaurentPoly);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{a}q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{a}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Balanced q-integer `[n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^{-d})`.
pub fn q_int(n: i64, d: i64) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::zero();
    }
    let (sign, n) = if n < 0 { (-1, -n) } else { (1, n) };
    LaurentPoly::from_terms((0..n).map(|j| (d * (n - 1 - 2 * j), sign)))
}

/// `[n]!_{q^d}`.
pub fn q_factorial(n: u32, d: i64) -> LaurentPoly {
    (1..=n as i64).fold(LaurentPoly::one(), |acc, k| &acc * &q_int(k, d))
}

/// Balanced Gaussian binomial `[n choose k]_{q^d}`.
pub fn q_binomial(n: u32, k: u32, d: i64) -> Result<LaurentPoly, Error> {
    if k > n {
        return Err(Error::Domain(format!("q_binomial: k = {k} exceeds n = {n}")));
    }
    // Pascal recursion keeps everything inside Z[q, q^-1].
    let k = k.min(n - k) as usize;
    let mut row = vec![LaurentPoly::one()];
    for m in 1..=n as i64 {
        let mut next = Vec::with_capacity(row.len() + 1);
        for j in 0..=row.len().min(k) {
            let jj = j as i64;
            let left = if j < row.len() {
                row[j].shift(d * jj)
            } else {
                LaurentPoly::zero()
            };
            let right = if j > 0 {
                row[j - 1].shift(-d * (m - jj))
            } else {
                LaurentPoly::zero()
            };
            next.push(&left + &right);
        }
        row = next;
    }
    Ok(row[k].clone())
}

/// Integer polynomial in ascending coefficient order.
pub type IntPoly = Vec<BigInt>;

fn poly_trim(p: &mut IntPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(&mut out);
    out
}

/// Division by a monic polynomial, returning quotient and remainder.
fn poly_divmod_monic(a: &[BigInt], m: &[BigInt]) -> (IntPoly, IntPoly) {
    let dm = m.len() - 1;
    let mut rem: IntPoly = a.to_vec();
    poly_trim(&mut rem);
    if rem.len() <= dm {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dm];
    for i in (dm..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dm] = c.clone();
        for (j, mj) in m.iter().enumerate() {
            rem[i - dm + j] -= &c * mj;
        }
    }
    rem.truncate(dm);
    poly_trim(&mut rem);
    poly_trim(&mut quot);
    (quot, rem)
}

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<IntPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn phi_arc(ell: u64) -> Arc<IntPoly> {
    if let Some(p) = phi_cache().lock().unwrap().get(&ell) {
        return p.clone();
    }
    let mut num: IntPoly = vec![BigInt::zero(); ell as usize + 1];
    num[0] = BigInt::from(-1);
    num[ell as usize] = BigInt::one();
    for d in 1..ell {
        if ell % d == 0 {
            let (q, r) = poly_divmod_monic(&num, &phi_arc(d));
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    let p = Arc::new(num);
    phi_cache().lock().unwrap().insert(ell, p.clone());
    p
}

/// Cyclotomic polynomial `Phi_ell`, ascending coefficients.
pub fn cyclotomic_poly(ell: u64) -> IntPoly {
    assert!(ell >= 1, "cyclotomic_poly: ell must be positive");
    phi_arc(ell).as_ref().clone()
}

/// Euler's totient, the degree of `Phi_ell`.
pub fn totient(ell: u64) -> usize {
    (1..=ell).filter(|k| k.gcd(&ell) == 1).count()
}

/// Element of `Z[q]/Phi_ell(q)`, i.e. of `Z[zeta_ell]`.
#[derive(Clone)]
pub struct CycloNum {
    ell: u64,
    residue: IntPoly,
    modulus: Arc<IntPoly>,
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.ell == other.ell && self.residue == other.residue
    }
}
impl Eq for CycloNum {}

impl std::hash::Hash for CycloNum {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ell.hash(state);
        self.residue.hash(state);
    }
}

impl CycloNum {
    fn reduce(ell: u64, p: &[BigInt]) -> Self {
        let modulus = phi_arc(ell);
        let (_, residue) = poly_divmod_monic(p, &modulus);
        Self {
            ell,
            residue,
            modulus,
        }
    }

    pub fn zero(ell: u64) -> Self {
        Self::reduce(ell, &[])
    }

    pub fn from_int<T: Into<BigInt>>(ell: u64, c: T) -> Self {
        Self::reduce(ell, &[c.into()])
    }

    pub fn one(ell: u64) -> Self {
        Self::from_int(ell, 1)
    }

    /// The root of unity `q^e`, exponent taken mod `ell`.
    pub fn q_pow(ell: u64, e: i64) -> Self {
        let e = e.rem_euclid(ell as i64) as usize;
        let mut p = vec![BigInt::zero(); e + 1];
        p[e] = BigInt::one();
        Self::reduce(ell, &p)
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    /// Canonical residue of degree below `phi(ell)`, ascending.
    pub fn residue(&self) -> &[BigInt] {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.residue.len() == 1 && self.residue[0].is_one()
    }

    /// Rational integer value, if the residue is constant.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.residue.len() {
            0 => Some(BigInt::zero()),
            1 => Some(self.residue[0].clone()),
            _ => None,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.ell);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Invertible in `Q(zeta_ell)`: decided by `gcd(residue, Phi_ell) = 1`
    /// over `Q`.
    pub fn is_unit(&self) -> bool {
        let a: Vec<BigRational> = self.residue.iter().cloned().map(BigRational::from_integer).collect();
        let m: Vec<BigRational> = self.modulus.iter().cloned().map(BigRational::from_integer).collect();
        !a.is_empty() && qpoly_gcd(a, m).len() == 1
    }

    pub fn to_field(&self) -> CycloField {
        CycloField {
            ell: self.ell,
            residue: self.residue.iter().cloned().map(BigRational::from_integer).collect(),
            modulus: self.modulus.clone(),
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.ell, other.ell, "mixing different roots of unity");
    }
}

impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        self.check(rhs);
        let n = self.residue.len().max(rhs.residue.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.residue.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.residue.iter().enumerate() {
            out[i] += c;
        }
        poly_trim(&mut out);
        CycloNum {
            ell: self.ell,
            residue: out,
            modulus: self.modulus.clone(),
        }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            ell: self.ell,
            residue: self.residue.iter().map(|c| -c).collect(),
            modulus: self.modulus.clone(),
        }
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self + &(-rhs)
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        self.check(rhs);
        CycloNum::reduce(self.ell, &poly_mul(&self.residue, &rhs.residue))
    }
}
owned_ops!(CycloNum);

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = LaurentPoly::from_terms(self.residue.iter().enumerate().map(|(i, c)| (i as i64, c.clone())));
        write!(f, "{p}")
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[ell={}]({self})", self.ell)
    }
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Ring homomorphism `Z[q, q^-1] -> Z[zeta_ell]`, `q -> zeta_ell`.
pub fn specialize(p: &LaurentPoly, ell: u64) -> CycloNum {
    let l = ell as i64;
    let mut dense = vec![BigInt::zero(); ell as usize];
    for (e, c) in p.terms() {
        dense[e.rem_euclid(l) as usize] += c;
    }
    CycloNum::reduce(ell, &dense)
}

fn qpoly_trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn qpoly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    qpoly_trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let lead = b[db].clone();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = &rem[i] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i - db + j] -= &c * bj;
        }
        quot[i - db] = c;
    }
    rem.truncate(db);
    qpoly_trim(&mut rem);
    qpoly_trim(&mut quot);
    (quot, rem)
}

fn qpoly_gcd(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    qpoly_trim(&mut a);
    qpoly_trim(&mut b);
    while !b.is_empty() {
        let (_, r) = qpoly_divmod(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Element of `Q(zeta_ell) = Q[q]/Phi_ell(q)`.
#[derive(Clone)]
pub struct CycloField {
    ell: u64,
    residue: Vec<BigRational>,
    modulus: Arc<IntPoly>,
}

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        self.ell == other.ell && self.residue == other.residue
    }
}
impl Eq for CycloField {}

impl CycloField {
    fn reduce(ell: u64, p: Vec<BigRational>, modulus: Arc<IntPoly>) -> Self {
        let m: Vec<BigRational> = modulus.iter().cloned().map(BigRational::from_integer).collect();
        let (_, residue) = qpoly_divmod(&p, &m);
        Self {
            ell,
            residue,
            modulus,
        }
    }

    pub fn zero(ell: u64) -> Self {
        CycloNum::zero(ell).to_field()
    }

    pub fn one(ell: u64) -> Self {
        CycloNum::one(ell).to_field()
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_empty()
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let m: Vec<BigRational> = self.modulus.iter().cloned().map(BigRational::from_integer).collect();
        // Track s with s * self = r (mod m).
        let (mut r0, mut r1) = (m, self.residue.clone());
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (Vec::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (qt, r) = qpoly_divmod(&r0, &r1);
            let prod = qpoly_mul(&qt, &s1);
            let s2 = qpoly_sub(&s0, &prod);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r1.is_empty() {
            return None;
        }
        let c = r1[0].recip();
        let s: Vec<BigRational> = s1.into_iter().map(|x| x * &c).collect();
        Some(Self::reduce(self.ell, s, self.modulus.clone()))
    }
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qpoly_trim(&mut out);
    out
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    qpoly_trim(&mut out);
    out
}

impl Add for &CycloField {
    type Output = CycloField;
    fn add(self, rhs: &CycloField) -> CycloField {
        let n = self.residue.len().max(rhs.residue.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.residue.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.residue.iter().enumerate() {
            out[i] += c;
        }
        qpoly_trim(&mut out);
        CycloField {
            ell: self.ell,
            residue: out,
            modulus: self.modulus.clone(),
        }
    }
}

impl Neg for &CycloField {
    type Output = CycloField;
    fn neg(self) -> CycloField {
        CycloField {
            ell: self.ell,
            residue: self.residue.iter().map(|c| -c).collect(),
            modulus: self.modulus.clone(),
        }
    }
}

impl Sub for &CycloField {
    type Output = CycloField;
    fn sub(self, rhs: &CycloField) -> CycloField {
        self + &(-rhs)
    }
}

impl Mul for &CycloField {
    type Output = CycloField;
    fn mul(self, rhs: &CycloField) -> CycloField {
        CycloField::reduce(self.ell, qpoly_mul(&self.residue, &rhs.residue), self.modulus.clone())
    }
}
owned_ops!(CycloField);

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloField[ell={}]{:?}", self.ell, self.residue)
    }
}
