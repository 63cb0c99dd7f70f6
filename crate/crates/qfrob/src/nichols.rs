//! Diagonal braidings attached to sets of roots, recognition of their Cartan
//! type, dimensions of the associated Nichols algebras, and the classifier
//! for positive parts of small quantum groups.
//!
//! Graded dimensions are computed without any structure theory: the degree
//! `n` part of the Nichols algebra is the image of length-`n` words under the
//! pairing with all length-`n` sequences of skew derivations
//! `d_k(w) = sum over positions p with w_p = k of (prod_{s > p} q_{k, w_s}) w\p`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::cyclo::{specialize, CycloField, CycloNum, LaurentPoly};
use crate::lattice::order_of_power;
use crate::rootsys::{recognize_cartan_matrix, symmetrizer, CartanType, Family, Root, RootSystem};
use crate::Error;

/// Diagonal braiding `q_ij = q^(e_ij)` with `q` a primitive `l`-th root of
/// unity; exponents are stored in `0..l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BraidingMatrix {
    ell: u64,
    exponents: Vec<Vec<i64>>,
}

impl BraidingMatrix {
    pub fn new(ell: u64, exponents: Vec<Vec<i64>>) -> Self {
        assert!(ell >= 1, "ell must be positive");
        let l = ell as i64;
        let exponents = exponents.into_iter().map(|row| row.into_iter().map(|e| e.rem_euclid(l)).collect()).collect();
        Self { ell, exponents }
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn size(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[Vec<i64>] {
        &self.exponents
    }

    pub fn exponent(&self, i: usize, j: usize) -> i64 {
        self.exponents[i][j]
    }

    pub fn q(&self, i: usize, j: usize) -> CycloNum {
        CycloNum::q_pow(self.ell, self.exponents[i][j])
    }

    /// Exponent of the bicharacter on degrees `x`, `y` in `Z^size`.
    pub fn bicharacter(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut e = 0;
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                e += xi * yj * self.exponents[i][j];
            }
        }
        e.rem_euclid(self.ell as i64)
    }

    /// The same braiding with `q` replaced by `q^-1`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.ell, self.exponents.iter().map(|r| r.iter().map(|e| -e).collect()).collect())
    }
}

/// `e_ij = (x_i, x_j) mod l`.
pub fn braiding_from_roots(rs: &RootSystem, x: &[Root], ell: u64) -> Result<BraidingMatrix, Error> {
    if x.is_empty() {
        return Err(Error::Domain("braiding_from_roots needs a nonempty set".into()));
    }
    if let Some(bad) = x.iter().find(|r| !rs.is_root(r)) {
        return Err(Error::Domain(format!("{bad} is not a root of {}", rs.ctype())));
    }
    let e = x.iter().map(|a| x.iter().map(|b| rs.pairing(a, b)).collect()).collect();
    Ok(BraidingMatrix::new(ell, e))
}

/// How a braiding of recognized Cartan type compares with the standard one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parameter {
    /// `e_ij = d_i a_ij`.
    Standard,
    /// `e_ij = -d_i a_ij`, the standard braiding at `q^-1`.
    Conjugate,
    /// Neither.
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Recognition {
    /// Generalized Cartan matrix in the order of the generators.
    pub cartan: Vec<Vec<i64>>,
    pub ctype: CartanType,
    pub parameter: Parameter,
}

/// Cartan matrix of a diagonal braiding by
/// `a_ij = -min{ m >= 0 : q_ii^(m+1) = 1 or q_ii^m q_ij q_ji = 1 }`, and its
/// finite type if there is one.
pub fn cartan_recognize(b: &BraidingMatrix) -> Result<Option<Recognition>, Error> {
    let n = b.size();
    let l = b.ell as i64;
    if let Some(i) = (0..n).find(|&i| b.exponents[i][i] == 0) {
        return Err(Error::Domain(format!(
            "q_{i}{i} = 1: the Nichols algebra is infinite dimensional"
        )));
    }
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        let eii = b.exponents[i][i];
        for j in 0..n {
            if i == j {
                continue;
            }
            let mixed = b.exponents[i][j] + b.exponents[j][i];
            let m = (0..l)
                .find(|&m| ((m + 1) * eii) % l == 0 || (m * eii + mixed) % l == 0)
                .expect("q_ii has finite order");
            a[i][j] = -m;
        }
    }
    let Some(ctype) = recognize_cartan_matrix(&a) else {
        return Ok(None);
    };
    let d = symmetrizer(&a).expect("finite type matrices are symmetrizable");
    let agrees = |sign: i64| (0..n).all(|i| (0..n).all(|j| (b.exponents[i][j] - sign * d[i] * a[i][j]).rem_euclid(l) == 0));
    let parameter = if agrees(1) {
        Parameter::Standard
    } else if agrees(-1) {
        Parameter::Conjugate
    } else {
        Parameter::Other
    };
    Ok(Some(Recognition { cartan: a, ctype, parameter }))
}

/// Positive roots of the recognized system in generator coordinates, with
/// the order of their self-braiding `q^(b, b)`.
pub fn root_orders(b: &BraidingMatrix, rec: &Recognition) -> Result<Vec<(Root, u64)>, Error> {
    let rs = RootSystem::from_cartan_matrix(rec.cartan.clone())?;
    Ok(rs
        .positive_roots()
        .iter()
        .map(|r| (r.clone(), order_of_power(b.ell, b.bicharacter(&r.0, &r.0))))
        .collect())
}

/// Product formula: the product of the self-braiding orders over positive
/// roots.
pub fn nichols_dimension(orders: &[u64]) -> BigUint {
    orders.iter().map(|&o| BigUint::from(o)).product()
}

/// Hilbert series `prod (1 + t^h + ... + t^((N-1)h))` over positive roots of
/// height `h` and self-braiding order `N`, as a coefficient list.
pub fn hilbert_series(orders: &[(Root, u64)]) -> Vec<BigUint> {
    let mut series = vec![BigUint::one()];
    for (r, n) in orders {
        let h = r.height() as usize;
        let top = series.len() - 1 + (*n as usize - 1) * h;
        let mut next = vec![BigUint::default(); top + 1];
        for (k, c) in series.iter().enumerate() {
            for j in 0..*n as usize {
                next[k + j * h] += c;
            }
        }
        series = next;
    }
    series
}

/// Default bound on the number of words of a single degree.
pub const DEFAULT_WORD_BOUND: usize = 729;

type GroupRing = Vec<i64>;

fn to_field(v: &GroupRing, ell: u64) -> CycloField {
    let p = LaurentPoly::from_terms(v.iter().enumerate().filter(|(_, c)| **c != 0).map(|(e, c)| (e as i64, *c)));
    specialize(&p, ell).to_field()
}

struct Deriver<'a> {
    b: &'a BraidingMatrix,
    memo: HashMap<Vec<u8>, HashMap<Vec<u8>, GroupRing>>,
}

impl Deriver<'_> {
    /// All iterated derivations of `w` down to the empty word, keyed by the
    /// sequence of letters removed.
    fn all(&mut self, w: &[u8]) -> HashMap<Vec<u8>, GroupRing> {
        if let Some(v) = self.memo.get(w) {
            return v.clone();
        }
        let l = self.b.ell as usize;
        let mut out: HashMap<Vec<u8>, GroupRing> = HashMap::new();
        if w.is_empty() {
            let mut one = vec![0; l];
            one[0] = 1;
            out.insert(Vec::new(), one);
        } else {
            for p in 0..w.len() {
                let k = w[p] as usize;
                let shift: i64 = w[p + 1..].iter().map(|&s| self.b.exponents[k][s as usize]).sum();
                let shift = shift.rem_euclid(l as i64) as usize;
                let mut rest = w.to_vec();
                rest.remove(p);
                for (seq, v) in self.all(&rest) {
                    let mut key = Vec::with_capacity(seq.len() + 1);
                    key.push(k as u8);
                    key.extend(seq);
                    let slot = out.entry(key).or_insert_with(|| vec![0; l]);
                    for (e, c) in v.iter().enumerate() {
                        slot[(e + shift) % l] += c;
                    }
                }
            }
        }
        self.memo.insert(w.to_vec(), out.clone());
        out
    }
}

fn rank_over_field(mut m: Vec<Vec<CycloField>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].inv().expect("nonzero pivot");
        for r in rank + 1..rows {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] * &inv;
            for k in c..cols {
                let t = &f * &m[rank][k];
                m[r][k] = &m[r][k] - &t;
            }
        }
        rank += 1;
    }
    rank
}

fn words_with_content(content: &[usize]) -> Vec<Vec<u8>> {
    fn go(content: &mut Vec<usize>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if content.iter().all(|&c| c == 0) {
            out.push(cur.clone());
            return;
        }
        for k in 0..content.len() {
            if content[k] > 0 {
                content[k] -= 1;
                cur.push(k as u8);
                go(content, cur, out);
                cur.pop();
                content[k] += 1;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut content.to_vec(), &mut Vec::new(), &mut out);
    out
}

fn contents(size: usize, n: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in contents(size - 1, n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `dim B(V)_n` as the rank over `Q(zeta_l)` of the pairing between words
/// and derivation sequences, block by block in the `Z^size` grading.
pub fn graded_dimension(b: &BraidingMatrix, n: usize, bound: usize) -> Result<usize, Error> {
    let size = b.size();
    let count = (size as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > bound as u128 {
        return Err(Error::Bound(format!(
            "{size}^{n} words exceed the bound {bound}; use the product formula instead"
        )));
    }
    let mut der = Deriver { b, memo: HashMap::new() };
    let mut total = 0;
    for content in contents(size, n) {
        let words = words_with_content(&content);
        let col_index: HashMap<&Vec<u8>, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let zero = CycloField::zero(b.ell);
        let mut m = vec![vec![zero.clone(); words.len()]; words.len()];
        for (r, w) in words.iter().enumerate() {
            for (seq, v) in der.all(w) {
                m[r][col_index[&seq]] = to_field(&v, b.ell);
            }
        }
        total += rank_over_field(m);
    }
    Ok(total)
}

/// Element of the tensor algebra with cyclotomic coefficients.
pub type TensorElement = BTreeMap<Vec<usize>, CycloNum>;

fn add_term(x: &mut TensorElement, w: Vec<usize>, c: CycloNum) {
    let sum = match x.get(&w) {
        Some(old) => old + &c,
        None => c,
    };
    if sum.is_zero() {
        x.remove(&w);
    } else {
        x.insert(w, sum);
    }
}

pub fn tensor_mul(x: &TensorElement, y: &TensorElement) -> TensorElement {
    let mut out = TensorElement::new();
    for (u, a) in x {
        for (v, c) in y {
            let mut w = u.clone();
            w.extend(v);
            add_term(&mut out, w, a * c);
        }
    }
    out
}

/// Action of the group-like `g_k` on a homogeneous element: `q_{k, deg y}`.
pub fn group_action(b: &BraidingMatrix, k: usize, y: &TensorElement) -> TensorElement {
    y.iter()
        .map(|(w, c)| {
            let e: i64 = w.iter().map(|&s| b.exponents[k][s]).sum();
            (w.clone(), c * &CycloNum::q_pow(b.ell, e))
        })
        .collect()
}

/// The skew derivation `d_k`.
pub fn skew_derivation(b: &BraidingMatrix, k: usize, x: &TensorElement) -> TensorElement {
    let mut out = TensorElement::new();
    for (w, c) in x {
        for p in 0..w.len() {
            if w[p] != k {
                continue;
            }
            let e: i64 = w[p + 1..].iter().map(|&s| b.exponents[k][s]).sum();
            let mut rest = w.clone();
            rest.remove(p);
            add_term(&mut out, rest, c * &CycloNum::q_pow(b.ell, e));
        }
    }
    out
}

/// `1 - q_ij q_ji`; zero exactly when braided commutators of the two
/// primitive generators are again primitive.
pub fn commutator_primitivity_defect(b: &BraidingMatrix, i: usize, j: usize) -> Result<CycloNum, Error> {
    if i == j {
        return Err(Error::Domain("commutator_primitivity_defect needs i != j".into()));
    }
    Ok(&CycloNum::one(b.ell) - &CycloNum::q_pow(b.ell, b.exponents[i][j] + b.exponents[j][i]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SmallCase {
    /// `q^2 = 1`: the positive part is trivial.
    Trivial,
    /// `ord(q^2) > d_a` for all roots: generated by the simple root vectors.
    Generic,
    /// Some long root vectors are not truncated; generated by short roots.
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallQuantumReport {
    pub ell: u64,
    pub case: SmallCase,
    /// The generating set `X`, one primitive generator per element.
    pub generators: Vec<Root>,
    pub braiding: Option<BraidingMatrix>,
    pub g0: CartanType,
    pub conjugate_parameter: bool,
    #[serde(serialize_with = "crate::nichols::ser_biguint")]
    pub plus_dim: BigUint,
}

pub(crate) fn ser_biguint<S: serde::Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn sum_roots(n: usize, idx: &[usize]) -> Root {
    let mut v = vec![0; n];
    for &i in idx {
        v[i] += 1;
    }
    Root(v)
}

/// Generating set for the degenerate orders, where long root vectors fall
/// out of the small quantum group.
fn degenerate_generators(rs: &RootSystem, ell: u64) -> Result<Vec<Root>, Error> {
    let n = rs.rank();
    let family = rs.family().ok_or_else(|| Error::Domain("reducible systems are not classified".into()))?;
    let out = match (family, n, ell) {
        (Family::B | Family::C, 2, 4) => vec![sum_roots(2, &[0]), sum_roots(2, &[0, 1])],
        (Family::B, _, 4) => (0..n).rev().map(|k| sum_roots(n, &(k..n).collect::<Vec<_>>())).collect(),
        (Family::C, _, 4) => {
            let mut x: Vec<Root> = (0..n - 1).map(|i| rs.simple_root(i)).collect();
            x.push(sum_roots(n, &[n - 2, n - 1]));
            x
        }
        (Family::F, 4, 4) => vec![
            sum_roots(4, &[3]),
            sum_roots(4, &[2]),
            sum_roots(4, &[1, 2]),
            sum_roots(4, &[0, 1, 2]),
        ],
        (Family::G, 2, 3 | 6) => vec![Root(vec![1, 0]), Root(vec![1, 1])],
        (Family::G, 2, 4) => vec![Root(vec![0, 1]), Root(vec![1, 0]), Root(vec![2, 1])],
        _ => {
            return Err(Error::Domain(format!(
                "no degenerate generating set for {} at l = {ell}",
                rs.ctype()
            )))
        }
    };
    Ok(out)
}

/// Positive part of the small quantum group of `rs` at a primitive `l`-th
/// root of unity, as a Nichols algebra.
pub fn classify_small_quantum(rs: &RootSystem, ell: u64) -> Result<SmallQuantumReport, Error> {
    let o = ell / num_integer::gcd(ell, 2);
    if o == 1 {
        return Ok(SmallQuantumReport {
            ell,
            case: SmallCase::Trivial,
            generators: Vec::new(),
            braiding: None,
            g0: CartanType::zero(),
            conjugate_parameter: false,
            plus_dim: BigUint::one(),
        });
    }
    let max_d = rs.d().iter().copied().max().unwrap_or(1) as u64;
    let (case, generators) = if o > max_d {
        (SmallCase::Generic, (0..rs.rank()).map(|i| rs.simple_root(i)).collect())
    } else {
        (SmallCase::Degenerate, degenerate_generators(rs, ell)?)
    };
    let b = braiding_from_roots(rs, &generators, ell)?;
    let rec = cartan_recognize(&b)?.ok_or_else(|| {
        Error::Domain(format!("braiding of {} at l = {ell} is not of finite Cartan type", rs.ctype()))
    })?;
    let orders: Vec<u64> = root_orders(&b, &rec)?.into_iter().map(|(_, o)| o).collect();
    Ok(SmallQuantumReport {
        ell,
        case,
        generators,
        conjugate_parameter: rec.parameter == Parameter::Conjugate,
        g0: rec.ctype,
        plus_dim: nichols_dimension(&orders),
        braiding: Some(b),
    })
}
