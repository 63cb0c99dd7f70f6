//! Finite root systems in the simple-root basis, Weyl reflections, orbits of
//! root pairs and simultaneous reflection into parabolic subsystems.
//!
//! Numbering follows Bourbaki, except that `B2` and `C2` are the same datum
//! with `a1` short and `a2` long. Short roots have squared length 2.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family, Error> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::InvalidType(format!("unknown family {other:?}"))),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Canonical Cartan type: a sorted multiset of irreducible components.
///
/// Low-rank coincidences are folded (`D2 = A1xA1`, `D3 = A3`, `C2 = B2`,
/// `B1 = C1 = A1`), so equal types compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    components: Vec<(Family, usize)>,
}

impl CartanType {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(parts: &[(Family, usize)]) -> Self {
        let mut components = Vec::new();
        for &(f, n) in parts {
            match (f, n) {
                (_, 0) => {}
                (Family::B | Family::C, 1) => components.push((Family::A, 1)),
                (Family::C, 2) => components.push((Family::B, 2)),
                (Family::D, 2) => components.extend([(Family::A, 1), (Family::A, 1)]),
                (Family::D, 3) => components.push((Family::A, 3)),
                other => components.push(other),
            }
        }
        components.sort();
        Self { components }
    }

    pub fn irreducible(f: Family, n: usize) -> Self {
        Self::new(&[(f, n)])
    }

    pub fn components(&self) -> &[(Family, usize)] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.1).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Parse labels such as `A3`, `A1^3`, `A1xB2`, `0`.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(Self::zero());
        }
        let mut parts = Vec::new();
        for piece in s.split(['x', '*']) {
            let piece = piece.trim();
            let (base, mult) = match piece.split_once('^') {
                Some((b, m)) => (b, m.parse::<usize>().map_err(|_| Error::InvalidType(s.to_string()))?),
                None => (piece, 1),
            };
            let mut chars = base.chars();
            let f = Family::parse(&chars.next().map(String::from).unwrap_or_default())?;
            let n: usize = chars.as_str().parse().map_err(|_| Error::InvalidType(s.to_string()))?;
            for _ in 0..mult {
                parts.push((f, n));
            }
        }
        Ok(Self::new(&parts))
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let mut groups: Vec<((Family, usize), usize)> = Vec::new();
        for c in &self.components {
            match groups.last_mut() {
                Some((g, m)) if g == c => *m += 1,
                _ => groups.push((*c, 1)),
            }
        }
        let parts: Vec<String> = groups
            .iter()
            .map(|((fam, n), m)| if *m == 1 { format!("{fam}{n}") } else { format!("{fam}{n}^{m}") })
            .collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A root (or any lattice vector) in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Root {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: i64) -> Root {
        Root(self.0.iter().map(|c| c * k).collect())
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.0.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, _)| i).collect()
    }

    /// Digit label: `2a1 + a2` becomes `a112`. Falls back to a coefficient
    /// list above rank 9 or for vectors with mixed signs.
    pub fn label(&self) -> String {
        let (sign, v) = if self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c < 0) {
            ("-", self.neg())
        } else {
            ("", self.clone())
        };
        if v.0.len() <= 9 && v.0.iter().all(|&c| c >= 0) {
            let mut s = String::new();
            for (i, c) in v.0.iter().enumerate() {
                for _ in 0..*c {
                    s.push(char::from_digit(i as u32 + 1, 10).unwrap());
                }
            }
            format!("{sign}a{s}")
        } else {
            format!("{:?}", self.0)
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    ctype: CartanType,
    family: Option<Family>,
    cartan: Vec<Vec<i64>>,
    d: Vec<i64>,
    gram: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    index: HashMap<Root, usize>,
}

fn cartan_block(f: Family, n: usize) -> Result<(Vec<Vec<i64>>, Vec<i64>), Error> {
    let bad = || Error::InvalidType(format!("{f}{n} is not a finite type"));
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    let d: Vec<i64>;
    match f {
        Family::A => {
            if n < 1 {
                return Err(bad());
            }
            for i in 1..n {
                link(&mut a, i - 1, i);
            }
            d = vec![1; n];
        }
        Family::B | Family::C if n == 2 => {
            // a1 short, a2 long
            a[0][1] = -2;
            a[1][0] = -1;
            d = vec![1, 2];
        }
        Family::B => {
            if n < 2 {
                return Err(bad());
            }
            for i in 1..n {
                link(&mut a, i - 1, i);
            }
            a[n - 2][n - 1] = -1;
            a[n - 1][n - 2] = -2;
            d = (0..n).map(|i| if i == n - 1 { 1 } else { 2 }).collect();
        }
        Family::C => {
            if n < 2 {
                return Err(bad());
            }
            for i in 1..n {
                link(&mut a, i - 1, i);
            }
            a[n - 2][n - 1] = -2;
            a[n - 1][n - 2] = -1;
            d = (0..n).map(|i| if i == n - 1 { 2 } else { 1 }).collect();
        }
        Family::D => {
            if n < 3 {
                return Err(bad());
            }
            for i in 1..n - 1 {
                link(&mut a, i - 1, i);
            }
            link(&mut a, n - 3, n - 1);
            d = vec![1; n];
        }
        Family::E => {
            if !(6..=8).contains(&n) {
                return Err(bad());
            }
            link(&mut a, 0, 2);
            link(&mut a, 1, 3);
            for i in 3..n {
                link(&mut a, i - 1, i);
            }
            d = vec![1; n];
        }
        Family::F => {
            if n != 4 {
                return Err(bad());
            }
            link(&mut a, 0, 1);
            link(&mut a, 2, 3);
            a[1][2] = -1;
            a[2][1] = -2;
            d = vec![2, 2, 1, 1];
        }
        Family::G => {
            if n != 2 {
                return Err(bad());
            }
            a[0][1] = -3;
            a[1][0] = -1;
            d = vec![1, 3];
        }
    }
    Ok((a, d))
}

/// Build an irreducible root system.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem, Error> {
    RootSystem::product(&[(family, rank)])
}

impl RootSystem {
    /// Block-diagonal datum for a product of irreducible types, in the order
    /// given (e.g. `[(A,1),(A,1)]` for `A1xA1`).
    pub fn product(parts: &[(Family, usize)]) -> Result<RootSystem, Error> {
        if parts.is_empty() {
            return Err(Error::InvalidType("empty root datum".into()));
        }
        let rank: usize = parts.iter().map(|p| p.1).sum();
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut d = Vec::with_capacity(rank);
        let mut off = 0;
        for &(f, n) in parts {
            let (a, dd) = cartan_block(f, n)?;
            for i in 0..n {
                for j in 0..n {
                    cartan[off + i][off + j] = a[i][j];
                }
            }
            d.extend(dd);
            off += n;
        }
        let family = if parts.len() == 1 { Some(parts[0].0) } else { None };
        Ok(Self::from_cartan(CartanType::new(parts), family, cartan, d))
    }

    pub fn a1xa1() -> RootSystem {
        Self::product(&[(Family::A, 1), (Family::A, 1)]).expect("valid datum")
    }

    fn from_cartan(ctype: CartanType, family: Option<Family>, cartan: Vec<Vec<i64>>, d: Vec<i64>) -> RootSystem {
        let n = cartan.len();
        let gram: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| d[i] * cartan[i][j]).collect()).collect();
        // Positive roots by height via root strings: b + a_i is a root iff
        // p - <b, a_i^v> > 0, where p is the length of the downward string.
        let mut positive: Vec<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
        let mut known: HashSet<Root> = positive.iter().cloned().collect();
        let mut layer = positive.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for b in &layer {
                for i in 0..n {
                    let pairing: i64 = (0..n).map(|j| b.0[j] * gram[j][i]).sum();
                    let coroot = pairing / d[i];
                    let mut p = 0;
                    let mut down = b.clone();
                    loop {
                        down.0[i] -= 1;
                        if known.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    if p - coroot > 0 {
                        let mut up = b.clone();
                        up.0[i] += 1;
                        if known.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            next.sort_by(|x, y| y.0.cmp(&x.0));
            positive.extend(next.iter().cloned());
            layer = next;
        }
        positive.sort_by(|x, y| x.height().cmp(&y.height()).then_with(|| y.0.cmp(&x.0)));
        let mut index = HashMap::new();
        for (k, r) in positive.iter().enumerate() {
            index.insert(r.clone(), k);
        }
        let np = positive.len();
        for (k, r) in positive.iter().enumerate() {
            index.insert(r.neg(), np + k);
        }
        RootSystem {
            ctype,
            family,
            cartan,
            d,
            gram,
            positive_roots: positive,
            index,
        }
    }

    pub fn ctype(&self) -> &CartanType {
        &self.ctype
    }

    /// The family of an irreducible system.
    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn d(&self) -> &[i64] {
        &self.d
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn simple_root(&self, i: usize) -> Root {
        Root::simple(self.rank(), i)
    }

    /// All roots: positive ones first, then their negatives in the same order.
    pub fn all_roots(&self) -> Vec<Root> {
        let mut v = self.positive_roots.clone();
        v.extend(self.positive_roots.iter().map(Root::neg));
        v
    }

    pub fn root_index(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.index.contains_key(r)
    }

    pub fn pairing(&self, b: &Root, c: &Root) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if b.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += b.0[i] * self.gram[i][j] * c.0[j];
            }
        }
        s
    }

    /// `d_b = (b, b) / 2`.
    pub fn d_of(&self, b: &Root) -> i64 {
        self.pairing(b, b) / 2
    }

    /// Simple reflection `s_i`.
    pub fn reflect(&self, i: usize, b: &Root) -> Root {
        let c = self.pairing(b, &self.simple_root(i)) / self.d[i];
        let mut out = b.clone();
        out.0[i] -= c;
        out
    }

    /// The dominant element of the Weyl orbit of a lattice vector.
    pub fn dominant(&self, v: &Root) -> Root {
        let mut v = v.clone();
        while let Some(i) = (0..self.rank()).find(|&i| self.pairing(&v, &self.simple_root(i)) < 0) {
            v = self.reflect(i, &v);
        }
        v
    }

    pub fn reflect_word(&self, word: &[usize], b: &Root) -> Root {
        word.iter().fold(b.clone(), |acc, &i| self.reflect(i, &acc))
    }

    /// Simple reflections as permutations of [`RootSystem::all_roots`].
    pub fn simple_reflection_perms(&self) -> Vec<Vec<u32>> {
        let roots = self.all_roots();
        (0..self.rank())
            .map(|i| roots.iter().map(|r| self.root_index(&self.reflect(i, r)).unwrap() as u32).collect())
            .collect()
    }
}

/// Connected components of the Dynkin graph of a square matrix, each sorted.
pub fn dynkin_components(a: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && (a[i][j] != 0 || a[j][i] != 0) {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort();
        comps.push(comp);
    }
    comps
}

fn matches_under_permutation(a: &[Vec<i64>], idx: &[usize], c: &[Vec<i64>]) -> bool {
    fn extend(a: &[Vec<i64>], idx: &[usize], c: &[Vec<i64>], perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let k = perm.len();
        if k == idx.len() {
            return true;
        }
        for t in 0..c.len() {
            if used[t] {
                continue;
            }
            let ok = (0..k).all(|m| a[idx[k]][idx[m]] == c[t][perm[m]] && a[idx[m]][idx[k]] == c[perm[m]][t])
                && a[idx[k]][idx[k]] == c[t][t];
            if ok {
                perm.push(t);
                used[t] = true;
                if extend(a, idx, c, perm, used) {
                    return true;
                }
                perm.pop();
                used[t] = false;
            }
        }
        false
    }
    extend(a, idx, c, &mut Vec::new(), &mut vec![false; c.len()])
}

/// Finite type of a generalized Cartan matrix, or `None` if some component
/// is not of finite type.
pub fn recognize_cartan_matrix(a: &[Vec<i64>]) -> Option<CartanType> {
    let mut parts = Vec::new();
    for comp in dynkin_components(a) {
        let n = comp.len();
        let candidates: &[Family] = match n {
            1 => &[Family::A],
            2 => &[Family::A, Family::B, Family::G],
            4 => &[Family::A, Family::B, Family::C, Family::D, Family::F],
            6..=8 => &[Family::A, Family::B, Family::C, Family::D, Family::E],
            _ => &[Family::A, Family::B, Family::C, Family::D],
        };
        let found = candidates.iter().find(|&&f| {
            cartan_block(f, n).is_ok_and(|(c, _)| matches_under_permutation(a, &comp, &c))
        })?;
        parts.push((*found, n));
    }
    Some(CartanType::new(&parts))
}

/// Positive integers `d_i`, minimal on each component, with
/// `d_i a_ij = d_j a_ji`. `None` if the matrix is not symmetrizable.
pub fn symmetrizer(a: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = a.len();
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    for comp in dynkin_components(a) {
        d[comp[0]] = Some(rat(1));
        let mut stack = vec![comp[0]];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().unwrap();
            for &j in &comp {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                if a[j][i] == 0 {
                    return None;
                }
                let dj = &di * rat(a[i][j]) / rat(a[j][i]);
                match &d[j] {
                    Some(x) if *x != dj => return None,
                    Some(_) => {}
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                }
            }
        }
        // clear denominators, then divide by the gcd
        let denom_lcm = comp.iter().fold(num_bigint::BigInt::from(1), |acc, &i| {
            num_integer::Integer::lcm(&acc, d[i].as_ref().unwrap().denom())
        });
        let ints: Vec<num_bigint::BigInt> =
            comp.iter().map(|&i| (d[i].clone().unwrap() * BigRational::from_integer(denom_lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(num_bigint::BigInt::from(0), |acc, x| num_integer::Integer::gcd(&acc, x));
        for (k, &i) in comp.iter().enumerate() {
            d[i] = Some(BigRational::from_integer(&ints[k] / &g));
        }
    }
    d.into_iter()
        .map(|x| {
            let v = x?.to_integer();
            i64::try_from(v).ok().filter(|v| *v > 0)
        })
        .collect()
}

impl RootSystem {
    /// Root system of a finite-type generalized Cartan matrix, keeping the
    /// given numbering of simple roots.
    pub fn from_cartan_matrix(a: Vec<Vec<i64>>) -> Result<RootSystem, Error> {
        let ctype = recognize_cartan_matrix(&a).ok_or_else(|| Error::InvalidType(format!("{a:?} is not of finite type")))?;
        let d = symmetrizer(&a).ok_or_else(|| Error::InvalidType(format!("{a:?} is not symmetrizable")))?;
        let family = if ctype.components().len() == 1 { Some(ctype.components()[0].0) } else { None };
        Ok(Self::from_cartan(ctype, family, a, d))
    }
}

/// Default bound on Weyl group enumeration.
pub const WEYL_BOUND: usize = 1_000_000;

/// The Weyl group as permutations of the full root set, by closure of the
/// simple reflections.
pub fn weyl_group(rs: &RootSystem, bound: usize) -> Result<Vec<Vec<u32>>, Error> {
    let gens = rs.simple_reflection_perms();
    let id: Vec<u32> = (0..2 * rs.positive_roots.len() as u32).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(w) = queue.pop_front() {
        for g in &gens {
            let gw: Vec<u32> = w.iter().map(|&k| g[k as usize]).collect();
            if seen.insert(gw.clone()) {
                if seen.len() > bound {
                    return Err(Error::Bound(format!(
                        "Weyl group of {} exceeds {bound} elements; use the canonical-form orbit path",
                        rs.ctype()
                    )));
                }
                queue.push_back(gw);
            }
        }
        out.push(w);
    }
    Ok(out)
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Nonzero rational vector in span{a_j : j in `dims`} orthogonal to every
/// element of `a`, taken from the reduced row echelon form (first free
/// variable set to 1). `None` if the set spans the whole span.
fn orthogonal_vector(rs: &RootSystem, a: &[Root], dims: &[usize]) -> Option<Vec<BigRational>> {
    let cols = dims.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| dims.iter().map(|&j| rat(rs.pairing(&rs.simple_root(j), r))).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..cols {
                    let t = &m[row][c] * &f;
                    m[r][c] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![BigRational::zero(); cols];
    v[free] = rat(1);
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[r][free].clone();
    }
    // expand to full coordinates
    let mut full = vec![BigRational::zero(); rs.rank()];
    for (k, &j) in dims.iter().enumerate() {
        full[j] = v[k].clone();
    }
    Some(full)
}

fn pair_v(rs: &RootSystem, v: &[BigRational], r: &Root) -> BigRational {
    let mut s = BigRational::zero();
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        let p = rs.pairing(&rs.simple_root(i), r);
        s += vi * rat(p);
    }
    s
}

fn reflect_v(rs: &RootSystem, i: usize, v: &[BigRational]) -> Vec<BigRational> {
    let c = pair_v(rs, v, &rs.simple_root(i)) / rat(rs.d[i]);
    let mut out = v.to_vec();
    out[i] -= c;
    out
}

fn dim_span(a: &[Root]) -> usize {
    let cols = a.first().map_or(0, |r| r.0.len());
    let mut m: Vec<Vec<BigRational>> = a.iter().map(|r| r.0.iter().map(|&c| rat(c)).collect()).collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &m[rank][col];
                for c in 0..cols {
                    let t = &m[rank][c] * &f;
                    m[r][c] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Result of [`reflect_set_into_parabolic`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParabolicLanding {
    /// Simple reflections, applied left to right.
    pub word: Vec<usize>,
    pub support: BTreeSet<usize>,
    pub image: Vec<Root>,
}

/// Move a set of fewer than `rank` roots simultaneously into a parabolic
/// subsystem of rank `|A|`.
pub fn reflect_set_into_parabolic(rs: &RootSystem, a: &[Root]) -> Result<ParabolicLanding, Error> {
    if a.len() >= rs.rank() {
        return Err(Error::Domain(format!(
            "reflect_set_into_parabolic needs |A| < rank, got {} >= {}",
            a.len(),
            rs.rank()
        )));
    }
    if let Some(bad) = a.iter().find(|r| !rs.is_root(r)) {
        return Err(Error::Domain(format!("{bad} is not a root")));
    }
    let mut cur: Vec<Root> = a.to_vec();
    let mut word = Vec::new();
    let mut dims: Vec<usize> = (0..rs.rank()).collect();
    let target = dim_span(&cur);
    loop {
        let support: BTreeSet<usize> = cur.iter().flat_map(|r| r.support()).collect();
        if support.len() <= target {
            return Ok(ParabolicLanding { word, support, image: cur });
        }
        let Some(mut v) = orthogonal_vector(rs, &cur, &dims) else {
            let support = dims.iter().copied().collect();
            return Ok(ParabolicLanding { word, support, image: cur });
        };
        // Drive v into the dominant chamber of the current parabolic; each
        // step removes exactly one root from M_v.
        loop {
            let step = dims
                .iter()
                .copied()
                .find(|&j| pair_v(rs, &v, &rs.simple_root(j)).is_negative());
            let Some(j) = step else { break };
            v = reflect_v(rs, j, &v);
            cur = cur.iter().map(|r| rs.reflect(j, r)).collect();
            word.push(j);
        }
        dims.retain(|&j| pair_v(rs, &v, &rs.simple_root(j)).is_zero());
    }
}

/// `M_v = { g in positive roots : (v, g) < 0 }`, exposed for tests of the
/// counting identity.
pub fn negative_set(rs: &RootSystem, v: &[BigRational]) -> Vec<Root> {
    rs.positive_roots().iter().filter(|g| pair_v(rs, v, g).is_negative()).cloned().collect()
}

/// A Weyl orbit of pairs of roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairOrbit {
    pub representative: (Root, Root),
    pub parabolic_type: String,
    /// `((a,a), (b,b), (a,b))` for the representative.
    pub angle_lengths: (i64, i64, i64),
    pub orbit_size: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitMode {
    /// Orbits computed directly by closure under simple reflections.
    BruteForce,
    /// Orbits keyed by parabolic type, lengths and angle.
    Canonical,
}

fn length_word(rs: &RootSystem, d: i64) -> &'static str {
    let max_d = rs.d.iter().copied().max().unwrap_or(1);
    if max_d == 1 {
        ""
    } else if d == 1 {
        " short"
    } else {
        " long"
    }
}

/// Label of the rank-2 parabolic spanned by simple roots `i`, `j`.
fn rank2_label(rs: &RootSystem, i: usize, j: usize) -> String {
    let (i, j) = if rs.d[i] <= rs.d[j] { (i, j) } else { (j, i) };
    match rs.cartan[i][j] * rs.cartan[j][i] {
        0 => format!("A1{} x A1{}", length_word(rs, rs.d[i]), length_word(rs, rs.d[j])),
        1 => format!("A2{}", length_word(rs, rs.d[i])),
        2 => "B2".to_string(),
        3 => "G2".to_string(),
        _ => "?".to_string(),
    }
}

type PairKey = (String, i64, i64, i64, Root, (Root, Root));

fn pair_key(rs: &RootSystem, a: &Root, b: &Root) -> Result<PairKey, Error> {
    let (la, lb, ab) = (rs.pairing(a, a), rs.pairing(b, b), rs.pairing(a, b));
    let (l1, l2) = if la <= lb { (la, lb) } else { (lb, la) };
    let support: Vec<usize> = if rs.rank() == 2 {
        vec![0, 1]
    } else {
        reflect_set_into_parabolic(rs, &[a.clone(), b.clone()])?.support.into_iter().collect()
    };
    let (i, j) = (support[0], support[1]);
    let mut label = rank2_label(rs, i, j);
    if rs.cartan[i][j] == 0 && rs.family == Some(Family::D) {
        let n = rs.rank();
        if n == 4 {
            label = format!("{label} {{a{},a{}}}", i + 1, j + 1);
        } else if (i, j) == (n - 2, n - 1) {
            label = format!("{label} legs");
        }
    }
    // a + b and a - b up to sign are Weyl invariants of the unordered pair;
    // they separate orbits that differ only by an overall sign.
    let diff = {
        let x = rs.dominant(&a.add(&b.neg()));
        let y = rs.dominant(&b.add(&a.neg()));
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    };
    Ok((label, l1, l2, ab, rs.dominant(&a.add(b)), diff))
}

fn pair_index(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

/// All unordered pairs `{a, b}` with `a != +-b`, as index pairs into
/// [`RootSystem::all_roots`].
fn all_pairs(rs: &RootSystem) -> Vec<(usize, usize)> {
    let n = 2 * rs.positive_roots.len();
    let np = rs.positive_roots.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if j != (i + np) % n {
                out.push((i, j));
            }
        }
    }
    out
}

/// Weyl orbits of unordered (or, with `ordered`, ordered) pairs, as sets of
/// index pairs; deterministic order.
pub fn pair_orbit_partition(rs: &RootSystem, mode: OrbitMode, ordered: bool) -> Result<Vec<Vec<(usize, usize)>>, Error> {
    let roots = rs.all_roots();
    let mut pairs = all_pairs(rs);
    if ordered {
        let rev: Vec<(usize, usize)> = pairs.iter().map(|&(i, j)| (j, i)).collect();
        pairs.extend(rev);
        pairs.sort();
    }
    let classes: Vec<Vec<(usize, usize)>> = match mode {
        OrbitMode::BruteForce => {
            let gens = rs.simple_reflection_perms();
            let mut seen: HashSet<(usize, usize)> = HashSet::new();
            let mut classes = Vec::new();
            for &p in &pairs {
                if seen.contains(&p) {
                    continue;
                }
                seen.insert(p);
                let mut orbit = vec![p];
                let mut k = 0;
                while k < orbit.len() {
                    let (i, j) = orbit[k];
                    for g in &gens {
                        let (gi, gj) = (g[i] as usize, g[j] as usize);
                        let q = if ordered { (gi, gj) } else { pair_index(gi, gj) };
                        if seen.insert(q) {
                            orbit.push(q);
                        }
                    }
                    k += 1;
                }
                orbit.sort();
                classes.push(orbit);
            }
            classes
        }
        OrbitMode::Canonical => {
            if ordered {
                return Err(Error::Domain("ordered refinement is only available by brute force".into()));
            }
            let mut by_key: BTreeMap<PairKey, Vec<(usize, usize)>> = BTreeMap::new();
            for &(i, j) in &pairs {
                let key = pair_key(rs, &roots[i], &roots[j])?;
                by_key.entry(key).or_default().push((i, j));
            }
            by_key.into_values().collect()
        }
    };
    let mut classes = classes;
    for c in classes.iter_mut() {
        c.sort();
    }
    classes.sort();
    Ok(classes)
}

/// Weyl orbits of unordered pairs of roots `{a, b}`, `a != +-b`.
pub fn classify_pair_orbits(rs: &RootSystem, mode: OrbitMode) -> Result<Vec<PairOrbit>, Error> {
    let roots = rs.all_roots();
    let parts = pair_orbit_partition(rs, mode, false)?;
    let mut out = Vec::new();
    for class in parts {
        // representative: lexicographically first pair of positive roots if any
        let &(i, j) = class
            .iter()
            .find(|&&(i, j)| roots[i].is_positive() && roots[j].is_positive())
            .unwrap_or(&class[0]);
        let (a, b) = (roots[i].clone(), roots[j].clone());
        let (label, ..) = pair_key(rs, &a, &b)?;
        out.push(PairOrbit {
            angle_lengths: (rs.pairing(&a, &a), rs.pairing(&b, &b), rs.pairing(&a, &b)),
            representative: (a, b),
            parabolic_type: label,
            orbit_size: class.len(),
        });
    }
    out.sort_by(|x, y| x.parabolic_type.cmp(&y.parabolic_type).then(x.angle_lengths.cmp(&y.angle_lengths)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(f: Family, n: usize) -> RootSystem {
        build_root_system(f, n).unwrap()
    }

    #[test]
    fn root_counts() {
        let cases = [
            (Family::A, 1, 1),
            (Family::A, 4, 10),
            (Family::B, 2, 4),
            (Family::B, 3, 9),
            (Family::C, 4, 16),
            (Family::D, 4, 12),
            (Family::D, 5, 20),
            (Family::E, 6, 36),
            (Family::E, 7, 63),
            (Family::E, 8, 120),
            (Family::F, 4, 24),
            (Family::G, 2, 6),
        ];
        for (f, n, count) in cases {
            assert_eq!(rs(f, n).positive_roots().len(), count, "{f}{n}");
        }
    }

    #[test]
    fn g2_roots_and_labels() {
        let g = rs(Family::G, 2);
        let labels: Vec<String> = g.positive_roots().iter().map(Root::label).collect();
        for l in ["a1", "a2", "a12", "a112", "a1112", "a11122"] {
            assert!(labels.contains(&l.to_string()), "{l} missing");
        }
        assert_eq!(g.pairing(&g.simple_root(0), &g.simple_root(1)), -3);
        let (a1, a2, a12) = (Root(vec![1, 0]), Root(vec![0, 1]), Root(vec![1, 1]));
        assert_eq!(g.reflect(1, &a1), a12);
        assert_eq!(g.reflect(1, &a12), a1);
        assert_eq!(g.reflect(1, &a2), a2.neg());
        assert_ne!(g.d_of(&a2), g.d_of(&a12));
    }

    #[test]
    fn b3_lengths() {
        let b = rs(Family::B, 3);
        let short = b.positive_roots().iter().filter(|r| b.d_of(r) == 1).count();
        assert_eq!((short, b.positive_roots().len() - short), (3, 6));
    }

    #[test]
    fn b2_conventions() {
        let b = rs(Family::B, 2);
        assert_eq!(b.d(), &[1, 2]);
        assert_eq!(b.pairing(&b.simple_root(0), &b.simple_root(1)), -2);
        assert_eq!(b.reflect(1, &b.simple_root(0)), Root(vec![1, 1]));
        assert_eq!(b.ctype(), rs(Family::C, 2).ctype());
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(build_root_system(Family::E, 5).is_err());
        assert!(build_root_system(Family::G, 3).is_err());
        assert!(build_root_system(Family::D, 2).is_err());
        assert!(build_root_system(Family::A, 0).is_err());
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(weyl_group(&rs(Family::A, 1), WEYL_BOUND).unwrap().len(), 2);
        assert_eq!(weyl_group(&rs(Family::B, 2), WEYL_BOUND).unwrap().len(), 8);
        assert_eq!(weyl_group(&rs(Family::D, 4), WEYL_BOUND).unwrap().len(), 192);
        assert_eq!(weyl_group(&rs(Family::G, 2), WEYL_BOUND).unwrap().len(), 12);
        assert!(weyl_group(&rs(Family::A, 5), 100).is_err());
    }

    #[test]
    fn simple_sets_stay_put() {
        let d = rs(Family::D, 5);
        let a = [d.simple_root(0), d.simple_root(3)];
        let land = reflect_set_into_parabolic(&d, &a).unwrap();
        assert!(land.word.is_empty());
        assert_eq!(land.support, BTreeSet::from([0, 3]));
    }

    #[test]
    fn parabolic_rejects_large_sets() {
        let a2 = rs(Family::A, 2);
        assert!(reflect_set_into_parabolic(&a2, &[a2.simple_root(0), a2.simple_root(1)]).is_err());
    }

    #[test]
    fn d4_highest_root_pair() {
        let d = rs(Family::D, 4);
        let top = d.positive_roots().last().unwrap().clone();
        assert_eq!(top, Root(vec![1, 2, 1, 1]));
        let land = reflect_set_into_parabolic(&d, &[top.clone(), d.simple_root(0)]).unwrap();
        assert_eq!(land.support.len(), 2);
        let s: Vec<usize> = land.support.iter().copied().collect();
        assert_eq!(d.cartan()[s[0]][s[1]], 0);
        for (orig, img) in [top, d.simple_root(0)].iter().zip(&land.image) {
            assert_eq!(&d.reflect_word(&land.word, orig), img);
        }
    }

    #[test]
    fn small_orbit_counts() {
        let a2 = rs(Family::A, 2);
        assert_eq!(classify_pair_orbits(&a2, OrbitMode::BruteForce).unwrap().len(), 3);
        let b4 = rs(Family::B, 4);
        assert_eq!(classify_pair_orbits(&b4, OrbitMode::BruteForce).unwrap().len(), 8);
    }

    #[test]
    fn recognizes_every_block_under_shuffles() {
        let types = [
            (Family::A, 5),
            (Family::B, 4),
            (Family::C, 4),
            (Family::D, 5),
            (Family::E, 6),
            (Family::E, 8),
            (Family::F, 4),
            (Family::G, 2),
        ];
        for (f, n) in types {
            let (a, _) = cartan_block(f, n).unwrap();
            let perm: Vec<usize> = (0..n).rev().collect();
            let shuffled: Vec<Vec<i64>> = perm.iter().map(|&i| perm.iter().map(|&j| a[i][j]).collect()).collect();
            assert_eq!(recognize_cartan_matrix(&shuffled), Some(CartanType::irreducible(f, n)), "{f}{n}");
        }
        // affine A1 is not of finite type
        assert_eq!(recognize_cartan_matrix(&[vec![2, -2], vec![-2, 2]]), None);
        // a triangle is not of finite type
        let tri = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
        assert_eq!(recognize_cartan_matrix(&tri), None);
    }

    #[test]
    fn from_cartan_matrix_matches_builder() {
        let g2 = rs(Family::G, 2);
        let again = RootSystem::from_cartan_matrix(g2.cartan().to_vec()).unwrap();
        assert_eq!(again.positive_roots().len(), 6);
        assert_eq!(again.d(), g2.d());
        let d4 = RootSystem::from_cartan_matrix(rs(Family::D, 4).cartan().to_vec()).unwrap();
        assert_eq!(d4.ctype().to_string(), "D4");
    }

    #[test]
    fn canonical_agrees_with_brute_force() {
        let types = [
            (Family::A, 1),
            (Family::A, 2),
            (Family::A, 3),
            (Family::A, 4),
            (Family::A, 5),
            (Family::B, 2),
            (Family::B, 3),
            (Family::B, 4),
            (Family::C, 3),
            (Family::C, 4),
            (Family::D, 4),
            (Family::D, 5),
            (Family::E, 6),
            (Family::F, 4),
            (Family::G, 2),
        ];
        for (f, n) in types {
            let r = rs(f, n);
            let brute = pair_orbit_partition(&r, OrbitMode::BruteForce, false).unwrap();
            let canon = pair_orbit_partition(&r, OrbitMode::Canonical, false).unwrap();
            assert_eq!(brute, canon, "{f}{n}");
        }
    }

    #[test]
    fn type_labels() {
        assert_eq!(CartanType::new(&[(Family::D, 2)]).to_string(), "A1^2");
        assert_eq!(CartanType::new(&[(Family::D, 3)]).to_string(), "A3");
        assert_eq!(CartanType::new(&[(Family::C, 2)]).to_string(), "B2");
        assert_eq!(CartanType::parse("A1^3").unwrap(), CartanType::new(&[(Family::A, 1); 3]));
        assert_eq!(CartanType::parse("0").unwrap(), CartanType::zero());
        assert_eq!(CartanType::parse("A1xB2").unwrap().to_string(), "A1xB2");
    }
}
