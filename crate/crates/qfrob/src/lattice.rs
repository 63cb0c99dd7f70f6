//! Numerology attached to the order `l` of `q`: the truncation exponents
//! `l_a`, the parity of the lattice spanned by `l_i a_i`, and dimensions of
//! small quantum groups read off from their PBW bases.

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::rootsys::{Family, Root, RootSystem};

/// `l_a = l / gcd(l, 2 d_a)`, the multiplicative order of `q^(2 d_a)`.
pub fn ell_alpha(ell: u64, d: i64) -> u64 {
    assert!(ell >= 1, "ell must be positive");
    ell / ell.gcd(&(2 * d.unsigned_abs()))
}

/// Multiplicative order of `q^e` for `q` a primitive `l`-th root of unity.
pub fn order_of_power(ell: u64, e: i64) -> u64 {
    let r = e.rem_euclid(ell as i64) as u64;
    ell / ell.gcd(&r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EllData {
    pub ell: u64,
    /// `l_i` for the simple roots.
    pub ell_simple: Vec<u64>,
    /// `l_a` for every positive root, in the order of
    /// [`RootSystem::positive_roots`].
    pub ell_roots: Vec<(Root, u64)>,
}

pub fn ell_data(rs: &RootSystem, ell: u64) -> EllData {
    EllData {
        ell,
        ell_simple: rs.d().iter().map(|&d| ell_alpha(ell, d)).collect(),
        ell_roots: rs.positive_roots().iter().map(|r| (r.clone(), ell_alpha(ell, rs.d_of(r)))).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    /// `(b, b)` lies in `l Z` for every basis vector `b = l_i a_i`.
    pub all_self_multiples: bool,
    /// `(b, c)` lies in `(l/2) Z` for every pair of basis vectors.
    pub all_pair_half: bool,
    /// Some pairing of basis vectors misses `l Z`.
    pub braided: bool,
    /// First pair `(i, j)` whose pairing misses `l Z`.
    pub witness: Option<(usize, usize)>,
}

/// Parity of the pairing on the lattice spanned by `l_i a_i`.
pub fn ell_lattice_parity(rs: &RootSystem, ell: u64) -> ParityReport {
    let n = rs.rank();
    let l = ell as i64;
    let li: Vec<i64> = rs.d().iter().map(|&d| ell_alpha(ell, d) as i64).collect();
    let g = rs.gram();
    let mut report = ParityReport {
        all_self_multiples: true,
        all_pair_half: true,
        braided: false,
        witness: None,
    };
    for i in 0..n {
        for j in 0..n {
            let p = li[i] * li[j] * g[i][j];
            if i == j && p % l != 0 {
                report.all_self_multiples = false;
            }
            if (2 * p) % l != 0 {
                report.all_pair_half = false;
            }
            if p % l != 0 && report.witness.is_none() {
                report.braided = true;
                report.witness = Some((i, j));
            }
        }
    }
    report
}

/// `(dim u^+, dim u)` for the small quantum group with `L = root lattice`:
/// `prod l_a` over positive roots, and `prod (2 l_i) * prod l_a^2`.
pub fn small_uq_dimension(rs: &RootSystem, ell: u64) -> (BigUint, BigUint) {
    let plus: BigUint = rs
        .positive_roots()
        .iter()
        .map(|r| BigUint::from(ell_alpha(ell, rs.d_of(r))))
        .product();
    let group: BigUint = rs.d().iter().map(|&d| BigUint::from(2 * ell_alpha(ell, d))).product();
    let full = group * &plus * &plus;
    (plus, full)
}

/// Reference table of the cases in which the lattice is braided, stated per
/// family and rank (`B2`/`C2` never, `A1` never).
pub fn reference_braided(family: Family, rank: usize, ell: u64) -> bool {
    match family {
        Family::A if rank == 1 => false,
        Family::A | Family::D | Family::E | Family::G => ell % 4 == 2,
        Family::B if rank >= 3 => ell % 8 == 4,
        Family::C if rank >= 3 => ell % 4 == 2,
        Family::B | Family::C => false,
        Family::F => matches!(ell % 8, 2 | 4 | 6),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_root_system;

    #[test]
    fn ell_alpha_values() {
        assert_eq!(ell_alpha(7, 1), 7);
        assert_eq!(ell_alpha(10, 1), 5);
        assert_eq!(ell_alpha(1, 3), 1);
        assert_eq!(ell_alpha(4, 2), 1);
        assert_eq!(ell_alpha(4, 1), 2);
        assert_eq!(ell_alpha(12, 3), 2);
    }

    #[test]
    fn ell_alpha_is_brute_force_order() {
        for ell in 1..=60u64 {
            for d in 1..=3i64 {
                let brute = (1..=ell).find(|k| (2 * d as u64 * k) % ell == 0).unwrap();
                assert_eq!(ell_alpha(ell, d), brute);
                assert_eq!(order_of_power(ell, 2 * d), brute);
            }
        }
    }

    #[test]
    fn parity_examples() {
        let a2 = build_root_system(Family::A, 2).unwrap();
        assert!(ell_lattice_parity(&a2, 6).braided);
        let b3 = build_root_system(Family::B, 3).unwrap();
        assert!(ell_lattice_parity(&b3, 12).braided);
        assert!(!ell_lattice_parity(&b3, 8).braided);
        assert!(!ell_lattice_parity(&b3, 1).braided);
    }

    #[test]
    fn dimension_examples() {
        let a1 = build_root_system(Family::A, 1).unwrap();
        assert_eq!(small_uq_dimension(&a1, 3), (BigUint::from(3u32), BigUint::from(54u32)));
        let g2 = build_root_system(Family::G, 2).unwrap();
        assert_eq!(small_uq_dimension(&g2, 4).0, BigUint::from(64u32));
        for n in 2..=5 {
            let b = build_root_system(Family::B, n).unwrap();
            assert_eq!(small_uq_dimension(&b, 4).0, BigUint::from(1u32 << n));
        }
    }

    #[test]
    fn trivial_orders_collapse() {
        let f4 = build_root_system(Family::F, 4).unwrap();
        let (plus, full) = small_uq_dimension(&f4, 1);
        assert_eq!(plus, BigUint::from(1u32));
        assert_eq!(full, BigUint::from(16u32));
    }
}
