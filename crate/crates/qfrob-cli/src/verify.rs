//! Verification suites run by `qfrob verify`.

use serde::Serialize;

use qfrob::cyclo::{q_int, specialize, CycloNum, LaurentPoly};
use qfrob::frobenius::{emit_table, TableKind};
use qfrob::lattice::ell_alpha;
use qfrob::pbw2::{PbwAlgebra2, PbwExpression, Rank2Type};
use qfrob::rootsys::{
    build_root_system, classify_pair_orbits, pair_orbit_partition, Family, OrbitMode, Root,
};
use qfrob::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub suite: String,
    pub name: String,
    /// Which table or displayed identity the check targets.
    pub target: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Rank2Commutators,
    Parity,
    Orbits,
    Tables,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        match s {
            "rank2-commutators" => Some(Suite::Rank2Commutators),
            "parity" => Some(Suite::Parity),
            "orbits" => Some(Suite::Orbits),
            "tables" => Some(Suite::Tables),
            "all" => Some(Suite::All),
            _ => None,
        }
    }
}

pub fn run(suite: Suite, ell: Option<u64>) -> Result<Vec<Verdict>, Error> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Rank2Commutators | Suite::All) {
        out.extend(rank2_commutators(ell)?);
    }
    if matches!(suite, Suite::Parity | Suite::All) {
        out.extend(parity(ell)?);
    }
    if matches!(suite, Suite::Orbits | Suite::All) {
        out.extend(orbits()?);
    }
    if matches!(suite, Suite::Tables | Suite::All) {
        out.extend(tables()?);
    }
    Ok(out)
}

fn r(a: i64, b: i64) -> Root {
    Root(vec![a, b])
}

type Spec<'a> = &'a [(LaurentPoly, &'a [(&'a str, u32)])];

fn expected(alg: &PbwAlgebra2, ell: u64, terms: Spec) -> Result<PbwExpression<CycloNum>, Error> {
    let mut e = PbwExpression::zero();
    for (c, m) in terms {
        e.add_term(alg.monomial(m)?, specialize(c, ell));
    }
    Ok(e)
}

struct Rank2Case<'a> {
    alg: &'a PbwAlgebra2,
    ell: u64,
    target: &'a str,
}

impl Rank2Case<'_> {
    /// Compare a commutator against a closed form; `projected` selects the
    /// Frobenius quotient or the specialized algebra.
    fn check(
        &self,
        name: String,
        (a, x): (Root, u32),
        (b, y): (Root, u32),
        projected: bool,
        terms: Spec,
    ) -> Result<Verdict, Error> {
        let got = if projected {
            self.alg.bracket(&a, x, &b, y, self.ell)?
        } else {
            self.alg.bracket_unprojected(&a, x, &b, y, self.ell)?
        };
        let want = expected(self.alg, self.ell, terms)?;
        Ok(Verdict {
            suite: "rank2-commutators".into(),
            name,
            target: self.target.into(),
            pass: got == want,
            detail: format!("computed {} ; expected {}", self.alg.render(&got), self.alg.render(&want)),
        })
    }
}

fn qp(e: i64) -> LaurentPoly {
    LaurentPoly::q_pow(e)
}

fn c(n: i64) -> LaurentPoly {
    LaurentPoly::constant(n)
}

fn wanted(ell: Option<u64>, l: u64) -> bool {
    ell.map_or(true, |x| x == l)
}

fn rank2_commutators(ell: Option<u64>) -> Result<Vec<Verdict>, Error> {
    let mut out = Vec::new();
    let b2 = PbwAlgebra2::new(Rank2Type::B2);
    for l in [4u64, 8, 12].into_iter().filter(|&l| wanted(ell, l)) {
        let (h, f) = ((l / 2) as u32, (l / 4) as u32);
        let case = Rank2Case { alg: &b2, ell: l, target: "B2 duality brackets" };
        out.push(case.check(
            format!("B2 l={l}: [E1^({h}),E2^({f})] = -E112^({f})"),
            (r(1, 0), h),
            (r(0, 1), f),
            true,
            &[(c(-1), &[("112", f)])],
        )?);
        let mut prod = LaurentPoly::one();
        for i in 1..=f as i64 {
            prod = &prod * &(&qp(2 - 4 * i) - &LaurentPoly::one());
        }
        let got = b2.bracket(&r(2, 1), f, &r(0, 1), f, l)?;
        let m = b2.monomial(&[("12", h)])?;
        let p = specialize(&prod, l);
        let unit = got.coeff(&m).and_then(|g| [1i64, -1].into_iter().find(|&u| &p * &CycloNum::from_int(l, u) == *g));
        out.push(Verdict {
            suite: "rank2-commutators".into(),
            name: format!("B2 l={l}: [E112^({f}),E2^({f})] = unit * prod(q^(2-4i)-1) E12^({h})"),
            target: "B2 duality brackets".into(),
            pass: got.len() == 1 && unit.is_some() && !p.is_zero(),
            detail: format!("computed {} ; product {p} ; unit {}", b2.render(&got), unit.map_or("none".to_string(), |u| u.to_string())),
        });
        out.push(case.check(
            format!("B2 l={l}: [E1^({h}),E12^({h})] = 0"),
            (r(1, 0), h),
            (r(1, 1), h),
            true,
            &[],
        )?);
    }
    let a2 = PbwAlgebra2::new(Rank2Type::A2 { d: 1 });
    for l in (2u64..=8).filter(|&l| wanted(ell, l)) {
        let la = ell_alpha(l, 1) as u32;
        let case = Rank2Case { alg: &a2, ell: l, target: "A2 generic bracket" };
        out.push(case.check(
            format!("A2 l={l}: [E1^({la}),E2^({la})] = q^{la} E12^({la})"),
            (r(1, 0), la),
            (r(0, 1), la),
            true,
            &[(qp(la as i64), &[("12", la)])],
        )?);
    }
    let g2 = PbwAlgebra2::new(Rank2Type::G2);
    for l in [3u64, 6].into_iter().filter(|&l| wanted(ell, l)) {
        let eps = qp(3);
        let q2 = q_int(2, 1);
        let case = Rank2Case { alg: &g2, ell: l, target: "G2 duality brackets" };
        out.push(case.check(format!("G2 l={l}: [E1^(3),E2] = eps E1112"), (r(1, 0), 3), (r(0, 1), 1), true, &[(eps.clone(), &[("1112", 1)])])?);
        out.push(case.check(format!("G2 l={l}: [E1112,E2] = 2 E11122"), (r(3, 1), 1), (r(0, 1), 1), true, &[(c(2), &[("11122", 1)])])?);
        out.push(case.check(format!("G2 l={l}: [E112^(3),E2] = 0"), (r(2, 1), 3), (r(0, 1), 1), true, &[])?);
        out.push(case.check(
            format!("G2 l={l}: [E11122,E2] = 3 eps E12^(3)"),
            (r(3, 2), 1),
            (r(0, 1), 1),
            true,
            &[(eps.scale(3), &[("12", 3)])],
        )?);
        out.push(case.check(
            format!("G2 l={l}: [E1^(3),E12^(3)] = q^3 [2]^3 E112^(3)"),
            (r(1, 0), 3),
            (r(1, 1), 3),
            true,
            &[(&qp(3) * &q2.pow(3), &[("112", 3)])],
        )?);
        let case = Rank2Case { alg: &g2, ell: l, target: "G2 adjoint stability" };
        out.push(case.check(format!("G2 l={l}: delta2(E1) = -E12"), (r(0, 1), 1), (r(1, 0), 1), false, &[(c(-1), &[("12", 1)])])?);
        out.push(case.check(
            format!("G2 l={l}: [E1,E12^(3)] = -eps q E12^(2) E112"),
            (r(1, 0), 1),
            (r(1, 1), 3),
            false,
            &[(-&qp(4), &[("12", 2), ("112", 1)])],
        )?);
    }
    if wanted(ell, 4) {
        let case = Rank2Case { alg: &g2, ell: 4, target: "G2 exotic brackets" };
        out.push(case.check(
            "G2 l=4: [E1^(2),E112^(2)] = 4 E1112^(2)".into(),
            (r(1, 0), 2),
            (r(2, 1), 2),
            true,
            &[(c(4), &[("1112", 2)])],
        )?);
        out.push(case.check("G2 l=4: [E112^(2),E2^(2)] = 0".into(), (r(2, 1), 2), (r(0, 1), 2), true, &[])?);
        let case = Rank2Case { alg: &g2, ell: 4, target: "G2 adjoint stability" };
        out.push(case.check(
            "G2 l=4: delta1(E2) = q E12 E1 + E112".into(),
            (r(1, 0), 2),
            (r(0, 1), 1),
            false,
            &[(qp(1), &[("12", 1), ("1", 1)]), (c(1), &[("112", 1)])],
        )?);
        out.push(case.check(
            "G2 l=4: delta2(E1) = -q^-3 E2 E12".into(),
            (r(0, 1), 2),
            (r(1, 0), 1),
            false,
            &[(-&qp(-3), &[("2", 1), ("12", 1)])],
        )?);
        out.push(case.check(
            "G2 l=4: delta112(E1) = q^-1 E112 E1112".into(),
            (r(2, 1), 2),
            (r(1, 0), 1),
            false,
            &[(qp(-1), &[("112", 1), ("1112", 1)])],
        )?);
        out.push(case.check("G2 l=4: delta11122(E1) = 0".into(), (r(3, 2), 2), (r(1, 0), 1), false, &[])?);
        let case = Rank2Case { alg: &b2, ell: 4, target: "B2 adjoint stability" };
        out.push(case.check("B2 l=4: delta2(E1) = -E12".into(), (r(0, 1), 1), (r(1, 0), 1), false, &[(c(-1), &[("12", 1)])])?);
        out.push(case.check("B2 l=4: delta1(E12) = 0".into(), (r(1, 0), 2), (r(1, 1), 1), false, &[])?);
    }
    Ok(out)
}

fn parity(ell: Option<u64>) -> Result<Vec<Verdict>, Error> {
    let rows = emit_table(TableKind::Parity, 5, ell.map_or(48, |l| l.max(1)))?;
    let rows: Vec<_> = match ell {
        Some(l) => rows
            .into_iter()
            .filter(|r| matches!(r, qfrob::frobenius::TableRow::Parity { row, .. } if row.ell == l))
            .collect(),
        None => rows,
    };
    let bad: Vec<String> = rows
        .iter()
        .filter_map(|r| match r {
            qfrob::frobenius::TableRow::Parity { row, matches: false } => Some(format!("{} l={}", row.g, row.ell)),
            _ => None,
        })
        .collect();
    Ok(vec![Verdict {
        suite: "parity".into(),
        name: format!("lattice parity on {} cells", rows.len()),
        target: "braided exception table".into(),
        pass: bad.is_empty(),
        detail: if bad.is_empty() { "all cells agree".into() } else { format!("mismatches: {}", bad.join(", ")) },
    }])
}

fn orbit_verdict(name: String, pass: bool, detail: String) -> Verdict {
    Verdict { suite: "orbits".into(), name, target: "pair orbits".into(), pass, detail }
}

fn orbits() -> Result<Vec<Verdict>, Error> {
    use Family::*;
    let mut out = Vec::new();
    let types = [(A, 1), (A, 2), (A, 3), (A, 4), (B, 2), (B, 3), (B, 4), (C, 3), (C, 4), (D, 4), (F, 4), (G, 2)];
    let mut bad = Vec::new();
    for (f, n) in types {
        let rs = build_root_system(f, n)?;
        if pair_orbit_partition(&rs, OrbitMode::BruteForce, false)? != pair_orbit_partition(&rs, OrbitMode::Canonical, false)? {
            bad.push(format!("{f}{n}"));
        }
    }
    out.push(orbit_verdict(
        "canonical keys reproduce brute-force orbits up to rank 4".into(),
        bad.is_empty(),
        if bad.is_empty() { format!("{} types agree", types.len()) } else { format!("disagree: {}", bad.join(", ")) },
    ));
    let b4 = classify_pair_orbits(&build_root_system(B, 4)?, OrbitMode::BruteForce)?;
    out.push(orbit_verdict("B4 has 8 unordered pair orbits".into(), b4.len() == 8, format!("found {}", b4.len())));
    for (n, want) in [(4usize, 3usize), (5, 2)] {
        let orbits = classify_pair_orbits(&build_root_system(D, n)?, OrbitMode::Canonical)?;
        let k = orbits.iter().filter(|o| o.parabolic_type.starts_with("A1 x A1")).count();
        out.push(orbit_verdict(format!("D{n} has {want} orbits of type A1xA1"), k == want, format!("found {k}")));
    }
    Ok(out)
}

fn tables() -> Result<Vec<Verdict>, Error> {
    let mut out = Vec::new();
    for (kind, name, target, max_ell) in [
        (TableKind::Main, "main table up to rank 5, l <= 24", "classification table", 24u64),
        (TableKind::Smalluq, "small quantum group table up to rank 5", "small quantum group table", 24),
    ] {
        let rows = emit_table(kind, 5, max_ell)?;
        let bad = rows.iter().filter(|r| !r.matches()).count();
        out.push(Verdict {
            suite: "tables".into(),
            name: name.into(),
            target: target.into(),
            pass: bad == 0,
            detail: format!("{} rows, {bad} mismatches", rows.len()),
        });
    }
    Ok(out)
}
