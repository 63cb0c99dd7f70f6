//! Markdown rendering of command output.

use std::fmt::Write;

use serde::Serialize;

use qfrob::frobenius::{ClassificationRow, TableRow};
use qfrob::nichols::SmallQuantumReport;
use qfrob::rootsys::PairOrbit;

use crate::verify::Verdict;

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn main_rows(rows: &[(ClassificationRow, Option<bool>)]) -> String {
    let with_match = rows.iter().any(|r| r.1.is_some());
    let mut s = String::from("| g | l | case | g0 | g_ell | braided |");
    s.push_str(if with_match { " match |\n|---|---|---|---|---|---|---|\n" } else { "\n|---|---|---|---|---|---|\n" });
    for (row, m) in rows {
        let _ = write!(s, "| {} | {} | {} | {} | {} | {} |", row.g, row.ell, row.case_tag, row.g0_label(), row.g_ell, yes_no(row.braided));
        if let Some(m) = m {
            let _ = write!(s, " {} |", verdict(*m));
        }
        s.push('\n');
    }
    s
}

pub fn table(rows: &[TableRow]) -> String {
    let mut main = Vec::new();
    let mut s = String::new();
    for r in rows {
        match r {
            TableRow::Main { row, matches } => main.push((row.clone(), Some(*matches))),
            TableRow::Smalluq { row, matches } => {
                if s.is_empty() {
                    s.push_str("| g | l | u^+ | dim | primitive generators | match |\n|---|---|---|---|---|---|\n");
                }
                let g0 = if row.g0_conjugate { format!("{} (conjugate)", row.g0) } else { row.g0.to_string() };
                let _ = writeln!(s, "| {} | {} | {} | {} | {} | {} |", row.g, row.ell, g0, row.dim, row.generators.join(", "), verdict(*matches));
            }
            TableRow::Parity { row, matches } => {
                if s.is_empty() {
                    s.push_str("| g | l | (b,b) in lZ | (b,c) in (l/2)Z | braided | expected | match |\n|---|---|---|---|---|---|---|\n");
                }
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {} | {} | {} |",
                    row.g,
                    row.ell,
                    yes_no(row.all_self_multiples),
                    yes_no(row.all_pair_half),
                    yes_no(row.braided),
                    yes_no(row.expected_braided),
                    verdict(*matches)
                );
            }
        }
    }
    if !main.is_empty() {
        s.push_str(&main_rows(&main));
    }
    let pass = rows.iter().all(|r| r.matches());
    let _ = writeln!(s, "\n{}: {} rows", verdict(pass), rows.len());
    s
}

pub fn orbits(orbits: &[PairOrbit], agree: bool) -> String {
    let mut s = String::from("| parabolic type | representative | ((a,a),(b,b),(a,b)) | size |\n|---|---|---|---|\n");
    for o in orbits {
        let (a, b) = &o.representative;
        let _ = writeln!(s, "| {} | {}, {} | {:?} | {} |", o.parabolic_type, a.label(), b.label(), o.angle_lengths, o.orbit_size);
    }
    let _ = writeln!(s, "\n{} orbits; brute force agrees: {}", orbits.len(), yes_no(agree));
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct NicholsRow {
    pub degree: usize,
    pub computed: String,
    pub product_formula: String,
    pub matches: bool,
}

pub fn nichols(rep: &SmallQuantumReport, rows: &[NicholsRow]) -> String {
    let g0 = if rep.conjugate_parameter { format!("{} (conjugate)", rep.g0) } else { rep.g0.to_string() };
    let mut s = format!("g0 = {g0}, dimension {}\n\n| degree | computed | product formula | match |\n|---|---|---|---|\n", rep.plus_dim);
    for r in rows {
        let _ = writeln!(s, "| {} | {} | {} | {} |", r.degree, r.computed, r.product_formula, verdict(r.matches));
    }
    s
}

pub fn verdicts(vs: &[Verdict]) -> String {
    let mut s = String::from("| suite | check | target | result | detail |\n|---|---|---|---|---|\n");
    for v in vs {
        let _ = writeln!(s, "| {} | {} | {} | {} | {} |", v.suite, v.name, v.target, verdict(v.pass), v.detail);
    }
    let pass = vs.iter().all(|v| v.pass);
    let _ = writeln!(s, "\n{}: {}/{} checks", verdict(pass), vs.iter().filter(|v| v.pass).count(), vs.len());
    s
}
