//! `qfrob`: classification queries, reference tables, orbit and Nichols
//! algebra computations, and verification suites.
//!
//! Exit codes: 0 when every requested check passes, 1 when some check fails,
//! 2 on usage errors, 3 when a computation exceeds its bound.

mod render;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use qfrob::frobenius::{classify_type, emit_table, TableKind};
use qfrob::nichols::{cartan_recognize, classify_small_quantum, graded_dimension, hilbert_series, root_orders, DEFAULT_WORD_BOUND};
use qfrob::rootsys::{build_root_system, classify_pair_orbits, pair_orbit_partition, Family, OrbitMode};
use qfrob::{cyclo::totient, Error};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "qfrob", version, about = "Frobenius homomorphisms of quantum groups at roots of unity")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    #[value(alias = "markdown")]
    Md,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify one Lie type at one order of q.
    Classify {
        #[arg(long)]
        family: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        ell: u64,
    },
    /// Regenerate a reference table and compare it with the stored copy.
    Table {
        #[arg(long, value_parser = ["main", "smalluq", "parity"])]
        which: String,
        #[arg(long, default_value_t = 5)]
        max_rank: usize,
        #[arg(long, default_value_t = 24)]
        max_ell: u64,
    },
    /// Weyl group orbits of pairs of roots.
    Orbits {
        #[arg(long)]
        family: String,
        #[arg(long)]
        rank: usize,
        /// Size of the root tuples; only pairs are supported.
        #[arg(long, default_value_t = 2)]
        tuples: usize,
    },
    /// Graded dimensions of the Nichols algebra of the small quantum group.
    Nichols {
        #[arg(long)]
        family: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        ell: u64,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        /// Largest number of words allowed in a single degree.
        #[arg(long, default_value_t = DEFAULT_WORD_BOUND)]
        word_bound: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = ["rank2-commutators", "parity", "orbits", "tables", "all"])]
        suite: String,
        #[arg(long)]
        ell: Option<u64>,
        /// Accepted for interface stability; the suites are deterministic.
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Machine-readable output envelope.
#[derive(Serialize)]
struct Document {
    schema_version: u32,
    command: &'static str,
    pass: bool,
    payload: Value,
}

struct Outcome {
    command: &'static str,
    pass: bool,
    payload: Value,
    markdown: String,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Bound(_) => 3,
        Error::InvalidType(_) | Error::Domain(_) => 2,
        Error::RuleGap(_) | Error::Inexact(_) => 1,
    }
}

fn family_rank(family: &str, rank: usize) -> Result<(Family, usize), Error> {
    let f = Family::parse(family)?;
    build_root_system(f, rank)?;
    Ok((f, rank))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable output")
}

fn run(cmd: &Command) -> Result<(Outcome, Option<Error>), Error> {
    match cmd {
        Command::Classify { family, rank, ell } => {
            let (f, n) = family_rank(family, *rank)?;
            let row = classify_type(f, n, *ell)?;
            let md = render::main_rows(&[(row.clone(), None)]);
            let mut v = to_value(&row);
            v["g0_label"] = json!(row.g0_label());
            Ok((Outcome { command: "classify", pass: true, payload: v, markdown: md }, None))
        }
        Command::Table { which, max_rank, max_ell } => {
            let kind = TableKind::parse(which)?;
            let rows = emit_table(kind, *max_rank, *max_ell)?;
            let pass = rows.iter().all(|r| r.matches());
            let md = render::table(&rows);
            let payload = json!({ "which": which, "max_rank": max_rank, "max_ell": max_ell, "rows": rows });
            Ok((Outcome { command: "table", pass, payload, markdown: md }, None))
        }
        Command::Orbits { family, rank, tuples } => {
            if *tuples != 2 {
                return Err(Error::Domain(format!("--tuples {tuples} is not supported; only pairs are classified")));
            }
            let (f, n) = family_rank(family, *rank)?;
            let rs = build_root_system(f, n)?;
            let orbits = classify_pair_orbits(&rs, OrbitMode::Canonical)?;
            let agree = pair_orbit_partition(&rs, OrbitMode::BruteForce, false)? == pair_orbit_partition(&rs, OrbitMode::Canonical, false)?;
            let md = render::orbits(&orbits, agree);
            let payload = json!({ "type": format!("{f}{n}"), "count": orbits.len(), "brute_force_agrees": agree, "orbits": orbits });
            Ok((Outcome { command: "orbits", pass: agree, payload, markdown: md }, None))
        }
        Command::Nichols { family, rank, ell, max_degree, word_bound } => {
            let (f, n) = family_rank(family, *rank)?;
            let rs = build_root_system(f, n)?;
            let rep = classify_small_quantum(&rs, *ell)?;
            let mut rows = Vec::new();
            let mut stop = None;
            let hilbert: Vec<String> = match &rep.braiding {
                Some(b) => {
                    let rec = cartan_recognize(b)?
                        .ok_or_else(|| Error::Domain("braiding is not of finite Cartan type".into()))?;
                    hilbert_series(&root_orders(b, &rec)?).iter().map(|x| x.to_string()).collect()
                }
                None => vec!["1".to_string()],
            };
            for deg in 0..=*max_degree {
                let want = hilbert.get(deg).cloned().unwrap_or_else(|| "0".into());
                let got = match &rep.braiding {
                    Some(b) => match graded_dimension(b, deg, *word_bound) {
                        Ok(d) => d.to_string(),
                        Err(e @ Error::Bound(_)) => {
                            stop = Some(e);
                            break;
                        }
                        Err(e) => return Err(e),
                    },
                    None => if deg == 0 { "1" } else { "0" }.to_string(),
                };
                rows.push(render::NicholsRow { degree: deg, computed: got.clone(), product_formula: want.clone(), matches: got == want });
            }
            let pass = rows.iter().all(|r| r.matches);
            let md = render::nichols(&rep, &rows);
            let payload = json!({
                "type": format!("{f}{n}"),
                "ell": ell,
                "g0": rep.g0,
                "g0_conjugate": rep.conjugate_parameter,
                "generators": rep.generators.iter().map(|r| r.label()).collect::<Vec<_>>(),
                "dimension": rep.plus_dim.to_string(),
                "field_degree": totient(*ell),
                "degrees": rows,
            });
            Ok((Outcome { command: "nichols", pass, payload, markdown: md }, stop))
        }
        Command::Verify { suite, ell, seed: _ } => {
            let s = verify::Suite::parse(suite).ok_or_else(|| Error::Domain(format!("unknown suite {suite}")))?;
            let verdicts = verify::run(s, *ell)?;
            let pass = verdicts.iter().all(|v| v.pass);
            let md = render::verdicts(&verdicts);
            let payload = json!({ "suite": suite, "ell": ell, "verdicts": verdicts });
            Ok((Outcome { command: "verify", pass, payload, markdown: md }, None))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli.command) {
        Ok((Outcome { command, pass, payload, markdown }, stop)) => {
            match cli.format {
                Format::Json => {
                    let doc = Document { schema_version: SCHEMA_VERSION, command, pass, payload };
                    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable output"));
                }
                Format::Md => print!("{markdown}"),
            }
            if let Some(e) = stop {
                eprintln!("qfrob: {e}");
                return ExitCode::from(3);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("qfrob: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_exit_codes() {
        assert_eq!(exit_code_for(&Error::Bound("x".into())), 3);
        assert_eq!(exit_code_for(&Error::InvalidType("x".into())), 2);
        assert_eq!(exit_code_for(&Error::Domain("x".into())), 2);
        assert_eq!(exit_code_for(&Error::RuleGap("x".into())), 1);
    }

    #[test]
    fn cli_shape() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
        let cli = Cli::try_parse_from(["qfrob", "--format", "markdown", "classify", "--family", "B", "--rank", "4", "--ell", "8"]).unwrap();
        assert_eq!(cli.format, Format::Md);
        assert!(Cli::try_parse_from(["qfrob", "table", "--which", "other"]).is_err());
    }
}
