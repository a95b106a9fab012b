//! Command-line front end: Pell solving, continued fractions, GL(2,Z)
//! equivalence, K-groups and Morita classification of real-multiplication
//! Cuntz-Pimsner algebras.
//!
//! Exit codes: 0 success (or: equivalent / all examples pass), 1 negative
//! verdict (not equivalent / some example failed), 2 invalid input, 3 the
//! theorem cross-check failed (an internal inconsistency).

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use realmult::report::{
    self, cf_report, equiv_report, kgroups_report, morita_report, parse_theta, pell_report,
    table_from_csv, table_rows, table_to_csv, unit_report, worked_examples,
};
use realmult::{Error, Mat2, QuadraticIrrational, RMBimoduleData};

#[derive(Parser)]
#[command(
    name = "realmult",
    version,
    about = "Exact K-theory invariants of rotation algebras with real multiplication"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve t^2 - D u^2 = +-4: fundamental unit and small solutions
    Pell {
        /// Discriminant (positive, nonsquare, 0 or 1 mod 4)
        d: u64,
        /// Sweep all u up to this bound
        #[arg(long, default_value_t = 20)]
        bound: u64,
        #[arg(long)]
        json: bool,
    },
    /// A power of the fundamental unit with its trace coordinates
    Unit {
        d: u64,
        /// Exponent n in epsilon_0^n
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        power: i64,
        /// Express the trace over this theta "k,l,m" (default: principal form of D)
        #[arg(long)]
        theta: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Continued fraction of theta with k theta^2 + l theta + m = 0
    Cf {
        #[arg(allow_negative_numbers = true)]
        k: i64,
        #[arg(allow_negative_numbers = true)]
        l: i64,
        #[arg(allow_negative_numbers = true)]
        m: i64,
        #[arg(long)]
        json: bool,
    },
    /// GL(2,Z) equivalence of two quadratic irrationals (Serret)
    Equiv {
        #[arg(allow_negative_numbers = true)]
        k1: i64,
        #[arg(allow_negative_numbers = true)]
        l1: i64,
        #[arg(allow_negative_numbers = true)]
        m1: i64,
        #[arg(allow_negative_numbers = true)]
        k2: i64,
        #[arg(allow_negative_numbers = true)]
        l2: i64,
        #[arg(allow_negative_numbers = true)]
        m2: i64,
        #[arg(long)]
        json: bool,
    },
    /// K-groups of the Cuntz-Pimsner algebra of (theta, epsilon^n, g)
    Kgroups {
        #[arg(allow_negative_numbers = true)]
        k: i64,
        #[arg(allow_negative_numbers = true)]
        l: i64,
        #[arg(allow_negative_numbers = true)]
        m: i64,
        /// Exponent n != 0 in tau(q) = epsilon_0^n
        #[arg(long, allow_negative_numbers = true)]
        power: i64,
        /// The free K_1 parameter as "a,b;c,d" (default identity)
        #[arg(long, default_value = "1,0;0,1")]
        g: String,
        #[arg(long)]
        json: bool,
    },
    /// Morita comparison of two Cuntz-Pimsner algebras
    Morita {
        /// First theta as "k,l,m"
        #[arg(long)]
        first: String,
        /// Unit power for the first algebra
        #[arg(long, allow_negative_numbers = true)]
        n1: i64,
        #[arg(long, default_value = "1,0;0,1")]
        g1: String,
        /// Second theta as "k,l,m"
        #[arg(long)]
        second: String,
        /// Unit power for the second algebra
        #[arg(long, allow_negative_numbers = true)]
        n2: i64,
        #[arg(long, default_value = "1,0;0,1")]
        g2: String,
        #[arg(long)]
        json: bool,
    },
    /// Recompute the worked examples; exit 0 iff everything matches
    Examples {
        #[arg(long)]
        json: bool,
        /// Corrupt one expected value to prove failures are detected
        #[arg(long, hide = true)]
        self_test_corrupt: bool,
    },
    /// Classification table over all valid discriminants up to --dmax
    Table {
        #[arg(long)]
        dmax: u64,
        /// Inclusive power range "min..max"; n = 0 is skipped
        #[arg(long, default_value = "-3..3", allow_hyphen_values = true)]
        nrange: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        /// Shorthand for --format json
        #[arg(long)]
        json: bool,
        /// Output file (default stdout)
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> realmult::Result<ExitCode> {
    match command {
        Command::Pell { d, bound, json } => {
            let report = pell_report(&BigInt::from(d), bound)?;
            if json {
                println!("{}", to_json(&report));
            } else {
                println!("D = {}", report.d);
                println!(
                    "fundamental unit: (t,u) = ({},{}), norm {}",
                    report.fundamental.t, report.fundamental.u, report.fundamental.norm
                );
                println!("solutions with u <= {}:", report.bound);
                for s in &report.solutions {
                    println!("  (t,u) = ({},{}), norm {}", s.t, s.u, s.norm);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Unit {
            d,
            power,
            theta,
            json,
        } => {
            let theta = theta.as_deref().map(parse_theta).transpose()?;
            let report = unit_report(&BigInt::from(d), power, theta)?;
            if json {
                println!("{}", to_json(&report));
            } else {
                println!(
                    "epsilon_0^{} over D = {}: (t,u) = ({},{}), norm {}",
                    report.power, report.d, report.unit.t, report.unit.u, report.unit.norm
                );
                println!("value: {}", report.value);
                println!(
                    "theta = ({} + sqrt({}))/{} with (k,l,m) = ({},{},{})",
                    neg(&report.theta.l),
                    report.theta.discriminant,
                    two_k(&report.theta.k),
                    report.theta.k,
                    report.theta.l,
                    report.theta.m
                );
                println!("trace: tau = {}", fmt_linear(&report.trace));
                if report.trivial {
                    println!("note: n = 0 is the trivial unit; it defines no real multiplication");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Cf { k, l, m, json } => {
            let theta = QuadraticIrrational::new(k, l, m)?;
            let report = cf_report(&theta);
            if json {
                println!("{}", to_json(&report));
            } else {
                println!("theta = {theta}");
                println!("preperiod: [{}]", report.preperiod.join(", "));
                println!("period:    [{}]", report.period.join(", "));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Equiv {
            k1,
            l1,
            m1,
            k2,
            l2,
            m2,
            json,
        } => {
            let t1 = QuadraticIrrational::new(k1, l1, m1)?;
            let t2 = QuadraticIrrational::new(k2, l2, m2)?;
            let report = equiv_report(&t1, &t2);
            if json {
                println!("{}", to_json(&report));
            } else if let Some(w) = &report.witness {
                println!("equivalent: theta1 = g theta2 for g = {}", fmt_matrix(w));
            } else {
                println!("not equivalent: continued-fraction tails never merge");
            }
            Ok(verdict(report.equivalent))
        }
        Command::Kgroups {
            k,
            l,
            m,
            power,
            g,
            json,
        } => {
            let theta = QuadraticIrrational::new(k, l, m)?;
            let g = Mat2::from_str(&g)?;
            let report = kgroups_report(&theta, power, g)?;
            if json {
                println!("{}", to_json(&report));
            } else {
                println!(
                    "theta normalized to ({} + sqrt({}))/{}, (k,l,m) = ({},{},{})",
                    neg(&report.input.theta.l),
                    report.input.theta.discriminant,
                    two_k(&report.input.theta.k),
                    report.input.theta.k,
                    report.input.theta.l,
                    report.input.theta.m
                );
                println!(
                    "tau(q) = epsilon_0^{}: (t,u) = ({},{}), norm {}",
                    report.input.power, report.pell.t, report.pell.u, report.pell.norm
                );
                println!("trace coordinates: tau = {}", fmt_linear(&report.trace));
                println!("stabilizer: {}", fmt_matrix(&report.matrices.stabilizer));
                println!("K0 matrix:  {}", fmt_matrix(&report.matrices.k0));
                println!("A0 = 1-M:   {}", fmt_matrix(&report.matrices.a0));
                println!("B  = 1-g:   {}", fmt_matrix(&report.matrices.b));
                println!("K0 = {}", fmt_group(&report.k0));
                println!("K1 = {}", fmt_group(&report.k1));
                println!(
                    "theorem: s = {}, cofactor = {}, cross-check {}",
                    report.theorem.s,
                    report.theorem.cofactor,
                    if report.theorem.agrees {
                        "agrees"
                    } else {
                        "FAILS"
                    }
                );
            }
            if !report.theorem.agrees {
                eprintln!("error: closed form and Smith normal form disagree");
                return Ok(ExitCode::from(3));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Morita {
            first,
            n1,
            g1,
            second,
            n2,
            g2,
            json,
        } => {
            let d1 = RMBimoduleData::new(&parse_theta(&first)?, n1, Mat2::from_str(&g1)?)?;
            let d2 = RMBimoduleData::new(&parse_theta(&second)?, n2, Mat2::from_str(&g2)?)?;
            let report = morita_report(&d1, &d2);
            if json {
                println!("{}", to_json(&report));
            } else {
                println!(
                    "first:  K0 = {}, K1 = {}",
                    fmt_group(&report.first_k0),
                    fmt_group(&report.first_k1)
                );
                println!(
                    "second: K0 = {}, K1 = {}",
                    fmt_group(&report.second_k0),
                    fmt_group(&report.second_k1)
                );
                println!(
                    "verdict: {}",
                    if report.equivalent {
                        "Morita equivalent"
                    } else {
                        "not Morita equivalent"
                    }
                );
                println!(
                    "direct sufficient condition (same D, same unit, same B-cokernel): {}",
                    if report.corollary_applies {
                        "applies"
                    } else {
                        "does not apply"
                    }
                );
            }
            Ok(verdict(report.equivalent))
        }
        Command::Examples {
            json,
            self_test_corrupt,
        } => {
            let checks = worked_examples(self_test_corrupt);
            let all_pass = checks.iter().all(|c| c.pass);
            if json {
                println!("{}", to_json(&checks));
            } else {
                for c in &checks {
                    if c.pass {
                        println!("PASS {}", c.name);
                    } else {
                        println!("FAIL {} (expected {}, got {})", c.name, c.expected, c.got);
                    }
                }
            }
            Ok(verdict(all_pass))
        }
        Command::Table {
            dmax,
            nrange,
            format,
            json,
            out,
        } => {
            let format = if json { TableFormat::Json } else { format };
            let (n_min, n_max) = parse_range(&nrange)?;
            let rows = table_rows(dmax, n_min, n_max)?;
            let text = match format {
                TableFormat::Csv => table_to_csv(&rows),
                TableFormat::Json => to_json(&rows) + "\n",
            };
            match out {
                Some(path) => std::fs::write(&path, &text).map_err(|e| {
                    Error::ParseInput(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{text}"),
            }
            // self-check: CSV parses back to the same rows
            if format == TableFormat::Csv {
                debug_assert_eq!(table_from_csv(&text).as_deref(), Ok(rows.as_slice()));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn verdict(positive: bool) -> ExitCode {
    if positive {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn fmt_matrix(m: &report::MatrixRepr) -> String {
    format!("({},{};{},{})", m[0][0], m[0][1], m[1][0], m[1][1])
}

/// Renders c*theta + d with the sign folded into the operator.
fn fmt_linear(trace: &report::TraceRepr) -> String {
    match trace.d.strip_prefix('-') {
        Some(positive) => format!("{}*theta - {}", trace.c, positive),
        None if trace.d == "0" => format!("{}*theta", trace.c),
        None => format!("{}*theta + {}", trace.c, trace.d),
    }
}

fn fmt_group(g: &report::GroupRepr) -> String {
    let rank: usize = g.free_rank.parse().unwrap_or(0);
    let mut parts = Vec::new();
    match rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    for t in &g.torsion {
        parts.push(format!("Z/{t}"));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" (+) ")
    }
}

fn neg(s: &str) -> String {
    if let Some(stripped) = s.strip_prefix('-') {
        stripped.to_string()
    } else if s == "0" {
        s.to_string()
    } else {
        format!("-{s}")
    }
}

fn two_k(k: &str) -> String {
    let k: BigInt = k.parse().unwrap_or_else(|_| BigInt::from(0));
    (k * BigInt::from(2)).to_string()
}

/// Parses an inclusive "min..max" range of unit powers.
fn parse_range(text: &str) -> realmult::Result<(i64, i64)> {
    let bad = || Error::ParseInput(format!("expected \"min..max\", got {text:?}"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}
