//! Structured output shared by the CLI and the integration tests: JSON
//! reports, the batch classification table, and the worked-example
//! regression. Every integer is serialized as a decimal string so that
//! arbitrary-precision values survive any JSON reader.

use std::collections::HashMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::abelian::AbelianGroup;
use crate::bimodule::{k0_matrix, stabilizer_matrix, RMBimoduleData};
use crate::cf::{continued_fraction, gl2z_equivalent};
use crate::error::{Error, Result};
use crate::ktheory::{cross_check_theorem, det_identity_check, k_groups, theorem_s};
use crate::mat2::Mat2;
use crate::morita::{corollary_check, morita_equivalent, CorollaryOutcome};
use crate::pell::{brute_force_pell, discriminants_up_to, fundamental_unit, principal_theta, Unit};
use crate::quad::QuadraticIrrational;

/// Parses "k,l,m" into a quadratic irrational; whitespace is ignored.
pub fn parse_theta(text: &str) -> Result<QuadraticIrrational> {
    let compact: String = text.chars().filter(|ch| !ch.is_whitespace()).collect();
    let parts: Vec<&str> = compact.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::ParseInput(format!(
            "expected \"k,l,m\", got {text:?}"
        )));
    }
    let parse = |s: &str| {
        BigInt::from_str(s).map_err(|_| Error::ParseInput(format!("bad integer {s:?} in {text:?}")))
    };
    QuadraticIrrational::new(parse(parts[0])?, parse(parts[1])?, parse(parts[2])?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitRepr {
    pub t: String,
    pub u: String,
    pub norm: String,
}

impl UnitRepr {
    pub fn from_unit(unit: &Unit) -> UnitRepr {
        UnitRepr {
            t: unit.t().to_string(),
            u: unit.u().to_string(),
            norm: unit.norm().to_string(),
        }
    }
}

pub type MatrixRepr = [[String; 2]; 2];

pub fn matrix_repr(m: &Mat2) -> MatrixRepr {
    [
        [m.a.to_string(), m.b.to_string()],
        [m.c.to_string(), m.d.to_string()],
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRepr {
    pub free_rank: String,
    pub torsion: Vec<String>,
}

impl GroupRepr {
    pub fn from_group(g: &AbelianGroup) -> GroupRepr {
        GroupRepr {
            free_rank: g.free_rank().to_string(),
            torsion: g.torsion().iter().map(|t| t.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaRepr {
    pub k: String,
    pub l: String,
    pub m: String,
    pub discriminant: String,
}

impl ThetaRepr {
    pub fn from_theta(theta: &QuadraticIrrational) -> ThetaRepr {
        ThetaRepr {
            k: theta.k().to_string(),
            l: theta.l().to_string(),
            m: theta.m().to_string(),
            discriminant: theta.discriminant().to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PellReport {
    pub d: String,
    pub fundamental: UnitRepr,
    pub bound: String,
    pub solutions: Vec<UnitRepr>,
}

pub fn pell_report(d: &BigInt, bound: u64) -> Result<PellReport> {
    let fundamental = fundamental_unit(d)?;
    let solutions = brute_force_pell(d, bound)?;
    Ok(PellReport {
        d: d.to_string(),
        fundamental: UnitRepr::from_unit(&fundamental),
        bound: bound.to_string(),
        solutions: solutions.iter().map(UnitRepr::from_unit).collect(),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UnitCmdReport {
    pub d: String,
    pub power: String,
    pub unit: UnitRepr,
    pub value: String,
    pub trivial: bool,
    pub theta: ThetaRepr,
    pub trace: TraceRepr,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRepr {
    pub c: String,
    pub d: String,
}

pub fn unit_report(
    d: &BigInt,
    power: i64,
    theta: Option<QuadraticIrrational>,
) -> Result<UnitCmdReport> {
    let theta = match theta {
        Some(t) => {
            if t.discriminant() != *d {
                return Err(Error::DiscriminantMismatch {
                    theta: t.discriminant(),
                    unit: d.clone(),
                });
            }
            t
        }
        None => principal_theta(d)?,
    };
    let unit = fundamental_unit(d)?.pow(power);
    let (c, dd) = unit.trace_coords(&theta)?;
    Ok(UnitCmdReport {
        d: d.to_string(),
        power: power.to_string(),
        unit: UnitRepr::from_unit(&unit),
        value: unit.to_string(),
        trivial: power == 0,
        theta: ThetaRepr::from_theta(&theta),
        trace: TraceRepr {
            c: c.to_string(),
            d: dd.to_string(),
        },
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CfReport {
    pub theta: ThetaRepr,
    pub preperiod: Vec<String>,
    pub period: Vec<String>,
}

pub fn cf_report(theta: &QuadraticIrrational) -> CfReport {
    let cf = continued_fraction(theta);
    CfReport {
        theta: ThetaRepr::from_theta(theta),
        preperiod: cf.preperiod.iter().map(|a| a.to_string()).collect(),
        period: cf.period.iter().map(|a| a.to_string()).collect(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquivReport {
    pub first: ThetaRepr,
    pub second: ThetaRepr,
    pub equivalent: bool,
    pub witness: Option<MatrixRepr>,
}

pub fn equiv_report(theta1: &QuadraticIrrational, theta2: &QuadraticIrrational) -> EquivReport {
    let witness = gl2z_equivalent(theta1, theta2);
    EquivReport {
        first: ThetaRepr::from_theta(theta1),
        second: ThetaRepr::from_theta(theta2),
        equivalent: witness.is_some(),
        witness: witness.as_ref().map(matrix_repr),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KGroupsInput {
    pub theta: ThetaRepr,
    pub power: String,
    pub g: MatrixRepr,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatricesRepr {
    pub stabilizer: MatrixRepr,
    pub k0: MatrixRepr,
    pub a0: MatrixRepr,
    pub b: MatrixRepr,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TheoremRepr {
    pub s: String,
    pub cofactor: String,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KGroupsReport {
    pub input: KGroupsInput,
    pub pell: UnitRepr,
    pub trace: TraceRepr,
    pub matrices: MatricesRepr,
    pub k0: GroupRepr,
    pub k1: GroupRepr,
    pub theorem: TheoremRepr,
}

pub fn kgroups_report(theta: &QuadraticIrrational, power: i64, g: Mat2) -> Result<KGroupsReport> {
    let data = RMBimoduleData::new(theta, power, g)?;
    let theta = data.theta();
    let unit = data.unit();
    let stab = stabilizer_matrix(theta, unit)?;
    let m = k0_matrix(theta, unit)?;
    let a0 = Mat2::identity().sub(&m);
    let b = Mat2::identity().sub(data.g());
    let (c, d) = unit.trace_coords(theta)?;
    let groups = k_groups(&data);
    let prediction = theorem_s(unit)?;
    let agrees = cross_check_theorem(theta, unit)? && det_identity_check(theta, unit)?;
    Ok(KGroupsReport {
        input: KGroupsInput {
            theta: ThetaRepr::from_theta(theta),
            power: power.to_string(),
            g: matrix_repr(data.g()),
        },
        pell: UnitRepr::from_unit(unit),
        trace: TraceRepr {
            c: c.to_string(),
            d: d.to_string(),
        },
        matrices: MatricesRepr {
            stabilizer: matrix_repr(&stab),
            k0: matrix_repr(&m),
            a0: matrix_repr(&a0),
            b: matrix_repr(&b),
        },
        k0: GroupRepr::from_group(&groups.k0),
        k1: GroupRepr::from_group(&groups.k1),
        theorem: TheoremRepr {
            s: prediction.s.to_string(),
            cofactor: prediction.cofactor.to_string(),
            agrees,
        },
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MoritaCliReport {
    pub equivalent: bool,
    pub corollary_applies: bool,
    pub first_k0: GroupRepr,
    pub first_k1: GroupRepr,
    pub second_k0: GroupRepr,
    pub second_k1: GroupRepr,
}

pub fn morita_report(first: &RMBimoduleData, second: &RMBimoduleData) -> MoritaCliReport {
    let report = morita_equivalent(first, second);
    let corollary = corollary_check(first, second);
    MoritaCliReport {
        equivalent: report.equivalent,
        corollary_applies: corollary == CorollaryOutcome::AppliesAndEquivalent,
        first_k0: GroupRepr::from_group(&report.first.k0),
        first_k1: GroupRepr::from_group(&report.first.k1),
        second_k0: GroupRepr::from_group(&report.second.k0),
        second_k1: GroupRepr::from_group(&report.second.k1),
    }
}

/// One row of the classification table: the canonical theta of
/// discriminant D paired with the unit power n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub d: String,
    pub k: String,
    pub l: String,
    pub m: String,
    pub n: String,
    pub t: String,
    pub u: String,
    pub norm: String,
    pub s: String,
    /// Invariant factors of the K_0 torsion, comma separated; empty when
    /// the torsion is trivial.
    pub torsion: String,
    pub det_check: bool,
}

/// All rows for valid discriminants 5 <= D <= dmax and n in
/// [n_min, n_max] \ {0}, ordered by (D, n).
pub fn table_rows(dmax: u64, n_min: i64, n_max: i64) -> Result<Vec<TableRow>> {
    let discriminants = discriminants_up_to(dmax);
    if discriminants.is_empty() {
        return Err(Error::InvalidDiscriminant {
            d: BigInt::from(dmax),
        });
    }
    let mut rows = Vec::new();
    for d in &discriminants {
        let (theta, _) = principal_theta(d)?.normalize_to_unit_interval();
        let eps = fundamental_unit(d)?;
        for n in n_min..=n_max {
            if n == 0 {
                continue;
            }
            rows.push(table_row(d, &theta, &eps, n)?);
        }
    }
    Ok(rows)
}

fn table_row(d: &BigInt, theta: &QuadraticIrrational, eps: &Unit, n: i64) -> Result<TableRow> {
    let unit = eps.pow(n);
    let prediction = theorem_s(&unit)?;
    let m = k0_matrix(theta, &unit)?;
    let torsion = Mat2::identity().sub(&m).cokernel();
    let det_check = det_identity_check(theta, &unit)?;
    Ok(TableRow {
        d: d.to_string(),
        k: theta.k().to_string(),
        l: theta.l().to_string(),
        m: theta.m().to_string(),
        n: n.to_string(),
        t: unit.t().to_string(),
        u: unit.u().to_string(),
        norm: unit.norm().to_string(),
        s: prediction.s.to_string(),
        torsion: torsion
            .torsion()
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(","),
        det_check,
    })
}

/// Writes rows as RFC-4180-style CSV with a header line.
pub fn table_to_csv(rows: &[TableRow]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row).expect("in-memory CSV write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory CSV flush"))
        .expect("CSV output is UTF-8")
}

/// Parses table CSV back into rows.
pub fn table_from_csv(text: &str) -> Result<Vec<TableRow>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    reader
        .deserialize()
        .map(|row| row.map_err(|e| Error::ParseInput(e.to_string())))
        .collect()
}

/// One worked-example regression item.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExampleCheck {
    pub name: String,
    pub pass: bool,
    pub expected: String,
    pub got: String,
}

fn check<T: PartialEq + std::fmt::Debug>(name: &str, expected: T, got: T) -> ExampleCheck {
    ExampleCheck {
        name: name.to_string(),
        pass: expected == got,
        expected: format!("{expected:?}"),
        got: format!("{got:?}"),
    }
}

/// Recomputes the bundled regression set: five worked identities over
/// discriminants 5 and 20 plus the discriminant-40 comparison. With
/// `corrupt` set, one expected value is deliberately wrong; the harness
/// self-test uses it to prove failures are detected.
pub fn worked_examples(corrupt: bool) -> Vec<ExampleCheck> {
    let golden = QuadraticIrrational::new(1, 1, -1).expect("golden ratio");
    let tenth = QuadraticIrrational::new(5, -5, 1).expect("(5+sqrt(5))/10");
    let sqrt5m2 = QuadraticIrrational::new(1, 4, -1).expect("sqrt(5)-2");
    let id = Mat2::identity;
    let torsion = |data: &RMBimoduleData| Mat2::identity().sub(&data.k0_matrix()).cokernel();

    let mut checks = Vec::new();

    // tau(q) = theta over the golden ratio
    let data = RMBimoduleData::new(&golden, -1, id()).expect("example data");
    let expected_k0 = if corrupt {
        Mat2::new(0, 1, 1, 0)
    } else {
        Mat2::new(0, 1, 1, -1)
    };
    checks.push(check(
        "golden ratio, tau(q) = theta: K0 matrix and torsion",
        (expected_k0, AbelianGroup::trivial()),
        (data.k0_matrix(), torsion(&data)),
    ));

    // tau(q) = 5 theta - 3 over (5+sqrt(5))/10
    let data = RMBimoduleData::new(&tenth, -1, id()).expect("example data");
    checks.push(check(
        "theta = (5+sqrt(5))/10, tau(q) = 5 theta - 3: K0 matrix",
        Mat2::new(-3, -1, 5, 2),
        data.k0_matrix(),
    ));

    // tau(q) = sqrt(5) - 2 over the golden ratio
    let ex1 = RMBimoduleData::new(&golden, -3, id()).expect("example data");
    checks.push(check(
        "golden ratio, tau(q) = sqrt(5)-2: K0 matrix and torsion",
        (
            Mat2::new(-1, 2, 2, -3),
            AbelianGroup::new(0, vec![BigInt::from(2), BigInt::from(2)]),
        ),
        (ex1.k0_matrix(), torsion(&ex1)),
    ));

    // tau(q) = (3-sqrt(5))/2 over the golden ratio
    let data = RMBimoduleData::new(&golden, -2, id()).expect("example data");
    checks.push(check(
        "golden ratio, tau(q) = (3-sqrt(5))/2: torsion",
        AbelianGroup::trivial(),
        torsion(&data),
    ));

    // tau(q) = sqrt(5) - 2 over theta = sqrt(5) - 2, compared against the
    // Z/2 (+) Z/2 algebra
    let ex2 = RMBimoduleData::new(&sqrt5m2, -1, id()).expect("example data");
    checks.push(check(
        "theta = sqrt(5)-2, tau(q) = sqrt(5)-2: torsion Z/4, inequivalent to Z/2+Z/2",
        (AbelianGroup::new(0, vec![BigInt::from(4)]), false),
        (torsion(&ex2), morita_equivalent(&ex1, &ex2).equivalent),
    ));

    // the remark: equal discriminant 40 and unit, inequivalent angles,
    // Morita equivalent Cuntz-Pimsner algebras
    let sqrt10m3 = QuadraticIrrational::new(1, 6, -1).expect("sqrt(10)-3");
    let third = QuadraticIrrational::new(3, -4, -2).expect("(2+sqrt(10))/3");
    let angles_equivalent = gl2z_equivalent(&sqrt10m3, &third).is_some();
    let d1 = RMBimoduleData::new(&sqrt10m3, 1, id()).expect("example data");
    let d2 = RMBimoduleData::new(&third, 1, id()).expect("example data");
    let outcome = corollary_check(&d1, &d2);
    checks.push(check(
        "discriminant 40 pair: angles inequivalent, algebras equivalent",
        (false, true, true),
        (
            angles_equivalent,
            morita_equivalent(&d1, &d2).equivalent,
            outcome == CorollaryOutcome::AppliesAndEquivalent,
        ),
    ));

    checks
}

/// Groups table rows by discriminant, a convenience for callers that want
/// deterministic chunked output.
pub fn rows_by_discriminant(rows: &[TableRow]) -> HashMap<String, Vec<&TableRow>> {
    let mut map: HashMap<String, Vec<&TableRow>> = HashMap::new();
    for row in rows {
        map.entry(row.d.clone()).or_default().push(row);
    }
    map
}
