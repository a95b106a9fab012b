//! Units of the real quadratic order of discriminant D, via Pell's equation
//! t^2 - D u^2 = +-4.
//!
//! A solution (t,u) encodes the unit (t + u sqrt(D))/2; the fundamental unit
//! is the smallest one exceeding 1 and generates the whole group up to sign.
//! It is computed from one period of the continued fraction of the principal
//! quadratic irrational of discriminant D, and cross-checked against a
//! brute-force sweep below a configurable bound.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cf::expansion_with_states;
use crate::error::{Error, Result};
use crate::quad::{is_perfect_square, sign_x_plus_y_sqrt_d, QuadraticIrrational, Surd};

/// Default ceiling for the brute-force minimality check inside
/// [`fundamental_unit`].
pub const DEFAULT_CHECK_BOUND: u64 = 1_000_000;

/// The unit (t + u sqrt(D))/2 of the order of discriminant D, with
/// t^2 - D u^2 = +-4.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Unit {
    t: BigInt,
    u: BigInt,
    d: BigInt,
}

impl Unit {
    /// Wraps a Pell solution. D must be a valid discriminant; the Pell
    /// condition itself is a type invariant and is asserted.
    pub fn new(t: BigInt, u: BigInt, d: BigInt) -> Result<Unit> {
        validate_discriminant(&d)?;
        let pell = &t * &t - &d * &u * &u;
        assert!(
            pell.abs() == BigInt::from(4),
            "({t},{u}) is not a solution of t^2 - {d} u^2 = +-4"
        );
        Ok(Unit { t, u, d })
    }

    /// The unit 1, i.e. (t,u) = (2,0).
    pub fn one(d: BigInt) -> Result<Unit> {
        Unit::new(BigInt::from(2), BigInt::zero(), d)
    }

    pub fn t(&self) -> &BigInt {
        &self.t
    }

    pub fn u(&self) -> &BigInt {
        &self.u
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.d
    }

    /// The norm (t^2 - D u^2)/4, either +1 or -1.
    pub fn norm(&self) -> i32 {
        if (&self.t * &self.t - &self.d * &self.u * &self.u).is_positive() {
            1
        } else {
            -1
        }
    }

    /// True iff the unit is +-1, i.e. u = 0.
    pub fn is_trivial(&self) -> bool {
        self.u.is_zero()
    }

    /// Exact sign of (t + u sqrt(D))/2.
    pub fn is_positive(&self) -> bool {
        sign_x_plus_y_sqrt_d(&self.t, &self.u, &self.d) == Ordering::Greater
    }

    /// Exact comparison of values; both units must live over the same D.
    pub fn value_cmp(&self, other: &Unit) -> Ordering {
        assert_eq!(self.d, other.d, "comparing units of different orders");
        sign_x_plus_y_sqrt_d(&(&self.t - &other.t), &(&self.u - &other.u), &self.d)
    }

    /// The value as a surd; the unit must not be +-1 (u != 0).
    pub fn value_surd(&self) -> Surd {
        assert!(
            !self.u.is_zero(),
            "the value of +-1 is rational, not a surd"
        );
        // (t + u sqrt(D))/2 = (t + sqrt(D u^2))/2, flipping signs when u < 0.
        let radicand = &self.d * &self.u * &self.u;
        if self.u.is_positive() {
            Surd::new(self.t.clone(), BigInt::from(2), radicand)
        } else {
            Surd::new(-&self.t, BigInt::from(-2), radicand)
        }
    }

    /// Product of two units of the same order.
    pub fn mul(&self, other: &Unit) -> Result<Unit> {
        if self.d != other.d {
            return Err(Error::MixedDiscriminants {
                left: self.d.clone(),
                right: other.d.clone(),
            });
        }
        // (t1 + u1 s)(t2 + u2 s)/4 with s = sqrt(D); both halves are exact
        // because t = D u (mod 2) for every Pell solution.
        let t2 = &self.t * &other.t + &self.d * &self.u * &other.u;
        let u2 = &self.t * &other.u + &self.u * &other.t;
        let (t, tr) = t2.div_rem(&BigInt::from(2));
        let (u, ur) = u2.div_rem(&BigInt::from(2));
        assert!(tr.is_zero() && ur.is_zero());
        Ok(Unit {
            t,
            u,
            d: self.d.clone(),
        })
    }

    /// The inverse (N t, -N u) where N is the norm.
    pub fn inverse(&self) -> Unit {
        let n = BigInt::from(self.norm());
        Unit {
            t: &n * &self.t,
            u: -&n * &self.u,
            d: self.d.clone(),
        }
    }

    /// n-th power, with negative n through the inverse and n = 0 giving 1.
    pub fn pow(&self, n: i64) -> Unit {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut result = Unit {
            t: BigInt::from(2),
            u: BigInt::zero(),
            d: self.d.clone(),
        };
        let mut square = base;
        let mut exp = n.unsigned_abs();
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(&square).expect("same order");
            }
            exp >>= 1;
            if exp > 0 {
                square = square.mul(&square).expect("same order");
            }
        }
        result
    }

    /// Trace coordinates (c,d) with c theta + d = (t + u sqrt(D))/2, for a
    /// positive unit over the order of theta: c = k u and d = (t + l u)/2.
    pub fn trace_coords(&self, theta: &QuadraticIrrational) -> Result<(BigInt, BigInt)> {
        let disc = theta.discriminant();
        if disc != self.d {
            return Err(Error::DiscriminantMismatch {
                theta: disc,
                unit: self.d.clone(),
            });
        }
        if !self.is_positive() {
            return Err(Error::NonPositiveUnit);
        }
        let c = theta.k() * &self.u;
        let (d, rem) = (&self.t + theta.l() * &self.u).div_rem(&BigInt::from(2));
        assert!(
            rem.is_zero(),
            "t = l u (mod 2) is forced by the Pell condition"
        );
        Ok((c, d))
    }
}

impl std::fmt::Display for Unit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} + {} sqrt({}))/2", self.t, self.u, self.d)
    }
}

/// D must be positive, not a perfect square, and 0 or 1 mod 4.
pub fn validate_discriminant(d: &BigInt) -> Result<()> {
    let residue = d.mod_floor(&BigInt::from(4));
    if !d.is_positive() || is_perfect_square(d) || residue > BigInt::one() {
        return Err(Error::InvalidDiscriminant { d: d.clone() });
    }
    Ok(())
}

/// All valid discriminants up to and including dmax, ascending.
pub fn discriminants_up_to(dmax: u64) -> Vec<BigInt> {
    (5..=dmax)
        .map(BigInt::from)
        .filter(|d| validate_discriminant(d).is_ok())
        .collect()
}

/// The principal quadratic irrational of discriminant D: k = 1,
/// l = D mod 2, m = (l^2 - D)/4.
pub fn principal_theta(d: &BigInt) -> Result<QuadraticIrrational> {
    validate_discriminant(d)?;
    let l = d.mod_floor(&BigInt::from(2));
    let m = (&l * &l - d) / BigInt::from(4);
    Ok(QuadraticIrrational::new(BigInt::one(), l, m).expect("valid discriminant"))
}

/// The fundamental unit of discriminant D: the smallest unit > 1.
///
/// One period of the continued fraction of the principal irrational of
/// discriminant D gives the fundamental automorph, whose trace and
/// off-diagonal entry are (t,u). A brute-force sweep below
/// [`DEFAULT_CHECK_BOUND`] double-checks minimality.
pub fn fundamental_unit(d: &BigInt) -> Result<Unit> {
    fundamental_unit_with_check_bound(d, DEFAULT_CHECK_BOUND)
}

/// [`fundamental_unit`] with an explicit cross-check ceiling.
pub fn fundamental_unit_with_check_bound(d: &BigInt, check_bound: u64) -> Result<Unit> {
    let theta = principal_theta(d)?;
    let (cf, states) = expansion_with_states(&theta);
    let start = QuadraticIrrational::from_surd(&states[cf.preperiod.len()]);
    debug_assert_eq!(start.discriminant(), *d);
    // One turn of the period around the cycle start is the fundamental
    // automorph of its form.
    let automorph = {
        let mut g = crate::mat2::Mat2::identity();
        for a in &cf.period {
            g = g.mul(&crate::mat2::Mat2 {
                a: a.clone(),
                b: BigInt::one(),
                c: BigInt::one(),
                d: BigInt::zero(),
            });
        }
        g
    };
    // For a stabilizer (a,b;c,d) of theta, (c, d-a, -b) is proportional to
    // (k,l,m) by u, and the trace is t.
    let (u, rem) = automorph.c.div_rem(start.k());
    assert!(
        rem.is_zero(),
        "automorph is not a stabilizer of the cycle start"
    );
    let t = automorph.trace();
    let unit = Unit::new(t, u, d.clone())?;

    // Minimality cross-check: no solution may exist with smaller u.
    let ceiling = match (&unit.u - 1u32).to_u64() {
        Some(value) => value.min(check_bound),
        None => check_bound,
    };
    if let Some(smaller) = first_solution_up_to(d, ceiling) {
        return Ok(smaller);
    }
    Ok(unit)
}

/// Smallest-value solution with 1 <= u <= bound, if any.
fn first_solution_up_to(d: &BigInt, bound: u64) -> Option<Unit> {
    if bound == 0 {
        return None;
    }
    if let Some(d128) = u128_sweep_domain(d, bound) {
        for u in 1..=bound as u128 {
            if let Some((t, _)) = u128_solution(d128, u) {
                return Some(Unit {
                    t: BigInt::from(t),
                    u: BigInt::from(u),
                    d: d.clone(),
                });
            }
        }
        return None;
    }
    let mut u = BigInt::one();
    let bound = BigInt::from(bound);
    while u <= bound {
        let v = d * &u * &u;
        for target in [&v - 4u32, &v + 4u32] {
            if target.is_positive() && is_perfect_square(&target) {
                return Some(Unit {
                    t: target.sqrt(),
                    u,
                    d: d.clone(),
                });
            }
        }
        u += 1u32;
    }
    None
}

/// Returns d as u128 when the whole sweep fits in u128 arithmetic.
fn u128_sweep_domain(d: &BigInt, bound: u64) -> Option<u128> {
    let d128 = d.to_u128()?;
    let b = bound as u128;
    d128.checked_mul(b.checked_mul(b)?)?.checked_add(4)?;
    Some(d128)
}

/// The solution (t, norm) at this exact u, preferring norm -1 (smaller t).
fn u128_solution(d: u128, u: u128) -> Option<(u128, i32)> {
    let v = d * u * u;
    if v >= 4 {
        let w = v - 4;
        let r = w.isqrt();
        if r * r == w && r > 0 {
            return Some((r, -1));
        }
    }
    let w = v + 4;
    let r = w.isqrt();
    if r * r == w {
        return Some((r, 1));
    }
    None
}

/// All solutions of t^2 - D u^2 = +-4 with t > 0 and 1 <= u <= u_bound,
/// sorted by value. This is the exhaustive oracle for [`fundamental_unit`].
pub fn brute_force_pell(d: &BigInt, u_bound: u64) -> Result<Vec<Unit>> {
    validate_discriminant(d)?;
    let mut found = Vec::new();
    if let Some(d128) = u128_sweep_domain(d, u_bound) {
        for u in 1..=u_bound as u128 {
            let v = d128 * u * u;
            if v >= 4 {
                let w = v - 4;
                let r = w.isqrt();
                if r * r == w && r > 0 {
                    found.push(Unit {
                        t: BigInt::from(r),
                        u: BigInt::from(u),
                        d: d.clone(),
                    });
                }
            }
            let w = v + 4;
            let r = w.isqrt();
            if r * r == w {
                found.push(Unit {
                    t: BigInt::from(r),
                    u: BigInt::from(u),
                    d: d.clone(),
                });
            }
        }
    } else {
        let mut u = BigInt::one();
        let bound = BigInt::from(u_bound);
        while u <= bound {
            let v = d * &u * &u;
            for target in [&v - 4u32, &v + 4u32] {
                if target.is_positive() && is_perfect_square(&target) {
                    found.push(Unit {
                        t: target.sqrt(),
                        u: u.clone(),
                        d: d.clone(),
                    });
                }
            }
            u += 1u32;
        }
    }
    // The sweep emits (u, then t) ascending, which is already value order;
    // keep the explicit sort as the contract.
    found.sort_by(|x, y| x.value_cmp(y));
    Ok(found)
}

/// One unit power with its trace coordinates over theta.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub n: i64,
    pub unit: Unit,
    pub c: BigInt,
    pub d: BigInt,
    /// n = 0 is the trivial bimodule (q = 1) and is excluded from real
    /// multiplication; it is still listed, flagged.
    pub trivial: bool,
}

/// Trace values tau = epsilon_0^n for n in [n_min, n_max], with the
/// coordinates (c,d) such that tau = c theta + d.
pub fn enumerate_traces(
    theta: &QuadraticIrrational,
    n_min: i64,
    n_max: i64,
) -> Result<Vec<TraceEntry>> {
    let eps = fundamental_unit(&theta.discriminant())?;
    let mut entries = Vec::new();
    for n in n_min..=n_max {
        let unit = eps.pow(n);
        let (c, d) = unit.trace_coords(theta)?;
        entries.push(TraceEntry {
            n,
            unit,
            c,
            d,
            trivial: n == 0,
        });
    }
    Ok(entries)
}
