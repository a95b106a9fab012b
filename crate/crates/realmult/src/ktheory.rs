//! K-groups of the Cuntz-Pimsner algebra of a real-multiplication bimodule.
//!
//! The six-term exact sequence collapses to two integer matrices: with
//! M the K_0 matrix of the bimodule, A0 = 1 - M, and B = 1 - g,
//!
//!   K_0 = coker(A0) (+) ker(B),   K_1 = coker(B) (+) ker(A0).
//!
//! det(A0) is 2 - t for norm +1 units and -t for norm -1 units, never zero
//! for a nontrivial unit, so ker(A0) = 0 and the splitting is forced. The
//! closed-form torsion s and (2-t)/s (resp. t/s) is evaluated without
//! factoring anything: odd primes common to u and the determinant always
//! carry their full multiplicity from u into s, and the power of two is a
//! direct valuation comparison.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::abelian::AbelianGroup;
use crate::bimodule::{k0_matrix, RMBimoduleData};
use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::pell::Unit;
use crate::quad::QuadraticIrrational;

/// K_0 and K_1 of one Cuntz-Pimsner algebra, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KGroups {
    pub k0: AbelianGroup,
    pub k1: AbelianGroup,
}

/// The closed-form torsion prediction: K_0 torsion is Z/s (+) Z/cofactor
/// where s is the largest divisor of u whose square divides |2-t| (norm +1)
/// or |t| (norm -1), and cofactor = |2-t|/s resp. |t|/s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionPrediction {
    pub s: BigInt,
    pub cofactor: BigInt,
    /// Which Pell case produced the prediction: +1 or -1.
    pub norm: i32,
}

impl TorsionPrediction {
    /// The predicted torsion group in canonical form. s divides the
    /// cofactor because s^2 divides the determinant, so the chain holds.
    pub fn group(&self) -> AbelianGroup {
        let torsion: Vec<BigInt> = [self.s.clone(), self.cofactor.clone()]
            .into_iter()
            .filter(|f| f > &BigInt::one())
            .collect();
        AbelianGroup::new(0, torsion)
    }
}

/// Largest divisor of x all of whose prime factors divide t, taken with
/// their full multiplicity from x. Pure gcd iteration, no factoring.
fn support_part(mut x: BigInt, mut t: BigInt) -> BigInt {
    let mut result = BigInt::one();
    loop {
        let g = x.gcd(&t);
        if g.is_one() {
            return result;
        }
        x /= &g;
        result *= &g;
        t = g;
    }
}

fn two_adic_valuation(x: &BigInt) -> u64 {
    debug_assert!(!x.is_zero());
    x.trailing_zeros().unwrap_or(0)
}

/// The maximal s with s | u and s^2 | |2-t| (norm +1) or s^2 | |t|
/// (norm -1), plus the cofactor.
///
/// For an odd prime p dividing both u and the determinant, the Pell
/// relation (2-t)(2+t) = -D u^2 (resp. t^2 + 4 = D u^2) forces
/// v_p(det) = v_p(D) + 2 v_p(u) >= 2 v_p(u), so v_p(s) = v_p(u); odd primes
/// of u not dividing the determinant contribute nothing. Only the prime 2
/// needs an explicit valuation comparison. Equivalent to descending over
/// the divisors of u, but with no factoring.
pub fn theorem_s(unit: &Unit) -> Result<TorsionPrediction> {
    if unit.is_trivial() {
        return Err(Error::TrivialUnit);
    }
    let norm = unit.norm();
    let target = if norm == 1 {
        (BigInt::from(2) - unit.t()).abs()
    } else {
        unit.t().abs()
    };
    assert!(
        target.is_positive(),
        "the determinant 2-t resp. -t vanishes only for the trivial unit"
    );
    let u = unit.u().abs();

    let two_exp = two_adic_valuation(&u).min(two_adic_valuation(&target) / 2);
    let odd_u = &u >> two_adic_valuation(&u);
    let odd_target = &target >> two_adic_valuation(&target);
    let s = support_part(odd_u, odd_target) << two_exp;

    let (cofactor, rem) = target.div_rem(&s);
    assert!(rem.is_zero(), "s must divide the determinant");
    Ok(TorsionPrediction { s, cofactor, norm })
}

/// K_0 and K_1 from the exact sequence, via Smith normal forms of
/// A0 = 1 - M and B = 1 - g.
pub fn k_groups(data: &RMBimoduleData) -> KGroups {
    let a0 = Mat2::identity().sub(&data.k0_matrix());
    let b = Mat2::identity().sub(data.g());
    let coker_a0 = a0.cokernel();
    // det(A0) = 2-t or -t is nonzero for every nontrivial unit, so the
    // K_0 part of A0 is pure torsion and K_1 gains nothing from it.
    assert_eq!(coker_a0.free_rank(), 0);
    assert_eq!(a0.kernel_rank(), 0);
    KGroups {
        k0: coker_a0.plus_free(b.kernel_rank()),
        k1: b.cokernel().plus_free(a0.kernel_rank()),
    }
}

/// Checks det(1 - M) = 2 - t (norm +1) resp. -t (norm -1) for the K_0
/// matrix M of (theta, unit).
pub fn det_identity_check(theta: &QuadraticIrrational, unit: &Unit) -> Result<bool> {
    let m = k0_matrix(theta, unit)?;
    let det = Mat2::identity().sub(&m).det();
    let expected = if unit.norm() == 1 {
        BigInt::from(2) - unit.t()
    } else {
        -unit.t()
    };
    Ok(det == expected)
}

/// Cross-checks the closed-form torsion against the Smith normal form of
/// 1 - M. The two computations are independent: one never factors, the
/// other never sees the Pell data.
pub fn cross_check_theorem(theta: &QuadraticIrrational, unit: &Unit) -> Result<bool> {
    let prediction = theorem_s(unit)?;
    let m = k0_matrix(theta, unit)?;
    let coker = Mat2::identity().sub(&m).cokernel();
    Ok(coker.is_isomorphic(&prediction.group()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pell::fundamental_unit;

    fn theta(k: i64, l: i64, m: i64) -> QuadraticIrrational {
        QuadraticIrrational::new(k, l, m).unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn unit(t: i64, u: i64, d: i64) -> Unit {
        Unit::new(big(t), big(u), big(d)).unwrap()
    }

    fn group(free: usize, torsion: &[i64]) -> AbelianGroup {
        AbelianGroup::new(free, torsion.iter().map(|&t| big(t)).collect())
    }

    #[test]
    fn theorem_s_examples() {
        // tau(q) = (3 - sqrt(5))/2: norm +1, |2-t| = 1, trivial torsion
        let p = theorem_s(&unit(3, -1, 5)).unwrap();
        assert_eq!((p.s.clone(), p.cofactor.clone()), (big(1), big(1)));
        assert_eq!(p.group(), AbelianGroup::trivial());

        // tau(q) = sqrt(5) - 2 over the golden theta: Z/2 (+) Z/2
        let p = theorem_s(&unit(-4, 2, 5)).unwrap();
        assert_eq!((p.s.clone(), p.cofactor.clone()), (big(2), big(2)));
        assert_eq!(p.group(), group(0, &[2, 2]));

        // tau(q) = sqrt(5) - 2 over theta = sqrt(5) - 2: Z/4
        let p = theorem_s(&unit(-4, 1, 20)).unwrap();
        assert_eq!((p.s.clone(), p.cofactor.clone()), (big(1), big(4)));
        assert_eq!(p.group(), group(0, &[4]));

        assert_eq!(
            theorem_s(&Unit::one(big(5)).unwrap()),
            Err(Error::TrivialUnit)
        );
    }

    #[test]
    fn theorem_s_bookkeeping() {
        for (t, u, d) in [(18i64, 8, 5), (7, 3, 5), (123, 55, 5), (-4, 2, 5)] {
            let e = unit(t, u, d);
            let p = theorem_s(&e).unwrap();
            let target = if p.norm == 1 {
                (big(2) - e.t()).abs()
            } else {
                e.t().abs()
            };
            assert_eq!(&p.s * &p.cofactor, target);
            assert!(((&p.s * &p.s).is_one() || (&target % (&p.s * &p.s)).is_zero()));
            assert!((e.u().abs() % &p.s).is_zero());
        }
    }

    /// The definition taken literally: descend over the divisors of |u| and
    /// take the first whose square divides the determinant. Only usable when
    /// |u| is small enough to factor by trial division.
    fn theorem_s_by_divisor_descent(e: &Unit) -> BigInt {
        let target = if e.norm() == 1 {
            (big(2) - e.t()).abs()
        } else {
            e.t().abs()
        };
        let u = e.u().abs();
        let mut divisors = Vec::new();
        let mut probe = BigInt::one();
        while &probe * &probe <= u {
            if (&u % &probe).is_zero() {
                divisors.push(probe.clone());
                divisors.push(&u / &probe);
            }
            probe += 1u32;
        }
        divisors.sort();
        divisors.dedup();
        divisors
            .into_iter()
            .rev()
            .find(|s| (&target % (s * s)).is_zero())
            .expect("1 always qualifies")
    }

    #[test]
    fn theorem_s_matches_divisor_descent() {
        for d in [5i64, 8, 12, 13, 20, 40, 60, 73] {
            let eps = fundamental_unit(&big(d)).unwrap();
            for n in [-5i64, -4, -3, -2, -1, 1, 2, 3, 4, 5] {
                let e = eps.pow(n);
                let p = theorem_s(&e).unwrap();
                assert_eq!(
                    p.s,
                    theorem_s_by_divisor_descent(&e),
                    "s mismatch for D={d}, n={n}"
                );
            }
        }
    }

    #[test]
    fn k_groups_worked_examples() {
        let golden = theta(1, 1, -1);
        let id = Mat2::identity();

        let data = RMBimoduleData::new(&golden, -1, id.clone()).unwrap();
        let kg = k_groups(&data);
        assert_eq!(kg.k0, group(2, &[]));
        assert_eq!(kg.k1, group(2, &[]));

        let data = RMBimoduleData::new(&golden, -3, id.clone()).unwrap();
        let kg = k_groups(&data);
        assert_eq!(kg.k0, group(2, &[2, 2]));
        assert_eq!(kg.k1, group(2, &[]));

        let data = RMBimoduleData::new(&theta(1, 4, -1), -1, id).unwrap();
        let kg = k_groups(&data);
        assert_eq!(kg.k0, group(2, &[4]));
        assert_eq!(kg.k1, group(2, &[]));
    }

    #[test]
    fn k_groups_with_nontrivial_g() {
        let golden = theta(1, 1, -1);
        // shear: B = 1 - g = (0,-1;0,0), kernel rank 1, cokernel Z
        let data = RMBimoduleData::new(&golden, -3, Mat2::new(1, 1, 0, 1)).unwrap();
        let kg = k_groups(&data);
        assert_eq!(kg.k0, group(1, &[2, 2]));
        assert_eq!(kg.k1, group(1, &[]));

        // swap: B = 1 - g = (1,-1;-1,1) has kernel rank 1 and cokernel Z
        let data = RMBimoduleData::new(&golden, -3, Mat2::new(0, 1, 1, 0)).unwrap();
        let kg = k_groups(&data);
        assert_eq!(kg.k0, group(1, &[2, 2]));
        assert_eq!(kg.k1, group(1, &[]));

        // rotation: B = 1 - g = (1,1;-1,1) is invertible with det 2
        let data = RMBimoduleData::new(&golden, -3, Mat2::new(0, -1, 1, 0)).unwrap();
        let kg = k_groups(&data);
        assert_eq!(kg.k0, group(0, &[2, 2]));
        assert_eq!(kg.k1, group(0, &[2]));
    }

    #[test]
    fn det_identity_examples() {
        let golden = theta(1, 1, -1);
        let eps = fundamental_unit(&big(5)).unwrap();
        assert!(det_identity_check(&golden, &eps.pow(-1)).unwrap());
        assert!(det_identity_check(&golden, &eps.pow(-2)).unwrap());
        assert!(det_identity_check(&golden, &eps.pow(-3)).unwrap());
        // concrete values: det(1,-1;-1,2) = 1 = -t, det(2,-2;-2,4) = 4 = -t
        let a0 = Mat2::identity().sub(&k0_matrix(&golden, &eps.pow(-1)).unwrap());
        assert_eq!(a0.det(), big(1));
        let a0 = Mat2::identity().sub(&k0_matrix(&golden, &eps.pow(-3)).unwrap());
        assert_eq!(a0.det(), big(4));
    }

    #[test]
    fn cross_check_examples() {
        let golden = theta(1, 1, -1);
        let eps5 = fundamental_unit(&big(5)).unwrap();
        assert!(cross_check_theorem(&golden, &eps5.pow(-3)).unwrap());

        let th20 = theta(1, 4, -1);
        let eps20 = fundamental_unit(&big(20)).unwrap();
        assert!(cross_check_theorem(&th20, &eps20.pow(-1)).unwrap());
    }

    #[test]
    fn torsion_order_equals_determinant() {
        for (k, l, m) in [(1, 1, -1), (1, 4, -1), (3, 2, -3)] {
            let th = theta(k, l, m);
            let eps = fundamental_unit(&th.discriminant()).unwrap();
            for n in [-4i64, -2, -1, 1, 3] {
                let u = eps.pow(n);
                let m0 = k0_matrix(&th, &u).unwrap();
                let a0 = Mat2::identity().sub(&m0);
                let coker = a0.cokernel();
                assert_eq!(coker.torsion_order(), a0.det().abs());
            }
        }
    }
}
