//! The GL(2,Z) stabilizer matrix attached to a unit, the induced matrix on
//! K_0, and the data record (theta, unit, g) that pins down one
//! real-multiplication Cuntz-Pimsner algebra.
//!
//! For theta with k theta^2 + l theta + m = 0 and a unit (t + u sqrt(D))/2,
//! the matrix (a,b;c,d) with a = (t-lu)/2, b = -mu, c = ku, d = (t+lu)/2
//! fixes theta, has determinant equal to the norm, and satisfies
//! c theta + d = (t + u sqrt(D))/2. The entry placement is forced by
//! (a theta + b)/(c theta + d) = theta: the coefficient vector of
//! c theta^2 + (d-a) theta - b must be proportional to (k,l,m).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::pell::{fundamental_unit, Unit};
use crate::quad::QuadraticIrrational;

/// The stabilizer (a,b;c,d) of theta with c theta + d equal to the unit.
pub fn stabilizer_matrix(theta: &QuadraticIrrational, unit: &Unit) -> Result<Mat2> {
    let disc = theta.discriminant();
    if &disc != unit.discriminant() {
        return Err(Error::DiscriminantMismatch {
            theta: disc,
            unit: unit.discriminant().clone(),
        });
    }
    if !unit.is_positive() {
        return Err(Error::NonPositiveUnit);
    }
    let (t, u) = (unit.t(), unit.u());
    let lu = theta.l() * u;
    let (a, ra) = (t - &lu).div_rem(&BigInt::from(2));
    let (d, rd) = (t + &lu).div_rem(&BigInt::from(2));
    assert!(ra.is_zero() && rd.is_zero(), "t = l u (mod 2) fails");
    Ok(Mat2 {
        a,
        b: -(theta.m() * u),
        c: theta.k() * u,
        d,
    })
}

/// The matrix of the bimodule on K_0 in the ordered basis `<[1],[p]>` with
/// tau(p) = theta: the stabilizer rearranged as (d,b;c,a). Requires
/// 0 < theta < 1, the normalization the basis presumes.
pub fn k0_matrix(theta: &QuadraticIrrational, unit: &Unit) -> Result<Mat2> {
    if !theta.is_in_unit_interval() {
        return Err(Error::ThetaNotNormalized);
    }
    let stab = stabilizer_matrix(theta, unit)?;
    Ok(Mat2 {
        a: stab.d,
        b: stab.b,
        c: stab.c,
        d: stab.a,
    })
}

/// The triple identifying one real-multiplication Cuntz-Pimsner algebra:
/// theta normalized into (0,1), a nontrivial positive unit tau(q), and the
/// free GL(2,Z) parameter g with B = 1 - g on K_1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RMBimoduleData {
    theta: QuadraticIrrational,
    unit: Unit,
    g: Mat2,
}

impl RMBimoduleData {
    /// Builds the record from a unit power: tau(q) = epsilon_0^n. The power
    /// n = 0 would give the trivial bimodule and is rejected.
    pub fn new(theta: &QuadraticIrrational, n: i64, g: Mat2) -> Result<RMBimoduleData> {
        if n == 0 {
            return Err(Error::TrivialUnit);
        }
        let eps = fundamental_unit(&theta.discriminant())?;
        RMBimoduleData::with_unit(theta, eps.pow(n), g)
    }

    /// Builds the record from an explicit unit, normalizing theta into (0,1).
    pub fn with_unit(theta: &QuadraticIrrational, unit: Unit, g: Mat2) -> Result<RMBimoduleData> {
        if !g.is_unimodular() {
            return Err(Error::NotUnimodular {
                determinant: g.det(),
            });
        }
        if unit.is_trivial() {
            if unit.is_positive() {
                return Err(Error::TrivialUnit);
            }
            return Err(Error::NonPositiveUnit);
        }
        if !unit.is_positive() {
            return Err(Error::NonPositiveUnit);
        }
        let disc = theta.discriminant();
        if &disc != unit.discriminant() {
            return Err(Error::DiscriminantMismatch {
                theta: disc,
                unit: unit.discriminant().clone(),
            });
        }
        let (normalized, _) = theta.normalize_to_unit_interval();
        Ok(RMBimoduleData {
            theta: normalized,
            unit,
            g,
        })
    }

    pub fn theta(&self) -> &QuadraticIrrational {
        &self.theta
    }

    pub fn unit(&self) -> &Unit {
        &self.unit
    }

    pub fn g(&self) -> &Mat2 {
        &self.g
    }

    pub fn k0_matrix(&self) -> Mat2 {
        k0_matrix(&self.theta, &self.unit).expect("validated at construction")
    }

    pub fn stabilizer_matrix(&self) -> Mat2 {
        stabilizer_matrix(&self.theta, &self.unit).expect("validated at construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::moebius_act;

    fn theta(k: i64, l: i64, m: i64) -> QuadraticIrrational {
        QuadraticIrrational::new(k, l, m).unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn golden_eps() -> Unit {
        fundamental_unit(&big(5)).unwrap()
    }

    #[test]
    fn stabilizer_examples() {
        let golden = theta(1, 1, -1);
        assert_eq!(
            stabilizer_matrix(&golden, &golden_eps().pow(-1)).unwrap(),
            Mat2::new(-1, 1, 1, 0)
        );
        assert_eq!(
            stabilizer_matrix(&theta(5, -5, 1), &golden_eps().pow(-1)).unwrap(),
            Mat2::new(2, -1, 5, -3)
        );
        assert_eq!(
            stabilizer_matrix(&golden, &golden_eps().pow(-3)).unwrap(),
            Mat2::new(-3, 2, 2, -1)
        );
    }

    #[test]
    fn k0_matrix_examples() {
        let golden = theta(1, 1, -1);
        assert_eq!(
            k0_matrix(&golden, &golden_eps().pow(-1)).unwrap(),
            Mat2::new(0, 1, 1, -1)
        );
        assert_eq!(
            k0_matrix(&theta(5, -5, 1), &golden_eps().pow(-1)).unwrap(),
            Mat2::new(-3, -1, 5, 2)
        );
        assert_eq!(
            k0_matrix(&golden, &golden_eps().pow(-3)).unwrap(),
            Mat2::new(-1, 2, 2, -3)
        );
    }

    #[test]
    fn k0_matrix_requires_normalized_theta() {
        // sqrt(5) is not in (0,1)
        let th = theta(1, 0, -5);
        let eps = fundamental_unit(&big(20)).unwrap();
        assert_eq!(k0_matrix(&th, &eps), Err(Error::ThetaNotNormalized));
    }

    #[test]
    fn stabilizer_fixes_theta_and_has_norm_determinant() {
        for (k, l, m) in [(1, 1, -1), (5, -5, 1), (1, 4, -1), (3, 2, -3), (7, 3, -11)] {
            let th = theta(k, l, m);
            let eps = fundamental_unit(&th.discriminant()).unwrap();
            for n in [-3i64, -2, -1, 1, 2, 3] {
                let u = eps.pow(n);
                let stab = stabilizer_matrix(&th, &u).unwrap();
                assert_eq!(moebius_act(&stab, &th).unwrap(), th);
                assert_eq!(stab.det(), big(u.norm() as i64));
                assert_eq!(stab.trace(), *u.t());
                // c theta + d is the unit value
                let value = th.eval_linear(&stab.c, &stab.d);
                assert_eq!(value, u.value_surd().scale(th.k()));
                // K0 matrix shares determinant and trace
                if th.is_in_unit_interval() {
                    let k0 = k0_matrix(&th, &u).unwrap();
                    assert_eq!(k0.det(), stab.det());
                    assert_eq!(k0.trace(), stab.trace());
                }
            }
        }
    }

    #[test]
    fn stabilizer_is_multiplicative_in_the_unit() {
        let th = theta(1, 1, -1);
        let eps = fundamental_unit(&big(5)).unwrap();
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                let lhs = stabilizer_matrix(&th, &eps.pow(a + b)).unwrap();
                let rhs = stabilizer_matrix(&th, &eps.pow(a))
                    .unwrap()
                    .mul(&stabilizer_matrix(&th, &eps.pow(b)).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn data_construction() {
        let golden = theta(1, 1, -1);
        let data = RMBimoduleData::new(&golden, -1, Mat2::identity()).unwrap();
        assert_eq!(data.theta(), &golden);
        assert_eq!(data.k0_matrix(), Mat2::new(0, 1, 1, -1));

        assert_eq!(
            RMBimoduleData::new(&golden, 0, Mat2::identity()),
            Err(Error::TrivialUnit)
        );
        assert!(matches!(
            RMBimoduleData::new(&golden, 1, Mat2::new(2, 0, 0, 1)),
            Err(Error::NotUnimodular { .. })
        ));

        let data = RMBimoduleData::new(&theta(1, 4, -1), -1, Mat2::identity()).unwrap();
        assert_eq!((data.unit().t(), data.unit().u()), (&big(-4), &big(1)));
    }

    #[test]
    fn construction_normalizes_theta() {
        // sqrt(5) normalizes to sqrt(5) - 2 with the same discriminant 20
        let data = RMBimoduleData::new(&theta(1, 0, -5), -1, Mat2::identity()).unwrap();
        assert_eq!(data.theta(), &theta(1, 4, -1));
    }

    #[test]
    fn stabilizers_fix_five_hundred_random_thetas() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(0xf1f);
        let mut done = 0;
        while done < 500 {
            let k = rng.gen_range(1i64..=10);
            let l = rng.gen_range(-10i64..=10);
            let m = rng.gen_range(-10i64..=10);
            let Ok(th) = QuadraticIrrational::new(k, l, m) else {
                continue;
            };
            let n = *[-4i64, -3, -2, -1, 1, 2, 3, 4]
                .get(rng.gen_range(0..8))
                .unwrap();
            let eps = fundamental_unit(&th.discriminant()).unwrap();
            let stab = stabilizer_matrix(&th, &eps.pow(n)).unwrap();
            assert_eq!(moebius_act(&stab, &th).unwrap(), th, "theta={th}, n={n}");
            done += 1;
        }
    }
}
