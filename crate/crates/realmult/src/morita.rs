//! Morita classification of real-multiplication Cuntz-Pimsner algebras.
//!
//! These algebras are purely infinite, simple, nuclear and in the UCT class,
//! so the Kirchberg-Phillips theorem reduces Morita equivalence to abstract
//! isomorphism of the K-group pair. A direct sufficient condition (same
//! discriminant, same unit, isomorphic B-cokernels) is checked separately
//! and asserted consistent with the K-group decision.

use crate::bimodule::RMBimoduleData;
use crate::cf::gl2z_equivalent;
use crate::ktheory::{k_groups, KGroups};
use crate::mat2::Mat2;
use crate::quad::QuadraticIrrational;

/// Outcome of a Morita comparison, with the K-groups that decided it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoritaReport {
    pub equivalent: bool,
    pub first: KGroups,
    pub second: KGroups,
}

/// Decides Morita equivalence by comparing both K-groups.
pub fn morita_equivalent(first: &RMBimoduleData, second: &RMBimoduleData) -> MoritaReport {
    let kg1 = k_groups(first);
    let kg2 = k_groups(second);
    let equivalent = kg1.k0.is_isomorphic(&kg2.k0) && kg1.k1.is_isomorphic(&kg2.k1);
    MoritaReport {
        equivalent,
        first: kg1,
        second: kg2,
    }
}

/// Whether the direct sufficient condition applies: equal discriminants,
/// equal units, and isomorphic cokernels of 1 - g.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorollaryOutcome {
    AppliesAndEquivalent,
    DoesNotApply,
}

/// Checks the sufficient condition. When it applies, the K-group decision
/// must agree; that consistency is asserted.
pub fn corollary_check(first: &RMBimoduleData, second: &RMBimoduleData) -> CorollaryOutcome {
    let same_order = first.theta().discriminant() == second.theta().discriminant();
    let same_unit = first.unit() == second.unit();
    let b1 = Mat2::identity().sub(first.g());
    let b2 = Mat2::identity().sub(second.g());
    if same_order && same_unit && b1.cokernel().is_isomorphic(&b2.cokernel()) {
        assert!(
            morita_equivalent(first, second).equivalent,
            "sufficient condition held but K-groups differ"
        );
        CorollaryOutcome::AppliesAndEquivalent
    } else {
        CorollaryOutcome::DoesNotApply
    }
}

/// Morita equivalence of the underlying rotation algebras: a GL(2,Z)
/// witness between the two angles, if one exists.
pub fn a_theta_morita(theta1: &QuadraticIrrational, theta2: &QuadraticIrrational) -> Option<Mat2> {
    gl2z_equivalent(theta1, theta2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::moebius_act;

    fn theta(k: i64, l: i64, m: i64) -> QuadraticIrrational {
        QuadraticIrrational::new(k, l, m).unwrap()
    }

    fn data(k: i64, l: i64, m: i64, n: i64, g: Mat2) -> RMBimoduleData {
        RMBimoduleData::new(&theta(k, l, m), n, g).unwrap()
    }

    #[test]
    fn known_pair_is_not_equivalent() {
        // Z/2 (+) Z/2 torsion against Z/4 torsion
        let ex1 = data(1, 1, -1, -3, Mat2::identity());
        let ex2 = data(1, 4, -1, -1, Mat2::identity());
        let report = morita_equivalent(&ex1, &ex2);
        assert!(!report.equivalent);
        assert_eq!(corollary_check(&ex1, &ex2), CorollaryOutcome::DoesNotApply);
    }

    #[test]
    fn discriminant_40_pair_is_equivalent() {
        // sqrt(10)-3 and (2+sqrt(10))/3: inequivalent angles, equal unit
        let d1 = data(1, 6, -1, 1, Mat2::identity());
        let d2 = data(3, -4, -2, 1, Mat2::identity());
        assert!(a_theta_morita(&theta(1, 6, -1), &theta(3, -4, -2)).is_none());
        let report = morita_equivalent(&d1, &d2);
        assert!(report.equivalent);
        assert_eq!(
            corollary_check(&d1, &d2),
            CorollaryOutcome::AppliesAndEquivalent
        );
    }

    #[test]
    fn reflexive_on_identical_data() {
        let d = data(1, 1, -1, -3, Mat2::new(0, 1, 1, 0));
        assert!(morita_equivalent(&d, &d).equivalent);
        assert_eq!(
            corollary_check(&d, &d),
            CorollaryOutcome::AppliesAndEquivalent
        );
    }

    #[test]
    fn a_theta_morita_examples() {
        let golden = theta(1, 1, -1);
        let tenth = theta(5, -5, 1);
        let witness = a_theta_morita(&golden, &tenth).expect("both golden-tailed");
        assert_eq!(moebius_act(&witness, &tenth).unwrap(), golden);
        assert!(a_theta_morita(&golden, &golden).is_some());
    }

    #[test]
    fn corollary_is_sound_on_random_conjugated_data() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(0xc070);
        let thetas = [
            theta(1, 1, -1),
            theta(1, 4, -1),
            theta(3, 2, -3),
            theta(1, 3, -1),
        ];
        for _ in 0..50 {
            let th1 = &thetas[rng.gen_range(0..thetas.len())];
            let th2 = &thetas[rng.gen_range(0..thetas.len())];
            if th1.discriminant() != th2.discriminant() {
                continue;
            }
            let n = *[-3i64, -2, -1, 1, 2].get(rng.gen_range(0..5)).unwrap();
            // conjugate g: the B-cokernels stay isomorphic
            let g = Mat2::new(1, rng.gen_range(-3i64..=3), 0, 1);
            let p = Mat2::new(1, 0, rng.gen_range(-3i64..=3), 1);
            let conjugated = p.mul(&g).mul(&p.inverse_unimodular().unwrap());
            let d1 = RMBimoduleData::new(th1, n, g).unwrap();
            let d2 = RMBimoduleData::new(th2, n, conjugated).unwrap();
            // corollary_check asserts internally that the K-group decision
            // agrees whenever it reports AppliesAndEquivalent
            if corollary_check(&d1, &d2) == CorollaryOutcome::AppliesAndEquivalent {
                assert!(morita_equivalent(&d1, &d2).equivalent);
            }
        }
    }

    #[test]
    fn equivalent_angles_give_equivalent_algebras() {
        // Prop-style soundness: replace theta by an equivalent angle, keep
        // the unit power and g.
        let golden = theta(1, 1, -1);
        let tenth = theta(5, -5, 1);
        for g in [
            Mat2::identity(),
            Mat2::new(1, 2, 0, 1),
            Mat2::new(0, 1, 1, 0),
        ] {
            let d1 = RMBimoduleData::new(&golden, -3, g.clone()).unwrap();
            let d2 = RMBimoduleData::new(&tenth, -3, g.clone()).unwrap();
            assert!(morita_equivalent(&d1, &d2).equivalent);
        }
    }
}
