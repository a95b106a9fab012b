//! Periodic continued fractions and GL(2,Z) equivalence of quadratic
//! irrationals.
//!
//! The expansion runs the classical recursion on surd states
//! x_{n+1} = 1/(x_n - floor(x_n)); the state (P,Q) determines the tail, so
//! the first repeated state marks both the minimal preperiod and the minimal
//! period. Serret's criterion then reads equivalence off the period words:
//! two irrationals are GL(2,Z)-equivalent iff their period words agree up to
//! rotation, and the witness is assembled from convergent matrices.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::mat2::Mat2;
use crate::quad::{moebius_act, QuadraticIrrational, Surd};

/// Eventually periodic continued fraction: theta = [preperiod; period
/// repeating]. The period is nonempty and minimal; every partial quotient
/// after the first is >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfExpansion {
    pub preperiod: Vec<BigInt>,
    pub period: Vec<BigInt>,
}

impl CfExpansion {
    /// Partial quotient a_i, reading the period cyclically.
    pub fn quotient(&self, i: usize) -> &BigInt {
        if i < self.preperiod.len() {
            &self.preperiod[i]
        } else {
            &self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    /// Product M(a_0) ... M(a_{len-1}) of the quotient matrices
    /// M(a) = (a,1;1,0). It maps the complete quotient x_len back to theta.
    pub fn convergent_matrix(&self, len: usize) -> Mat2 {
        let mut g = Mat2::identity();
        for i in 0..len {
            g = g.mul(&quotient_matrix(self.quotient(i)));
        }
        g
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.preperiod.is_empty()
    }
}

fn quotient_matrix(a: &BigInt) -> Mat2 {
    Mat2 {
        a: a.clone(),
        b: BigInt::one(),
        c: BigInt::one(),
        d: num_traits::Zero::zero(),
    }
}

/// Continued fraction of theta with the minimal preperiod and period.
pub fn continued_fraction(theta: &QuadraticIrrational) -> CfExpansion {
    expansion_with_states(theta).0
}

/// Expansion plus the complete quotients x_0 = theta, x_1, ... as surds,
/// one per emitted partial quotient.
pub(crate) fn expansion_with_states(theta: &QuadraticIrrational) -> (CfExpansion, Vec<Surd>) {
    let mut quotients: Vec<BigInt> = Vec::new();
    let mut states: Vec<Surd> = Vec::new();
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut x = theta.to_surd();
    loop {
        let key = (x.p().clone(), x.q().clone());
        if let Some(&start) = seen.get(&key) {
            let period = quotients.split_off(start);
            return (
                CfExpansion {
                    preperiod: quotients,
                    period,
                },
                states,
            );
        }
        seen.insert(key, states.len());
        let a = x.floor();
        let next = x.sub_int(&a).recip();
        states.push(std::mem::replace(&mut x, next));
        quotients.push(a);
    }
}

/// Rotation offset that makes the word lexicographically smallest. The word
/// is a minimal period, so all rotations are distinct and the offset is
/// unique.
fn lexmin_rotation(word: &[BigInt]) -> usize {
    let rotated = |r: usize| (0..word.len()).map(move |i| &word[(r + i) % word.len()]);
    (0..word.len())
        .min_by(|&r, &s| rotated(r).cmp(rotated(s)))
        .unwrap_or(0)
}

/// Serret's criterion: a witness g in GL(2,Z) with
/// moebius_act(g, theta2) = theta1, if one exists.
///
/// The two expansions share a tail value exactly when their period words are
/// rotations of one another; aligning both on the lexicographically smallest
/// rotation picks a common complete quotient x, and the convergent matrices
/// C1, C2 with theta_i = C_i x give the witness g = C1 C2^{-1}.
pub fn gl2z_equivalent(theta1: &QuadraticIrrational, theta2: &QuadraticIrrational) -> Option<Mat2> {
    let (e1, _) = expansion_with_states(theta1);
    let (e2, _) = expansion_with_states(theta2);
    if e1.period.len() != e2.period.len() {
        return None;
    }
    let r1 = lexmin_rotation(&e1.period);
    let r2 = lexmin_rotation(&e2.period);
    let n = e1.period.len();
    if (0..n).any(|i| e1.period[(r1 + i) % n] != e2.period[(r2 + i) % n]) {
        return None;
    }
    let c1 = e1.convergent_matrix(e1.preperiod.len() + r1);
    let c2 = e2.convergent_matrix(e2.preperiod.len() + r2);
    let g = c1.mul(
        &c2.inverse_unimodular()
            .expect("convergent matrices have det +-1"),
    );
    debug_assert_eq!(moebius_act(&g, theta2).as_ref(), Ok(theta1));
    Some(g)
}
