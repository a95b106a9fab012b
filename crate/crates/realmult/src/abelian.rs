//! Finitely generated abelian groups in canonical form: a free rank plus a
//! divisibility chain of invariant factors. Isomorphism is equality of the
//! canonical data.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Z^free_rank (+) Z/t1 (+) ... (+) Z/tk with 2 <= t1 | t2 | ... | tk.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroup {
    /// Builds the group, checking the canonical-form invariants.
    ///
    /// Panics if some factor is < 2 or the divisibility chain fails; callers
    /// produce factors from a Smith normal form, which guarantees both.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        for factor in &torsion {
            assert!(*factor >= BigInt::from(2), "invariant factor {factor} < 2");
        }
        for pair in torsion.windows(2) {
            assert!(
                (&pair[1] % &pair[0]).is_zero(),
                "invariant factors {} | {} fail divisibility",
                pair[0],
                pair[1]
            );
        }
        AbelianGroup { free_rank, torsion }
    }

    pub fn trivial() -> Self {
        AbelianGroup::new(0, Vec::new())
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup::new(rank, Vec::new())
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product::<BigInt>().max(BigInt::one())
    }

    /// Direct sum with a free group; canonical form is preserved.
    pub fn plus_free(&self, rank: usize) -> AbelianGroup {
        AbelianGroup {
            free_rank: self.free_rank + rank,
            torsion: self.torsion.clone(),
        }
    }

    /// True iff the two groups are isomorphic. Canonical forms are unique,
    /// so this is componentwise equality.
    pub fn is_isomorphic(&self, other: &AbelianGroup) -> bool {
        self == other
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for factor in &self.torsion {
            parts.push(format!("Z/{factor}"));
        }
        write!(f, "{}", parts.join(" (+) "))
    }
}
