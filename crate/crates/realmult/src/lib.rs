//! Exact invariants of irrational rotation algebras with real
//! multiplication.
//!
//! A quadratic irrational theta carries special equivalence bimodules of the
//! rotation algebra A_theta, one for each unit of the order Z[k theta]; the
//! Cuntz-Pimsner algebra built from such a bimodule is classified up to
//! Morita equivalence by its K-groups. Everything here is computed in exact
//! integer arithmetic:
//!
//! - units as solutions (t,u) of Pell's equation t^2 - D u^2 = +-4, with the
//!   fundamental unit read off one period of a continued fraction;
//! - the GL(2,Z) stabilizer of theta attached to a unit, and the matrix it
//!   induces on K_0(A_theta) = Z^2;
//! - K_0 and K_1 of the Cuntz-Pimsner algebra through Smith normal forms,
//!   cross-checked against the closed-form torsion Z/s (+) Z/((2-t)/s);
//! - Morita classification by K-group comparison, with Serret's
//!   continued-fraction criterion deciding equivalence of the angles
//!   themselves.
//!
//! The `realmult` binary exposes all of it: `pell`, `unit`, `cf`, `equiv`,
//! `kgroups`, `morita`, `examples` and `table` subcommands, each with a
//! `--json` mode.
//!
//! ```
//! use realmult::{Mat2, QuadraticIrrational, RMBimoduleData, k_groups};
//!
//! // theta = (-1+sqrt(5))/2 with tau(q) = sqrt(5)-2 = theta^{-3} in units
//! let golden = QuadraticIrrational::new(1, 1, -1).unwrap();
//! let data = RMBimoduleData::new(&golden, -3, Mat2::identity()).unwrap();
//! let kg = k_groups(&data);
//! assert_eq!(kg.k0.to_string(), "Z^2 (+) Z/2 (+) Z/2");
//! assert_eq!(kg.k1.to_string(), "Z^2");
//! ```

pub mod abelian;
pub mod bimodule;
pub mod cf;
pub mod error;
pub mod ktheory;
pub mod mat2;
pub mod morita;
pub mod pell;
pub mod quad;
pub mod report;

pub use abelian::AbelianGroup;
pub use bimodule::{k0_matrix, stabilizer_matrix, RMBimoduleData};
pub use cf::{continued_fraction, gl2z_equivalent, CfExpansion};
pub use error::{Error, Result};
pub use ktheory::{
    cross_check_theorem, det_identity_check, k_groups, theorem_s, KGroups, TorsionPrediction,
};
pub use mat2::{Mat2, SmithForm};
pub use morita::{a_theta_morita, corollary_check, morita_equivalent, CorollaryOutcome};
pub use pell::{
    brute_force_pell, discriminants_up_to, enumerate_traces, fundamental_unit, principal_theta,
    Unit,
};
pub use quad::{moebius_act, QuadraticIrrational, Surd};
