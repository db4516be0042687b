//! Exact structure-constant toolkit for BiHom-Novikov-Poisson algebras.
//!
//! A finite-dimensional algebra is represented by dense structure-constant
//! cubes over exact rationals together with a pair of commuting
//! multiplicative structure maps. On top of that representation the crate
//! provides:
//!
//! - checkers for every identity in the BiHom-associative /
//!   BiHom-commutative / BiHom-Novikov / BiHom-Novikov-Poisson /
//!   BiHom-Lie / BiHom-Poisson families, each evaluated exhaustively on
//!   basis tuples with counterexample witnesses ([`identities`]);
//! - the constructions that produce new such algebras from old ones
//!   (Yau twists, power twists, tensor products, element perturbations,
//!   the derivation construction, and the commutator bracket) plus the
//!   admissibility equivalence and bracket pushforward checks
//!   ([`construct`]);
//! - deterministic generator families for concrete instances
//!   ([`generators`]);
//! - a JSON file format and report rendering ([`mod@format`], [`report`]),
//!   tied together by a command layer ([`run`]) that also backs the
//!   `bihom` command-line tool.
//!
//! Everything is exact: scalars are arbitrary-precision rationals and
//! every verdict is a polynomial identity over them, so there are no
//! tolerances anywhere.

pub mod algebra;
pub mod construct;
pub mod error;
pub mod format;
pub mod generators;
pub mod identities;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod run;

pub use algebra::{
    check_maps_commute, check_multiplicative, eval, BilinearOp, CheckReport, OneProductAlgebra,
    SuiteReport, TwoProductAlgebra, Witness, DEFAULT_WITNESS_CAP,
};
pub use construct::{
    admissibility_test, bracket_pushforward_check, commutator_bracket, derivation_bhnp,
    derivation_perturbed, perturb_both, perturb_commutative, perturb_mu, perturb_novikov,
    tensor_product, yau_twist, yau_twist_one, yau_twist_power, AdmissibilityReport, Pushforward,
};
pub use error::Error;
pub use generators::{gen_nilpotent, gen_truncated_poly, gen_zero, DerivationData};
pub use identities::{
    check_bhnp_compat, check_bhnp_full, check_bihom_associative, check_bihom_commutative,
    check_bihom_leibniz, check_bihom_lie, check_bihom_novikov, check_bihom_poisson,
    check_classical_novikov_poisson, check_left_bihom_assoc, Suite,
};
pub use linalg::{fixed_subspace, LinearMap, Vector};
pub use rational::Rat;
