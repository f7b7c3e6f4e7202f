//! Exact character-theoretic rationality analysis for finite permutation groups.
//!
//! The crate computes character tables of small permutation groups with exact
//! cyclotomic arithmetic and analyses the `p`-rationality of the irreducible
//! characters: conductors, `p`-rationality levels, Galois actions, level
//! histograms, and a battery of structural verification checks (continuity of
//! levels, lower bounds on the number of `p'`-degree characters, and related
//! statements).
//!
//! Module map:
//!
//! * [`cyclo`] — cyclotomic numbers in canonical (Zumbroich) basis form,
//!   automatically reduced to their conductor; Galois action, `σ_α`.
//! * [`perm`] — permutations with cycle notation.
//! * [`group`] — permutation groups via deterministic stabilizer chains;
//!   derived subgroups, Sylow subgroups, normalizers, centers, quotients.
//! * [`classes`] — conjugacy classes, power maps, class-algebra constants.
//! * [`chartab`] — character tables by the Burnside–Dixon–Schneider method;
//!   inner products, products, restriction, determinantal order.
//! * [`rationality`] — conductors and `p`-rationality levels of characters,
//!   `σ_α` actions on tables, level histograms, achieved-level analysis.
//! * [`verify`] — named verification checks behind a common trait, a check
//!   registry, and structured pass/fail reports.
//! * [`corpus`] — builtin group families, group-file parsing, corpus
//!   manifests.

pub mod arith;
pub mod chartab;
pub mod classes;
pub mod corpus;
pub mod cyclo;
pub mod group;
pub mod perm;
pub mod rationality;
pub mod verify;

pub use cyclo::{Cyclotomic, Rational};
pub use perm::Permutation;
