//! Finite modal FL-algebras, modal FL-cover systems, proposition algebras,
//! and the Kripke-style satisfaction semantics that ties them together.
//!
//! Everything here is desk-scale: carriers are capped at 16 points so that
//! subsets fit in a `u32` bitmask and every axiom can be checked by
//! exhaustive enumeration.

pub mod order;
pub mod report;
pub mod algebra;
pub mod enumerate;
pub mod cover;
pub mod representation;
pub mod negation;
pub mod logic;
pub mod format;
pub mod fixtures;

pub use order::{FinitePreorder, LatticeOrder, Mask, MAX_POINTS};
pub use report::{AxiomReport, CheckResult};
