//! The first-order modal substructural language: signature, terms, formulas
//! with a concrete grammar, models over modal FL-cover systems, and the
//! satisfaction relation with its agreement checks against the proposition
//! algebra.

pub mod formula;
pub mod model;

pub use formula::{parse_formula, random_formula, Formula, LogicError, Signature, Term};
pub use model::{point_names, Model};
