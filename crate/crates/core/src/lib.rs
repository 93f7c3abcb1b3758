//! Exact Milnor-Witt K-theory over finite fields, rational function fields
//! over them, and a sign-level real model.

pub mod error;
pub mod field;
pub mod forms;
pub mod lines;
pub mod mw;
pub mod parse;
pub mod random;
pub mod residue;
pub mod rost_schmid;
pub mod suites;
pub mod transfer;

pub use error::{Error, Result};
pub use field::{Elem, Field, FiniteField, Place, Poly, RatFn};
pub use forms::{GwForm, GwInvariants};
pub use lines::{Atom, GradedLine, TwistedMw};
pub use mw::{mw_equal, normal_form, MwExpr, Term, Verdict};
