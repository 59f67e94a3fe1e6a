//! Free Lie-Yamaguti algebras over an ordered generator set.
//!
//! * [`terms`] and [`syntax`]: magma terms, their orders, the forgetting map,
//!   and the text grammar.
//! * [`hall`]: Lie triple Hall elements, the Lie-Yamaguti basis, and graded
//!   enumeration.
//! * [`rewrite`]: normal forms over the basis, with exact rational
//!   coefficients.
//! * [`oracle`]: brute-force relation spans, quotient dimensions and ideal
//!   membership by exact sparse elimination.
//! * [`models`]: Lie-Yamaguti algebras induced by reductive splittings of
//!   finite-dimensional Lie algebras, and evaluation of free terms in them.

pub mod error;
pub mod hall;
pub mod lincomb;
pub mod models;
pub mod oracle;
pub mod rewrite;
pub mod sample;
pub mod syntax;
pub mod terms;

pub use error::{Error, Result};
pub use lincomb::{LinComb, Rational};
pub use terms::{Alphabet, Generator, Term, TermKind, Word};
