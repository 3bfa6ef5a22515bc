//! Term calculus of free Steiner quasigroups.
//!
//! A Steiner quasigroup is a set with a commutative, idempotent product
//! satisfying `x·(x·y) = y`. The free one on `n` generators is modelled here
//! by canonical reduced terms over `x1..xn`: every element has exactly one
//! such representative, so equality of elements is structural equality.
//!
//! Layout:
//! - [`term`]: terms, parsing and printing, canonical forms, rank, reduction,
//!   substitution and enumeration of reduced terms.
//! - [`model`]: the free model, finite models built from triple systems,
//!   evaluation, levels, bounded subalgebra closure, homomorphisms.
//! - [`psts`]: partial Steiner triple systems, predimension and HF-orderings.
//! - [`morphisms`]: occurrence analysis, inversion of single-occurrence terms,
//!   classification of the endomorphisms `b ↦ t(ā, b)`.
//! - [`automorph`]: elementary automorphisms and tame decomposition.

pub mod automorph;
pub mod error;
pub mod limits;
pub mod model;
pub mod morphisms;
pub mod psts;
pub mod term;

pub use error::{Error, Result};
pub use limits::Limits;
pub use model::{Assignment, FiniteModel, FreeModel, SteinerQuasigroup};
pub use psts::{HfOrdering, PartialSts};
pub use term::{Element, Term, TermKind, Var};
