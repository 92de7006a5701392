//! Exact, depth-bounded computations for semigroup actions on one-sided
//! shifts of finite type.
//!
//! The crate represents shift spaces by their allowed 2-blocks, continuous
//! maps by finitely tabulated progressive maps with explicit moduli of
//! continuity, and points by eventually periodic sequences. On top of that it
//! builds actions of ℕ₀^k by surjective local homeomorphisms, the associated
//! semi-groupoid and transformation groupoid as an element/bisection
//! calculus, and verifiers plus converters for the several notions of
//! continuous orbit equivalence. Every verdict is either exact or explicitly
//! depth-bounded, and every refutation carries a witness that re-verifies by
//! direct evaluation.

pub mod action;
pub mod clopen;
pub mod doc;
pub mod equivalence;
pub mod error;
pub mod groupoid;
pub mod monoid;
pub mod point;
pub mod progressive;
pub mod report;
pub mod sft;
pub mod standard;
pub mod word;

pub use error::{Error, Result};
pub use monoid::{GroupElement, MonoidElement};
pub use point::TruncatedPoint;
pub use sft::{validate_sft, Sft};
pub use word::{Symbol, Word};
