//! Exact computation in the Rédei semigroup 𝒞 = ⟨a,b | a²b = a, ab² = b⟩,
//! the bicyclic monoid ℬ(a,b) = ⟨a,b | ab = 1⟩ and two explicit extension
//! semigroups built from them, together with finite-truncation verifiers for
//! their algebraic identities and for three concrete topologies on them.
//!
//! Elements of 𝒞 are kept in normal form `b^k (ab)^l a^m` ([`CanonC`]);
//! elements of ℬ(a,b) as `b^i a^j` ([`BicyclicNF`]). Every closed-form product
//! is cross-checked against the word-rewriting oracle in [`words`].
//!
//! Exhaustive scans go through [`par`], which uses rayon when the `parallel`
//! feature is enabled and a plain sequential fold otherwise.

pub mod algebra;
pub mod extensions;
pub mod harness;
pub mod par;
pub mod report;
pub mod topology;
pub mod words;

pub use algebra::{AlgebraError, BicyclicNF, CanonC, Cell, EquationShape, Region, Side};
pub use extensions::{ExtElem, ExtZeroElem};
pub use report::{Failure, FailureKind, Report};
pub use words::{Generator, RewriteSystem, Word, WordError};
