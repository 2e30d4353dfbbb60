//! Words, presentations and group elements.
//!
//! Equality in the group is decided per presentation by one of four oracles
//! (free, free abelian, finite via coset enumeration, surface via Dehn's
//! algorithm). Canonical representatives are shortlex-least geodesics for
//! the letter order `x₀ < x₀⁻¹ < x₁ < x₁⁻¹ < …`, so ball enumeration and
//! every tie-break are deterministic.

mod dehn;
mod presentation;
pub mod presets;
mod todd_coxeter;
mod word;

pub use dehn::Dehn;
pub use presentation::{BallWalker, GroupElement, OracleKind, Presentation, DEFAULT_BALL_CAP};
pub use todd_coxeter::FiniteTable;
pub use word::{Generator, Letter, Word};
