//! Exact ℓ¹ filling norms and homological 1-isoperimetric data for finitely
//! presented groups over the rationals.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`]: words, presentations, normal forms via per-presentation
//!   oracles, and word-metric balls.
//! * [`complex`]: the cellular chain complex `C₂ → C₁ → C₀` of the universal
//!   cover of the presentation 2-complex, truncated to a finite window.
//! * [`lp`]: exact ℓ¹ minimisation `min |c|₁ s.t. A c = b` by a rational
//!   simplex method, plus a brute-force basic-solution oracle.
//! * [`filling`]: filling norms, isoperimetric lower bounds, and the
//!   constructive pieces of the linear-versus-infinite dichotomy.
//! * [`cli`]: the command-line front end used by the `isofill` binary.

pub mod cli;
pub mod complex;
pub mod error;
pub mod filling;
pub mod group;
pub mod lp;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;
