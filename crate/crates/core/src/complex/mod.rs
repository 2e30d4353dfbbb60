//! Cellular chains of the universal cover of the presentation 2-complex.
//!
//! The complex has one vertex orbit, one edge orbit per generator and one
//! face orbit per relator; every orbit is a free copy of the group, so a cell
//! is an orbit index together with a group element.

mod chain;
mod window;

pub use chain::{Cell, Chain};
pub use window::{chain_boundary, edge_boundary, relator_boundary, trace_word, WindowComplex};
