//! Filling norms, isoperimetric lower bounds and the constructive steps
//! behind the linear-or-infinite dichotomy.

mod disjoint;
mod family;
mod finite;
mod nu;
mod superlinear;

pub use disjoint::{disjoint_translate, forbidden_translates};
pub use family::{
    commutator_family, integer_cycles, isoperimetric_lower_bounds, Candidate, CommutatorFamily,
    CycleFamily, IsoperimetricSample,
};
pub use finite::{finite_linear_constant, finite_window, image_vertices, FiniteConstant};
pub use nu::{nu_auto, nu_witness, NuTerm, NuWitness};
pub use superlinear::extract_superlinear;

use std::fmt;

use crate::complex::{Chain, WindowComplex};
use crate::error::{Error, Result};
use crate::lp::{solve_l1_reduced, SolverConfig};
use crate::rational::{Exact, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FillingValue {
    Finite(Rational),
    /// The cycle is not the boundary of any chain supported in the window.
    /// A larger window may still fill it.
    NoInWindowFilling,
}

impl fmt::Display for FillingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FillingValue::Finite(q) => write!(f, "{}", Exact(q)),
            FillingValue::NoInWindowFilling => f.write_str("no in-window filling"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FillingResult {
    pub value: FillingValue,
    /// An optimal 2-chain with boundary equal to the input, when one exists.
    pub witness: Option<Chain>,
    pub radius: usize,
    /// `∂₂` is injective on the window, so the witness is the only filling.
    pub injective: bool,
}

impl FillingResult {
    pub fn finite_value(&self) -> Option<&Rational> {
        match &self.value {
            FillingValue::Finite(q) => Some(q),
            FillingValue::NoInWindowFilling => None,
        }
    }
}

pub fn filling_norm(w: &WindowComplex, b: &Chain) -> Result<FillingResult> {
    filling_norm_with(w, b, &SolverConfig::default())
}

/// Minimal ℓ¹ norm of a window 2-chain with boundary `b`.
pub fn filling_norm_with(
    w: &WindowComplex,
    b: &Chain,
    config: &SolverConfig,
) -> Result<FillingResult> {
    if b.dim() != 1 {
        return Err(Error::InvalidArgument(format!(
            "can only fill 1-chains, got a {}-chain",
            b.dim()
        )));
    }
    let rhs = w.coordinates(b)?;
    let red = w.reduction();
    let sol = solve_l1_reduced(red, &rhs, config)?;
    let injective = red.is_injective();
    let radius = w.radius();
    let Some(x) = sol.witness else {
        return Ok(FillingResult {
            value: FillingValue::NoInWindowFilling,
            witness: None,
            radius,
            injective,
        });
    };
    let witness = w.chain_from_coordinates(2, &x);
    debug_assert_eq!(w.boundary(&witness).ok().as_ref(), Some(b));
    let value = witness.l1_norm();
    Ok(FillingResult {
        value: FillingValue::Finite(value),
        witness: Some(witness),
        radius,
        injective,
    })
}
