//! Exact ℓ¹ minimisation over the rationals:
//! `min |c|₁ subject to A c = b`.

mod brute;
mod reduce;
mod simplex;
mod sparse;

use num::{Signed, Zero};

pub use brute::{brute_force_min, BRUTE_FORCE_MAX_COLUMNS};
pub use reduce::Reduction;
pub use sparse::SparseMatrix;

use crate::error::{Error, Result};
use crate::rational::Rational;

pub const DEFAULT_PIVOT_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub pivot_limit: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            pivot_limit: DEFAULT_PIVOT_LIMIT,
        }
    }
}

/// `min |c|₁ s.t. a · c = b`.
#[derive(Clone, Debug)]
pub struct L1Program {
    pub a: SparseMatrix,
    pub b: Vec<Rational>,
}

impl L1Program {
    pub fn new(a: SparseMatrix, b: Vec<Rational>) -> Result<Self> {
        if b.len() != a.nrows() {
            return Err(Error::InvalidArgument(format!(
                "right-hand side has {} entries for {} rows",
                b.len(),
                a.nrows()
            )));
        }
        Ok(L1Program { a, b })
    }

    pub fn ncols(&self) -> usize {
        self.a.ncols()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Option<Rational>,
    pub witness: Option<Vec<Rational>>,
    /// Rank of the constraint matrix.
    pub rank: usize,
    pub pivots: u64,
}

impl LpSolution {
    fn optimal(witness: Vec<Rational>, rank: usize, pivots: u64) -> Self {
        let value = witness.iter().map(|v| v.abs()).sum();
        LpSolution {
            status: LpStatus::Optimal,
            value: Some(value),
            witness: Some(witness),
            rank,
            pivots,
        }
    }

    fn infeasible(rank: usize) -> Self {
        LpSolution {
            status: LpStatus::Infeasible,
            value: None,
            witness: None,
            rank,
            pivots: 0,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

pub fn solve_l1(program: &L1Program) -> Result<LpSolution> {
    solve_l1_with(program, &SolverConfig::default())
}

pub fn solve_l1_with(program: &L1Program, config: &SolverConfig) -> Result<LpSolution> {
    let red = Reduction::new(&program.a);
    simplex::solve_reduced(&red, &program.b, config)
}

/// Solves against a precomputed reduction of the constraint matrix.
pub fn solve_l1_reduced(
    red: &Reduction,
    b: &[Rational],
    config: &SolverConfig,
) -> Result<LpSolution> {
    if b.len() != red.nrows() {
        return Err(Error::InvalidArgument(
            "right-hand side length mismatch".into(),
        ));
    }
    simplex::solve_reduced(red, b, config)
}

/// Columns of `a` are linearly independent over ℚ.
pub fn check_injective(a: &SparseMatrix) -> bool {
    Reduction::new(a).is_injective()
}

/// `a · x == b` exactly.
pub fn is_feasible_point(a: &SparseMatrix, x: &[Rational], b: &[Rational]) -> bool {
    a.mul_vec(x).iter().zip(b).all(|(l, r)| (l - r).is_zero())
}
