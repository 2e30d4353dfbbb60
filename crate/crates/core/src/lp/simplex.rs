//! Exact primal simplex for `min Σ (c⁺ + c⁻)` subject to
//! `A (c⁺ − c⁻) = b`, `c± ≥ 0`.
//!
//! The reduced row echelon form of `A` supplies a feasible starting basis
//! directly: each pivot row takes `c⁺` or `c⁻` of its pivot column depending
//! on the sign of the transformed right-hand side, so no phase one is
//! needed. Bland's rule (lowest entering index, lowest leaving basic index
//! among ratio ties) guarantees termination.

use num::{Signed, Zero};

use super::reduce::Reduction;
use super::{LpSolution, SolverConfig};
use crate::error::{Error, Result};
use crate::rational::Rational;

pub(crate) fn solve_reduced(
    red: &Reduction,
    b: &[Rational],
    config: &SolverConfig,
) -> Result<LpSolution> {
    let n = red.ncols();
    let rank = red.rank();
    let bt = red.transform(b);
    if !red.is_consistent(&bt) {
        return Ok(LpSolution::infeasible(rank));
    }

    // Injective: the feasible set is a single point.
    if rank == n {
        let mut x = vec![Rational::zero(); n];
        for &(r, c) in red.pivots() {
            x[c] = bt[r].clone();
        }
        return Ok(LpSolution::optimal(x, rank, 0));
    }

    let width = 2 * n;
    let mut tableau: Vec<Vec<Rational>> = Vec::with_capacity(rank);
    let mut rhs: Vec<Rational> = Vec::with_capacity(rank);
    let mut basis: Vec<usize> = Vec::with_capacity(rank);
    for &(r, c) in red.pivots() {
        let mut row = vec![Rational::zero(); width];
        for (j, v) in red.row(r) {
            row[*j] = v.clone();
            row[n + *j] = -v;
        }
        let mut value = bt[r].clone();
        if value.is_negative() {
            for v in row.iter_mut() {
                *v = -&*v;
            }
            value = -value;
            basis.push(n + c);
        } else {
            basis.push(c);
        }
        tableau.push(row);
        rhs.push(value);
    }

    // every cost is 1, basic costs included
    let mut reduced: Vec<Rational> = (0..width)
        .map(|j| {
            let s: Rational = tableau.iter().map(|row| &row[j]).sum();
            Rational::from_integer(1.into()) - s
        })
        .collect();

    let mut pivots: u64 = 0;
    loop {
        if log::log_enabled!(log::Level::Trace) {
            dump(&tableau, &rhs, &basis, &reduced);
        }
        let Some(enter) = reduced.iter().position(|d| d.is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in tableau.iter().enumerate() {
            let a = &row[enter];
            if !a.is_positive() {
                continue;
            }
            let ratio = &rhs[i] / a;
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((pr, _)) = leave else {
            // the objective is bounded below by zero
            return Err(Error::InvalidArgument(
                "simplex found an unbounded ray".into(),
            ));
        };
        pivots += 1;
        if pivots > config.pivot_limit {
            return Err(Error::PivotLimit(config.pivot_limit));
        }
        pivot(&mut tableau, &mut rhs, &mut reduced, pr, enter);
        basis[pr] = enter;
    }

    let mut x = vec![Rational::zero(); n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] += &rhs[i];
        } else {
            x[var - n] -= &rhs[i];
        }
    }
    let solution = LpSolution::optimal(x, rank, pivots);
    debug_assert_eq!(solution.value.as_ref(), Some(&rhs.iter().sum::<Rational>()));
    Ok(solution)
}

fn pivot(
    tableau: &mut [Vec<Rational>],
    rhs: &mut [Rational],
    reduced: &mut [Rational],
    pr: usize,
    pc: usize,
) {
    let inv = tableau[pr][pc].recip();
    for v in tableau[pr].iter_mut() {
        if !v.is_zero() {
            *v *= &inv;
        }
    }
    rhs[pr] *= &inv;
    let pivot_row = tableau[pr].clone();
    let pivot_rhs = rhs[pr].clone();
    for (i, row) in tableau.iter_mut().enumerate() {
        if i == pr || row[pc].is_zero() {
            continue;
        }
        let f = row[pc].clone();
        for (v, p) in row.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= &f * p;
            }
        }
        rhs[i] -= &f * &pivot_rhs;
    }
    let f = reduced[pc].clone();
    for (v, p) in reduced.iter_mut().zip(&pivot_row) {
        if !p.is_zero() {
            *v -= &f * p;
        }
    }
}

fn dump(tableau: &[Vec<Rational>], rhs: &[Rational], basis: &[usize], reduced: &[Rational]) {
    let fmt = |v: &[Rational]| {
        v.iter()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    log::trace!("reduced costs: {}", fmt(reduced));
    for ((row, b), var) in tableau.iter().zip(rhs).zip(basis) {
        log::trace!("x{var:<4} | {} | {b}", fmt(row));
    }
}
