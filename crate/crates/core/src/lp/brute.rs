//! Brute-force ℓ¹ minimum over basic solutions. An independent oracle for
//! the simplex path: it shares no elimination code with it.

use num::{Signed, Zero};

use super::{L1Program, LpSolution};
use crate::error::{Error, Result};
use crate::rational::Rational;

pub const BRUTE_FORCE_MAX_COLUMNS: usize = 12;

/// Solves `M x = b` for a dense `M` with independent columns. `None` if the
/// columns are dependent or the system is inconsistent.
fn solve_independent(m: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = m.len();
    let k = m.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .zip(b)
        .map(|(r, v)| r.iter().cloned().chain([v.clone()]).collect())
        .collect();
    let mut row = 0;
    for col in 0..k {
        let p = (row..rows).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(row, p);
        let inv = aug[row][col].recip();
        for v in aug[row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows {
            if r != row && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in 0..=k {
                    let sub = &f * &aug[row][c];
                    aug[r][c] -= sub;
                }
            }
        }
        row += 1;
    }
    if aug[row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|c| aug[c][k].clone()).collect())
}

fn dense_rank(m: &[Vec<Rational>]) -> usize {
    let mut m = m.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &m[rank][col];
                for c in col..cols {
                    let sub = &f * &m[rank][c];
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Minimum ℓ¹ norm over all basic solutions of `A c = b`: every column
/// subset with independent columns is solved exactly. The ℓ¹ program attains
/// its optimum at such a point, so this agrees with the LP optimum.
pub fn brute_force_min(program: &L1Program) -> Result<LpSolution> {
    let n = program.a.ncols();
    if n > BRUTE_FORCE_MAX_COLUMNS {
        return Err(Error::TooLarge(n));
    }
    let dense = program.a.to_dense();
    let m = dense.len();
    let rank = dense_rank(&dense);
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size > rank {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|j| mask & (1 << j) != 0).collect();
        let sub: Vec<Vec<Rational>> = (0..m)
            .map(|i| cols.iter().map(|&j| dense[i][j].clone()).collect())
            .collect();
        let x = if cols.is_empty() {
            program.b.iter().all(Zero::is_zero).then(Vec::new)
        } else {
            solve_independent(&sub, &program.b)
        };
        let Some(x) = x else { continue };
        let norm: Rational = x.iter().map(|v| v.abs()).sum();
        if best.as_ref().is_none_or(|(bn, _)| norm < *bn) {
            let mut full = vec![Rational::zero(); n];
            for (&j, v) in cols.iter().zip(x) {
                full[j] = v;
            }
            best = Some((norm, full));
        }
    }
    Ok(match best {
        Some((_, x)) => LpSolution::optimal(x, rank, 0),
        None => LpSolution::infeasible(rank),
    })
}
