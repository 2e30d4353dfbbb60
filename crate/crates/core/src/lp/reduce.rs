//! Gauss–Jordan reduction of a sparse matrix to reduced row echelon form.
//!
//! The elementary row operations are recorded so that any right-hand side
//! can be carried into the same basis later, which lets one factorisation of
//! a window's boundary matrix serve every filling computation on it.

use std::collections::BTreeSet;

use num::{One, Zero};

use super::sparse::SparseMatrix;
use crate::rational::Rational;

type SparseRow = Vec<(usize, Rational)>;

#[derive(Clone, Debug)]
enum RowOp {
    Scale {
        row: usize,
        factor: Rational,
    },
    /// `dst += factor · src`
    AddMul {
        src: usize,
        dst: usize,
        factor: Rational,
    },
}

#[derive(Clone, Debug)]
pub struct Reduction {
    nrows: usize,
    ncols: usize,
    /// `(row, column)` of each pivot, in increasing column order.
    pivots: Vec<(usize, usize)>,
    rows: Vec<SparseRow>,
    ops: Vec<RowOp>,
}

fn entry(row: &SparseRow, col: usize) -> Option<&Rational> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|i| &row[i].1)
}

/// `a + factor · b` for sorted sparse rows.
fn axpy(a: &SparseRow, factor: &Rational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0);
        let cb = b.get(j).map(|e| e.0);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = &a[i].1 + factor * &b[j].1;
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(a[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(a[i].clone());
                i += 1;
            }
            (_, Some(y)) => {
                out.push((y, factor * &b[j].1));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

impl Reduction {
    pub fn new(a: &SparseMatrix) -> Reduction {
        let nrows = a.nrows();
        let ncols = a.ncols();
        let mut rows = a.rows();
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
        for (j, set) in col_rows.iter_mut().enumerate() {
            set.extend(a.column(j).iter().map(|(r, _)| *r));
        }
        let mut pivoted = vec![false; nrows];
        let mut pivots = Vec::new();
        let mut ops = Vec::new();

        for j in 0..ncols {
            // sparsest unpivoted row, ties to the smallest index
            let Some(p) = col_rows[j]
                .iter()
                .copied()
                .filter(|&r| !pivoted[r])
                .min_by_key(|&r| (rows[r].len(), r))
            else {
                continue;
            };
            let pivot_value = entry(&rows[p], j).expect("pivot entry present").clone();
            if !pivot_value.is_one() {
                let factor = pivot_value.recip();
                for (_, v) in rows[p].iter_mut() {
                    *v *= &factor;
                }
                ops.push(RowOp::Scale { row: p, factor });
            }
            let targets: Vec<usize> = col_rows[j].iter().copied().filter(|&r| r != p).collect();
            for r in targets {
                let factor = -entry(&rows[r], j).expect("column index is exact").clone();
                let updated = axpy(&rows[r], &factor, &rows[p]);
                for (c, _) in &rows[p] {
                    let before = entry(&rows[r], *c).is_some();
                    let after = entry(&updated, *c).is_some();
                    if before && !after {
                        col_rows[*c].remove(&r);
                    } else if !before && after {
                        col_rows[*c].insert(r);
                    }
                }
                rows[r] = updated;
                ops.push(RowOp::AddMul {
                    src: p,
                    dst: r,
                    factor,
                });
            }
            pivoted[p] = true;
            pivots.push((p, j));
        }
        log::debug!(
            "reduced {}x{} matrix: rank {}, {} row operations",
            nrows,
            ncols,
            pivots.len(),
            ops.len()
        );
        Reduction {
            nrows,
            ncols,
            pivots,
            rows,
            ops,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Columns are linearly independent.
    pub fn is_injective(&self) -> bool {
        self.rank() == self.ncols
    }

    pub fn pivots(&self) -> &[(usize, usize)] {
        &self.pivots
    }

    /// Reduced row of a pivot row (pivot coefficient 1).
    pub fn row(&self, r: usize) -> &[(usize, Rational)] {
        &self.rows[r]
    }

    /// Applies the recorded row operations to `b`.
    pub fn transform(&self, b: &[Rational]) -> Vec<Rational> {
        assert_eq!(b.len(), self.nrows);
        let mut b = b.to_vec();
        for op in &self.ops {
            match op {
                RowOp::Scale { row, factor } => {
                    if !b[*row].is_zero() {
                        b[*row] *= factor;
                    }
                }
                RowOp::AddMul { src, dst, factor } => {
                    if !b[*src].is_zero() {
                        let add = factor * &b[*src];
                        b[*dst] += add;
                    }
                }
            }
        }
        b
    }

    /// Whether a transformed right-hand side is consistent: zero on every
    /// row without a pivot.
    pub fn is_consistent(&self, transformed: &[Rational]) -> bool {
        let mut is_pivot = vec![false; self.nrows];
        for &(r, _) in &self.pivots {
            is_pivot[r] = true;
        }
        transformed
            .iter()
            .zip(&is_pivot)
            .all(|(v, &p)| p || v.is_zero())
    }
}
