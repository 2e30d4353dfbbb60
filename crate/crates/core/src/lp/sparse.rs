use num::Zero;

use crate::rational::Rational;

/// Column-major sparse matrix with exact entries. Column entries are sorted
/// by row and never store zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<Vec<(usize, Rational)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            cols: vec![Vec::new(); ncols],
        }
    }

    /// Builds from arbitrary `(row, value)` lists per column; duplicate rows
    /// are summed and zeros dropped.
    pub fn from_columns(nrows: usize, columns: Vec<Vec<(usize, Rational)>>) -> Self {
        let cols = columns
            .into_iter()
            .map(|mut c| {
                c.sort_by_key(|(r, _)| *r);
                let mut out: Vec<(usize, Rational)> = Vec::with_capacity(c.len());
                for (r, v) in c {
                    assert!(r < nrows, "row {r} out of range for {nrows} rows");
                    match out.last_mut() {
                        Some((lr, lv)) if *lr == r => *lv += v,
                        _ => out.push((r, v)),
                    }
                }
                out.retain(|(_, v)| !v.is_zero());
                out
            })
            .collect();
        SparseMatrix { nrows, cols }
    }

    /// Builds from dense rows.
    pub fn from_dense(nrows: usize, ncols: usize, rows: &[Vec<Rational>]) -> Self {
        let mut columns = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols);
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    columns[j].push((i, v.clone()));
                }
            }
        }
        SparseMatrix {
            nrows,
            cols: columns,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, Rational)] {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.ncols());
        let mut y = vec![Rational::zero(); self.nrows];
        for (col, xj) in self.cols.iter().zip(x) {
            if xj.is_zero() {
                continue;
            }
            for (r, v) in col {
                y[*r] += v * xj;
            }
        }
        y
    }

    /// Row-major copy: for each row, `(column, value)` sorted by column.
    pub fn rows(&self) -> Vec<Vec<(usize, Rational)>> {
        let mut rows = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                rows[*r].push((j, v.clone()));
            }
        }
        rows
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.ncols()]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                d[*r][j] = v.clone();
            }
        }
        d
    }

    /// The product `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), other.nrows());
        let columns = other
            .cols
            .iter()
            .map(|col| {
                let mut acc: std::collections::BTreeMap<usize, Rational> = Default::default();
                for (k, v) in col {
                    for (r, w) in &self.cols[*k] {
                        *acc.entry(*r).or_insert_with(Rational::zero) += w * v;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrix {
            nrows: self.nrows,
            cols: columns,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }
}
