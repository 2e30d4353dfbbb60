use std::collections::BTreeSet;

use num::{Signed, Zero};

use super::filling_norm_with;
use crate::complex::{Chain, WindowComplex};
use crate::error::{Error, Result};
use crate::group::Presentation;
use crate::lp::SolverConfig;
use crate::rational::Rational;

/// Result of the exact linear-constant computation for a finite group.
#[derive(Clone, Debug)]
pub struct FiniteConstant {
    /// Least `k` with `‖z‖ ≤ k·|z|` on `image(∂₂)`, so `f₁(l) = k·l`.
    pub constant: Rational,
    pub vertex_count: usize,
    /// A unit-norm vertex attaining the constant (zero if the image is zero).
    pub extremal: Chain,
    /// An optimal filling of `extremal`.
    pub filling: Chain,
}

/// A window covering every cell of the finite complex.
pub fn finite_window(p: &Presentation) -> Result<WindowComplex> {
    if !p.is_finite() {
        return Err(Error::NotFinite);
    }
    let mut walker = p.ball_walker();
    let mut diameter: usize = 0;
    while let Some(sphere) = walker.next_sphere()? {
        if !sphere.is_empty() {
            diameter += 1;
        }
    }
    WindowComplex::build(p, diameter.saturating_sub(1).max(1))
}

/// Vertices of `{z ∈ image(∂₂) : |z|₁ ≤ 1}` up to sign. These are the
/// normalised elementary vectors of the image: nonzero vectors whose
/// support is minimal. Each is cut out by `d − 1` independent coordinate
/// hyperplanes, `d = dim image(∂₂)`, so they are found by running over all
/// `(d − 1)`-subsets of coordinates. `cap` bounds the number of subsets.
pub fn image_vertices(w: &WindowComplex, cap: usize) -> Result<Vec<Chain>> {
    let red = w.reduction();
    let d = red.rank();
    if d == 0 {
        return Ok(Vec::new());
    }
    let nedges = w.cells(1).len();
    let mut basis = vec![vec![Rational::zero(); d]; nedges];
    for (k, &(_, col)) in red.pivots().iter().enumerate() {
        for (r, v) in w.d2().column(col) {
            basis[*r][k] = v.clone();
        }
    }
    let subsets = binomial(nedges, d - 1);
    if subsets.is_none_or(|s| s > cap) {
        return Err(Error::BudgetExceeded(format!(
            "vertex enumeration needs C({nedges}, {}) coordinate subsets, cap is {cap}",
            d - 1
        )));
    }
    let mut seen = BTreeSet::new();
    let mut combo: Vec<usize> = (0..d - 1).collect();
    loop {
        let rows: Vec<Vec<Rational>> = combo.iter().map(|&i| basis[i].clone()).collect();
        if let Some(y) = one_dim_kernel(rows, d) {
            let mut z: Vec<Rational> = basis
                .iter()
                .map(|row| row.iter().zip(&y).map(|(a, b)| a * b).sum())
                .collect();
            let norm: Rational = z.iter().map(|v| v.abs()).sum();
            let lead_negative = z
                .iter()
                .find(|v| !v.is_zero())
                .is_some_and(|v| v.is_negative());
            let scale = if lead_negative {
                -norm.recip()
            } else {
                norm.recip()
            };
            z.iter_mut().for_each(|v| *v *= &scale);
            seen.insert(z);
        }
        if !next_combination(&mut combo, nedges) {
            break;
        }
    }
    Ok(seen
        .into_iter()
        .map(|z| w.chain_from_coordinates(1, &z))
        .collect())
}

pub const DEFAULT_SUBSET_CAP: usize = 2_000_000;

/// Exact linear isoperimetric constant of a finite group's presentation
/// complex, as the largest filling norm over the vertices of the unit ball
/// of `image(∂₂)`.
pub fn finite_linear_constant(w: &WindowComplex, config: &SolverConfig) -> Result<FiniteConstant> {
    let p = w.presentation();
    let order = p.order().ok_or(Error::NotFinite)?;
    let covered =
        w.cells(2).len() == order * p.relators().len() && w.cells(1).len() == order * p.rank();
    if !covered {
        return Err(Error::WindowTooSmall(format!(
            "radius-{} window does not cover the group of order {order}",
            w.radius()
        )));
    }
    let vertices = image_vertices(w, DEFAULT_SUBSET_CAP)?;
    let mut best = FiniteConstant {
        constant: Rational::zero(),
        vertex_count: vertices.len(),
        extremal: Chain::zero(1),
        filling: Chain::zero(2),
    };
    for z in vertices {
        let r = filling_norm_with(w, &z, config)?;
        let (Some(value), Some(filling)) = (r.finite_value(), r.witness.as_ref()) else {
            unreachable!("vertices lie in the image of ∂₂");
        };
        if *value > best.constant {
            best.constant = value.clone();
            best.extremal = z.clone();
            best.filling = filling.clone();
        }
    }
    Ok(best)
}

fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Advances to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// A spanning vector of the kernel of `rows` (each of length `ncols`) when
/// that kernel is one-dimensional.
fn one_dim_kernel(mut rows: Vec<Vec<Rational>>, ncols: usize) -> Option<Vec<Rational>> {
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        rows[r].iter_mut().for_each(|v| *v *= &inv);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let (src, dst) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src) {
                    *d -= &f * s;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if pivot_cols.len() + 1 != ncols {
        return None;
    }
    let free = (0..ncols).find(|c| !pivot_cols.contains(c))?;
    let mut y = vec![Rational::zero(); ncols];
    y[free] = Rational::from_integer(1.into());
    for (i, &pc) in pivot_cols.iter().enumerate() {
        y[pc] = -rows[i][free].clone();
    }
    Some(y)
}
