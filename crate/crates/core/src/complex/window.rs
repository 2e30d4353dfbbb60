use std::collections::HashMap;
use std::sync::OnceLock;

use num::Zero;

use super::chain::{Cell, Chain};
use crate::error::{Error, Result};
use crate::group::{GroupElement, Presentation, Word};
use crate::lp::{Reduction, SparseMatrix};
use crate::rational::{int, Rational};

/// Traces `word` from the vertex `start`. A positive letter `s` read at `h`
/// contributes `+edge(s, h)`; an inverse letter contributes
/// `−edge(s, h·s⁻¹)`. Returns the 1-chain and the end vertex.
pub fn trace_word(
    p: &Presentation,
    word: &Word,
    start: &GroupElement,
) -> Result<(Chain, GroupElement)> {
    let mut chain = Chain::zero(1);
    let mut at = start.clone();
    for &s in word.letters() {
        let next = p.mul_letter(&at, s)?;
        if s.inverse {
            chain.add_term(Cell::edge(s.generator, next.clone()), int(-1));
        } else {
            chain.add_term(Cell::edge(s.generator, at.clone()), int(1));
        }
        at = next;
    }
    Ok((chain, at))
}

/// `∂₂` of the 2-cell of relator `relator` based at `g`.
pub fn relator_boundary(p: &Presentation, relator: usize, g: &GroupElement) -> Result<Chain> {
    let r = p
        .relators()
        .get(relator)
        .ok_or_else(|| Error::InvalidArgument(format!("no relator {relator}")))?;
    Ok(trace_word(p, r, g)?.0)
}

/// `∂₁` of an edge: `v(h·s) − v(h)`.
pub fn edge_boundary(p: &Presentation, generator: usize, h: &GroupElement) -> Result<Chain> {
    let end = p.mul_letter(h, crate::group::Letter::pos(generator))?;
    let mut c = Chain::zero(0);
    c.add_term(Cell::vertex(end), int(1));
    c.add_term(Cell::vertex(h.clone()), int(-1));
    Ok(c)
}

/// Boundary of an arbitrary chain computed cell by cell, without a window.
pub fn chain_boundary(p: &Presentation, c: &Chain) -> Result<Chain> {
    let mut out = Chain::zero(c.dim().saturating_sub(1));
    if c.dim() == 0 {
        return Ok(out);
    }
    for (cell, v) in c.iter() {
        let b = match cell.dim {
            2 => relator_boundary(p, cell.orbit, &cell.translate)?,
            _ => edge_boundary(p, cell.orbit, &cell.translate)?,
        };
        for (bc, bv) in b.iter() {
            out.add_term(bc.clone(), bv * v);
        }
    }
    Ok(out)
}

/// The chain complex `C₂ → C₁ → C₀` truncated to a word-metric window:
/// 2-cells based in `ball(r)`, 1-cells based in `ball(r + L)` with `L` the
/// longest relator length, and 0-cells at the endpoints of those edges.
/// Every window 2-cell therefore has its full boundary in the window.
#[derive(Debug)]
pub struct WindowComplex {
    presentation: Presentation,
    radius: usize,
    cells: [Vec<Cell>; 3],
    index: [HashMap<Cell, usize>; 3],
    d2: SparseMatrix,
    d1: SparseMatrix,
    reduction: OnceLock<Reduction>,
}

impl WindowComplex {
    pub fn build(p: &Presentation, radius: usize) -> Result<WindowComplex> {
        if radius < 1 {
            return Err(Error::InvalidArgument(
                "window radius must be at least 1".into(),
            ));
        }
        let edge_radius = radius + p.max_relator_length();
        let mut walker = p.ball_walker();
        let mut face_ball = Vec::new();
        let mut edge_ball = Vec::new();
        let mut vertex_ball = Vec::new();
        for k in 0..=edge_radius + 1 {
            let Some(sphere) = walker.next_sphere()? else {
                break;
            };
            if k <= radius {
                face_ball.extend(sphere.iter().cloned());
            }
            if k <= edge_radius {
                edge_ball.extend(sphere.iter().cloned());
            }
            vertex_ball.extend(sphere);
        }

        let faces: Vec<Cell> = face_ball
            .iter()
            .flat_map(|g| (0..p.relators().len()).map(move |i| Cell::face(i, g.clone())))
            .collect();
        let edges: Vec<Cell> = edge_ball
            .iter()
            .flat_map(|g| (0..p.rank()).map(move |s| Cell::edge(s, g.clone())))
            .collect();
        let vertices: Vec<Cell> = vertex_ball.into_iter().map(Cell::vertex).collect();
        let index = |cells: &[Cell]| -> HashMap<Cell, usize> {
            cells
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, c)| (c, i))
                .collect()
        };
        let (fi, ei, vi) = (index(&faces), index(&edges), index(&vertices));

        let lookup = |map: &HashMap<Cell, usize>, c: &Cell| -> Result<usize> {
            map.get(c).copied().ok_or_else(|| {
                Error::OutOfWindow(format!(
                    "boundary cell {:?} missing from window",
                    c.translate
                ))
            })
        };
        let d2_cols = faces
            .iter()
            .map(|f| {
                relator_boundary(p, f.orbit, &f.translate)?
                    .iter()
                    .map(|(c, v)| Ok((lookup(&ei, c)?, v.clone())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let d1_cols = edges
            .iter()
            .map(|e| {
                edge_boundary(p, e.orbit, &e.translate)?
                    .iter()
                    .map(|(c, v)| Ok((lookup(&vi, c)?, v.clone())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let d2 = SparseMatrix::from_columns(edges.len(), d2_cols);
        let d1 = SparseMatrix::from_columns(vertices.len(), d1_cols);
        log::debug!(
            "window r={radius}: {} faces, {} edges, {} vertices",
            faces.len(),
            edges.len(),
            vertices.len()
        );
        Ok(WindowComplex {
            presentation: p.clone(),
            radius,
            cells: [vertices, edges, faces],
            index: [vi, ei, fi],
            d2,
            d1,
            reduction: OnceLock::new(),
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn cells(&self, dim: u8) -> &[Cell] {
        &self.cells[dim as usize]
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        cell.dim <= 2 && self.index[cell.dim as usize].contains_key(cell)
    }

    pub fn cell_index(&self, cell: &Cell) -> Option<usize> {
        self.index.get(cell.dim as usize)?.get(cell).copied()
    }

    /// `∂₂` with rows indexed by window edges and columns by window faces.
    pub fn d2(&self) -> &SparseMatrix {
        &self.d2
    }

    /// `∂₁` with rows indexed by window vertices and columns by window edges.
    pub fn d1(&self) -> &SparseMatrix {
        &self.d1
    }

    /// Row reduction of `∂₂`, computed once.
    pub fn reduction(&self) -> &Reduction {
        self.reduction.get_or_init(|| Reduction::new(&self.d2))
    }

    /// `∂₂` restricted to the window is injective.
    pub fn is_injective(&self) -> bool {
        self.reduction().is_injective()
    }

    /// Coordinates of `c` in the window basis of its dimension.
    pub fn coordinates(&self, c: &Chain) -> Result<Vec<Rational>> {
        let d = c.dim() as usize;
        if d > 2 {
            return Err(Error::InvalidArgument(
                "chains have dimension at most 2".into(),
            ));
        }
        let mut v = vec![Rational::zero(); self.cells[d].len()];
        for (cell, q) in c.iter() {
            let i = self.index[d].get(cell).ok_or_else(|| {
                Error::OutOfWindow(format!(
                    "{}-cell at {:?} lies outside the radius-{} window",
                    cell.dim,
                    self.presentation
                        .render(&cell.translate)
                        .unwrap_or_default(),
                    self.radius
                ))
            })?;
            v[*i] = q.clone();
        }
        Ok(v)
    }

    pub fn chain_from_coordinates(&self, dim: u8, v: &[Rational]) -> Chain {
        let cells = &self.cells[dim as usize];
        assert_eq!(cells.len(), v.len());
        let mut c = Chain::zero(dim);
        for (cell, q) in cells.iter().zip(v) {
            c.add_term(cell.clone(), q.clone());
        }
        c
    }

    /// Boundary of a window chain of dimension 1 or 2, as a matrix-vector
    /// product.
    pub fn boundary(&self, c: &Chain) -> Result<Chain> {
        let (m, out_dim) = match c.dim() {
            2 => (&self.d2, 1),
            1 => (&self.d1, 0),
            d => {
                return Err(Error::InvalidArgument(format!(
                    "no boundary map from dimension {d}"
                )))
            }
        };
        let x = self.coordinates(c)?;
        Ok(self.chain_from_coordinates(out_dim, &m.mul_vec(&x)))
    }
}
