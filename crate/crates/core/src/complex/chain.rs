use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Neg, Sub};

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::group::{GroupElement, Presentation};
use crate::rational::{format_rational, parse_rational, Rational};

/// A cell of the universal cover of the one-vertex presentation complex:
/// the lift of orbit `orbit` (the vertex, a generator, or a relator) based at
/// the vertex `translate`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub dim: u8,
    pub orbit: usize,
    pub translate: GroupElement,
}

impl Cell {
    pub fn vertex(at: GroupElement) -> Cell {
        Cell {
            dim: 0,
            orbit: 0,
            translate: at,
        }
    }

    pub fn edge(generator: usize, at: GroupElement) -> Cell {
        Cell {
            dim: 1,
            orbit: generator,
            translate: at,
        }
    }

    pub fn face(relator: usize, at: GroupElement) -> Cell {
        Cell {
            dim: 2,
            orbit: relator,
            translate: at,
        }
    }

    /// `g · self`.
    pub fn translated(&self, p: &Presentation, g: &GroupElement) -> Result<Cell> {
        Ok(Cell {
            dim: self.dim,
            orbit: self.orbit,
            translate: p.mul(g, &self.translate)?,
        })
    }

    /// Whether the orbit index is valid for the presentation.
    pub fn is_valid_for(&self, p: &Presentation) -> bool {
        let orbit_ok = match self.dim {
            0 => self.orbit == 0,
            1 => self.orbit < p.rank(),
            2 => self.orbit < p.relators().len(),
            _ => false,
        };
        orbit_ok && self.translate.oracle_id() == p.oracle_id()
    }
}

/// A finitely supported rational chain in a single dimension. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    dim: u8,
    terms: BTreeMap<Cell, Rational>,
}

impl Chain {
    pub fn zero(dim: u8) -> Chain {
        Chain {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(cell: Cell, coeff: Rational) -> Chain {
        let mut c = Chain::zero(cell.dim);
        c.add_term(cell, coeff);
        c
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    /// Adds `coeff · cell`.
    ///
    /// # Panics
    /// If the cell's dimension differs from the chain's.
    pub fn add_term(&mut self, cell: Cell, coeff: Rational) {
        assert_eq!(
            cell.dim, self.dim,
            "cell dimension must match chain dimension"
        );
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(cell) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, cell: &Cell) -> Rational {
        self.terms.get(cell).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Cell, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// ℓ¹ norm: the sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> Rational {
        self.terms.values().map(|q| q.abs()).sum()
    }

    /// Cells with nonzero coefficient.
    pub fn support(&self) -> BTreeSet<Cell> {
        self.terms.keys().cloned().collect()
    }

    pub fn scaled(&self, q: &Rational) -> Chain {
        if q.is_zero() {
            return Chain::zero(self.dim);
        }
        Chain {
            dim: self.dim,
            terms: self.terms.iter().map(|(c, v)| (c.clone(), v * q)).collect(),
        }
    }

    /// Left translation by `g`; coefficients are unchanged.
    pub fn translate(&self, p: &Presentation, g: &GroupElement) -> Result<Chain> {
        if g.oracle_id() != p.oracle_id() {
            return Err(Error::OracleMismatch);
        }
        let mut out = Chain::zero(self.dim);
        for (cell, v) in &self.terms {
            out.add_term(cell.translated(p, g)?, v.clone());
        }
        Ok(out)
    }

    /// Serialises as a JSON list of `[dimension, orbit, canonical-form,
    /// "num/den"]` records sorted by dimension, orbit and canonical form.
    pub fn to_json(&self, p: &Presentation) -> Result<String> {
        let mut records: Vec<(u8, usize, String, String)> = self
            .terms
            .iter()
            .map(|(c, v)| Ok((c.dim, c.orbit, p.render(&c.translate)?, format_rational(v))))
            .collect::<Result<_>>()?;
        records.sort();
        let value = serde_json::Value::Array(
            records
                .into_iter()
                .map(|(d, o, f, q)| serde_json::json!([d, o, f, q]))
                .collect(),
        );
        serde_json::to_string_pretty(&value).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Inverse of [`Chain::to_json`]. `dim` is the dimension assumed for the
    /// empty list; non-empty input must agree with it.
    pub fn from_json(p: &Presentation, text: &str, dim: u8) -> Result<Chain> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("chain file: {e}")))?;
        let records = value
            .as_array()
            .ok_or_else(|| Error::Parse("chain file must be a JSON list".into()))?;
        let mut chain = Chain::zero(dim);
        for rec in records {
            let bad = || Error::Parse(format!("bad chain record {rec}"));
            let fields = rec.as_array().filter(|a| a.len() == 4).ok_or_else(bad)?;
            let d = fields[0].as_u64().ok_or_else(bad)?;
            let orbit = fields[1].as_u64().ok_or_else(bad)? as usize;
            let form = fields[2].as_str().ok_or_else(bad)?;
            let coeff = parse_rational(fields[3].as_str().ok_or_else(bad)?)?;
            if d != u64::from(dim) {
                return Err(Error::Parse(format!(
                    "record of dimension {d} in a chain of dimension {dim}"
                )));
            }
            let cell = Cell {
                dim,
                orbit,
                translate: p.parse_element(form)?,
            };
            if !cell.is_valid_for(p) {
                return Err(Error::Parse(format!(
                    "orbit {orbit} invalid in dimension {dim}"
                )));
            }
            chain.add_term(cell, coeff);
        }
        Ok(chain)
    }
}

impl Add for &Chain {
    type Output = Chain;
    fn add(self, rhs: &Chain) -> Chain {
        assert_eq!(self.dim, rhs.dim, "adding chains of different dimensions");
        let mut out = self.clone();
        for (c, v) in &rhs.terms {
            out.add_term(c.clone(), v.clone());
        }
        out
    }
}

impl Sub for &Chain {
    type Output = Chain;
    fn sub(self, rhs: &Chain) -> Chain {
        self + &(-rhs)
    }
}

impl Neg for &Chain {
    type Output = Chain;
    fn neg(self) -> Chain {
        Chain {
            dim: self.dim,
            terms: self.terms.iter().map(|(c, v)| (c.clone(), -v)).collect(),
        }
    }
}
