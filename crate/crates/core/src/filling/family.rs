use std::collections::HashMap;

use num::{Signed, Zero};

use super::filling_norm_with;
use crate::complex::{chain_boundary, trace_word, Cell, Chain, WindowComplex};
use crate::error::{Error, Result};
use crate::group::{Presentation, Word};
use crate::lp::SolverConfig;
use crate::rational::{frac, int, Rational};

/// A cycle together with a stable identifier for reporting.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub id: String,
    pub cycle: Chain,
    /// Family parameter the cycle was generated from, if any.
    pub member: Option<usize>,
}

/// One row of an isoperimetric table: a certified lower bound for `f₁(l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoperimetricSample {
    pub budget: Rational,
    pub lower_bound: Rational,
    /// Identifier of the cycle realising the bound, `"zero"` if none fits.
    pub witness_id: String,
    pub radius: usize,
}

/// A family of 1-cycles indexed by a positive integer.
pub trait CycleFamily {
    fn name(&self) -> String;
    fn member(&self, p: &Presentation, m: usize) -> Result<Chain>;
    /// A window radius whose 2-cells contain a filling of `member(m)`, for
    /// the groups the family is designed for.
    fn radius_for(&self, p: &Presentation, m: usize) -> usize;

    fn candidates(&self, p: &Presentation, members: &[usize]) -> Result<Vec<Candidate>> {
        members
            .iter()
            .map(|&m| {
                Ok(Candidate {
                    id: format!("{}:{m}", self.name()),
                    cycle: self.member(p, m)?,
                    member: Some(m),
                })
            })
            .collect()
    }
}

/// The cycle traced by `[xᵐ, yᵐ]` from the identity vertex, where `x`, `y`
/// are the first two generators, optionally scaled.
pub fn commutator_family(p: &Presentation, m: usize, scale: Option<&Rational>) -> Result<Chain> {
    if p.rank() < 2 {
        return Err(Error::InvalidArgument(
            "commutator family needs two generators".into(),
        ));
    }
    let m = m as i64;
    let w = Word::power(0, m)
        .concat(&Word::power(1, m))
        .concat(&Word::power(0, -m))
        .concat(&Word::power(1, -m));
    let (c, _) = trace_word(p, &w, &p.identity())?;
    Ok(match scale {
        Some(q) => c.scaled(q),
        None => c,
    })
}

/// `[xᵐ, yᵐ]` cycles; with `normalized` each is scaled by `1/(4m)`, giving
/// the unit-norm cycles `aₘ` on ℤ².
#[derive(Clone, Copy, Debug, Default)]
pub struct CommutatorFamily {
    pub normalized: bool,
}

impl CycleFamily for CommutatorFamily {
    fn name(&self) -> String {
        if self.normalized {
            "scaled-commutator"
        } else {
            "commutator"
        }
        .to_string()
    }

    fn member(&self, p: &Presentation, m: usize) -> Result<Chain> {
        let scale = self.normalized.then(|| frac(1, 4 * m as i64));
        commutator_family(p, m, scale.as_ref())
    }

    fn radius_for(&self, _p: &Presentation, m: usize) -> usize {
        (2 * m).max(1)
    }
}

/// Every nonzero integer 1-cycle supported on edges based in `ball(radius)`
/// with ℓ¹ norm at most `max_norm`, one per ± pair. `cap` bounds the number
/// of search nodes.
pub fn integer_cycles(
    p: &Presentation,
    radius: usize,
    max_norm: u32,
    cap: usize,
) -> Result<Vec<Candidate>> {
    let edges: Vec<Cell> = p
        .ball(radius)?
        .into_iter()
        .flat_map(|g| (0..p.rank()).map(move |s| Cell::edge(s, g.clone())))
        .collect();
    let mut search = CycleSearch {
        p,
        edges: &edges,
        cap,
        nodes: 0,
        coeffs: vec![0; edges.len()],
        out: Vec::new(),
    };
    search.run(0, max_norm as i64, false)?;
    Ok(search.out)
}

struct CycleSearch<'a> {
    p: &'a Presentation,
    edges: &'a [Cell],
    cap: usize,
    nodes: usize,
    coeffs: Vec<i64>,
    out: Vec<Candidate>,
}

impl CycleSearch<'_> {
    fn run(&mut self, i: usize, budget: i64, started: bool) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::BudgetExceeded(format!(
                "integer cycle search exceeded {} nodes",
                self.cap
            )));
        }
        if i == self.edges.len() {
            if started {
                self.emit()?;
            }
            return Ok(());
        }
        self.run(i + 1, budget, started)?;
        for v in 1..=budget {
            // The first nonzero coefficient is positive.
            let signs: &[i64] = if started { &[1, -1] } else { &[1] };
            for &s in signs {
                self.coeffs[i] = s * v;
                self.run(i + 1, budget - v, true)?;
            }
        }
        self.coeffs[i] = 0;
        Ok(())
    }

    fn emit(&mut self) -> Result<()> {
        let mut c = Chain::zero(1);
        for (cell, &v) in self.edges.iter().zip(&self.coeffs) {
            if v != 0 {
                c.add_term(cell.clone(), int(v));
            }
        }
        if chain_boundary(self.p, &c)?.is_zero() {
            let id = format!("integer:{}", self.out.len());
            self.out.push(Candidate {
                id,
                cycle: c,
                member: None,
            });
        }
        Ok(())
    }
}

/// For each budget `l`, the largest in-window filling norm among candidates
/// with `|b| ≤ l`. Candidates that leave the window or have no in-window
/// filling are skipped. Ties keep the earliest candidate.
pub fn isoperimetric_lower_bounds(
    w: &WindowComplex,
    budgets: &[Rational],
    candidates: &[Candidate],
    config: &SolverConfig,
) -> Result<Vec<IsoperimetricSample>> {
    let mut filled: Vec<(&Candidate, Rational, Rational)> = Vec::new();
    let mut cache: HashMap<&Chain, Option<Rational>> = HashMap::new();
    for cand in candidates {
        let value = match cache.get(&cand.cycle) {
            Some(v) => v.clone(),
            None => {
                let v = match filling_norm_with(w, &cand.cycle, config) {
                    Ok(r) => r.finite_value().cloned(),
                    Err(Error::OutOfWindow(msg)) => {
                        log::debug!("skipping {}: {msg}", cand.id);
                        None
                    }
                    Err(e) => return Err(e),
                };
                cache.insert(&cand.cycle, v.clone());
                v
            }
        };
        match value {
            Some(v) => filled.push((cand, cand.cycle.l1_norm(), v)),
            None => log::debug!("skipping {}: no in-window filling", cand.id),
        }
    }
    Ok(budgets
        .iter()
        .map(|l| {
            let mut best: Option<(&Candidate, &Rational)> = None;
            for (cand, norm, fill) in &filled {
                if norm <= l && best.is_none_or(|(_, b)| fill > b) {
                    best = Some((cand, fill));
                }
            }
            let (lower_bound, witness_id) = match best {
                Some((cand, fill)) => (fill.clone(), cand.id.clone()),
                None => (Rational::zero(), "zero".to_string()),
            };
            debug_assert!(!lower_bound.is_negative());
            IsoperimetricSample {
                budget: l.clone(),
                lower_bound,
                witness_id,
                radius: w.radius(),
            }
        })
        .collect())
}
