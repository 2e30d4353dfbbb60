use std::collections::{BTreeSet, HashSet};

use crate::complex::Cell;
use crate::error::{Error, Result};
use crate::group::{GroupElement, Presentation};

/// Every `g` with `A ∩ g·B ≠ ∅`. Since the cell action is free, `g·b = a`
/// forces `g = t(a)·t(b)⁻¹` for cells of the same dimension and orbit.
pub fn forbidden_translates(
    p: &Presentation,
    a: &BTreeSet<Cell>,
    b: &BTreeSet<Cell>,
) -> Result<HashSet<GroupElement>> {
    let mut out = HashSet::new();
    for y in b {
        let y_inv = p.inv(&y.translate)?;
        for x in a.iter().filter(|x| x.dim == y.dim && x.orbit == y.orbit) {
            out.insert(p.mul(&x.translate, &y_inv)?);
        }
    }
    Ok(out)
}

/// The shortlex-least `g` (shortest first) with `A ∩ g·B = ∅`.
pub fn disjoint_translate(
    p: &Presentation,
    a: &BTreeSet<Cell>,
    b: &BTreeSet<Cell>,
) -> Result<GroupElement> {
    if p.is_finite() {
        return Err(Error::FiniteGroup);
    }
    let forbidden = forbidden_translates(p, a, b)?;
    let mut walker = p.ball_walker();
    while let Some(sphere) = walker.next_sphere()? {
        if let Some(g) = sphere.into_iter().find(|g| !forbidden.contains(g)) {
            return Ok(g);
        }
    }
    // An infinite group never runs out of spheres before the cap trips.
    Err(Error::FiniteGroup)
}
