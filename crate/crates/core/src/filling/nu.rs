use num::{ToPrimitive, Zero};

use super::{disjoint_translate, filling_norm_with, CycleFamily, FillingValue};
use crate::complex::{Chain, WindowComplex};
use crate::error::{Error, Result};
use crate::group::{GroupElement, Presentation};
use crate::lp::SolverConfig;
use crate::rational::{ceil_int, int, Rational};

/// Members tried per term before giving up.
const MAX_MEMBER: usize = 256;

/// One term `(n_k, α_k, μ_k)` of the construction, already translated into
/// its disjoint position.
#[derive(Clone, Debug)]
pub struct NuTerm {
    pub k: usize,
    /// Family parameter of `α_k`.
    pub member: usize,
    pub n: usize,
    pub alpha: Chain,
    pub mu: Chain,
    /// Filling norm of `α_k`, equal to `|μ_k|`.
    pub fill: Rational,
    pub translate: GroupElement,
}

/// The 2-chain `ν_l = (1/l) Σ μ_k / n_k` with `|∂ν_l| ≤ 1` and large filling
/// norm, together with the three checked inequalities.
#[derive(Clone, Debug)]
pub struct NuWitness {
    pub l: usize,
    pub epsilon: Rational,
    pub radius: usize,
    pub terms: Vec<NuTerm>,
    pub nu: Chain,
    pub boundary: Chain,
    pub nu_norm: Rational,
    pub boundary_norm: Rational,
    pub filling_value: Rational,
    /// `(l + 1)/2 − 2ε`.
    pub lower_target: Rational,
    /// `|∂ν_l| ≤ 1`.
    pub boundary_bound_holds: bool,
    /// `|ν_l| ≥ (l + 1)/2 − 2ε`.
    pub norm_bound_holds: bool,
    /// `‖∂ν_l‖ = |ν_l|`.
    pub filling_equality_holds: bool,
}

impl NuWitness {
    pub fn all_hold(&self) -> bool {
        self.boundary_bound_holds && self.norm_bound_holds && self.filling_equality_holds
    }
}

/// Builds `ν_l` inside `w`. For each `k` the family member `α_k` is the first
/// one past the previous term with `‖α_k‖ + ε > k·n_k`, `n_k = ⌈|α_k|⌉`;
/// `μ_k` is its exact optimal filling. Each new pair is moved by
/// [`disjoint_translate`] off the union of the supports placed so far.
pub fn nu_witness(
    w: &WindowComplex,
    l: usize,
    epsilon: &Rational,
    family: &dyn CycleFamily,
    config: &SolverConfig,
) -> Result<NuWitness> {
    construct(w, l, epsilon, family, config)?.map_err(|needed| {
        Error::WindowTooSmall(format!(
            "construction needs radius {needed}, window has {}",
            w.radius()
        ))
    })
}

/// [`nu_witness`] on the smallest window (found by doubling up from the
/// family's own estimate) that contains the whole construction.
pub fn nu_auto(
    p: &Presentation,
    l: usize,
    epsilon: &Rational,
    family: &dyn CycleFamily,
    config: &SolverConfig,
) -> Result<NuWitness> {
    let mut radius = family.radius_for(p, 1).max(1);
    loop {
        log::info!("ν_{l}: trying window radius {radius}");
        let w = WindowComplex::build(p, radius)?;
        match construct(&w, l, epsilon, family, config)? {
            Ok(nu) => return Ok(nu),
            Err(needed) => {
                debug_assert!(needed > radius);
                radius = needed;
            }
        }
    }
}

/// `Ok(Err(r))` reports that the construction needs a window of radius `r`.
fn construct(
    w: &WindowComplex,
    l: usize,
    epsilon: &Rational,
    family: &dyn CycleFamily,
    config: &SolverConfig,
) -> Result<std::result::Result<NuWitness, usize>> {
    if l == 0 {
        return Err(Error::InvalidArgument(
            "l must be a positive integer".into(),
        ));
    }
    if epsilon < &Rational::zero() {
        return Err(Error::InvalidArgument(
            "epsilon must be non-negative".into(),
        ));
    }
    let p = w.presentation();
    if p.is_finite() {
        return Err(Error::FiniteGroup);
    }
    if !w.is_injective() {
        return Err(Error::InvalidArgument(
            "∂₂ is not injective on the window".into(),
        ));
    }

    let mut terms: Vec<NuTerm> = Vec::new();
    let mut placed = std::collections::BTreeSet::new();
    let mut member = 0;
    for k in 1..=l {
        let (m, n, alpha, fill, mu) = loop {
            member += 1;
            if member > MAX_MEMBER {
                return Err(Error::BudgetExceeded(format!(
                    "no member of {} up to {MAX_MEMBER} satisfies the term-{k} inequality",
                    family.name()
                )));
            }
            let alpha = family.member(p, member)?;
            let res = match filling_norm_with(w, &alpha, config) {
                Ok(r) => r,
                Err(Error::OutOfWindow(_)) => {
                    return Ok(Err(family.radius_for(p, member).max(w.radius() + 1)))
                }
                Err(e) => return Err(e),
            };
            let FillingValue::Finite(fill) = res.value else {
                return Ok(Err(family.radius_for(p, member).max(w.radius() + 1)));
            };
            let n = ceil_int(&alpha.l1_norm())
                .to_usize()
                .ok_or(Error::TooLarge(usize::MAX))?
                .max(1);
            if &fill + epsilon > int((k * n) as i64) {
                break (
                    member,
                    n,
                    alpha,
                    fill,
                    res.witness.expect("finite filling has a witness"),
                );
            }
        };
        let mut new_support = alpha.support();
        new_support.extend(mu.support());
        let g = disjoint_translate(p, &placed, &new_support)?;
        let alpha = alpha.translate(p, &g)?;
        let mu = mu.translate(p, &g)?;
        let needed = needed_radius(w, &alpha, &mu)?;
        if needed > w.radius() {
            return Ok(Err(needed));
        }
        placed.extend(alpha.support());
        placed.extend(mu.support());
        log::debug!(
            "term {k}: member {m}, n = {n}, fill = {fill}, placed at {}",
            p.render(&g)?
        );
        terms.push(NuTerm {
            k,
            member: m,
            n,
            alpha,
            mu,
            fill,
            translate: g,
        });
    }

    let inv_l = Rational::new(1.into(), (l as i64).into());
    let mut nu = Chain::zero(2);
    let mut expected_boundary = Chain::zero(1);
    for t in &terms {
        let c = &inv_l / int(t.n as i64);
        nu = &nu + &t.mu.scaled(&c);
        expected_boundary = &expected_boundary + &t.alpha.scaled(&c);
    }
    let boundary = w.boundary(&nu)?;
    debug_assert_eq!(boundary, expected_boundary);
    let filled = filling_norm_with(w, &boundary, config)?;
    let filling_value = filled
        .finite_value()
        .cloned()
        .expect("the boundary of a window chain has an in-window filling");
    let nu_norm = nu.l1_norm();
    let boundary_norm = boundary.l1_norm();
    let lower_target = Rational::new(((l + 1) as i64).into(), 2.into()) - epsilon * int(2);
    Ok(Ok(NuWitness {
        l,
        epsilon: epsilon.clone(),
        radius: w.radius(),
        boundary_bound_holds: boundary_norm <= int(1),
        norm_bound_holds: nu_norm >= lower_target,
        filling_equality_holds: filling_value == nu_norm,
        terms,
        nu,
        boundary,
        nu_norm,
        boundary_norm,
        filling_value,
        lower_target,
    }))
}

/// Smallest window radius containing the faces of `mu` and edges of `alpha`.
fn needed_radius(w: &WindowComplex, alpha: &Chain, mu: &Chain) -> Result<usize> {
    let p = w.presentation();
    let slack = p.max_relator_length();
    let mut needed = 0;
    for (cell, _) in mu.iter() {
        needed = needed.max(p.word_length(&cell.translate)?);
    }
    for (cell, _) in alpha.iter() {
        needed = needed.max(p.word_length(&cell.translate)?.saturating_sub(slack));
    }
    Ok(needed)
}
