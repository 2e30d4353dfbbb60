//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use isofill::complex::{chain_boundary, Cell, Chain, WindowComplex};
use isofill::filling::{
    commutator_family, disjoint_translate, extract_superlinear, filling_norm,
    finite_linear_constant, finite_window, nu_auto, CommutatorFamily,
};
use isofill::group::{presets, GroupElement, Presentation};
use isofill::lp::{brute_force_min, solve_l1, L1Program, LpStatus, SparseMatrix};
use isofill::rational::{frac, int, Exact};
use isofill::Rational;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fill_value(w: &WindowComplex, b: &Chain) -> Result<Rational, String> {
    filling_norm(w, b)
        .map_err(|e| e.to_string())?
        .finite_value()
        .cloned()
        .ok_or_else(|| "no in-window filling".to_string())
}

fn commutator_exactness() -> Outcome {
    let p = presets::torus();
    for n in 1..=5usize {
        let a =
            commutator_family(&p, n, Some(&frac(1, 4 * n as i64))).map_err(|e| e.to_string())?;
        ensure(a.l1_norm() == int(1), || {
            format!("|a_{n}| = {}", Exact(&a.l1_norm()))
        })?;
        let w = WindowComplex::build(&p, 2 * n).map_err(|e| e.to_string())?;
        let v = fill_value(&w, &a)?;
        ensure(v == frac(n as i64, 4), || {
            format!("‖a_{n}‖ = {} at radius {}", Exact(&v), 2 * n)
        })?;
    }
    Ok("|a_n| = 1 and ‖a_n‖ = n/4 for n = 1..5".into())
}

fn blow_up_witness() -> Outcome {
    let p = presets::torus();
    let mut values = Vec::new();
    for l in 1..=3usize {
        let nu = nu_auto(
            &p,
            l,
            &int(0),
            &CommutatorFamily::default(),
            &Default::default(),
        )
        .map_err(|e| e.to_string())?;
        // Recompute the boundary from the cells directly, outside the window.
        let boundary = chain_boundary(&p, &nu.nu).map_err(|e| e.to_string())?;
        ensure(boundary == nu.boundary, || {
            format!("l = {l}: window boundary disagrees")
        })?;
        ensure(boundary.l1_norm() <= int(1), || {
            format!("l = {l}: |∂ν| = {}", Exact(&boundary.l1_norm()))
        })?;
        let target = frac(l as i64 + 1, 2);
        ensure(nu.filling_value >= target, || {
            format!(
                "l = {l}: ‖∂ν‖ = {} < {}",
                Exact(&nu.filling_value),
                Exact(&target)
            )
        })?;
        ensure(nu.filling_value == nu.nu.l1_norm(), || {
            format!("l = {l}: ‖∂ν‖ ≠ |ν|")
        })?;
        for (i, s) in nu.terms.iter().enumerate() {
            for t in &nu.terms[i + 1..] {
                ensure(s.alpha.support().is_disjoint(&t.alpha.support()), || {
                    format!("l = {l}: α supports overlap")
                })?;
                ensure(s.mu.support().is_disjoint(&t.mu.support()), || {
                    format!("l = {l}: μ supports overlap")
                })?;
            }
        }
        values.push(format!("{}", Exact(&nu.filling_value)));
    }
    Ok(format!(
        "|∂ν_l| ≤ 1, ‖∂ν_l‖ = {} for l = 1, 2, 3",
        values.join(", ")
    ))
}

/// Filling ratios `‖z‖/|z|` of random image points, with fillings computed
/// by the brute-force basic-solution oracle on the full `∂₂` matrix.
fn sampled_constant(
    p: &Presentation,
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Rational, String> {
    let w = finite_window(p).map_err(|e| e.to_string())?;
    let faces = w.cells(2).to_vec();
    let mut best = Rational::zero();
    for _ in 0..samples {
        let mut c = Chain::zero(2);
        for f in &faces {
            c.add_term(
                f.clone(),
                frac(rng.gen_range(-20..=20), rng.gen_range(1..=7)),
            );
        }
        let z = chain_boundary(p, &c).map_err(|e| e.to_string())?;
        if z.is_zero() {
            continue;
        }
        let b = w.coordinates(&z).map_err(|e| e.to_string())?;
        let prog = L1Program::new(w.d2().clone(), b).map_err(|e| e.to_string())?;
        let sol = brute_force_min(&prog).map_err(|e| e.to_string())?;
        let fill = sol.value.ok_or("sample not in the image")?;
        let ratio = fill / z.l1_norm();
        if ratio > best {
            best = ratio;
        }
    }
    Ok(best)
}

fn finite_linearity() -> Outcome {
    let z2 = presets::cyclic(2);
    let k2 = finite_linear_constant(
        &finite_window(&z2).map_err(|e| e.to_string())?,
        &Default::default(),
    )
    .map_err(|e| e.to_string())?
    .constant;
    ensure(k2 == frac(1, 2), || format!("ℤ/2 constant {}", Exact(&k2)))?;

    let z3 = presets::cyclic(3);
    let k3 = finite_linear_constant(
        &finite_window(&z3).map_err(|e| e.to_string())?,
        &Default::default(),
    )
    .map_err(|e| e.to_string())?
    .constant;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut gaps = Vec::new();
    for density in [5, 50, 500] {
        let sampled = sampled_constant(&z3, density, &mut rng)?;
        ensure(sampled <= k3, || {
            format!("sampled {} exceeds exact {}", Exact(&sampled), Exact(&k3))
        })?;
        gaps.push(&k3 - sampled);
    }
    ensure(gaps.windows(2).all(|g| g[1] <= g[0]), || {
        "sampling gap grew with density".into()
    })?;
    let sampled_z2 = sampled_constant(&z2, 50, &mut rng)?;
    ensure(sampled_z2 == k2, || {
        format!("ℤ/2 sampled {}", Exact(&sampled_z2))
    })?;
    Ok(format!(
        "ℤ/2 → {}, ℤ/3 → {} (sampling gaps {})",
        Exact(&k2),
        Exact(&k3),
        gaps.iter()
            .map(|g| Exact(g).to_string())
            .collect::<Vec<_>>()
            .join(", ")
    ))
}

fn lp_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut feasible, mut infeasible) = (0, 0);
    for case in 0..500 {
        let ncols = rng.gen_range(0..=12);
        let nrows = rng.gen_range(1..=6);
        let dense: Vec<Vec<Rational>> = (0..nrows)
            .map(|_| (0..ncols).map(|_| int(rng.gen_range(-2..=2))).collect())
            .collect();
        let a = SparseMatrix::from_dense(nrows, ncols, &dense);
        let b: Vec<Rational> = if rng.gen_bool(0.7) {
            let x: Vec<Rational> = (0..ncols).map(|_| int(rng.gen_range(-3..=3))).collect();
            a.mul_vec(&x)
        } else {
            (0..nrows).map(|_| int(rng.gen_range(-4..=4))).collect()
        };
        let prog = L1Program::new(a, b).map_err(|e| e.to_string())?;
        let simplex = solve_l1(&prog).map_err(|e| format!("case {case}: {e}"))?;
        let brute = brute_force_min(&prog).map_err(|e| format!("case {case}: {e}"))?;
        ensure(
            simplex.status == brute.status && simplex.value == brute.value,
            || {
                format!(
                    "case {case}: simplex {:?} vs brute force {:?}",
                    simplex.value, brute.value
                )
            },
        )?;
        match simplex.status {
            LpStatus::Optimal => feasible += 1,
            LpStatus::Infeasible => infeasible += 1,
        }
    }
    Ok(format!(
        "500 instances agree ({feasible} optimal, {infeasible} infeasible)"
    ))
}

fn random_cells(
    p: &Presentation,
    ball: &[GroupElement],
    max: usize,
    rng: &mut ChaCha8Rng,
) -> BTreeSet<Cell> {
    let count = rng.gen_range(0..=max);
    let mut out = BTreeSet::new();
    for _ in 0..count {
        let g = ball[rng.gen_range(0..ball.len())].clone();
        let dims: Vec<u8> = if p.relators().is_empty() {
            vec![0, 1]
        } else {
            vec![0, 1, 2]
        };
        let cell = match dims[rng.gen_range(0..dims.len())] {
            0 => Cell::vertex(g),
            1 => Cell::edge(rng.gen_range(0..p.rank()), g),
            _ => Cell::face(rng.gen_range(0..p.relators().len()), g),
        };
        out.insert(cell);
    }
    out
}

fn meets(p: &Presentation, a: &BTreeSet<Cell>, b: &BTreeSet<Cell>, g: &GroupElement) -> bool {
    b.iter()
        .any(|c| a.contains(&c.translated(p, g).expect("same oracle")))
}

fn disjoint_translates() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let groups = [presets::torus(), presets::free(2)];
    let mut longest = 0;
    for case in 0..100 {
        let p = &groups[case % 2];
        let ball = p.ball(2).map_err(|e| e.to_string())?;
        // A dense A around the identity forces longer translates.
        let a = random_cells(p, &ball, 60, &mut rng);
        let b = random_cells(p, &ball, 6, &mut rng);
        let g = disjoint_translate(p, &a, &b).map_err(|e| e.to_string())?;
        ensure(!meets(p, &a, &b, &g), || format!("case {case}: A ∩ gB ≠ ∅"))?;
        let len = p.word_length(&g).map_err(|e| e.to_string())?;
        longest = longest.max(len);
        // Every element before g in shortlex order must fail.
        for h in p.ball(len).map_err(|e| e.to_string())? {
            if h == g {
                break;
            }
            ensure(meets(p, &a, &b, &h), || {
                format!("case {case}: earlier element also works")
            })?;
        }
    }
    Ok(format!(
        "100 pairs, translates up to word length {longest}, all minimal"
    ))
}

fn superlinear_subsequence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut total_terms = 0;
    for case in 0..100 {
        let n_max = rng.gen_range(5..=60);
        let growth = rng.gen_range(1..=4) as i64;
        let samples: Vec<Rational> = (1..=n_max as i64)
            .map(|n| {
                let base = n * n * growth + n;
                int(base + rng.gen_range(-(n)..=n))
            })
            .collect();
        let seq = extract_superlinear(&samples, None);
        ensure(!seq.is_empty(), || {
            format!("case {case}: nothing extracted")
        })?;
        ensure(seq.windows(2).all(|w| w[0] < w[1]), || {
            format!("case {case}: not increasing")
        })?;
        for (k, &n) in seq.iter().enumerate() {
            let k = k as i64 + 1;
            ensure(samples[n - 1] > int(k * n as i64), || {
                format!("case {case}: f({n}) ≤ {k}·{n}")
            })?;
        }
        total_terms += seq.len();
    }
    let linear: Vec<Rational> = (1..=200).map(int).collect();
    ensure(extract_superlinear(&linear, None).is_empty(), || {
        "f(n) = n gave terms".into()
    })?;
    Ok(format!(
        "100 tables ({total_terms} terms) satisfy f(n_k) > k n_k; f(n) = n gives none"
    ))
}

fn random_face_chain(faces: &[Cell], rng: &mut ChaCha8Rng) -> Chain {
    let mut c = Chain::zero(2);
    for _ in 0..rng.gen_range(0..=5) {
        let f = faces[rng.gen_range(0..faces.len())].clone();
        c.add_term(f, frac(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
    }
    c
}

fn invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(31337);
    // ∂₁∂₂ = 0
    let corpus: Vec<(Presentation, usize)> = vec![
        (presets::torus(), 3),
        (presets::free(2), 2),
        (presets::cyclic(2), 1),
        (presets::cyclic(3), 1),
        (presets::cyclic(1), 1),
        (presets::symmetric3(), 2),
    ];
    for (p, r) in &corpus {
        let w = WindowComplex::build(p, *r).map_err(|e| e.to_string())?;
        ensure(w.d1().mul(w.d2()).is_zero(), || {
            format!("∂₁∂₂ ≠ 0 for {}", p.oracle_kind())
        })?;
    }

    let torus = presets::torus();
    let w3 = WindowComplex::build(&torus, 3).map_err(|e| e.to_string())?;
    let w5 = WindowComplex::build(&torus, 5).map_err(|e| e.to_string())?;
    let faces = w3.cells(2).to_vec();
    let far = torus.parse_element("x^40").map_err(|e| e.to_string())?;
    for _ in 0..100 {
        let c = random_face_chain(&faces, &mut rng);
        let d = random_face_chain(&faces, &mut rng)
            .translate(&torus, &far)
            .map_err(|e| e.to_string())?;
        let q = frac(rng.gen_range(-9..=9), rng.gen_range(1..=5));
        ensure(c.scaled(&q).l1_norm() == c.l1_norm() * q.abs(), || {
            "|qc| ≠ |q||c|".into()
        })?;
        ensure((&c + &d).l1_norm() == c.l1_norm() + d.l1_norm(), || {
            "disjoint additivity".into()
        })?;

        // injective recovery
        let b = w3.boundary(&c).map_err(|e| e.to_string())?;
        let r = filling_norm(&w3, &b).map_err(|e| e.to_string())?;
        ensure(
            r.finite_value() == Some(&c.l1_norm()) && r.witness.as_ref() == Some(&c),
            || "injective recovery failed".into(),
        )?;
        // monotonicity in the window radius
        let v5 = fill_value(&w5, &b)?;
        ensure(v5 <= c.l1_norm(), || {
            "larger window gave a larger filling".into()
        })?;
    }

    // A non-injective complex where the LP has real choices.
    let s3 = presets::symmetric3();
    let ws = finite_window(&s3).map_err(|e| e.to_string())?;
    let small = WindowComplex::build(&s3, 1).map_err(|e| e.to_string())?;
    let s3_faces = small.cells(2).to_vec();
    for _ in 0..60 {
        let b1 = small
            .boundary(&random_face_chain(&s3_faces, &mut rng))
            .map_err(|e| e.to_string())?;
        let b2 = small
            .boundary(&random_face_chain(&s3_faces, &mut rng))
            .map_err(|e| e.to_string())?;
        let q = frac(rng.gen_range(-6..=6), rng.gen_range(1..=4));
        let f1 = fill_value(&ws, &b1)?;
        let f2 = fill_value(&ws, &b2)?;
        ensure(fill_value(&ws, &b1.scaled(&q))? == &f1 * q.abs(), || {
            "filling homogeneity".into()
        })?;
        ensure(fill_value(&ws, &(&b1 + &b2))? <= &f1 + &f2, || {
            "filling subadditivity".into()
        })?;
        ensure(fill_value(&small, &b1)? >= f1, || {
            "window monotonicity on S3".into()
        })?;
    }
    Ok("∂₁∂₂ = 0, ℓ¹ homogeneity/additivity, monotonicity, filling homogeneity/subadditivity, injective recovery".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("example exactness (‖a_n‖ = n/4)", commutator_exactness),
        ("blow-up witness ν_l", blow_up_witness),
        ("finite-group linearity", finite_linearity),
        ("LP oracle equivalence", lp_oracle),
        ("disjoint translates", disjoint_translates),
        ("superlinear subsequence", superlinear_subsequence),
        ("invariant suite", invariants),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} [{secs:.1}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
