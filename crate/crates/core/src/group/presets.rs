//! Standard presentations used throughout the examples and tests.

use super::presentation::{OracleKind, Presentation};
use super::word::{Letter, Word};
use crate::error::Result;

/// `⟨x, y | x y x⁻¹ y⁻¹⟩`, the fundamental group of the torus.
pub fn torus() -> Presentation {
    let r = Word(vec![
        Letter::pos(0),
        Letter::pos(1),
        Letter::neg(0),
        Letter::neg(1),
    ]);
    Presentation::new(&["x", "y"], vec![r], OracleKind::FreeAbelian(2), true)
        .expect("torus presentation is valid")
}

/// Free group on `n` generators named `x`, `y`, `z`, … (or `g0`, `g1`, … past
/// three).
pub fn free(n: usize) -> Presentation {
    let names = generator_names(n);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Presentation::new(&refs, vec![], OracleKind::Free, true).expect("free presentation is valid")
}

/// `⟨x | xⁿ⟩`; `n = 1` gives the trivial group.
pub fn cyclic(n: usize) -> Presentation {
    Presentation::new(
        &["x"],
        vec![Word::power(0, n as i64)],
        OracleKind::Finite,
        false,
    )
    .expect("cyclic presentation is valid")
}

/// `⟨x, y | x², y³, (xy)²⟩`.
pub fn symmetric3() -> Presentation {
    let xy2 = Word(vec![
        Letter::pos(0),
        Letter::pos(1),
        Letter::pos(0),
        Letter::pos(1),
    ]);
    Presentation::new(
        &["x", "y"],
        vec![Word::power(0, 2), Word::power(1, 3), xy2],
        OracleKind::Finite,
        false,
    )
    .expect("S3 presentation is valid")
}

/// `⟨a₁, b₁, …, a_g, b_g | [a₁,b₁]…[a_g,b_g]⟩`.
pub fn surface(genus: usize) -> Result<Presentation> {
    let mut names = Vec::new();
    let mut r = Word::empty();
    for k in 0..genus {
        names.push(format!("a{}", k + 1));
        names.push(format!("b{}", k + 1));
        let (a, b) = (2 * k, 2 * k + 1);
        r = r.concat(&Word(vec![
            Letter::pos(a),
            Letter::pos(b),
            Letter::neg(a),
            Letter::neg(b),
        ]));
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Presentation::new(&refs, vec![r], OracleKind::Surface(genus), true)
}

fn generator_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (0..n).map(|i| format!("g{i}")).collect()
    }
}
