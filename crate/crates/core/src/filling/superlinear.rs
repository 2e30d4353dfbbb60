use crate::rational::Rational;

/// Greedy extraction of a strictly increasing sequence `n₁ < n₂ < …` with
/// `f(n_k) > k·n_k`, where `samples[i] = f(i + 1)`.
///
/// `n₁` is the least `n` with `f(n) > n`, and `n_{k+1}` the least
/// `n > n_k` with `f(n) > (k + 1)·n`. Stops when the samples run out or
/// after `max_terms` terms.
pub fn extract_superlinear(samples: &[Rational], max_terms: Option<usize>) -> Vec<usize> {
    let mut out = Vec::new();
    let mut n = 1;
    while max_terms.is_none_or(|t| out.len() < t) {
        let k = out.len() + 1;
        let Some(found) =
            (n..=samples.len()).find(|&m| samples[m - 1] > Rational::from_integer((k * m).into()))
        else {
            break;
        };
        out.push(found);
        n = found + 1;
    }
    out
}
