use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A generator or its inverse.
///
/// The derived order is the shortlex letter order: generators by index, and
/// the inverse letter right after the positive letter of the same generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub fn inv(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    /// Position in the alphabet `x₀, x₀⁻¹, x₁, x₁⁻¹, …`.
    pub fn rank(self) -> usize {
        2 * self.generator + usize::from(self.inverse)
    }

    pub fn from_rank(rank: usize) -> Self {
        Letter::new(rank / 2, rank % 2 == 1)
    }

    /// All letters over `n` generators in shortlex order.
    pub fn alphabet(n: usize) -> impl Iterator<Item = Letter> {
        (0..2 * n).map(Letter::from_rank)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub index: usize,
    pub name: String,
}

/// A word in the generators. Not necessarily reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `x^k` as a word; negative `k` gives inverse letters.
    pub fn power(generator: usize, k: i64) -> Self {
        let letter = Letter::new(generator, k < 0);
        Word(vec![letter; k.unsigned_abs() as usize])
    }

    /// Free reduction: cancels adjacent `s s⁻¹` pairs until none remain.
    pub fn reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[1] != w[0].inv())
    }

    /// Reduced and with first letter not inverse to the last.
    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.0.first(), self.0.last()) {
                (Some(&a), Some(&b)) if self.0.len() > 1 => a != b.inv(),
                _ => true,
            }
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    /// Signed exponent sum of every generator.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut e = vec![0i64; generators];
        for l in &self.0 {
            e[l.generator] += if l.inverse { -1 } else { 1 };
        }
        e
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    /// Shortlex comparison: length first, then lexicographic by letter order.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }

    /// Parses whitespace separated letters `name` or `name^k` (k ≠ 0).
    pub fn parse(text: &str, generators: &[Generator]) -> Result<Word> {
        let mut out = Vec::new();
        for token in text.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => {
                    let k: i64 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in {token:?}")))?;
                    if k == 0 {
                        return Err(Error::Parse(format!("zero exponent in {token:?}")));
                    }
                    (n, k)
                }
                None => (token, 1),
            };
            let g = generators
                .iter()
                .find(|g| g.name == name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
            out.extend(Word::power(g.index, exp).0);
        }
        Ok(Word(out))
    }

    /// Renders with runs compressed, e.g. `x^3 y^-1`. The empty word renders
    /// as the empty string.
    pub fn render(&self, generators: &[Generator]) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let run = (j - i) as i64;
            let k = if l.inverse { -run } else { run };
            let name = &generators[l.generator].name;
            parts.push(if k == 1 {
                name.clone()
            } else {
                format!("{name}^{k}")
            });
            i = j;
        }
        parts.join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .0
            .iter()
            .map(|l| format!("g{}{}", l.generator, if l.inverse { "^-1" } else { "" }))
            .collect();
        write!(f, "{}", s.join(" "))
    }
}
