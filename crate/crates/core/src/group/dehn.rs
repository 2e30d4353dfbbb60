//! Dehn's algorithm for presentations with small cancellation, used for the
//! standard genus-g surface presentation.

use super::word::{Letter, Word};

#[derive(Clone, Debug)]
pub struct Dehn {
    /// Every cyclic permutation of every relator and of its inverse.
    cyclic: Vec<Vec<Letter>>,
}

impl Dehn {
    pub fn new(relators: &[Word]) -> Self {
        let mut cyclic = Vec::new();
        for r in relators {
            for w in [r.clone(), r.inverse()] {
                let n = w.len();
                for k in 0..n {
                    let rot: Vec<Letter> = w.letters()[k..]
                        .iter()
                        .chain(&w.letters()[..k])
                        .copied()
                        .collect();
                    if !cyclic.contains(&rot) {
                        cyclic.push(rot);
                    }
                }
            }
        }
        Dehn { cyclic }
    }

    /// Finds the leftmost subword that is more than half of a cyclic relator,
    /// taking the longest overlap at that position.
    fn find_replacement(&self, w: &[Letter]) -> Option<(usize, usize, usize)> {
        for p in 0..w.len() {
            let mut best: Option<(usize, usize)> = None;
            for (ri, r) in self.cyclic.iter().enumerate() {
                let t = w[p..].iter().zip(r).take_while(|(a, b)| a == b).count();
                if 2 * t > r.len() && best.is_none_or(|(_, bt)| t > bt) {
                    best = Some((ri, t));
                }
            }
            if let Some((ri, t)) = best {
                return Some((p, ri, t));
            }
        }
        None
    }

    /// Applies Dehn reductions until none applies. For C'(1/6) presentations
    /// the result is empty iff the word represents the identity.
    pub fn reduce(&self, w: &Word) -> Word {
        let mut cur = w.reduce();
        while let Some((p, ri, t)) = self.find_replacement(cur.letters()) {
            let r = &self.cyclic[ri];
            let replacement = Word(r[t..].to_vec()).inverse();
            let mut next = cur.letters()[..p].to_vec();
            next.extend_from_slice(replacement.letters());
            next.extend_from_slice(&cur.letters()[p + t..]);
            cur = Word(next).reduce();
        }
        cur
    }

    pub fn is_identity(&self, w: &Word) -> bool {
        self.reduce(w).is_empty()
    }

    /// Shortlex-least word equal to `w`: the Dehn-reduced form bounds the
    /// geodesic length, and reduced words up to that length are searched in
    /// shortlex order.
    pub fn shortlex_representative(&self, w: &Word, ngens: usize) -> Word {
        let target = self.reduce(w);
        for len in 0..=target.len() {
            let mut prefix = Word::empty();
            if let Some(found) = self.search(&mut prefix, len, &target, ngens) {
                return found;
            }
        }
        target
    }

    fn search(&self, prefix: &mut Word, len: usize, target: &Word, ngens: usize) -> Option<Word> {
        if prefix.len() == len {
            let probe = prefix.inverse().concat(target);
            return self.is_identity(&probe).then(|| prefix.clone());
        }
        for l in Letter::alphabet(ngens) {
            if prefix.letters().last() == Some(&l.inv()) {
                continue;
            }
            prefix.push(l);
            let hit = self.search(prefix, len, target, ngens);
            prefix.0.pop();
            if hit.is_some() {
                return hit;
            }
        }
        None
    }
}
