//! Coset enumeration over the trivial subgroup (HLT strategy with
//! coincidence processing). Produces the right-regular action of each letter
//! on the elements of a finite group, elements numbered in shortlex order of
//! their least representatives.

use std::collections::HashMap;

use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// The finite multiplication data of a group: right action of every letter on
/// element indices. Index 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteTable {
    action: Vec<Vec<usize>>,
    reps: Vec<Word>,
}

impl FiniteTable {
    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn act(&self, element: usize, letter: Letter) -> usize {
        self.action[letter.rank()][element]
    }

    pub fn representative(&self, element: usize) -> &Word {
        &self.reps[element]
    }

    pub fn evaluate(&self, start: usize, w: &Word) -> usize {
        w.letters().iter().fold(start, |e, &l| self.act(e, l))
    }

    /// Builds the table from the right action of each generator, given as a
    /// permutation of `0..order` with 0 the identity. Elements are
    /// renumbered in shortlex order.
    pub fn from_generator_action(generators: &[Vec<usize>]) -> Result<FiniteTable> {
        let order = generators.first().map_or(1, |g| g.len());
        let mut columns = Vec::new();
        for g in generators {
            if g.len() != order {
                return Err(Error::InvalidPresentation("ragged generator table".into()));
            }
            let mut inverse = vec![usize::MAX; order];
            for (i, &j) in g.iter().enumerate() {
                if j >= order || inverse[j] != usize::MAX {
                    return Err(Error::InvalidPresentation(
                        "generator action is not a permutation".into(),
                    ));
                }
                inverse[j] = i;
            }
            columns.push(g.clone());
            columns.push(inverse);
        }
        Self::from_columns(generators.len(), order, |c, col| columns[col][c], |c| c)
    }

    fn from_columns(
        ngens: usize,
        cosets: usize,
        next: impl Fn(usize, usize) -> usize,
        start: impl Fn(usize) -> usize,
    ) -> Result<FiniteTable> {
        let root = start(0);
        let mut index: HashMap<usize, usize> = HashMap::from([(root, 0)]);
        let mut order = vec![root];
        let mut reps = vec![Word::empty()];
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            for l in Letter::alphabet(ngens) {
                let d = next(c, l.rank());
                if !index.contains_key(&d) {
                    index.insert(d, order.len());
                    order.push(d);
                    let mut w = reps[head].clone();
                    w.push(l);
                    reps.push(w);
                }
            }
            head += 1;
        }
        if order.len() != cosets {
            return Err(Error::InvalidPresentation(format!(
                "table is not transitive: reached {} of {} elements",
                order.len(),
                cosets
            )));
        }
        let action = (0..2 * ngens)
            .map(|col| order.iter().map(|&c| index[&next(c, col)]).collect())
            .collect();
        Ok(FiniteTable { action, reps })
    }
}

struct CosetTable {
    cols: usize,
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    cap: usize,
}

fn inv_col(x: usize) -> usize {
    x ^ 1
}

impl CosetTable {
    fn new(cols: usize, cap: usize) -> Self {
        CosetTable {
            cols,
            table: vec![vec![None; cols]],
            parent: vec![0],
            cap,
        }
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = c;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        let d = self.table.len();
        if d >= self.cap {
            return Err(Error::BudgetExceeded(format!(
                "coset enumeration exceeded {} cosets",
                self.cap
            )));
        }
        self.table.push(vec![None; self.cols]);
        self.parent.push(d);
        self.table[c][x] = Some(d);
        self.table[d][inv_col(x)] = Some(c);
        Ok(())
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
            queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let dead = queue[i];
            i += 1;
            for x in 0..self.cols {
                if let Some(d) = self.table[dead][x] {
                    self.table[d][inv_col(x)] = None;
                    let mu = self.rep(dead);
                    let nu = self.rep(d);
                    if let Some(t) = self.table[mu][x] {
                        self.merge(nu, t, &mut queue);
                    } else if let Some(t) = self.table[nu][inv_col(x)] {
                        self.merge(mu, t, &mut queue);
                    } else {
                        self.table[mu][x] = Some(nu);
                        self.table[nu][inv_col(x)] = Some(mu);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<()> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len());
        loop {
            while i < j {
                match self.table[f][w[i]] {
                    Some(nf) => {
                        f = nf;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                match self.table[b][inv_col(w[j - 1])] {
                    Some(nb) => {
                        b = nb;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.table[f][w[i]] = Some(b);
                self.table[b][inv_col(w[i])] = Some(f);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }
}

/// Enumerates the elements of `⟨generators | relators⟩`, failing with
/// `BudgetExceeded` once more than `cap` cosets have been defined (which is
/// what happens for infinite groups).
pub fn enumerate(ngens: usize, relators: &[Word], cap: usize) -> Result<FiniteTable> {
    let cols = 2 * ngens;
    let rels: Vec<Vec<usize>> = relators
        .iter()
        .map(|r| r.letters().iter().map(|l| l.rank()).collect())
        .collect();
    let mut t = CosetTable::new(cols, cap.max(1));
    let mut c = 0;
    while c < t.table.len() {
        for r in &rels {
            if !t.live(c) {
                break;
            }
            t.scan_and_fill(c, r)?;
        }
        if t.live(c) {
            for x in 0..cols {
                if t.table[c][x].is_none() {
                    t.define(c, x)?;
                }
            }
        }
        c += 1;
    }

    let live: Vec<usize> = (0..t.table.len()).filter(|&c| t.live(c)).collect();
    let mut resolved = vec![vec![0usize; cols]; t.table.len()];
    for &c in &live {
        for x in 0..cols {
            let d = t.table[c][x]
                .ok_or_else(|| Error::InvalidPresentation("coset table did not close".into()))?;
            resolved[c][x] = t.rep(d);
        }
    }
    let table =
        FiniteTable::from_columns(ngens, live.len(), |c, x| resolved[c][x], |_| t.parent[0])?;
    for e in 0..table.order() {
        for r in relators {
            if table.evaluate(e, r) != e {
                return Err(Error::InvalidPresentation(
                    "coset enumeration produced an inconsistent table".into(),
                ));
            }
        }
    }
    Ok(table)
}
