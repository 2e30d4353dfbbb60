use std::collections::HashSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use super::dehn::Dehn;
use super::todd_coxeter::{self, FiniteTable};
use super::word::{Generator, Letter, Word};
use crate::error::{Error, Result};

pub const DEFAULT_BALL_CAP: usize = 200_000;

static NEXT_ORACLE_ID: AtomicU64 = AtomicU64::new(1);

/// How equality in the group is decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleKind {
    Free,
    FreeAbelian(usize),
    /// Finite group; the multiplication table is produced by coset
    /// enumeration or supplied explicitly.
    Finite,
    /// Standard presentation `[a₁,b₁]…[a_g,b_g]` of a closed orientable
    /// surface group of genus `g ≥ 2`.
    Surface(usize),
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleKind::Free => write!(f, "free"),
            OracleKind::FreeAbelian(d) => write!(f, "free-abelian {d}"),
            OracleKind::Finite => write!(f, "finite"),
            OracleKind::Surface(g) => write!(f, "surface {g}"),
        }
    }
}

#[derive(Debug)]
enum Oracle {
    Free,
    FreeAbelian,
    Finite(FiniteTable),
    Surface(Dehn),
}

#[derive(Debug)]
struct Inner {
    id: u64,
    generators: Vec<Generator>,
    relators: Vec<Word>,
    kind: OracleKind,
    aspherical: bool,
    oracle: Oracle,
}

/// A finite presentation together with the oracle that decides its word
/// problem. Cheap to clone; clones share the oracle.
#[derive(Clone, Debug)]
pub struct Presentation {
    inner: Arc<Inner>,
    ball_cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Form {
    Word(Word),
    Exponents(Vec<i64>),
    Index(usize),
}

/// A group element in canonical form. Two elements of the same presentation
/// are equal iff their canonical forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    oracle: u64,
    form: Form,
}

impl GroupElement {
    pub fn oracle_id(&self) -> u64 {
        self.oracle
    }
}

impl Presentation {
    pub fn new(
        generator_names: &[&str],
        relators: Vec<Word>,
        kind: OracleKind,
        aspherical: bool,
    ) -> Result<Presentation> {
        Self::with_finite_cap(
            generator_names,
            relators,
            kind,
            aspherical,
            DEFAULT_BALL_CAP,
        )
    }

    fn with_finite_cap(
        generator_names: &[&str],
        relators: Vec<Word>,
        kind: OracleKind,
        aspherical: bool,
        cap: usize,
    ) -> Result<Presentation> {
        let generators = make_generators(generator_names)?;
        let n = generators.len();
        for r in &relators {
            if r.is_empty() {
                return Err(Error::InvalidPresentation("empty relator".into()));
            }
            if !r.is_cyclically_reduced() {
                return Err(Error::InvalidPresentation(format!(
                    "relator {} is not cyclically reduced",
                    r.render(&generators)
                )));
            }
            if r.max_generator().is_some_and(|g| g >= n) {
                return Err(Error::InvalidPresentation(
                    "relator uses unknown generator".into(),
                ));
            }
        }
        let oracle = match &kind {
            OracleKind::Free => {
                if !relators.is_empty() {
                    return Err(Error::UnsupportedOracle(
                        "free oracle cannot decide equality with relators present".into(),
                    ));
                }
                Oracle::Free
            }
            OracleKind::FreeAbelian(d) => {
                check_free_abelian(*d, n, &relators)?;
                Oracle::FreeAbelian
            }
            OracleKind::Finite => Oracle::Finite(todd_coxeter::enumerate(n, &relators, cap)?),
            OracleKind::Surface(g) => {
                check_surface(*g, n, &relators)?;
                Oracle::Surface(Dehn::new(&relators))
            }
        };
        Ok(Presentation {
            inner: Arc::new(Inner {
                id: NEXT_ORACLE_ID.fetch_add(1, Ordering::Relaxed),
                generators,
                relators,
                kind,
                aspherical,
                oracle,
            }),
            ball_cap: DEFAULT_BALL_CAP,
        })
    }

    /// A finite presentation whose multiplication data is given directly as
    /// the right action of each generator on `0..order` (0 = identity). The
    /// relators must hold in the table.
    pub fn finite_from_table(
        generator_names: &[&str],
        relators: Vec<Word>,
        generator_action: &[Vec<usize>],
    ) -> Result<Presentation> {
        let generators = make_generators(generator_names)?;
        if generator_action.len() != generators.len() {
            return Err(Error::InvalidPresentation(
                "one table column per generator".into(),
            ));
        }
        let table = FiniteTable::from_generator_action(generator_action)?;
        for r in &relators {
            if r.is_empty() || !r.is_cyclically_reduced() {
                return Err(Error::InvalidPresentation(
                    "relators must be cyclically reduced".into(),
                ));
            }
            if (0..table.order()).any(|e| table.evaluate(e, r) != e) {
                return Err(Error::InvalidPresentation(format!(
                    "relator {} does not hold in the table",
                    r.render(&generators)
                )));
            }
        }
        Ok(Presentation {
            inner: Arc::new(Inner {
                id: NEXT_ORACLE_ID.fetch_add(1, Ordering::Relaxed),
                generators,
                relators,
                kind: OracleKind::Finite,
                aspherical: false,
                oracle: Oracle::Finite(table),
            }),
            ball_cap: DEFAULT_BALL_CAP,
        })
    }

    /// Parses the line-oriented presentation format:
    ///
    /// ```text
    /// generators: x y
    /// relators: x y x^-1 y^-1
    /// oracle: free-abelian 2
    /// aspherical: true
    /// ```
    ///
    /// Several relators are separated by commas or given on repeated
    /// `relators:` lines. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Presentation> {
        Self::parse_with_cap(text, DEFAULT_BALL_CAP)
    }

    pub fn parse_with_cap(text: &str, cap: usize) -> Result<Presentation> {
        let mut generators: Option<Vec<String>> = None;
        let mut relator_texts: Vec<String> = Vec::new();
        let mut kind: Option<OracleKind> = None;
        let mut aspherical = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once(':').ok_or_else(|| {
                Error::Parse(format!("line {}: expected `key: value`", lineno + 1))
            })?;
            let value = value.trim();
            match key.trim() {
                "generators" => {
                    generators = Some(value.split_whitespace().map(str::to_string).collect())
                }
                "relators" => relator_texts.extend(
                    value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(str::to_string),
                ),
                "oracle" => kind = Some(parse_oracle(value)?),
                "aspherical" => {
                    aspherical = match value {
                        "true" => true,
                        "false" => false,
                        _ => return Err(Error::Parse(format!("aspherical: {value:?}"))),
                    }
                }
                other => {
                    return Err(Error::Parse(format!(
                        "line {}: unknown key {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        let names = generators.ok_or_else(|| Error::Parse("missing `generators:` line".into()))?;
        let kind = kind.ok_or_else(|| Error::Parse("missing `oracle:` line".into()))?;
        let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let gens = make_generators(&name_refs)?;
        let relators = relator_texts
            .iter()
            .map(|t| Word::parse(t, &gens))
            .collect::<Result<Vec<_>>>()?;
        let mut p = Self::with_finite_cap(&name_refs, relators, kind, aspherical, cap)?;
        p.ball_cap = cap;
        Ok(p)
    }

    pub fn with_ball_cap(mut self, cap: usize) -> Self {
        self.ball_cap = cap;
        self
    }

    pub fn ball_cap(&self) -> usize {
        self.ball_cap
    }

    pub fn oracle_id(&self) -> u64 {
        self.inner.id
    }

    pub fn generators(&self) -> &[Generator] {
        &self.inner.generators
    }

    pub fn rank(&self) -> usize {
        self.inner.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.inner.relators
    }

    pub fn oracle_kind(&self) -> &OracleKind {
        &self.inner.kind
    }

    /// User-asserted asphericity of the presentation 2-complex.
    pub fn aspherical(&self) -> bool {
        self.inner.aspherical
    }

    pub fn max_relator_length(&self) -> usize {
        self.relators().iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.inner.oracle, Oracle::Finite(_))
    }

    /// Group order for finite oracles.
    pub fn order(&self) -> Option<usize> {
        match &self.inner.oracle {
            Oracle::Finite(t) => Some(t.order()),
            _ => None,
        }
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Word::parse(text, self.generators())
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.oracle == self.inner.id {
            Ok(())
        } else {
            Err(Error::OracleMismatch)
        }
    }

    fn element(&self, form: Form) -> GroupElement {
        GroupElement {
            oracle: self.inner.id,
            form,
        }
    }

    pub fn identity(&self) -> GroupElement {
        self.element(match &self.inner.oracle {
            Oracle::Free | Oracle::Surface(_) => Form::Word(Word::empty()),
            Oracle::FreeAbelian => Form::Exponents(vec![0; self.rank()]),
            Oracle::Finite(_) => Form::Index(0),
        })
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        *g == self.identity()
    }

    /// Canonical form of the element represented by `w`.
    pub fn normal_form(&self, w: &Word) -> Result<GroupElement> {
        if w.max_generator().is_some_and(|g| g >= self.rank()) {
            return Err(Error::UnsupportedOracle(format!(
                "word uses a generator outside the {} generators of this presentation",
                self.rank()
            )));
        }
        Ok(self.element(match &self.inner.oracle {
            Oracle::Free => Form::Word(w.reduce()),
            Oracle::FreeAbelian => Form::Exponents(w.exponent_sums(self.rank())),
            Oracle::Finite(t) => Form::Index(t.evaluate(0, w)),
            Oracle::Surface(d) => Form::Word(d.shortlex_representative(w, self.rank())),
        }))
    }

    /// The shortlex-least geodesic word representing `g`.
    pub fn representative(&self, g: &GroupElement) -> Result<Word> {
        self.check(g)?;
        Ok(match &g.form {
            Form::Word(w) => w.clone(),
            Form::Exponents(e) => {
                let mut w = Word::empty();
                for (i, &k) in e.iter().enumerate() {
                    w = w.concat(&Word::power(i, k));
                }
                w
            }
            Form::Index(i) => match &self.inner.oracle {
                Oracle::Finite(t) => t.representative(*i).clone(),
                _ => unreachable!("index form only arises from finite oracles"),
            },
        })
    }

    /// Word length of `g` with respect to the presentation generators.
    pub fn word_length(&self, g: &GroupElement) -> Result<usize> {
        self.check(g)?;
        Ok(match &g.form {
            Form::Word(w) => w.len(),
            Form::Exponents(e) => e.iter().map(|k| k.unsigned_abs() as usize).sum(),
            Form::Index(_) => self.representative(g)?.len(),
        })
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        match (&a.form, &b.form, &self.inner.oracle) {
            (Form::Exponents(x), Form::Exponents(y), _) => Ok(self.element(Form::Exponents(
                x.iter().zip(y).map(|(p, q)| p + q).collect(),
            ))),
            (Form::Index(x), _, Oracle::Finite(t)) => {
                let wb = self.representative(b)?;
                Ok(self.element(Form::Index(t.evaluate(*x, &wb))))
            }
            (Form::Word(x), Form::Word(y), _) => self.normal_form(&x.concat(y)),
            _ => Err(Error::OracleMismatch),
        }
    }

    pub fn inv(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        match &a.form {
            Form::Exponents(x) => Ok(self.element(Form::Exponents(x.iter().map(|k| -k).collect()))),
            _ => self.normal_form(&self.representative(a)?.inverse()),
        }
    }

    /// `g · s` for a single letter.
    pub fn mul_letter(&self, g: &GroupElement, s: Letter) -> Result<GroupElement> {
        self.check(g)?;
        if s.generator >= self.rank() {
            return Err(Error::UnsupportedOracle(
                "letter outside the generating set".into(),
            ));
        }
        Ok(match (&g.form, &self.inner.oracle) {
            (Form::Exponents(e), _) => {
                let mut e = e.clone();
                e[s.generator] += if s.inverse { -1 } else { 1 };
                self.element(Form::Exponents(e))
            }
            (Form::Index(i), Oracle::Finite(t)) => self.element(Form::Index(t.act(*i, s))),
            (Form::Word(w), Oracle::Free) => {
                let mut w = w.clone();
                if w.letters().last() == Some(&s.inv()) {
                    w.0.pop();
                } else {
                    w.push(s);
                }
                self.element(Form::Word(w))
            }
            (Form::Word(w), Oracle::Surface(d)) => {
                let mut w = w.clone();
                w.push(s);
                self.element(Form::Word(d.shortlex_representative(&w, self.rank())))
            }
            _ => return Err(Error::OracleMismatch),
        })
    }

    /// Canonical form rendered in the word syntax; the identity renders as
    /// the empty string.
    pub fn render(&self, g: &GroupElement) -> Result<String> {
        Ok(self.representative(g)?.render(self.generators()))
    }

    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        self.normal_form(&self.parse_word(text)?)
    }

    /// All elements of word length ≤ `r`, in shortlex order of their
    /// canonical representatives.
    pub fn ball(&self, r: usize) -> Result<Vec<GroupElement>> {
        let mut walker = self.ball_walker();
        let mut out = Vec::new();
        for _ in 0..=r {
            match walker.next_sphere()? {
                Some(sphere) => out.extend(sphere),
                None => break,
            }
        }
        Ok(out)
    }

    pub fn ball_walker(&self) -> BallWalker<'_> {
        BallWalker {
            p: self,
            seen: HashSet::new(),
            frontier: Vec::new(),
            started: false,
        }
    }
}

/// Breadth-first enumeration of spheres of increasing radius. Each sphere is
/// sorted in shortlex order of canonical representatives.
pub struct BallWalker<'a> {
    p: &'a Presentation,
    seen: HashSet<GroupElement>,
    frontier: Vec<GroupElement>,
    started: bool,
}

impl BallWalker<'_> {
    /// The next sphere, or `None` once the group is exhausted.
    pub fn next_sphere(&mut self) -> Result<Option<Vec<GroupElement>>> {
        if !self.started {
            self.started = true;
            let e = self.p.identity();
            self.seen.insert(e.clone());
            self.frontier = vec![e.clone()];
            return Ok(Some(vec![e]));
        }
        let mut next = Vec::new();
        for g in &self.frontier {
            for s in Letter::alphabet(self.p.rank()) {
                let h = self.p.mul_letter(g, s)?;
                if !self.seen.contains(&h) {
                    if self.seen.len() >= self.p.ball_cap {
                        return Err(Error::BudgetExceeded(format!(
                            "ball exceeds {} elements",
                            self.p.ball_cap
                        )));
                    }
                    self.seen.insert(h.clone());
                    next.push(h);
                }
            }
        }
        if next.is_empty() {
            self.frontier.clear();
            return Ok(None);
        }
        self.frontier = next.clone();
        Ok(Some(next))
    }
}

fn make_generators(names: &[&str]) -> Result<Vec<Generator>> {
    let mut out: Vec<Generator> = Vec::new();
    for (index, &name) in names.iter().enumerate() {
        if name.is_empty()
            || name.contains(['^', ',', '#', ':'])
            || name.contains(char::is_whitespace)
        {
            return Err(Error::InvalidPresentation(format!(
                "bad generator name {name:?}"
            )));
        }
        if out.iter().any(|g| g.name == name) {
            return Err(Error::InvalidPresentation(format!(
                "duplicate generator {name:?}"
            )));
        }
        out.push(Generator {
            index,
            name: name.to_string(),
        });
    }
    Ok(out)
}

fn parse_oracle(value: &str) -> Result<OracleKind> {
    let parts: Vec<&str> = value.split_whitespace().collect();
    let arg = |i: usize| -> Result<usize> {
        parts
            .get(i)
            .ok_or_else(|| Error::Parse(format!("oracle {value:?} needs a parameter")))?
            .parse()
            .map_err(|_| Error::Parse(format!("bad oracle parameter in {value:?}")))
    };
    match parts.first().copied() {
        Some("free") => Ok(OracleKind::Free),
        Some("free-abelian") => Ok(OracleKind::FreeAbelian(arg(1)?)),
        Some("finite") => Ok(OracleKind::Finite),
        Some("surface") => Ok(OracleKind::Surface(arg(1)?)),
        _ => Err(Error::Parse(format!("unknown oracle {value:?}"))),
    }
}

fn is_commutator_of(r: &Word, i: usize, j: usize) -> bool {
    let l = r.letters();
    l.len() == 4 && l[2] == l[0].inv() && l[3] == l[1].inv() && {
        let (a, b) = (l[0].generator, l[1].generator);
        (a, b) == (i, j) || (a, b) == (j, i)
    }
}

/// `ℤ^d` on `d` generators: every relator has zero exponent sums and every
/// pair of generators has a commutator among the relators.
fn check_free_abelian(d: usize, n: usize, relators: &[Word]) -> Result<()> {
    if d != n {
        return Err(Error::UnsupportedOracle(format!(
            "free-abelian {d} needs exactly {d} generators, found {n}"
        )));
    }
    for r in relators {
        if r.exponent_sums(n).iter().any(|&e| e != 0) {
            return Err(Error::UnsupportedOracle(
                "free-abelian oracle requires relators in the commutator subgroup".into(),
            ));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if !relators.iter().any(|r| is_commutator_of(r, i, j)) {
                return Err(Error::UnsupportedOracle(format!(
                    "free-abelian oracle: no commutator relator for generators {i} and {j}"
                )));
            }
        }
    }
    Ok(())
}

fn check_surface(g: usize, n: usize, relators: &[Word]) -> Result<()> {
    if g < 2 {
        return Err(Error::UnsupportedOracle(
            "surface oracle requires genus at least 2".into(),
        ));
    }
    if n != 2 * g {
        return Err(Error::UnsupportedOracle(format!(
            "surface {g} needs {} generators, found {n}",
            2 * g
        )));
    }
    let mut expected = Word::empty();
    for k in 0..g {
        let (a, b) = (2 * k, 2 * k + 1);
        expected = expected.concat(&Word(vec![
            Letter::pos(a),
            Letter::pos(b),
            Letter::neg(a),
            Letter::neg(b),
        ]));
    }
    if relators.len() != 1 || relators[0] != expected {
        return Err(Error::UnsupportedOracle(
            "surface oracle requires the single relator [a1,b1]...[ag,bg]".into(),
        ));
    }
    Ok(())
}
