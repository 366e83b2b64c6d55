//! Partially commutative (trace) monoids, their non-commutation graphs and
//! covers, and lexicographic normal forms.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a letter in its monoid's alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub usize);

pub type Word = Vec<Letter>;

/// A pc monoid `(X*, I)`: an ordered alphabet plus the symmetric set of
/// commuting letter pairs. The non-commutation graph is derived.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcMonoid {
    alphabet: Vec<String>,
    index: HashMap<String, Letter>,
    /// `n * n` table, symmetric, false on the diagonal.
    independent: Vec<bool>,
}

impl PcMonoid {
    pub fn new<S: AsRef<str>>(alphabet: &[S], commuting_pairs: &[(S, S)]) -> Result<PcMonoid> {
        let alphabet: Vec<String> = alphabet.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, name) in alphabet.iter().enumerate() {
            if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '.') {
                return Err(Error::InvalidMonoid(format!("bad letter name `{name}`")));
            }
            if name == "ε" {
                return Err(Error::InvalidMonoid("`ε` is reserved for the empty word".into()));
            }
            if index.insert(name.clone(), Letter(i)).is_some() {
                return Err(Error::InvalidMonoid(format!("duplicate letter `{name}`")));
            }
        }
        let n = alphabet.len();
        let mut m = PcMonoid { alphabet, index, independent: vec![false; n * n] };
        for (a, b) in commuting_pairs {
            let (x, y) = (m.letter(a.as_ref())?, m.letter(b.as_ref())?);
            m.set_independent(x, y);
        }
        Ok(m)
    }

    /// The free monoid over `alphabet`.
    pub fn free<S: AsRef<str>>(alphabet: &[S]) -> Result<PcMonoid> {
        PcMonoid::new(alphabet, &[])
    }

    /// Monoid over letters named `a, b, c, ...` (or `x0, x1, ...` past 26)
    /// with commuting pairs given by index.
    pub fn from_indices(n: usize, commuting: &[(usize, usize)]) -> Result<PcMonoid> {
        let names: Vec<String> = (0..n).map(default_letter_name).collect();
        let mut m = PcMonoid::free(&names)?;
        for &(a, b) in commuting {
            if a >= n || b >= n {
                return Err(Error::UnknownLetter(format!("#{}", a.max(b))));
            }
            m.set_independent(Letter(a), Letter(b));
        }
        Ok(m)
    }

    fn set_independent(&mut self, x: Letter, y: Letter) {
        if x != y {
            let n = self.len();
            self.independent[x.0 * n + y.0] = true;
            self.independent[y.0 * n + x.0] = true;
        }
    }

    pub fn len(&self) -> usize {
        self.alphabet.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphabet.is_empty()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.len()).map(Letter)
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    pub fn name(&self, x: Letter) -> &str {
        &self.alphabet[x.0]
    }

    pub fn check_letter(&self, x: Letter) -> Result<()> {
        if x.0 < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownLetter(format!("#{}", x.0)))
        }
    }

    pub fn check_word(&self, w: &[Letter]) -> Result<()> {
        w.iter().try_for_each(|&x| self.check_letter(x))
    }

    /// `(x, y) ∈ I`; reflexive as in the monoid definition.
    pub fn commute(&self, x: Letter, y: Letter) -> bool {
        x == y || self.independent[x.0 * self.len() + y.0]
    }

    /// Edge relation of the non-commutation graph `G_M`.
    pub fn is_edge(&self, x: Letter, y: Letter) -> bool {
        !self.commute(x, y)
    }

    pub fn edges(&self) -> Vec<(Letter, Letter)> {
        let mut out = Vec::new();
        for a in self.letters() {
            for b in self.letters().filter(|b| b.0 > a.0) {
                if self.is_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Commuting pairs `{a, b}` with `a < b`.
    pub fn commuting_pairs(&self) -> Vec<(Letter, Letter)> {
        let mut out = Vec::new();
        for a in self.letters() {
            for b in self.letters().filter(|b| b.0 > a.0) {
                if self.commute(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_isolated(&self, x: Letter) -> bool {
        self.letters().all(|y| !self.is_edge(x, y))
    }

    /// Parses a word. Letters may be separated by whitespace or `.`; an
    /// unseparated token is split into characters when every letter name is a
    /// single character. `ε` and the empty string denote the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "ε" {
            return Ok(Vec::new());
        }
        let single = self.alphabet.iter().all(|a| a.chars().count() == 1);
        let mut out = Vec::new();
        for token in s.split(|c: char| c.is_whitespace() || c == '.').filter(|t| !t.is_empty()) {
            match self.letter(token) {
                Ok(x) => out.push(x),
                Err(e) if !single => return Err(e),
                Err(_) => {
                    for c in token.chars() {
                        out.push(self.letter(&c.to_string())?);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Inverse of [`PcMonoid::parse_word`]; the empty word renders as `ε`.
    pub fn render_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        let single = self.alphabet.iter().all(|a| a.chars().count() == 1);
        let names: Vec<&str> = w.iter().map(|&x| self.name(x)).collect();
        if single {
            names.concat()
        } else {
            names.join(".")
        }
    }

    /// Lexicographically least word (by alphabet order) in the class of `w`.
    ///
    /// Greedy: repeatedly emit the least letter whose first occurrence in the
    /// remaining word commutes with everything before it.
    pub fn normal_form(&self, w: &[Letter]) -> Result<Word> {
        self.check_word(w)?;
        Ok(self.normal_form_unchecked(w))
    }

    pub(crate) fn normal_form_unchecked(&self, w: &[Letter]) -> Word {
        let mut rest: Vec<Letter> = w.to_vec();
        let mut out = Vec::with_capacity(w.len());
        while !rest.is_empty() {
            let mut best: Option<(Letter, usize)> = None;
            let mut seen = vec![false; self.len()];
            for (pos, &x) in rest.iter().enumerate() {
                if seen[x.0] {
                    continue;
                }
                seen[x.0] = true;
                let movable = rest[..pos].iter().all(|&y| self.commute(x, y));
                if movable && best.is_none_or(|(b, _)| x < b) {
                    best = Some((x, pos));
                }
            }
            let (x, pos) = best.expect("the first letter is always movable");
            out.push(x);
            rest.remove(pos);
        }
        out
    }

    pub fn traces_equivalent(&self, w1: &[Letter], w2: &[Letter]) -> Result<bool> {
        Ok(self.normal_form(w1)? == self.normal_form(w2)?)
    }

    /// Every word equivalent to `w`, found by breadth-first search over
    /// adjacent swaps of commuting letters. Sorted lexicographically.
    pub fn linearizations(&self, w: &[Letter], budget: usize) -> Result<Vec<Word>> {
        self.check_word(w)?;
        let mut seen: HashSet<Word> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.to_vec());
        queue.push_back(w.to_vec());
        while let Some(cur) = queue.pop_front() {
            for i in 0..cur.len().saturating_sub(1) {
                let (a, b) = (cur[i], cur[i + 1]);
                if a != b && self.commute(a, b) {
                    let mut next = cur.clone();
                    next.swap(i, i + 1);
                    if seen.insert(next.clone()) {
                        if seen.len() > budget {
                            return Err(Error::budget("trace class enumeration", seen.len() as u128, budget as u128));
                        }
                        queue.push_back(next);
                    }
                }
            }
        }
        let mut out: Vec<Word> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }
}

pub(crate) fn default_letter_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}

/// Subsequence of `w` made of the letters in `keep`.
pub fn project(w: &[Letter], keep: &BTreeSet<Letter>) -> Word {
    w.iter().copied().filter(|x| keep.contains(x)).collect()
}

/// An element of the monoid, stored as its normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    word: Word,
    monoid: Arc<PcMonoid>,
}

impl Trace {
    pub fn new(monoid: Arc<PcMonoid>, w: &[Letter]) -> Result<Trace> {
        let word = monoid.normal_form(w)?;
        Ok(Trace { word, monoid })
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn monoid(&self) -> &Arc<PcMonoid> {
        &self.monoid
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.monoid.render_word(&self.word))
    }
}

/// A star subgraph of `G_M`: `center` adjacent to each leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Star {
    pub center: Letter,
    pub leaves: Vec<Letter>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Clique,
    Star,
}

/// A cover of `G_M` by cliques and stars. Members are indexed cliques first,
/// then stars, in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cover {
    pub cliques: Vec<Vec<Letter>>,
    pub stars: Vec<Star>,
}

impl Cover {
    pub fn new(cliques: Vec<Vec<Letter>>, stars: Vec<Star>) -> Cover {
        Cover { cliques, stars }
    }

    /// Builds a cover from letter names.
    pub fn from_names<S: AsRef<str>>(m: &PcMonoid, cliques: &[Vec<S>], stars: &[(S, Vec<S>)]) -> Result<Cover> {
        let names = |v: &[S]| v.iter().map(|s| m.letter(s.as_ref())).collect::<Result<Vec<_>>>();
        let cliques = cliques.iter().map(|c| names(c)).collect::<Result<Vec<_>>>()?;
        let stars = stars
            .iter()
            .map(|(c, leaves)| Ok(Star { center: m.letter(c.as_ref())?, leaves: names(leaves)? }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cover { cliques, stars })
    }

    /// One two-letter clique per edge plus a singleton clique per isolated letter.
    pub fn trivial(m: &PcMonoid) -> Cover {
        let mut cliques: Vec<Vec<Letter>> = m.edges().into_iter().map(|(a, b)| vec![a, b]).collect();
        cliques.extend(m.letters().filter(|&x| m.is_isolated(x)).map(|x| vec![x]));
        Cover { cliques, stars: Vec::new() }
    }

    /// Cover size `k`.
    pub fn len(&self) -> usize {
        self.cliques.len() + self.stars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind(&self, i: usize) -> ComponentKind {
        if i < self.cliques.len() {
            ComponentKind::Clique
        } else {
            ComponentKind::Star
        }
    }

    pub fn kinds(&self) -> Vec<ComponentKind> {
        (0..self.len()).map(|i| self.kind(i)).collect()
    }

    pub fn all_cliques(&self) -> bool {
        self.stars.is_empty()
    }

    /// Vertex set `X_i` of member `i`, ascending.
    pub fn vertices(&self, i: usize) -> BTreeSet<Letter> {
        if i < self.cliques.len() {
            self.cliques[i].iter().copied().collect()
        } else {
            let s = &self.stars[i - self.cliques.len()];
            std::iter::once(s.center).chain(s.leaves.iter().copied()).collect()
        }
    }

    /// `J_t`: ascending indices of the members containing `x`.
    pub fn membership(&self, x: Letter) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.vertices(i).contains(&x)).collect()
    }

    /// Whether `{x, y}` is an edge of member `i`.
    pub fn member_has_edge(&self, i: usize, x: Letter, y: Letter) -> bool {
        if x == y {
            return false;
        }
        if i < self.cliques.len() {
            let c = &self.cliques[i];
            c.contains(&x) && c.contains(&y)
        } else {
            let s = &self.stars[i - self.cliques.len()];
            (s.center == x && s.leaves.contains(&y)) || (s.center == y && s.leaves.contains(&x))
        }
    }

    /// Checks the cover against `m`'s non-commutation graph. Unknown letters are
    /// an error; a structurally invalid cover yields `Ok(false)`.
    pub fn validate(&self, m: &PcMonoid) -> Result<bool> {
        Ok(self.violation(m)?.is_none())
    }

    /// Like [`Cover::validate`] but describes the first violated invariant.
    pub fn violation(&self, m: &PcMonoid) -> Result<Option<String>> {
        for c in &self.cliques {
            m.check_word(c)?;
        }
        for s in &self.stars {
            m.check_letter(s.center)?;
            m.check_word(&s.leaves)?;
        }
        for (i, c) in self.cliques.iter().enumerate() {
            if c.is_empty() {
                return Ok(Some(format!("clique {i} is empty")));
            }
            let set: BTreeSet<_> = c.iter().collect();
            if set.len() != c.len() {
                return Ok(Some(format!("clique {i} repeats a letter")));
            }
            for (a, &x) in c.iter().enumerate() {
                for &y in &c[a + 1..] {
                    if m.commute(x, y) {
                        return Ok(Some(format!(
                            "clique {i} contains commuting letters {} and {}",
                            m.name(x),
                            m.name(y)
                        )));
                    }
                }
            }
        }
        for (i, s) in self.stars.iter().enumerate() {
            if s.leaves.is_empty() {
                return Ok(Some(format!("star {i} has no leaves")));
            }
            let set: BTreeSet<_> = s.leaves.iter().collect();
            if set.len() != s.leaves.len() || set.contains(&s.center) {
                return Ok(Some(format!("star {i} repeats a letter")));
            }
            for &leaf in &s.leaves {
                if m.commute(s.center, leaf) {
                    return Ok(Some(format!(
                        "star {i}: center {} commutes with leaf {}",
                        m.name(s.center),
                        m.name(leaf)
                    )));
                }
            }
            for (a, &x) in s.leaves.iter().enumerate() {
                for &y in &s.leaves[a + 1..] {
                    if !m.commute(x, y) {
                        return Ok(Some(format!("star {i}: leaves {} and {} do not commute", m.name(x), m.name(y))));
                    }
                }
            }
        }
        for (x, y) in m.edges() {
            if !(0..self.len()).any(|i| self.member_has_edge(i, x, y)) {
                return Ok(Some(format!("edge {}–{} is not covered", m.name(x), m.name(y))));
            }
        }
        for x in m.letters() {
            if m.is_isolated(x) && !self.cliques.iter().any(|c| c.as_slice() == [x]) {
                return Ok(Some(format!("isolated letter {} needs a singleton clique", m.name(x))));
            }
        }
        Ok(None)
    }

    /// Errors with [`Error::InvalidCover`] unless the cover is valid for `m`.
    pub fn ensure_valid(&self, m: &PcMonoid) -> Result<()> {
        match self.violation(m)? {
            None => Ok(()),
            Some(why) => Err(Error::InvalidCover(why)),
        }
    }
}
