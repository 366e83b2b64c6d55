//! Weighted automata over a pc monoid and their series semantics.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::algebra::{Field, Matrix, Scalar};
use crate::error::{Error, Result};
use crate::trace::{Letter, PcMonoid, Trace, Word};

/// Default cap on the size of a trace class enumerated by
/// [`WeightedAutomaton::trace_coefficient`].
pub const DEFAULT_CLASS_BUDGET: usize = 100_000;

/// Default cap on the number of words enumerated by the brute-force oracles.
pub const DEFAULT_WORD_BUDGET: u128 = 2_000_000;

/// An ε-free weighted automaton `(Q, I, E, T)` with `Q = {0, .., s-1}`.
/// Absent transitions have weight zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedAutomaton {
    monoid: Arc<PcMonoid>,
    field: Field,
    states: usize,
    initial: Vec<Scalar>,
    final_weights: Vec<Scalar>,
    transitions: BTreeMap<(usize, Letter, usize), Scalar>,
}

/// Per-letter transition matrices plus the initial and final vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrices {
    pub letters: Vec<Matrix>,
    pub initial: Vec<Scalar>,
    pub final_weights: Vec<Scalar>,
}

impl WeightedAutomaton {
    /// The zero automaton with `states` states.
    pub fn new(monoid: Arc<PcMonoid>, field: Field, states: usize) -> Self {
        WeightedAutomaton {
            monoid,
            field,
            states,
            initial: vec![field.zero(); states],
            final_weights: vec![field.zero(); states],
            transitions: BTreeMap::new(),
        }
    }

    pub fn monoid(&self) -> &Arc<PcMonoid> {
        &self.monoid
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn initial(&self) -> &[Scalar] {
        &self.initial
    }

    pub fn final_weights(&self) -> &[Scalar] {
        &self.final_weights
    }

    /// Nonzero transitions keyed by `(from, letter, to)`.
    pub fn transitions(&self) -> &BTreeMap<(usize, Letter, usize), Scalar> {
        &self.transitions
    }

    fn check_state(&self, q: usize) -> Result<()> {
        if q < self.states {
            Ok(())
        } else {
            Err(Error::InvalidAutomaton(format!("state {q} out of range (s = {})", self.states)))
        }
    }

    fn check_weight(&self, w: &Scalar) -> Result<()> {
        if w.field() == self.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: self.field, right: w.field() })
        }
    }

    pub fn set_initial(&mut self, q: usize, w: Scalar) -> Result<()> {
        self.check_state(q)?;
        self.check_weight(&w)?;
        self.initial[q] = w;
        Ok(())
    }

    pub fn set_final(&mut self, q: usize, w: Scalar) -> Result<()> {
        self.check_state(q)?;
        self.check_weight(&w)?;
        self.final_weights[q] = w;
        Ok(())
    }

    /// Sets `E(from, letter, to) = w`; a zero weight removes the transition.
    pub fn set_transition(&mut self, from: usize, letter: Letter, to: usize, w: Scalar) -> Result<()> {
        self.check_state(from)?;
        self.check_state(to)?;
        self.monoid.check_letter(letter)?;
        self.check_weight(&w)?;
        if w.is_zero() {
            self.transitions.remove(&(from, letter, to));
        } else {
            self.transitions.insert((from, letter, to), w);
        }
        Ok(())
    }

    pub fn transition(&self, from: usize, letter: Letter, to: usize) -> Scalar {
        self.transitions.get(&(from, letter, to)).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Adds `extra` fresh states with zero weights; returns the first new index.
    pub fn add_states(&mut self, extra: usize) -> usize {
        let first = self.states;
        self.states += extra;
        self.initial.resize(self.states, self.field.zero());
        self.final_weights.resize(self.states, self.field.zero());
        first
    }

    /// Re-expresses every weight in `field`.
    pub fn to_field(&self, field: Field) -> Result<WeightedAutomaton> {
        let conv = |v: &[Scalar]| v.iter().map(|x| field.convert(x)).collect::<Result<Vec<_>>>();
        let mut transitions = BTreeMap::new();
        for (&k, w) in &self.transitions {
            let w = field.convert(w)?;
            if !w.is_zero() {
                transitions.insert(k, w);
            }
        }
        Ok(WeightedAutomaton {
            monoid: self.monoid.clone(),
            field,
            states: self.states,
            initial: conv(&self.initial)?,
            final_weights: conv(&self.final_weights)?,
            transitions,
        })
    }

    /// Renames state `q` to `perm[q]`.
    pub fn permute_states(&self, perm: &[usize]) -> Result<WeightedAutomaton> {
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.states).collect::<Vec<_>>() {
            return Err(Error::InvalidAutomaton("not a permutation of the states".into()));
        }
        let mut out = WeightedAutomaton::new(self.monoid.clone(), self.field, self.states);
        for q in 0..self.states {
            out.initial[perm[q]] = self.initial[q].clone();
            out.final_weights[perm[q]] = self.final_weights[q].clone();
        }
        for (&(p, x, q), w) in &self.transitions {
            out.transitions.insert((perm[p], x, perm[q]), w.clone());
        }
        Ok(out)
    }

    /// `[w]S = u^T A_{w_1} ... A_{w_t} v`.
    pub fn word_coefficient(&self, w: &[Letter]) -> Result<Scalar> {
        self.monoid.check_word(w)?;
        let index = self.letter_index();
        let mut row = self.initial.clone();
        for &x in w {
            row = step(self.field, &row, &index[x.0]);
        }
        Ok(dot(self.field, &row, &self.final_weights))
    }

    /// Coefficient of a trace: the sum of word coefficients over every
    /// linearization of `t`, enumerated by adjacent commuting swaps.
    pub fn trace_coefficient(&self, t: &Trace) -> Result<Scalar> {
        self.trace_coefficient_with_budget(t, DEFAULT_CLASS_BUDGET)
    }

    pub fn trace_coefficient_with_budget(&self, t: &Trace, budget: usize) -> Result<Scalar> {
        if t.monoid().as_ref() != self.monoid.as_ref() {
            return Err(Error::MonoidMismatch);
        }
        let mut acc = self.field.zero();
        for w in self.monoid.linearizations(t.word(), budget)? {
            acc = &acc + &self.word_coefficient(&w)?;
        }
        Ok(acc)
    }

    /// Automaton whose series is `self - other`: disjoint union of the state
    /// sets with `other`'s initial weights negated.
    pub fn difference(&self, other: &WeightedAutomaton) -> Result<WeightedAutomaton> {
        if self.monoid.as_ref() != other.monoid.as_ref() {
            return Err(Error::MonoidMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field, right: other.field });
        }
        let shift = self.states;
        let mut out = self.clone();
        out.add_states(other.states);
        for q in 0..other.states {
            out.initial[shift + q] = -&other.initial[q];
            out.final_weights[shift + q] = other.final_weights[q].clone();
        }
        for (&(p, x, q), w) in &other.transitions {
            out.transitions.insert((p + shift, x, q + shift), w.clone());
        }
        Ok(out)
    }

    pub fn transition_matrices(&self) -> TransitionMatrices {
        let s = self.states;
        let mut letters = vec![Matrix::zeros(self.field, s, s); self.monoid.len()];
        for (&(p, x, q), w) in &self.transitions {
            letters[x.0].set(p, q, w.clone());
        }
        TransitionMatrices { letters, initial: self.initial.clone(), final_weights: self.final_weights.clone() }
    }

    /// Whether every trace of length at most `max_len` has coefficient zero.
    ///
    /// Brute force: enumerates all words up to `max_len`, sums coefficients per
    /// normal form. Refuses when `Σ_{L<=max_len} n^L` exceeds `budget`.
    pub fn truncated_zero_oracle(&self, max_len: usize, budget: u128) -> Result<bool> {
        let coeffs = self.trace_coefficients_up_to(max_len, budget)?;
        Ok(coeffs.iter().all(|level| level.values().all(Scalar::is_zero)))
    }

    /// Shortest trace with a nonzero coefficient among lengths `0..=max_len`,
    /// returned as its normal form; ties go to the lexicographically least.
    pub fn shortest_nonzero_trace(&self, max_len: usize, budget: u128) -> Result<Option<Word>> {
        let coeffs = self.trace_coefficients_up_to(max_len, budget)?;
        Ok(coeffs.into_iter().find_map(|level| level.into_iter().filter(|(_, c)| !c.is_zero()).map(|(w, _)| w).min()))
    }

    /// Trace coefficients grouped by length: entry `L` maps normal forms of
    /// length `L` to their (possibly zero) coefficient. Only traces with some
    /// linearization of nonzero word coefficient appear.
    pub fn trace_coefficients_up_to(&self, max_len: usize, budget: u128) -> Result<Vec<HashMap<Word, Scalar>>> {
        let needed = word_count(self.monoid.len(), max_len);
        if needed > budget {
            return Err(Error::budget("word enumeration", needed, budget));
        }
        let index = self.letter_index();
        let mut levels: Vec<HashMap<Word, Scalar>> = vec![HashMap::new(); max_len + 1];
        let mut word = Vec::with_capacity(max_len);
        self.enumerate(&index, &self.initial.clone(), &mut word, max_len, &mut levels);
        Ok(levels)
    }

    fn enumerate(
        &self,
        index: &[Vec<(usize, usize, Scalar)>],
        row: &[Scalar],
        word: &mut Word,
        max_len: usize,
        levels: &mut [HashMap<Word, Scalar>],
    ) {
        // A zero row vector kills every extension.
        if row.iter().all(Scalar::is_zero) {
            return;
        }
        let c = dot(self.field, row, &self.final_weights);
        if !c.is_zero() {
            let nf = self.monoid.normal_form_unchecked(word);
            let slot = levels[word.len()].entry(nf).or_insert_with(|| self.field.zero());
            *slot = &*slot + &c;
        }
        if word.len() == max_len {
            return;
        }
        for x in self.monoid.letters() {
            let next = step(self.field, row, &index[x.0]);
            word.push(x);
            self.enumerate(index, &next, word, max_len, levels);
            word.pop();
        }
    }

    fn letter_index(&self) -> Vec<Vec<(usize, usize, Scalar)>> {
        let mut index = vec![Vec::new(); self.monoid.len()];
        for (&(p, x, q), w) in &self.transitions {
            index[x.0].push((p, q, w.clone()));
        }
        index
    }

    pub fn is_structurally_zero(&self) -> bool {
        self.initial.iter().all(Scalar::is_zero) || self.final_weights.iter().all(Scalar::is_zero)
    }
}

/// `Σ_{L=0}^{max_len} n^L`, saturating.
pub fn word_count(n: usize, max_len: usize) -> u128 {
    let mut total: u128 = 0;
    let mut level: u128 = 1;
    for _ in 0..=max_len {
        total = total.saturating_add(level);
        level = level.saturating_mul(n as u128);
    }
    total
}

fn step(field: Field, row: &[Scalar], edges: &[(usize, usize, Scalar)]) -> Vec<Scalar> {
    let mut out = vec![field.zero(); row.len()];
    for (p, q, w) in edges {
        if !row[*p].is_zero() {
            out[*q].add_product(&row[*p], w);
        }
    }
    out
}

fn dot(field: Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        acc.add_product(x, y);
    }
    acc
}
