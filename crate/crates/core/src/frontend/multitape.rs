use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use crate::algebra::{Field, Scalar};
use crate::automaton::WeightedAutomaton;
use crate::error::{Error, Result};
use crate::trace::{Cover, PcMonoid};

/// A weighted automaton reading `k` tapes with pairwise disjoint alphabets.
/// Letters on different tapes commute; letters on one tape do not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiTapeAutomaton {
    field: Field,
    tapes: Vec<Vec<String>>,
    states: usize,
    /// `partition[q]` is the tape read from state `q`.
    partition: Option<Vec<usize>>,
    initial: Vec<(usize, Scalar)>,
    final_weights: Vec<(usize, Scalar)>,
    transitions: Vec<(usize, String, usize, Scalar)>,
}

impl MultiTapeAutomaton {
    pub fn new(field: Field, tapes: Vec<Vec<String>>, states: usize) -> Result<Self> {
        let mut seen = HashSet::new();
        for tape in &tapes {
            for x in tape {
                if !seen.insert(x.clone()) {
                    return Err(Error::InvalidMonoid(format!("letter `{x}` appears on two tapes")));
                }
            }
        }
        Ok(MultiTapeAutomaton {
            field,
            tapes,
            states,
            partition: None,
            initial: Vec::new(),
            final_weights: Vec::new(),
            transitions: Vec::new(),
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn tapes(&self) -> &[Vec<String>] {
        &self.tapes
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn partition(&self) -> Option<&[usize]> {
        self.partition.as_deref()
    }

    pub fn transitions(&self) -> &[(usize, String, usize, Scalar)] {
        &self.transitions
    }

    fn check_state(&self, q: usize) -> Result<()> {
        if q < self.states {
            Ok(())
        } else {
            Err(Error::InvalidAutomaton(format!("state {q} out of range (s = {})", self.states)))
        }
    }

    /// Declares the tape read from each state.
    pub fn set_partition(&mut self, partition: Vec<usize>) -> Result<()> {
        if partition.len() != self.states {
            return Err(Error::InvalidAutomaton(format!(
                "partition covers {} of {} states",
                partition.len(),
                self.states
            )));
        }
        if let Some(&t) = partition.iter().find(|&&t| t >= self.tapes.len()) {
            return Err(Error::InvalidAutomaton(format!("partition names tape {t}")));
        }
        self.partition = Some(partition);
        Ok(())
    }

    pub fn add_initial(&mut self, q: usize, w: Scalar) -> Result<()> {
        self.check_state(q)?;
        self.initial.push((q, w));
        Ok(())
    }

    pub fn add_final(&mut self, q: usize, w: Scalar) -> Result<()> {
        self.check_state(q)?;
        self.final_weights.push((q, w));
        Ok(())
    }

    pub fn add_transition(&mut self, from: usize, letter: &str, to: usize, w: Scalar) -> Result<()> {
        self.check_state(from)?;
        self.check_state(to)?;
        if self.tape_of(letter).is_none() {
            return Err(Error::UnknownLetter(letter.to_string()));
        }
        self.transitions.push((from, letter.to_string(), to, w));
        Ok(())
    }

    pub fn tape_of(&self, letter: &str) -> Option<usize> {
        self.tapes.iter().position(|t| t.iter().any(|x| x == letter))
    }

    /// Whether the states are partitioned by tape, each state reads only its
    /// tape, every `(state, letter)` has at most one successor, and there is
    /// at most one initial state. A single-tape automaton needs no explicit
    /// partition.
    pub fn check_determinism(&self) -> bool {
        let partition: Vec<usize> = match (&self.partition, self.tapes.len()) {
            (Some(p), _) => p.clone(),
            (None, 1) => vec![0; self.states],
            (None, _) => return self.states == 0,
        };
        let initial: BTreeSet<usize> = self.initial.iter().filter(|(_, w)| !w.is_zero()).map(|&(q, _)| q).collect();
        if initial.len() > 1 {
            return false;
        }
        let mut out: HashSet<(usize, &str)> = HashSet::new();
        for (p, x, _, w) in &self.transitions {
            if w.is_zero() {
                continue;
            }
            if self.tape_of(x) != Some(partition[*p]) {
                return false;
            }
            if !out.insert((*p, x.as_str())) {
                return false;
            }
        }
        true
    }

    /// The pc monoid with all cross-tape pairs commuting, the automaton over
    /// it, and the cover by one clique per nonempty tape. With
    /// `as_deterministic`, every nonzero weight is replaced by 1.
    pub fn to_pc_automaton(&self, as_deterministic: bool) -> Result<(WeightedAutomaton, Cover)> {
        let alphabet: Vec<String> = self.tapes.concat();
        let mut pairs = Vec::new();
        for (a, ta) in self.tapes.iter().enumerate() {
            for tb in &self.tapes[a + 1..] {
                for x in ta {
                    for y in tb {
                        pairs.push((x.clone(), y.clone()));
                    }
                }
            }
        }
        let monoid = Arc::new(PcMonoid::new(&alphabet, &pairs)?);
        let index: HashMap<&str, _> = alphabet.iter().map(|x| (x.as_str(), monoid.letter(x).unwrap())).collect();
        let cliques = self
            .tapes
            .iter()
            .filter(|t| !t.is_empty())
            .map(|t| t.iter().map(|x| index[x.as_str()]).collect())
            .collect();
        let cover = Cover::new(cliques, Vec::new());
        let weight = |w: &Scalar| -> Scalar {
            if as_deterministic && !w.is_zero() {
                self.field.one()
            } else {
                w.clone()
            }
        };
        let mut a = WeightedAutomaton::new(monoid, self.field, self.states);
        for (q, w) in &self.initial {
            a.set_initial(*q, &a.initial()[*q] + &weight(w))?;
        }
        for (q, w) in &self.final_weights {
            a.set_final(*q, &a.final_weights()[*q] + &weight(w))?;
        }
        for (p, x, q, w) in &self.transitions {
            let l = index[x.as_str()];
            let prev = a.transition(*p, l, *q);
            a.set_transition(*p, l, *q, &prev + &weight(w))?;
        }
        Ok((a, cover))
    }
}
