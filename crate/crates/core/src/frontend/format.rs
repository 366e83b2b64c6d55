//! JSON automaton files.
//!
//! ```json
//! {
//!   "description": "optional free text",
//!   "monoid": {
//!     "alphabet": ["x", "y", "z"],
//!     "commuting_pairs": [["x", "z"]],
//!     "cover": { "cliques": [["x", "y"]], "stars": [{ "center": "y", "leaves": ["z"]}] }
//!   },
//!   "states": 2,
//!   "initial": [{ "state": 0, "weight": "1" }],
//!   "final": [{ "state": 1 }],
//!   "transitions": [{ "from": 0, "letter": "x", "to": 1, "weight": "-3/2" }]
//! }
//! ```
//!
//! Instead of `monoid`, a file may give `"tapes": [["a", "b"], ["c"]]`, which
//! makes letters on different tapes commute and covers the graph with one
//! clique per tape. Such files may add `"partition"` (the tape read from each
//! state) and `"deterministic": true`, which forces every nonzero weight to 1
//! and is checked at load time. Weights are strings (`"p/q"` or `"n"`) or
//! integers and default to 1. A missing `cover` means one clique per edge of
//! the non-commutation graph plus a singleton per isolated letter.

use std::path::Path;

use serde::Deserialize;

use crate::algebra::{Field, Scalar};
use crate::automaton::WeightedAutomaton;
use crate::error::{Error, Result};
use crate::frontend::MultiTapeAutomaton;
use crate::trace::{Cover, PcMonoid, Star};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    #[serde(default)]
    description: Option<String>,
    #[serde(default)]
    monoid: Option<RawMonoid>,
    #[serde(default)]
    tapes: Option<Vec<Vec<String>>>,
    #[serde(default)]
    deterministic: bool,
    #[serde(default)]
    partition: Option<Vec<usize>>,
    states: usize,
    #[serde(default)]
    initial: Vec<RawWeighted>,
    #[serde(default, rename = "final")]
    final_weights: Vec<RawWeighted>,
    #[serde(default)]
    transitions: Vec<RawTransition>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMonoid {
    alphabet: Vec<String>,
    #[serde(default)]
    commuting_pairs: Vec<(String, String)>,
    #[serde(default)]
    cover: Option<RawCover>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCover {
    #[serde(default)]
    cliques: Vec<Vec<String>>,
    #[serde(default)]
    stars: Vec<RawStar>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStar {
    center: String,
    leaves: Vec<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawWeight {
    Text(String),
    Int(i64),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWeighted {
    state: usize,
    #[serde(default)]
    weight: Option<RawWeight>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTransition {
    from: usize,
    letter: String,
    to: usize,
    #[serde(default)]
    weight: Option<RawWeight>,
}

/// A parsed automaton file.
#[derive(Clone, Debug)]
pub struct LoadedAutomaton {
    pub description: Option<String>,
    pub automaton: WeightedAutomaton,
    pub cover: Cover,
    /// Present for `tapes` files.
    pub multitape: Option<MultiTapeAutomaton>,
}

fn weight(field: Field, w: &Option<RawWeight>) -> Result<Scalar> {
    match w {
        None => Ok(field.one()),
        Some(RawWeight::Int(v)) => Ok(field.from_i64(*v)),
        Some(RawWeight::Text(s)) => field.parse(s),
    }
}

fn check_letter_name(name: &str) -> Result<()> {
    if name.is_empty() || name == "ε" || name.eq_ignore_ascii_case("eps") || name.eq_ignore_ascii_case("epsilon") {
        Err(Error::Parse(format!("ε-transitions are not supported (letter `{name}`)")))
    } else {
        Ok(())
    }
}

/// Parses an automaton file with weights in `field`.
pub fn parse_automaton(text: &str, field: Field) -> Result<LoadedAutomaton> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    for t in &raw.transitions {
        check_letter_name(&t.letter)?;
    }
    match (&raw.monoid, &raw.tapes) {
        (Some(_), Some(_)) => Err(Error::Parse("give either `monoid` or `tapes`, not both".into())),
        (None, None) => Err(Error::Parse("missing `monoid` or `tapes`".into())),
        (Some(m), None) => {
            if raw.deterministic || raw.partition.is_some() {
                return Err(Error::Parse("`deterministic` and `partition` need `tapes`".into()));
            }
            parse_monoid_file(&raw, m, field)
        }
        (None, Some(tapes)) => parse_tape_file(&raw, tapes, field),
    }
}

fn parse_monoid_file(raw: &RawFile, m: &RawMonoid, field: Field) -> Result<LoadedAutomaton> {
    let monoid = std::sync::Arc::new(PcMonoid::new(&m.alphabet, &m.commuting_pairs)?);
    let cover = match &m.cover {
        None => Cover::trivial(&monoid),
        Some(c) => {
            let letters = |names: &[String]| names.iter().map(|x| monoid.letter(x)).collect::<Result<Vec<_>>>();
            let cliques = c.cliques.iter().map(|q| letters(q)).collect::<Result<Vec<_>>>()?;
            let stars = c
                .stars
                .iter()
                .map(|s| Ok(Star { center: monoid.letter(&s.center)?, leaves: letters(&s.leaves)? }))
                .collect::<Result<Vec<_>>>()?;
            Cover::new(cliques, stars)
        }
    };
    let mut a = WeightedAutomaton::new(monoid.clone(), field, raw.states);
    for i in &raw.initial {
        a.set_initial(
            i.state,
            &a.initial().get(i.state).cloned().unwrap_or(field.zero()) + &weight(field, &i.weight)?,
        )?;
    }
    for f in &raw.final_weights {
        a.set_final(
            f.state,
            &a.final_weights().get(f.state).cloned().unwrap_or(field.zero()) + &weight(field, &f.weight)?,
        )?;
    }
    for t in &raw.transitions {
        let x = monoid.letter(&t.letter)?;
        let w = weight(field, &t.weight)?;
        if t.from >= raw.states || t.to >= raw.states {
            return Err(Error::InvalidAutomaton(format!("transition {} -> {} out of range", t.from, t.to)));
        }
        let prev = a.transition(t.from, x, t.to);
        a.set_transition(t.from, x, t.to, &prev + &w)?;
    }
    Ok(LoadedAutomaton { description: raw.description.clone(), automaton: a, cover, multitape: None })
}

fn parse_tape_file(raw: &RawFile, tapes: &[Vec<String>], field: Field) -> Result<LoadedAutomaton> {
    let mut m = MultiTapeAutomaton::new(field, tapes.to_vec(), raw.states)?;
    if let Some(p) = &raw.partition {
        m.set_partition(p.clone())?;
    }
    for i in &raw.initial {
        m.add_initial(i.state, weight(field, &i.weight)?)?;
    }
    for f in &raw.final_weights {
        m.add_final(f.state, weight(field, &f.weight)?)?;
    }
    for t in &raw.transitions {
        m.add_transition(t.from, &t.letter, t.to, weight(field, &t.weight)?)?;
    }
    if raw.deterministic && !m.check_determinism() {
        return Err(Error::InvalidAutomaton("declared deterministic but is not".into()));
    }
    let (automaton, cover) = m.to_pc_automaton(raw.deterministic)?;
    Ok(LoadedAutomaton { description: raw.description.clone(), automaton, cover, multitape: Some(m) })
}

pub fn load_automaton(path: &Path, field: Field) -> Result<LoadedAutomaton> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_automaton(&text, field)
}
