//! Seeded random instances: monoids with covers, automata, and automata
//! whose series is zero by construction.

use std::sync::Arc;

use crate::algebra::{Field, Scalar, SeededRandomSource};
use crate::automaton::{word_count, WeightedAutomaton};
use crate::embedding::witness_length_bound;
use crate::trace::{Cover, Letter, PcMonoid, Star};

#[derive(Clone, Copy, Debug)]
pub struct CorpusParams {
    pub max_states: usize,
    pub max_letters: usize,
    pub max_cover: usize,
    pub allow_stars: bool,
    pub field: Field,
    /// Weights are drawn from `[-max_weight, max_weight] \ {0}`.
    pub max_weight: i64,
    /// Probability that a given transition is present.
    pub density: f64,
    /// Instances whose oracle would enumerate more words than this are
    /// redrawn.
    pub oracle_cap: u128,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            max_states: 4,
            max_letters: 3,
            max_cover: 3,
            allow_stars: true,
            field: Field::Rational,
            max_weight: 3,
            density: 0.3,
            oracle_cap: 300_000,
        }
    }
}

/// How an instance was built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InstanceKind {
    Random,
    /// `a - a` with `a`'s states permuted.
    PermutedDifference,
    /// Paths `xy` and `yx` with opposite weights over commuting `x, y`.
    CommutingTwins,
    /// Final weights only on states unreachable from an initial state.
    Unreachable,
    /// `a - a'` with one state of `a` split in two.
    SplitDifference,
    /// `a - a'` with one weight of `a` changed.
    Perturbed,
}

impl InstanceKind {
    /// Whether the construction forces the series to be zero.
    pub fn zero_by_construction(self) -> bool {
        matches!(
            self,
            InstanceKind::PermutedDifference
                | InstanceKind::CommutingTwins
                | InstanceKind::Unreachable
                | InstanceKind::SplitDifference
        )
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub automaton: WeightedAutomaton,
    pub cover: Cover,
    pub kind: InstanceKind,
}

fn nonzero_weight(rng: &mut SeededRandomSource, field: Field, max: i64) -> Scalar {
    let mut v = 0;
    while v == 0 {
        v = rng.range_i64(-max, max);
    }
    field.from_i64(v)
}

/// A monoid on `n` letters with each pair commuting with probability 1/2.
pub fn random_monoid(rng: &mut SeededRandomSource, n: usize) -> Arc<PcMonoid> {
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.chance(0.5) {
                pairs.push((a, b));
            }
        }
    }
    Arc::new(PcMonoid::from_indices(n, &pairs).expect("indices in range"))
}

/// A random valid cover mixing greedy cliques, stars (if allowed), and an
/// occasional redundant member. `None` if it ends up with more than
/// `max_cover` members.
pub fn random_cover(rng: &mut SeededRandomSource, m: &PcMonoid, allow_stars: bool, max_cover: usize) -> Option<Cover> {
    let mut edges = m.edges();
    for i in (1..edges.len()).rev() {
        edges.swap(i, rng.index(i + 1));
    }
    let mut cover = Cover::default();
    let covered = |c: &Cover, x: Letter, y: Letter| (0..c.len()).any(|i| c.member_has_edge(i, x, y));
    for (x, y) in edges {
        if covered(&cover, x, y) {
            continue;
        }
        if allow_stars && rng.chance(0.5) {
            let (center, first) = if rng.chance(0.5) { (x, y) } else { (y, x) };
            let mut leaves = vec![first];
            for z in m.letters() {
                if z != center
                    && !leaves.contains(&z)
                    && m.is_edge(center, z)
                    && leaves.iter().all(|&l| m.commute(l, z))
                    && rng.chance(0.7)
                {
                    leaves.push(z);
                }
            }
            leaves.sort();
            cover.stars.push(Star { center, leaves });
        } else {
            let mut clique = vec![x, y];
            for z in m.letters() {
                if !clique.contains(&z) && clique.iter().all(|&c| m.is_edge(c, z)) && rng.chance(0.7) {
                    clique.push(z);
                }
            }
            clique.sort();
            cover.cliques.push(clique);
        }
    }
    for x in m.letters() {
        if m.is_isolated(x) {
            cover.cliques.push(vec![x]);
        }
    }
    if cover.len() < max_cover && !m.is_empty() && rng.chance(0.25) {
        // a redundant member: x then lies in two components
        let x = Letter(rng.index(m.len()));
        cover.cliques.push(vec![x]);
    }
    debug_assert!(cover.validate(m).unwrap_or(false));
    (cover.len() <= max_cover).then_some(cover)
}

/// A random automaton with `states` states; state 0 is initial.
pub fn random_automaton(
    rng: &mut SeededRandomSource,
    m: &Arc<PcMonoid>,
    states: usize,
    params: &CorpusParams,
) -> WeightedAutomaton {
    let field = params.field;
    let mut a = WeightedAutomaton::new(m.clone(), field, states);
    if states == 0 {
        return a;
    }
    a.set_initial(0, nonzero_weight(rng, field, params.max_weight)).unwrap();
    for q in 1..states {
        if rng.chance(0.2) {
            a.set_initial(q, nonzero_weight(rng, field, params.max_weight)).unwrap();
        }
    }
    let mut any_final = false;
    for q in 0..states {
        if rng.chance(0.5) {
            a.set_final(q, nonzero_weight(rng, field, params.max_weight)).unwrap();
            any_final = true;
        }
    }
    if !any_final {
        let q = rng.index(states);
        a.set_final(q, nonzero_weight(rng, field, params.max_weight)).unwrap();
    }
    for p in 0..states {
        for x in m.letters() {
            for q in 0..states {
                if rng.chance(params.density) {
                    a.set_transition(p, x, q, nonzero_weight(rng, field, params.max_weight)).unwrap();
                }
            }
        }
    }
    a
}

fn permutation(rng: &mut SeededRandomSource, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.index(i + 1));
    }
    p
}

/// `a` with state `q` split into `q` (weight share `part`) and a fresh copy
/// (share `1 - part`): incoming weights are divided between the two, outgoing
/// weights and the final weight are duplicated. The series is unchanged.
pub fn split_state(a: &WeightedAutomaton, q: usize, part: &Scalar) -> WeightedAutomaton {
    let field = a.field();
    let rest = &field.one() - part;
    let mut b = a.clone();
    let fresh = b.add_states(1);
    for key in a.transitions().keys() {
        b.set_transition(key.0, key.1, key.2, field.zero()).unwrap();
    }
    b.set_initial(q, &a.initial()[q] * part).unwrap();
    b.set_initial(fresh, &a.initial()[q] * &rest).unwrap();
    b.set_final(fresh, a.final_weights()[q].clone()).unwrap();
    let mut add = |p: usize, x: Letter, r: usize, w: Scalar| {
        let v = &b.transition(p, x, r) + &w;
        b.set_transition(p, x, r, v).unwrap();
    };
    for (&(p, x, r), w) in a.transitions() {
        let sources: &[usize] = if p == q { &[q, fresh] } else { &[p] };
        for &src in sources {
            if r == q {
                add(src, x, q, w * part);
                add(src, x, fresh, w * &rest);
            } else {
                add(src, x, r, w.clone());
            }
        }
    }
    b
}

fn draw(
    rng: &mut SeededRandomSource,
    params: &CorpusParams,
    m: &Arc<PcMonoid>,
    kind: InstanceKind,
) -> Option<WeightedAutomaton> {
    let s_max = params.max_states;
    let w = params.max_weight;
    let field = params.field;
    match kind {
        InstanceKind::Random => {
            let s = 1 + rng.index(s_max);
            Some(random_automaton(rng, m, s, params))
        }
        InstanceKind::PermutedDifference | InstanceKind::Perturbed => {
            let half = s_max / 2;
            if half == 0 {
                return None;
            }
            let s = 1 + rng.index(half);
            let a = random_automaton(rng, m, s, params);
            let mut b = a.permute_states(&permutation(rng, s)).unwrap();
            if kind == InstanceKind::Perturbed {
                let keys: Vec<_> = b.transitions().keys().copied().collect();
                if keys.is_empty() {
                    b.set_final(0, &b.final_weights()[0] + &field.one()).unwrap();
                } else {
                    let (p, x, q) = keys[rng.index(keys.len())];
                    let v = &b.transition(p, x, q) + &nonzero_weight(rng, field, w);
                    b.set_transition(p, x, q, v).unwrap();
                }
            }
            Some(a.difference(&b).unwrap())
        }
        InstanceKind::SplitDifference => {
            let s = 1 + rng.index(s_max.div_ceil(2).saturating_sub(1).max(1));
            if 2 * s + 1 > s_max {
                return None;
            }
            let a = random_automaton(rng, m, s, params);
            let part = field.from_i64(rng.range_i64(-w, w));
            let b = split_state(&a, rng.index(s), &part);
            Some(a.difference(&b).unwrap())
        }
        InstanceKind::CommutingTwins => {
            let pairs = m.commuting_pairs();
            if pairs.is_empty() || s_max < 4 {
                return None;
            }
            let (x, y) = pairs[rng.index(pairs.len())];
            let c = nonzero_weight(rng, field, w);
            let mut a = WeightedAutomaton::new(m.clone(), field, 4);
            a.set_initial(0, field.one()).unwrap();
            a.set_transition(0, x, 1, c.clone()).unwrap();
            a.set_transition(1, y, 3, field.one()).unwrap();
            a.set_transition(0, y, 2, -&c).unwrap();
            a.set_transition(2, x, 3, field.one()).unwrap();
            a.set_final(3, nonzero_weight(rng, field, w)).unwrap();
            Some(a)
        }
        InstanceKind::Unreachable => {
            if s_max < 2 {
                return None;
            }
            let s = 2 + rng.index(s_max - 1);
            let split = 1 + rng.index(s - 1);
            // states below `split` never reach the others
            let mut a = random_automaton(rng, m, s, params);
            let keys: Vec<_> = a.transitions().keys().copied().collect();
            for (p, x, q) in keys {
                if p < split && q >= split {
                    a.set_transition(p, x, q, field.zero()).unwrap();
                }
            }
            for q in 0..s {
                if q < split {
                    a.set_final(q, field.zero()).unwrap();
                } else {
                    a.set_initial(q, field.zero()).unwrap();
                }
            }
            a.set_final(s - 1, nonzero_weight(rng, field, w)).unwrap();
            Some(a)
        }
    }
}

/// One instance of the requested kind within `params`; redraws until the
/// monoid, cover and oracle cost fit.
pub fn instance_of_kind(rng: &mut SeededRandomSource, params: &CorpusParams, kind: InstanceKind) -> Instance {
    loop {
        let n = 1 + rng.index(params.max_letters);
        let m = random_monoid(rng, n);
        let Some(cover) = random_cover(rng, &m, params.allow_stars, params.max_cover) else { continue };
        let Some(a) = draw(rng, params, &m, kind) else { continue };
        if a.states() > params.max_states {
            continue;
        }
        let bound = witness_length_bound(&a, &cover).expect("cover is valid");
        if word_count(n, bound) > params.oracle_cap {
            continue;
        }
        return Instance { automaton: a, cover, kind };
    }
}

/// A mixed corpus: roughly half random automata, the rest spread over the
/// zero-by-construction kinds and near misses.
pub fn generate_corpus(seed: u64, count: usize, params: &CorpusParams) -> Vec<Instance> {
    let kinds = [
        InstanceKind::Random,
        InstanceKind::PermutedDifference,
        InstanceKind::Random,
        InstanceKind::CommutingTwins,
        InstanceKind::Random,
        InstanceKind::Unreachable,
        InstanceKind::Random,
        InstanceKind::SplitDifference,
        InstanceKind::Perturbed,
    ];
    let mut rng = SeededRandomSource::new(seed);
    let mut out = Vec::with_capacity(count);
    let mut i = 0usize;
    while out.len() < count {
        let kind = kinds[i % kinds.len()];
        i += 1;
        // kinds that cannot fit these parameters are skipped
        if kind == InstanceKind::CommutingTwins && (params.max_states < 4 || params.max_letters < 2) {
            continue;
        }
        if kind == InstanceKind::SplitDifference && params.max_states < 3 {
            continue;
        }
        if matches!(kind, InstanceKind::PermutedDifference | InstanceKind::Perturbed | InstanceKind::Unreachable)
            && params.max_states < 2
        {
            continue;
        }
        out.push(instance_of_kind(&mut rng, params, kind));
    }
    out
}
