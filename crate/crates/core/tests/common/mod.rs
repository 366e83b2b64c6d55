//! Slow reference computations shared by the integration tests. Each one
//! transcribes a definition directly and shares no algorithm with the
//! library beyond its data types, scalar arithmetic and `Matrix::{mul, kron}`.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use pcwa::abp::{Abp, AffineForm, Edge, Evaluation, TensorVariable};
use pcwa::algebra::{Field, Matrix, Scalar, SeededRandomSource};
use pcwa::automaton::WeightedAutomaton;
use pcwa::trace::{Letter, PcMonoid};

pub type Word = Vec<Letter>;

/// All words reachable from `w` by swapping adjacent commuting letters.
pub fn swap_class(m: &PcMonoid, w: &[Letter]) -> BTreeSet<Word> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.to_vec());
    queue.push_back(w.to_vec());
    while let Some(u) = queue.pop_front() {
        for i in 0..u.len().saturating_sub(1) {
            if u[i] != u[i + 1] && m.commute(u[i], u[i + 1]) {
                let mut v = u.clone();
                v.swap(i, i + 1);
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    seen
}

pub fn bfs_equivalent(m: &PcMonoid, a: &[Letter], b: &[Letter]) -> bool {
    a.len() == b.len() && swap_class(m, a).contains(b)
}

/// Least element of the swap class.
pub fn class_key(m: &PcMonoid, w: &[Letter]) -> Word {
    swap_class(m, w).into_iter().next().unwrap()
}

/// Every word of length `len` over letters `0..n`, lexicographic.
pub fn words_of_length(n: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * n);
        for w in &out {
            for x in 0..n {
                let mut v = w.clone();
                v.push(Letter(x));
                next.push(v);
            }
        }
        out = next;
    }
    out
}

pub fn words_up_to(n: usize, max_len: usize) -> Vec<Word> {
    (0..=max_len).flat_map(|l| words_of_length(n, l)).collect()
}

/// `[w]S` as the sum over all state sequences of the path weight.
pub fn path_coefficient(a: &WeightedAutomaton, w: &[Letter]) -> Scalar {
    fn go(a: &WeightedAutomaton, w: &[Letter], q: usize, acc: Scalar, out: &mut Scalar) {
        if acc.is_zero() {
            return;
        }
        match w.split_first() {
            None => *out = &*out + &(&acc * &a.final_weights()[q]),
            Some((&x, rest)) => {
                for p in 0..a.states() {
                    let t = a.transition(q, x, p);
                    if !t.is_zero() {
                        go(a, rest, p, &acc * &t, out);
                    }
                }
            }
        }
    }
    let mut out = a.field().zero();
    for q in 0..a.states() {
        go(a, w, q, a.initial()[q].clone(), &mut out);
    }
    out
}

/// Word coefficients for every word up to `max_len`, by pushing row vectors
/// forward one letter at a time.
pub fn word_series(a: &WeightedAutomaton, max_len: usize) -> Vec<(Word, Scalar)> {
    let field = a.field();
    let n = a.monoid().len();
    let s = a.states();
    let mut frontier: Vec<(Word, Vec<Scalar>)> = vec![(Vec::new(), a.initial().to_vec())];
    let mut out = Vec::new();
    for len in 0..=max_len {
        for (w, row) in &frontier {
            let mut c = field.zero();
            for q in 0..s {
                c = &c + &(&row[q] * &a.final_weights()[q]);
            }
            out.push((w.clone(), c));
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for (w, row) in &frontier {
            for x in 0..n {
                let mut r = vec![field.zero(); s];
                for (&(p, y, q), t) in a.transitions() {
                    if y == Letter(x) {
                        r[q] = &r[q] + &(&row[p] * t);
                    }
                }
                let mut v = w.clone();
                v.push(Letter(x));
                next.push((v, r));
            }
        }
        frontier = next;
    }
    out
}

/// Nonzero trace coefficients up to `max_len`, keyed by [`class_key`].
pub fn trace_series(a: &WeightedAutomaton, max_len: usize) -> BTreeMap<Word, Scalar> {
    let m = a.monoid();
    let mut sums: BTreeMap<Word, Scalar> = BTreeMap::new();
    let mut keys: BTreeMap<Word, Word> = BTreeMap::new();
    for (w, c) in word_series(a, max_len) {
        if c.is_zero() {
            continue;
        }
        let key = match keys.get(&w) {
            Some(k) => k.clone(),
            None => {
                let class = swap_class(m, &w);
                let k = class.iter().next().unwrap().clone();
                for v in class {
                    keys.insert(v, k.clone());
                }
                k
            }
        };
        let e = sums.entry(key).or_insert_with(|| a.field().zero());
        *e = &*e + &c;
    }
    sums.retain(|_, c| !c.is_zero());
    sums
}

/// Sum of [`path_coefficient`] over the swap class of `w`.
pub fn trace_coefficient_by_paths(a: &WeightedAutomaton, w: &[Letter]) -> Scalar {
    swap_class(a.monoid(), w).iter().fold(a.field().zero(), |acc, v| &acc + &path_coefficient(a, v))
}

/// A polynomial in tensor variables: one word per component, since
/// variables of different components commute.
pub type TensorPoly = BTreeMap<Vec<Word>, Scalar>;

/// Expands an ABP into its polynomial by summing over paths.
pub fn expand_abp(f: &Abp) -> TensorPoly {
    let field = f.field();
    let k = f.components();
    let mut nodes: Vec<TensorPoly> = vec![TensorPoly::new(); f.widths()[0]];
    nodes[0].insert(vec![Vec::new(); k], field.one());
    for (i, layer) in f.layers().iter().enumerate() {
        let mut next = vec![TensorPoly::new(); f.widths()[i + 1]];
        for e in layer {
            for (mono, c) in &nodes[e.from] {
                let target = &mut next[e.to];
                let mut push = |m: Vec<Word>, v: Scalar| {
                    let slot = target.entry(m).or_insert_with(|| field.zero());
                    *slot = &*slot + &v;
                };
                if !e.label.constant_term().is_zero() {
                    push(mono.clone(), c * e.label.constant_term());
                }
                for (var, a) in e.label.terms() {
                    let mut m = mono.clone();
                    m[var.component].push(var.letter);
                    push(m, c * a);
                }
            }
        }
        for p in &mut next {
            p.retain(|_, c| !c.is_zero());
        }
        nodes = next;
    }
    nodes.into_iter().next().unwrap_or_default()
}

/// `Σ c ⊗_j V_j(w_j)` with explicit Kronecker products.
pub fn evaluate_poly(p: &TensorPoly, eval: &Evaluation, field: Field) -> Matrix {
    let dim = eval.total_dim();
    let mut acc = Matrix::zeros(field, dim, dim);
    for (mono, c) in p {
        let mut m = Matrix::identity(field, 1);
        for (j, w) in mono.iter().enumerate() {
            let comp = &eval.components()[j];
            let mut block = Matrix::identity(field, comp.dim());
            for &x in w {
                block = block.mul(comp.get(x).expect("letter has a matrix")).unwrap();
            }
            m = m.kron(&block).unwrap();
        }
        acc = acc.add(&m.scale(c).unwrap()).unwrap();
    }
    acc
}

/// The coefficient of the last-component word `m`: monomials whose last
/// word is `m`, with that word removed.
pub fn coefficient_of(p: &TensorPoly, m: &[Letter]) -> TensorPoly {
    p.iter()
        .filter(|(mono, _)| mono.last().map(Vec::as_slice) == Some(m))
        .map(|(mono, c)| (mono[..mono.len() - 1].to_vec(), c.clone()))
        .collect()
}

/// A random layered ABP with the given widths of inner layers. Labels are
/// affine forms over letters `0..letters[j]` of each component `j`, with
/// small integer coefficients and some labels zero.
pub fn random_abp(rng: &mut SeededRandomSource, field: Field, letters: &[usize], inner: &[usize]) -> Abp {
    let k = letters.len();
    let mut widths = vec![1];
    widths.extend_from_slice(inner);
    widths.push(1);
    let mut layers = Vec::new();
    for i in 0..widths.len() - 1 {
        let mut layer = Vec::new();
        for from in 0..widths[i] {
            for to in 0..widths[i + 1] {
                if rng.chance(0.3) {
                    continue;
                }
                let mut label = AffineForm::zero(field);
                if rng.chance(0.4) {
                    label.add_constant(&field.from_i64(rng.range_i64(-2, 2)));
                }
                for (j, &n) in letters.iter().enumerate() {
                    for x in 0..n {
                        if rng.chance(0.5) {
                            label.add_term(TensorVariable::new(x, j), &field.from_i64(rng.range_i64(-2, 2)));
                        }
                    }
                }
                layer.push(Edge { from, to, label });
            }
        }
        layers.push(layer);
    }
    Abp::new(field, k, widths, layers).unwrap()
}

/// Polynomials in commuting variables with integer coefficients, keyed by
/// exponent vectors.
pub type CommPoly = BTreeMap<Vec<u32>, i64>;

fn comm_mul(a: &CommPoly, b: &CommPoly) -> CommPoly {
    let mut out = CommPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn comm_add(a: &mut CommPoly, b: &CommPoly, scale: i64) {
    for (e, c) in b {
        *a.entry(e.clone()).or_insert(0) += scale * c;
    }
    a.retain(|_, c| *c != 0);
}

/// Square matrices over [`CommPoly`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    pub dim: usize,
    pub entries: Vec<CommPoly>,
}

impl SymMatrix {
    pub fn identity(dim: usize, vars: usize) -> Self {
        let mut entries = vec![CommPoly::new(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i].insert(vec![0; vars], 1);
        }
        SymMatrix { dim, entries }
    }

    pub fn zero(dim: usize) -> Self {
        SymMatrix { dim, entries: vec![CommPoly::new(); dim * dim] }
    }

    pub fn get(&self, r: usize, c: usize) -> &CommPoly {
        &self.entries[r * self.dim + c]
    }

    pub fn mul(&self, o: &SymMatrix) -> SymMatrix {
        let n = self.dim;
        let mut out = SymMatrix::zero(n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = CommPoly::new();
                for t in 0..n {
                    comm_add(&mut acc, &comm_mul(self.get(r, t), o.get(t, c)), 1);
                }
                out.entries[r * n + c] = acc;
            }
        }
        out
    }

    pub fn add_scaled(&mut self, o: &SymMatrix, c: i64) {
        for (a, b) in self.entries.iter_mut().zip(&o.entries) {
            comm_add(a, b, c);
        }
    }
}

/// Generic star substitution of dimension `d + 1`: variable 0 is the center
/// scalar `y`, variable `1 + i(d+1) + b` is leaf `i`'s diagonal entry `b`.
pub struct SymbolicStar {
    pub d: usize,
    pub leaves: usize,
    pub matrices: Vec<SymMatrix>,
}

impl SymbolicStar {
    /// Letter `0` is the center, letters `1..=leaves` the leaves.
    pub fn new(leaves: usize, d: usize) -> Self {
        let dim = d + 1;
        let vars = 1 + leaves * dim;
        let mut center = SymMatrix::zero(dim);
        for i in 0..d {
            let mut e = vec![0; vars];
            e[0] = 1;
            center.entries[i * dim + i + 1].insert(e, 1);
        }
        let mut matrices = vec![center];
        for l in 0..leaves {
            let mut m = SymMatrix::zero(dim);
            for b in 0..dim {
                let mut e = vec![0; vars];
                e[1 + l * dim + b] = 1;
                m.entries[b * dim + b].insert(e, 1);
            }
            matrices.push(m);
        }
        SymbolicStar { d, leaves, matrices }
    }

    pub fn vars(&self) -> usize {
        1 + self.leaves * (self.d + 1)
    }

    pub fn word(&self, w: &[Letter]) -> SymMatrix {
        w.iter().fold(SymMatrix::identity(self.d + 1, self.vars()), |acc, x| acc.mul(&self.matrices[x.0]))
    }
}
