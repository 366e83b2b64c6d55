//! The embedding of a pc monoid into a partitioned one, the matching
//! automaton construction, and the reduction to ABP identity tests.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::abp::{Abp, AffineForm, Edge, TensorVariable};
use crate::algebra::Scalar;
use crate::automaton::WeightedAutomaton;
use crate::error::Result;
use crate::trace::{ComponentKind, Cover, Letter, PcMonoid, Word};

/// The alphabet `{x_{t,i} : x_t ∈ X_i}` of the partitioned monoid
/// `M' = M'_1 ⊗ .. ⊗ M'_k`. Letters of different components commute; inside
/// a star component the leaves commute with each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedAlphabet {
    original: Arc<PcMonoid>,
    cover: Cover,
    monoid: Arc<PcMonoid>,
    components: Vec<Vec<Letter>>,
    origin: Vec<TensorVariable>,
    lookup: HashMap<TensorVariable, Letter>,
}

impl PartitionedAlphabet {
    /// Renames `x_t` in component `i` to `"<name>@<i>"`.
    pub fn new(original: Arc<PcMonoid>, cover: &Cover) -> Result<Self> {
        cover.ensure_valid(&original)?;
        let mut names = Vec::new();
        let mut components = Vec::with_capacity(cover.len());
        let mut origin = Vec::new();
        let mut lookup = HashMap::new();
        for i in 0..cover.len() {
            let mut comp = Vec::new();
            for x in cover.vertices(i) {
                let id = Letter(names.len());
                names.push(format!("{}@{i}", original.name(x)));
                let v = TensorVariable { letter: x, component: i };
                origin.push(v);
                lookup.insert(v, id);
                comp.push(id);
            }
            components.push(comp);
        }
        let mut pairs = Vec::new();
        for (a, ca) in components.iter().enumerate() {
            for cb in &components[a + 1..] {
                for &x in ca {
                    for &y in cb {
                        pairs.push((names[x.0].clone(), names[y.0].clone()));
                    }
                }
            }
        }
        for (i, comp) in components.iter().enumerate() {
            if cover.kind(i) == ComponentKind::Star {
                let center =
                    lookup[&TensorVariable { letter: cover.stars[i - cover.cliques.len()].center, component: i }];
                let leaves: Vec<Letter> = comp.iter().copied().filter(|&x| x != center).collect();
                for (a, &x) in leaves.iter().enumerate() {
                    for &y in &leaves[a + 1..] {
                        pairs.push((names[x.0].clone(), names[y.0].clone()));
                    }
                }
            }
        }
        let monoid = Arc::new(PcMonoid::new(&names, &pairs)?);
        Ok(PartitionedAlphabet { original, cover: cover.clone(), monoid, components, origin, lookup })
    }

    pub fn original(&self) -> &Arc<PcMonoid> {
        &self.original
    }

    pub fn cover(&self) -> &Cover {
        &self.cover
    }

    /// The partitioned monoid `M'`.
    pub fn monoid(&self) -> &Arc<PcMonoid> {
        &self.monoid
    }

    pub fn components(&self) -> &[Vec<Letter>] {
        &self.components
    }

    /// `(x_t, i)` for a renamed letter `x_{t,i}`.
    pub fn origin(&self, x: Letter) -> TensorVariable {
        self.origin[x.0]
    }

    pub fn renamed(&self, x: Letter, component: usize) -> Option<Letter> {
        self.lookup.get(&TensorVariable { letter: x, component }).copied()
    }

    /// `ψ(w)`: for each member `i`, the projection of `w` onto `X_i` with
    /// letters renamed into component `i`.
    pub fn psi_word(&self, w: &[Letter]) -> Result<Vec<Word>> {
        self.original.check_word(w)?;
        let mut out = vec![Vec::new(); self.components.len()];
        for &x in w {
            for (i, comp) in out.iter_mut().enumerate() {
                if let Some(y) = self.renamed(x, i) {
                    comp.push(y);
                }
            }
        }
        Ok(out)
    }

    /// A word of `M'` representing `ψ(w)`: the components concatenated.
    pub fn psi_linearization(&self, w: &[Letter]) -> Result<Word> {
        Ok(self.psi_word(w)?.concat())
    }
}

/// `ψ(w)` for a cover of `m`; see [`PartitionedAlphabet::psi_word`].
pub fn psi_word(m: &Arc<PcMonoid>, cover: &Cover, w: &[Letter]) -> Result<Vec<Word>> {
    PartitionedAlphabet::new(m.clone(), cover)?.psi_word(w)
}

/// An automaton over the partitioned monoid together with its alphabet.
#[derive(Clone, Debug)]
pub struct PartitionedAutomaton {
    pub alphabet: PartitionedAlphabet,
    pub automaton: WeightedAutomaton,
}

/// Replaces each transition `p --x_t/α--> q` by the path
/// `p --x_{t,i_1}/α--> r_1 --x_{t,i_2}/1--> .. --x_{t,i_m}/1--> q` where
/// `J_t = {i_1 < .. < i_m}` lists the cover members containing `x_t`. Fresh
/// states are appended in transition order.
pub fn partition_automaton(a: &WeightedAutomaton, cover: &Cover) -> Result<PartitionedAutomaton> {
    let alphabet = PartitionedAlphabet::new(a.monoid().clone(), cover)?;
    let field = a.field();
    let membership: Vec<Vec<usize>> = a.monoid().letters().map(|x| cover.membership(x)).collect();
    let extra: usize = a.transitions().keys().map(|&(_, x, _)| membership[x.0].len() - 1).sum();
    let mut b = WeightedAutomaton::new(alphabet.monoid().clone(), field, a.states() + extra);
    for q in 0..a.states() {
        b.set_initial(q, a.initial()[q].clone())?;
        b.set_final(q, a.final_weights()[q].clone())?;
    }
    let mut fresh = a.states();
    for (&(p, x, q), w) in a.transitions() {
        let j = &membership[x.0];
        let mut from = p;
        for (step, &i) in j.iter().enumerate() {
            let to = if step + 1 == j.len() {
                q
            } else {
                fresh += 1;
                fresh - 1
            };
            let weight = if step == 0 { w.clone() } else { field.one() };
            let y = alphabet.renamed(x, i).expect("membership lists containing members");
            b.set_transition(from, y, to, weight)?;
            from = to;
        }
    }
    Ok(PartitionedAutomaton { alphabet, automaton: b })
}

/// The ABP family `{u^T N^ℓ v : 0 ≤ ℓ ≤ s' - 1}` for `B = partition_automaton(a)`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub partitioned: PartitionedAutomaton,
    /// Entry `ℓ` computes `u^T N^ℓ v`.
    pub abps: Vec<Abp>,
}

impl Reduction {
    /// `s' - 1`.
    pub fn witness_length_bound(&self) -> usize {
        self.partitioned.automaton.states().saturating_sub(1)
    }

    pub fn cover_size(&self) -> usize {
        self.partitioned.alphabet.cover().len()
    }
}

/// Builds `N = Σ A_i x_i` over `B`'s alphabet, each letter `x_{t,i}` becoming
/// the tensor variable `(x_t, i)`, and returns the ABPs for `u^T N^ℓ v`.
pub fn zero_test_reduction(a: &WeightedAutomaton, cover: &Cover) -> Result<Reduction> {
    let partitioned = partition_automaton(a, cover)?;
    let b = &partitioned.automaton;
    let k = cover.len();
    let field = a.field();
    let s = b.states();
    let mut n: Vec<BTreeMap<usize, AffineForm>> = vec![BTreeMap::new(); s];
    for (&(p, y, q), w) in b.transitions() {
        n[p].entry(q).or_insert_with(|| AffineForm::zero(field)).add_term(partitioned.alphabet.origin(y), w);
    }
    let u = b.initial();
    let v = b.final_weights();
    // u^T N and N v as affine forms per state
    let mut u_n: Vec<AffineForm> = vec![AffineForm::zero(field); s];
    let mut n_v: Vec<AffineForm> = vec![AffineForm::zero(field); s];
    for (p, row) in n.iter().enumerate() {
        for (&q, label) in row {
            if !u[p].is_zero() {
                add_scaled(&mut u_n[q], label, &u[p]);
            }
            if !v[q].is_zero() {
                add_scaled(&mut n_v[p], label, &v[q]);
            }
        }
    }
    let mut abps = Vec::with_capacity(s);
    for l in 0..s {
        let abp = match l {
            0 => {
                let mut c = field.zero();
                for (x, y) in u.iter().zip(v) {
                    c.add_product(x, y);
                }
                Abp::constant(c, k)
            }
            1 => {
                let mut label = AffineForm::zero(field);
                for (p, form) in u_n.iter().enumerate() {
                    add_scaled(&mut label, form, &v[p]);
                }
                Abp::new(field, k, vec![1, 1], vec![vec![Edge { from: 0, to: 0, label }]])?
            }
            _ => {
                let mut widths = vec![1];
                widths.extend(std::iter::repeat_n(s, l - 1));
                widths.push(1);
                let mut layers = Vec::with_capacity(l);
                layers.push(
                    u_n.iter()
                        .enumerate()
                        .filter(|(_, f)| !f.is_zero())
                        .map(|(q, f)| Edge { from: 0, to: q, label: f.clone() })
                        .collect(),
                );
                let inner: Vec<Edge> = n
                    .iter()
                    .enumerate()
                    .flat_map(|(p, row)| row.iter().map(move |(&q, f)| Edge { from: p, to: q, label: f.clone() }))
                    .collect();
                for _ in 1..l - 1 {
                    layers.push(inner.clone());
                }
                layers.push(
                    n_v.iter()
                        .enumerate()
                        .filter(|(_, f)| !f.is_zero())
                        .map(|(p, f)| Edge { from: p, to: 0, label: f.clone() })
                        .collect(),
                );
                Abp::new(field, k, widths, layers)?
            }
        };
        abps.push(abp);
    }
    Ok(Reduction { partitioned, abps })
}

fn add_scaled(acc: &mut AffineForm, f: &AffineForm, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    acc.add_constant(&(f.constant_term() * c));
    for (&v, a) in f.terms() {
        acc.add_term(v, &(a * c));
    }
}

/// `s' - 1` where `s'` is the state count of the partitioned automaton. A
/// nonzero automaton has a witness of at most this length.
pub fn witness_length_bound(a: &WeightedAutomaton, cover: &Cover) -> Result<usize> {
    Ok(partition_automaton(a, cover)?.automaton.states().saturating_sub(1))
}

/// A shortest trace with nonzero coefficient, as its normal form, searched up
/// to [`witness_length_bound`]. `None` means the automaton is zero.
pub fn shortest_witness(a: &WeightedAutomaton, cover: &Cover, budget: u128) -> Result<Option<Word>> {
    let bound = witness_length_bound(a, cover)?;
    a.shortest_nonzero_trace(bound, budget)
}
