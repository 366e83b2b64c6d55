use std::collections::BTreeMap;

use crate::abp::{Abp, AffineForm, Edge, Evaluation, TensorVariable};
use crate::algebra::Matrix;
use crate::error::{Error, Result};
use crate::trace::Letter;

/// The coefficient `f_m` of the word `m` over the last component, where
/// `f = Σ_m f_m ⊗ m`. Built as the product of `f` with the automaton that
/// loops on every other component and advances `q_t -> q_{t+1}` on the
/// `(t+1)`-th letter of `m`. Node `(v, q_t)` is kept only when `q_t` is
/// reachable at that layer and `q_ℓ` is still reachable from it, so the
/// result has at most `size(f)·(ℓ+1)` nodes and the same depth.
pub fn coefficient_abp(f: &Abp, m: &[Letter]) -> Result<Abp> {
    let k = f.components();
    if k == 0 {
        return Err(Error::ComponentMismatch("coefficient of an ABP without components".into()));
    }
    let last = k - 1;
    let d = f.depth();
    let l = m.len();
    if l > d {
        return Ok(Abp::zero(f.field(), last));
    }
    let field = f.field();
    // allowed automaton states at layer i
    let lo = |i: usize| (l + i).saturating_sub(d);
    let hi = |i: usize| i.min(l);
    let mut index: Vec<BTreeMap<(usize, usize), usize>> = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let mut map = BTreeMap::new();
        for v in 0..f.widths()[i] {
            for t in lo(i)..=hi(i) {
                let id = map.len();
                map.insert((v, t), id);
            }
        }
        index.push(map);
    }
    let widths: Vec<usize> = index.iter().map(BTreeMap::len).collect();
    let mut layers = Vec::with_capacity(d);
    for (i, layer) in f.layers().iter().enumerate() {
        let mut out = Vec::new();
        for e in layer {
            let mut stay = AffineForm::constant(e.label.constant_term().clone());
            for (&v, a) in e.label.terms() {
                if v.component < last {
                    stay.add_term(v, a);
                }
            }
            for t in lo(i)..=hi(i) {
                let from = index[i][&(e.from, t)];
                if !stay.is_zero() {
                    if let Some(&to) = index[i + 1].get(&(e.to, t)) {
                        out.push(Edge { from, to, label: stay.clone() });
                    }
                }
                if t < l {
                    let c = e.label.coefficient(TensorVariable { letter: m[t], component: last });
                    if !c.is_zero() {
                        if let Some(&to) = index[i + 1].get(&(e.to, t + 1)) {
                            out.push(Edge { from, to, label: AffineForm::constant(c) });
                        }
                    }
                }
            }
        }
        layers.push(out);
    }
    Abp::new(field, last, widths, layers)
}

/// Substitutes `partial` (matrices for components `0..k-1`, total dimension
/// `T`) into `f`, giving a `T × T` matrix of single-component ABPs in the
/// variables of the last component, renumbered as component 0. Every inner
/// node is copied `T` times; entry `(p, q)` starts at copy `p` of the source
/// and ends at copy `q` of the sink, so it has at most `size(f)·T` nodes and
/// the depth of `f`.
pub fn partial_evaluate_expand(f: &Abp, partial: &Evaluation) -> Result<Vec<Vec<Abp>>> {
    let k = f.components();
    if k == 0 || partial.len() + 1 != k {
        return Err(Error::ComponentMismatch(format!("{} partial components for an ABP with {k}", partial.len())));
    }
    if let Some(pf) = partial.field() {
        if pf != f.field() {
            return Err(Error::FieldMismatch { left: f.field(), right: pf });
        }
    }
    let field = f.field();
    let last = k - 1;
    let t = partial.total_dim();
    let identity = Matrix::identity(field, t);
    // per edge: constant T×T block and the remaining last-component terms
    let mut blocks: Vec<Vec<(Matrix, AffineForm)>> = Vec::with_capacity(f.depth());
    for layer in f.layers() {
        let mut row = Vec::with_capacity(layer.len());
        for e in layer {
            let mut block = identity.scale(e.label.constant_term())?;
            let mut rest = AffineForm::zero(field);
            for (&v, a) in e.label.terms() {
                if v.component < last {
                    let comp = &partial.components()[v.component];
                    let m = comp
                        .get(v.letter)
                        .ok_or_else(|| Error::ComponentMismatch(format!("{v} has no assigned matrix")))?;
                    let (l, r) = partial.kron_context(v.component);
                    identity.mul_kron_factor_into(l, m, r, a, &mut block)?;
                } else {
                    rest.add_term(TensorVariable { letter: v.letter, component: 0 }, a);
                }
            }
            row.push((block, rest));
        }
        blocks.push(row);
    }
    let d = f.depth();
    let mut widths = vec![1];
    widths.extend(f.widths()[1..d].iter().map(|w| w * t));
    widths.push(1);
    let mut out = Vec::with_capacity(t);
    for p in 0..t {
        let mut row = Vec::with_capacity(t);
        for q in 0..t {
            let copies = |i: usize| -> Vec<usize> {
                if i == 0 {
                    vec![p]
                } else if i == d {
                    vec![q]
                } else {
                    (0..t).collect()
                }
            };
            let node = |i: usize, v: usize, j: usize| if i == 0 || i == d { 0 } else { v * t + j };
            let mut layers = Vec::with_capacity(d);
            for (i, layer) in f.layers().iter().enumerate() {
                let mut edges = Vec::new();
                for (e, (block, rest)) in layer.iter().zip(&blocks[i]) {
                    for j1 in copies(i) {
                        for j2 in copies(i + 1) {
                            let mut label = AffineForm::constant(block.get(j1, j2).clone());
                            if j1 == j2 {
                                for (&v, a) in rest.terms() {
                                    label.add_term(v, a);
                                }
                            }
                            if !label.is_zero() {
                                edges.push(Edge { from: node(i, e.from, j1), to: node(i + 1, e.to, j2), label });
                            }
                        }
                    }
                }
                layers.push(edges);
            }
            row.push(Abp::new(field, 1, widths.clone(), layers)?);
        }
        out.push(row);
    }
    Ok(out)
}
