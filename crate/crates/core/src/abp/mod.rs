//! Layered algebraic branching programs over tensor products of free algebras.

mod construct;
mod evaluation;

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use crate::algebra::{Field, Matrix, Scalar};
use crate::error::{Error, Result};
use crate::trace::Letter;

pub use construct::{coefficient_abp, partial_evaluate_expand};
pub use evaluation::{ComponentEvaluation, Evaluation};

/// The variable `x_{letter, component}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorVariable {
    pub letter: Letter,
    pub component: usize,
}

impl TensorVariable {
    pub fn new(letter: usize, component: usize) -> Self {
        TensorVariable { letter: Letter(letter), component }
    }
}

impl fmt::Display for TensorVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}@{}", self.letter.0, self.component)
    }
}

/// `c + Σ a_v v`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineForm {
    constant: Scalar,
    terms: BTreeMap<TensorVariable, Scalar>,
}

impl AffineForm {
    pub fn constant(c: Scalar) -> Self {
        AffineForm { constant: c, terms: BTreeMap::new() }
    }

    pub fn zero(field: Field) -> Self {
        Self::constant(field.zero())
    }

    pub fn variable(field: Field, v: TensorVariable) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(v, field.one());
        AffineForm { constant: field.zero(), terms }
    }

    pub fn field(&self) -> Field {
        self.constant.field()
    }

    pub fn constant_term(&self) -> &Scalar {
        &self.constant
    }

    pub fn terms(&self) -> &BTreeMap<TensorVariable, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.terms.is_empty()
    }

    pub fn coefficient(&self, v: TensorVariable) -> Scalar {
        self.terms.get(&v).cloned().unwrap_or_else(|| self.field().zero())
    }

    /// Adds `c · v`.
    pub fn add_term(&mut self, v: TensorVariable, c: &Scalar) {
        let field = self.field();
        let entry = self.terms.entry(v).or_insert_with(|| field.zero());
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&v);
        }
    }

    pub fn add_constant(&mut self, c: &Scalar) {
        self.constant = &self.constant + c;
    }

    pub fn scale(&self, c: &Scalar) -> AffineForm {
        if c.is_zero() {
            return AffineForm::zero(self.field());
        }
        AffineForm { constant: &self.constant * c, terms: self.terms.iter().map(|(&v, a)| (v, a * c)).collect() }
    }

    pub fn max_component(&self) -> Option<usize> {
        self.terms.keys().map(|v| v.component).max()
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.constant.is_zero() || self.terms.is_empty() {
            parts.push(self.constant.to_string());
        }
        for (v, a) in &self.terms {
            if a.is_one() {
                parts.push(v.to_string());
            } else {
                parts.push(format!("{a}*{v}"));
            }
        }
        f.write_str(&parts.join(" + "))
    }
}

/// An edge from node `from` of layer `i` to node `to` of layer `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: AffineForm,
}

/// A layered ABP. Layer 0 holds the source, the last layer the sink; edges
/// only join consecutive layers. The polynomial is the sum over source-sink
/// paths of the ordered product of edge labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abp {
    field: Field,
    components: usize,
    widths: Vec<usize>,
    layers: Vec<Vec<Edge>>,
}

impl Abp {
    /// `layers[i]` lists the edges from layer `i` to layer `i + 1`.
    pub fn new(field: Field, components: usize, widths: Vec<usize>, layers: Vec<Vec<Edge>>) -> Result<Abp> {
        if widths.len() < 2 || layers.len() + 1 != widths.len() {
            return Err(Error::InvalidAbp(format!("{} widths for {} edge layers", widths.len(), layers.len())));
        }
        if widths[0] != 1 || *widths.last().unwrap() != 1 {
            return Err(Error::InvalidAbp("source and sink layers must have width 1".into()));
        }
        if widths.contains(&0) {
            return Err(Error::InvalidAbp("empty layer".into()));
        }
        for (i, layer) in layers.iter().enumerate() {
            for e in layer {
                if e.from >= widths[i] || e.to >= widths[i + 1] {
                    return Err(Error::InvalidAbp(format!("edge {}->{} out of range in layer {i}", e.from, e.to)));
                }
                if e.label.field() != field {
                    return Err(Error::FieldMismatch { left: field, right: e.label.field() });
                }
                if e.label.max_component().is_some_and(|c| c >= components) {
                    return Err(Error::ComponentMismatch(format!(
                        "label {} uses a component beyond {components}",
                        e.label
                    )));
                }
            }
        }
        Ok(Abp { field, components, widths, layers })
    }

    /// The canonical zero ABP: two nodes joined by an edge labelled 0.
    pub fn zero(field: Field, components: usize) -> Abp {
        Abp::constant(field.zero(), components)
    }

    pub fn constant(c: Scalar, components: usize) -> Abp {
        let field = c.field();
        Abp {
            field,
            components,
            widths: vec![1, 1],
            layers: vec![vec![Edge { from: 0, to: 0, label: AffineForm::constant(c) }]],
        }
    }

    /// One path per monomial, padded with constant-1 edges to a common depth.
    /// `monomials` lists `(coefficient, variables in product order)`.
    pub fn from_monomials(field: Field, components: usize, monomials: &[(Scalar, Vec<TensorVariable>)]) -> Result<Abp> {
        let depth = monomials.iter().map(|(_, m)| m.len()).max().unwrap_or(0).max(1);
        if monomials.is_empty() {
            return Ok(Abp::zero(field, components));
        }
        let mut widths = vec![1];
        widths.extend(std::iter::repeat_n(monomials.len(), depth - 1));
        widths.push(1);
        let mut layers = vec![Vec::new(); depth];
        for (p, (c, vars)) in monomials.iter().enumerate() {
            for (i, layer) in layers.iter_mut().enumerate() {
                let mut label = match vars.get(i) {
                    Some(&v) => AffineForm::variable(field, v),
                    None => AffineForm::constant(field.one()),
                };
                if i == 0 {
                    label = label.scale(c);
                }
                let from = if i == 0 { 0 } else { p };
                let to = if i + 1 == depth { 0 } else { p };
                layer.push(Edge { from, to, label });
            }
        }
        Abp::new(field, components, widths, layers)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Number of tensor components `k`.
    pub fn components(&self) -> usize {
        self.components
    }

    pub fn widths(&self) -> &[usize] {
        &self.widths
    }

    pub fn layers(&self) -> &[Vec<Edge>] {
        &self.layers
    }

    /// Number of edge layers `d`, which bounds the degree.
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// Total node count.
    pub fn size(&self) -> usize {
        self.widths.iter().sum()
    }

    pub fn max_width(&self) -> usize {
        self.widths.iter().copied().max().unwrap_or(1)
    }

    pub fn edge_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    /// Whether every label is zero, so the polynomial is zero for structural reasons.
    pub fn is_trivially_zero(&self) -> bool {
        self.layers.iter().any(|l| l.iter().all(|e| e.label.is_zero()))
    }

    /// Variables occurring in some label, per component.
    pub fn variables(&self) -> BTreeMap<usize, Vec<Letter>> {
        let mut out: BTreeMap<usize, Vec<Letter>> = BTreeMap::new();
        for e in self.layers.iter().flatten() {
            for v in e.label.terms.keys() {
                let list = out.entry(v.component).or_default();
                if !list.contains(&v.letter) {
                    list.push(v.letter);
                }
            }
        }
        for list in out.values_mut() {
            list.sort();
        }
        out
    }

    fn check_evaluation(&self, eval: &Evaluation) -> Result<()> {
        if eval.len() != self.components {
            return Err(Error::ComponentMismatch(format!(
                "evaluation has {} components, ABP has {}",
                eval.len(),
                self.components
            )));
        }
        if let Some(f) = eval.field() {
            if f != self.field {
                return Err(Error::FieldMismatch { left: self.field, right: f });
            }
        }
        for e in self.layers.iter().flatten() {
            for v in e.label.terms.keys() {
                if eval.components()[v.component].get(v.letter).is_none() {
                    return Err(Error::ComponentMismatch(format!("{v} has no assigned matrix")));
                }
            }
        }
        Ok(())
    }

    /// The matrix value of the ABP under `eval`, of dimension `Π t_j`.
    pub fn evaluate(&self, eval: &Evaluation) -> Result<Matrix> {
        let d = eval.total_dim();
        self.evaluate_from(eval, Matrix::identity(self.field, d))
    }

    /// `start · f(eval)` for a `r × D` matrix `start`; with `r = 1` this is a
    /// sketch of the full value at a fraction of the cost.
    pub fn evaluate_from(&self, eval: &Evaluation, start: Matrix) -> Result<Matrix> {
        self.check_evaluation(eval)?;
        let dim = eval.total_dim();
        if start.cols() != dim || start.field() != self.field {
            return Err(Error::DimensionMismatch(format!(
                "start block has {} columns, evaluation dimension is {dim}",
                start.cols()
            )));
        }
        let rows = start.rows();
        let contexts: Vec<(usize, usize)> = (0..self.components).map(|j| eval.kron_context(j)).collect();
        let mut current: Vec<Option<Matrix>> = vec![Some(start)];
        for (i, layer) in self.layers.iter().enumerate() {
            let mut next: Vec<Option<Matrix>> = vec![None; self.widths[i + 1]];
            for e in layer {
                if e.label.is_zero() {
                    continue;
                }
                let Some(src) = &current[e.from] else { continue };
                let dst = next[e.to].get_or_insert_with(|| Matrix::zeros(self.field, rows, dim));
                if !e.label.constant.is_zero() {
                    dst.add_scaled_assign(src, &e.label.constant)?;
                }
                for (v, a) in &e.label.terms {
                    let (l, r) = contexts[v.component];
                    let m = eval.components()[v.component].get(v.letter).expect("checked above");
                    src.mul_kron_factor_into(l, m, r, a, dst)?;
                }
            }
            current = next;
        }
        Ok(current.pop().flatten().unwrap_or_else(|| Matrix::zeros(self.field, rows, dim)))
    }

    fn check_compatible(&self, other: &Abp) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field, right: other.field });
        }
        if self.components != other.components {
            return Err(Error::ComponentMismatch(format!("{} components vs {}", self.components, other.components)));
        }
        Ok(())
    }

    /// `c · f`: scales the labels leaving the source.
    pub fn scale(&self, c: &Scalar) -> Result<Abp> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch { left: self.field, right: c.field() });
        }
        let mut out = self.clone();
        for e in &mut out.layers[0] {
            e.label = e.label.scale(c);
        }
        Ok(out)
    }

    /// `f + g` by parallel composition sharing source and sink. The shallower
    /// program is extended past its sink by constant-1 edges.
    pub fn add(&self, other: &Abp) -> Result<Abp> {
        self.check_compatible(other)?;
        let (deep, shallow) = if self.depth() >= other.depth() { (self, other) } else { (other, self) };
        let shallow = shallow.padded(deep.depth());
        let d = deep.depth();
        let mut widths = vec![1];
        for i in 1..d {
            widths.push(deep.widths[i] + shallow.widths[i]);
        }
        widths.push(1);
        let mut layers = Vec::with_capacity(d);
        for i in 0..d {
            let offset_from = if i == 0 { 0 } else { deep.widths[i] };
            let offset_to = if i + 1 == d { 0 } else { deep.widths[i + 1] };
            let mut layer = deep.layers[i].clone();
            layer.extend(shallow.layers[i].iter().map(|e| Edge {
                from: e.from + offset_from,
                to: e.to + offset_to,
                label: e.label.clone(),
            }));
            layers.push(layer);
        }
        Abp::new(self.field, self.components, widths, layers)
    }

    pub fn sub(&self, other: &Abp) -> Result<Abp> {
        self.add(&other.scale(&-&other.field.one())?)
    }

    /// Same polynomial over `depth` layers, the extra layers being
    /// single-node constant-1 edges after the old sink.
    pub fn padded(&self, depth: usize) -> Abp {
        let mut out = self.clone();
        while out.depth() < depth {
            out.widths.push(1);
            out.layers.push(vec![Edge { from: 0, to: 0, label: AffineForm::constant(self.field.one()) }]);
        }
        out
    }

    /// The sub-program between node `from` of layer `a` and node `to` of
    /// layer `b > a`.
    pub fn segment(&self, a: usize, from: usize, b: usize, to: usize) -> Result<Abp> {
        if a >= b || b > self.depth() || from >= self.widths[a] || to >= self.widths[b] {
            return Err(Error::InvalidAbp(format!("bad segment ({a},{from})..({b},{to})")));
        }
        let mut widths = self.widths[a..=b].to_vec();
        widths[0] = 1;
        *widths.last_mut().unwrap() = 1;
        let len = b - a;
        let layers = self.layers[a..b]
            .iter()
            .enumerate()
            .map(|(i, layer)| {
                layer
                    .iter()
                    .filter(|e| (i > 0 || e.from == from) && (i + 1 < len || e.to == to))
                    .map(|e| Edge {
                        from: if i == 0 { 0 } else { e.from },
                        to: if i + 1 == len { 0 } else { e.to },
                        label: e.label.clone(),
                    })
                    .collect()
            })
            .collect();
        Abp::new(self.field, self.components, widths, layers)
    }

    /// Re-expresses every label in `field`.
    pub fn to_field(&self, field: Field) -> Result<Abp> {
        let conv = |l: &AffineForm| -> Result<AffineForm> {
            let mut out = AffineForm::constant(field.convert(&l.constant)?);
            for (&v, a) in &l.terms {
                out.add_term(v, &field.convert(a)?);
            }
            Ok(out)
        };
        let layers = self
            .layers
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .map(|e| Ok(Edge { from: e.from, to: e.to, label: conv(&e.label)? }))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Abp { field, components: self.components, widths: self.widths.clone(), layers })
    }

    /// Line-oriented dump: a header, then one line per edge as
    /// `L<layer> <from> -> <to> : <label>`.
    pub fn to_debug_string(&self) -> String {
        let mut s = String::new();
        let widths: Vec<String> = self.widths.iter().map(usize::to_string).collect();
        let _ = writeln!(
            s,
            "abp field={} components={} layers={} widths={}",
            self.field,
            self.components,
            self.depth(),
            widths.join(",")
        );
        for (i, layer) in self.layers.iter().enumerate() {
            for e in layer {
                let _ = writeln!(s, "L{i} {} -> {} : {}", e.from, e.to, e.label);
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(l: usize, c: usize) -> TensorVariable {
        TensorVariable::new(l, c)
    }

    fn one_component(field: Field, dim: usize, ms: Vec<(usize, Matrix)>) -> Evaluation {
        let map = ms.into_iter().map(|(l, m)| (Letter(l), m)).collect();
        Evaluation::single(ComponentEvaluation::new(field, dim, map).unwrap())
    }

    #[test]
    fn constant_one_evaluates_to_identity() {
        let f = Field::Rational;
        let abp = Abp::constant(f.one(), 1);
        let m = Matrix::from_i64_rows(f, &[&[1, 2], &[3, 4]]);
        let eval = one_component(f, 2, vec![(0, m)]);
        assert_eq!(abp.evaluate(&eval).unwrap(), Matrix::identity(f, 2));
    }

    #[test]
    fn single_variable_evaluates_to_its_matrix() {
        let f = Field::Rational;
        let abp = Abp::from_monomials(f, 1, &[(f.one(), vec![var(0, 0)])]).unwrap();
        let m = Matrix::from_i64_rows(f, &[&[1, 2], &[3, 4]]);
        let eval = one_component(f, 2, vec![(0, m.clone())]);
        assert_eq!(abp.evaluate(&eval).unwrap(), m);
    }

    #[test]
    fn zero_abp_shape() {
        let z = Abp::zero(Field::Rational, 3);
        assert_eq!(z.size(), 2);
        assert_eq!(z.depth(), 1);
        assert_eq!(z.edge_count(), 1);
        assert!(z.is_trivially_zero());
    }

    #[test]
    fn invalid_shapes_rejected() {
        let f = Field::Rational;
        assert!(Abp::new(f, 1, vec![1], vec![]).is_err());
        assert!(Abp::new(f, 1, vec![2, 1], vec![vec![]]).is_err());
        let e = Edge { from: 0, to: 3, label: AffineForm::zero(f) };
        assert!(Abp::new(f, 1, vec![1, 1], vec![vec![e]]).is_err());
        let e = Edge { from: 0, to: 0, label: AffineForm::variable(f, var(0, 2)) };
        assert!(matches!(Abp::new(f, 2, vec![1, 1], vec![vec![e]]), Err(Error::ComponentMismatch(_))));
    }

    #[test]
    fn missing_assignment_is_an_error() {
        let f = Field::Rational;
        let abp = Abp::from_monomials(f, 1, &[(f.one(), vec![var(1, 0)])]).unwrap();
        let eval = one_component(f, 1, vec![(0, Matrix::identity(f, 1))]);
        assert!(matches!(abp.evaluate(&eval), Err(Error::ComponentMismatch(_))));
    }

    #[test]
    fn add_sizes_and_padding() {
        let f = Field::Rational;
        let a = Abp::from_monomials(f, 1, &[(f.one(), vec![var(0, 0), var(1, 0)])]).unwrap();
        let b = Abp::from_monomials(f, 1, &[(f.from_i64(2), vec![var(1, 0), var(0, 0)])]).unwrap();
        let s = a.add(&b).unwrap();
        assert!(s.size() <= a.size() + b.size() + 2);
        let c = Abp::from_monomials(f, 1, &[(f.one(), vec![var(0, 0)])]).unwrap();
        let t = a.add(&c).unwrap();
        assert_eq!(t.depth(), 2);
        let x = Matrix::from_i64_rows(f, &[&[1, 1], &[0, 2]]);
        let y = Matrix::from_i64_rows(f, &[&[0, 1], &[1, 3]]);
        let eval = one_component(f, 2, vec![(0, x.clone()), (1, y.clone())]);
        let expected = x.mul(&y).unwrap().add(&x).unwrap();
        assert_eq!(t.evaluate(&eval).unwrap(), expected);
    }

    #[test]
    fn debug_dump() {
        let f = Field::Rational;
        let abp = Abp::from_monomials(f, 2, &[(f.from_i64(3), vec![var(0, 0), var(1, 1)])]).unwrap();
        assert_eq!(
            abp.to_debug_string(),
            "abp field=rat components=2 layers=2 widths=1,1,1\nL0 0 -> 0 : 3*x0@0\nL1 0 -> 0 : x1@1\n"
        );
    }
}
