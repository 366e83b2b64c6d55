use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Field, Matrix};
use crate::error::{Error, Result};
use crate::trace::Letter;

/// Matrices for the letters of one tensor component, all `dim × dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentEvaluation {
    field: Field,
    dim: usize,
    matrices: BTreeMap<Letter, Matrix>,
}

impl ComponentEvaluation {
    pub fn new(field: Field, dim: usize, matrices: BTreeMap<Letter, Matrix>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch("component dimension must be positive".into()));
        }
        for (x, m) in &matrices {
            if m.field() != field {
                return Err(Error::FieldMismatch { left: field, right: m.field() });
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "letter {} maps to a {}x{} matrix, expected {dim}x{dim}",
                    x.0,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(ComponentEvaluation { field, dim, matrices })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &BTreeMap<Letter, Matrix> {
        &self.matrices
    }

    pub fn get(&self, x: Letter) -> Option<&Matrix> {
        self.matrices.get(&x)
    }
}

/// A `k`-tuple `(v_1, .., v_k)` of component evaluations. A variable of
/// component `j` evaluates to `1 ⊗ .. ⊗ v_j(x) ⊗ .. ⊗ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    components: Vec<Arc<ComponentEvaluation>>,
}

impl Evaluation {
    pub fn new(components: Vec<Arc<ComponentEvaluation>>) -> Result<Self> {
        if let Some(first) = components.first() {
            if let Some(bad) = components.iter().find(|c| c.field != first.field) {
                return Err(Error::FieldMismatch { left: first.field, right: bad.field });
            }
        }
        Ok(Evaluation { components })
    }

    pub fn single(component: ComponentEvaluation) -> Self {
        Evaluation { components: vec![Arc::new(component)] }
    }

    pub fn components(&self) -> &[Arc<ComponentEvaluation>] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.dim).collect()
    }

    /// `Π t_j`; the empty product is 1.
    pub fn total_dim(&self) -> usize {
        self.components.iter().map(|c| c.dim).product()
    }

    pub fn field(&self) -> Option<Field> {
        self.components.first().map(|c| c.field)
    }

    /// `(Π_{i<j} t_i, Π_{i>j} t_i)`: the identity sizes around component `j`.
    pub fn kron_context(&self, j: usize) -> (usize, usize) {
        let dims = self.dims();
        (dims[..j].iter().product(), dims[j + 1..].iter().product())
    }

    /// The explicit matrix `1 ⊗ .. ⊗ v_j(x) ⊗ .. ⊗ 1`.
    pub fn embedded(&self, j: usize, x: Letter) -> Result<Matrix> {
        let comp = self.components.get(j).ok_or_else(|| Error::ComponentMismatch(format!("no component {j}")))?;
        let m = comp
            .get(x)
            .ok_or_else(|| Error::ComponentMismatch(format!("letter {} unassigned in component {j}", x.0)))?;
        let (l, r) = self.kron_context(j);
        Matrix::identity(comp.field, l).kron(m)?.kron(&Matrix::identity(comp.field, r))
    }
}
