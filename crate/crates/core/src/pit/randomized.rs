use std::collections::BTreeMap;
use std::sync::Arc;

use crate::abp::{Abp, ComponentEvaluation, Evaluation};
use crate::algebra::{sample_scalar, Field, Matrix, SeededRandomSource};
use crate::error::{Error, Result};
use crate::trace::{ComponentKind, Cover, Letter};

/// Entries of the random left vector used to sketch `f(v)`.
const SKETCH_SET: u64 = 1 << 20;

/// `max(2kd, 16)`.
pub fn sample_set_size(k: usize, d: usize) -> u64 {
    ((2 * k * d) as u64).max(16)
}

/// Amitsur–Levitzki dimension `⌈d/2⌉ + 1`.
pub fn clique_dimension(d: usize) -> usize {
    d.div_ceil(2) + 1
}

fn random_matrix(rng: &mut SeededRandomSource, field: Field, dim: usize, set: u64) -> Result<Matrix> {
    let data = (0..dim * dim).map(|_| sample_scalar(rng, field, set)).collect::<Result<Vec<_>>>()?;
    Matrix::new(field, dim, dim, data)
}

/// Each letter of a clique gets an independent random matrix of dimension
/// `⌈d/2⌉ + 1`, entries drawn from a set of size `max(2kd, 16)`.
pub fn clique_evaluation(
    letters: &[Letter],
    d: usize,
    rng: &mut SeededRandomSource,
    k: usize,
    field: Field,
) -> Result<ComponentEvaluation> {
    if d == 0 {
        return Err(Error::InvalidAbp("degree bound must be at least 1".into()));
    }
    let dim = clique_dimension(d);
    let set = sample_set_size(k, d);
    let mut map = BTreeMap::new();
    for &x in letters {
        map.insert(x, random_matrix(rng, field, dim, set)?);
    }
    ComponentEvaluation::new(field, dim, map)
}

/// Star evaluation of dimension `d + 1`: each leaf maps to a diagonal matrix
/// with a fresh random scalar per position, the center to `y_c` times the
/// superdiagonal shift. Entry `(0, ℓ)` of `f` then reads off the part of
/// `f` with `ℓ` occurrences of the center, one block of leaves per position.
pub fn star_evaluation(
    center: Letter,
    leaves: &[Letter],
    d: usize,
    rng: &mut SeededRandomSource,
    k: usize,
    field: Field,
) -> Result<ComponentEvaluation> {
    if d == 0 {
        return Err(Error::InvalidAbp("degree bound must be at least 1".into()));
    }
    let dim = d + 1;
    let set = sample_set_size(k, d);
    let mut map = BTreeMap::new();
    for &x in leaves {
        let mut m = Matrix::zeros(field, dim, dim);
        for i in 0..dim {
            m.set(i, i, sample_scalar(rng, field, set)?);
        }
        map.insert(x, m);
    }
    let y = sample_scalar(rng, field, set)?;
    let mut n = Matrix::zeros(field, dim, dim);
    for i in 0..d {
        n.set(i, i + 1, y.clone());
    }
    map.insert(center, n);
    ComponentEvaluation::new(field, dim, map)
}

/// `(v_1, .., v_k)` from per-component evaluations given in component order.
pub fn tensor_combine(evals: Vec<ComponentEvaluation>) -> Result<Evaluation> {
    Evaluation::new(evals.into_iter().map(Arc::new).collect())
}

/// One random evaluation for an ABP over `cover`'s components with degree bound `d`.
pub fn random_evaluation(cover: &Cover, d: usize, rng: &mut SeededRandomSource, field: Field) -> Result<Evaluation> {
    let k = cover.len();
    let mut evals = Vec::with_capacity(k);
    for j in 0..k {
        let e = match cover.kind(j) {
            ComponentKind::Clique => clique_evaluation(&cover.cliques[j], d, rng, k, field)?,
            ComponentKind::Star => {
                let s = &cover.stars[j - cover.cliques.len()];
                star_evaluation(s.center, &s.leaves, d, rng, k, field)?
            }
        };
        evals.push(e);
    }
    tensor_combine(evals)
}

/// Randomized identity test for ABPs whose components are the members of
/// `cover`. Each repetition draws a fresh evaluation per ABP (degree bound =
/// its depth) and checks `a^T f(v)` for a random vector `a`. Returns `true`
/// ("zero") iff every check vanished. A zero input always yields `true`.
pub fn randomized_zero_test(abps: &[Abp], cover: &Cover, seed: u64, repetitions: usize) -> Result<bool> {
    for (idx, abp) in abps.iter().enumerate() {
        if abp.components() != cover.len() {
            return Err(Error::ComponentMismatch(format!(
                "ABP has {} components, cover has {}",
                abp.components(),
                cover.len()
            )));
        }
        if abp.is_trivially_zero() {
            continue;
        }
        let field = abp.field();
        let sketch_set = field.size().map_or(SKETCH_SET, |q| q.min(SKETCH_SET));
        for rep in 0..repetitions {
            let mut rng = SeededRandomSource::with_stream(seed, ((idx as u64) << 32) | rep as u64);
            let eval = random_evaluation(cover, abp.depth(), &mut rng, field)?;
            let dim = eval.total_dim();
            let row = (0..dim).map(|_| sample_scalar(&mut rng, field, sketch_set)).collect::<Result<Vec<_>>>()?;
            let start = Matrix::new(field, 1, dim, row)?;
            if !abp.evaluate_from(&eval, start)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
