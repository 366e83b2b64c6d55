use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::abp::{Abp, ComponentEvaluation, Evaluation};
use crate::algebra::{Field, Matrix};
use crate::error::{Error, Result};
use crate::trace::Letter;

/// Default cap on the number of evaluation points a deterministic test visits.
pub const DEFAULT_POINT_BUDGET: u128 = 5_000_000;

/// Source of single-component hitting sets: for `(n, d, s)`, evaluations of
/// the letters `0..n` by `(d+1) × (d+1)` matrices that hit every nonzero
/// noncommutative polynomial in `n` variables computed by an ABP with `d`
/// layers and `s` nodes.
pub trait BaseHittingSetGenerator: Send + Sync {
    fn name(&self) -> &'static str;

    /// `|H_{1,n,d,s}|`, saturating.
    fn size(&self, n: usize, d: usize, s: usize) -> u128;

    fn generate(&self, field: Field, n: usize, d: usize, s: usize) -> Result<Vec<Arc<ComponentEvaluation>>>;

    /// Whether row 0 of `f(v)` vanishing on every point already implies
    /// `f = 0`, so evaluations may skip the other rows.
    fn row_zero_suffices(&self) -> bool {
        false
    }
}

/// Every assignment of `(d+1) × (d+1)` matrices with entries in `{0, .., d}`
/// to the `n` letters: `(d+1)^((d+1)^2 n)` points. Generic matrices of that
/// size leave a nonzero degree-`d` polynomial with a nonzero entry of degree
/// at most `d`, which a grid of side `d + 1` cannot miss.
#[derive(Clone, Copy, Debug)]
pub struct BruteForceGrid {
    pub budget: u128,
}

impl Default for BruteForceGrid {
    fn default() -> Self {
        BruteForceGrid { budget: 1_000_000 }
    }
}

impl BaseHittingSetGenerator for BruteForceGrid {
    fn name(&self) -> &'static str {
        "brute-force"
    }

    fn size(&self, n: usize, d: usize, _s: usize) -> u128 {
        let vars = ((d + 1) * (d + 1) * n) as u32;
        ((d + 1) as u128).checked_pow(vars).unwrap_or(u128::MAX)
    }

    fn generate(&self, field: Field, n: usize, d: usize, s: usize) -> Result<Vec<Arc<ComponentEvaluation>>> {
        let total = self.size(n, d, s);
        if total > self.budget {
            return Err(Error::budget("brute-force grid", total, self.budget));
        }
        check_values(field, d as u64 + 1)?;
        let dim = d + 1;
        let per_letter = dim * dim;
        let mut out = Vec::with_capacity(total as usize);
        let mut digits = vec![0u64; per_letter * n];
        for _ in 0..total {
            let mut map = BTreeMap::new();
            for x in 0..n {
                let data = digits[x * per_letter..(x + 1) * per_letter].iter().map(|&v| field.from_u64(v)).collect();
                map.insert(Letter(x), Matrix::new(field, dim, dim, data)?);
            }
            out.push(Arc::new(ComponentEvaluation::new(field, dim, map)?));
            for digit in digits.iter_mut() {
                *digit += 1;
                if *digit <= d as u64 {
                    break;
                }
                *digit = 0;
            }
        }
        Ok(out)
    }
}

/// Superdiagonal power substitution: for `α ∈ {0, .., n-1}^d`, letter `i`
/// maps to `Σ_j α_j^i E_{j,j+1}` (with `0^0 = 1`), giving `n^d` points of
/// dimension `d + 1`. Entry `(0, e)` of `f` is `Σ_w c_w Π_j α_j^{w_j}` over
/// words `w` of length `e`; distinct words give distinct monomials of
/// individual degree below `n`, so a nonzero `f` survives at some grid point.
#[derive(Clone, Copy, Debug)]
pub struct PowerGrid {
    pub budget: u128,
}

impl Default for PowerGrid {
    fn default() -> Self {
        PowerGrid { budget: 1_000_000 }
    }
}

impl BaseHittingSetGenerator for PowerGrid {
    fn name(&self) -> &'static str {
        "power-grid"
    }

    /// Row 0 of a product of these matrices already holds every word of
    /// every component, so it alone carries the whole polynomial.
    fn row_zero_suffices(&self) -> bool {
        true
    }

    fn size(&self, n: usize, d: usize, _s: usize) -> u128 {
        (n.max(1) as u128).checked_pow(d as u32).unwrap_or(u128::MAX)
    }

    fn generate(&self, field: Field, n: usize, d: usize, s: usize) -> Result<Vec<Arc<ComponentEvaluation>>> {
        let total = self.size(n, d, s);
        if total > self.budget {
            return Err(Error::budget("power grid", total, self.budget));
        }
        let base = n.max(1) as u64;
        check_values(field, base)?;
        let dim = d + 1;
        let mut out = Vec::with_capacity(total as usize);
        let mut alpha = vec![0u64; d];
        for _ in 0..total {
            let mut map = BTreeMap::new();
            for x in 0..n {
                let mut m = Matrix::zeros(field, dim, dim);
                for (j, &a) in alpha.iter().enumerate() {
                    m.set(j, j + 1, field.from_u64(a).pow(x as u64));
                }
                map.insert(Letter(x), m);
            }
            out.push(Arc::new(ComponentEvaluation::new(field, dim, map)?));
            for a in alpha.iter_mut() {
                *a += 1;
                if *a < base {
                    break;
                }
                *a = 0;
            }
        }
        Ok(out)
    }
}

fn check_values(field: Field, count: u64) -> Result<()> {
    match field.size() {
        Some(q) if q < count => Err(Error::FieldTooSmall { requested: count, available: q }),
        _ => Ok(()),
    }
}

/// The product set `{(v_1, .., v_k) : v_i ∈ H^(i)}`, enumerated lazily. When
/// every factor is the same `H_1` this is `H_{k,n,d,s}`.
#[derive(Clone, Debug)]
pub struct HittingSet {
    factors: Vec<Arc<Vec<Arc<ComponentEvaluation>>>>,
    n: usize,
    d: usize,
    s: usize,
    s_k: usize,
    row_zero_suffices: bool,
}

impl HittingSet {
    pub fn k(&self) -> usize {
        self.factors.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// `s_k = s(d+1)^{k-1}`, the size parameter passed to the base generator.
    pub fn s_k(&self) -> usize {
        self.s_k
    }

    /// The factor set of component `j`.
    pub fn factor(&self, j: usize) -> &[Arc<ComponentEvaluation>] {
        &self.factors[j]
    }

    /// Product of the factor sizes, saturating.
    pub fn len(&self) -> u128 {
        self.factors.iter().try_fold(1u128, |acc, f| acc.checked_mul(f.len() as u128)).unwrap_or(u128::MAX)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `i`-th point, mixed radix with component 0 most significant.
    pub fn get(&self, mut i: u128) -> Evaluation {
        let mut comps = Vec::with_capacity(self.k());
        for f in self.factors.iter().rev() {
            let b = f.len() as u128;
            comps.push(f[(i % b) as usize].clone());
            i /= b;
        }
        comps.reverse();
        Evaluation::new(comps).expect("one field throughout")
    }

    pub fn iter(&self) -> impl Iterator<Item = Evaluation> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }
}

/// `s_k = s(d+1)^{k-1}`, saturating.
pub fn bootstrap_size_parameter(k: usize, d: usize, s: usize) -> usize {
    let mut s_k = s;
    for _ in 1..k {
        s_k = s_k.saturating_mul(d + 1);
    }
    s_k
}

/// `H_{k,n,d,s}`: the `k`-fold product of `H_1 = base(n, d, s_k)`, every
/// component using the letters `0..n`.
pub fn bootstrap_hitting_set(
    base: &dyn BaseHittingSetGenerator,
    field: Field,
    k: usize,
    n: usize,
    d: usize,
    s: usize,
) -> Result<HittingSet> {
    let s_k = bootstrap_size_parameter(k, d, s);
    let h1 = Arc::new(base.generate(field, n, d, s_k)?);
    if h1.is_empty() {
        return Err(Error::InvalidAbp(format!("{} produced an empty set", base.name())));
    }
    Ok(HittingSet { factors: vec![h1; k], n, d, s, s_k, row_zero_suffices: base.row_zero_suffices() })
}

/// Like [`bootstrap_hitting_set`], but component `j` draws from
/// `base(|letters[j]|, d, s_k)` with its matrices assigned to `letters[j]`.
pub fn bootstrap_for_letters(
    base: &dyn BaseHittingSetGenerator,
    field: Field,
    letters: &[Vec<Letter>],
    d: usize,
    s: usize,
) -> Result<HittingSet> {
    let k = letters.len();
    let s_k = bootstrap_size_parameter(k, d, s);
    let mut factors = Vec::with_capacity(k);
    for names in letters {
        let set = base.generate(field, names.len(), d, s_k)?;
        if set.is_empty() {
            return Err(Error::InvalidAbp(format!("{} produced an empty set", base.name())));
        }
        let relabelled = set
            .iter()
            .map(|e| {
                let map = e.matrices().iter().map(|(x, m)| (names[x.0], m.clone())).collect();
                ComponentEvaluation::new(field, e.dim(), map).map(Arc::new)
            })
            .collect::<Result<Vec<_>>>()?;
        factors.push(Arc::new(relabelled));
    }
    let n = letters.iter().map(Vec::len).max().unwrap_or(0);
    Ok(HittingSet { factors, n, d, s, s_k, row_zero_suffices: base.row_zero_suffices() })
}

/// Number of points [`bootstrap_for_letters`] would produce, saturating.
pub fn bootstrap_point_count(base: &dyn BaseHittingSetGenerator, letter_counts: &[usize], d: usize, s: usize) -> u128 {
    let s_k = bootstrap_size_parameter(letter_counts.len(), d, s);
    letter_counts.iter().try_fold(1u128, |acc, &n| acc.checked_mul(base.size(n, d, s_k))).unwrap_or(u128::MAX)
}

/// Whether `f` vanishes at every point of `h`.
pub fn vanishes_on(f: &Abp, h: &HittingSet) -> Result<bool> {
    let hit = (0..h.len())
        .into_par_iter()
        .map(|i| {
            let e = h.get(i);
            let value = if h.row_zero_suffices {
                let dim = e.total_dim();
                let mut start = Matrix::zeros(f.field(), 1, dim);
                start.set(0, 0, f.field().one());
                f.evaluate_from(&e, start)?
            } else {
                f.evaluate(&e)?
            };
            Ok(!value.is_zero())
        })
        .find_any(|r: &Result<bool>| !matches!(r, Ok(false)));
    match hit {
        Some(Ok(_)) => Ok(false),
        Some(Err(e)) => Err(e),
        None => Ok(true),
    }
}

/// Evaluates every ABP on the product hitting set built for its own depth
/// `d` and size `s`, each component ranging over that component's letters
/// in the ABP. Returns `true` ("zero") iff every value vanishes; exact when
/// the base generator is a hitting set. Errors if a set exceeds `budget`
/// points.
pub fn deterministic_zero_test(abps: &[Abp], base: &dyn BaseHittingSetGenerator, budget: u128) -> Result<bool> {
    for abp in abps {
        if abp.is_trivially_zero() {
            continue;
        }
        let vars = abp.variables();
        let letters: Vec<Vec<Letter>> =
            (0..abp.components()).map(|j| vars.get(&j).cloned().unwrap_or_default()).collect();
        let counts: Vec<usize> = letters.iter().map(Vec::len).collect();
        let points = bootstrap_point_count(base, &counts, abp.depth(), abp.size());
        if points > budget {
            return Err(Error::budget("hitting-set points", points, budget));
        }
        let h = bootstrap_for_letters(base, abp.field(), &letters, abp.depth(), abp.size())?;
        if !vanishes_on(abp, &h)? {
            return Ok(false);
        }
    }
    Ok(true)
}
