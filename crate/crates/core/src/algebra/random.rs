use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Field, Scalar};
use crate::error::{Error, Result};

/// Reproducible random stream; identical seeds give identical draws.
#[derive(Clone, Debug)]
pub struct SeededRandomSource {
    rng: ChaCha8Rng,
}

impl SeededRandomSource {
    pub fn new(seed: u64) -> Self {
        SeededRandomSource { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// An independent stream keyed by `(seed, stream)`.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        SeededRandomSource { rng }
    }

    /// Uniform draw from `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.rng.gen_range(0..bound)
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn range_i64(&mut self, lo: i64, hi_inclusive: i64) -> i64 {
        self.rng.gen_range(lo..=hi_inclusive)
    }
}

/// Uniform draw from the canonical subset `{0, 1, ..., set_size - 1}` of the field.
pub fn sample_scalar(rng: &mut SeededRandomSource, field: Field, set_size: u64) -> Result<Scalar> {
    if set_size == 0 {
        return Err(Error::InvalidField("sample set must be nonempty".into()));
    }
    if let Some(q) = field.size() {
        if set_size > q {
            return Err(Error::FieldTooSmall { requested: set_size, available: q });
        }
    }
    Ok(field.from_u64(rng.below(set_size)))
}
