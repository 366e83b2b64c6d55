use std::fmt;

use crate::algebra::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(bad) = data.iter().find(|x| x.field() != field) {
            return Err(Error::FieldMismatch { left: field, right: bad.field() });
        }
        Ok(Matrix { rows, cols, field, data })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from integer rows; panics on ragged input.
    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&v| field.from_i64(v)));
        }
        Matrix { rows: r, cols: c, field, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    /// Stores `value`; panics if it belongs to another field.
    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "field mismatch in Matrix::set");
        self.data[r * self.cols + c] = value;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: self.field, right: other.field })
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    o.add_product(a, b);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, field: self.field, data })
    }

    pub fn scale(&self, c: &Scalar) -> Result<Matrix> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch { left: self.field, right: c.field() });
        }
        let data = self.data.iter().map(|a| a * c).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, field: self.field, data })
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, field: self.field, data }
    }

    pub fn pow(&self, e: usize) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Kronecker product: the block matrix `(a_ij * other)`.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zeros(self.field, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        let b = other.get(p, q);
                        if !b.is_zero() {
                            out.data[(i * other.rows + p) * c + j * other.cols + q] = a * b;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Computes `self * (I_left ⊗ factor ⊗ I_right)` without materialising the
    /// Kronecker product. `self.cols` must equal `left * factor.rows * right`.
    pub fn mul_kron_factor(&self, left: usize, factor: &Matrix, right: usize) -> Result<Matrix> {
        let mut out = Matrix::zeros(self.field, self.rows, self.cols);
        self.mul_kron_factor_into(left, factor, right, &self.field.one(), &mut out)?;
        Ok(out)
    }

    /// Accumulates `coeff * self * (I_left ⊗ factor ⊗ I_right)` into `out`.
    pub fn mul_kron_factor_into(
        &self,
        left: usize,
        factor: &Matrix,
        right: usize,
        coeff: &Scalar,
        out: &mut Matrix,
    ) -> Result<()> {
        self.check_field(factor)?;
        if !factor.is_square() {
            return Err(Error::DimensionMismatch("Kronecker factor must be square".into()));
        }
        let t = factor.rows;
        if left * t * right != self.cols || out.rows != self.rows || out.cols != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} against I_{left} ⊗ M_{t} ⊗ I_{right}",
                self.rows, self.cols
            )));
        }
        // Nonzero entries of the factor, pre-scaled by the coefficient.
        let nz: Vec<(usize, usize, Scalar)> = (0..t)
            .flat_map(|a| (0..t).map(move |b| (a, b)))
            .filter(|&(a, b)| !factor.get(a, b).is_zero())
            .map(|(a, b)| (a, b, factor.get(a, b) * coeff))
            .collect();
        if nz.is_empty() || coeff.is_zero() {
            return Ok(());
        }
        let cols = self.cols;
        for r in 0..self.rows {
            let src = &self.data[r * cols..(r + 1) * cols];
            let dst = &mut out.data[r * cols..(r + 1) * cols];
            for l in 0..left {
                let base = l * t * right;
                for &(a, b, ref w) in &nz {
                    let s0 = base + a * right;
                    let d0 = base + b * right;
                    for j in 0..right {
                        let x = &src[s0 + j];
                        if !x.is_zero() {
                            dst[d0 + j].add_product(x, w);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Accumulates `coeff * other` into `self`.
    pub fn add_scaled_assign(&mut self, other: &Matrix, coeff: &Scalar) -> Result<()> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("add_scaled_assign".into()));
        }
        if coeff.is_zero() {
            return Ok(());
        }
        for (d, s) in self.data.iter_mut().zip(&other.data) {
            if !s.is_zero() {
                d.add_product(s, coeff);
            }
        }
        Ok(())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{sample_scalar, SeededRandomSource};

    fn random_matrix(rng: &mut SeededRandomSource, field: Field, r: usize, c: usize) -> Matrix {
        let data = (0..r * c)
            .map(|_| {
                let v = sample_scalar(rng, field, 11).unwrap();
                &v - &field.from_i64(5)
            })
            .collect();
        Matrix::new(field, r, c, data).unwrap()
    }

    fn naive_mul(a: &Matrix, b: &Matrix) -> Matrix {
        let f = a.field();
        let mut out = Matrix::zeros(f, a.rows(), b.cols());
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut acc = f.zero();
                for k in 0..a.cols() {
                    acc = &acc + &(a.get(i, k) * b.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    #[test]
    fn identity_and_annihilation() {
        let f = Field::Rational;
        let m = Matrix::from_i64_rows(f, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(Matrix::identity(f, 3).mul(&m).unwrap(), m);
        let a = Matrix::from_i64_rows(f, &[&[1, 2], &[3, 4]]);
        assert!(a.mul(&Matrix::zeros(f, 2, 2)).unwrap().is_zero());
    }

    #[test]
    fn mul_matches_naive_triple_loop() {
        let mut rng = SeededRandomSource::new(7);
        for field in [Field::Rational, Field::Prime(101)] {
            for _ in 0..20 {
                let a = random_matrix(&mut rng, field, 3, 3);
                let b = random_matrix(&mut rng, field, 3, 3);
                assert_eq!(a.mul(&b).unwrap(), naive_mul(&a, &b));
            }
        }
    }

    #[test]
    fn mul_errors() {
        let f = Field::Rational;
        let a = Matrix::zeros(f, 2, 3);
        assert!(matches!(a.mul(&a), Err(Error::DimensionMismatch(_))));
        let b = Matrix::zeros(Field::Prime(7), 3, 2);
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch { .. })));
        assert!(matches!(a.kron(&b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn kron_shapes() {
        let f = Field::Rational;
        let i2 = Matrix::identity(f, 2);
        assert_eq!(i2.kron(&i2).unwrap(), Matrix::identity(f, 4));
        let k = Matrix::zeros(f, 2, 3).kron(&Matrix::zeros(f, 4, 5)).unwrap();
        assert_eq!((k.rows(), k.cols()), (8, 15));
    }

    #[test]
    fn kron_mixed_product() {
        let mut rng = SeededRandomSource::new(11);
        let f = Field::Rational;
        for _ in 0..50 {
            let [a, b, c, d] = std::array::from_fn(|_| random_matrix(&mut rng, f, 2, 2));
            let lhs = a.kron(&b).unwrap().mul(&c.kron(&d).unwrap()).unwrap();
            let rhs = a.mul(&c).unwrap().kron(&b.mul(&d).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn ring_axioms_on_random_matrices() {
        let mut rng = SeededRandomSource::new(3);
        let f = Field::Prime(1_000_003);
        for _ in 0..30 {
            let [a, b, c] = std::array::from_fn(|_| random_matrix(&mut rng, f, 3, 3));
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
            let left = a.mul(&b.add(&c).unwrap()).unwrap();
            let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn structured_kron_multiply_matches_explicit() {
        let mut rng = SeededRandomSource::new(5);
        let f = Field::Rational;
        for (left, t, right) in [(1, 2, 1), (2, 2, 3), (3, 2, 1), (1, 3, 2), (2, 3, 2)] {
            let dim = left * t * right;
            let x = random_matrix(&mut rng, f, 2, dim);
            let m = random_matrix(&mut rng, f, t, t);
            let explicit = Matrix::identity(f, left).kron(&m).unwrap().kron(&Matrix::identity(f, right)).unwrap();
            assert_eq!(x.mul_kron_factor(left, &m, right).unwrap(), x.mul(&explicit).unwrap());
        }
    }
}
