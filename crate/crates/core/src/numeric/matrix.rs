use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use super::{GaussianRational, NumericError};

/// Column vector over Q(i).
pub type Vector = Vec<GaussianRational>;

/// Dense matrix over Q(i), row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = GaussianRational::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &GaussianRational) -> Self {
        Self::identity(n).scale(c)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self, NumericError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(NumericError::Ragged);
        }
        let n = rows.len();
        Ok(Self { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Builds an `n x k` matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, columns: &[Vector]) -> Result<Self, NumericError> {
        if columns.iter().any(|c| c.len() != n) {
            return Err(NumericError::DimensionMismatch { expected: n, found: columns.iter().map(Vec::len).find(|&l| l != n).unwrap_or(n) });
        }
        Ok(Self::from_fn(n, columns.len(), |r, c| columns[c][r].clone()))
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| GaussianRational::int(x)).collect()).collect())
            .expect("rectangular integer rows")
    }

    pub fn diagonal(entries: &[GaussianRational]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |r, c| if r == c { entries[r].clone() } else { GaussianRational::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussianRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vector {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    /// The first `k` columns.
    pub fn leading_columns(&self, k: usize) -> Matrix {
        Self::from_fn(self.rows, k, |r, c| self.get(r, c).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn conj(&self) -> Matrix {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(GaussianRational::conj).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        self.transpose().conj()
    }

    pub fn scale(&self, k: &GaussianRational) -> Matrix {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn trace(&self) -> GaussianRational {
        (0..self.rows.min(self.cols)).map(|k| self.get(k, k)).sum()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Matrix) -> Result<Matrix, NumericError> {
        if self.rows != other.rows {
            return Err(NumericError::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols { self.get(r, c).clone() } else { other.get(r, c - self.cols).clone() }
        }))
    }

    /// Horizontal concatenation of several blocks with the same row count.
    pub fn hcat_all<'a>(rows: usize, blocks: impl IntoIterator<Item = &'a Matrix>) -> Result<Matrix, NumericError> {
        blocks.into_iter().try_fold(Matrix::zeros(rows, 0), |acc, b| acc.hcat(b))
    }

    pub fn vcat(&self, other: &Matrix) -> Result<Matrix, NumericError> {
        Ok(self.transpose().hcat(&other.transpose())?.transpose())
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Result<Vector, NumericError> {
        if v.len() != self.cols {
            return Err(NumericError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix, NumericError> {
        if self.cols != other.rows {
            return Err(NumericError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational) -> Result<Matrix, NumericError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(NumericError::ShapeMismatch);
        }
        Ok(Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect() })
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix, NumericError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix, NumericError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn pow(&self, e: u32) -> Result<Matrix, NumericError> {
        self.require_square()?;
        (0..e).try_fold(Matrix::identity(self.rows), |acc, _| acc.checked_mul(self))
    }

    fn require_square(&self) -> Result<(), NumericError> {
        if self.is_square() { Ok(()) } else { Err(NumericError::NotSquare { rows: self.rows, cols: self.cols }) }
    }

    /// Gauss-Jordan elimination. The pivot in each column is the first
    /// nonzero entry at or below the current row.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else { continue };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &(&f * m.get(row, c));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Determinant by fraction-producing elimination; same pivot rule as [`Matrix::echelon`].
    pub fn det(&self) -> Result<GaussianRational, NumericError> {
        self.require_square()?;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = GaussianRational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(GaussianRational::zero());
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            let inv = pivot.inv()?;
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col) * &inv;
                for c in col + 1..n {
                    let v = m.get(r, c) - &(&f * m.get(col, c));
                    m.set(r, c, v);
                }
                m.set(r, col, GaussianRational::zero());
            }
            det *= &pivot;
        }
        Ok(det)
    }

    /// Basis of the right null space, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vector> {
        let Echelon { reduced, pivots } = self.echelon();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![GaussianRational::zero(); self.cols];
                v[free] = GaussianRational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced.get(r, free);
                }
                v
            })
            .collect()
    }

    /// Basis of the row vectors `x` with `x A = 0`.
    pub fn left_kernel(&self) -> Vec<Vector> {
        self.transpose().kernel()
    }

    pub fn inverse(&self) -> Result<Matrix, NumericError> {
        self.require_square()?;
        let n = self.rows;
        let Echelon { reduced, pivots } = self.hcat(&Matrix::identity(n))?.echelon();
        if n > 0 && pivots.get(n - 1) != Some(&(n - 1)) {
            return Err(NumericError::Singular);
        }
        Ok(Self::from_fn(n, n, |r, c| reduced.get(r, n + c).clone()))
    }

    /// Characteristic polynomial `det(T I - A)`, coefficients from the leading
    /// (monic) term down to the constant term. Faddeev-LeVerrier recursion.
    pub fn char_poly(&self) -> Result<Vec<GaussianRational>, NumericError> {
        self.require_square()?;
        let n = self.rows;
        let mut coeffs = vec![GaussianRational::one()];
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            let prev = coeffs.last().expect("nonempty").clone();
            m = self.checked_mul(&m)?.checked_add(&Matrix::scalar(n, &prev))?;
            let tr = self.checked_mul(&m)?.trace();
            coeffs.push(-tr.scale(&super::gaussian::rat_frac(1, k as i64)));
        }
        Ok(coeffs)
    }

    /// Returns `c` when the matrix equals `c I`.
    pub fn as_scalar(&self) -> Option<GaussianRational> {
        if !self.is_square() {
            return None;
        }
        let c = if self.rows == 0 { GaussianRational::one() } else { self.get(0, 0).clone() };
        (0..self.rows)
            .all(|r| (0..self.cols).all(|k| if r == k { *self.get(r, k) == c } else { self.get(r, k).is_zero() }))
            .then_some(c)
    }

    /// Equality up to a nonzero scalar factor.
    pub fn projectively_equal(&self, other: &Matrix) -> bool {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return false;
        }
        let Some(k) = self.data.iter().position(|x| !x.is_zero()) else { return other.is_zero() };
        if other.data[k].is_zero() {
            return false;
        }
        let (a, b) = (&self.data[k], &other.data[k]);
        self.data.iter().zip(&other.data).all(|(x, y)| x * b == y * a)
    }

    /// Rows as vectors of strings, for serialization.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(ToString::to_string).collect()).collect()
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    /// Panics on a shape mismatch; see [`Matrix::checked_mul`].
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix shapes agree")
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix shapes agree")
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("matrix shapes agree")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `m` is scalar or has distinct eigenvalues. Only meaningful for 2x2 input.
pub fn is_semisimple_2x2(m: &Matrix) -> Result<bool, NumericError> {
    if (m.rows(), m.cols()) != (2, 2) {
        return Err(NumericError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if m.as_scalar().is_some() {
        return Ok(true);
    }
    let tr = m.trace();
    let disc = &(&tr * &tr) - &(&GaussianRational::int(4) * &m.det()?);
    Ok(!disc.is_zero())
}

/// Determinant of the square matrix formed by the given columns.
pub fn det_of_columns(columns: &[&[GaussianRational]]) -> Result<GaussianRational, NumericError> {
    let n = columns.len();
    if columns.iter().any(|c| c.len() != n) {
        return Err(NumericError::NotSquare { rows: columns.first().map_or(0, |c| c.len()), cols: n });
    }
    Matrix::from_fn(n, n, |r, c| columns[c][r].clone()).det()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn rank_det_kernel() {
        let a = Matrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        assert!(a.det().unwrap().is_zero());
        let ker = a.kernel();
        assert_eq!(ker.len(), 1);
        assert!(a.mul_vec(&ker[0]).unwrap().iter().all(Zero::is_zero));

        let b = Matrix::from_rows(vec![vec![g("1"), g("i")], vec![g("-i"), g("2")]]).unwrap();
        assert_eq!(b.det().unwrap(), g("1"));
        assert_eq!(&b * &b.inverse().unwrap(), Matrix::identity(2));
    }

    #[test]
    fn det_sign_tracks_row_swaps() {
        let p = Matrix::from_int_rows(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert_eq!(p.det().unwrap(), g("1"));
        let s = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(s.det().unwrap(), g("-1"));
    }

    #[test]
    fn singular_inverse_fails() {
        let a = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(a.inverse(), Err(NumericError::Singular));
    }

    #[test]
    fn char_poly_examples() {
        let j = Matrix::from_int_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(j.char_poly().unwrap(), vec![g("1"), g("-2"), g("1")]);
        let a = Matrix::from_int_rows(&[&[2, 0, 0], &[0, 3, 4], &[0, 0, 5]]);
        // (T-2)(T-3)(T-5) = T^3 - 10T^2 + 31T - 30
        assert_eq!(a.char_poly().unwrap(), vec![g("1"), g("-10"), g("31"), g("-30")]);
    }

    #[test]
    fn semisimplicity_2x2() {
        assert!(!is_semisimple_2x2(&Matrix::from_int_rows(&[&[1, 1], &[0, 1]])).unwrap());
        assert!(is_semisimple_2x2(&Matrix::from_int_rows(&[&[1, 0], &[0, 2]])).unwrap());
        assert!(is_semisimple_2x2(&Matrix::identity(2)).unwrap());
        assert!(!is_semisimple_2x2(&Matrix::from_int_rows(&[&[0, 1], &[0, 0]])).unwrap());
    }

    #[test]
    fn projective_equality() {
        let a = Matrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        assert!(a.projectively_equal(&a.scale(&g("2-i"))));
        assert!(!a.projectively_equal(&Matrix::identity(2)));
        assert_eq!(Matrix::identity(3).scale(&g("i")).as_scalar(), Some(g("i")));
    }
}
