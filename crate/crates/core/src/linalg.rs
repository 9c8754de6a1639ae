//! Exact linear algebra over the Gaussian rationals `Q(i)`.
//!
//! Every rank, kernel and definiteness decision in this crate goes through
//! [`Matrix`], whose entries are [`Scalar`] values with arbitrary-precision
//! rational real and imaginary parts.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A Gaussian rational `a + bi` with `a, b ∈ Q`.
pub type Scalar = Complex<BigRational>;

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Scalar {
    Complex::new(BigRational::from_integer(v.into()), BigRational::zero())
}

pub fn gauss(re: i64, im: i64) -> Scalar {
    Complex::new(
        BigRational::from_integer(re.into()),
        BigRational::from_integer(im.into()),
    )
}

pub fn real(r: BigRational) -> Scalar {
    Complex::new(r, BigRational::zero())
}

pub fn is_real(z: &Scalar) -> bool {
    z.im.is_zero()
}

/// Wire form of a Gaussian rational: `[[re_num, re_den], [im_num, im_den]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarRepr(pub [[i64; 2]; 2]);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReprError {
    #[error("zero denominator in rational literal")]
    ZeroDenominator,
    #[error("rational component does not fit in a 64-bit integer pair")]
    Overflow,
}

impl ScalarRepr {
    pub fn from_scalar(z: &Scalar) -> Result<Self, ReprError> {
        let pair = |r: &BigRational| -> Result<[i64; 2], ReprError> {
            let n = i64::try_from(r.numer()).map_err(|_| ReprError::Overflow)?;
            let d = i64::try_from(r.denom()).map_err(|_| ReprError::Overflow)?;
            Ok([n, d])
        };
        Ok(ScalarRepr([pair(&z.re)?, pair(&z.im)?]))
    }

    pub fn to_scalar(&self) -> Result<Scalar, ReprError> {
        let [[rn, rd], [inum, id]] = self.0;
        if rd == 0 || id == 0 {
            return Err(ReprError::ZeroDenominator);
        }
        Ok(Complex::new(rat(rn, rd), rat(inum, id)))
    }
}

/// Dense row-major matrix over [`Scalar`].
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| {
                    let z = &self[(r, c)];
                    if z.im.is_zero() {
                        format!("{}", z.re)
                    } else {
                        format!("{}+{}i", z.re, z.im)
                    }
                })
                .collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Matrix unit `E_{row,col}`.
    pub fn unit(n: usize, row: usize, col: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(row, col)] = Scalar::one();
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| int(v)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors (all of length `len`).
    pub fn from_columns(len: usize, columns: &[Vec<Scalar>]) -> Self {
        Self::from_fn(len, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn diag(entries: &[Scalar]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.data.iter()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn conj(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Complex::conj).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        (0..self.rows).fold(Scalar::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Columns `start..end` as a new matrix.
    pub fn column_range(&self, start: usize, end: usize) -> Self {
        Self::from_fn(self.rows, end - start, |r, c| self[(r, start + c)].clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }

    pub fn hstack(&self, other: &Matrix) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Commutator `[self, other] = self·other − other·self`.
    pub fn bracket(&self, other: &Matrix) -> Self {
        &(self * other) - &(other * self)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].inv();
            for c in col..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    let v = &m[(r, c)] - &(&factor * &m[(row, c)]);
                    m[(r, c)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : self·x = 0}`, as columns.
    pub fn nullspace(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis[(f, k)] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                basis[(p, k)] = -r[(i, f)].clone();
            }
        }
        basis
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Scalar::zero();
            };
            if p != col {
                m.swap_rows(col, p);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = &det * &pivot;
            let inv = pivot.inv();
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] * &inv;
                for c in col..n {
                    let v = &m[(r, c)] - &(&factor * &m[(col, c)]);
                    m[(r, c)] = v;
                }
            }
        }
        det
    }

    /// Sylvester's criterion on a Hermitian matrix: `Some(true)` if positive
    /// definite, `Some(false)` if every leading minor is nonzero but the
    /// signs are wrong, `None` if some leading principal minor vanishes.
    pub fn hermitian_positive_definite(&self) -> Option<bool> {
        assert!(self.is_square());
        let mut ok = true;
        for k in 1..=self.rows {
            let idx: Vec<usize> = (0..k).collect();
            let minor = self.submatrix(&idx, &idx).det();
            debug_assert!(minor.im.is_zero(), "Hermitian minor must be real");
            if minor.re.is_zero() {
                return None;
            }
            if !minor.re.is_positive() {
                ok = false;
            }
        }
        Some(ok)
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn to_repr(&self) -> Result<Vec<Vec<ScalarRepr>>, ReprError> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| ScalarRepr::from_scalar(&self[(r, c)]))
                    .collect()
            })
            .collect()
    }

    /// Inverse of [`Matrix::to_repr`]; `cols` is needed for empty row lists.
    pub fn from_repr(rows: &[Vec<ScalarRepr>], cols: usize) -> Result<Self, ReprError> {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                m[(r, c)] = e.to_scalar()?;
            }
        }
        Ok(m)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(r, c)] = &out[(r, c)] + &(a * b);
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a.clone()).collect(),
        }
    }
}

/// Rank of a family of vectors of common length `len`.
pub fn span_rank(len: usize, vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(len, vectors).rank()
}

/// True iff the column spans of `a` and `b` coincide.
pub fn same_column_span(a: &Matrix, b: &Matrix) -> bool {
    let ra = a.rank();
    ra == b.rank() && a.hstack(b).rank() == ra
}

/// Rank over `R` of a family of complex vectors, each split into its real
/// and imaginary coordinates.
pub fn real_rank(len: usize, vectors: &[Vec<Scalar>]) -> usize {
    let realified: Vec<Vec<Scalar>> = vectors.iter().map(|v| realify(v)).collect();
    span_rank(2 * len, &realified)
}

/// `(a_1 + i b_1, …) ↦ (a_1, b_1, …)` as a real vector embedded in `Q(i)`.
pub fn realify(v: &[Scalar]) -> Vec<Scalar> {
    v.iter()
        .flat_map(|z| [real(z.re.clone()), real(z.im.clone())])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace_agree() {
        let m = Matrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.nullspace();
        assert_eq!(k.cols(), 1);
        assert!((&m * &k).is_zero());
    }

    #[test]
    fn determinant_of_gaussian_matrix() {
        // det [[1, i], [i, 1]] = 1 − i² = 2
        let m = Matrix::from_rows(vec![vec![int(1), gauss(0, 1)], vec![gauss(0, 1), int(1)]]);
        assert_eq!(m.det(), int(2));
    }

    #[test]
    fn sylvester_detects_sign_and_degeneracy() {
        let h = Matrix::diag(&[int(1), int(-1)]);
        assert_eq!(h.hermitian_positive_definite(), Some(false));
        assert_eq!(Matrix::identity(3).hermitian_positive_definite(), Some(true));
        let null = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(null.hermitian_positive_definite(), None);
    }

    #[test]
    fn complex_line_has_real_rank_two_but_complex_rank_one() {
        let u = vec![int(1), int(2)];
        let w: Vec<Scalar> = u.iter().map(|z| z * gauss(0, 1)).collect();
        assert_eq!(span_rank(2, &[u.clone(), w.clone()]), 1);
        assert_eq!(real_rank(2, &[u, w]), 2);
    }

    #[test]
    fn repr_round_trip() {
        let z = Complex::new(rat(-3, 4), rat(5, 7));
        let repr = ScalarRepr::from_scalar(&z).unwrap();
        assert_eq!(repr.0, [[-3, 4], [5, 7]]);
        assert_eq!(repr.to_scalar().unwrap(), z);
        assert_eq!(
            ScalarRepr([[1, 0], [0, 1]]).to_scalar(),
            Err(ReprError::ZeroDenominator)
        );
    }
}
