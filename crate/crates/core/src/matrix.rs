//! Dense square matrices with exact entries.

use std::fmt;
use std::ops::{Index, IndexMut};

use thiserror::Error;

use crate::field::{Field, Scalar};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix rows must all have length {expected}")]
    NotSquare { expected: usize },
    #[error("matrices must be nonempty")]
    Empty,
    #[error("entries from different fields")]
    FieldMismatch,
    #[error("eigenvalue {0} is listed twice")]
    DuplicateEigenvalue(Scalar),
    #[error("{0} is not an eigenvalue")]
    NotAnEigenvalue(Scalar),
    #[error("the spectrum does not lie in the base field")]
    EigenvalueNotInField,
    #[error("expected {expected} eigenvalues, got {got}")]
    EigenvalueCount { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, n: usize) -> Matrix {
        Matrix {
            n,
            field,
            data: vec![field.zero(); n * n],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        Matrix::diagonal(field, &vec![field.one(); n])
    }

    pub fn diagonal(field: Field, diag: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(field, diag.len());
        for (i, v) in diag.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Matrix, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        let field = rows[0].first().ok_or(MatrixError::NotSquare { expected: n })?.field();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(MatrixError::NotSquare { expected: n });
            }
            for x in row {
                if x.field() != field {
                    return Err(MatrixError::FieldMismatch);
                }
                data.push(x);
            }
        }
        Ok(Matrix { n, field, data })
    }

    pub fn from_fn(field: Field, n: usize, f: impl Fn(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, field, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn diag(&self) -> Vec<Scalar> {
        (0..self.n).map(|i| self[(i, i)].clone()).collect()
    }

    fn check_dim(&self, other: &Matrix) -> Result<(), MatrixError> {
        if self.n != other.n {
            return Err(MatrixError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.field != other.field {
            return Err(MatrixError::FieldMismatch);
        }
        Ok(())
    }

    // Panicking arithmetic for internal use where shapes are known to agree.

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.check_dim(other).unwrap();
        Matrix {
            n: self.n,
            field: self.field,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.check_dim(other).unwrap();
        Matrix {
            n: self.n,
            field: self.field,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.check_dim(other).unwrap();
        let n = self.n;
        let mut out = Matrix::zeros(self.field, n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            n: self.n,
            field: self.field,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// self + c·I
    pub fn shift(&self, c: &Scalar) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.n {
            m[(i, i)] += c;
        }
        m
    }

    pub fn trace(&self) -> Scalar {
        (0..self.n).fold(self.field.zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Zero outside the three central diagonals, nonzero on the sub- and superdiagonal.
    pub fn is_irreducible_tridiagonal(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                let band = i.abs_diff(j);
                let z = self[(i, j)].is_zero();
                if (band > 1 && !z) || (band == 1 && z) {
                    return false;
                }
            }
        }
        true
    }

    /// Entries permuted so that new index k is old index order[k].
    pub fn permuted(&self, order: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.n, |i, j| self[(order[i], order[j])].clone())
    }

    /// Monic characteristic polynomial det(λI - M), computed through an
    /// upper Hessenberg form (no division by integers).
    pub fn char_poly(&self) -> Polynomial {
        let n = self.n;
        let f = self.field;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| !h[(i, j)].is_zero()) else {
                continue;
            };
            if piv != j + 1 {
                h.swap_rows(piv, j + 1);
                h.swap_cols(piv, j + 1);
            }
            let inv = h[(j + 1, j)].inv().unwrap();
            for k in j + 2..n {
                if h[(k, j)].is_zero() {
                    continue;
                }
                let u = &h[(k, j)] * &inv;
                for c in 0..n {
                    let t = &u * &h[(j + 1, c)];
                    h[(k, c)] -= &t;
                }
                for r in 0..n {
                    let t = &u * &h[(r, k)];
                    h[(r, j + 1)] += &t;
                }
            }
        }
        let lambda = Polynomial::new(f, vec![f.zero(), f.one()]);
        let mut p: Vec<Polynomial> = vec![Polynomial::constant(f.one())];
        for k in 1..=n {
            let m = k - 1;
            let mut pk = lambda
                .sub(&Polynomial::constant(h[(m, m)].clone()))
                .mul(&p[k - 1]);
            let mut t = f.one();
            for i in 1..k {
                t *= &h[(m - i + 1, m - i)];
                let c = &t * &h[(m - i, m)];
                if !c.is_zero() {
                    pk = pk.sub(&p[k - i - 1].scale(&c));
                }
            }
            p.push(pk);
        }
        p.pop().unwrap()
    }

    pub fn spectrum(&self) -> SpectrumReport {
        let cp = self.char_poly();
        let (split, eigenvalues) = cp.split_roots();
        let square_free = cp.is_square_free();
        SpectrumReport {
            split,
            multiplicity_free: split && square_free,
            square_free,
            eigenvalues,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.n {
            self.data.swap(a * self.n + c, b * self.n + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.n {
            self.data.swap(r * self.n + a, r * self.n + b);
        }
    }

    /// Reduced row echelon form and the pivot columns.
    fn rref(&self) -> (Matrix, Vec<usize>) {
        let n = self.n;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(p) = (row..n).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, row);
            let inv = m[(row, col)].inv().unwrap();
            for c in 0..n {
                m[(row, c)] *= &inv;
            }
            for r in 0..n {
                if r != row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for c in 0..n {
                        let t = &factor * &m[(row, c)];
                        m[(r, c)] -= &t;
                    }
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

    /// Kernel basis; each vector has one free coordinate set to 1, the others 0.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let n = self.n;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![self.field.zero(); n];
                v[fc] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&r[(row, fc)];
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.n;
        let mut aug = Matrix::zeros(self.field, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = self.field.one();
        }
        // Only the left block decides invertibility; work column by column on it.
        for col in 0..n {
            let p = (col..n).find(|&r| !aug[(r, col)].is_zero())?;
            aug.swap_rows(p, col);
            let inv = aug[(col, col)].inv().unwrap();
            for c in 0..2 * n {
                aug[(col, c)] *= &inv;
            }
            for r in 0..n {
                if r != col && !aug[(r, col)].is_zero() {
                    let factor = aug[(r, col)].clone();
                    for c in 0..2 * n {
                        let t = &factor * &aug[(col, c)];
                        aug[(r, c)] -= &t;
                    }
                }
            }
        }
        Some(Matrix::from_fn(self.field, n, |i, j| aug[(i, n + j)].clone()))
    }

    /// Columns given as vectors.
    pub fn from_columns(field: Field, cols: &[Vec<Scalar>]) -> Matrix {
        Matrix::from_fn(field, cols.len(), |i, j| cols[j][i].clone())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.data.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumReport {
    /// The characteristic polynomial is a product of linear factors over the field.
    pub split: bool,
    /// In-field roots with multiplicity, ascending.
    pub eigenvalues: Vec<Scalar>,
    pub multiplicity_free: bool,
    /// No repeated roots even over an extension field.
    pub square_free: bool,
}

/// AB - BA
pub fn commutator(a: &Matrix, b: &Matrix) -> Result<Matrix, MatrixError> {
    a.check_dim(b)?;
    Ok(a.mul(b).sub(&b.mul(a)))
}

/// E_i = ∏_{j≠i} (M - θ_j I)/(θ_i - θ_j)
pub fn primitive_idempotents(m: &Matrix, eigenvalues: &[Scalar]) -> Result<Vec<Matrix>, MatrixError> {
    for (i, a) in eigenvalues.iter().enumerate() {
        if eigenvalues[..i].contains(a) {
            return Err(MatrixError::DuplicateEigenvalue(a.clone()));
        }
    }
    let cp = m.char_poly();
    if let Some(bad) = eigenvalues.iter().find(|t| !cp.eval(t).is_zero()) {
        return Err(MatrixError::NotAnEigenvalue(bad.clone()));
    }
    if eigenvalues.len() != m.dim() {
        if !cp.split_roots().0 {
            return Err(MatrixError::EigenvalueNotInField);
        }
        return Err(MatrixError::EigenvalueCount {
            expected: m.dim(),
            got: eigenvalues.len(),
        });
    }
    Ok(idempotents_unchecked(m, eigenvalues))
}

pub(crate) fn idempotents_unchecked(m: &Matrix, eigenvalues: &[Scalar]) -> Vec<Matrix> {
    let f = m.field();
    let n = m.dim();
    eigenvalues
        .iter()
        .enumerate()
        .map(|(i, ti)| {
            let mut e = Matrix::identity(f, n);
            for (j, tj) in eigenvalues.iter().enumerate() {
                if i != j {
                    let factor = m.shift(&-tj).scale(&(ti - tj).inv().unwrap());
                    e = e.mul(&factor);
                }
            }
            e
        })
        .collect()
}
