//! Dense matrices over an exact field, with the four core operations the
//! rest of the crate is built on: rank, kernel basis, fraction-free
//! determinant (Bareiss) and the Pfaffian of a skew-symmetric matrix.
//!
//! Sizes here are desk scale (a few hundred rows at the very most), so the
//! implementations favour clarity and exactness over asymptotics.

use alloc::vec;
use alloc::vec::Vec;

use super::field::Field;
use crate::error::{Error, Result};

/// Row-major dense matrix carrying its field context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    /// All-zero matrix.
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    /// Identity of size n.
    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    /// Build from explicit rows; all rows must have equal length.
    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged row lengths".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend(row);
        }
        Ok(Matrix { field, rows: r, cols: c, data })
    }

    /// Build from small signed integers (test and fixture convenience).
    pub fn from_i64(field: F, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged integer rows");
            for (j, &x) in row.iter().enumerate() {
                let e = m.field.from_i64(x);
                m.set(i, j, e);
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        self.data[i * self.cols + j] = v;
    }

    /// Borrow row i as a slice.
    pub fn row(&self, i: usize) -> &[F::Elem] {
        assert!(i < self.rows);
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    fn assert_same_field(&self, other: &Self) {
        assert!(self.field == other.field, "mixed field contexts");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        assert!(self.rows == other.rows && self.cols == other.cols, "add shape mismatch");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = self.field.add(a, b);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        assert!(self.rows == other.rows && self.cols == other.cols, "sub shape mismatch");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = self.field.sub(a, b);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = self.field.neg(a);
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = self.field.mul(a, c);
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        assert_eq!(self.cols, other.rows, "matmul inner dimension mismatch");
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = f.mul(a, other.get(k, j));
                    let s = f.add(out.get(i, j), &t);
                    out.set(i, j, s);
                }
            }
        }
        out
    }

    /// Apply the matrix to a coordinate vector.
    pub fn matvec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "matvec length mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for j in 0..self.cols {
                    acc = f.add(&acc, &f.mul(self.get(i, j), &v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| self.field.is_zero(a))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..=i).all(|j| *self.get(i, j) == self.field.neg(self.get(j, i))))
    }

    /// Copy `other` into this matrix with its top-left corner at (r0, c0).
    pub fn paste(&mut self, r0: usize, c0: usize, other: &Self) {
        self.assert_same_field(other);
        assert!(r0 + other.rows <= self.rows && c0 + other.cols <= self.cols, "paste overflow");
        for i in 0..other.rows {
            for j in 0..other.cols {
                self.set(r0 + i, c0 + j, other.get(i, j).clone());
            }
        }
    }

    /// The square submatrix on the given row/column index set.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        assert!(self.is_square());
        let mut m = Self::zeros(self.field.clone(), idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Submatrix on the given rows, all columns.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.field.clone(), idx.len(), self.cols);
        for (a, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                m.set(a, j, self.get(i, j).clone());
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Reduced row echelon form together with the pivot column indices.
    ///
    /// Gauss-Jordan with exact division; the workhorse behind `rank`,
    /// `kernel_basis`, `solve` and `inverse`.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // Find a pivot in column c at or below row r.
            let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, pr);
            // Normalize the pivot row.
            let pinv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &pinv);
                m.set(r, j, v);
            }
            // Clear the column above and below.
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Rank over the exact field.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel {v : Mv = 0}, one vector per free column
    /// of the reduced echelon form.  The zero map on F^n yields n vectors;
    /// an injective map yields none.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let is_pivot = {
            let mut flags = vec![false; self.cols];
            for &c in &pivots {
                flags[c] = true;
            }
            flags
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Exact determinant by Bareiss' single-step fraction-free elimination.
    ///
    /// Every division is by the previous pivot and is exact (the running
    /// entries are minors of the original matrix), so the method is also
    /// safe over subrings such as the integers embedded in Q.
    /// Errors: `Shape` for non-square input.  The empty 0 x 0 matrix has
    /// determinant 1.
    pub fn determinant(&self) -> Result<F::Elem> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of non-square matrix".into()));
        }
        let f = &self.field;
        let n = self.rows;
        if n == 0 {
            return Ok(f.one());
        }
        let mut m = self.clone();
        let mut negated = false;
        let mut prev = f.one();
        for k in 0..n - 1 {
            if f.is_zero(m.get(k, k)) {
                let Some(pr) = (k + 1..n).find(|&i| !f.is_zero(m.get(i, k))) else {
                    return Ok(f.zero());
                };
                m.swap_rows(k, pr);
                negated = !negated;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = f.sub(
                        &f.mul(m.get(i, j), m.get(k, k)),
                        &f.mul(m.get(i, k), m.get(k, j)),
                    );
                    let v = f.div(&num, &prev).expect("Bareiss pivot division");
                    m.set(i, j, v);
                }
                m.set(i, k, f.zero());
            }
            prev = m.get(k, k).clone();
        }
        let det = m.get(n - 1, n - 1).clone();
        Ok(if negated { f.neg(&det) } else { det })
    }

    /// Pfaffian of a skew-symmetric matrix by Schur-complement elimination
    /// on 2 x 2 leading blocks (every division is exact over the field).
    ///
    /// Conventions: empty matrix -> 1, odd size -> 0.  Swapping row+column
    /// j with k flips the sign, which is tracked.  Errors:
    /// `Shape` for non-square input, `NotSkewSymmetric` if M^t != -M.
    pub fn pfaffian(&self) -> Result<F::Elem> {
        if !self.is_square() {
            return Err(Error::Shape("pfaffian of non-square matrix".into()));
        }
        if !self.is_skew_symmetric() {
            return Err(Error::NotSkewSymmetric);
        }
        let f = &self.field;
        let n = self.rows;
        if n == 0 {
            return Ok(f.one());
        }
        if n % 2 == 1 {
            return Ok(f.zero());
        }
        let mut m = self.clone();
        let mut negated = false;
        let mut acc = f.one();
        let mut k = 0;
        while k < n {
            // Need a nonzero pivot at (k, k+1); search the rest of row k.
            if f.is_zero(m.get(k, k + 1)) {
                let Some(j) = (k + 2..n).find(|&j| !f.is_zero(m.get(k, j))) else {
                    // Row k of the trailing block vanishes: singular, Pf = 0.
                    return Ok(f.zero());
                };
                m.swap_rows(k + 1, j);
                m.swap_cols(k + 1, j);
                negated = !negated;
            }
            let pivot = m.get(k, k + 1).clone();
            acc = f.mul(&acc, &pivot);
            // Schur update of the trailing block:
            // m[i][j] += (m[k+1][i] * m[k][j] - m[k][i] * m[k+1][j]) / pivot.
            for i in k + 2..n {
                for j in k + 2..n {
                    let num = f.sub(
                        &f.mul(m.get(k + 1, i), m.get(k, j)),
                        &f.mul(m.get(k, i), m.get(k + 1, j)),
                    );
                    let delta = f.div(&num, &pivot).expect("pivot is nonzero");
                    let v = f.add(m.get(i, j), &delta);
                    m.set(i, j, v);
                }
            }
            k += 2;
        }
        Ok(if negated { f.neg(&acc) } else { acc })
    }

    /// Solve Mx = b.  `Ok(None)` when the system is inconsistent; free
    /// variables (if any) are set to zero.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if b.len() != self.rows {
            return Err(Error::Shape("solve right-hand side length".into()));
        }
        let f = &self.field;
        let mut aug = Matrix::zeros(f.clone(), self.rows, self.cols + 1);
        aug.paste(0, 0, self);
        for i in 0..self.rows {
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Inverse via Gauss-Jordan on the augmented block [M | I].
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of non-square matrix".into()));
        }
        let f = &self.field;
        let n = self.rows;
        let mut aug = Matrix::zeros(f.clone(), n, 2 * n);
        aug.paste(0, 0, self);
        aug.paste(0, n, &Matrix::identity(f.clone(), n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(f.clone(), n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Adjugate, satisfying M * adj(M) = det(M) * I even for singular M.
    ///
    /// Cofactor expansion for n <= 5; for larger invertible matrices the
    /// cheaper det(M) * M^{-1} route, falling back to cofactors when
    /// singular.
    pub fn adjugate(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("adjugate of non-square matrix".into()));
        }
        let f = &self.field;
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        if n > 5 {
            let det = self.determinant()?;
            if !f.is_zero(&det) {
                return Ok(self.inverse()?.scale(&det));
            }
        }
        let mut adj = Matrix::zeros(f.clone(), n, n);
        for i in 0..n {
            for j in 0..n {
                let keep: Vec<usize> = (0..n).filter(|&r| r != i).collect();
                let mut minor = Matrix::zeros(f.clone(), n - 1, n - 1);
                for (a, &r) in keep.iter().enumerate() {
                    let mut b = 0;
                    for c in 0..n {
                        if c == j {
                            continue;
                        }
                        minor.set(a, b, self.get(r, c).clone());
                        b += 1;
                    }
                }
                let mut cof = minor.determinant()?;
                if (i + j) % 2 == 1 {
                    cof = f.neg(&cof);
                }
                adj.set(j, i, cof);
            }
        }
        Ok(adj)
    }
}

/// Stack row vectors into a matrix (used to test spans and ranks of lists
/// of flattened tensors).
pub fn stack_rows<F: Field>(field: F, rows: &[Vec<F::Elem>]) -> Result<Matrix<F>> {
    Matrix::from_rows(field, rows.to_vec())
}
