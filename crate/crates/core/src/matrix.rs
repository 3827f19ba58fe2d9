//! Dense exact matrices and the row-reduction kernel everything else is built on.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub rank: usize,
    /// Nonzero rows of the reduced row-echelon form.
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    /// Rows span the right kernel `{x : m x = 0}`, themselves in RREF.
    pub kernel: Matrix,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Matrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            for x in &r {
                assert_eq!(x.field(), field, "entry over a different field");
            }
            data.extend(r);
        }
        Matrix {
            field,
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            field,
            cols,
            rows.iter().map(|r| r.iter().map(|&x| field.int(x)).collect()).collect(),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), v, self.field)).collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_skew(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| self.get(i, i).is_zero() && (0..i).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    /// Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let (reduced_rows, pivots) = rref_rows(self.row_vecs(), self.cols);
        let rank = pivots.len();
        let reduced = Matrix::from_rows(self.field, self.cols, reduced_rows);
        let kernel = kernel_from_rref(&reduced, &pivots);
        Rref {
            rank,
            reduced,
            pivots,
            kernel,
        }
    }

    pub fn rank(&self) -> usize {
        rref_rows(self.row_vecs(), self.cols).1.len()
    }

    /// RREF basis of `{x : self * x = 0}` as rows.
    pub fn kernel(&self) -> Matrix {
        self.rref().kernel
    }

    /// RREF basis of `{y : y * self = 0}` as rows.
    pub fn left_kernel(&self) -> Matrix {
        self.transpose().kernel()
    }

    /// Nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_basis(&self) -> Matrix {
        self.rref().reduced
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let piv = a[c][c].clone();
            det = &det * &piv;
            let inv = piv.inv();
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] * &inv;
                for k in c..n {
                    let v = &a[r][k] - &(&f * &a[c][k]);
                    a[r][k] = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { self.field.one() } else { self.field.zero() }));
                r
            })
            .collect();
        let (red, piv) = rref_rows(aug, 2 * n);
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_rows(
            self.field,
            n,
            red.into_iter().map(|r| r[n..].to_vec()).collect(),
        ))
    }

    /// One solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let aug: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let (red, piv) = rref_rows(aug, self.cols + 1);
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &c) in red.iter().zip(&piv) {
            x[c] = row[self.cols].clone();
        }
        Some(x)
    }

    /// Leading principal minors `det(m[..k, ..k])` for `k = 1..=n`.
    pub fn leading_principal_minors(&self) -> Vec<Scalar> {
        assert_eq!(self.rows, self.cols);
        (1..=self.rows)
            .map(|k| {
                let idx: Vec<usize> = (0..k).collect();
                self.submatrix(&idx, &idx).determinant()
            })
            .collect()
    }

    /// Sylvester's criterion over the rationals.
    pub fn is_positive_definite(&self) -> Result<bool> {
        if self.field != Field::Rational {
            return Err(Error::FieldMismatch);
        }
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(self.leading_principal_minors().iter().all(|m| m.signum() == Some(1)))
    }

    pub fn reduce_mod(&self, p: u64) -> Result<Matrix> {
        let data = self
            .data
            .iter()
            .enumerate()
            .map(|(i, x)| {
                x.reduce_mod(p).map_err(|e| Error::Reduction {
                    entry: format!("({}, {})", i / self.cols.max(1), i % self.cols.max(1)),
                    source: Box::new(e),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            field: Field::prime(p)?,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar], field: Field) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// Reduced row-echelon form of `rows`; returns the nonzero rows and pivots.
pub fn rref_rows(mut a: Vec<Vec<Scalar>>, cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv();
        if !inv.is_one() {
            for x in a[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let support: Vec<usize> = (c..cols).filter(|&k| !a[r][k].is_zero()).collect();
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &k in &support {
                let v = &row[k] - &(&f * &pivot_row[k]);
                row[k] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

fn kernel_from_rref(reduced: &Matrix, pivots: &[usize]) -> Matrix {
    let field = reduced.field();
    let cols = reduced.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![field.zero(); cols];
        v[f] = field.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -reduced.get(i, f);
        }
        basis.push(v);
    }
    let (rows, _) = rref_rows(basis, cols);
    Matrix::from_rows(field, cols, rows)
}

/// A subspace of `k^n` held as a canonical RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpace {
    pub basis: Matrix,
    pub pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(m: &Matrix) -> RowSpace {
        let r = m.rref();
        RowSpace {
            basis: r.reduced,
            pivots: r.pivots,
        }
    }

    pub fn from_vectors(field: Field, n: usize, vs: Vec<Vec<Scalar>>) -> RowSpace {
        RowSpace::new(&Matrix::from_rows(field, n, vs))
    }

    pub fn zero(field: Field, n: usize) -> RowSpace {
        RowSpace {
            basis: Matrix::zeros(field, 0, n),
            pivots: vec![],
        }
    }

    pub fn full(field: Field, n: usize) -> RowSpace {
        RowSpace {
            basis: Matrix::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    /// Remainder of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (k, b) in self.basis.row(i).iter().enumerate() {
                if !b.is_zero() {
                    v[k] = &v[k] - &(&f * b);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_space(&self, other: &RowSpace) -> bool {
        (0..other.basis.rows()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the space.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &RowSpace) -> RowSpace {
        RowSpace::new(&self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &RowSpace) -> RowSpace {
        // x*A = y*B  <=>  (x, -y) in the left kernel of [A; B]
        let stacked = self.basis.vstack(&other.basis);
        let lk = stacked.left_kernel();
        let a = self.dim();
        let vs: Vec<Vec<Scalar>> = (0..lk.rows())
            .map(|i| {
                let coeffs = &lk.row(i)[..a];
                let mut v = vec![self.field().zero(); self.ambient()];
                for (c, r) in coeffs.iter().zip(0..a) {
                    if c.is_zero() {
                        continue;
                    }
                    for (k, b) in self.basis.row(r).iter().enumerate() {
                        v[k] = &v[k] + &(c * b);
                    }
                }
                v
            })
            .collect();
        RowSpace::from_vectors(self.field(), self.ambient(), vs)
    }

    /// Canonical complement of `sub` inside `self`: the RREF of the
    /// remainders of `self`'s basis modulo `sub`. Requires `sub ⊆ self`.
    pub fn complement_of(&self, sub: &RowSpace) -> Matrix {
        let rems: Vec<Vec<Scalar>> = (0..self.basis.rows()).map(|i| sub.reduce(self.basis.row(i))).collect();
        Matrix::from_rows(self.field(), self.ambient(), rems).row_basis()
    }
}
