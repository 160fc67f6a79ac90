//! Dense linear algebra over the rationals.
//!
//! Everything here is exact. Subspaces are stored by their reduced row-echelon
//! basis, so two subspaces are equal exactly when their basis matrices are.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Exact rational scalar. Always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"` (optional surrounding whitespace).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::BadRational(text.to_string());
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Formats as `"p"` when integral, `"p/q"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Row-major dense matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from explicit rows; all rows must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            entries,
        })
    }

    /// Convenience constructor for integer test matrices.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| rat(v)).collect())
            .collect();
        Self::from_rows(cols, rows).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Rational] {
        &mut self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// `target -= factor * source`, skipping zero entries of `source`.
fn axpy_neg(target: &mut [Rational], factor: &Rational, source: &[Rational]) {
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t -= factor * s;
        }
    }
}

/// Reduced row-echelon form and the (strictly increasing) pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.entries.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a[(r, c)].recip();
        for e in a.row_mut(r) {
            *e *= &inv;
        }
        let pivot_row = a.row(r).to_vec();
        for i in 0..a.rows {
            if i != r && !a[(i, c)].is_zero() {
                let factor = a[(i, c)].clone();
                axpy_neg(a.row_mut(i), &factor, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// `{v : m v = 0}` in canonical form.
pub fn nullspace(m: &Matrix) -> Subspace {
    let (reduced, pivots) = rref(m);
    nullspace_from_rref(m.cols, &reduced, &pivots)
}

fn nullspace_from_rref(cols: usize, reduced: &Matrix, pivots: &[usize]) -> Subspace {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -reduced[(r, free)].clone();
        }
        basis.push(v);
    }
    Subspace::span(cols, basis)
}

/// Exact determinant by Gaussian elimination.
pub fn determinant(m: &Matrix) -> Result<Rational> {
    if m.rows != m.cols {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: m.cols,
        });
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != c {
            for j in 0..n {
                a.entries.swap(p * n + j, c * n + j);
            }
            det = -det;
        }
        let pivot = a[(c, c)].clone();
        det *= &pivot;
        let pivot_row = a.row(c).to_vec();
        for i in c + 1..n {
            if !a[(i, c)].is_zero() {
                let factor = &a[(i, c)] / &pivot;
                axpy_neg(a.row_mut(i), &factor, &pivot_row);
            }
        }
    }
    Ok(det)
}

/// One solution of `a x = b`, or `None` when the system is inconsistent.
pub fn solve(a: &Matrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: b.len(),
        });
    }
    let mut aug = Matrix::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        aug.row_mut(i)[..a.cols].clone_from_slice(a.row(i));
        aug[(i, a.cols)] = b[i].clone();
    }
    let (reduced, pivots) = rref(&aug);
    if pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); a.cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = reduced[(r, a.cols)].clone();
    }
    Ok(Some(x))
}

/// How two subspaces of the same ambient space relate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubspaceRelation {
    Equal,
    S1SubsetS2,
    S2SubsetS1,
    Incomparable,
}

impl fmt::Display for SubspaceRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubspaceRelation::Equal => "equal",
            SubspaceRelation::S1SubsetS2 => "s1_subset_s2",
            SubspaceRelation::S2SubsetS1 => "s2_subset_s1",
            SubspaceRelation::Incomparable => "incomparable",
        })
    }
}

/// A subspace of `Q^ambient_dim`, stored by its reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Canonical basis of the span of `vectors`. Each vector must have length `ambient_dim`.
    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = Vec<Rational>>) -> Self {
        let mut reducer = RowReducer::new(ambient_dim);
        for v in vectors {
            assert_eq!(v.len(), ambient_dim, "vector length does not match ambient dimension");
            reducer.push(v);
        }
        reducer.row_space()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    /// Residual of `v` after elimination against the canonical basis.
    pub fn residual(&self, v: &[Rational]) -> Vec<Rational> {
        let mut r = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if !r[p].is_zero() {
                let factor = r[p].clone();
                axpy_neg(&mut r, &factor, self.basis.row(i));
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.ambient_dim && self.residual(v).iter().all(Zero::is_zero)
    }

    pub fn is_subset_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    pub fn compare(&self, other: &Subspace) -> Result<SubspaceRelation> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let forward = self.is_subset_of(other);
        let backward = other.is_subset_of(self);
        Ok(match (forward, backward) {
            (true, true) => SubspaceRelation::Equal,
            (true, false) => SubspaceRelation::S1SubsetS2,
            (false, true) => SubspaceRelation::S2SubsetS1,
            (false, false) => SubspaceRelation::Incomparable,
        })
    }

    /// Sum of two subspaces.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(Subspace::span(
            self.ambient_dim,
            self.basis_vectors().into_iter().chain(other.basis_vectors()),
        ))
    }

    /// `{w : w . v = 0 for all v in self}`. Membership in `self` is equivalent to
    /// vanishing against every basis vector of the annihilator.
    pub fn annihilator(&self) -> Subspace {
        nullspace_from_rref(self.ambient_dim, &self.basis, &self.pivots)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in Q^{}: {:?})", self.dim(), self.ambient_dim, self.basis)
    }
}

/// Incremental Gauss-Jordan elimination.
///
/// Rows are kept fully reduced against each other, so a pushed row can be
/// reduced against the stored rows in any order. Used for the large, highly
/// redundant systems produced by identity compilation.
#[derive(Clone, Debug)]
pub struct RowReducer {
    cols: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl RowReducer {
    pub fn new(cols: usize) -> Self {
        RowReducer {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` and stores it if independent. Returns whether the rank grew.
    pub fn push(&mut self, mut row: Vec<Rational>) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        for (p, stored) in &self.rows {
            if !row[*p].is_zero() {
                let factor = row[*p].clone();
                axpy_neg(&mut row, &factor, stored);
            }
        }
        let Some(pivot) = row.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        let inv = row[pivot].recip();
        for e in row.iter_mut().skip(pivot) {
            if !e.is_zero() {
                *e *= &inv;
            }
        }
        for (_, stored) in self.rows.iter_mut() {
            if !stored[pivot].is_zero() {
                let factor = stored[pivot].clone();
                axpy_neg(stored, &factor, &row);
            }
        }
        self.rows.push((pivot, row));
        true
    }

    fn sorted(&self) -> (Matrix, Vec<usize>) {
        let mut rows: Vec<&(usize, Vec<Rational>)> = self.rows.iter().collect();
        rows.sort_by_key(|(p, _)| *p);
        let pivots = rows.iter().map(|(p, _)| *p).collect();
        let entries = rows.iter().flat_map(|(_, r)| r.iter().cloned()).collect();
        let basis = Matrix::from_entries(rows.len(), self.cols, entries).expect("row length");
        (basis, pivots)
    }

    pub fn row_space(&self) -> Subspace {
        let (basis, pivots) = self.sorted();
        Subspace {
            ambient_dim: self.cols,
            basis,
            pivots,
        }
    }

    /// Kernel of the accumulated rows.
    pub fn kernel(&self) -> Subspace {
        let (basis, pivots) = self.sorted();
        nullspace_from_rref(self.cols, &basis, &pivots)
    }

    /// Treats the last column as a constant term and solves `A x + b = 0`.
    /// Returns a particular solution (free variables zero) and the kernel of `A`,
    /// or `None` when inconsistent.
    pub fn affine_solution(&self) -> Option<(Vec<Rational>, Subspace)> {
        let unknowns = self.cols - 1;
        let (basis, pivots) = self.sorted();
        if pivots.last() == Some(&unknowns) {
            return None;
        }
        let mut particular = vec![Rational::zero(); unknowns];
        for (r, &p) in pivots.iter().enumerate() {
            particular[p] = -basis[(r, unknowns)].clone();
        }
        let mut coeffs = Matrix::zeros(basis.rows, unknowns);
        for r in 0..basis.rows {
            coeffs.row_mut(r).clone_from_slice(&basis.row(r)[..unknowns]);
        }
        Some((particular, nullspace_from_rref(unknowns, &coeffs, &pivots)))
    }
}
