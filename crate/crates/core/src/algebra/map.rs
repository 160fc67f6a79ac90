use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::Element;
use crate::error::{Error, Result};
use crate::linalg::{format_rational, Matrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A linear map on a `d`-dimensional algebra. Column `j` holds the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        Ok(LinearMap { matrix })
    }

    pub fn identity(d: usize) -> Self {
        LinearMap {
            matrix: Matrix::identity(d),
        }
    }

    pub fn zero(d: usize) -> Self {
        LinearMap {
            matrix: Matrix::zeros(d, d),
        }
    }

    /// Builds the map sending `e_j` to the `j`-th element yielded.
    pub fn from_columns(d: usize, columns: impl IntoIterator<Item = Element>) -> Self {
        let mut matrix = Matrix::zeros(d, d);
        let mut count = 0;
        for (j, col) in columns.into_iter().enumerate() {
            assert_eq!(col.dim(), d, "column has wrong dimension");
            for (i, c) in col.into_coords().into_iter().enumerate() {
                matrix[(i, j)] = c;
            }
            count += 1;
        }
        assert_eq!(count, d, "wrong number of columns");
        LinearMap { matrix }
    }

    /// Inverse of [`LinearMap::to_vector`]: column-major coordinates.
    pub fn from_vector(d: usize, v: &[Rational]) -> Result<Self> {
        if v.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                found: v.len(),
            });
        }
        let mut matrix = Matrix::zeros(d, d);
        for j in 0..d {
            for i in 0..d {
                matrix[(i, j)] = v[j * d + i].clone();
            }
        }
        Ok(LinearMap { matrix })
    }

    /// Column-major vectorization: entry `(i, j)` lands at index `j * d + i`.
    pub fn to_vector(&self) -> Vec<Rational> {
        let d = self.dim();
        let mut v = Vec::with_capacity(d * d);
        for j in 0..d {
            for i in 0..d {
                v.push(self.matrix[(i, j)].clone());
            }
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn image_of_basis(&self, j: usize) -> Element {
        Element::new(self.matrix.column(j))
    }

    pub fn apply(&self, x: &Element) -> Element {
        Element::new(self.matrix.mul_vec(x.coords()).expect("map and element dimensions differ"))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            matrix: self.matrix.mul(&other.matrix).expect("map dimensions differ"),
        }
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            matrix: self.matrix.add(&other.matrix).expect("map dimensions differ"),
        }
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            matrix: self.matrix.sub(&other.matrix).expect("map dimensions differ"),
        }
    }

    pub fn scale(&self, s: &Rational) -> LinearMap {
        LinearMap {
            matrix: self.matrix.scale(s),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Rows of rational strings, the exchange format used in reports.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.dim())
            .map(|i| self.matrix.row(i).iter().map(format_rational).collect())
            .collect()
    }
}

impl Serialize for LinearMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("LinearMap", 2)?;
        s.serialize_field("dim", &self.dim())?;
        s.serialize_field("matrix", &self.to_string_rows())?;
        s.end()
    }
}
