//! Finite-dimensional associative algebras over the rationals, given by
//! structure constants `e_i e_j = sum_k c[i][j][k] e_k`.

mod classify;
mod element;
mod map;
mod spaces;

pub use classify::{classify_map, ClassificationReport};
pub use element::Element;
pub use map::{LinearMap, Side};
pub use spaces::{
    commuting_jordan_derivation_space, derivation_space, jordan_derivation_space, MapForm,
};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{nullspace, solve, Matrix, Rational, Subspace};

/// An algebra with a sparse multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    // products[i * dim + j] lists the nonzero (k, c[i][j][k]).
    products: Vec<Vec<(usize, Rational)>>,
    unit: Option<Element>,
    labels: Vec<String>,
}

impl Algebra {
    /// Builds an algebra from the dense tensor `structure[i][j][k]`.
    pub fn new(
        structure: Vec<Vec<Vec<Rational>>>,
        unit: Option<Vec<Rational>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let dim = structure.len();
        for (i, row) in structure.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidAlgebra(format!(
                    "structure[{i}] has {} entries, expected {dim}",
                    row.len()
                )));
            }
            for (j, fiber) in row.iter().enumerate() {
                if fiber.len() != dim {
                    return Err(Error::InvalidAlgebra(format!(
                        "structure[{i}][{j}] has {} entries, expected {dim}",
                        fiber.len()
                    )));
                }
            }
        }
        Self::from_products(
            dim,
            |i, j| {
                structure[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .collect()
            },
            unit,
            labels,
        )
    }

    /// Builds an algebra from a closure giving the expansion of `e_i e_j`.
    pub fn from_products(
        dim: usize,
        product: impl Fn(usize, usize) -> Vec<(usize, Rational)>,
        unit: Option<Vec<Rational>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut dense = vec![Rational::zero(); dim];
                for (k, c) in product(i, j) {
                    if k >= dim {
                        return Err(Error::InvalidAlgebra(format!(
                            "product e{i}*e{j} refers to basis index {k} >= {dim}"
                        )));
                    }
                    dense[k] += c;
                }
                products.push(
                    dense
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .collect(),
                );
            }
        }
        let unit = match unit {
            Some(u) if u.len() != dim => {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: u.len(),
                })
            }
            Some(u) => Some(Element::new(u)),
            None => None,
        };
        let labels = match labels {
            Some(l) if l.len() != dim => {
                return Err(Error::InvalidAlgebra(format!(
                    "{} labels for dimension {dim}",
                    l.len()
                )))
            }
            Some(l) => l,
            None => (0..dim).map(|i| format!("e{i}")).collect(),
        };
        Ok(Algebra {
            dim,
            products,
            unit,
            labels,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> Option<&Element> {
        self.unit.as_ref()
    }

    pub fn require_unit(&self) -> Result<&Element> {
        self.unit.as_ref().ok_or(Error::NotUnital)
    }

    /// Nonzero terms of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.products[i * self.dim + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.basis_product(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    pub fn dense_structure(&self) -> Vec<Vec<Vec<Rational>>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| (0..self.dim).map(|k| self.structure_constant(i, j, k)).collect())
                    .collect()
            })
            .collect()
    }

    pub fn basis(&self, i: usize) -> Element {
        Element::basis(self.dim, i)
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.dim)
    }

    /// `x y`, panicking on dimension mismatch. See [`Algebra::multiply`] for the checked form.
    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        assert_eq!(x.dim(), self.dim, "left factor has wrong dimension");
        assert_eq!(y.dim(), self.dim, "right factor has wrong dimension");
        let mut out = vec![Rational::zero(); self.dim];
        for (i, xi) in x.coords().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords().iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let products = self.basis_product(i, j);
                if products.is_empty() {
                    continue;
                }
                let s = xi * yj;
                for (k, c) in products {
                    out[*k] += &s * c;
                }
            }
        }
        Element::new(out)
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        for e in [x, y] {
            if e.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: e.dim(),
                });
            }
        }
        Ok(self.mul(x, y))
    }

    /// Left-to-right product of a sequence; the empty product is the unit.
    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a Element>) -> Result<Element> {
        let mut iter = factors.into_iter();
        let Some(first) = iter.next() else {
            return self.require_unit().cloned();
        };
        let mut acc = first.clone();
        for f in iter {
            acc = self.mul(&acc, f);
        }
        Ok(acc)
    }

    /// `x^k` for `k >= 1`; `x^0` is the unit.
    pub fn pow(&self, x: &Element, k: u32) -> Result<Element> {
        if k == 0 {
            return self.require_unit().cloned();
        }
        let mut acc = x.clone();
        for _ in 1..k {
            acc = self.mul(&acc, x);
        }
        Ok(acc)
    }

    /// `xy - yx`
    pub fn commutator(&self, x: &Element, y: &Element) -> Element {
        &self.mul(x, y) - &self.mul(y, x)
    }

    /// `x o y = xy + yx`
    pub fn jordan(&self, x: &Element, y: &Element) -> Element {
        &self.mul(x, y) + &self.mul(y, x)
    }

    /// `L_c` (x -> cx) or `R_c` (x -> xc).
    pub fn mult_operator(&self, c: &Element, side: Side) -> LinearMap {
        let columns = (0..self.dim).map(|j| {
            let e = self.basis(j);
            match side {
                Side::Left => self.mul(c, &e),
                Side::Right => self.mul(&e, c),
            }
        });
        LinearMap::from_columns(self.dim, columns)
    }

    /// Checks associativity on all basis triples and two-sidedness of the unit.
    pub fn validate(&self) -> ValidationReport {
        let mut associativity_failures = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.mul(&self.basis(i), &self.basis(j));
                for k in 0..self.dim {
                    let ek = self.basis(k);
                    let left = self.mul(&ij, &ek);
                    let right = self.mul(&self.basis(i), &self.mul(&self.basis(j), &ek));
                    if left != right {
                        associativity_failures.push([i, j, k]);
                    }
                }
            }
        }
        let mut unit_failures = Vec::new();
        if let Some(u) = &self.unit {
            for i in 0..self.dim {
                let e = self.basis(i);
                if self.mul(u, &e) != e || self.mul(&e, u) != e {
                    unit_failures.push(i);
                }
            }
        }
        ValidationReport {
            dim: self.dim,
            unit_missing: self.unit.is_none(),
            associativity_failures,
            unit_failures,
        }
    }

    /// `Z = {x : e_i x = x e_i for every basis element}`.
    pub fn center(&self) -> Subspace {
        let d = self.dim;
        let mut rows = Vec::with_capacity(d * d);
        for i in 0..d {
            let e = self.basis(i);
            let comm = self
                .mult_operator(&e, Side::Left)
                .matrix()
                .sub(self.mult_operator(&e, Side::Right).matrix())
                .expect("square operators");
            rows.extend(comm.row_vecs());
        }
        nullspace(&Matrix::from_rows(d, rows).expect("row length"))
    }

    pub fn is_central(&self, x: &Element) -> bool {
        x.dim() == self.dim && self.center().contains(x.coords())
    }

    /// Two-sided inverse, if one exists.
    pub fn invert(&self, x: &Element) -> Option<Element> {
        let unit = self.unit.as_ref()?;
        if x.dim() != self.dim {
            return None;
        }
        let left = self.mult_operator(x, Side::Left);
        let y = solve(left.matrix(), unit.coords()).ok()??;
        let y = Element::new(y);
        (self.mul(&y, x) == *unit).then_some(y)
    }

    /// Condition (P): `x r x = 0` for all `x` forces `r = 0`.
    ///
    /// In characteristic zero this is decided on the polarized system
    /// `e_i r e_j + e_j r e_i = 0` for `i <= j`.
    pub fn condition_p(&self) -> bool {
        let d = self.dim;
        let mut rows = Vec::new();
        for i in 0..d {
            for j in i..d {
                let (ei, ej) = (self.basis(i), self.basis(j));
                let columns = (0..d).map(|m| {
                    let em = self.basis(m);
                    &self.mul(&self.mul(&ei, &em), &ej) + &self.mul(&self.mul(&ej, &em), &ei)
                });
                rows.extend(LinearMap::from_columns(d, columns).matrix().row_vecs());
            }
        }
        if rows.is_empty() {
            return d == 0;
        }
        nullspace(&Matrix::from_rows(d, rows).expect("row length")).is_zero()
    }

    /// `c * 1` for a rational scalar `c`.
    pub fn scalar(&self, c: &Rational) -> Result<Element> {
        Ok(self.require_unit()?.scale(c))
    }

    pub fn is_unit(&self, x: &Element) -> bool {
        self.unit.as_ref() == Some(x)
    }

    pub fn one_coeffs(&self) -> Vec<Rational> {
        self.unit
            .as_ref()
            .map_or_else(|| vec![Rational::zero(); self.dim], |u| u.coords().to_vec())
    }
}

/// Outcome of [`Algebra::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub dim: usize,
    pub unit_missing: bool,
    pub associativity_failures: Vec<[usize; 3]>,
    pub unit_failures: Vec<usize>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        !self.unit_missing && self.associativity_failures.is_empty() && self.unit_failures.is_empty()
    }
}

/// Matrix units `e_pq` of `M_k(Q)` in row-major order; `e_pq e_rs = delta_qr e_ps`.
pub fn full_matrix_algebra(k: usize) -> Result<Algebra> {
    if k == 0 {
        return Err(Error::OutOfRange {
            what: "matrix size",
            value: 0,
        });
    }
    let d = k * k;
    let unit = (0..d)
        .map(|idx| if idx / k == idx % k { Rational::one() } else { Rational::zero() })
        .collect();
    let labels = (0..d).map(|idx| format!("e{}{}", idx / k + 1, idx % k + 1)).collect();
    Algebra::from_products(
        d,
        |a, b| {
            let (p, q) = (a / k, a % k);
            let (r, s) = (b / k, b % k);
            if q == r {
                vec![(p * k + s, Rational::one())]
            } else {
                vec![]
            }
        },
        Some(unit),
        Some(labels),
    )
}

/// `Q^k` with componentwise multiplication.
pub fn diagonal_algebra(k: usize) -> Result<Algebra> {
    Algebra::from_products(
        k,
        |i, j| if i == j { vec![(i, Rational::one())] } else { vec![] },
        Some(vec![Rational::one(); k]),
        None,
    )
}
