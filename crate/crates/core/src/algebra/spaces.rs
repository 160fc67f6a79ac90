//! Spaces of maps cut out by bilinear conditions on basis pairs: derivations,
//! Jordan derivations, commuting maps.

use super::{Algebra, Element, Side};
use crate::linalg::{Matrix, Rational, RowReducer, Subspace};

/// An element-valued linear form in the `d^2` coordinates of an unknown map
/// (column-major, as in [`super::LinearMap::to_vector`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapForm {
    coeffs: Matrix,
}

impl MapForm {
    /// The form `D(v)`.
    pub fn apply(v: &Element) -> MapForm {
        let d = v.dim();
        let mut coeffs = Matrix::zeros(d, d * d);
        for (j, vj) in v.support() {
            for k in 0..d {
                coeffs[(k, j * d + k)] = vj.clone();
            }
        }
        MapForm { coeffs }
    }

    /// `x * form`
    pub fn left(&self, algebra: &Algebra, x: &Element) -> MapForm {
        let op = algebra.mult_operator(x, Side::Left);
        MapForm {
            coeffs: op.matrix().mul(&self.coeffs).expect("dimension"),
        }
    }

    /// `form * x`
    pub fn right(&self, algebra: &Algebra, x: &Element) -> MapForm {
        let op = algebra.mult_operator(x, Side::Right);
        MapForm {
            coeffs: op.matrix().mul(&self.coeffs).expect("dimension"),
        }
    }

    pub fn add(&self, other: &MapForm) -> MapForm {
        MapForm {
            coeffs: self.coeffs.add(&other.coeffs).expect("dimension"),
        }
    }

    pub fn sub(&self, other: &MapForm) -> MapForm {
        MapForm {
            coeffs: self.coeffs.sub(&other.coeffs).expect("dimension"),
        }
    }

    /// One linear equation per output coordinate.
    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.coeffs.row_vecs()
    }
}

fn kernel_of(d: usize, forms: impl IntoIterator<Item = MapForm>) -> Subspace {
    let mut reducer = RowReducer::new(d * d);
    for form in forms {
        for row in form.rows() {
            reducer.push(row);
        }
    }
    reducer.kernel()
}

fn derivation_forms(a: &Algebra) -> Vec<MapForm> {
    let d = a.dim();
    let mut forms = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let (ei, ej) = (a.basis(i), a.basis(j));
            let lhs = MapForm::apply(&a.mul(&ei, &ej));
            let rhs = MapForm::apply(&ei).right(a, &ej).add(&MapForm::apply(&ej).left(a, &ei));
            forms.push(lhs.sub(&rhs));
        }
    }
    forms
}

fn jordan_derivation_forms(a: &Algebra) -> Vec<MapForm> {
    let d = a.dim();
    let mut forms = Vec::new();
    for i in 0..d {
        for j in i..d {
            let (ei, ej) = (a.basis(i), a.basis(j));
            let (di, dj) = (MapForm::apply(&ei), MapForm::apply(&ej));
            let lhs = MapForm::apply(&a.jordan(&ei, &ej));
            let rhs = di
                .right(a, &ej)
                .add(&di.left(a, &ej))
                .add(&dj.right(a, &ei))
                .add(&dj.left(a, &ei));
            forms.push(lhs.sub(&rhs));
        }
    }
    forms
}

fn commuting_forms(a: &Algebra) -> Vec<MapForm> {
    let d = a.dim();
    let mut forms = Vec::new();
    for i in 0..d {
        for j in i..d {
            let (ei, ej) = (a.basis(i), a.basis(j));
            let (di, dj) = (MapForm::apply(&ei), MapForm::apply(&ej));
            let bracket_i = di.right(a, &ej).sub(&di.left(a, &ej));
            let bracket_j = dj.right(a, &ei).sub(&dj.left(a, &ei));
            forms.push(bracket_i.add(&bracket_j));
        }
    }
    forms
}

/// All derivations `D(xy) = D(x)y + xD(y)`, as vectorized maps.
pub fn derivation_space(a: &Algebra) -> Subspace {
    kernel_of(a.dim(), derivation_forms(a))
}

/// All Jordan derivations, via the polarized condition on basis pairs.
pub fn jordan_derivation_space(a: &Algebra) -> Subspace {
    kernel_of(a.dim(), jordan_derivation_forms(a))
}

/// Jordan derivations `D` that are also commuting: `D(x)x = xD(x)`.
pub fn commuting_jordan_derivation_space(a: &Algebra) -> Subspace {
    kernel_of(
        a.dim(),
        jordan_derivation_forms(a).into_iter().chain(commuting_forms(a)),
    )
}
