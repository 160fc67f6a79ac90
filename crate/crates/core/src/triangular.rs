//! Triangular algebras `Tri(A, M, B)`: formal 2x2 upper-triangular arrays
//! `[a m; 0 b]` under the usual matrix operations.
//!
//! Basis order is always (A-block, M-block, B-block).

use std::ops::Range;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{Algebra, Element, Side};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, solve, Matrix, Rational, Subspace};

/// An `(A, B)`-bimodule given by action tensors on bases.
///
/// `left[i][m][n]` is the coefficient of `m_n` in `a_i . m_m`;
/// `right[m][j][n]` is the coefficient of `m_n` in `m_m . b_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    dim: usize,
    dim_a: usize,
    dim_b: usize,
    left: Vec<Rational>,
    right: Vec<Rational>,
}

impl Bimodule {
    pub fn new(
        dim: usize,
        left: Vec<Vec<Vec<Rational>>>,
        right: Vec<Vec<Vec<Rational>>>,
    ) -> Result<Self> {
        let dim_a = left.len();
        let dim_b = right.first().map_or(0, Vec::len);
        let shape_err = |what: &str| Error::InvalidComponent(format!("{what} has the wrong shape"));
        let mut flat_left = Vec::with_capacity(dim_a * dim * dim);
        for slab in left {
            if slab.len() != dim {
                return Err(shape_err("left_action"));
            }
            for fiber in slab {
                if fiber.len() != dim {
                    return Err(shape_err("left_action"));
                }
                flat_left.extend(fiber);
            }
        }
        if right.len() != dim {
            return Err(shape_err("right_action"));
        }
        let mut flat_right = Vec::with_capacity(dim * dim_b * dim);
        for slab in right {
            if slab.len() != dim_b {
                return Err(shape_err("right_action"));
            }
            for fiber in slab {
                if fiber.len() != dim {
                    return Err(shape_err("right_action"));
                }
                flat_right.extend(fiber);
            }
        }
        Ok(Bimodule {
            dim,
            dim_a,
            dim_b,
            left: flat_left,
            right: flat_right,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn left_coeff(&self, i: usize, m: usize, n: usize) -> &Rational {
        &self.left[(i * self.dim + m) * self.dim + n]
    }

    pub fn right_coeff(&self, m: usize, j: usize, n: usize) -> &Rational {
        &self.right[(m * self.dim_b + j) * self.dim + n]
    }

    pub fn left_tensor(&self) -> Vec<Vec<Vec<Rational>>> {
        (0..self.dim_a)
            .map(|i| {
                (0..self.dim)
                    .map(|m| (0..self.dim).map(|n| self.left_coeff(i, m, n).clone()).collect())
                    .collect()
            })
            .collect()
    }

    pub fn right_tensor(&self) -> Vec<Vec<Vec<Rational>>> {
        (0..self.dim)
            .map(|m| {
                (0..self.dim_b)
                    .map(|j| (0..self.dim).map(|n| self.right_coeff(m, j, n).clone()).collect())
                    .collect()
            })
            .collect()
    }

    /// `a . m` with `a` in A-coordinates and `m` in M-coordinates.
    pub fn act_left(&self, a: &Element, m: &Element) -> Element {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, ai) in a.support() {
            for (mm, mv) in m.support() {
                let s = ai * mv;
                for (n, o) in out.iter_mut().enumerate() {
                    let c = self.left_coeff(i, mm, n);
                    if !c.is_zero() {
                        *o += &s * c;
                    }
                }
            }
        }
        Element::new(out)
    }

    /// `m . b` with `m` in M-coordinates and `b` in B-coordinates.
    pub fn act_right(&self, m: &Element, b: &Element) -> Element {
        let mut out = vec![Rational::zero(); self.dim];
        for (mm, mv) in m.support() {
            for (j, bj) in b.support() {
                let s = mv * bj;
                for (n, o) in out.iter_mut().enumerate() {
                    let c = self.right_coeff(mm, j, n);
                    if !c.is_zero() {
                        *o += &s * c;
                    }
                }
            }
        }
        Element::new(out)
    }

    /// Every violated module axiom, as human-readable descriptions.
    pub fn axiom_failures(&self, a: &Algebra, b: &Algebra) -> Vec<String> {
        let mut failures = Vec::new();
        if a.dim() != self.dim_a || b.dim() != self.dim_b {
            failures.push(format!(
                "action shapes ({}, {}) do not match component dimensions ({}, {})",
                self.dim_a,
                self.dim_b,
                a.dim(),
                b.dim()
            ));
            return failures;
        }
        let ms: Vec<Element> = (0..self.dim).map(|m| Element::basis(self.dim, m)).collect();
        for (mi, m) in ms.iter().enumerate() {
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    let (ai, aj) = (a.basis(i), a.basis(j));
                    if self.act_left(&a.mul(&ai, &aj), m) != self.act_left(&ai, &self.act_left(&aj, m)) {
                        failures.push(format!("(a{i} a{j}) m{mi} != a{i} (a{j} m{mi})"));
                    }
                }
            }
            for i in 0..b.dim() {
                for j in 0..b.dim() {
                    let (bi, bj) = (b.basis(i), b.basis(j));
                    if self.act_right(m, &b.mul(&bi, &bj)) != self.act_right(&self.act_right(m, &bi), &bj) {
                        failures.push(format!("m{mi} (b{i} b{j}) != (m{mi} b{i}) b{j}"));
                    }
                }
            }
            for i in 0..a.dim() {
                for j in 0..b.dim() {
                    let (ai, bj) = (a.basis(i), b.basis(j));
                    if self.act_right(&self.act_left(&ai, m), &bj) != self.act_left(&ai, &self.act_right(m, &bj)) {
                        failures.push(format!("(a{i} m{mi}) b{j} != a{i} (m{mi} b{j})"));
                    }
                }
            }
            if let Some(u) = a.unit() {
                if self.act_left(u, m) != *m {
                    failures.push(format!("1_A m{mi} != m{mi}"));
                }
            }
            if let Some(u) = b.unit() {
                if self.act_right(m, u) != *m {
                    failures.push(format!("m{mi} 1_B != m{mi}"));
                }
            }
        }
        failures
    }
}

/// Index ranges of the three blocks inside `Tri(A, M, B)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockMap {
    pub a: Range<usize>,
    pub m: Range<usize>,
    pub b: Range<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Faithfulness {
    pub left: bool,
    pub right: bool,
}

impl Faithfulness {
    pub fn both(&self) -> bool {
        self.left && self.right
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularAlgebra {
    algebra: Algebra,
    blocks: BlockMap,
    a: Algebra,
    b: Algebra,
    module: Bimodule,
}

impl TriangularAlgebra {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> Algebra {
        self.algebra
    }

    pub fn blocks(&self) -> &BlockMap {
        &self.blocks
    }

    pub fn component_a(&self) -> &Algebra {
        &self.a
    }

    pub fn component_b(&self) -> &Algebra {
        &self.b
    }

    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn faithfulness(&self) -> Faithfulness {
        check_faithful(&self.module, &self.a, &self.b)
    }

    /// Replaces the basis labels of the assembled algebra.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        let a = &self.algebra;
        let unit = a.unit().map(|u| u.coords().to_vec());
        self.algebra = Algebra::new(a.dense_structure(), unit, Some(labels))?;
        Ok(self)
    }

    /// The center computed blockwise: `a + b` with `a` in Z(A), `b` in Z(B)
    /// and `a m = m b` for every `m`.
    pub fn center_by_formula(&self) -> Subspace {
        center_by_formula(self)
    }
}

/// Assembles `Tri(A, M, B)`; the unit is `1_A + 0 + 1_B`.
pub fn build_triangular(a: &Algebra, b: &Algebra, module: &Bimodule) -> Result<TriangularAlgebra> {
    if module.dim() == 0 {
        return Err(Error::EmptyModule);
    }
    for (name, comp) in [("A", a), ("B", b)] {
        let report = comp.validate();
        if !report.passed() {
            return Err(Error::InvalidComponent(format!(
                "{name} is not an associative unital algebra ({} associativity failures, unit missing: {}, {} unit failures)",
                report.associativity_failures.len(),
                report.unit_missing,
                report.unit_failures.len()
            )));
        }
    }
    let failures = module.axiom_failures(a, b);
    if let Some(first) = failures.first() {
        return Err(Error::InvalidComponent(format!(
            "bimodule axioms fail in {} places, first: {first}",
            failures.len()
        )));
    }
    let (da, dm, db) = (a.dim(), module.dim(), b.dim());
    let blocks = BlockMap {
        a: 0..da,
        m: da..da + dm,
        b: da + dm..da + dm + db,
    };
    let d = da + dm + db;
    let product = |i: usize, j: usize| -> Vec<(usize, Rational)> {
        let in_a = |x: usize| x < da;
        let in_m = |x: usize| (da..da + dm).contains(&x);
        let in_b = |x: usize| x >= da + dm;
        if in_a(i) && in_a(j) {
            a.basis_product(i, j).iter().map(|(k, c)| (*k, c.clone())).collect()
        } else if in_a(i) && in_m(j) {
            (0..dm)
                .map(|n| (da + n, module.left_coeff(i, j - da, n).clone()))
                .filter(|(_, c)| !c.is_zero())
                .collect()
        } else if in_m(i) && in_b(j) {
            (0..dm)
                .map(|n| (da + n, module.right_coeff(i - da, j - da - dm, n).clone()))
                .filter(|(_, c)| !c.is_zero())
                .collect()
        } else if in_b(i) && in_b(j) {
            b.basis_product(i - da - dm, j - da - dm)
                .iter()
                .map(|(k, c)| (da + dm + k, c.clone()))
                .collect()
        } else {
            Vec::new()
        }
    };
    let mut unit = vec![Rational::zero(); d];
    for (k, c) in a.require_unit()?.support() {
        unit[k] = c.clone();
    }
    for (k, c) in b.require_unit()?.support() {
        unit[da + dm + k] = c.clone();
    }
    let labels = a
        .labels()
        .iter()
        .map(|l| format!("A.{l}"))
        .chain((0..dm).map(|n| format!("M.m{n}")))
        .chain(b.labels().iter().map(|l| format!("B.{l}")))
        .collect();
    let algebra = Algebra::from_products(d, product, Some(unit), Some(labels))?;
    Ok(TriangularAlgebra {
        algebra,
        blocks,
        a: a.clone(),
        b: b.clone(),
        module: module.clone(),
    })
}

/// Left faithfulness: `a . M = 0` forces `a = 0`. Right: `M . b = 0` forces `b = 0`.
pub fn check_faithful(module: &Bimodule, a: &Algebra, b: &Algebra) -> Faithfulness {
    let dm = module.dim();
    let annihilated = |dim: usize, act: &dyn Fn(usize, usize) -> Element| {
        let mut rows = Vec::new();
        for m in 0..dm {
            // column i of this block is (basis_i acting on m_m)
            let cols: Vec<Element> = (0..dim).map(|i| act(i, m)).collect();
            for n in 0..dm {
                rows.push(cols.iter().map(|c| c.coords()[n].clone()).collect());
            }
        }
        if rows.is_empty() {
            return dim == 0;
        }
        nullspace(&Matrix::from_rows(dim, rows).expect("row length")).is_zero()
    };
    let left = annihilated(a.dim(), &|i, m| {
        module.act_left(&Element::basis(a.dim(), i), &Element::basis(dm, m))
    });
    let right = annihilated(b.dim(), &|j, m| {
        module.act_right(&Element::basis(dm, m), &Element::basis(b.dim(), j))
    });
    Faithfulness { left, right }
}

pub fn center_by_formula(t: &TriangularAlgebra) -> Subspace {
    let (a, b, module) = (&t.a, &t.b, &t.module);
    let (da, db, dm) = (a.dim(), b.dim(), module.dim());
    let width = da + db;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    // a in Z(A), b in Z(B)
    for (offset, comp) in [(0, a), (da, b)] {
        for i in 0..comp.dim() {
            let e = comp.basis(i);
            let comm = comp
                .mult_operator(&e, Side::Left)
                .matrix()
                .sub(comp.mult_operator(&e, Side::Right).matrix())
                .expect("square");
            for r in comm.row_vecs() {
                let mut row = vec![Rational::zero(); width];
                row[offset..offset + comp.dim()].clone_from_slice(&r);
                rows.push(row);
            }
        }
    }
    // a m_j - m_j b = 0
    for j in 0..dm {
        for n in 0..dm {
            let mut row = vec![Rational::zero(); width];
            for (i, slot) in row[..da].iter_mut().enumerate() {
                *slot = module.left_coeff(i, j, n).clone();
            }
            for k in 0..db {
                row[da + k] = -module.right_coeff(j, k, n).clone();
            }
            rows.push(row);
        }
    }
    let solutions = nullspace(&Matrix::from_rows(width, rows).expect("row length"));
    let d = t.algebra.dim();
    Subspace::span(
        d,
        solutions.basis_vectors().into_iter().map(|v| {
            let mut full = vec![Rational::zero(); d];
            full[t.blocks.a.clone()].clone_from_slice(&v[..da]);
            full[t.blocks.b.clone()].clone_from_slice(&v[da..]);
            full
        }),
    )
}

/// Coordinates of `target` in the span of `basis` (all flattened matrices).
fn coordinates(basis: &[Matrix], target: &Matrix) -> Option<Vec<Rational>> {
    let len = target.entries().len();
    let mut m = Matrix::zeros(len, basis.len());
    for (k, b) in basis.iter().enumerate() {
        for (r, e) in b.entries().iter().enumerate() {
            m[(r, k)] = e.clone();
        }
    }
    solve(&m, target.entries()).ok().flatten()
}

fn check_independent(basis: &[Matrix], what: &str) -> Result<()> {
    let Some(first) = basis.first() else {
        return Ok(());
    };
    let rows = basis.iter().map(|b| b.entries().to_vec()).collect();
    let stacked = Matrix::from_rows(first.entries().len(), rows)?;
    if stacked.rank() != basis.len() {
        return Err(Error::InvalidComponent(format!("{what} basis is linearly dependent")));
    }
    Ok(())
}

/// The algebra spanned by the given square matrices, which must be linearly
/// independent, closed under multiplication and contain the identity.
pub fn matrix_subalgebra(basis: &[Matrix], labels: Option<Vec<String>>) -> Result<Algebra> {
    check_independent(basis, "subalgebra")?;
    let size = basis.first().map_or(0, Matrix::rows);
    let mut structure = vec![vec![Vec::new(); basis.len()]; basis.len()];
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let xy = x.mul(y)?;
            structure[i][j] = coordinates(basis, &xy).ok_or_else(|| {
                Error::InvalidComponent(format!("span not closed under multiplication (b{i} b{j})"))
            })?;
        }
    }
    let unit = coordinates(basis, &Matrix::identity(size))
        .ok_or_else(|| Error::InvalidComponent("span does not contain the identity".into()))?;
    Algebra::new(structure, Some(unit), labels)
}

/// `Tri(A, M, B)` realized inside block matrices: `A` spanned by `p x p`
/// matrices, `M` by `p x q` matrices stable under both actions, `B` by `q x q`.
pub fn matrix_triangular(
    a_basis: &[Matrix],
    m_basis: &[Matrix],
    b_basis: &[Matrix],
) -> Result<TriangularAlgebra> {
    let a = matrix_subalgebra(a_basis, None)?;
    let b = matrix_subalgebra(b_basis, None)?;
    check_independent(m_basis, "module")?;
    let dm = m_basis.len();
    let coords = |target: Matrix, what: String| {
        coordinates(m_basis, &target)
            .ok_or_else(|| Error::InvalidComponent(format!("module not stable under {what}")))
    };
    let mut left = vec![vec![Vec::new(); dm]; a_basis.len()];
    for (i, x) in a_basis.iter().enumerate() {
        for (m, y) in m_basis.iter().enumerate() {
            left[i][m] = coords(x.mul(y)?, format!("a{i} . m{m}"))?;
        }
    }
    let mut right = vec![vec![Vec::new(); b_basis.len()]; dm];
    for (m, y) in m_basis.iter().enumerate() {
        for (j, z) in b_basis.iter().enumerate() {
            right[m][j] = coords(y.mul(z)?, format!("m{m} . b{j}"))?;
        }
    }
    let module = Bimodule::new(dm, left, right)?;
    build_triangular(&a, &b, &module)
}

fn unit_matrix(rows: usize, cols: usize, p: usize, q: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    m[(p, q)] = Rational::one();
    m
}

/// `T_k(Q)`, the upper-triangular `k x k` matrices, as `Tri(Q, Q^{1 x (k-1)}, T_{k-1}(Q))`.
/// Basis: matrix units `e_pq` (`p <= q`) in row-major order.
pub fn upper_triangular(k: usize) -> Result<TriangularAlgebra> {
    if k < 2 {
        return Err(Error::OutOfRange {
            what: "upper-triangular size (need k >= 2)",
            value: k as i64,
        });
    }
    let a_basis = [Matrix::identity(1)];
    let m_basis: Vec<Matrix> = (0..k - 1).map(|q| unit_matrix(1, k - 1, 0, q)).collect();
    let b_basis: Vec<Matrix> = (0..k - 1)
        .flat_map(|p| (p..k - 1).map(move |q| (p, q)))
        .map(|(p, q)| unit_matrix(k - 1, k - 1, p, q))
        .collect();
    let labels = (0..k)
        .flat_map(|p| (p..k).map(move |q| format!("e{}{}", p + 1, q + 1)))
        .collect();
    matrix_triangular(&a_basis, &m_basis, &b_basis)?.with_labels(labels)
}

/// `Tri(M_p(Q), Q^{p x q}, M_q(Q))` with matrix-unit bases.
pub fn matrix_bimodule(p: usize, q: usize) -> Result<TriangularAlgebra> {
    if p == 0 || q == 0 {
        return Err(Error::OutOfRange {
            what: "matrix block size",
            value: 0,
        });
    }
    let units = |r: usize, c: usize| -> Vec<Matrix> {
        (0..r)
            .flat_map(|i| (0..c).map(move |j| (i, j)))
            .map(|(i, j)| unit_matrix(r, c, i, j))
            .collect()
    };
    let label = |prefix: &str, r: usize, c: usize| -> Vec<String> {
        (0..r)
            .flat_map(|i| (0..c).map(move |j| (i, j)))
            .map(|(i, j)| format!("{prefix}{}{}", i + 1, j + 1))
            .collect()
    };
    let labels = label("a", p, p)
        .into_iter()
        .chain(label("m", p, q))
        .chain(label("b", q, q))
        .collect();
    matrix_triangular(&units(p, p), &units(p, q), &units(q, q))?.with_labels(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, SubspaceRelation};

    fn scalar_algebra() -> Algebra {
        matrix_subalgebra(&[Matrix::identity(1)], None).unwrap()
    }

    fn scalar_module(coeff: i64) -> Bimodule {
        Bimodule::new(1, vec![vec![vec![rat(coeff)]]], vec![vec![vec![rat(coeff)]]]).unwrap()
    }

    #[test]
    fn smallest_triangular_is_t2() {
        let q = scalar_algebra();
        let t = build_triangular(&q, &q, &scalar_module(1)).unwrap();
        let t2 = upper_triangular(2).unwrap();
        assert_eq!(t.algebra().dense_structure(), t2.algebra().dense_structure());
        assert_eq!(t.algebra().unit(), t2.algebra().unit());
        assert!(t.algebra().validate().passed());
        assert_eq!(t.faithfulness(), Faithfulness { left: true, right: true });
    }

    #[test]
    fn dimensions() {
        assert_eq!(upper_triangular(2).unwrap().algebra().dim(), 3);
        assert_eq!(upper_triangular(3).unwrap().algebra().dim(), 6);
        assert_eq!(upper_triangular(4).unwrap().algebra().dim(), 10);
        let t = matrix_bimodule(2, 1).unwrap();
        assert_eq!(t.algebra().dim(), 7);
        assert!(t.algebra().validate().passed());
        assert!(t.faithfulness().both());
        assert!(upper_triangular(0).is_err());
        assert!(matrix_bimodule(0, 1).is_err());
    }

    #[test]
    fn upper_triangular_is_matrix_multiplication() {
        let k = 3;
        let t = upper_triangular(k).unwrap();
        let a = t.algebra();
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|p| (p..k).map(move |q| (p, q))).collect();
        for (i, &(p, q)) in pairs.iter().enumerate() {
            for (j, &(r, s)) in pairs.iter().enumerate() {
                let prod = a.mul(&a.basis(i), &a.basis(j));
                let expected = if q == r {
                    a.basis(pairs.iter().position(|&x| x == (p, s)).unwrap())
                } else {
                    a.zero()
                };
                assert_eq!(prod, expected);
            }
        }
        assert_eq!(a.labels()[1], "e12");
    }

    #[test]
    fn zero_module_rejected() {
        let q = scalar_algebra();
        let empty = Bimodule::new(0, vec![vec![]], vec![]).unwrap();
        assert_eq!(build_triangular(&q, &q, &empty), Err(Error::EmptyModule));
    }

    #[test]
    fn faithfulness_cases() {
        let q = scalar_algebra();
        assert!(check_faithful(&scalar_module(1), &q, &q).both());
        let t = matrix_bimodule(2, 1).unwrap();
        assert!(check_faithful(t.module(), t.component_a(), t.component_b()).left);
        let dead = Bimodule::new(1, vec![vec![vec![rat(0)]]], vec![vec![vec![rat(1)]]]).unwrap();
        let f = check_faithful(&dead, &q, &q);
        assert!(!f.left && f.right);
        // and it is not a module at all, since 1 . m must be m
        assert!(build_triangular(&q, &q, &dead).is_err());
    }

    #[test]
    fn center_formula_agrees() {
        for t in [upper_triangular(2).unwrap(), upper_triangular(3).unwrap(), matrix_bimodule(2, 1).unwrap()] {
            let formula = t.center_by_formula();
            assert_eq!(formula.dim(), 1);
            assert_eq!(formula.compare(&t.algebra().center()).unwrap(), SubspaceRelation::Equal);
            assert!(formula.contains(t.algebra().unit().unwrap().coords()));
        }
    }

    #[test]
    fn non_closed_span_rejected() {
        let e12 = unit_matrix(2, 2, 0, 1);
        assert!(matrix_subalgebra(&[Matrix::identity(2), e12.transpose(), e12], None).is_err());
    }
}
