use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use super::binding::{Binding, SideConstraint};
use super::eval::{multisets, Piece, Scope};
use crate::algebra::{Algebra, Element, LinearMap};
use crate::dsl::NormalizedIdentity;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};

/// Coordinates of the unknowns: each map occupies `d^2` consecutive
/// coordinates, vectorized column-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    maps: Vec<String>,
    dim: usize,
}

impl Layout {
    pub fn new(maps: Vec<String>, dim: usize) -> Self {
        Layout { maps, dim }
    }

    pub fn maps(&self) -> &[String] {
        &self.maps
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn block(&self) -> usize {
        self.dim * self.dim
    }

    pub fn width(&self) -> usize {
        self.maps.len() * self.block()
    }

    pub fn offset(&self, map: &str) -> Option<usize> {
        self.maps.iter().position(|m| m == map).map(|i| i * self.block())
    }

    pub fn encode(&self, maps: &[LinearMap]) -> Result<Vec<Rational>> {
        if maps.len() != self.maps.len() {
            return Err(Error::DimensionMismatch {
                expected: self.maps.len(),
                found: maps.len(),
            });
        }
        let mut out = Vec::with_capacity(self.width());
        for m in maps {
            if m.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: m.dim(),
                });
            }
            out.extend(m.to_vector());
        }
        Ok(out)
    }

    pub fn decode(&self, v: &[Rational]) -> Result<Vec<LinearMap>> {
        if v.len() != self.width() {
            return Err(Error::DimensionMismatch {
                expected: self.width(),
                found: v.len(),
            });
        }
        v.chunks(self.block().max(1))
            .take(self.maps.len())
            .map(|chunk| LinearMap::from_vector(self.dim, chunk))
            .collect()
    }
}

/// A sparse equation `sum_c a_c u_c + b = 0`; column `width` holds `b`.
pub type SparseRow = Vec<(usize, Rational)>;

/// The linear system equivalent to an identity plus side constraints.
#[derive(Clone, Debug)]
pub struct CompiledSystem {
    pub layout: Layout,
    /// Rows ordered by multiset, then difference expression, then output
    /// coordinate, followed by the side-constraint rows. Zero rows are kept
    /// so that the counts are predictable.
    pub rows: Vec<SparseRow>,
    pub multisets: usize,
    pub identity_rows: usize,
    pub constraint_rows: usize,
}

impl CompiledSystem {
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Dense coefficient matrix, constant column last.
    pub fn matrix(&self) -> Matrix {
        let cols = self.layout.width() + 1;
        let mut m = Matrix::zeros(self.rows.len(), cols);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                m[(r, *c)] = v.clone();
            }
        }
        m
    }

    pub fn is_homogeneous(&self) -> bool {
        let b = self.layout.width();
        self.rows.iter().all(|row| row.iter().all(|(c, _)| *c != b))
    }
}

fn sparsify(dense: Vec<Rational>) -> SparseRow {
    dense
        .into_iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

/// Unknown maps of `identity` under `binding`, in order of first appearance.
pub fn unknown_layout(identity: &NormalizedIdentity, algebra: &Algebra, binding: &Binding) -> Layout {
    let maps = identity
        .maps
        .iter()
        .filter(|m| !binding.fixed.contains_key(*m))
        .cloned()
        .collect();
    Layout::new(maps, algebra.dim())
}

pub fn compile_constraints(
    identity: &NormalizedIdentity,
    algebra: &Algebra,
    binding: &Binding,
) -> Result<CompiledSystem> {
    let centrals = binding.checked_centrals(algebra)?;
    for c in &identity.centrals {
        if !centrals.contains_key(c) {
            return Err(Error::UnresolvedSymbol(c.clone()));
        }
    }
    let layout = unknown_layout(identity, algebra, binding);
    let scope = Scope {
        algebra,
        centrals: &centrals,
        maps: &binding.fixed,
    };
    let d = algebra.dim();
    let n = identity.degree as usize;
    let sets = multisets(d, n);
    let blocks: Vec<Vec<SparseRow>> = sets
        .par_iter()
        .map(|ms| multiset_rows(&scope, &layout, identity, ms))
        .collect::<Result<_>>()?;
    let mut rows: Vec<SparseRow> = blocks.into_iter().flatten().collect();
    let identity_rows = rows.len();
    for constraint in &binding.constraints {
        rows.extend(constraint_rows(constraint, algebra, &layout, &binding.fixed)?);
    }
    Ok(CompiledSystem {
        constraint_rows: rows.len() - identity_rows,
        layout,
        rows,
        multisets: sets.len(),
        identity_rows,
    })
}

/// The `d` coordinate equations of each symmetrized difference on one multiset.
fn multiset_rows(
    scope: &Scope<'_>,
    layout: &Layout,
    identity: &NormalizedIdentity,
    multiset: &[usize],
) -> Result<Vec<SparseRow>> {
    let a = scope.algebra;
    let d = a.dim();
    let width = layout.width();
    let basis: Vec<Element> = (0..d).map(|i| a.basis(i)).collect();
    let orders = super::eval::arrangements(multiset);
    let mut out = Vec::with_capacity(d * identity.differences.len());
    for diff in &identity.differences {
        let mut block = vec![vec![Rational::zero(); width + 1]; d];
        for order in &orders {
            let args: Vec<&Element> = order.iter().map(|&i| &basis[i]).collect();
            for term in &diff.terms {
                match scope.split(term, &args)? {
                    Piece::Known(v) => {
                        for (k, c) in v.support() {
                            block[k][width] += c;
                        }
                    }
                    Piece::Linear(p) => {
                        let offset = layout
                            .offset(&p.map)
                            .ok_or_else(|| Error::UnresolvedSymbol(p.map.clone()))?;
                        for (i, e_i) in basis.iter().enumerate() {
                            let mut w = match &p.left {
                                Some(l) => a.mul(l, e_i),
                                None => e_i.clone(),
                            };
                            if let Some(r) = &p.right {
                                w = a.mul(&w, r);
                            }
                            if w.is_zero() {
                                continue;
                            }
                            for (j, arg_j) in p.arg.support() {
                                let s = &p.coeff * arg_j;
                                for (k, w_k) in w.support() {
                                    block[k][offset + j * d + i] += &s * w_k;
                                }
                            }
                        }
                    }
                }
            }
        }
        out.extend(block.into_iter().map(sparsify));
    }
    Ok(out)
}

fn constraint_rows(
    constraint: &SideConstraint,
    algebra: &Algebra,
    layout: &Layout,
    fixed: &BTreeMap<String, LinearMap>,
) -> Result<Vec<SparseRow>> {
    let d = algebra.dim();
    let width = layout.width();
    // Each map is either an unknown block or a fixed matrix.
    let coords = |name: &str| -> Result<Result<usize, &LinearMap>> {
        match (layout.offset(name), fixed.get(name)) {
            (Some(o), _) => Ok(Ok(o)),
            (None, Some(f)) => Ok(Err(f)),
            (None, None) => Err(Error::UnresolvedSymbol(name.to_string())),
        }
    };
    let mut rows = Vec::new();
    match constraint {
        SideConstraint::UnitImageCentral { map } => {
            let unit = algebra.require_unit()?;
            let normal = algebra.center().annihilator();
            for a in normal.basis_vectors() {
                let mut row = vec![Rational::zero(); width + 1];
                match coords(map)? {
                    Ok(o) => {
                        for (j, u_j) in unit.support() {
                            for (i, a_i) in a.iter().enumerate() {
                                if !a_i.is_zero() {
                                    row[o + j * d + i] += a_i * u_j;
                                }
                            }
                        }
                    }
                    Err(f) => {
                        let image = f.apply(unit);
                        row[width] = crate::linalg::dot(&a, image.coords());
                    }
                }
                rows.push(sparsify(row));
            }
        }
        SideConstraint::Tie { left, right } => {
            let (l, r) = (coords(left)?, coords(right)?);
            let fixed_value = |f: &LinearMap, idx: usize| f.matrix()[(idx % d, idx / d)].clone();
            for idx in 0..d * d {
                let mut row = vec![Rational::zero(); width + 1];
                match l {
                    Ok(o) => row[o + idx] += Rational::from_integer(1.into()),
                    Err(f) => row[width] += fixed_value(f, idx),
                }
                match r {
                    Ok(o) => row[o + idx] -= Rational::from_integer(1.into()),
                    Err(f) => row[width] -= fixed_value(f, idx),
                }
                rows.push(sparsify(row));
            }
        }
    }
    Ok(rows)
}
