use std::collections::HashSet;

use num_traits::Zero;

use super::binding::Binding;
use super::compile::{compile_constraints, CompiledSystem, Layout, SparseRow};
use crate::algebra::LinearMap;
use crate::dsl::NormalizedIdentity;
use crate::error::{Error, Result};
use crate::linalg::{Rational, RowReducer, Subspace};

/// All tuples of unknown maps satisfying a compiled system:
/// `particular + space` (`particular` is absent for homogeneous systems).
#[derive(Clone, Debug)]
pub struct SolutionSpace {
    pub layout: Layout,
    pub space: Subspace,
    pub particular: Option<Vec<Rational>>,
    /// One tuple of maps (in layout order) per basis vector of `space`.
    pub decoded_basis: Vec<Vec<LinearMap>>,
    pub rank: usize,
}

impl SolutionSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn decode(&self, v: &[Rational]) -> Result<Vec<LinearMap>> {
        self.layout.decode(v)
    }

    pub fn encode(&self, maps: &[LinearMap]) -> Result<Vec<Rational>> {
        self.layout.encode(maps)
    }

    /// Whether the tuple satisfies the compiled system.
    pub fn contains(&self, maps: &[LinearMap]) -> Result<bool> {
        let mut v = self.encode(maps)?;
        if let Some(p) = &self.particular {
            for (x, q) in v.iter_mut().zip(p) {
                *x -= q;
            }
        }
        Ok(self.space.contains(&v))
    }
}

/// Scales a row so its first entry is one; duplicates then compare equal.
fn normalized(row: &SparseRow) -> SparseRow {
    let lead = row[0].1.recip();
    row.iter().map(|(c, v)| (*c, v * &lead)).collect()
}

pub fn solve_system(system: &CompiledSystem) -> Result<SolutionSpace> {
    let width = system.layout.width();
    let mut reducer = RowReducer::new(width + 1);
    let mut seen: HashSet<SparseRow> = HashSet::new();
    for row in &system.rows {
        if row.is_empty() {
            continue;
        }
        let row = normalized(row);
        if !seen.insert(row.clone()) {
            continue;
        }
        let mut dense = vec![Rational::zero(); width + 1];
        for (c, v) in row {
            dense[c] = v;
        }
        reducer.push(dense);
    }
    let rank = reducer.rank();
    let (particular, space) = reducer.affine_solution().ok_or(Error::Inconsistent)?;
    let decoded_basis = space
        .basis_vectors()
        .iter()
        .map(|v| system.layout.decode(v))
        .collect::<Result<_>>()?;
    let particular = if system.is_homogeneous() {
        None
    } else {
        Some(particular)
    };
    Ok(SolutionSpace {
        layout: system.layout.clone(),
        space,
        particular,
        decoded_basis,
        rank,
    })
}

pub fn solve_identity(
    identity: &NormalizedIdentity,
    algebra: &crate::algebra::Algebra,
    binding: &Binding,
) -> Result<SolutionSpace> {
    let system = compile_constraints(identity, algebra, binding)?;
    solve_system(&system)
}

/// `(L_a ∘ first, second, ...)`: applies left multiplication by `a` to the
/// first map of every tuple in `space`.
pub fn scale_first_map(
    space: &Subspace,
    layout: &Layout,
    algebra: &crate::algebra::Algebra,
    a: &crate::algebra::Element,
) -> Result<Subspace> {
    let op = algebra.mult_operator(a, crate::algebra::Side::Left);
    let mut vectors = Vec::new();
    for v in space.basis_vectors() {
        let mut maps = layout.decode(&v)?;
        if let Some(first) = maps.first_mut() {
            *first = op.compose(first);
        }
        vectors.push(layout.encode(&maps)?);
    }
    Ok(Subspace::span(layout.width(), vectors))
}
