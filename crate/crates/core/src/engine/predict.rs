//! Closed-form spaces of solutions, laid out like a [`SolutionSpace`] over the
//! unknowns `(Psi, Omega)`.
//!
//! [`SolutionSpace`]: super::SolutionSpace

use crate::algebra::{derivation_space, Algebra, Element, LinearMap, Side};
use crate::error::{Error, Result};
use crate::linalg::{frac, Rational, Subspace};

fn pair(first: &LinearMap, second: &LinearMap) -> Vec<Rational> {
    let mut v = first.to_vector();
    v.extend(second.to_vector());
    v
}

fn center_elements(a: &Algebra) -> Vec<Element> {
    a.center().basis_vectors().into_iter().map(Element::new).collect()
}

/// `{(L_gamma L_c, L_c) : c central}` for a central invertible `gamma`.
pub fn predicted_central_pairs(a: &Algebra, gamma: &Element) -> Result<Subspace> {
    let d = a.dim();
    if gamma.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: gamma.dim(),
        });
    }
    if !a.is_central(gamma) {
        return Err(Error::NotCentral("gamma".into()));
    }
    if a.invert(gamma).is_none() {
        return Err(Error::NotInvertible("gamma".into()));
    }
    let l_gamma = a.mult_operator(gamma, Side::Left);
    let vectors = center_elements(a).into_iter().map(|c| {
        let l_c = a.mult_operator(&c, Side::Left);
        pair(&l_gamma.compose(&l_c), &l_c)
    });
    Ok(Subspace::span(2 * d * d, vectors))
}

/// `{L_c : c central}` for a single unknown map.
pub fn predicted_central_multipliers(a: &Algebra) -> Subspace {
    let d = a.dim();
    let vectors = center_elements(a)
        .into_iter()
        .map(|c| a.mult_operator(&c, Side::Left).to_vector());
    Subspace::span(d * d, vectors)
}

/// `{(D/n + L_z, D + L_z) : D a derivation, z central}`.
pub fn predicted_generalized_space(a: &Algebra, n: u32) -> Result<Subspace> {
    if n < 2 {
        return Err(Error::DegreeTooLow(n));
    }
    let d = a.dim();
    let inv_n = frac(1, i64::from(n));
    let mut vectors = Vec::new();
    for v in derivation_space(a).basis_vectors() {
        let delta = LinearMap::from_vector(d, &v)?;
        vectors.push(pair(&delta.scale(&inv_n), &delta));
    }
    for z in center_elements(a) {
        let l_z = a.mult_operator(&z, Side::Left);
        vectors.push(pair(&l_z, &l_z));
    }
    Ok(Subspace::span(2 * d * d, vectors))
}
