//! The identity language: one variable `X`, unknown maps applied to powers of
//! `X`, named central elements, rational coefficients and non-commutative `*`.

mod ast;
mod parser;
mod shapes;

use std::collections::BTreeSet;

pub use ast::{Expr, Factor, Identity, Term};
pub use shapes::{IdentityShape, GAMMA, OMEGA, PSI};

use crate::error::{Error, Result};

/// Parses an identity and checks that every term is linear in the maps and
/// that all terms share one degree in `X`.
pub fn parse_identity(text: &str) -> Result<Identity> {
    let identity = parser::parse_raw(text)?;
    check_linear(&identity)?;
    identity_degree(&identity)?;
    Ok(identity)
}

/// Parses a homogeneous equation that may contain several map applications
/// per term, or none. Only meaningful once every map is bound to a fixed value.
pub fn parse_equation(text: &str) -> Result<(Identity, u32)> {
    let identity = parser::parse_raw(text)?;
    let degree = identity_degree(&identity)?.unwrap_or(0);
    Ok((identity, degree))
}

fn check_linear(identity: &Identity) -> Result<()> {
    for (s, side) in identity.sides.iter().enumerate() {
        for (t, term) in side.terms.iter().enumerate() {
            let maps = term.map_apps().count();
            if maps > 1 || (maps == 0 && !term.is_zero()) {
                return Err(Error::NotLinear {
                    side: s,
                    term: t,
                    maps,
                });
            }
        }
    }
    Ok(())
}

/// Common degree of all nonzero terms, or `None` if every term is zero.
fn identity_degree(identity: &Identity) -> Result<Option<u32>> {
    let mut degree = None;
    for (s, side) in identity.sides.iter().enumerate() {
        for (t, term) in side.terms.iter().enumerate() {
            if term.is_zero() {
                continue;
            }
            match degree {
                None => degree = Some(term.degree()),
                Some(expected) if expected != term.degree() => {
                    return Err(Error::Inhomogeneous {
                        expected,
                        found: term.degree(),
                        side: s,
                        term: t,
                    })
                }
                Some(_) => {}
            }
        }
    }
    Ok(degree)
}

/// Names that may appear in an identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolTable {
    pub maps: BTreeSet<String>,
    pub centrals: BTreeSet<String>,
}

impl SymbolTable {
    pub fn new<M, C>(maps: M, centrals: C) -> Self
    where
        M: IntoIterator,
        M::Item: Into<String>,
        C: IntoIterator,
        C::Item: Into<String>,
    {
        SymbolTable {
            maps: maps.into_iter().map(Into::into).collect(),
            centrals: centrals.into_iter().map(Into::into).collect(),
        }
    }

    /// Declares whatever the identity uses.
    pub fn inferred(identity: &Identity) -> Self {
        let mut table = SymbolTable::default();
        for term in identity.sides.iter().flat_map(|s| &s.terms) {
            for factor in &term.factors {
                match factor {
                    Factor::MapApp { map, .. } => {
                        table.maps.insert(map.clone());
                    }
                    Factor::Central(c) => {
                        table.centrals.insert(c.clone());
                    }
                    Factor::Power(_) => {}
                }
            }
        }
        table
    }
}

/// A validated identity: its degree, the symbols it uses (in order of first
/// appearance) and the differences `side_i - side_{i+1}` that must vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedIdentity {
    pub source: Identity,
    pub degree: u32,
    pub maps: Vec<String>,
    pub centrals: Vec<String>,
    pub differences: Vec<Expr>,
}

pub fn validate_identity(identity: &Identity, declared: &SymbolTable) -> Result<NormalizedIdentity> {
    normalize(identity, declared, 2)
}

/// As [`validate_identity`] but with a configurable minimum degree; used
/// internally for the linear intermediate equations of the replayed proofs.
pub(crate) fn normalize(
    identity: &Identity,
    declared: &SymbolTable,
    min_degree: u32,
) -> Result<NormalizedIdentity> {
    check_linear(identity)?;
    let degree = identity_degree(identity)?.unwrap_or(0);
    let mut maps: Vec<String> = Vec::new();
    let mut centrals: Vec<String> = Vec::new();
    for term in identity.sides.iter().flat_map(|s| &s.terms) {
        for factor in &term.factors {
            match factor {
                Factor::MapApp { map, .. } => {
                    if !declared.maps.contains(map) {
                        return Err(Error::UndeclaredSymbol(map.clone()));
                    }
                    if !maps.contains(map) {
                        maps.push(map.clone());
                    }
                }
                Factor::Central(c) => {
                    if !declared.centrals.contains(c) {
                        return Err(Error::UndeclaredSymbol(c.clone()));
                    }
                    if !centrals.contains(c) {
                        centrals.push(c.clone());
                    }
                }
                Factor::Power(_) => {}
            }
        }
    }
    if degree < min_degree {
        return Err(Error::DegreeTooLow(degree));
    }
    let differences = identity
        .sides
        .windows(2)
        .map(|pair| pair[0].minus(&pair[1]))
        .collect();
    Ok(NormalizedIdentity {
        source: identity.clone(),
        degree,
        maps,
        centrals,
        differences,
    })
}

/// Parses `text` and validates it against the symbols it uses.
pub fn parse_and_validate(text: &str) -> Result<NormalizedIdentity> {
    let identity = parse_identity(text)?;
    let table = SymbolTable::inferred(&identity);
    validate_identity(&identity, &table)
}
