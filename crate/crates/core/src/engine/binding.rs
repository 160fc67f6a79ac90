use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{Algebra, Element, LinearMap};
use crate::error::{Error, Result};

/// Extra linear conditions on the unknown maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SideConstraint {
    /// `map(1)` lies in the center.
    UnitImageCentral { map: String },
    /// The two maps coincide.
    Tie { left: String, right: String },
}

impl SideConstraint {
    pub fn unit_image_central(map: impl Into<String>) -> Self {
        SideConstraint::UnitImageCentral { map: map.into() }
    }

    pub fn tie(left: impl Into<String>, right: impl Into<String>) -> Self {
        SideConstraint::Tie {
            left: left.into(),
            right: right.into(),
        }
    }

    pub fn maps(&self) -> Vec<&str> {
        match self {
            SideConstraint::UnitImageCentral { map } => vec![map],
            SideConstraint::Tie { left, right } => vec![left, right],
        }
    }
}

impl fmt::Display for SideConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SideConstraint::UnitImageCentral { map } => write!(f, "{map}(1) in Z"),
            SideConstraint::Tie { left, right } => write!(f, "{left} = {right}"),
        }
    }
}

fn map_name(text: &str) -> Option<&str> {
    let mut chars = text.chars();
    let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    ok.then_some(text)
}

/// Accepts `F(1) in Z` and `F = G`.
impl FromStr for SideConstraint {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Syntax {
            pos: 0,
            message: format!("expected `F(1) in Z` or `F = G`, found `{text}`"),
        };
        if let Some((lhs, rhs)) = text.split_once(" in ") {
            let name = lhs.trim().strip_suffix("(1)").map(str::trim).and_then(map_name);
            return match (name, rhs.trim()) {
                (Some(map), "Z") => Ok(SideConstraint::unit_image_central(map)),
                _ => Err(bad()),
            };
        }
        let (lhs, rhs) = text.split_once('=').ok_or_else(bad)?;
        match (map_name(lhs.trim()), map_name(rhs.trim())) {
            (Some(l), Some(r)) => Ok(SideConstraint::tie(l, r)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralValue {
    pub element: Element,
    pub require_invertible: bool,
}

/// Values for the symbols of an identity. Maps that are not fixed here are
/// the unknowns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Binding {
    pub centrals: BTreeMap<String, CentralValue>,
    pub fixed: BTreeMap<String, LinearMap>,
    pub constraints: Vec<SideConstraint>,
}

impl Binding {
    pub fn new() -> Self {
        Binding::default()
    }

    pub fn central(mut self, name: impl Into<String>, element: Element) -> Self {
        self.centrals.insert(
            name.into(),
            CentralValue {
                element,
                require_invertible: false,
            },
        );
        self
    }

    /// A central value that must also be invertible.
    pub fn invertible_central(mut self, name: impl Into<String>, element: Element) -> Self {
        self.centrals.insert(
            name.into(),
            CentralValue {
                element,
                require_invertible: true,
            },
        );
        self
    }

    pub fn fixed(mut self, name: impl Into<String>, map: LinearMap) -> Self {
        self.fixed.insert(name.into(), map);
        self
    }

    pub fn constrain(mut self, constraint: SideConstraint) -> Self {
        self.constraints.push(constraint);
        self
    }

    /// Checks every central value (centrality, and invertibility where
    /// required) and the dimensions of the fixed maps.
    pub fn checked_centrals(&self, algebra: &Algebra) -> Result<BTreeMap<String, Element>> {
        let d = algebra.dim();
        let mut out = BTreeMap::new();
        for (name, value) in &self.centrals {
            if value.element.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: value.element.dim(),
                });
            }
            if !algebra.is_central(&value.element) {
                return Err(Error::NotCentral(name.clone()));
            }
            if value.require_invertible && algebra.invert(&value.element).is_none() {
                return Err(Error::NotInvertible(name.clone()));
            }
            out.insert(name.clone(), value.element.clone());
        }
        for map in self.fixed.values() {
            if map.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: map.dim(),
                });
            }
        }
        Ok(out)
    }
}
