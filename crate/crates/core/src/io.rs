//! Exchange documents. Every rational is written as a string `"p"` or `"p/q"`.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{Algebra, Element, LinearMap};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Matrix, Rational};
use crate::triangular::{build_triangular, Bimodule, TriangularAlgebra};

fn parse_all(values: &[String]) -> Result<Vec<Rational>> {
    values.iter().map(|s| parse_rational(s)).collect()
}

fn parse_tensor(values: &[Vec<Vec<String>>]) -> Result<Vec<Vec<Vec<Rational>>>> {
    values
        .iter()
        .map(|slab| slab.iter().map(|fiber| parse_all(fiber)).collect())
        .collect()
}

fn format_all(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn format_tensor(values: &[Vec<Vec<Rational>>]) -> Vec<Vec<Vec<String>>> {
    values
        .iter()
        .map(|slab| slab.iter().map(|fiber| format_all(fiber)).collect())
        .collect()
}

/// `structure[i][j][k]` is the coefficient of `e_k` in `e_i e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
    pub structure: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl AlgebraDocument {
    pub fn from_algebra(a: &Algebra) -> Self {
        AlgebraDocument {
            dim: a.dim(),
            unit: a.unit().map(|u| format_all(u.coords())),
            structure: format_tensor(&a.dense_structure()),
            labels: Some(a.labels().to_vec()),
        }
    }

    pub fn to_algebra(&self) -> Result<Algebra> {
        if self.structure.len() != self.dim {
            return Err(Error::InvalidAlgebra(format!(
                "dim is {} but structure has {} slabs",
                self.dim,
                self.structure.len()
            )));
        }
        let unit = self.unit.as_deref().map(parse_all).transpose()?;
        Algebra::new(parse_tensor(&self.structure)?, unit, self.labels.clone())
    }
}

/// `left_action[i][m][n]`: coefficient of `m_n` in `a_i . m_m`;
/// `right_action[m][j][n]`: coefficient of `m_n` in `m_m . b_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleDocument {
    #[serde(rename = "dimM")]
    pub dim_m: usize,
    pub left_action: Vec<Vec<Vec<String>>>,
    pub right_action: Vec<Vec<Vec<String>>>,
}

impl BimoduleDocument {
    pub fn from_bimodule(m: &Bimodule) -> Self {
        BimoduleDocument {
            dim_m: m.dim(),
            left_action: format_tensor(&m.left_tensor()),
            right_action: format_tensor(&m.right_tensor()),
        }
    }

    pub fn to_bimodule(&self) -> Result<Bimodule> {
        Bimodule::new(
            self.dim_m,
            parse_tensor(&self.left_action)?,
            parse_tensor(&self.right_action)?,
        )
    }
}

/// Components of a triangular algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangularSpec {
    #[serde(rename = "A")]
    pub a: AlgebraDocument,
    #[serde(rename = "B")]
    pub b: AlgebraDocument,
    #[serde(rename = "M")]
    pub m: BimoduleDocument,
}

impl TriangularSpec {
    pub fn from_triangular(t: &TriangularAlgebra) -> Self {
        TriangularSpec {
            a: AlgebraDocument::from_algebra(t.component_a()),
            b: AlgebraDocument::from_algebra(t.component_b()),
            m: BimoduleDocument::from_bimodule(t.module()),
        }
    }

    pub fn build(&self) -> Result<TriangularAlgebra> {
        build_triangular(&self.a.to_algebra()?, &self.b.to_algebra()?, &self.m.to_bimodule()?)
    }
}

/// A square matrix whose column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub matrix: Vec<Vec<String>>,
}

impl MapDocument {
    pub fn from_map(map: &LinearMap) -> Self {
        MapDocument {
            dim: Some(map.dim()),
            matrix: map.to_string_rows(),
        }
    }

    pub fn to_map(&self) -> Result<LinearMap> {
        let d = self.matrix.len();
        if let Some(dim) = self.dim {
            if dim != d {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: d,
                });
            }
        }
        let rows = self.matrix.iter().map(|r| parse_all(r)).collect::<Result<_>>()?;
        LinearMap::new(Matrix::from_rows(d, rows)?)
    }
}

pub fn element_strings(x: &Element) -> Vec<String> {
    format_all(x.coords())
}

/// SHA-256 over a canonical rendering of the dimension, unit and nonzero
/// structure constants. Labels do not contribute.
pub fn fingerprint(a: &Algebra) -> String {
    let mut hasher = Sha256::new();
    hasher.update(format!("dim={};", a.dim()));
    match a.unit() {
        Some(u) => hasher.update(format!("unit={};", format_all(u.coords()).join(","))),
        None => hasher.update("unit=none;"),
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            for (k, c) in a.basis_product(i, j) {
                hasher.update(format!("{i},{j},{k}={};", format_rational(c)));
            }
        }
    }
    hex::encode(hasher.finalize())
}
