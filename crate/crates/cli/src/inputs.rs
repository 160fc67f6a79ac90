//! Loading algebras, maps, elements and identities from command-line values.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use fident_core::algebra::full_matrix_algebra;
use fident_core::dsl::IdentityShape;
use fident_core::io::{AlgebraDocument, MapDocument, TriangularSpec};
use fident_core::linalg::parse_rational;
use fident_core::triangular::{matrix_bimodule, upper_triangular};
use fident_core::{Algebra, Element, LinearMap, TriangularAlgebra};

pub const BUILTINS: [&str; 5] = ["T2", "T3", "T4", "M2", "TriM2x1"];

pub struct LoadedAlgebra {
    pub algebra: Algebra,
    pub triangular: Option<TriangularAlgebra>,
}

impl LoadedAlgebra {
    fn triangular(t: TriangularAlgebra) -> Self {
        LoadedAlgebra {
            algebra: t.algebra().clone(),
            triangular: Some(t),
        }
    }
}

pub fn builtin(name: &str) -> Result<Option<LoadedAlgebra>> {
    Ok(Some(match name {
        "T2" => LoadedAlgebra::triangular(upper_triangular(2)?),
        "T3" => LoadedAlgebra::triangular(upper_triangular(3)?),
        "T4" => LoadedAlgebra::triangular(upper_triangular(4)?),
        "TriM2x1" => LoadedAlgebra::triangular(matrix_bimodule(2, 1)?),
        "M2" => LoadedAlgebra {
            algebra: full_matrix_algebra(2)?,
            triangular: None,
        },
        _ => return Ok(None),
    }))
}

fn read_json(path: &Path) -> Result<serde_json::Value> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{} is not valid JSON", path.display()))
}

/// A triangular spec (keys `A`, `M`, `B`) or a plain algebra document.
pub fn algebra_file(path: &Path) -> Result<LoadedAlgebra> {
    let value = read_json(path)?;
    let context = || format!("malformed algebra file {}", path.display());
    if value.get("A").is_some() {
        let spec: TriangularSpec = serde_json::from_value(value).with_context(context)?;
        return Ok(LoadedAlgebra::triangular(spec.build().with_context(context)?));
    }
    let doc: AlgebraDocument = serde_json::from_value(value).with_context(context)?;
    Ok(LoadedAlgebra {
        algebra: doc.to_algebra().with_context(context)?,
        triangular: None,
    })
}

/// A builtin name, or else a path to an algebra file.
pub fn load_algebra(name: &str) -> Result<LoadedAlgebra> {
    match builtin(name)? {
        Some(loaded) => Ok(loaded),
        None if Path::new(name).exists() => algebra_file(Path::new(name)),
        None => bail!(
            "`{name}` is neither a builtin algebra ({}) nor an existing file",
            BUILTINS.join(", ")
        ),
    }
}

pub fn load_map(path: &Path, dim: usize) -> Result<LinearMap> {
    let doc: MapDocument = serde_json::from_value(read_json(path)?)
        .with_context(|| format!("malformed map file {}", path.display()))?;
    let map = doc.to_map().with_context(|| format!("malformed map file {}", path.display()))?;
    if map.dim() != dim {
        bail!("map in {} has dimension {}, algebra has {dim}", path.display(), map.dim());
    }
    Ok(map)
}

/// `"2"` or `"1/2"` is that multiple of the unit; `"1,0,1"` lists coordinates.
pub fn parse_element(a: &Algebra, text: &str) -> Result<Element> {
    if text.contains(',') {
        let coords = text
            .split(',')
            .map(|s| parse_rational(s.trim()))
            .collect::<fident_core::Result<Vec<_>>>()?;
        if coords.len() != a.dim() {
            bail!("element `{text}` has {} coordinates, algebra has dimension {}", coords.len(), a.dim());
        }
        return Ok(Element::new(coords));
    }
    Ok(a.scalar(&parse_rational(text.trim())?)?)
}

pub fn split_assignment(text: &str) -> Result<(&str, &str)> {
    match text.split_once('=') {
        Some((name, value)) if !name.trim().is_empty() => Ok((name.trim(), value.trim())),
        _ => bail!("expected NAME=VALUE, found `{text}`"),
    }
}

/// Exactly one of inline text, a file, or a named shape (which needs `n`).
pub fn identity_text(
    text: Option<&str>,
    file: Option<&Path>,
    shape: Option<&str>,
    n: Option<u32>,
) -> Result<String> {
    match (text, file, shape) {
        (Some(t), None, None) => Ok(t.to_string()),
        (None, Some(path), None) => Ok(fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?
            .trim()
            .to_string()),
        (None, None, Some(name)) => {
            let shape: IdentityShape = name.parse()?;
            let n = n.context("--shape needs --n")?;
            if n < 2 {
                return Err(fident_core::Error::DegreeTooLow(n).into());
            }
            Ok(shape.text(n))
        }
        _ => bail!("give exactly one of --text, --file, --shape"),
    }
}

pub fn check_degree(found: u32, requested: Option<u32>) -> Result<()> {
    match requested {
        Some(n) if n != found => bail!("--n {n} does not match the identity degree {found}"),
        _ => Ok(()),
    }
}
