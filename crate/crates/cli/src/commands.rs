//! One function per subcommand. Each returns the report and whether every
//! check in it passed.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use fident_core::algebra::{derivation_space, jordan_derivation_space};
use fident_core::dsl::{parse_and_validate, parse_equation};
use fident_core::engine::{
    predicted_central_multipliers, predicted_central_pairs, predicted_generalized_space, solve_identity,
    verify_solution, Binding, Checks, ClosedIdentity, Expectation, SideConstraint, SolutionSpace,
    Verdict, VerificationReport,
};
use fident_core::io::{element_strings, fingerprint, AlgebraDocument, TriangularSpec};
use fident_core::replay::{replay_theorem, verify_background_lemmas, ProofTrace, Theorem};
use fident_core::sample::{Sampler, DEFAULT_SEED};
use fident_core::triangular::Faithfulness;
use fident_core::algebra::ValidationReport;
use fident_core::{classify_map, Algebra, Element, Error, LinearMap, SubspaceRelation};
use serde::Serialize;

use crate::inputs::{
    builtin, check_degree, identity_text, load_algebra, load_map, parse_element, split_assignment,
    LoadedAlgebra,
};

pub struct Outcome {
    pub report: serde_json::Value,
    pub ok: bool,
}

impl Outcome {
    fn new(report: &impl Serialize, ok: bool) -> Result<Self> {
        Ok(Outcome {
            report: serde_json::to_value(report)?,
            ok,
        })
    }
}

type Matrix = Vec<Vec<String>>;

fn named_maps(names: &[String], maps: &[LinearMap]) -> BTreeMap<String, Matrix> {
    names
        .iter()
        .cloned()
        .zip(maps.iter().map(LinearMap::to_string_rows))
        .collect()
}

pub fn algebra_build(kind: Option<&str>, spec: Option<&Path>) -> Result<(Outcome, ValidationReport)> {
    let loaded = match (kind, spec) {
        (Some(name), None) => builtin(name)?.with_context(|| format!("unknown builtin algebra `{name}`"))?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            let spec: TriangularSpec =
                serde_json::from_str(&text).with_context(|| format!("malformed spec file {}", path.display()))?;
            let t = spec.build()?;
            LoadedAlgebra {
                algebra: t.algebra().clone(),
                triangular: Some(t),
            }
        }
        _ => bail!("give exactly one of --kind, --spec"),
    };
    let validation = loaded.algebra.validate();
    let ok = validation.passed();
    Ok((Outcome::new(&AlgebraDocument::from_algebra(&loaded.algebra), ok)?, validation))
}

#[derive(Serialize)]
struct CenterReport {
    dim: usize,
    basis: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    formula: Option<SubspaceRelation>,
}

#[derive(Serialize)]
struct InfoReport {
    fingerprint: String,
    dim: usize,
    labels: Vec<String>,
    validation: ValidationReport,
    center: CenterReport,
    condition_p: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    faithfulness: Option<Faithfulness>,
    derivation_dim: usize,
    jordan_derivation_dim: usize,
}

pub fn algebra_info(name: &str) -> Result<Outcome> {
    let loaded = load_algebra(name)?;
    let a = &loaded.algebra;
    let center = a.center();
    let formula = loaded
        .triangular
        .as_ref()
        .map(|t| t.center_by_formula().compare(&center))
        .transpose()?;
    let report = InfoReport {
        fingerprint: fingerprint(a),
        dim: a.dim(),
        labels: a.labels().to_vec(),
        validation: a.validate(),
        center: CenterReport {
            dim: center.dim(),
            basis: center
                .basis_vectors()
                .into_iter()
                .map(|v| element_strings(&Element::new(v)))
                .collect(),
            formula,
        },
        condition_p: a.condition_p(),
        faithfulness: loaded.triangular.as_ref().map(|t| t.faithfulness()),
        derivation_dim: derivation_space(a).dim(),
        jordan_derivation_dim: jordan_derivation_space(a).dim(),
    };
    let ok = report.validation.passed() && formula.is_none_or(|r| r == SubspaceRelation::Equal);
    Outcome::new(&report, ok)
}

/// Symbol values shared by `identity solve` and `identity verify`.
pub struct Bindings<'a> {
    pub centrals: &'a [String],
    pub gamma: Option<&'a str>,
    pub maps: &'a [String],
    pub constraints: &'a [String],
}

impl Bindings<'_> {
    fn build(&self, a: &Algebra) -> Result<(Binding, Option<Element>)> {
        let mut binding = Binding::new();
        for assignment in self.centrals {
            let (name, value) = split_assignment(assignment)?;
            binding = binding.central(name, parse_element(a, value)?);
        }
        let gamma = self.gamma.map(|g| parse_element(a, g)).transpose()?;
        if let Some(g) = &gamma {
            binding = binding.invertible_central(fident_core::dsl::GAMMA, g.clone());
        }
        for assignment in self.maps {
            let (name, path) = split_assignment(assignment)?;
            binding = binding.fixed(name, load_map(Path::new(path), a.dim())?);
        }
        for text in self.constraints {
            binding = binding.constrain(text.parse::<SideConstraint>()?);
        }
        binding.checked_centrals(a)?;
        Ok((binding, gamma))
    }
}

pub struct IdentitySource<'a> {
    pub text: Option<&'a str>,
    pub file: Option<&'a PathBuf>,
    pub shape: Option<&'a str>,
    pub n: Option<u32>,
}

impl IdentitySource<'_> {
    fn text(&self) -> Result<String> {
        identity_text(self.text, self.file.map(PathBuf::as_path), self.shape, self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Expect {
    /// Pairs `(L_{gamma c}, L_c)` for central `c`.
    CentralPairs,
    /// Single maps `L_c` for central `c`.
    CentralMultipliers,
    /// Pairs `(D/n + L_z, D + L_z)`; equality for n = 2, containment above.
    Generalized,
}

#[derive(Serialize)]
struct SolveReport {
    identity: String,
    algebra: String,
    n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma: Option<Vec<String>>,
    centrals: BTreeMap<String, Vec<String>>,
    fixed: Vec<String>,
    side_constraints: Vec<String>,
    unknowns: Vec<String>,
    consistent: bool,
    rank: Option<usize>,
    dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    particular: Option<BTreeMap<String, Matrix>>,
    basis: Vec<BTreeMap<String, Matrix>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<VerificationReport>,
}

fn predicted(
    expect: Expect,
    space: &SolutionSpace,
    a: &Algebra,
    gamma: Option<&Element>,
    n: u32,
) -> Result<(fident_core::Subspace, Expectation)> {
    let unknowns = space.layout.maps();
    let need = |count: usize| -> Result<()> {
        if unknowns.len() != count {
            bail!("--expect {expect:?} needs {count} unknown map(s), the identity has {}", unknowns.len());
        }
        Ok(())
    };
    Ok(match expect {
        Expect::CentralPairs => {
            need(2)?;
            let unit = a.require_unit()?.clone();
            (predicted_central_pairs(a, gamma.unwrap_or(&unit))?, Expectation::Equal)
        }
        Expect::CentralMultipliers => {
            need(1)?;
            (predicted_central_multipliers(a), Expectation::Equal)
        }
        Expect::Generalized => {
            need(2)?;
            let relation = if n == 2 {
                Expectation::Equal
            } else {
                Expectation::Contained
            };
            (predicted_generalized_space(a, n)?, relation)
        }
    })
}

pub fn identity_solve(
    algebra: &str,
    source: &IdentitySource<'_>,
    bindings: &Bindings<'_>,
    expect: Option<Expect>,
) -> Result<Outcome> {
    let a = load_algebra(algebra)?.algebra;
    let text = source.text()?;
    let identity = parse_and_validate(&text)?;
    check_degree(identity.degree, source.n)?;
    let (binding, gamma) = bindings.build(&a)?;
    let mut report = SolveReport {
        identity: identity.source.to_string(),
        algebra: fingerprint(&a),
        n: identity.degree,
        gamma: gamma.as_ref().map(element_strings),
        centrals: binding
            .centrals
            .iter()
            .map(|(k, v)| (k.clone(), element_strings(&v.element)))
            .collect(),
        fixed: binding.fixed.keys().cloned().collect(),
        side_constraints: binding.constraints.iter().map(ToString::to_string).collect(),
        unknowns: Vec::new(),
        consistent: true,
        rank: None,
        dim: None,
        particular: None,
        basis: Vec::new(),
        verification: None,
    };
    let space = match solve_identity(&identity, &a, &binding) {
        Ok(space) => space,
        Err(Error::Inconsistent) => {
            report.consistent = false;
            return Outcome::new(&report, false);
        }
        Err(e) => return Err(e.into()),
    };
    let names = space.layout.maps().to_vec();
    report.unknowns = names.clone();
    report.rank = Some(space.rank);
    report.dim = Some(space.dim());
    report.particular = space
        .particular
        .as_ref()
        .map(|p| space.decode(p).map(|maps| named_maps(&names, &maps)))
        .transpose()?;
    report.basis = space.decoded_basis.iter().map(|maps| named_maps(&names, maps)).collect();
    let checks = Checks {
        predicted: expect
            .map(|e| predicted(e, &space, &a, gamma.as_ref(), identity.degree))
            .transpose()?,
        ..Checks::default()
    };
    let verification = verify_solution(&space, &identity, &a, &binding, &checks)?;
    let ok = verification.passed();
    report.verification = Some(verification);
    Outcome::new(&report, ok)
}

#[derive(Serialize)]
struct Polarized {
    multisets: usize,
    result: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct Pointwise {
    samples: usize,
    result: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<String>>,
}

#[derive(Serialize)]
struct VerifyReport {
    identity: String,
    algebra: String,
    n: u32,
    polarized: Polarized,
    pointwise: Pointwise,
}

pub const POINTWISE_SAMPLES: usize = 100;

/// Checks an identity whose maps are all given, exactly on every basis
/// multiset and additionally at random points.
pub fn identity_verify(algebra: &str, source: &IdentitySource<'_>, bindings: &Bindings<'_>) -> Result<Outcome> {
    let a = load_algebra(algebra)?.algebra;
    let text = source.text()?;
    let (identity, degree) = parse_equation(&text)?;
    check_degree(degree, source.n)?;
    let (binding, _) = bindings.build(&a)?;
    let centrals = binding.checked_centrals(&a)?;
    let closed = ClosedIdentity::new(&identity, degree);
    let (multisets, witness) = closed.polarized_witness(&a, &centrals, &binding.fixed)?;
    let mut sampler = Sampler::new(DEFAULT_SEED);
    let mut point_witness = None;
    for _ in 0..POINTWISE_SAMPLES {
        let x = sampler.element(a.dim());
        if !closed.holds_at(&a, &centrals, &binding.fixed, &x)? {
            point_witness = Some(element_strings(&x));
            break;
        }
    }
    let report = VerifyReport {
        identity: identity.to_string(),
        algebra: fingerprint(&a),
        n: degree,
        polarized: Polarized {
            multisets,
            result: Verdict::from_bool(witness.is_none()),
            witness,
        },
        pointwise: Pointwise {
            samples: POINTWISE_SAMPLES,
            result: Verdict::from_bool(point_witness.is_none()),
            witness: point_witness,
        },
    };
    let ok = report.polarized.result.is_pass() && report.pointwise.result.is_pass();
    Outcome::new(&report, ok)
}

pub fn map_classify(algebra: &str, map: &Path) -> Result<Outcome> {
    let a = load_algebra(algebra)?.algebra;
    let f = load_map(map, a.dim())?;
    Outcome::new(&classify_map(&a, &f)?, true)
}

#[derive(Serialize)]
struct ReplayReport {
    theorem: String,
    algebra: String,
    n: u32,
    gamma: Vec<String>,
    /// Dimension of the solved space whose basis was replayed; absent when
    /// the maps were given.
    #[serde(skip_serializing_if = "Option::is_none")]
    solution_dim: Option<usize>,
    traces: Vec<ProofTrace>,
}

/// The solution space of the theorem's identity with its standing
/// hypotheses, one `(Psi, Omega)` pair per basis vector.
fn solved_pairs(theorem: Theorem, a: &Algebra, n: u32, gamma: &Element) -> Result<Vec<(LinearMap, LinearMap)>> {
    let shape = theorem.shape();
    let identity = parse_and_validate(&shape.text(n))?;
    let first = identity.maps[0].clone();
    let omega_name = identity.maps.last().cloned().unwrap_or_else(|| first.clone());
    let mut binding = Binding::new().constrain(SideConstraint::unit_image_central(&omega_name));
    if shape.uses_gamma() {
        binding = binding.invertible_central(fident_core::dsl::GAMMA, gamma.clone());
    }
    let space = solve_identity(&identity, a, &binding)?;
    Ok(space
        .decoded_basis
        .into_iter()
        .map(|maps| {
            let omega = maps.last().expect("at least one unknown").clone();
            (maps[0].clone(), omega)
        })
        .collect())
}

pub fn replay(
    theorem: Theorem,
    algebra: &str,
    n: u32,
    gamma: &str,
    psi: Option<&Path>,
    omega: Option<&Path>,
) -> Result<Outcome> {
    let a = load_algebra(algebra)?.algebra;
    let gamma = parse_element(&a, gamma)?;
    if n < 2 {
        return Err(Error::DegreeTooLow(n).into());
    }
    let (pairs, solution_dim) = match (psi, omega) {
        (None, None) => {
            let pairs = solved_pairs(theorem, &a, n, &gamma)?;
            let dim = pairs.len();
            (pairs, Some(dim))
        }
        (Some(p), o) => {
            let psi = load_map(p, a.dim())?;
            let omega = match o {
                Some(path) => load_map(path, a.dim())?,
                None => psi.clone(),
            };
            (vec![(psi, omega)], None)
        }
        (None, Some(_)) => bail!("--omega needs --psi"),
    };
    let traces = pairs
        .iter()
        .map(|(psi, omega)| replay_theorem(theorem, &a, n, &gamma, psi, omega))
        .collect::<fident_core::Result<Vec<_>>>()?;
    let ok = traces.iter().all(ProofTrace::passed);
    let report = ReplayReport {
        theorem: theorem.tag().to_string(),
        algebra: fingerprint(&a),
        n,
        gamma: element_strings(&gamma),
        solution_dim,
        traces,
    };
    Outcome::new(&report, ok)
}

pub fn lemmas(algebra: &str) -> Result<Outcome> {
    let loaded: LoadedAlgebra = load_algebra(algebra)?;
    Outcome::new(&verify_background_lemmas(&loaded.algebra), true)
}
