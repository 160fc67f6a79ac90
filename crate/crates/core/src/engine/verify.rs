use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::binding::Binding;
use super::eval::{multisets, Scope};
use super::solve::SolutionSpace;
use crate::algebra::{classify_map, Algebra, Element, LinearMap, Side};
use crate::dsl::{Expr, Identity, NormalizedIdentity};
use crate::error::Result;
use crate::linalg::{format_rational, frac, Subspace, SubspaceRelation};
use crate::sample::{Sampler, DEFAULT_SEED};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An identity with every symbol bound, reduced to differences that must vanish.
#[derive(Clone, Debug)]
pub struct ClosedIdentity {
    pub differences: Vec<Expr>,
    pub degree: u32,
}

impl ClosedIdentity {
    pub fn new(identity: &Identity, degree: u32) -> Self {
        ClosedIdentity {
            differences: identity.sides.windows(2).map(|w| w[0].minus(&w[1])).collect(),
            degree,
        }
    }

    pub fn from_normalized(identity: &NormalizedIdentity) -> Self {
        ClosedIdentity {
            differences: identity.differences.clone(),
            degree: identity.degree,
        }
    }

    /// First basis multiset on which some symmetrized difference is nonzero.
    pub fn polarized_witness(
        &self,
        algebra: &Algebra,
        centrals: &BTreeMap<String, Element>,
        maps: &BTreeMap<String, LinearMap>,
    ) -> Result<(usize, Option<Vec<usize>>)> {
        let scope = Scope {
            algebra,
            centrals,
            maps,
        };
        let sets = multisets(algebra.dim(), self.degree as usize);
        let witness = sets
            .par_iter()
            .map(|ms| -> Result<Option<Vec<usize>>> {
                for diff in &self.differences {
                    if !scope.polarized(diff, ms)?.is_zero() {
                        return Ok(Some(ms.clone()));
                    }
                }
                Ok(None)
            })
            .find_map_first(|r| match r {
                Ok(None) => None,
                other => Some(other),
            })
            .transpose()?
            .flatten();
        Ok((sets.len(), witness))
    }

    /// Whether every difference vanishes at `x`.
    pub fn holds_at(
        &self,
        algebra: &Algebra,
        centrals: &BTreeMap<String, Element>,
        maps: &BTreeMap<String, LinearMap>,
        x: &Element,
    ) -> Result<bool> {
        let scope = Scope {
            algebra,
            centrals,
            maps,
        };
        for diff in &self.differences {
            if !scope.expr_at(diff, x, self.degree)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapClass {
    TwoSidedCentralizer,
    TwoSidedGeneralized,
    Derivation,
    JordanDerivation,
    Commuting,
}

impl fmt::Display for MapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapClass::TwoSidedCentralizer => "two-sided centralizer",
            MapClass::TwoSidedGeneralized => "two-sided generalized derivation",
            MapClass::Derivation => "derivation",
            MapClass::JordanDerivation => "Jordan derivation",
            MapClass::Commuting => "commuting",
        })
    }
}

/// A property of a solution tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    Class { map: String, class: MapClass },
    /// `target = L_factor ∘ source`
    Scaled {
        target: String,
        source: String,
        factor: String,
    },
    /// `map = L_{map(1)}`
    UnitMultiplier { map: String },
    /// With `D = omega - L_{omega(1)}`: `D` is a derivation and
    /// `psi = D/n + L_{omega(1)}`.
    DerivationSplit { psi: String, omega: String, n: u32 },
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Class { map, class } => write!(f, "{map} is a {class}"),
            Predicate::Scaled {
                target,
                source,
                factor,
            } => write!(f, "{target} = {factor}*{source}"),
            Predicate::UnitMultiplier { map } => write!(f, "{map} = L_{{{map}(1)}}"),
            Predicate::DerivationSplit { psi, omega, n } => write!(
                f,
                "{omega} - L_{{{omega}(1)}} is a derivation and {psi} = ({omega} - L_{{{omega}(1)}})/{n} + L_{{{omega}(1)}}"
            ),
        }
    }
}

fn unit_multiplier(a: &Algebra, map: &LinearMap) -> Result<LinearMap> {
    let image = map.apply(a.require_unit()?);
    Ok(a.mult_operator(&image, Side::Left))
}

impl Predicate {
    pub fn holds(
        &self,
        a: &Algebra,
        centrals: &BTreeMap<String, Element>,
        maps: &BTreeMap<String, LinearMap>,
    ) -> Result<bool> {
        let get = |name: &str| {
            maps.get(name)
                .ok_or_else(|| crate::error::Error::UnresolvedSymbol(name.to_string()))
        };
        Ok(match self {
            Predicate::Class { map, class } => {
                let r = classify_map(a, get(map)?)?;
                match class {
                    MapClass::TwoSidedCentralizer => r.two_sided_centralizer,
                    MapClass::TwoSidedGeneralized => r.two_sided_generalized,
                    MapClass::Derivation => r.derivation,
                    MapClass::JordanDerivation => r.jordan_derivation,
                    MapClass::Commuting => r.commuting,
                }
            }
            Predicate::Scaled {
                target,
                source,
                factor,
            } => {
                let c = centrals
                    .get(factor)
                    .ok_or_else(|| crate::error::Error::UnresolvedSymbol(factor.clone()))?;
                let scaled = a.mult_operator(c, Side::Left).compose(get(source)?);
                &scaled == get(target)?
            }
            Predicate::UnitMultiplier { map } => {
                let m = get(map)?;
                &unit_multiplier(a, m)? == m
            }
            Predicate::DerivationSplit { psi, omega, n } => {
                let omega = get(omega)?;
                let l_w = unit_multiplier(a, omega)?;
                let delta = omega.sub(&l_w);
                let expected = delta.scale(&frac(1, i64::from(*n))).add(&l_w);
                classify_map(a, &delta)?.derivation && &expected == get(psi)?
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// The solution space equals the predicted one.
    Equal,
    /// The solution space is contained in the predicted one.
    Contained,
}

/// What [`verify_solution`] checks.
#[derive(Clone, Debug)]
pub struct Checks {
    pub predicates: Vec<Predicate>,
    pub predicted: Option<(Subspace, Expectation)>,
    pub combinations: usize,
    pub pointwise_samples: usize,
    pub seed: u64,
}

impl Default for Checks {
    fn default() -> Self {
        Checks {
            predicates: Vec::new(),
            predicted: None,
            combinations: 20,
            pointwise_samples: 100,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredicateOutcome {
    pub predicate: String,
    pub result: Verdict,
    pub tuples_checked: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointwiseOutcome {
    pub samples: usize,
    pub result: Verdict,
    /// Coordinates of the first failing `X`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub relation: SubspaceRelation,
    pub expected: Expectation,
    pub solution_dim: usize,
    pub predicted_dim: usize,
    /// `predicted_dim - solution_dim`.
    pub gap: i64,
    pub result: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub predicates: Vec<PredicateOutcome>,
    pub pointwise: PointwiseOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.predicates.iter().all(|p| p.result.is_pass())
            && self.pointwise.result.is_pass()
            && self.comparison.as_ref().is_none_or(|c| c.result.is_pass())
    }
}

fn named(space: &SolutionSpace, binding: &Binding, tuple: Vec<LinearMap>) -> BTreeMap<String, LinearMap> {
    let mut maps = binding.fixed.clone();
    maps.extend(space.layout.maps().iter().cloned().zip(tuple));
    maps
}

/// Checks predicates on the basis tuples and on random combinations, the raw
/// identity at random points, and the comparison with a predicted space.
pub fn verify_solution(
    space: &SolutionSpace,
    identity: &NormalizedIdentity,
    algebra: &Algebra,
    binding: &Binding,
    checks: &Checks,
) -> Result<VerificationReport> {
    let centrals = binding.checked_centrals(algebra)?;
    let mut sampler = Sampler::new(checks.seed);
    let shift = |v: Vec<_>| -> Vec<_> {
        match &space.particular {
            Some(p) => v.iter().zip(p).map(|(x, q)| x + q).collect(),
            None => v,
        }
    };
    let mut base: Vec<Vec<_>> = space.space.basis_vectors().into_iter().map(shift).collect();
    if let Some(p) = &space.particular {
        base.insert(0, p.clone());
    }
    let mut tuples = base.clone();
    if !space.space.is_zero() {
        for _ in 0..checks.combinations {
            tuples.push(shift(sampler.combination(&space.space)));
        }
    }
    let decoded: Vec<BTreeMap<String, LinearMap>> = tuples
        .iter()
        .map(|v| Ok(named(space, binding, space.decode(v)?)))
        .collect::<Result<_>>()?;

    let mut predicates = Vec::new();
    for p in &checks.predicates {
        let results: Vec<bool> = decoded
            .par_iter()
            .map(|maps| p.holds(algebra, &centrals, maps))
            .collect::<Result<_>>()?;
        let failures = results.iter().filter(|ok| !**ok).count();
        predicates.push(PredicateOutcome {
            predicate: p.to_string(),
            result: Verdict::from_bool(failures == 0),
            tuples_checked: results.len(),
            failures,
        });
    }

    let closed = ClosedIdentity::from_normalized(identity);
    let mut witness = None;
    for _ in 0..checks.pointwise_samples {
        let x = sampler.element(algebra.dim());
        let mut candidates: Vec<BTreeMap<String, LinearMap>> = base
            .iter()
            .map(|v| Ok(named(space, binding, space.decode(v)?)))
            .collect::<Result<_>>()?;
        if !space.space.is_zero() {
            let v = shift(sampler.combination(&space.space));
            candidates.push(named(space, binding, space.decode(&v)?));
        }
        if candidates.is_empty() {
            candidates.push(binding.fixed.clone());
        }
        for maps in &candidates {
            if !closed.holds_at(algebra, &centrals, maps, &x)? {
                witness = Some(x.coords().iter().map(format_rational).collect());
                break;
            }
        }
        if witness.is_some() {
            break;
        }
    }
    let pointwise = PointwiseOutcome {
        samples: checks.pointwise_samples,
        result: Verdict::from_bool(witness.is_none()),
        witness,
    };

    let comparison = match &checks.predicted {
        None => None,
        Some((predicted, expected)) => {
            let relation = space.space.compare(predicted)?;
            let ok = match expected {
                Expectation::Equal => relation == SubspaceRelation::Equal,
                Expectation::Contained => matches!(
                    relation,
                    SubspaceRelation::Equal | SubspaceRelation::S1SubsetS2
                ),
            };
            Some(Comparison {
                relation,
                expected: *expected,
                solution_dim: space.dim(),
                predicted_dim: predicted.dim(),
                gap: predicted.dim() as i64 - space.dim() as i64,
                result: Verdict::from_bool(ok),
            })
        }
    };

    Ok(VerificationReport {
        predicates,
        pointwise,
        comparison,
    })
}
