use std::collections::BTreeMap;

use serde::Serialize;

use super::components::ExpansionInput;
use super::Theorem;
use crate::algebra::{classify_map, Algebra, Element, LinearMap, Side};
use crate::dsl::{parse_equation, IdentityShape};
use crate::engine::ClosedIdentity;
use crate::error::{Error, Result};
use crate::io::{element_strings, fingerprint};
use crate::linalg::{format_rational, frac, rat, Rational};
use crate::sample::{Sampler, DEFAULT_SEED};

/// Random points per pointwise check.
pub const RANDOM_POINTS: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub label: String,
    pub instances_checked: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Outcome of [`replay_theorem`]. Steps appear in the order of the argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofTrace {
    pub theorem: String,
    pub algebra: String,
    pub n: u32,
    /// Set when a hypothesis failed; later steps were not run.
    pub aborted: bool,
    pub steps: Vec<StepRecord>,
}

impl ProofTrace {
    pub fn passed(&self) -> bool {
        !self.aborted && self.steps.iter().all(|s| s.pass)
    }

    pub fn step(&self, prefix: &str) -> Option<&StepRecord> {
        self.steps.iter().find(|s| s.label.starts_with(prefix))
    }
}

fn coeff(r: &Rational) -> String {
    format_rational(r)
}

struct Replayer<'a> {
    a: &'a Algebra,
    n: u32,
    centrals: BTreeMap<String, Element>,
    maps: BTreeMap<String, LinearMap>,
    points: Vec<Element>,
    central_points: Vec<Element>,
    sampler: Sampler,
    steps: Vec<StepRecord>,
}

fn describe_point(x: &Element) -> String {
    format!("X = [{}]", element_strings(x).join(", "))
}

impl Replayer<'_> {
    fn record(&mut self, label: String, instances: usize, witness: Option<String>) -> bool {
        let pass = witness.is_none();
        self.steps.push(StepRecord {
            label,
            instances_checked: instances,
            pass,
            witness,
        });
        pass
    }

    /// Checks an equation in `X` on every basis multiset (polarized) and at
    /// the random points.
    fn equation(&mut self, label: &str, text: &str) -> Result<bool> {
        let (identity, degree) = parse_equation(text)?;
        let closed = ClosedIdentity::new(&identity, degree);
        let (count, multiset) = closed.polarized_witness(self.a, &self.centrals, &self.maps)?;
        let mut witness = multiset.map(|m| format!("basis multiset {m:?}"));
        if witness.is_none() {
            for x in &self.points {
                if !closed.holds_at(self.a, &self.centrals, &self.maps, x)? {
                    witness = Some(describe_point(x));
                    break;
                }
            }
        }
        Ok(self.record(format!("{label}: {text}"), count + self.points.len(), witness))
    }

    /// Checks a two-variable relation on all basis pairs and random pairs.
    fn pairwise(
        &mut self,
        label: &str,
        check: impl Fn(&Algebra, &Element, &Element) -> bool,
    ) -> bool {
        let d = self.a.dim();
        let mut pairs: Vec<(Element, Element)> = Vec::new();
        for i in 0..d {
            for j in 0..d {
                pairs.push((self.a.basis(i), self.a.basis(j)));
            }
        }
        for _ in 0..RANDOM_POINTS {
            pairs.push((self.sampler.element(d), self.sampler.element(d)));
        }
        let witness = pairs.iter().find(|(x, y)| !check(self.a, x, y)).map(|(x, y)| {
            format!(
                "X = [{}], Y = [{}]",
                element_strings(x).join(", "),
                element_strings(y).join(", ")
            )
        });
        self.record(label.to_string(), pairs.len(), witness)
    }

    fn classified(&mut self, label: &str, maps: &[&str], test: impl Fn(&crate::ClassificationReport) -> bool) -> Result<bool> {
        let mut witness = None;
        for name in maps {
            let report = classify_map(self.a, &self.maps[*name])?;
            if !test(&report) {
                witness = Some(format!("{name} fails"));
                break;
            }
        }
        let d = self.a.dim();
        Ok(self.record(label.to_string(), maps.len() * d * d, witness))
    }

    fn expansion(&self, shape: IdentityShape) -> ExpansionInput<'_> {
        let omega = if shape == IdentityShape::SymmetricSelf {
            &self.maps["Psi"]
        } else {
            &self.maps["Omega"]
        };
        ExpansionInput {
            algebra: self.a,
            psi: &self.maps["Psi"],
            omega,
            gamma: &self.centrals["g"],
            n: self.n,
        }
    }

    /// The components of the expansion at `X + C` sum to zero.
    fn component_sum(&mut self, shape: IdentityShape) -> Result<bool> {
        let mut witness = None;
        let mut count = 0;
        let d = self.a.dim();
        let xs: Vec<Element> = (0..d).map(|i| self.a.basis(i)).chain(self.points.iter().cloned()).collect();
        'outer: for c in &self.central_points {
            for x in &xs {
                count += 1;
                if !self.expansion(shape).component_sum(shape, x, c)?.is_zero() {
                    witness = Some(format!("{}, C = [{}]", describe_point(x), element_strings(c).join(", ")));
                    break 'outer;
                }
            }
        }
        Ok(self.record(
            "expansion at X + C: the groups with k = 1..n-1 factors of C sum to zero".into(),
            count,
            witness,
        ))
    }

    /// Solving the system for `C, 2C, ..., (n-1)C` recovers every group and
    /// each one vanishes.
    fn separation(&mut self, shape: IdentityShape) -> Result<bool> {
        let d = self.a.dim();
        let xs: Vec<Element> = (0..d)
            .map(|i| self.a.basis(i))
            .chain(self.points.iter().take(10).cloned())
            .collect();
        let mut witness = None;
        let mut count = 0;
        'outer: for c in self.central_points.iter().take(2) {
            for x in &xs {
                count += 1;
                let sep = self.expansion(shape).separate(shape, x, c)?;
                if !sep.consistent() || !sep.all_vanish() {
                    witness = Some(format!("{}, C = [{}]", describe_point(x), element_strings(c).join(", ")));
                    break 'outer;
                }
            }
        }
        Ok(self.record(
            "Vandermonde separation: every group vanishes on its own".into(),
            count,
            witness,
        ))
    }
}

fn central_points(a: &Algebra, sampler: &mut Sampler) -> Result<Vec<Element>> {
    let center = a.center();
    let mut out = vec![a.require_unit()?.clone()];
    out.extend(center.basis_vectors().into_iter().map(Element::new));
    for _ in 0..2 {
        out.push(Element::new(sampler.combination(&center)));
    }
    out.dedup();
    Ok(out)
}

/// Re-checks, on a concrete solution, every intermediate equation of the
/// argument for `theorem`. The hypotheses (the identity itself and
/// `Omega(1)` central) are checked first; if one fails the trace is aborted
/// with a witness.
pub fn replay_theorem(
    theorem: Theorem,
    algebra: &Algebra,
    n: u32,
    gamma: &Element,
    psi: &LinearMap,
    omega: &LinearMap,
) -> Result<ProofTrace> {
    if n < 2 {
        return Err(Error::DegreeTooLow(n));
    }
    let a = algebra;
    let unit = a.require_unit()?.clone();
    if !a.is_central(gamma) {
        return Err(Error::NotCentral("gamma".into()));
    }
    if a.invert(gamma).is_none() {
        return Err(Error::NotInvertible("gamma".into()));
    }
    let w = omega.apply(&unit);
    let l_w = a.mult_operator(&w, Side::Left);
    let delta = omega.sub(&l_w);
    let mut maps = BTreeMap::new();
    maps.insert("Psi".to_string(), psi.clone());
    maps.insert("Omega".to_string(), omega.clone());
    maps.insert("D".to_string(), delta.clone());
    let l_gamma = a.mult_operator(gamma, Side::Left);
    let nr = rat(i64::from(n));
    let mu = psi.scale(&nr).sub(&l_gamma.compose(omega).scale(&rat(i64::from(n) - 2)));
    maps.insert("M".to_string(), mu);
    let mut centrals = BTreeMap::new();
    centrals.insert("g".to_string(), gamma.clone());
    centrals.insert("w".to_string(), w.clone());

    let mut sampler = Sampler::new(DEFAULT_SEED);
    let points = (0..RANDOM_POINTS).map(|_| sampler.element(a.dim())).collect();
    let central_points = central_points(a, &mut sampler)?;
    let mut r = Replayer {
        a,
        n,
        centrals,
        maps,
        points,
        central_points,
        sampler,
        steps: Vec::new(),
    };
    let finish = |r: Replayer<'_>, aborted: bool| ProofTrace {
        theorem: theorem.tag().to_string(),
        algebra: fingerprint(a),
        n,
        aborted,
        steps: r.steps,
    };

    let shape = theorem.shape();
    let hyp_ok = r.record(
        "hypothesis: Omega(1) is central".into(),
        1,
        (!a.is_central(&w)).then(|| format!("Omega(1) = [{}]", element_strings(&w).join(", "))),
    );
    if !hyp_ok {
        return Ok(finish(r, true));
    }
    if theorem == Theorem::CorFinal {
        let tie_ok = r.record(
            "hypothesis: Psi = Omega".into(),
            a.dim() * a.dim(),
            (psi != omega).then(|| "the two maps differ".to_string()),
        );
        if !tie_ok {
            return Ok(finish(r, true));
        }
    }
    let base = shape.text(n);
    if !r.equation("hypothesis: the identity holds", &base)? {
        return Ok(finish(r, true));
    }

    r.component_sum(shape)?;
    r.separation(shape)?;

    let inv_n = frac(1, i64::from(n));
    let top = frac(i64::from(n) - 1, i64::from(n));
    let next = frac(i64::from(n) - 2, i64::from(n));
    let (c1, ct, cn) = (coeff(&inv_n), coeff(&top), coeff(&next));
    let n_s = n.to_string();
    let nm2 = (i64::from(n) - 2).to_string();
    match theorem {
        Theorem::Thm21 => {
            r.equation(
                "top group at C = 1",
                &format!("Psi(X) = {c1}*g*Omega(X) + {ct}*g*X*w"),
            )?;
            r.equation(
                "top group at C = 1, applied to X^2",
                &format!("Psi(X^2) = {c1}*g*Omega(X^2) + {ct}*g*X^2*w"),
            )?;
            r.equation(
                "next group at C = 1",
                &format!("Psi(X^2) = {}*g*X*Omega(X) + {cn}*g*X^2*w", coeff(&frac(2, i64::from(n)))),
            )?;
            r.equation("square expansion, left form", "Omega(X^2) = 2*X*Omega(X) - w*X^2")?;
            r.equation("square expansion, right form", "Omega(X^2) = 2*Omega(X)*X - w*X^2")?;
            r.equation("Omega commutes with X", "Omega(X)*X = X*Omega(X)")?;
            r.equation(
                "D = Omega - L_{Omega(1)} is a Jordan derivation",
                "D(X^2) = D(X)*X + X*D(X)",
            )?;
            r.equation("D is commuting", "D(X)*X = X*D(X)")?;
            r.equation("commuting Jordan derivation vanishes", "D(X) = 0")?;
            r.equation("Omega = L_{Omega(1)}", "Omega(X) = w*X")?;
            r.equation("Psi = gamma Omega", "Psi(X) = g*Omega(X)")?;
            r.classified("Psi and Omega are two-sided centralizers", &["Psi", "Omega"], |c| {
                c.two_sided_centralizer
            })?;
        }
        Theorem::Cor22 => {
            r.equation(
                "next group at C = 1, left form",
                &format!("{n_s}*Psi(X^2) = 2*g*X*Omega(X) + {nm2}*g*Omega(X^2)"),
            )?;
            r.equation(
                "next group at C = 1, right form",
                &format!("{n_s}*Psi(X^2) = 2*g*Omega(X)*X + {nm2}*g*Omega(X^2)"),
            )?;
            r.equation(
                "M = n Psi - (n-2) gamma Omega satisfies the degree-2 identity",
                "M(X^2) = 2*g*X*Omega(X) = 2*g*Omega(X)*X",
            )?;
            r.equation("M = 2 gamma Omega", "M(X) = 2*g*Omega(X)")?;
            r.equation("Omega = L_{Omega(1)}", "Omega(X) = w*X")?;
            r.equation("Psi = gamma Omega", "Psi(X) = g*Omega(X)")?;
            r.classified("Psi and Omega are two-sided centralizers", &["Psi", "Omega"], |c| {
                c.two_sided_centralizer
            })?;
        }
        Theorem::Thm25 => {
            r.equation("top group at C = 1", &format!("Psi(X) = {c1}*Omega(X) + {ct}*X*w"))?;
            r.equation(
                "top group at C = 1, applied to X^2",
                &format!("Psi(X^2) = {c1}*Omega(X^2) + {ct}*X^2*w"),
            )?;
            r.equation(
                "next group at C = 1",
                &format!("Psi(X^2) = {c1}*X*Omega(X) + {c1}*Omega(X)*X + {cn}*X^2*w"),
            )?;
            r.equation(
                "square expansion",
                "Omega(X^2) = X*Omega(X) + Omega(X)*X - w*X^2",
            )?;
            r.equation(
                "square expansion through D = Omega - L_{Omega(1)}",
                "Omega(X^2) = Omega(X)*X + X*D(X) = D(X)*X + X*Omega(X)",
            )?;
            r.equation("D is a Jordan derivation", "D(X^2) = D(X)*X + X*D(X)")?;
            r.pairwise("D is a derivation: D(XY) = D(X)Y + XD(Y)", |a, x, y| {
                delta.apply(&a.mul(x, y)) == &a.mul(&delta.apply(x), y) + &a.mul(x, &delta.apply(y))
            });
            r.pairwise("Omega(XY) = Omega(X)Y + XD(Y)", |a, x, y| {
                omega.apply(&a.mul(x, y)) == &a.mul(&omega.apply(x), y) + &a.mul(x, &delta.apply(y))
            });
            r.pairwise("Omega(XY) = D(X)Y + XOmega(Y)", |a, x, y| {
                omega.apply(&a.mul(x, y)) == &a.mul(&delta.apply(x), y) + &a.mul(x, &omega.apply(y))
            });
            r.equation("Psi = D/n + L_{Omega(1)}", &format!("Psi(X) = {c1}*D(X) + w*X"))?;
            r.classified(
                "Psi and Omega are two-sided generalized derivations",
                &["Psi", "Omega"],
                |c| c.two_sided_generalized,
            )?;
        }
        Theorem::CorFinal => {
            r.equation("top group at C = 1", &format!("Psi(X) = {c1}*Psi(X) + {ct}*X*w"))?;
            r.equation("Psi = D/n + L_{Omega(1)}", &format!("Psi(X) = {c1}*D(X) + w*X"))?;
            r.equation("Psi = D + L_{Omega(1)}", "Psi(X) = D(X) + w*X")?;
            r.equation("D vanishes", "D(X) = 0")?;
            r.equation("Psi = L_{Omega(1)}", "Psi(X) = w*X")?;
            r.equation("Psi = Omega", "Psi(X) = Omega(X)")?;
            r.classified("Psi is a two-sided centralizer", &["Psi"], |c| c.two_sided_centralizer)?;
        }
    }
    Ok(finish(r, false))
}
