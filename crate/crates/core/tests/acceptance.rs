//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. All comparisons are exact; the only tolerances are
//! the wall-clock budgets below.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fident_core::algebra::Algebra;
use fident_core::dsl::{parse_and_validate, parse_identity, IdentityShape};
use fident_core::engine::{
    predicted_central_pairs, predicted_generalized_space, solve_identity, verify_solution, Binding, Checks,
    Expectation, MapClass, Predicate, SideConstraint, SolutionSpace,
};
use fident_core::linalg::{rat, Rational, SubspaceRelation};
use fident_core::replay::{
    replay_theorem, vandermonde_check, vandermonde_matrix, verify_background_lemmas, ExpansionInput, Theorem,
};
use fident_core::sample::Sampler;
use fident_core::triangular::{matrix_bimodule, upper_triangular, TriangularAlgebra};
use fident_core::{Element, Error};

use common::random_triangular;

const INSTANCE_BUDGET: Duration = Duration::from_secs(10);
const TOTAL_BUDGET: Duration = Duration::from_secs(300);
const DEGREES: [u32; 3] = [2, 3, 4];
const GAMMAS: [i64; 2] = [1, 2];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            summary: String::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn error(&mut self, context: &str, e: Error) {
        self.failures.push(format!("{context}: {e}"));
    }
}

fn algebras() -> Vec<(&'static str, Algebra)> {
    vec![
        ("T2", upper_triangular(2).unwrap().into_algebra()),
        ("T3", upper_triangular(3).unwrap().into_algebra()),
        ("TriM2x1", matrix_bimodule(2, 1).unwrap().into_algebra()),
    ]
}

fn timed<T>(out: &mut Outcome, label: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let value = f();
    let elapsed = start.elapsed();
    out.check(elapsed <= INSTANCE_BUDGET, || format!("{label}: took {elapsed:?}"));
    value
}

fn solve_shape(
    shape: IdentityShape,
    a: &Algebra,
    n: u32,
    gamma: i64,
    tie: bool,
) -> fident_core::Result<(SolutionSpace, Binding)> {
    let identity = parse_and_validate(&shape.text(n))?;
    let mut binding = Binding::new().constrain(SideConstraint::unit_image_central("Omega"));
    if shape.uses_gamma() {
        binding = binding.invertible_central("g", a.scalar(&rat(gamma))?);
    }
    if tie {
        binding = binding.constrain(SideConstraint::tie("Psi", "Omega"));
    }
    let space = solve_identity(&identity, a, &binding)?;
    Ok((space, binding))
}

/// Solution check: random points on the raw identity plus a predicted space.
fn verified(
    shape: IdentityShape,
    a: &Algebra,
    n: u32,
    space: &SolutionSpace,
    binding: &Binding,
    checks: Checks,
) -> fident_core::Result<fident_core::engine::VerificationReport> {
    verify_solution(space, &parse_and_validate(&shape.text(n))?, a, binding, &checks)
}

fn power_centralizer_equality() -> Outcome {
    let mut out = Outcome::new();
    let mut instances = 0;
    for (name, a) in algebras() {
        for n in DEGREES {
            for gamma in GAMMAS {
                let label = format!("{name} n={n} gamma={gamma}");
                let result = timed(&mut out, &label, || -> fident_core::Result<_> {
                    let (space, binding) = solve_shape(IdentityShape::PowerCentralizer, &a, n, gamma, false)?;
                    let predicted = predicted_central_pairs(&a, &a.scalar(&rat(gamma))?)?;
                    let checks = Checks {
                        predicted: Some((predicted, Expectation::Equal)),
                        ..Checks::default()
                    };
                    let report = verified(IdentityShape::PowerCentralizer, &a, n, &space, &binding, checks)?;
                    Ok((space.dim(), a.center().dim(), report))
                });
                instances += 1;
                match result {
                    Ok((dim, center, report)) => {
                        out.check(report.passed(), || format!("{label}: {report:?}"));
                        out.check(dim == center && dim == 1, || format!("{label}: dim {dim}, center {center}"));
                    }
                    Err(e) => out.error(&label, e),
                }
            }
        }
    }
    out.summary = format!("{instances} instances equal to the central pairs, dim 1");
    out
}

fn shifted_centralizer_equality() -> Outcome {
    let mut out = Outcome::new();
    let mut replays = 0;
    for (name, a) in algebras() {
        for n in DEGREES {
            for gamma in GAMMAS {
                let label = format!("{name} n={n} gamma={gamma}");
                let result = timed(&mut out, &label, || -> fident_core::Result<_> {
                    let (shifted, _) = solve_shape(IdentityShape::ShiftedCentralizer, &a, n, gamma, false)?;
                    let (power, _) = solve_shape(IdentityShape::PowerCentralizer, &a, n, gamma, false)?;
                    let relation = shifted.space.compare(&power.space)?;
                    let g = a.scalar(&rat(gamma))?;
                    let mut traces = Vec::new();
                    for maps in &shifted.decoded_basis {
                        traces.push(replay_theorem(Theorem::Cor22, &a, n, &g, &maps[0], &maps[1])?);
                    }
                    Ok((relation, traces))
                });
                match result {
                    Ok((relation, traces)) => {
                        out.check(relation == SubspaceRelation::Equal, || {
                            format!("{label}: shifted vs power spaces {relation}")
                        });
                        for trace in traces {
                            replays += 1;
                            let step = trace.step("M = n Psi - (n-2) gamma Omega satisfies");
                            out.check(step.is_some_and(|s| s.pass), || format!("{label}: degree-2 reduction"));
                            out.check(trace.passed(), || format!("{label}: trace {:?}", trace.steps));
                        }
                    }
                    Err(e) => out.error(&label, e),
                }
            }
        }
    }
    out.summary = format!("18 instances equal to the power-centralizer spaces, {replays} reductions replayed");
    out
}

fn symmetric_generalized() -> Outcome {
    let mut out = Outcome::new();
    let mut gaps = Vec::new();
    for (name, a) in algebras() {
        for n in DEGREES {
            let label = format!("{name} n={n}");
            let result = timed(&mut out, &label, || -> fident_core::Result<_> {
                let (space, binding) = solve_shape(IdentityShape::SymmetricGeneralized, &a, n, 1, false)?;
                let expectation = if n == 2 {
                    Expectation::Equal
                } else {
                    Expectation::Contained
                };
                let checks = Checks {
                    predicates: vec![
                        Predicate::Class {
                            map: "Omega".into(),
                            class: MapClass::TwoSidedGeneralized,
                        },
                        Predicate::DerivationSplit {
                            psi: "Psi".into(),
                            omega: "Omega".into(),
                            n,
                        },
                    ],
                    predicted: Some((predicted_generalized_space(&a, n)?, expectation)),
                    ..Checks::default()
                };
                let report = verified(IdentityShape::SymmetricGeneralized, &a, n, &space, &binding, checks)?;
                Ok(report)
            });
            match result {
                Ok(report) => {
                    out.check(report.passed(), || format!("{label}: {report:?}"));
                    if let Some(c) = &report.comparison {
                        if n == 2 && name == "T2" {
                            out.check(c.solution_dim == 3, || format!("{label}: dim {}", c.solution_dim));
                        }
                        if n > 2 {
                            gaps.push(format!("{name}/{n}:{}", c.gap));
                        }
                    }
                }
                Err(e) => out.error(&label, e),
            }
        }
    }
    out.summary = format!(
        "n=2 equal to Der+Z (T2 dim 3); n>=3 contained, gaps {}",
        gaps.join(" ")
    );
    out
}

fn tied_symmetric_collapse() -> Outcome {
    let mut out = Outcome::new();
    for (name, a) in algebras() {
        for n in DEGREES {
            let label = format!("{name} n={n}");
            let result = timed(&mut out, &label, || -> fident_core::Result<_> {
                let (space, binding) = solve_shape(IdentityShape::SymmetricGeneralized, &a, n, 1, true)?;
                let checks = Checks {
                    predicted: Some((predicted_central_pairs(&a, a.require_unit()?)?, Expectation::Equal)),
                    ..Checks::default()
                };
                let report = verified(IdentityShape::SymmetricGeneralized, &a, n, &space, &binding, checks)?;
                Ok((space.dim(), report))
            });
            match result {
                Ok((dim, report)) => {
                    out.check(report.passed(), || format!("{label}: {report:?}"));
                    out.check(dim == 1, || format!("{label}: dim {dim}"));
                }
                Err(e) => out.error(&label, e),
            }
        }
    }
    out.summary = "9 instances collapse to {(L_c, L_c)}, dim 1".into();
    out
}

fn background_lemmas() -> Outcome {
    let mut out = Outcome::new();
    let mut dims = Vec::new();
    for (name, a) in algebras() {
        let r = verify_background_lemmas(&a);
        out.check(r.jordan_vs_derivation == SubspaceRelation::Equal, || {
            format!("{name}: Jordan vs derivations {}", r.jordan_vs_derivation)
        });
        out.check(r.commuting_jordan_dim == 0, || format!("{name}: commuting Jordan dim {}", r.commuting_jordan_dim));
        out.check(r.condition_p, || format!("{name}: condition (P) fails"));
        dims.push(format!("{name}:{}", r.derivation_dim));
    }
    out.summary = format!("Jordan = derivations (dims {}), no commuting ones, (P) holds", dims.join(" "));
    out
}

fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut total = rat(0);
    for (j, entry) in m[0].iter().enumerate() {
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let sign = if j % 2 == 0 { rat(1) } else { rat(-1) };
        total += sign * entry * cofactor_det(&minor);
    }
    total
}

fn vandermonde_machinery() -> Outcome {
    let mut out = Outcome::new();
    for n in 2..=8u32 {
        let m = i64::from(n) - 1;
        let mut formula = rat(1);
        for j in 1..=m {
            formula *= rat(j);
            for i in 1..j {
                formula *= rat(j - i);
            }
        }
        match (vandermonde_check(n), vandermonde_matrix(n)) {
            (Ok(det), Ok(y)) => {
                out.check(det == formula, || format!("n={n}: {det} vs formula {formula}"));
                out.check(det == cofactor_det(&y.row_vecs()), || format!("n={n}: cofactor oracle disagrees"));
            }
            (Err(e), _) | (_, Err(e)) => out.error(&format!("n={n}"), e),
        }
    }
    out.check(vandermonde_check(4).ok() == Some(rat(12)), || "n=4 is not 12".into());

    // Worked instance: a solved pair on T3 with n = 4, gamma = 2.
    let a = upper_triangular(3).unwrap().into_algebra();
    let n = 4;
    let worked = (|| -> fident_core::Result<()> {
        let (space, _) = solve_shape(IdentityShape::PowerCentralizer, &a, n, 2, false)?;
        let gamma = a.scalar(&rat(2))?;
        let mut sampler = Sampler::new(41);
        let centers = [a.require_unit()?.clone(), Element::new(sampler.combination(&a.center()))];
        for maps in &space.decoded_basis {
            let input = ExpansionInput {
                algebra: &a,
                psi: &maps[0],
                omega: &maps[1],
                gamma: &gamma,
                n,
            };
            for c in &centers {
                for _ in 0..5 {
                    let x = sampler.element(a.dim());
                    let sep = input.separate(IdentityShape::PowerCentralizer, &x, c)?;
                    out.check(sep.consistent(), || "separation disagrees with direct components".into());
                    let top = &sep.solved[n as usize - 2];
                    let next = &sep.solved[n as usize - 3];
                    out.check(top.is_zero() && next.is_zero(), || "top two groups do not vanish".into());
                }
            }
        }
        // A perturbed pair must leave a nonzero group.
        let mut bad = maps_perturbed(&space);
        let input = ExpansionInput {
            algebra: &a,
            psi: &bad.remove(0),
            omega: &bad.remove(0),
            gamma: &gamma,
            n,
        };
        let x = sampler.element(a.dim());
        let sep = input.separate(IdentityShape::PowerCentralizer, &x, &centers[0])?;
        out.check(!sep.all_vanish(), || "perturbed pair separated to zero".into());
        Ok(())
    })();
    if let Err(e) = worked {
        out.error("worked instance", e);
    }
    out.summary = "det = (n-1)! prod(j-i) for n=2..8 (n=4: 12), top groups vanish on T3 n=4".into();
    out
}

fn maps_perturbed(space: &SolutionSpace) -> Vec<fident_core::LinearMap> {
    let maps = &space.decoded_basis[0];
    let d = maps[0].dim();
    let mut v = maps[0].to_vector();
    v[d] += rat(1);
    vec![fident_core::LinearMap::from_vector(d, &v).unwrap(), maps[1].clone()]
}

fn center_formula() -> Outcome {
    let mut out = Outcome::new();
    let mut sampler = Sampler::new(2024);
    let mut built: Vec<(String, TriangularAlgebra)> = vec![
        ("T2".into(), upper_triangular(2).unwrap()),
        ("T3".into(), upper_triangular(3).unwrap()),
        ("TriM2x1".into(), matrix_bimodule(2, 1).unwrap()),
    ];
    for i in 0..10 {
        match random_triangular(&mut sampler) {
            Ok(t) => built.push((format!("random #{i}"), t)),
            Err(e) => out.error(&format!("random #{i}"), e),
        }
    }
    for (name, t) in &built {
        out.check(t.faithfulness().both(), || format!("{name}: not faithful"));
        out.check(t.component_a().dim() <= 4 && t.component_b().dim() <= 4 && t.module().dim() <= 4, || format!("{name}: too large"));
        match t.center_by_formula().compare(&t.algebra().center()) {
            Ok(r) => out.check(r == SubspaceRelation::Equal, || format!("{name}: formula vs generic {r}")),
            Err(e) => out.error(name, e),
        }
    }
    out.summary = format!("{} faithful triangular algebras, formula = generic center", built.len());
    out
}

fn dsl_round_trip() -> Outcome {
    let mut out = Outcome::new();
    let identities = [
        ("Psi(X^3) = g*X^2*Omega(X) = g*Omega(X)*X^2", 3),
        ("Psi(X^4) = g*X*Omega(X^3) = g*Omega(X^3)*X", 4),
        ("Psi(X^2) = g*X*Omega(X) = g*Omega(X)*X", 2),
        ("Psi(X^5) = g*X*Omega(X^4) = g*Omega(X^4)*X", 5),
        ("2*Psi(X^3) = X^2*Omega(X) + Omega(X)*X^2", 3),
        ("2*Psi(X^4) = X^3*Psi(X) + Psi(X)*X^3", 4),
    ];
    for (text, n) in identities {
        match parse_and_validate(text) {
            Ok(id) => {
                out.check(id.degree == n, || format!("`{text}`: degree {}", id.degree));
                let printed = id.source.to_string();
                match parse_identity(&printed) {
                    Ok(again) => out.check(again == id.source, || format!("`{text}` -> `{printed}` differs")),
                    Err(e) => out.error(&printed, e),
                }
            }
            Err(e) => out.error(text, e),
        }
    }
    let nested = parse_and_validate("Psi(Omega(X)) = X");
    out.check(matches!(nested, Err(Error::NestedMap { .. })), || format!("nested map: {nested:?}"));
    let low = parse_and_validate("Psi(X^1) = Omega(X)");
    out.check(matches!(low, Err(Error::DegreeTooLow(1))), || format!("n = 1: {low:?}"));
    let mixed = parse_and_validate("Psi(X^2) = X*Omega(X^2)");
    out.check(matches!(mixed, Err(Error::Inhomogeneous { .. })), || format!("inhomogeneous: {mixed:?}"));
    out.summary = "6 identities round-trip with correct n; 3 rejections".into();
    out
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: [Criterion; 8] = [
        ("power-centralizer identity = central pairs", power_centralizer_equality),
        ("shifted identity = power-centralizer identity", shifted_centralizer_equality),
        ("symmetric identity gives generalized derivations", symmetric_generalized),
        ("tied symmetric identity collapses", tied_symmetric_collapse),
        ("background lemmas", background_lemmas),
        ("Vandermonde machinery", vandermonde_machinery),
        ("center formula", center_formula),
        ("DSL round-trip", dsl_round_trip),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let ok = outcome.failures.is_empty();
        all &= ok;
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!(
            "{verdict} criterion {}: {name} ({}) [{:.2?}]",
            i + 1,
            outcome.summary,
            t.elapsed()
        );
        for f in &outcome.failures {
            println!("    {f}");
        }
    }
    let total = start.elapsed();
    let in_budget = total <= TOTAL_BUDGET;
    println!("total {total:.2?} (budget {TOTAL_BUDGET:?}): {}", if in_budget { "PASS" } else { "FAIL" });
    if all && in_budget {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
