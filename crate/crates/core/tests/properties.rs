mod common;

use fident_core::algebra::derivation_space;
use fident_core::dsl::{parse_and_validate, IdentityShape};
use fident_core::engine::{solve_identity, Binding, SideConstraint, SolutionSpace};
use fident_core::linalg::{rat, Rational, SubspaceRelation};
use fident_core::replay::ExpansionInput;
use fident_core::sample::Sampler;
use fident_core::triangular::{matrix_bimodule, upper_triangular};
use fident_core::{classify_map, Algebra, Element, LinearMap, Side};
use proptest::prelude::*;

use common::random_triangular;

fn t3() -> Algebra {
    upper_triangular(3).unwrap().into_algebra()
}

fn tri() -> Algebra {
    matrix_bimodule(2, 1).unwrap().into_algebra()
}

fn solved(a: &Algebra, shape: IdentityShape, n: u32, gamma: &Rational) -> SolutionSpace {
    let id = parse_and_validate(&shape.text(n)).unwrap();
    let mut binding = Binding::new().constrain(SideConstraint::unit_image_central("Omega"));
    if shape.uses_gamma() {
        binding = binding.invertible_central("g", a.scalar(gamma).unwrap());
    }
    solve_identity(&id, a, &binding).unwrap()
}

/// A random member of the solution space, as `(Psi, Omega)`.
fn random_solution(space: &SolutionSpace, sampler: &mut Sampler) -> (LinearMap, LinearMap) {
    let maps = space.decode(&sampler.combination(&space.space)).unwrap();
    (maps[0].clone(), maps[1].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn multiplication_operators_classify(seed in any::<u64>(), use_tri in any::<bool>()) {
        let a = if use_tri { tri() } else { t3() };
        let mut sampler = Sampler::new(seed);
        let c = sampler.element(a.dim());
        let report = classify_map(&a, &a.mult_operator(&c, Side::Left)).unwrap();
        prop_assert!(report.left_centralizer);
        prop_assert_eq!(report.two_sided_centralizer, a.is_central(&c));

        let z = Element::new(sampler.combination(&a.center()));
        prop_assert_eq!(a.mult_operator(&z, Side::Left), a.mult_operator(&z, Side::Right));
        prop_assert!(classify_map(&a, &a.mult_operator(&z, Side::Left)).unwrap().two_sided_centralizer);
    }

    #[test]
    fn derivations_are_generalized_derivations(seed in any::<u64>()) {
        let a = tri();
        let mut sampler = Sampler::new(seed);
        let der = derivation_space(&a);
        let d = LinearMap::from_vector(a.dim(), &sampler.combination(&der)).unwrap();
        let report = classify_map(&a, &d).unwrap();
        prop_assert!(report.derivation && report.jordan_derivation);
        prop_assert!(report.l_generalized && report.r_generalized);
        prop_assert_eq!(report.l_witness.as_ref(), Some(&d));
    }

    #[test]
    fn random_triangular_algebras_are_well_formed(seed in any::<u64>()) {
        let mut sampler = Sampler::new(seed);
        let t = random_triangular(&mut sampler).unwrap();
        let a = t.algebra();
        prop_assert!(a.validate().passed());
        prop_assert!(t.faithfulness().both());
        prop_assert!(a.condition_p());
        prop_assert_eq!(t.center_by_formula().compare(&a.center()).unwrap(), SubspaceRelation::Equal);

        let unit = a.require_unit().unwrap();
        prop_assert!(a.is_central(unit));
        let (da, dm) = (t.component_a().dim(), t.module().dim());
        let mut expected = t.component_a().require_unit().unwrap().coords().to_vec();
        expected.extend(std::iter::repeat_n(rat(0), dm));
        expected.extend(t.component_b().require_unit().unwrap().coords().iter().cloned());
        prop_assert_eq!(unit.coords(), &expected[..]);
        prop_assert_eq!(expected.len(), da + dm + t.component_b().dim());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn solutions_make_every_component_sum_vanish(seed in any::<u64>(), n in 2u32..=4, shape_index in 0usize..3) {
        let a = t3();
        let shape = IdentityShape::ALL[shape_index];
        let gamma = rat(2);
        let space = solved(&a, shape, n, &gamma);
        let mut sampler = Sampler::new(seed);
        let (psi, omega) = random_solution(&space, &mut sampler);
        let g = a.scalar(&gamma).unwrap();
        let input = ExpansionInput { algebra: &a, psi: &psi, omega: &omega, gamma: &g, n };
        for _ in 0..3 {
            let x = sampler.element(a.dim());
            let c = Element::new(sampler.combination(&a.center()));
            prop_assert!(input.component_sum(shape, &x, &c).unwrap().is_zero());
        }
    }

    #[test]
    fn centralizer_solutions_commute_with_x(seed in any::<u64>(), n in 2u32..=4) {
        let a = tri();
        let space = solved(&a, IdentityShape::PowerCentralizer, n, &rat(1));
        let mut sampler = Sampler::new(seed);
        let (_, omega) = random_solution(&space, &mut sampler);
        let x = sampler.element(a.dim());
        let w = omega.apply(&x);
        prop_assert_eq!(a.mul(&w, &x), a.mul(&x, &w));
    }

    #[test]
    fn symmetric_solutions_expand_through_their_derivation(seed in any::<u64>(), n in 2u32..=4) {
        let a = t3();
        let space = solved(&a, IdentityShape::SymmetricGeneralized, n, &rat(1));
        let mut sampler = Sampler::new(seed);
        let (_, omega) = random_solution(&space, &mut sampler);
        let w = omega.apply(a.require_unit().unwrap());
        let delta = omega.sub(&a.mult_operator(&w, Side::Left));
        let (x, y) = (sampler.element(a.dim()), sampler.element(a.dim()));
        let lhs = omega.apply(&a.mul(&x, &y));
        prop_assert_eq!(&lhs, &(&a.mul(&delta.apply(&x), &y) + &a.mul(&x, &omega.apply(&y))));
        prop_assert_eq!(&lhs, &(&a.mul(&omega.apply(&x), &y) + &a.mul(&x, &delta.apply(&y))));
    }
}

/// Random pairs are expected to violate the decomposition somewhere; the
/// number of trials with a witness is reported, not asserted.
#[test]
fn non_solutions_leave_a_component_witness() {
    let a = t3();
    let d = a.dim();
    let one = a.require_unit().unwrap().clone();
    let mut sampler = Sampler::new(50);
    let mut witnessed = 0;
    for _ in 0..50 {
        let psi = LinearMap::from_vector(d, &sampler.vector(d * d)).unwrap();
        let omega = LinearMap::from_vector(d, &sampler.vector(d * d)).unwrap();
        let input = ExpansionInput {
            algebra: &a,
            psi: &psi,
            omega: &omega,
            gamma: &one,
            n: 3,
        };
        let found = (0..d).any(|i| {
            !input
                .component_sum(IdentityShape::PowerCentralizer, &a.basis(i), &one)
                .unwrap()
                .is_zero()
        });
        witnessed += usize::from(found);
    }
    println!("non-solution pairs with a basis witness: {witnessed}/50");
}
