use serde::Serialize;

use super::{Algebra, Element, LinearMap, Side};
use crate::error::{Error, Result};

/// Which of the standard map classes a linear map belongs to.
///
/// Bilinear definitions are checked on every basis pair. Quadratic ones
/// (Jordan variants, commuting) are checked through their polarizations,
/// which is equivalent over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub left_centralizer: bool,
    pub right_centralizer: bool,
    pub two_sided_centralizer: bool,
    pub jordan_left: bool,
    pub jordan_right: bool,
    pub jordan_two_sided: bool,
    pub jordan_centralizer: bool,
    pub derivation: bool,
    pub jordan_derivation: bool,
    pub commuting: bool,
    pub l_generalized: bool,
    pub r_generalized: bool,
    pub two_sided_generalized: bool,
    /// `d = F - L_{F(1)}` when `F(xy) = F(x)y + x d(y)` with `d` a derivation.
    pub l_witness: Option<LinearMap>,
    /// `g = F - R_{F(1)}` when `F(xy) = g(x)y + x F(y)` with `g` a derivation.
    pub r_witness: Option<LinearMap>,
}

fn all_pairs(d: usize, symmetric: bool, mut check: impl FnMut(usize, usize) -> bool) -> bool {
    (0..d).all(|i| {
        let start = if symmetric { i } else { 0 };
        (start..d).all(|j| check(i, j))
    })
}

fn is_derivation(a: &Algebra, map: &LinearMap, images: &[Element]) -> bool {
    let d = a.dim();
    all_pairs(d, false, |i, j| {
        let (ei, ej) = (a.basis(i), a.basis(j));
        map.apply(&a.mul(&ei, &ej)) == &a.mul(&images[i], &ej) + &a.mul(&ei, &images[j])
    })
}

pub fn classify_map(a: &Algebra, f: &LinearMap) -> Result<ClassificationReport> {
    let d = a.dim();
    if f.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: f.dim(),
        });
    }
    let basis: Vec<Element> = (0..d).map(|i| a.basis(i)).collect();
    let images: Vec<Element> = (0..d).map(|j| f.image_of_basis(j)).collect();
    let image_of_product = |i: usize, j: usize| f.apply(&a.mul(&basis[i], &basis[j]));

    let left_centralizer =
        all_pairs(d, false, |i, j| image_of_product(i, j) == a.mul(&images[i], &basis[j]));
    let right_centralizer =
        all_pairs(d, false, |i, j| image_of_product(i, j) == a.mul(&basis[i], &images[j]));

    // T(x o y) = T(x) y + T(y) x  /  x T(y) + y T(x)
    let jordan_left = all_pairs(d, true, |i, j| {
        f.apply(&a.jordan(&basis[i], &basis[j]))
            == &a.mul(&images[i], &basis[j]) + &a.mul(&images[j], &basis[i])
    });
    let jordan_right = all_pairs(d, true, |i, j| {
        f.apply(&a.jordan(&basis[i], &basis[j]))
            == &a.mul(&basis[i], &images[j]) + &a.mul(&basis[j], &images[i])
    });
    let jordan_centralizer = all_pairs(d, false, |i, j| {
        let lhs = f.apply(&a.jordan(&basis[i], &basis[j]));
        lhs == a.jordan(&images[i], &basis[j]) && lhs == a.jordan(&basis[i], &images[j])
    });

    let derivation = is_derivation(a, f, &images);
    let jordan_derivation = all_pairs(d, true, |i, j| {
        let rhs = &(&a.mul(&images[i], &basis[j]) + &a.mul(&basis[j], &images[i]))
            + &(&a.mul(&images[j], &basis[i]) + &a.mul(&basis[i], &images[j]));
        f.apply(&a.jordan(&basis[i], &basis[j])) == rhs
    });
    let commuting = all_pairs(d, true, |i, j| {
        (&a.commutator(&images[i], &basis[j]) + &a.commutator(&images[j], &basis[i])).is_zero()
    });

    let (mut l_witness, mut r_witness) = (None, None);
    if let Some(unit) = a.unit() {
        let f1 = f.apply(unit);
        let dl = f.sub(&a.mult_operator(&f1, Side::Left));
        let dl_images: Vec<Element> = (0..d).map(|j| dl.image_of_basis(j)).collect();
        let l_ok = is_derivation(a, &dl, &dl_images)
            && all_pairs(d, false, |i, j| {
                image_of_product(i, j)
                    == &a.mul(&images[i], &basis[j]) + &a.mul(&basis[i], &dl_images[j])
            });
        if l_ok {
            l_witness = Some(dl);
        }

        let gr = f.sub(&a.mult_operator(&f1, Side::Right));
        let gr_images: Vec<Element> = (0..d).map(|j| gr.image_of_basis(j)).collect();
        let r_ok = is_derivation(a, &gr, &gr_images)
            && all_pairs(d, false, |i, j| {
                image_of_product(i, j)
                    == &a.mul(&gr_images[i], &basis[j]) + &a.mul(&basis[i], &images[j])
            });
        if r_ok {
            r_witness = Some(gr);
        }
    }
    let (l_generalized, r_generalized) = (l_witness.is_some(), r_witness.is_some());

    Ok(ClassificationReport {
        left_centralizer,
        right_centralizer,
        two_sided_centralizer: left_centralizer && right_centralizer,
        jordan_left,
        jordan_right,
        jordan_two_sided: jordan_left && jordan_right,
        jordan_centralizer,
        derivation,
        jordan_derivation,
        commuting,
        l_generalized,
        r_generalized,
        two_sided_generalized: l_generalized && r_generalized,
        l_witness,
        r_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::full_matrix_algebra;
    use crate::sample::Sampler;
    use crate::triangular::upper_triangular;

    fn t2() -> Algebra {
        upper_triangular(2).unwrap().algebra().clone()
    }

    fn inner(a: &Algebra, c: &Element) -> LinearMap {
        a.mult_operator(c, Side::Left).sub(&a.mult_operator(c, Side::Right))
    }

    #[test]
    fn identity_is_everything_centralizer() {
        let r = classify_map(&t2(), &LinearMap::identity(3)).unwrap();
        assert!(r.two_sided_centralizer && r.left_centralizer && r.right_centralizer);
        assert!(r.jordan_two_sided && r.jordan_centralizer && r.commuting);
        assert!(r.two_sided_generalized);
        assert!(!r.derivation);
        assert_eq!(r.l_witness, Some(LinearMap::zero(3)));
    }

    #[test]
    fn inner_derivation() {
        let a = t2();
        let ad = inner(&a, &Element::from_i64(&[0, 1, 0]));
        let r = classify_map(&a, &ad).unwrap();
        assert!(r.derivation && r.jordan_derivation);
        assert!(r.l_generalized && r.r_generalized);
        assert_eq!(r.l_witness.as_ref(), Some(&ad));
        assert_eq!(r.r_witness.as_ref(), Some(&ad));
        assert!(!r.left_centralizer && !r.right_centralizer);
    }

    #[test]
    fn right_multiplication_by_e12() {
        // T(e11 e11) = e12 but T(e11) e11 = e12 e11 = 0
        let a = t2();
        let t = a.mult_operator(&Element::from_i64(&[0, 1, 0]), Side::Right);
        let r = classify_map(&a, &t).unwrap();
        assert!(r.right_centralizer);
        let brute_left = (0..3).all(|i| {
            (0..3).all(|j| {
                let (ei, ej) = (a.basis(i), a.basis(j));
                t.apply(&a.mul(&ei, &ej)) == a.mul(&t.apply(&ei), &ej)
            })
        });
        assert_eq!(r.left_centralizer, brute_left);
        assert!(!r.left_centralizer);
        let e11 = a.basis(0);
        assert_ne!(t.apply(&a.mul(&e11, &e11)), a.mul(&t.apply(&e11), &e11));
    }

    #[test]
    fn multiplication_operators_and_center() {
        for a in [t2(), full_matrix_algebra(2).unwrap()] {
            let center = a.center();
            for i in 0..a.dim() {
                let c = a.basis(i);
                let r = classify_map(&a, &a.mult_operator(&c, Side::Left)).unwrap();
                assert!(r.left_centralizer);
                assert_eq!(r.two_sided_centralizer, center.contains(c.coords()));
            }
            let mut sampler = Sampler::new(7);
            for _ in 0..5 {
                let c = sampler.element(a.dim());
                let r = classify_map(&a, &a.mult_operator(&c, Side::Left)).unwrap();
                assert!(r.left_centralizer);
                assert_eq!(r.two_sided_centralizer, center.contains(c.coords()));
                let z = a.unit().unwrap().scale(&sampler.rational());
                assert!(classify_map(&a, &a.mult_operator(&z, Side::Left)).unwrap().two_sided_centralizer);
                assert_eq!(a.mult_operator(&z, Side::Left), a.mult_operator(&z, Side::Right));
            }
        }
    }

    #[test]
    fn jordan_derivation_flag_is_pointwise_sound() {
        let a = upper_triangular(3).unwrap().algebra().clone();
        let mut sampler = Sampler::new(11);
        let c = sampler.element(a.dim());
        let d = inner(&a, &c);
        let r = classify_map(&a, &d).unwrap();
        assert!(r.jordan_derivation);
        for _ in 0..200 {
            let x = sampler.element(a.dim());
            let lhs = d.apply(&a.mul(&x, &x));
            let dx = d.apply(&x);
            assert_eq!(lhs, &a.mul(&dx, &x) + &a.mul(&x, &dx));
        }
    }

    #[test]
    fn non_unital_has_no_generalized_flags() {
        let a = Algebra::from_products(1, |_, _| vec![], None, None).unwrap();
        let r = classify_map(&a, &LinearMap::identity(1)).unwrap();
        assert!(!r.l_generalized && !r.r_generalized && r.l_witness.is_none());
        assert!(classify_map(&a, &LinearMap::identity(2)).is_err());
    }
}
