//! Expansion of an identity at `X + C` for central `C`, grouped by the number
//! of factors of `C`, and the Vandermonde system that separates the groups.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::algebra::{Algebra, Element, LinearMap};
use crate::dsl::IdentityShape;
use crate::error::{Error, Result};
use crate::linalg::{determinant, solve, Matrix, Rational};

/// `binom(n, k)`, zero outside `0..=n`.
pub fn binom(n: i64, k: i64) -> Rational {
    if k < 0 || n < 0 || k > n {
        return Rational::zero();
    }
    Rational::from_integer(binomial(BigInt::from(n), BigInt::from(k)))
}

/// The maps and central data of one expansion.
#[derive(Clone, Copy, Debug)]
pub struct ExpansionInput<'a> {
    pub algebra: &'a Algebra,
    pub psi: &'a LinearMap,
    pub omega: &'a LinearMap,
    pub gamma: &'a Element,
    pub n: u32,
}

impl ExpansionInput<'_> {
    /// The group of terms with exactly `k` factors of `c` (`1 <= k <= n - 1`)
    /// in the expansion of the first equality of `shape` at `x + c`.
    /// [`IdentityShape::SymmetricSelf`] uses `psi` in place of `omega`.
    pub fn component(&self, shape: IdentityShape, k: u32, x: &Element, c: &Element) -> Result<Element> {
        let a = self.algebra;
        let n = self.n;
        if n < 2 || k == 0 || k >= n {
            return Err(Error::OutOfRange {
                what: "component index (need 1 <= k <= n - 1)",
                value: i64::from(k),
            });
        }
        if !a.is_central(c) {
            return Err(Error::NotCentral("C".into()));
        }
        let (ni, ki) = (i64::from(n), i64::from(k));
        let pow = |e: &Element, p: u32| a.pow(e, p);
        let mul = |l: &Element, r: &Element| a.mul(l, r);
        let omega = match shape {
            IdentityShape::SymmetricSelf => self.psi,
            _ => self.omega,
        };
        let head = self.psi.apply(&mul(&pow(x, n - k)?, &pow(c, k)?));
        let value = match shape {
            IdentityShape::PowerCentralizer => {
                let t1 = mul(&pow(c, k)?, &mul(&pow(x, n - k - 1)?, &omega.apply(x)));
                let t2 = mul(&pow(c, k - 1)?, &mul(&pow(x, n - k)?, &omega.apply(c)));
                let g1 = mul(self.gamma, &t1).scale(&binom(ni - 1, ki));
                let g2 = mul(self.gamma, &t2).scale(&binom(ni - 1, ki - 1));
                &(&head.scale(&binom(ni, ki)) - &g1) - &g2
            }
            IdentityShape::ShiftedCentralizer => {
                let t1 = mul(x, &omega.apply(&mul(&pow(c, k)?, &pow(x, n - k - 1)?)));
                let t2 = mul(c, &omega.apply(&mul(&pow(c, k - 1)?, &pow(x, n - k)?)));
                let g1 = mul(self.gamma, &t1).scale(&binom(ni - 1, ki));
                let g2 = mul(self.gamma, &t2).scale(&binom(ni - 1, ki - 1));
                &(&head.scale(&binom(ni, ki)) - &g1) - &g2
            }
            IdentityShape::SymmetricGeneralized | IdentityShape::SymmetricSelf => {
                let ck1 = pow(c, k - 1)?;
                let ck = pow(c, k)?;
                let xa = pow(x, n - k)?;
                let xb = pow(x, n - 1 - k)?;
                let oc = omega.apply(c);
                let ox = omega.apply(x);
                let low = &mul(&ck1, &mul(&xa, &oc)) + &mul(&ck1, &mul(&oc, &xa));
                let high = &mul(&ck, &mul(&xb, &ox)) + &mul(&ck, &mul(&ox, &xb));
                let two = Rational::from_integer(2.into());
                &(&head.scale(&(two * binom(ni, ki))) - &low.scale(&binom(ni - 1, ki - 1)))
                    - &high.scale(&binom(ni - 1, ki))
            }
        };
        Ok(value)
    }

    /// `sum_{k=1}^{n-1} component(k)`.
    pub fn component_sum(&self, shape: IdentityShape, x: &Element, c: &Element) -> Result<Element> {
        let mut sum = self.algebra.zero();
        for k in 1..self.n {
            sum = &sum + &self.component(shape, k, x, c)?;
        }
        Ok(sum)
    }

    /// Recovers the components at `(x, c)` from the sums at `(x, j c)`,
    /// `j = 1..n-1`, by solving the Vandermonde system. Each component is
    /// homogeneous of degree `k` in `c`, so the sum at `j c` is
    /// `sum_k j^k component(k)`.
    pub fn separate(&self, shape: IdentityShape, x: &Element, c: &Element) -> Result<Separation> {
        let m = self.n as usize - 1;
        let y = vandermonde_matrix(self.n)?;
        let sums: Vec<Element> = (1..=m)
            .map(|j| self.component_sum(shape, x, &c.scale(&Rational::from_integer(BigInt::from(j)))))
            .collect::<Result<_>>()?;
        let columns = (0..self.algebra.dim())
            .map(|coord| {
                let rhs: Vec<Rational> = sums.iter().map(|s| s.coords()[coord].clone()).collect();
                solve(&y, &rhs)?.ok_or(Error::Inconsistent)
            })
            .collect::<Result<Vec<_>>>()?;
        let solved = (0..m)
            .map(|k| Element::new(columns.iter().map(|col| col[k].clone()).collect()))
            .collect();
        let direct = (1..self.n)
            .map(|k| self.component(shape, k, x, c))
            .collect::<Result<_>>()?;
        Ok(Separation {
            sums,
            solved,
            direct,
        })
    }
}

/// Outcome of [`ExpansionInput::separate`]; index `k - 1` holds component `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub sums: Vec<Element>,
    pub solved: Vec<Element>,
    pub direct: Vec<Element>,
}

impl Separation {
    pub fn consistent(&self) -> bool {
        self.solved == self.direct
    }

    pub fn all_vanish(&self) -> bool {
        self.solved.iter().all(Element::is_zero)
    }
}

/// Rows `(j, j^2, ..., j^{n-1})` for `j = 1..n-1`.
pub fn vandermonde_matrix(n: u32) -> Result<Matrix> {
    if n < 2 {
        return Err(Error::DegreeTooLow(n));
    }
    let m = n as usize - 1;
    let rows = (1..=m)
        .map(|j| {
            let base = Rational::from_integer(BigInt::from(j));
            let mut p = Rational::one();
            (0..m)
                .map(|_| {
                    p = &p * &base;
                    p.clone()
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(m, rows)
}

/// Exact determinant of [`vandermonde_matrix`]; an error if it vanished.
pub fn vandermonde_check(n: u32) -> Result<Rational> {
    let det = determinant(&vandermonde_matrix(n)?)?;
    if det.is_zero() {
        return Err(Error::Inconsistent);
    }
    Ok(det)
}

/// Value of one expansion component; see [`ExpansionInput::component`].
#[allow(clippy::too_many_arguments)]
pub fn component_value(
    shape: IdentityShape,
    k: u32,
    x: &Element,
    c: &Element,
    algebra: &Algebra,
    psi: &LinearMap,
    omega: &LinearMap,
    gamma: &Element,
    n: u32,
) -> Result<Element> {
    ExpansionInput {
        algebra,
        psi,
        omega,
        gamma,
        n,
    }
    .component(shape, k, x, c)
}
