//! Evaluation of identity terms on argument lists.
//!
//! A term of degree `n` is read as a multilinear function of `n` arguments,
//! one per occurrence of `X` from left to right. Substituting the same
//! element everywhere recovers the pointwise value.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, Element, LinearMap};
use crate::dsl::{Expr, Factor, Term};
use crate::error::{Error, Result};
use crate::linalg::Rational;

/// Values for the symbols of an identity.
#[derive(Clone, Copy)]
pub(crate) struct Scope<'a> {
    pub algebra: &'a Algebra,
    pub centrals: &'a BTreeMap<String, Element>,
    pub maps: &'a BTreeMap<String, LinearMap>,
}

/// A term whose single unknown map has been isolated:
/// `coeff * left * f(arg) * right`, where a missing side is the empty product.
pub(crate) struct LinearPiece {
    pub map: String,
    pub coeff: Rational,
    pub left: Option<Element>,
    pub arg: Element,
    pub right: Option<Element>,
}

pub(crate) enum Piece {
    Known(Element),
    Linear(LinearPiece),
}

fn times(algebra: &Algebra, acc: Option<Element>, x: &Element) -> Option<Element> {
    Some(match acc {
        None => x.clone(),
        Some(a) => algebra.mul(&a, x),
    })
}

fn product(algebra: &Algebra, args: &[&Element]) -> Element {
    let mut acc = args[0].clone();
    for x in &args[1..] {
        acc = algebra.mul(&acc, x);
    }
    acc
}

impl<'a> Scope<'a> {
    fn central(&self, name: &str) -> Result<&'a Element> {
        self.centrals
            .get(name)
            .ok_or_else(|| Error::UnresolvedSymbol(name.to_string()))
    }

    /// Splits `term(args)`; maps missing from the scope are treated as unknown.
    /// At most one unknown map application per term is supported.
    pub fn split(&self, term: &Term, args: &[&Element]) -> Result<Piece> {
        let a = self.algebra;
        if term.is_zero() {
            return Ok(Piece::Known(a.zero()));
        }
        let mut used = 0;
        let mut acc: Option<Element> = None;
        let mut unknown: Option<(String, Option<Element>, Element)> = None;
        for factor in &term.factors {
            let value = match factor {
                Factor::Power(k) => {
                    let k = *k as usize;
                    let v = product(a, &args[used..used + k]);
                    used += k;
                    v
                }
                Factor::MapApp { map, power } => {
                    let k = *power as usize;
                    let v = product(a, &args[used..used + k]);
                    used += k;
                    match self.maps.get(map) {
                        Some(f) => f.apply(&v),
                        None => {
                            if unknown.is_some() {
                                return Err(Error::UnresolvedSymbol(map.clone()));
                            }
                            unknown = Some((map.clone(), acc.take(), v));
                            continue;
                        }
                    }
                }
                Factor::Central(name) => self.central(name)?.clone(),
            };
            acc = times(a, acc, &value);
        }
        debug_assert_eq!(used, args.len(), "argument count must equal term degree");
        Ok(match unknown {
            None => {
                let value = match acc {
                    Some(v) => v,
                    None => a.require_unit()?.clone(),
                };
                Piece::Known(value.scale(&term.coeff))
            }
            Some((map, left, arg)) => Piece::Linear(LinearPiece {
                map,
                coeff: term.coeff.clone(),
                left,
                arg,
                right: acc,
            }),
        })
    }

    /// Value of a term when every map it uses is known.
    pub fn term_value(&self, term: &Term, args: &[&Element]) -> Result<Element> {
        match self.split(term, args)? {
            Piece::Known(v) => Ok(v),
            Piece::Linear(p) => Err(Error::UnresolvedSymbol(p.map)),
        }
    }

    pub fn expr_value(&self, expr: &Expr, args: &[&Element]) -> Result<Element> {
        let mut sum = self.algebra.zero();
        for term in &expr.terms {
            if !term.is_zero() {
                sum = &sum + &self.term_value(term, args)?;
            }
        }
        Ok(sum)
    }

    /// `expr(x, x, ..., x)`.
    pub fn expr_at(&self, expr: &Expr, x: &Element, degree: u32) -> Result<Element> {
        let args = vec![x; degree as usize];
        self.expr_value(expr, &args)
    }

    /// Sum of `expr` over the distinct arrangements of a multiset of basis
    /// indices. Vanishing on every multiset is equivalent to `expr(X) = 0`
    /// for all `X` over a field of characteristic zero.
    pub fn polarized(&self, expr: &Expr, multiset: &[usize]) -> Result<Element> {
        let basis: BTreeMap<usize, Element> =
            multiset.iter().map(|&i| (i, self.algebra.basis(i))).collect();
        let mut sum = self.algebra.zero();
        for order in arrangements(multiset) {
            let args: Vec<&Element> = order.iter().map(|i| &basis[i]).collect();
            sum = &sum + &self.expr_value(expr, &args)?;
        }
        Ok(sum)
    }
}

/// Multisets of size `n` from `0..d`, as non-decreasing sequences in
/// lexicographic order.
pub fn multisets(d: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    let mut current = vec![0; n];
    loop {
        out.push(current.clone());
        let Some(pos) = (0..n).rev().find(|&p| current[p] + 1 < d) else {
            return out;
        };
        let v = current[pos] + 1;
        for c in &mut current[pos..] {
            *c = v;
        }
    }
}

/// Distinct orderings of a multiset, in lexicographic order.
pub fn arrangements(multiset: &[usize]) -> Vec<Vec<usize>> {
    let mut current = multiset.to_vec();
    current.sort_unstable();
    let mut out = vec![current.clone()];
    loop {
        let n = current.len();
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("successor");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// Number of multisets of size `n` from `d` kinds.
pub fn multiset_count(d: usize, n: usize) -> usize {
    if d == 0 {
        return usize::from(n == 0);
    }
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * (d as u128 + i) / (i + 1);
    }
    c as usize
}
