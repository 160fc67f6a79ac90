use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::Rational;

/// A chain `side_0 = side_1 = ...` of expressions in the single variable `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub sides: Vec<Expr>,
}

/// A sum of terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

/// `coeff * f_1 * f_2 * ...`, with non-commuting factors in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// `X^k`, `k >= 1`.
    Power(u32),
    /// `f(X^k)`.
    MapApp { map: String, power: u32 },
    /// A named central element.
    Central(String),
}

impl Factor {
    pub fn degree(&self) -> u32 {
        match self {
            Factor::Power(k) | Factor::MapApp { power: k, .. } => *k,
            Factor::Central(_) => 0,
        }
    }
}

impl Term {
    pub fn new(coeff: Rational, factors: Vec<Factor>) -> Self {
        Term { coeff, factors }
    }

    /// Total number of `X` occurrences, counting inside map arguments.
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(Factor::degree).sum()
    }

    pub fn map_apps(&self) -> impl Iterator<Item = (&str, u32)> {
        self.factors.iter().filter_map(|f| match f {
            Factor::MapApp { map, power } => Some((map.as_str(), *power)),
            _ => None,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn negated(&self) -> Term {
        Term {
            coeff: -self.coeff.clone(),
            factors: self.factors.clone(),
        }
    }
}

impl Expr {
    pub fn new(terms: Vec<Term>) -> Self {
        Expr { terms }
    }

    /// `self - other`, by concatenating negated terms.
    pub fn minus(&self, other: &Expr) -> Expr {
        Expr {
            terms: self
                .terms
                .iter()
                .cloned()
                .chain(other.terms.iter().map(Term::negated))
                .collect(),
        }
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, k: u32) -> fmt::Result {
    if k == 1 {
        write!(f, "X")
    } else {
        write!(f, "X^{k}")
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Power(k) => write_power(f, *k),
            Factor::MapApp { map, power } => {
                write!(f, "{map}(")?;
                write_power(f, *power)?;
                write!(f, ")")
            }
            Factor::Central(name) => write!(f, "{name}"),
        }
    }
}

/// Writes the term with the absolute value of its coefficient.
fn write_unsigned_term(f: &mut fmt::Formatter<'_>, term: &Term) -> fmt::Result {
    let magnitude = term.coeff.abs();
    let mut first = true;
    if !magnitude.is_one() || term.factors.is_empty() {
        write!(f, "{magnitude}")?;
        first = false;
    }
    for factor in &term.factors {
        if !first {
            write!(f, "*")?;
        }
        write!(f, "{factor}")?;
        first = false;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.terms.iter().enumerate() {
            let negative = term.coeff.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_unsigned_term(f, term)?;
        }
        Ok(())
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, side) in self.sides.iter().enumerate() {
            if i > 0 {
                write!(f, " = ")?;
            }
            write!(f, "{side}")?;
        }
        Ok(())
    }
}
