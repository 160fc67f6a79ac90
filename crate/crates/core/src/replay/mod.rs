//! Step-by-step re-verification of the classical arguments on concrete
//! solutions: the expansion at `X + C`, its separation by a Vandermonde
//! system, the derived quadratic identities and the background facts about
//! Jordan derivations on triangular algebras.

mod components;
mod lemmas;
mod theorems;

use std::fmt;
use std::str::FromStr;

pub use components::{
    binom, component_value, vandermonde_check, vandermonde_matrix, ExpansionInput, Separation,
};
pub use lemmas::{verify_background_lemmas, LemmaReport};
pub use theorems::{replay_theorem, ProofTrace, StepRecord, RANDOM_POINTS};

use crate::dsl::IdentityShape;
use crate::error::Error;

/// The four characterization results, keyed by their command-line tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Power-centralizer identity: solutions are `(gamma L_c, L_c)`.
    Thm21,
    /// Shifted-centralizer identity, reduced to the previous case.
    Cor22,
    /// Symmetric identity: solutions are two-sided generalized derivations.
    Thm25,
    /// Symmetric identity with one map: solutions are two-sided centralizers.
    CorFinal,
}

impl Theorem {
    pub const ALL: [Theorem; 4] = [Theorem::Thm21, Theorem::Cor22, Theorem::Thm25, Theorem::CorFinal];

    pub fn tag(self) -> &'static str {
        match self {
            Theorem::Thm21 => "thm21",
            Theorem::Cor22 => "cor22",
            Theorem::Thm25 => "thm25",
            Theorem::CorFinal => "cor-final",
        }
    }

    /// The identity whose solutions the result describes.
    pub fn shape(self) -> IdentityShape {
        match self {
            Theorem::Thm21 => IdentityShape::PowerCentralizer,
            Theorem::Cor22 => IdentityShape::ShiftedCentralizer,
            Theorem::Thm25 => IdentityShape::SymmetricGeneralized,
            Theorem::CorFinal => IdentityShape::SymmetricSelf,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "thm21" => Ok(Theorem::Thm21),
            "cor22" => Ok(Theorem::Cor22),
            "thm25" => Ok(Theorem::Thm25),
            "cor-final" | "cor_final" => Ok(Theorem::CorFinal),
            other => Err(Error::Unknown {
                what: "theorem",
                name: other.to_string(),
            }),
        }
    }
}
