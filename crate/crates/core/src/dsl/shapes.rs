//! Generators for the standard identity families, parameterized by degree.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

pub const PSI: &str = "Psi";
pub const OMEGA: &str = "Omega";
pub const GAMMA: &str = "g";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityShape {
    /// `Psi(X^n) = g*X^(n-1)*Omega(X) = g*Omega(X)*X^(n-1)`
    PowerCentralizer,
    /// `Psi(X^n) = g*X*Omega(X^(n-1)) = g*Omega(X^(n-1))*X`
    ShiftedCentralizer,
    /// `2*Psi(X^n) = X^(n-1)*Omega(X) + Omega(X)*X^(n-1)`
    SymmetricGeneralized,
    /// `2*Psi(X^n) = X^(n-1)*Psi(X) + Psi(X)*X^(n-1)`
    SymmetricSelf,
}

fn power(k: u32) -> String {
    if k == 1 {
        "X".to_string()
    } else {
        format!("X^{k}")
    }
}

impl IdentityShape {
    pub const ALL: [IdentityShape; 4] = [
        IdentityShape::PowerCentralizer,
        IdentityShape::ShiftedCentralizer,
        IdentityShape::SymmetricGeneralized,
        IdentityShape::SymmetricSelf,
    ];

    /// Source text of the degree-`n` member (`n >= 2`).
    pub fn text(self, n: u32) -> String {
        assert!(n >= 2, "identity shapes need n >= 2");
        let (xn, xm) = (power(n), power(n - 1));
        match self {
            IdentityShape::PowerCentralizer => format!(
                "{PSI}({xn}) = {GAMMA}*{xm}*{OMEGA}(X) = {GAMMA}*{OMEGA}(X)*{xm}"
            ),
            IdentityShape::ShiftedCentralizer => format!(
                "{PSI}({xn}) = {GAMMA}*X*{OMEGA}({xm}) = {GAMMA}*{OMEGA}({xm})*X"
            ),
            IdentityShape::SymmetricGeneralized => {
                format!("2*{PSI}({xn}) = {xm}*{OMEGA}(X) + {OMEGA}(X)*{xm}")
            }
            IdentityShape::SymmetricSelf => format!("2*{PSI}({xn}) = {xm}*{PSI}(X) + {PSI}(X)*{xm}"),
        }
    }

    /// Whether the identity involves the central symbol [`GAMMA`].
    pub fn uses_gamma(self) -> bool {
        matches!(self, IdentityShape::PowerCentralizer | IdentityShape::ShiftedCentralizer)
    }
}

impl fmt::Display for IdentityShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdentityShape::PowerCentralizer => "power-centralizer",
            IdentityShape::ShiftedCentralizer => "shifted-centralizer",
            IdentityShape::SymmetricGeneralized => "symmetric-generalized",
            IdentityShape::SymmetricSelf => "symmetric-self",
        })
    }
}

impl FromStr for IdentityShape {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        IdentityShape::ALL
            .into_iter()
            .find(|shape| shape.to_string() == text)
            .ok_or_else(|| Error::Unknown {
                what: "identity shape",
                name: text.to_string(),
            })
    }
}
