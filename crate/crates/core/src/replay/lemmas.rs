use serde::Serialize;

use crate::algebra::{commuting_jordan_derivation_space, derivation_space, jordan_derivation_space, Algebra};
use crate::io::fingerprint;
use crate::linalg::SubspaceRelation;

/// Background facts used by the arguments, decided exactly on one algebra.
/// A failing fact is listed in `flagged` rather than raised as an error.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub algebra: String,
    pub derivation_dim: usize,
    pub jordan_derivation_dim: usize,
    /// Jordan derivations compared with derivations.
    pub jordan_vs_derivation: SubspaceRelation,
    /// Dimension of the space of commuting Jordan derivations.
    pub commuting_jordan_dim: usize,
    pub condition_p: bool,
    pub flagged: Vec<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.flagged.is_empty()
    }
}

pub fn verify_background_lemmas(a: &Algebra) -> LemmaReport {
    let der = derivation_space(a);
    let jordan = jordan_derivation_space(a);
    let relation = jordan.compare(&der).expect("same ambient dimension");
    let commuting = commuting_jordan_derivation_space(a);
    let condition_p = a.condition_p();
    let mut flagged = Vec::new();
    if relation != SubspaceRelation::Equal {
        flagged.push(format!("Jordan derivations vs derivations: {relation}"));
    }
    if !commuting.is_zero() {
        flagged.push(format!(
            "nonzero commuting Jordan derivations (dimension {})",
            commuting.dim()
        ));
    }
    if !condition_p {
        flagged.push("condition (P) fails".into());
    }
    LemmaReport {
        algebra: fingerprint(a),
        derivation_dim: der.dim(),
        jordan_derivation_dim: jordan.dim(),
        jordan_vs_derivation: relation,
        commuting_jordan_dim: commuting.dim(),
        condition_p,
        flagged,
    }
}
