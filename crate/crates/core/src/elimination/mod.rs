//! Difference–differential relations for exponential potentials, elimination
//! of the momentum-shifted unknowns, and the alpha -> infinity limit.

mod derive;
mod hrhetc;
mod relation;
mod system;

pub use derive::{
    build_base_relations, clear_denominators, eliminate, normalize, relation_set, take_limit,
    zeroth_order, Certificate, Elimination,
};
pub use hrhetc::{expected_zeroth_order, hrhetc_relation, left_p2, real_part, right_p2};
pub use relation::{Provenance, Relation, Unknown, MAX_ORDER, MAX_SHIFT};
pub use system::{PotentialTerm, Region, SystemSpec};

use crate::expr::ExprError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ElimError {
    #[error("unsupported potential term: {0}")]
    Unsupported(String),
    #[error("invalid system: {0}")]
    InvalidSpec(String),
    #[error("shift out of bounds: R[{from}] shifted by {by}")]
    ShiftOutOfBounds { from: i8, by: i8 },
    #[error("derivative order overflow at {0}")]
    OrderOverflow(Unknown),
    #[error("elimination did not close: residual unknown {0}")]
    NotClosed(String),
    #[error("limit divergent: {0}")]
    LimitDivergent(String),
    #[error("limit depends on position within the region: {0}")]
    LimitNonUniform(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Full derivation for one preset: base relations, pre-limit relation and
/// its limit.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub system: SystemSpec,
    pub base_im: Relation,
    pub base_re: Relation,
    /// `None` for the free particle (nothing to eliminate).
    pub elimination: Option<Elimination>,
    pub limit: Option<Relation>,
}

pub fn derive(spec: &SystemSpec) -> Result<Derivation, ElimError> {
    let (base_im, base_re) = build_base_relations(spec)?;
    if spec.terms.is_empty() {
        return Ok(Derivation {
            system: spec.clone(),
            base_im,
            base_re,
            elimination: None,
            limit: None,
        });
    }
    let elim = eliminate(spec)?;
    let limit = take_limit(&elim.relation, spec)?;
    Ok(Derivation {
        system: spec.clone(),
        base_im,
        base_re,
        elimination: Some(elim),
        limit: Some(limit),
    })
}
