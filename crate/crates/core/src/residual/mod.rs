//! Residual functionals: every verification equation evaluated over catalog
//! entries (pointwise, analytic derivatives) or sampled fields (spectral).

mod fields;
mod limit;
mod suite;

use serde::Serialize;

use crate::elimination::ElimError;
use crate::starcalc::StarError;
use crate::wigner::WignerError;

pub use fields::{
    half_sho_window_field, HrhetcFields,
    gaussian_test_field, hrhetc_fields, hrhetc_residual, op_identity_check, random_smooth_field,
    showeqn_fields, showeqn_residual, stargen_residual, wall_window_field, Window, WindowedField,
    SHOWEQN_V,
};
pub use limit::{
    interior_samples, limit_pde_residual, limit_pde_values, showeqn_pointwise, LimitOperator,
};
pub use suite::{run_suite, Suite};

/// Normalized bound for checks that use analytic catalog derivatives.
pub const ANALYTIC_TOL: f64 = 1e-9;
/// Normalized bound for checks that go through grids, star operators or erf.
pub const GRID_TOL: f64 = 1e-6;
/// Absolute bound for the sin/cos operator identities.
pub const OP_TOL: f64 = 1e-8;
/// Bound for the two HrHetc residual fields on a generic smooth field.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Fraction of a window excluded from scoring at each edge.
pub const MARGIN: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ResidualError {
    #[error("sample x = {x} lies outside the V = 0 region of {case}")]
    ForbiddenSample { case: String, x: f64 },
    #[error("no sample points")]
    NoSamples,
    #[error(transparent)]
    Star(#[from] StarError),
    #[error(transparent)]
    Wigner(#[from] WignerError),
    #[error(transparent)]
    Elim(#[from] ElimError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Equation {
    LimitPde,
    Hrhetc,
    Showeqn,
    StargenIm,
    StargenRe,
    OpIdentity,
}

/// Where a residual was evaluated.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Sampling {
    /// `count` points spanning the box `x` × `p`.
    Points { count: usize, x: [f64; 2], p: [f64; 2] },
    /// A periodic grid, scored on the `scored_x` × `scored_p` box only.
    Grid {
        x: [f64; 2],
        nx: usize,
        p: [f64; 2],
        np: usize,
        scored_x: [f64; 2],
        scored_p: [f64; 2],
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub case: String,
    pub equation: Equation,
    pub grid: Sampling,
    pub max_residual: f64,
    /// Largest absolute value of any single term of the equation.
    pub normalization: f64,
    pub ratio: f64,
    pub pass: bool,
}

impl ResidualReport {
    pub fn new(
        case: impl Into<String>,
        equation: Equation,
        grid: Sampling,
        max_residual: f64,
        normalization: f64,
        tolerance: f64,
    ) -> Self {
        // an identically zero equation (zero field) has zero ratio
        let ratio = if normalization > 0.0 {
            max_residual / normalization
        } else if max_residual == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        ResidualReport {
            case: case.into(),
            equation,
            grid,
            max_residual,
            normalization,
            ratio,
            pass: ratio <= tolerance,
        }
    }

    /// Re-score against a different tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.pass = self.ratio <= tolerance;
        self
    }
}
