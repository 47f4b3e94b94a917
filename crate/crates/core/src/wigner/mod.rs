//! Closed-form Wigner functions and the quadrature oracle that computes them
//! from wave functions.

mod catalog;
mod checks;
pub mod erf;
pub mod jet;
pub mod quad;
mod wave;

pub use catalog::{CaseId, CatalogEntry, FreeParams, Support};
pub use checks::{
    catalog_cases, marginal_cases, marginal_points, marginal_suite, proportionality_points,
    proportionality_suite, MarginalCheck, ProportionalityCheck, MARGINAL_TOL, PROPORTIONALITY_TOL,
};
pub use wave::{marginal_p, wigner_quadrature, Marginal, MarginalOptions, WaveKind, WaveSpec};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WignerError {
    #[error("derivative order out of range: dx={dx} (max 4), dp={dp} (max 4)")]
    OrderOutOfRange { dx: usize, dp: usize },
    #[error(transparent)]
    Quad(#[from] quad::QuadError),
    #[error("imaginary part {im:e} of the Wigner integral at ({x}, {p}) exceeds 1e-10")]
    ImaginaryResidue { x: f64, p: f64, im: f64 },
    #[error("not integrable: {0}")]
    NotIntegrable(String),
    #[error("marginal mismatch at x={x}: |psi|^2 = {exact}, p-integral = {numeric}")]
    MarginalMismatch { x: f64, exact: f64, numeric: f64 },
}

/// Ratio statistics of catalog values over quadrature values.
#[derive(Clone, Debug, PartialEq)]
pub struct Proportionality {
    pub ratios: Vec<f64>,
    pub mean: f64,
    /// standard deviation over |mean|
    pub spread: f64,
}

/// Compare an entry with the Wigner transform of its wave function at
/// `points`; points where the quadrature value is tiny are skipped.
pub fn proportionality(
    entry: &CatalogEntry,
    points: &[(f64, f64)],
) -> Result<Proportionality, WignerError> {
    let psi = entry.wave();
    let mut ratios = Vec::new();
    for &(x, p) in points {
        let q = wigner_quadrature(&psi, x, p)?;
        if q.abs() < 1e-6 {
            continue;
        }
        ratios.push(entry.value(x, p) / q);
    }
    let n = ratios.len().max(1) as f64;
    let mean = ratios.iter().sum::<f64>() / n;
    let var = ratios.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / n;
    Ok(Proportionality {
        spread: var.sqrt() / mean.abs(),
        mean,
        ratios,
    })
}
