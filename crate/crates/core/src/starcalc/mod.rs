//! Spectral phase-space calculus on periodic grids: Fourier derivatives,
//! imaginary p-shifts, Bopp-shifted operators and the general Moyal product.

mod grid;
mod ops;
mod star;

pub use grid::{wavenumber, Axis, PhaseField, PhaseGrid};
pub use ops::{
    bopp_kinetic, bopp_kinetic_right, cos_series, imag_p_shift, sin_series, spectral_dp,
    spectral_dx, star_poly_potential, DECAY_TOL, DYNAMIC_RANGE, NOISE_FLOOR,
};
pub use star::{star_general, ALIAS_TOL};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StarError {
    #[error("bad grid: {0}")]
    BadGrid(String),
    #[error("field does not decay along {axis:?}: edge/max = {ratio:e}")]
    BoundaryDecay { axis: Axis, ratio: f64 },
    #[error("imaginary shift would amplify noise by {amplification:e} (limit 1e12)")]
    DynamicRange { amplification: f64 },
    #[error("potential degree {0} exceeds 2")]
    Degree(usize),
    #[error("derivative order {0} not in 1..=4")]
    Order(u32),
    #[error("aliasing along {axis:?}: top-octave energy fraction {fraction:e}")]
    Aliasing { axis: Axis, fraction: f64 },
    #[error("operands live on different grids")]
    GridMismatch,
}
