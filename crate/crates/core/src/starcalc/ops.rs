use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::grid::{wavenumber, Axis, PhaseField};
use super::StarError;

/// Edges must be below this fraction of the maximum for periodic spectral work.
pub const DECAY_TOL: f64 = 1e-9;
/// Spectral coefficients below this fraction of a line's maximum are noise.
pub const NOISE_FLOOR: f64 = 1e-15;
/// Largest amplification `e^{|beta| k}` an imaginary shift may apply.
pub const DYNAMIC_RANGE: f64 = 1e12;

fn i() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

struct Plans {
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

fn plans(n: usize) -> Plans {
    let mut planner = FftPlanner::new();
    Plans {
        fwd: planner.plan_fft_forward(n),
        inv: planner.plan_fft_inverse(n),
    }
}

/// Forward FFT along `axis`, per-line spectral edit `op(line, spectrum)`,
/// inverse FFT with 1/N normalization.
pub(crate) fn along_axis<F>(f: &PhaseField, axis: Axis, mut op: F) -> Result<PhaseField, StarError>
where
    F: FnMut(usize, &mut [Complex64]) -> Result<(), StarError>,
{
    let g = f.grid;
    let n = g.n(axis);
    let lines = match axis {
        Axis::X => g.np,
        Axis::P => g.nx,
    };
    let pl = plans(n);
    let mut out = f.clone();
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    let norm = 1.0 / n as f64;
    for line in 0..lines {
        let idx = |m: usize| match axis {
            Axis::X => m * g.np + line,
            Axis::P => line * g.np + m,
        };
        for (m, b) in buf.iter_mut().enumerate() {
            *b = f.data[idx(m)];
        }
        pl.fwd.process(&mut buf);
        op(line, &mut buf)?;
        pl.inv.process(&mut buf);
        for (m, b) in buf.iter().enumerate() {
            out.data[idx(m)] = *b * norm;
        }
    }
    Ok(out)
}

fn check_decay(f: &PhaseField, axis: Axis) -> Result<(), StarError> {
    if f.constant_along(axis) {
        return Ok(());
    }
    let r = f.edge_ratio(axis);
    if r > DECAY_TOL {
        return Err(StarError::BoundaryDecay { axis, ratio: r });
    }
    Ok(())
}

fn spectral_derivative(f: &PhaseField, axis: Axis, n: u32) -> Result<PhaseField, StarError> {
    if !(1..=4).contains(&n) {
        return Err(StarError::Order(n));
    }
    check_decay(f, axis)?;
    let len = f.grid.n(axis);
    let h = f.grid.spacing(axis);
    let mult: Vec<Complex64> = (0..len)
        .map(|j| {
            if j == len / 2 && n % 2 == 1 {
                Complex64::new(0.0, 0.0)
            } else {
                (i() * wavenumber(j, len, h)).powu(n)
            }
        })
        .collect();
    along_axis(f, axis, |_, s| {
        let edge = band_edge(s);
        for (j, (v, m)) in s.iter_mut().zip(&mult).enumerate() {
            if j.min(len - j) >= edge {
                *v = Complex64::new(0.0, 0.0);
            } else {
                *v *= m;
            }
        }
        Ok(())
    })
}

/// `d^n f / dx^n` by Fourier differentiation along x, `n` in 1..=4. Modes
/// past each line's band edge are dropped rather than amplified.
pub fn spectral_dx(f: &PhaseField, n: u32) -> Result<PhaseField, StarError> {
    spectral_derivative(f, Axis::X, n)
}

/// `d^n f / dp^n` by Fourier differentiation along p, `n` in 1..=4.
pub fn spectral_dp(f: &PhaseField, n: u32) -> Result<PhaseField, StarError> {
    spectral_derivative(f, Axis::P, n)
}

/// Smallest |mode index| from which every coefficient, on both sides, is
/// below the noise floor; modes at or beyond it carry only roundoff.
fn band_edge(s: &[Complex64]) -> usize {
    let n = s.len();
    let max = s.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let floor = NOISE_FLOOR * max;
    let mut edge = n / 2 + 1;
    while edge > 0 {
        let m = edge - 1;
        if s[m].norm().max(s[(n - m) % n].norm()) >= floor {
            break;
        }
        edge = m;
    }
    edge
}

/// Multiply p-modes by `mult(k)` after discarding modes past the band edge.
fn p_multiplier<F: Fn(f64) -> Complex64>(
    f: &PhaseField,
    mult: F,
    max_gain: Option<(f64, f64)>,
) -> Result<PhaseField, StarError> {
    check_decay(f, Axis::P)?;
    let n = f.grid.np;
    let h = f.grid.dp();
    along_axis(f, Axis::P, |_, s| {
        let edge = band_edge(s);
        if let Some((beta, limit)) = max_gain {
            let kmax = wavenumber(edge.saturating_sub(1), n, h).abs();
            let gain = (beta.abs() * kmax).exp();
            if gain > limit {
                return Err(StarError::DynamicRange { amplification: gain });
            }
        }
        for (j, v) in s.iter_mut().enumerate() {
            let m = if j <= n / 2 { j } else { n - j };
            if m >= edge || j == n / 2 {
                *v = Complex64::new(0.0, 0.0);
            } else {
                *v *= mult(wavenumber(j, n, h));
            }
        }
        Ok(())
    })
}

/// `f(x, p + i beta)` for fields analytic in p: each p-mode `e^{ikp}` gains
/// `e^{-beta k}`. Modes past the per-line band edge are zeroed so roundoff is
/// not amplified.
pub fn imag_p_shift(f: &PhaseField, beta: f64) -> Result<PhaseField, StarError> {
    if beta == 0.0 {
        return Ok(f.clone());
    }
    p_multiplier(f, |k| Complex64::new((-beta * k).exp(), 0.0), Some((beta, DYNAMIC_RANGE)))
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `sin(beta d/dp) f` by its Taylor series through `beta^(2 terms - 1)`.
pub fn sin_series(f: &PhaseField, beta: f64, terms: u32) -> Result<PhaseField, StarError> {
    p_multiplier(
        f,
        |k| {
            // sin(beta * i k) = i sinh(beta k)
            let s: f64 = (0..terms)
                .map(|m| (beta * k).powi(2 * m as i32 + 1) / factorial(2 * m + 1))
                .sum();
            i() * s
        },
        None,
    )
}

/// `cos(beta d/dp) f` by its Taylor series through `beta^(2 terms - 2)`.
pub fn cos_series(f: &PhaseField, beta: f64, terms: u32) -> Result<PhaseField, StarError> {
    p_multiplier(
        f,
        |k| {
            let s: f64 = (0..terms)
                .map(|m| (beta * k).powi(2 * m as i32) / factorial(2 * m))
                .sum();
            Complex64::new(s, 0.0)
        },
        None,
    )
}

/// `p^2 * f` with Bopp shift `p -> p - (i/2) d/dx`: `p^2 f - i p f_x - f_xx/4`.
pub fn bopp_kinetic(f: &PhaseField) -> Result<PhaseField, StarError> {
    bopp(f, -1.0)
}

/// `f * p^2` (right star): `p^2 f + i p f_x - f_xx/4`.
pub fn bopp_kinetic_right(f: &PhaseField) -> Result<PhaseField, StarError> {
    bopp(f, 1.0)
}

fn bopp(f: &PhaseField, sign: f64) -> Result<PhaseField, StarError> {
    let d1 = spectral_dx(f, 1)?;
    let d2 = spectral_dx(f, 2)?;
    let g = f.grid;
    let mut out = f.clone();
    for a in 0..g.nx {
        for b in 0..g.np {
            let k = a * g.np + b;
            let p = g.p(b);
            out.data[k] = f.data[k] * (p * p) + d1.data[k] * i() * (sign * p) - d2.data[k] * 0.25;
        }
    }
    Ok(out)
}

/// `V(x) * f = V(x + (i/2) d/dp) f` for `V = c0 + c1 x + c2 x^2`.
pub fn star_poly_potential(coeffs: &[f64], f: &PhaseField) -> Result<PhaseField, StarError> {
    if let Some(d) = coeffs.iter().rposition(|c| *c != 0.0) {
        if d > 2 {
            return Err(StarError::Degree(d));
        }
    }
    let c = |k: usize| coeffs.get(k).copied().unwrap_or(0.0);
    let (c0, c1, c2) = (c(0), c(1), c(2));
    let mut out = f.scale_re(c0);
    if c1 == 0.0 && c2 == 0.0 {
        return Ok(out);
    }
    let d1 = spectral_dp(f, 1)?;
    let d2 = if c2 != 0.0 { Some(spectral_dp(f, 2)?) } else { None };
    let g = f.grid;
    for a in 0..g.nx {
        let x = g.x(a);
        for b in 0..g.np {
            let k = a * g.np + b;
            let v = f.data[k];
            let mut acc = Complex64::new(0.0, 0.0);
            if c1 != 0.0 {
                acc += (v * x + i() * 0.5 * d1.data[k]) * c1;
            }
            if let Some(d2) = &d2 {
                acc += (v * (x * x) + i() * x * d1.data[k] - d2.data[k] * 0.25) * c2;
            }
            out.data[k] += acc;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::grid::PhaseGrid;
    use super::*;

    fn gauss() -> PhaseField {
        PhaseField::from_real_fn(PhaseGrid::default_square(), |x, p| (-x * x - p * p).exp())
    }

    #[test]
    fn gaussian_x_derivative() {
        let f = gauss();
        let d = spectral_dx(&f, 1).unwrap();
        let want = f.map_xp(|x, _, v| v * (-2.0 * x));
        assert!(d.max_abs_diff(&want) < 1e-9);
    }

    #[test]
    fn constant_in_x_has_zero_derivative() {
        let g = PhaseGrid::default_square();
        let f = PhaseField::from_real_fn(g, |_, p| (-p * p).exp());
        assert!(spectral_dx(&f, 1).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn undecayed_field_rejected() {
        let g = PhaseGrid::default_square();
        let f = PhaseField::from_real_fn(g, |x, p| (0.3 * x).sin() * (-p * p).exp());
        assert!(matches!(spectral_dx(&f, 1), Err(StarError::BoundaryDecay { .. })));
    }

    #[test]
    fn shift_of_gaussian() {
        let g = PhaseGrid::default_square();
        let f = PhaseField::from_real_fn(g, |_, p| (-p * p).exp());
        for beta in [0.5, 1.0] {
            let s = imag_p_shift(&f, beta).unwrap();
            let want = PhaseField::from_fn(g, |_, p| {
                let z = Complex64::new(p, beta);
                (-z * z).exp()
            });
            assert!(s.max_abs_diff(&want) < 1e-8, "beta {beta}");
        }
        assert_eq!(imag_p_shift(&f, 0.0).unwrap(), f);
    }

    #[test]
    fn bopp_imaginary_part() {
        let f = gauss();
        let b = bopp_kinetic(&f).unwrap();
        let want = f.map_xp(|x, p, v| v * (2.0 * x * p));
        assert!(b.im().max_abs_diff(&want) < 1e-8);
    }

    #[test]
    fn quadratic_potential_imaginary_part() {
        let f = gauss();
        let v = star_poly_potential(&[0.0, 0.0, 1.0], &f).unwrap();
        // Im(x^2 * f) = x f_p = -2 x p f
        let want = f.map_xp(|x, p, v| v * (-2.0 * x * p));
        assert!(v.im().max_abs_diff(&want) < 1e-8);
        assert!(matches!(
            star_poly_potential(&[0.0, 0.0, 0.0, 1.0], &f),
            Err(StarError::Degree(3))
        ));
    }
}
