use num_complex::Complex64;
use rustfft::FftPlanner;

use super::grid::{wavenumber, Axis, PhaseField};
use super::StarError;

/// Largest tolerated energy fraction in the top octave of either axis.
pub const ALIAS_TOL: f64 = 1e-8;
/// x-modes whose pair weight is below this fraction of the largest are skipped.
const NEGLIGIBLE: f64 = 1e-17;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Signed mode index of FFT bin `j`.
fn signed(j: usize, n: usize) -> i64 {
    if j < n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

/// Full 2-D spectrum, `[x-mode][p-mode]`, unnormalized.
fn spectrum(f: &PhaseField) -> Vec<Vec<Complex64>> {
    let g = f.grid;
    let mut planner = FftPlanner::new();
    let fx = planner.plan_fft_forward(g.nx);
    let fp = planner.plan_fft_forward(g.np);
    let mut out = vec![vec![zero(); g.np]; g.nx];
    let mut col = vec![zero(); g.nx];
    for j in 0..g.np {
        for (i, c) in col.iter_mut().enumerate() {
            *c = f.at(i, j);
        }
        fx.process(&mut col);
        for (a, c) in col.iter().enumerate() {
            out[a][j] = *c;
        }
    }
    for row in out.iter_mut() {
        fp.process(row);
    }
    out
}

fn top_octave_fraction(spec: &[Vec<Complex64>], axis: Axis) -> f64 {
    let nx = spec.len();
    let np = spec[0].len();
    let (mut top, mut total) = (0.0, 0.0);
    for (a, row) in spec.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            let e = v.norm_sqr();
            total += e;
            let high = match axis {
                Axis::X => signed(a, nx).unsigned_abs() as usize >= nx / 4,
                Axis::P => signed(k, np).unsigned_abs() as usize >= np / 4,
            };
            if high {
                top += e;
            }
        }
    }
    if total == 0.0 {
        0.0
    } else {
        top / total
    }
}

fn check_input(f: &PhaseField) -> Result<(), StarError> {
    for axis in [Axis::X, Axis::P] {
        if f.constant_along(axis) {
            continue;
        }
        let r = f.edge_ratio(axis);
        if r > super::DECAY_TOL {
            return Err(StarError::BoundaryDecay { axis, ratio: r });
        }
    }
    Ok(())
}

/// Moyal product `f * g = f exp((i/2)(<-d_x ->d_p - <-d_p ->d_x)) g`.
///
/// Writing `f = sum_a F_a(p) e^{i w_a x}` and likewise for g, each pair of
/// x-modes contributes `F_a(p + w_b/2) G_b(p - w_a/2) e^{i (w_a + w_b) x}`;
/// the p-translations are exact phase factors on the p-spectrum. Pairs whose
/// sum falls outside the band are dropped, and the result is rejected when
/// its top octave carries more than [`ALIAS_TOL`] of the energy.
pub fn star_general(f: &PhaseField, g: &PhaseField) -> Result<PhaseField, StarError> {
    if f.grid != g.grid {
        return Err(StarError::GridMismatch);
    }
    check_input(f)?;
    check_input(g)?;
    let grid = f.grid;
    let (nx, np) = (grid.nx, grid.np);
    let (dx, dp) = (grid.dx(), grid.dp());
    let sf = spectrum(f);
    let sg = spectrum(g);

    let mut planner = FftPlanner::new();
    let ip = planner.plan_fft_inverse(np);
    let ix = planner.plan_fft_inverse(nx);

    let weight = |s: &[Vec<Complex64>]| -> Vec<f64> {
        s.iter()
            .map(|row| row.iter().map(|v| v.norm()).fold(0.0, f64::max))
            .collect()
    };
    let wf = weight(&sf);
    let wg = weight(&sg);
    let wf_max = wf.iter().cloned().fold(0.0, f64::max);
    let wg_max = wg.iter().cloned().fold(0.0, f64::max);
    let cut = NEGLIGIBLE * wf_max * wg_max;

    let kp: Vec<f64> = (0..np).map(|k| wavenumber(k, np, dp)).collect();
    let omega = |a: usize| wavenumber(a, nx, dx);

    // h[x-mode][p sample]
    let mut h = vec![vec![zero(); np]; nx];
    let mut bf = vec![zero(); np];
    let mut bg = vec![zero(); np];
    let half = (nx / 2) as i64;
    for a in 0..nx {
        if wf[a] == 0.0 {
            continue;
        }
        for b in 0..nx {
            if wf[a] * wg[b] <= cut {
                continue;
            }
            let s = signed(a, nx) + signed(b, nx);
            if s < -half || s >= half {
                continue;
            }
            let target = s.rem_euclid(nx as i64) as usize;
            let (sa, sb) = (omega(b) / 2.0, -omega(a) / 2.0);
            for k in 0..np {
                if k == np / 2 {
                    bf[k] = zero();
                    bg[k] = zero();
                    continue;
                }
                bf[k] = sf[a][k] * Complex64::from_polar(1.0, kp[k] * sa);
                bg[k] = sg[b][k] * Complex64::from_polar(1.0, kp[k] * sb);
            }
            ip.process(&mut bf);
            ip.process(&mut bg);
            let norm = 1.0 / (np as f64 * np as f64 * nx as f64);
            for (hv, (u, v)) in h[target].iter_mut().zip(bf.iter().zip(&bg)) {
                *hv += u * v * norm;
            }
        }
    }

    // h holds unnormalized x-coefficients of the product at each p sample
    let mut out = PhaseField::zeros(grid);
    let mut col = vec![zero(); nx];
    for j in 0..np {
        for (a, c) in col.iter_mut().enumerate() {
            *c = h[a][j];
        }
        ix.process(&mut col);
        for (i, c) in col.iter().enumerate() {
            out.data[i * np + j] = *c / nx as f64;
        }
    }

    let so = spectrum(&out);
    for axis in [Axis::X, Axis::P] {
        let fraction = top_octave_fraction(&so, axis);
        if fraction > ALIAS_TOL {
            return Err(StarError::Aliasing { axis, fraction });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::grid::PhaseGrid;
    use super::*;
    use std::f64::consts::PI;

    fn grid() -> PhaseGrid {
        PhaseGrid::new((-8.0, 8.0), 128, (-8.0, 8.0), 128).unwrap()
    }

    #[test]
    fn ground_state_is_idempotent_up_to_two_pi() {
        let rho = PhaseField::from_real_fn(grid(), |x, p| (-x * x - p * p).exp() / PI);
        let sq = star_general(&rho, &rho).unwrap();
        assert!(sq.max_abs_diff(&rho.scale_re(1.0 / (2.0 * PI))) < 1e-6);
    }

    #[test]
    fn commutator_matches_poisson_bracket() {
        // broad Gaussians: f*g - g*f = i{f, g} + O(1/width^4)
        let g = PhaseGrid::new((-24.0, 24.0), 128, (-24.0, 24.0), 128).unwrap();
        let w = 9.0;
        let fv = |x: f64, p: f64| (-((x - 1.0).powi(2) + 0.5 * p * p) / w).exp();
        let hv = |x: f64, p: f64| (-(0.5 * x * x + (p + 1.0).powi(2)) / w).exp();
        let f = PhaseField::from_real_fn(g, fv);
        let h = PhaseField::from_real_fn(g, hv);
        let comm = star_general(&f, &h).unwrap().sub(&star_general(&h, &f).unwrap());
        let pb = PhaseField::from_fn(g, |x, p| {
            let fx = -2.0 * (x - 1.0) / w * fv(x, p);
            let fp = -p / w * fv(x, p);
            let hx = -x / w * hv(x, p);
            let hp = -2.0 * (p + 1.0) / w * hv(x, p);
            Complex64::new(0.0, fx * hp - fp * hx)
        });
        assert!(comm.max_abs_diff(&pb) < 0.05 * pb.max_abs());
    }

    #[test]
    fn unit_is_neutral() {
        let g = grid();
        let f = PhaseField::from_real_fn(g, |x, p| (-x * x - p * p).exp() * (1.0 + 0.3 * x * p));
        // 1 is constant along both axes, so it passes the decay check
        let one = PhaseField::from_real_fn(g, |_, _| 1.0);
        assert!(star_general(&f, &one).unwrap().max_abs_diff(&f) < 1e-10);
        assert!(star_general(&one, &f).unwrap().max_abs_diff(&f) < 1e-10);
    }

    #[test]
    fn mismatched_grids() {
        let a = PhaseField::zeros(grid());
        let b = PhaseField::zeros(PhaseGrid::default_square());
        assert_eq!(star_general(&a, &b), Err(StarError::GridMismatch));
    }
}
