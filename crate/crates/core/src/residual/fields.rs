use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::starcalc::{
    bopp_kinetic, bopp_kinetic_right, cos_series, imag_p_shift, sin_series, spectral_dx,
    star_poly_potential, PhaseField, PhaseGrid,
};
use crate::wigner::erf::erf_p;
use crate::wigner::CatalogEntry;

use super::limit::LimitOperator;
use super::{Equation, ResidualError, ResidualReport, Sampling, GRID_TOL, MARGIN, OP_TOL};

/// Potential of the generalized check, `V = x^2`, as `[c0, c1, c2]`.
pub const SHOWEQN_V: [f64; 3] = [0.0, 0.0, 1.0];
/// Taylor terms kept in the sin/cos series (through alpha^13 / alpha^12).
const SERIES_TERMS: u32 = 7;

fn erf(t: f64) -> f64 {
    2.0 / PI.sqrt() * erf_p(Complex64::new(t, 0.0)).re
}

/// Smooth box `[a, b]` with erf edges; the scoring box excludes [`MARGIN`]
/// of the window at each edge, and the edge width is set so the window is
/// 1 there to below 1e-21.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub x: Option<(f64, f64)>,
    pub p: Option<(f64, f64)>,
}

fn edge_box(r: (f64, f64)) -> ((f64, f64), f64) {
    let m = MARGIN * (r.1 - r.0);
    ((r.0 + m, r.1 - m), m / 7.0)
}

fn smooth_box(t: f64, r: (f64, f64)) -> f64 {
    let (_, s) = edge_box(r);
    0.5 * (erf((t - r.0) / s) - erf((t - r.1) / s))
}

impl Window {
    pub fn weight(&self, x: f64, p: f64) -> f64 {
        self.x.map_or(1.0, |r| smooth_box(x, r)) * self.p.map_or(1.0, |r| smooth_box(p, r))
    }

    /// Scored box; an unwindowed axis is scored on the grid range minus margins.
    pub fn scored(&self, g: &PhaseGrid) -> ((f64, f64), (f64, f64)) {
        let xr = self.x.unwrap_or((g.x0, g.x1));
        let pr = self.p.unwrap_or((g.p0, g.p1));
        (edge_box(xr).0, edge_box(pr).0)
    }
}

/// A sampled field with the box on which residuals are scored.
#[derive(Clone, Debug)]
pub struct WindowedField {
    pub case: String,
    pub field: PhaseField,
    pub scored_x: (f64, f64),
    pub scored_p: (f64, f64),
}

impl WindowedField {
    pub fn new(case: impl Into<String>, field: PhaseField, window: Window) -> Self {
        let (scored_x, scored_p) = window.scored(&field.grid);
        WindowedField {
            case: case.into(),
            field,
            scored_x,
            scored_p,
        }
    }

    pub fn from_entry(entry: &CatalogEntry, grid: PhaseGrid, window: Window) -> Self {
        let f = PhaseField::from_real_fn(grid, |x, p| {
            let w = window.weight(x, p);
            if w == 0.0 {
                0.0
            } else {
                w * entry.value(x, p)
            }
        });
        Self::new(entry.label(), f, window)
    }

    pub fn scale(&self, c: f64) -> Self {
        WindowedField {
            field: self.field.scale_re(c),
            ..self.clone()
        }
    }

    pub fn score(&self, f: &PhaseField) -> f64 {
        f.max_abs_in(self.scored_x, self.scored_p)
    }

    pub fn sampling(&self) -> Sampling {
        let g = self.field.grid;
        Sampling::Grid {
            x: [g.x0, g.x1],
            nx: g.nx,
            p: [g.p0, g.p1],
            np: g.np,
            scored_x: [self.scored_x.0, self.scored_x.1],
            scored_p: [self.scored_p.0, self.scored_p.1],
        }
    }
}

/// Wall entry windowed to x in [-3, -0.5]. Only x-derivatives act on this
/// field, so p needs no window.
pub fn wall_window_field(e: f64) -> WindowedField {
    let grid = PhaseGrid::new((-3.5, 0.0), 512, (-8.0, 8.0), 64).expect("valid grid");
    let window = Window {
        x: Some((-3.0, -0.5)),
        p: None,
    };
    WindowedField::from_entry(&CatalogEntry::wall(e), grid, window)
}

/// Half-oscillator entry windowed to x in [-4, -0.3] and |p| < 7.5 (scored
/// on |p| <= 6).
pub fn half_sho_window_field() -> WindowedField {
    let grid = PhaseGrid::new((-4.8, 0.0), 512, (-12.0, 12.0), 512).expect("valid grid");
    let window = Window {
        x: Some((-4.0, -0.3)),
        p: Some((-7.5, 7.5)),
    };
    WindowedField::from_entry(&CatalogEntry::half_sho(), grid, window)
}

/// Deterministic sum of Gaussian bumps with polynomial modulation on
/// [-8, 8]^2, decaying to roundoff at the edges.
pub fn random_smooth_field(seed: u64, n: usize) -> Result<WindowedField, ResidualError> {
    let grid = PhaseGrid::new((-8.0, 8.0), n, (-8.0, 8.0), n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bumps: Vec<[f64; 6]> = (0..6)
        .map(|_| {
            [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(0.6..1.0),
                rng.gen_range(0.6..1.0),
                rng.gen_range(-0.5..0.5),
            ]
        })
        .collect();
    let f = PhaseField::from_real_fn(grid, |x, p| {
        bumps
            .iter()
            .map(|&[a, cx, cp, wx, wp, m]| {
                let (u, v) = ((x - cx) / wx, (p - cp) / wp);
                a * (1.0 + m * u * v) * (-u * u - v * v).exp()
            })
            .sum()
    });
    let window = Window { x: None, p: None };
    Ok(WindowedField::new(format!("random_seed{seed}"), f, window))
}

/// `e^{-x^2 - p^2/25}`: broad in p so the alpha <= 2 shifts stay within
/// the resolved band. The p-range puts the edges at e^{-46}.
pub fn gaussian_test_field() -> PhaseField {
    let s: f64 = 25.0;
    let l = (46.0 * s).sqrt();
    let grid = PhaseGrid::new((-8.0, 8.0), 64, (-l, l), 256).expect("valid grid");
    PhaseField::from_real_fn(grid, |x, p| (-x * x - p * p / s).exp())
}

fn p_field(grid: PhaseGrid, f: impl Fn(f64) -> f64) -> PhaseField {
    PhaseField::from_real_fn(grid, |_, p| f(p))
}

/// Limit-PDE residual field by spectral x-derivatives; also returns each
/// term separately.
fn limit_terms(op: &LimitOperator, rho: &PhaseField, e: f64) -> Result<Vec<PhaseField>, ResidualError> {
    let mut terms = Vec::new();
    for n in op.orders() {
        let d = if n == 0 {
            rho.clone()
        } else {
            spectral_dx(rho, n as u32)?
        };
        let c = p_field(rho.grid, |p| op.coeff(n, p, e));
        terms.push(d.mul(&c));
    }
    Ok(terms)
}

fn sum(terms: &[PhaseField]) -> PhaseField {
    let mut it = terms.iter();
    let first = it.next().expect("at least one term").clone();
    it.fold(first, |acc, t| acc.add(t))
}

/// The two HrHetc residual fields.
#[derive(Clone, Debug)]
pub struct HrhetcFields {
    /// `p^2 * rho * p^2 - E^2 rho - 2E Re(p^2 * rho - E rho)` via Bopp operators
    pub operator: PhaseField,
    /// limit-PDE residual via spectral derivatives
    pub limit: PhaseField,
    /// the limit-PDE terms, for normalization
    pub terms: Vec<PhaseField>,
}

pub fn hrhetc_fields(rho: &PhaseField, e: f64) -> Result<HrhetcFields, ResidualError> {
    let left = bopp_kinetic(rho)?;
    let both = bopp_kinetic_right(&left)?;
    let inner = left.sub(&rho.scale_re(e)).re();
    let operator = both.sub(&rho.scale_re(e * e)).sub(&inner.scale_re(2.0 * e));
    let terms = limit_terms(LimitOperator::engine(), rho, e)?;
    Ok(HrhetcFields {
        operator,
        limit: sum(&terms),
        terms,
    })
}

fn normalization(wf: &WindowedField, terms: &[PhaseField]) -> f64 {
    terms.iter().map(|t| wf.score(t)).fold(0.0, f64::max)
}

/// Largest difference of the two HrHetc residual fields on the scored box.
pub fn hrhetc_residual(
    wf: &WindowedField,
    e: f64,
    tolerance: f64,
) -> Result<ResidualReport, ResidualError> {
    let h = hrhetc_fields(&wf.field, e)?;
    Ok(ResidualReport::new(
        wf.case.clone(),
        Equation::Hrhetc,
        wf.sampling(),
        wf.score(&h.operator.sub(&h.limit)),
        normalization(wf, &h.terms),
        tolerance,
    ))
}

/// The groups of the generalized equation for `V = c0 + c1 x + c2 x^2`, in
/// order: the limit-PDE terms, `(p^2-E) Re[V*rho]`, `-p d_x Im[V*rho]`,
/// `-(1/4) d_x^2 Re[V*rho]`, `-Im[V*(p rho_x)]`, `Im[V*Im[V*rho]]`,
/// `Re[V*Re[V*rho]]`, `Re[V*((p^2-E-(1/4)d_x^2) rho)]`.
pub fn showeqn_fields(
    rho: &PhaseField,
    v: &[f64; 3],
    e: f64,
) -> Result<Vec<PhaseField>, ResidualError> {
    let mut terms = limit_terms(LimitOperator::engine(), rho, e)?;
    if v.iter().all(|c| *c == 0.0) {
        return Ok(terms);
    }
    let g = rho.grid;
    let vs = |f: &PhaseField| star_poly_potential(v, f);
    let p1 = p_field(g, |p| p);
    let pe = p_field(g, |p| p * p - e);

    let vr = vs(rho)?;
    let (re_v, im_v) = (vr.re(), vr.im());
    let rho_x = spectral_dx(rho, 1)?;
    let rho_xx = spectral_dx(rho, 2)?;
    let g_rho = pe.mul(rho).sub(&rho_xx.scale_re(0.25));

    terms.push(pe.mul(&re_v));
    terms.push(p1.mul(&spectral_dx(&im_v, 1)?).scale_re(-1.0));
    terms.push(spectral_dx(&re_v, 2)?.scale_re(-0.25));
    terms.push(vs(&p1.mul(&rho_x))?.im().scale_re(-1.0));
    terms.push(vs(&im_v)?.im());
    terms.push(vs(&re_v)?.re());
    terms.push(vs(&g_rho)?.re());
    Ok(terms)
}

pub fn showeqn_residual(
    wf: &WindowedField,
    v: &[f64; 3],
    e: f64,
) -> Result<ResidualReport, ResidualError> {
    let terms = showeqn_fields(&wf.field, v, e)?;
    Ok(ResidualReport::new(
        wf.case.clone(),
        Equation::Showeqn,
        wf.sampling(),
        wf.score(&sum(&terms)),
        normalization(wf, &terms),
        GRID_TOL,
    ))
}

/// Imaginary and real parts of `H * rho - E rho` for `H = p^2 + V(x)`.
pub fn stargen_residual(
    wf: &WindowedField,
    v: &[f64; 3],
    e: f64,
    tolerance: f64,
) -> Result<[ResidualReport; 2], ResidualError> {
    let kin = bopp_kinetic(&wf.field)?;
    let pot = star_poly_potential(v, &wf.field)?;
    let en = wf.field.scale_re(e);
    let r = kin.add(&pot).sub(&en);
    let norm = [&kin, &pot, &en]
        .iter()
        .map(|t| wf.score(t))
        .fold(0.0, f64::max);
    let report = |eq, part: PhaseField| {
        ResidualReport::new(wf.case.clone(), eq, wf.sampling(), wf.score(&part), norm, tolerance)
    };
    Ok([
        report(Equation::StargenIm, r.im()),
        report(Equation::StargenRe, r.re()),
    ])
}

/// `sin(alpha d_p) f = [f(p+i alpha) - f(p-i alpha)]/(2i)` and the cos
/// analogue, Taylor series against imaginary shifts.
pub fn op_identity_check(alpha: f64, f: &PhaseField) -> Result<ResidualReport, ResidualError> {
    let up = imag_p_shift(f, alpha)?;
    let down = imag_p_shift(f, -alpha)?;
    let half_i = Complex64::new(0.0, -0.5); // 1/(2i)
    let sin_shift = up.sub(&down).scale(half_i);
    let cos_shift = up.add(&down).scale_re(0.5);
    let sin_ser = sin_series(f, alpha, SERIES_TERMS)?;
    let cos_ser = cos_series(f, alpha, SERIES_TERMS)?;
    let wf = WindowedField::new(format!("alpha{alpha}"), f.clone(), Window { x: None, p: None });
    let max_residual = wf
        .score(&sin_shift.sub(&sin_ser))
        .max(wf.score(&cos_shift.sub(&cos_ser)));
    let norm = [&up, &down, &sin_ser, &cos_ser, f]
        .iter()
        .map(|t| wf.score(t))
        .fold(0.0, f64::max);
    Ok(ResidualReport::new(
        wf.case.clone(),
        Equation::OpIdentity,
        wf.sampling(),
        max_residual,
        norm,
        OP_TOL,
    ))
}
