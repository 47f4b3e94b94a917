use std::f64::consts::PI;

use num_complex::Complex64;

use super::quad::integrate;
use super::WignerError;

/// Tail bound for non-compact wave functions: |psi*(x-y/2) psi(x+y/2)| <= 1e-14.
const TAIL: f64 = 1e-14;
const IMAG_LIMIT: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WaveKind {
    /// theta(-x) (e^{ikx} - e^{-ikx})
    Wall { k: f64 },
    /// cos(kx) on |x| < 1
    SquareWell { k: f64 },
    /// e^{-|x|}
    DeltaWell,
    /// theta(-x) x e^{-s x^2}
    HalfSho { s: f64 },
    /// a_+ e^{ikx} + a_- e^{-ikx}; not square integrable
    PlaneWaves { a_plus: Complex64, a_minus: Complex64, k: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveSpec {
    pub kind: WaveKind,
    pub energy: f64,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
}

impl WaveSpec {
    pub fn wall(energy: f64) -> Self {
        WaveSpec {
            kind: WaveKind::Wall { k: energy.sqrt() },
            energy,
            lo: None,
            hi: Some(0.0),
        }
    }

    pub fn square_well(n: u32) -> Self {
        let k = n as f64 * PI / 2.0;
        WaveSpec {
            kind: WaveKind::SquareWell { k },
            energy: k * k,
            lo: Some(-1.0),
            hi: Some(1.0),
        }
    }

    pub fn delta_well() -> Self {
        WaveSpec {
            kind: WaveKind::DeltaWell,
            energy: -1.0,
            lo: None,
            hi: None,
        }
    }

    /// x e^{-x^2/2} behind the wall: the E = 3 state of V = x^2.
    pub fn half_sho() -> Self {
        WaveSpec {
            kind: WaveKind::HalfSho { s: 0.5 },
            energy: 3.0,
            lo: None,
            hi: Some(0.0),
        }
    }

    /// x e^{-x^2}, as printed alongside the half-oscillator formula.
    pub fn half_sho_printed() -> Self {
        WaveSpec {
            kind: WaveKind::HalfSho { s: 1.0 },
            energy: 3.0,
            lo: None,
            hi: Some(0.0),
        }
    }

    pub fn plane_waves(a_plus: Complex64, a_minus: Complex64, energy: f64) -> Self {
        WaveSpec {
            kind: WaveKind::PlaneWaves {
                a_plus,
                a_minus,
                k: energy.sqrt(),
            },
            energy,
            lo: None,
            hi: None,
        }
    }

    pub fn is_plane_wave(&self) -> bool {
        matches!(self.kind, WaveKind::PlaneWaves { .. })
    }

    pub fn in_support(&self, x: f64) -> bool {
        self.lo.map_or(true, |l| x >= l) && self.hi.map_or(true, |h| x <= h)
    }

    pub fn psi(&self, x: f64) -> Complex64 {
        if !self.in_support(x) {
            return Complex64::new(0.0, 0.0);
        }
        match self.kind {
            WaveKind::Wall { k } => Complex64::new(0.0, 2.0 * (k * x).sin()),
            WaveKind::SquareWell { k } => Complex64::new((k * x).cos(), 0.0),
            WaveKind::DeltaWell => Complex64::new((-x.abs()).exp(), 0.0),
            WaveKind::HalfSho { s } => Complex64::new(x * (-s * x * x).exp(), 0.0),
            WaveKind::PlaneWaves { a_plus, a_minus, k } => {
                a_plus * Complex64::new(0.0, k * x).exp() + a_minus * Complex64::new(0.0, -k * x).exp()
            }
        }
    }

    /// |psi(x)|^2
    pub fn density(&self, x: f64) -> f64 {
        self.psi(x).norm_sqr()
    }

    /// Half-width of the y-interval on which psi*(x-y/2) psi(x+y/2) can be nonzero.
    pub fn y_extent(&self, x: f64) -> Result<f64, WignerError> {
        if self.is_plane_wave() {
            return Err(WignerError::NotIntegrable("plane waves have no finite y-support".into()));
        }
        if !self.in_support(x) {
            return Ok(0.0);
        }
        let compact = match (self.lo, self.hi) {
            (Some(l), Some(h)) => Some(2.0 * (x - l).min(h - x)),
            (None, Some(h)) => Some(2.0 * (h - x)),
            (Some(l), None) => Some(2.0 * (x - l)),
            (None, None) => None,
        };
        Ok(match compact {
            Some(y) => y,
            // e^{-|x-y/2|-|x+y/2|} <= e^{-|y|}
            None => -TAIL.ln(),
        })
    }

    /// Points where the integrand has kinks.
    fn kinks(&self, x: f64) -> Vec<f64> {
        match self.kind {
            WaveKind::DeltaWell => vec![-2.0 * x, 2.0 * x],
            _ => vec![],
        }
    }

    /// Distance from y = 0 to the nearest point where the autocorrelation
    /// in y is not smooth (support edge or kink).
    fn smooth_radius(&self, x: f64) -> Result<f64, WignerError> {
        let y_max = self.y_extent(x)?;
        let mut r = if self.lo.is_some() || self.hi.is_some() { y_max } else { f64::INFINITY };
        for k in self.kinks(x) {
            if k != 0.0 {
                r = r.min(k.abs());
            }
        }
        Ok(r)
    }
}

/// `(1/2pi) int dy e^{-ipy} psi*(x-y/2) psi(x+y/2)` by adaptive quadrature.
pub fn wigner_quadrature(psi: &WaveSpec, x: f64, p: f64) -> Result<f64, WignerError> {
    let y_max = psi.y_extent(x)?;
    if y_max <= 0.0 {
        return Ok(0.0);
    }
    let mut pts = vec![-y_max, 0.0, y_max];
    pts.extend(psi.kinks(x).into_iter().filter(|y| y.abs() < y_max));
    // roughly one oscillation of e^{-ipy} per initial panel
    let panels = ((p.abs() * 2.0 * y_max / (2.0 * PI)).ceil() as usize).clamp(1, 4000);
    let step = 2.0 * y_max / panels as f64;
    pts.extend((1..panels).map(|j| -y_max + j as f64 * step));
    pts.sort_by(|a, b| a.total_cmp(b));
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-13);

    let f = |y: f64| {
        Complex64::new(0.0, -p * y).exp() * psi.psi(x - 0.5 * y).conj() * psi.psi(x + 0.5 * y)
    };
    let r = integrate(f, &pts, 1e-12, 20000)?;
    if r.value.im.abs() > IMAG_LIMIT {
        return Err(WignerError::ImaginaryResidue {
            x,
            p,
            im: r.value.im,
        });
    }
    Ok(r.value.re / (2.0 * PI))
}

/// Regulator widths that fit between y = 0 and the nearest non-smooth point.
const SMOOTH_MARGIN: f64 = 7.0;

/// Settings for the numeric p-integration of the quadrature values.
#[derive(Clone, Copy, Debug)]
pub struct MarginalOptions {
    /// Gaussian regulator e^{-eps p^2}; levels eps, eps/2, eps/4, ...
    pub eps: f64,
    /// Richardson levels (1 = no extrapolation).
    pub levels: usize,
    pub tolerance: f64,
}

impl Default for MarginalOptions {
    fn default() -> Self {
        MarginalOptions {
            eps: 0.004,
            levels: 4,
            tolerance: 1e-6,
        }
    }
}

impl MarginalOptions {
    /// The delta-well integrand is constant near y = 0 (kinks at y = ±2x),
    /// so a single coarse regulator suffices away from x = 0; the other
    /// cases need Richardson extrapolation in eps.
    pub fn for_wave(psi: &WaveSpec) -> Self {
        match psi.kind {
            WaveKind::DeltaWell => MarginalOptions {
                eps: 0.02,
                levels: 1,
                ..Default::default()
            },
            _ => Default::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Marginal {
    pub x: f64,
    /// |psi(x)|^2, the y = 0 value of the intermediate function
    pub exact: f64,
    /// extrapolated p-integral of the quadrature Wigner function
    pub numeric: f64,
}

fn regulated_p_integral(psi: &WaveSpec, x: f64, eps: f64) -> Result<f64, WignerError> {
    let y_max = psi.y_extent(x)?;
    if y_max <= 0.0 {
        return Ok(0.0);
    }
    // trapezoid in p aliases y by 2pi/dp; keep images clear of the support
    // plus the regulator's spread in y (std sqrt(2 eps))
    let dp = 2.0 * PI / (y_max + 12.0 * (2.0 * eps).sqrt() + 0.5);
    let p_max = (40.0 / eps).sqrt();
    let n = (p_max / dp).ceil() as i64;
    // every integrable wave is real up to a constant phase, so rho is even in p
    let mut sum = wigner_quadrature(psi, x, 0.0)?;
    for j in 1..=n {
        let p = j as f64 * dp;
        sum += 2.0 * wigner_quadrature(psi, x, p)? * (-eps * p * p).exp();
    }
    Ok(sum * dp)
}

/// Marginal in p at fixed x, cross-checked by numeric p-integration.
pub fn marginal_p(psi: &WaveSpec, x: f64, opts: &MarginalOptions) -> Result<Marginal, WignerError> {
    let exact = psi.density(x);
    // the regulator smooths the autocorrelation over |y| ~ sqrt(2 eps);
    // keep that well inside the region where it is smooth
    let radius = psi.smooth_radius(x)?;
    let eps = if radius > 0.0 { opts.eps.min(0.5 * (radius / SMOOTH_MARGIN).powi(2)) } else { opts.eps };
    let mut table: Vec<f64> = Vec::with_capacity(opts.levels);
    for l in 0..opts.levels {
        table.push(regulated_p_integral(psi, x, eps / (1u64 << l) as f64)?);
    }
    // Richardson in eps with ratio 2, error series in integer powers of eps
    for m in 1..opts.levels {
        let f = (1u64 << m) as f64;
        for l in (m..opts.levels).rev() {
            table[l] = (f * table[l] - table[l - 1]) / (f - 1.0);
        }
    }
    let numeric = *table.last().expect("at least one level");
    if (numeric - exact).abs() > opts.tolerance {
        return Err(WignerError::MarginalMismatch { x, exact, numeric });
    }
    Ok(Marginal { x, exact, numeric })
}
