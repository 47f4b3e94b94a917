use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::elimination::{derive, Relation, SystemSpec};
use crate::expr::{RationalFn, Var};
use crate::wigner::{CaseId, CatalogEntry};

use super::{Equation, ResidualError, ResidualReport, Sampling, ANALYTIC_TOL, GRID_TOL};

/// The limit relation as an x-differential operator with (p, E)-dependent
/// coefficients, exactly as produced by the elimination engine.
#[derive(Clone, Debug)]
pub struct LimitOperator {
    terms: BTreeMap<u8, RationalFn>,
}

impl LimitOperator {
    /// Fails if the relation still involves shifted unknowns.
    pub fn from_relation(r: &Relation) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (u, c) in r.terms() {
            if !u.is_target() {
                return None;
            }
            terms.insert(u.n, c.clone());
        }
        Some(LimitOperator { terms })
    }

    /// Operator of the Liouville limit, derived once per process.
    pub fn engine() -> &'static LimitOperator {
        static OP: OnceLock<LimitOperator> = OnceLock::new();
        OP.get_or_init(|| {
            let d = derive(&SystemSpec::liouville()).expect("liouville preset derives");
            let lim = d.limit.expect("liouville has a limit");
            LimitOperator::from_relation(&lim).expect("limit is closed")
        })
    }

    pub fn zeroth_order(&self) -> RationalFn {
        self.terms.get(&0).cloned().unwrap_or_else(RationalFn::zero)
    }

    pub fn orders(&self) -> impl Iterator<Item = u8> + '_ {
        self.terms.keys().copied()
    }

    /// Coefficient of `D^n` at (p, E).
    pub fn coeff(&self, n: u8, p: f64, e: f64) -> f64 {
        self.terms.get(&n).map_or(0.0, |c| {
            c.eval(|v| match v {
                Var::P => Complex64::new(p, 0.0),
                Var::E => Complex64::new(e, 0.0),
                _ => Complex64::new(0.0, 0.0),
            })
            .re
        })
    }
}

/// `nx × np` lattice over the closed box `xr × pr`.
pub fn interior_samples(xr: (f64, f64), pr: (f64, f64), nx: usize, np: usize) -> Vec<(f64, f64)> {
    let step = |r: (f64, f64), n: usize, k: usize| {
        if n == 1 {
            0.5 * (r.0 + r.1)
        } else {
            r.0 + (r.1 - r.0) * k as f64 / (n - 1) as f64
        }
    };
    let mut out = Vec::with_capacity(nx * np);
    for a in 0..nx {
        for b in 0..np {
            out.push((step(xr, nx, a), step(pr, np, b)));
        }
    }
    out
}

/// Open V = 0 region of a case; points on a kink of the formula are excluded.
fn admissible(case: CaseId, x: f64) -> bool {
    match case {
        CaseId::Wall | CaseId::WallPrinted | CaseId::HalfSho | CaseId::HalfShoPrinted => x < 0.0,
        CaseId::SquareWell | CaseId::SquareWellSqrtE => x.abs() < 1.0 && x != 0.0,
        CaseId::DeltaWell => x != 0.0,
        CaseId::FreeMixed => true,
    }
}

/// Per-point residual and largest single term of the limit PDE.
pub fn limit_pde_values(
    op: &LimitOperator,
    entry: &CatalogEntry,
    e: f64,
    samples: &[(f64, f64)],
) -> Result<Vec<(f64, f64)>, ResidualError> {
    let mut out = Vec::with_capacity(samples.len());
    for &(x, p) in samples {
        if !admissible(entry.case, x) {
            return Err(ResidualError::ForbiddenSample {
                case: entry.label(),
                x,
            });
        }
        let jet = entry.jet(x, p);
        let mut sum = 0.0;
        let mut big: f64 = 0.0;
        for n in op.orders() {
            let t = op.coeff(n, p, e) * jet.derivative(n as usize, 0).re;
            sum += t;
            big = big.max(t.abs());
        }
        out.push((sum, big));
    }
    Ok(out)
}

fn bounds(v: impl Iterator<Item = f64> + Clone) -> [f64; 2] {
    [
        v.clone().fold(f64::INFINITY, f64::min),
        v.fold(f64::NEG_INFINITY, f64::max),
    ]
}

/// `(1/16) rho_xxxx + (p^2+E)/2 rho_xx + Z rho` at each sample, with every
/// coefficient (Z in particular) taken from the derived limit relation.
pub fn limit_pde_residual(
    entry: &CatalogEntry,
    e: f64,
    samples: &[(f64, f64)],
) -> Result<ResidualReport, ResidualError> {
    if samples.is_empty() {
        return Err(ResidualError::NoSamples);
    }
    let vals = limit_pde_values(LimitOperator::engine(), entry, e, samples)?;
    let max_residual = vals.iter().map(|v| v.0.abs()).fold(0.0, f64::max);
    let normalization = vals.iter().map(|v| v.1).fold(0.0, f64::max);
    let grid = Sampling::Points {
        count: samples.len(),
        x: bounds(samples.iter().map(|s| s.0)),
        p: bounds(samples.iter().map(|s| s.1)),
    };
    Ok(ResidualReport::new(
        entry.label(),
        Equation::LimitPde,
        grid,
        max_residual,
        normalization,
        ANALYTIC_TOL,
    ))
}

/// The generalized equation for `V = c0 + c1 x + c2 x^2`, group by group,
/// with analytic catalog derivatives. For a real field, `Re[V*f] = V f -
/// (c2/4) f_pp` and `Im[V*f] = (V'/2) f_p`, so every group reduces to
/// derivatives of rho up to `D_x^4`, `D_x^2 D_p^2` and `D_p^4`.
pub fn showeqn_pointwise(
    entry: &CatalogEntry,
    v: &[f64; 3],
    e: f64,
    samples: &[(f64, f64)],
) -> Result<ResidualReport, ResidualError> {
    if samples.is_empty() {
        return Err(ResidualError::NoSamples);
    }
    let op = LimitOperator::engine();
    let [c0, c1, c2] = *v;
    let (mut max_residual, mut normalization) = (0.0f64, 0.0f64);
    for &(x, p) in samples {
        if !admissible(entry.case, x) {
            return Err(ResidualError::ForbiddenSample {
                case: entry.label(),
                x,
            });
        }
        let jet = entry.jet(x, p);
        let d = |i: usize, j: usize| jet.derivative(i, j).re;
        let vx = c0 + c1 * x + c2 * x * x;
        let v1 = 0.5 * c1 + c2 * x; // V'/2
        let vp = c1 + 2.0 * c2 * x; // V'
        let pe = p * p - e;
        let r = vx * d(0, 0) - 0.25 * c2 * d(0, 2);
        let r_pp = vx * d(0, 2) - 0.25 * c2 * d(0, 4);
        let g = pe * d(0, 0) - 0.25 * d(2, 0);
        let g_pp = 2.0 * d(0, 0) + 4.0 * p * d(0, 1) + pe * d(0, 2) - 0.25 * d(2, 2);
        let mut terms: Vec<f64> = op
            .orders()
            .map(|n| op.coeff(n, p, e) * d(n as usize, 0))
            .collect();
        terms.extend([
            pe * r,
            -p * (c2 * d(0, 1) + v1 * d(1, 1)),
            -0.25 * (2.0 * c2 * d(0, 0) + 2.0 * vp * d(1, 0) + vx * d(2, 0) - 0.25 * c2 * d(2, 2)),
            -v1 * (d(1, 0) + p * d(1, 1)),
            v1 * v1 * d(0, 2),
            vx * r - 0.25 * c2 * r_pp,
            vx * g - 0.25 * c2 * g_pp,
        ]);
        max_residual = max_residual.max(terms.iter().sum::<f64>().abs());
        normalization = terms.iter().fold(normalization, |m, t| m.max(t.abs()));
    }
    let grid = Sampling::Points {
        count: samples.len(),
        x: bounds(samples.iter().map(|s| s.0)),
        p: bounds(samples.iter().map(|s| s.1)),
    };
    Ok(ResidualReport::new(
        entry.label(),
        Equation::Showeqn,
        grid,
        max_residual,
        normalization,
        GRID_TOL,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{Poly, RationalFn};

    #[test]
    fn engine_zeroth_order_is_square() {
        let z = LimitOperator::engine().zeroth_order();
        let pe = &Poly::var(Var::P).pow(2) - &Poly::var(Var::E);
        assert_eq!(z, RationalFn::from_poly(pe.pow(2)));
    }

    #[test]
    fn wall_sample_behind_wall_rejected() {
        let r = limit_pde_residual(&CatalogEntry::wall(1.0), 1.0, &[(0.5, 0.0)]);
        assert!(matches!(r, Err(ResidualError::ForbiddenSample { .. })));
    }

    #[test]
    fn wall_residual_is_roundoff() {
        let s = interior_samples((-3.0, -0.1), (-10.0, 10.0), 20, 20);
        let r = limit_pde_residual(&CatalogEntry::wall(1.0), 1.0, &s).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn pointwise_generalized_equation() {
        let s = interior_samples((-4.0, -0.3), (-6.0, 6.0), 20, 20);
        let r = showeqn_pointwise(&CatalogEntry::half_sho(), &[0.0, 0.0, 1.0], 3.0, &s).unwrap();
        assert!(r.ratio < 1e-9, "{r:?}");
        let bad = showeqn_pointwise(&CatalogEntry::half_sho(), &[0.0, 0.0, 1.0], 3.5, &s).unwrap();
        assert!(bad.ratio > 1e-4);
    }

    #[test]
    fn wrong_energy_fails() {
        let s = interior_samples((-3.0, -0.1), (-10.0, 10.0), 10, 10);
        let r = limit_pde_residual(&CatalogEntry::wall(1.0), 1.3, &s).unwrap();
        assert!(r.ratio > 1e-3);
    }
}
