use std::f64::consts::PI;

use rayon::prelude::*;

use crate::starcalc::{PhaseField, PhaseGrid};
use crate::wigner::CatalogEntry;

use super::fields::{
    gaussian_test_field, half_sho_window_field, hrhetc_residual, op_identity_check,
    random_smooth_field, showeqn_residual, stargen_residual, wall_window_field, Window,
    WindowedField, SHOWEQN_V,
};
use super::limit::{interior_samples, limit_pde_residual, showeqn_pointwise};
use super::{ResidualError, ResidualReport, GRID_TOL, IDENTITY_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Pde,
    Hrhetc,
    Showeqn,
    Ops,
    Star,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Pde, Suite::Hrhetc, Suite::Showeqn, Suite::Ops, Suite::Star];
}

type Job = Box<dyn Fn() -> Result<Vec<ResidualReport>, ResidualError> + Send + Sync>;

fn one(r: Result<ResidualReport, ResidualError>) -> Result<Vec<ResidualReport>, ResidualError> {
    r.map(|r| vec![r])
}

/// Limit-PDE cases: 20 × 20 lattices inside each V = 0 region.
fn pde_jobs() -> Vec<Job> {
    let cases: Vec<(CatalogEntry, (f64, f64))> = vec![
        (CatalogEntry::wall(1.0), (-3.0, -0.1)),
        (CatalogEntry::wall(4.0), (-3.0, -0.1)),
        (CatalogEntry::square_well(1), (-0.9, 0.9)),
        (CatalogEntry::square_well(2), (-0.9, 0.9)),
        (CatalogEntry::delta_well(), (0.1, 3.0)),
    ];
    cases
        .into_iter()
        .map(|(entry, xr)| -> Job {
            Box::new(move || {
                let s = interior_samples(xr, (-10.0, 10.0), 20, 20);
                one(limit_pde_residual(&entry, entry.energy, &s))
            })
        })
        .collect()
}

fn hrhetc_jobs() -> Vec<Job> {
    vec![
        Box::new(|| one(hrhetc_residual(&random_smooth_field(7, 256)?, 1.3, IDENTITY_TOL))),
        Box::new(|| one(hrhetc_residual(&wall_window_field(1.0), 1.0, GRID_TOL))),
    ]
}

/// Generalized equation on the windowed grid and, with analytic
/// derivatives, on lattices: half-SHO at `E = 3` and the wall with `V = 0`
/// on the same lattice as its limit-PDE case.
fn showeqn_jobs() -> Vec<Job> {
    let renamed = |mut r: ResidualReport, suffix: &str| {
        r.case = format!("{}_{suffix}", r.case);
        vec![r]
    };
    vec![
        Box::new(move || {
            let r = showeqn_residual(&half_sho_window_field(), &SHOWEQN_V, 3.0)?;
            Ok(renamed(r, "grid"))
        }),
        Box::new(move || {
            let r = showeqn_residual(&wall_window_field(1.0), &[0.0; 3], 1.0)?;
            Ok(renamed(r, "v0_grid"))
        }),
        Box::new(move || {
            let s = interior_samples((-4.0, -0.3), (-6.0, 6.0), 20, 20);
            let r = showeqn_pointwise(&CatalogEntry::half_sho(), &SHOWEQN_V, 3.0, &s)?;
            Ok(renamed(r, "points"))
        }),
        Box::new(move || {
            let s = interior_samples((-3.0, -0.1), (-10.0, 10.0), 20, 20);
            let r = showeqn_pointwise(&CatalogEntry::wall(1.0), &[0.0; 3], 1.0, &s)?;
            Ok(renamed(r, "v0_points"))
        }),
    ]
}

fn ops_jobs() -> Vec<Job> {
    [0.5, 1.0, 2.0]
        .into_iter()
        .map(|a| -> Job { Box::new(move || one(op_identity_check(a, &gaussian_test_field()))) })
        .collect()
}

/// Oscillator states `H = p^2 + x^2`: ground (E = 1) and first excited (E = 3).
fn star_jobs() -> Vec<Job> {
    let job = |name: &'static str, e: f64, f: fn(f64, f64) -> f64| -> Job {
        Box::new(move || {
            let g = PhaseGrid::new((-8.0, 8.0), 256, (-8.0, 8.0), 256)?;
            let wf = WindowedField::new(name, PhaseField::from_real_fn(g, f), Window { x: None, p: None });
            Ok(stargen_residual(&wf, &SHOWEQN_V, e, GRID_TOL)?.to_vec())
        })
    };
    vec![
        job("sho_ground", 1.0, |x, p| (-x * x - p * p).exp() / PI),
        job("sho_first", 3.0, |x, p| {
            (2.0 * (x * x + p * p) - 1.0) * (-x * x - p * p).exp() / PI
        }),
    ]
}

fn jobs(s: Suite) -> Vec<Job> {
    match s {
        Suite::Pde => pde_jobs(),
        Suite::Hrhetc => hrhetc_jobs(),
        Suite::Showeqn => showeqn_jobs(),
        Suite::Ops => ops_jobs(),
        Suite::Star => star_jobs(),
    }
}

/// Run a suite's cases in parallel; reports come back sorted by
/// (equation, case) regardless of scheduling.
pub fn run_suite(s: Suite) -> Result<Vec<ResidualReport>, ResidualError> {
    let parts: Result<Vec<Vec<ResidualReport>>, ResidualError> =
        jobs(s).par_iter().map(|j| j()).collect();
    let mut out: Vec<ResidualReport> = parts?.into_iter().flatten().collect();
    out.sort_by(|a, b| (a.equation, &a.case).cmp(&(b.equation, &b.case)));
    Ok(out)
}
