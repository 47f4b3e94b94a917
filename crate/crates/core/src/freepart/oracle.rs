use std::f64::consts::PI;

use num_complex::Complex64;

use crate::wigner::quad::integrate;

use super::{rule, FreeError, Shape};

/// Bound on the extrapolated mismatch between a rule and its regulated limit.
pub const ORACLE_TOL: f64 = 1e-6;
const SIGMA0: f64 = 0.05;
const LEVELS: usize = 4;

/// Smooth test function the regulated products are integrated against.
fn phi(p: f64) -> f64 {
    (-(p - 0.3).powi(2) / 2.0).exp() * (1.0 + 0.2 * p)
}

fn gauss_delta(p: f64, s: f64) -> f64 {
    (-p * p / (2.0 * s * s)).exp() / ((2.0 * PI).sqrt() * s)
}

/// Outcome of checking one rule-table entry against Gaussian-regulated deltas.
#[derive(Clone, Debug, PartialEq)]
pub struct RuleCheck {
    pub left: Shape,
    pub right: Shape,
    pub predicted: Option<Shape>,
    /// `lim <phi, d_s * d_s> / d_s(0)-normalization`, Richardson-extrapolated
    pub value: f64,
    /// `phi` at the predicted delta, or 0 when the rule gives 0
    pub target: f64,
    pub error: f64,
    pub pass: bool,
}

/// Regulate both deltas as Gaussians of width `s`; the product of the
/// Bopp-shifted factors is integrated against `phi` and divided by
/// `int d_s^2 = 1/(2 sqrt(pi) s)`, the regulated `d(0)`. The ratio tends
/// to `phi(m)` if the two centers coincide at `m` and vanishes otherwise;
/// its error is a series in `s^2`, removed by Richardson extrapolation.
pub fn check_rule(left: Shape, right: Shape, energy: f64) -> Result<RuleCheck, FreeError> {
    if energy <= 0.0 {
        return Err(FreeError::Oracle("energy must be positive".into()));
    }
    let k = energy.sqrt();
    let (c1, h1) = left.ch();
    let (c2, h2) = right.ch();
    let m1 = (c1 - h2) as f64 * k;
    let m2 = (c2 + h1) as f64 * k;

    let mut table = Vec::with_capacity(LEVELS);
    for l in 0..LEVELS {
        let s = SIGMA0 / (1u32 << l) as f64;
        let norm = 2.0 * PI.sqrt() * s;
        let mut pts: Vec<f64> = (-12..=12)
            .flat_map(|j| [m1 + j as f64 * s, m2 + j as f64 * s])
            .collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        let f = |p: f64| Complex64::new(norm * gauss_delta(p - m1, s) * gauss_delta(p - m2, s) * phi(p), 0.0);
        let r = integrate(f, &pts, 1e-14, 10_000).map_err(|e| FreeError::Oracle(e.to_string()))?;
        table.push(r.value.re);
    }
    for m in 1..LEVELS {
        let f = 4f64.powi(m as i32);
        for l in (m..LEVELS).rev() {
            table[l] = (f * table[l] - table[l - 1]) / (f - 1.0);
        }
    }
    let value = table[LEVELS - 1];

    let predicted = rule(left, right);
    let target = match predicted {
        // the exponent e^{2i(h1+h2)kx} is exact; the rule must carry it
        Some(s) if s.ch().1 == h1 + h2 => phi(s.ch().0 as f64 * k),
        Some(_) => f64::NAN,
        None => 0.0,
    };
    let error = (value - target).abs();
    Ok(RuleCheck {
        left,
        right,
        predicted,
        value,
        target,
        error,
        pass: error <= ORACLE_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_rule_matches_its_regulated_limit() {
        for (l, r, _) in super::super::rule_table() {
            let c = check_rule(l, r, 2.0).unwrap();
            assert!(c.pass, "{c:?}");
        }
    }
}
