//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuadError {
    #[error("quadrature did not converge: error estimate {estimate:e} after {intervals} intervals")]
    NonConvergent { estimate: f64, intervals: usize },
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub intervals: usize,
}

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += s * WGK[i];
        if i % 2 == 1 {
            g += s * WG[i / 2];
        }
    }
    let k = k * h;
    let g = g * h;
    (k, (k - g).norm())
}

struct Piece {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err)
    }
}

/// Integrate over `[points[0], points.last()]`, with the interior points as
/// forced breakpoints (kinks, oscillation splits).
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: F,
    points: &[f64],
    abs_tol: f64,
    max_intervals: usize,
) -> Result<QuadResult, QuadError> {
    let mut heap = BinaryHeap::new();
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for w in points.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let (v, e) = gk15(&f, w[0], w[1]);
        total += v;
        err += e;
        heap.push(Piece { a: w[0], b: w[1], value: v, err: e });
    }
    let floor = |t: Complex64| abs_tol.max(1e-14 * t.norm());
    while err > floor(total) {
        if heap.len() >= max_intervals {
            return Err(QuadError::NonConvergent {
                estimate: err,
                intervals: heap.len(),
            });
        }
        let Some(worst) = heap.pop() else { break };
        let m = 0.5 * (worst.a + worst.b);
        if m <= worst.a || m >= worst.b {
            // cannot split further in floating point
            heap.push(worst);
            return Err(QuadError::NonConvergent {
                estimate: err,
                intervals: heap.len(),
            });
        }
        let (v1, e1) = gk15(&f, worst.a, m);
        let (v2, e2) = gk15(&f, m, worst.b);
        total += v1 + v2 - worst.value;
        err += e1 + e2 - worst.err;
        heap.push(Piece { a: worst.a, b: m, value: v1, err: e1 });
        heap.push(Piece { a: m, b: worst.b, value: v2, err: e2 });
    }
    // re-sum to shed accumulated update roundoff
    let value = heap.iter().map(|p| p.value).sum();
    let error = heap.iter().map(|p| p.err).sum();
    Ok(QuadResult {
        value,
        error,
        intervals: heap.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oscillatory_gaussian() {
        // int e^{-y^2} e^{-i 3 y} dy = sqrt(pi) e^{-9/4}
        let r = integrate(
            |y| Complex64::new(0.0, -3.0 * y).exp() * (-y * y).exp(),
            &[-10.0, 0.0, 10.0],
            1e-13,
            2000,
        )
        .unwrap();
        let want = std::f64::consts::PI.sqrt() * (-2.25f64).exp();
        assert!((r.value.re - want).abs() < 1e-12);
        assert!(r.value.im.abs() < 1e-12);
    }

    #[test]
    fn kink_at_breakpoint() {
        let r = integrate(|y| Complex64::new((-y.abs()).exp(), 0.0), &[-1.0, 0.0, 1.0], 1e-13, 100)
            .unwrap();
        assert!((r.value.re - 2.0 * (1.0 - (-1.0f64).exp())).abs() < 1e-13);
    }
}
