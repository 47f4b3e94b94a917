//! Truncated bivariate Taylor jets in (x, p) with complex coefficients.
//!
//! `c[i][j]` multiplies `dx^i dp^j`; derivatives are `i! j! c[i][j]`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

pub const NX: usize = 5;
pub const NP: usize = 5;
/// Highest power of a jet with zero constant term that can be nonzero.
const NILPOTENCY: usize = (NX - 1) + (NP - 1);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub c: [[Complex64; NP]; NX],
}

/// Derivative table of a function whose derivatives repeat with period 4.
fn cycle(period: [Complex64; 4]) -> [Complex64; NILPOTENCY + 1] {
    std::array::from_fn(|k| period[k % 4])
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

impl Jet {
    pub fn zero() -> Self {
        Jet {
            c: [[Complex64::new(0.0, 0.0); NP]; NX],
        }
    }

    pub fn constant(v: Complex64) -> Self {
        let mut j = Jet::zero();
        j.c[0][0] = v;
        j
    }

    pub fn real(v: f64) -> Self {
        Jet::constant(Complex64::new(v, 0.0))
    }

    /// The coordinate `x` at `x0`.
    pub fn x(x0: f64) -> Self {
        let mut j = Jet::real(x0);
        j.c[1][0] = Complex64::new(1.0, 0.0);
        j
    }

    /// The coordinate `p` at `p0`.
    pub fn p(p0: f64) -> Self {
        let mut j = Jet::real(p0);
        j.c[0][1] = Complex64::new(1.0, 0.0);
        j
    }

    pub fn value(&self) -> Complex64 {
        self.c[0][0]
    }

    /// `d^dx/dx^dx d^dp/dp^dp` at the expansion point.
    pub fn derivative(&self, dx: usize, dp: usize) -> Complex64 {
        self.c[dx][dp] * factorial(dx) * factorial(dp)
    }

    pub fn scale(&self, s: Complex64) -> Jet {
        let mut out = *self;
        for row in out.c.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        out
    }

    pub fn scale_re(&self, s: f64) -> Jet {
        self.scale(Complex64::new(s, 0.0))
    }

    fn nilpotent_part(&self) -> Jet {
        let mut h = *self;
        h.c[0][0] = Complex64::new(0.0, 0.0);
        h
    }

    /// `f(self)` given `derivs[k] = f^(k)(self.value())` for `k = 0..=NILPOTENCY`.
    pub fn compose(&self, derivs: &[Complex64; NILPOTENCY + 1]) -> Jet {
        let h = self.nilpotent_part();
        let mut out = Jet::constant(derivs[0]);
        let mut hk = Jet::real(1.0);
        for (k, d) in derivs.iter().enumerate().skip(1) {
            hk = hk * h;
            out = out + hk.scale(*d / factorial(k));
        }
        out
    }

    pub fn exp(&self) -> Jet {
        let e = self.value().exp();
        self.compose(&[e; NILPOTENCY + 1])
    }

    pub fn sin(&self) -> Jet {
        let (s, c) = (self.value().sin(), self.value().cos());
        self.compose(&cycle([s, c, -s, -c]))
    }

    pub fn cos(&self) -> Jet {
        let (s, c) = (self.value().sin(), self.value().cos());
        self.compose(&cycle([c, -s, -c, s]))
    }

    /// `1/self`; the constant term must be nonzero.
    pub fn recip(&self) -> Jet {
        let z = self.value();
        let mut d = [Complex64::new(0.0, 0.0); NILPOTENCY + 1];
        let mut zk = z.inv();
        for (k, dk) in d.iter_mut().enumerate() {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            *dk = zk * sign * factorial(k);
            zk /= z;
        }
        self.compose(&d)
    }

    /// `sin(t)/t`, regular at `t = 0`.
    pub fn sinc(&self) -> Jet {
        if self.value().norm() < 0.5 {
            // sum_m (-1)^m t^{2m} / (2m+1)!, Horner in t^2; 20 terms reach ~1e-60 at |t| = 0.5
            let t2 = *self * *self;
            let mut acc = Jet::zero();
            for m in (0..20).rev() {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                acc = acc * t2 + Jet::real(sign / factorial(2 * m + 1));
            }
            acc
        } else {
            self.sin() * self.recip()
        }
    }

    /// Paper's error function `int_0^z e^{-t^2} dt`.
    pub fn erf_p(&self) -> Jet {
        let z = self.value();
        let g = (-z * z).exp();
        // d^k/dz^k e^{-z^2} = (-1)^k H_k(z) e^{-z^2}
        let mut h = [Complex64::new(0.0, 0.0); NILPOTENCY];
        h[0] = Complex64::new(1.0, 0.0);
        h[1] = z * 2.0;
        for k in 1..NILPOTENCY - 1 {
            h[k + 1] = z * 2.0 * h[k] - h[k - 1] * (2.0 * k as f64);
        }
        let mut d = [Complex64::new(0.0, 0.0); NILPOTENCY + 1];
        d[0] = super::erf::erf_p(z);
        for k in 0..NILPOTENCY {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            d[k + 1] = h[k] * g * sign;
        }
        self.compose(&d)
    }

    pub fn powi(&self, n: u32) -> Jet {
        let mut acc = Jet::real(1.0);
        for _ in 0..n {
            acc = acc * *self;
        }
        acc
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let mut out = self;
        for i in 0..NX {
            for j in 0..NP {
                out.c[i][j] += rhs.c[i][j];
            }
        }
        out
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self + (-rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale_re(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut out = Jet::zero();
        for i1 in 0..NX {
            for j1 in 0..NP {
                let a = self.c[i1][j1];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for i2 in 0..NX - i1 {
                    for j2 in 0..NP - j1 {
                        out.c[i1 + i2][j1 + j2] += a * rhs.c[i2][j2];
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn product_rule_on_monomials() {
        // x^3 p^2 at (2, -1): d^3/dx^3 d^2/dp^2 = 3! 2!
        let j = Jet::x(2.0).powi(3) * Jet::p(-1.0).powi(2);
        assert!(close(j.derivative(3, 2), Complex64::new(12.0, 0.0), 1e-14));
        assert!(close(j.derivative(1, 1), Complex64::new(3.0 * 4.0 * -2.0, 0.0), 1e-14));
    }

    #[test]
    fn sinc_branches_agree() {
        for t0 in [0.49999, 0.5] {
            let t = Jet::x(t0) * Jet::p(1.3);
            let a = t.sinc();
            let b = t.sin() * t.recip();
            for i in 0..NX {
                for j in 0..NP {
                    assert!(close(a.c[i][j], b.c[i][j], 1e-12), "{i} {j}");
                }
            }
        }
    }

    #[test]
    fn exp_derivatives() {
        let j = (Jet::x(0.3) * Jet::real(2.0)).exp();
        let e = (0.6f64).exp();
        assert!(close(j.derivative(4, 0), Complex64::new(16.0 * e, 0.0), 1e-13));
    }
}
