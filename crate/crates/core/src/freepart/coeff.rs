use std::fmt::Debug;

use num_complex::Complex64;

use crate::expr::{GaussRat, Poly};

/// Scalars the free-particle algebra runs over: exact Gaussian rationals,
/// symbolic polynomials (with `B`, `BBar` as a conjugate pair) or floats.
pub trait Coeff: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn from_int(n: i64) -> Self;
    fn i() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Canonical text.
    fn text(&self) -> String;
}

impl Coeff for GaussRat {
    fn zero() -> Self {
        GaussRat::zero()
    }
    fn from_int(n: i64) -> Self {
        GaussRat::from_int(n)
    }
    fn i() -> Self {
        GaussRat::i()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn conj(&self) -> Self {
        GaussRat::conj(self)
    }
    fn is_zero(&self) -> bool {
        GaussRat::is_zero(self)
    }
    fn text(&self) -> String {
        self.to_string()
    }
}

impl Coeff for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn from_int(n: i64) -> Self {
        Poly::int(n)
    }
    fn i() -> Self {
        Poly::i()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn conj(&self) -> Self {
        self.conj_swap_b()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn text(&self) -> String {
        self.to_string()
    }
}

impl Coeff for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn i() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn text(&self) -> String {
        if self.im == 0.0 {
            format!("{:.16e}", self.re)
        } else {
            format!("{:.16e}{:+.16e}*i", self.re, self.im)
        }
    }
}
