use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::gauss::GaussRat;
use super::gcd::gcd;
use super::poly::{Poly, Var};
use super::ExprError;

/// Reduced fraction `num/den`.
///
/// Normal form: `gcd(num, den) = 1` and the lex-leading coefficient of `den`
/// is one, so two equal rational functions are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ExprError> {
        if den.is_zero() {
            return Err(ExprError::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFn {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::from_poly(Poly::int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_poly(Poly::ratio(n, d))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly::var(v))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        Self::normalize_den(num, den)
    }

    fn normalize_den(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            return RationalFn { num, den };
        }
        let inv = lc.inv().expect("nonzero denominator");
        RationalFn {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn inv(&self) -> Result<Self, ExprError> {
        if self.num.is_zero() {
            return Err(ExprError::ZeroDenominator);
        }
        Ok(Self::normalize_den(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RationalFn) -> Result<Self, ExprError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        RationalFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFn {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Substitution `v -> replacement` where the map is a ring automorphism
    /// (e.g. `p -> p + i k alpha`); no gcd is needed, only renormalization.
    pub fn substitute_automorphism(&self, v: Var, replacement: &Poly) -> Self {
        Self::normalize_den(
            self.num.substitute(v, replacement),
            self.den.substitute(v, replacement),
        )
    }

    /// General substitution with full reduction.
    pub fn substitute(&self, v: Var, replacement: &Poly) -> Result<Self, ExprError> {
        Self::new(
            self.num.substitute(v, replacement),
            self.den.substitute(v, replacement),
        )
    }

    pub fn conj(&self) -> Self {
        Self::normalize_den(self.num.conj(), self.den.conj())
    }

    pub fn contains(&self, v: Var) -> bool {
        self.num.contains(v) || self.den.contains(v)
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL
            .iter()
            .copied()
            .filter(|v| self.contains(*v))
            .collect()
    }

    pub fn eval<F: Fn(Var) -> Complex64 + Copy>(&self, assign: F) -> Complex64 {
        self.num.eval(assign) / self.den.eval(assign)
    }
}

impl From<Poly> for RationalFn {
    fn from(p: Poly) -> Self {
        RationalFn::from_poly(p)
    }
}

impl Add<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFn::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let (d1, d2) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                self.den.div_exact(&g).expect("gcd divides"),
                rhs.den.div_exact(&g).expect("gcd divides"),
            )
        };
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        let den = &self.den * &d2;
        RationalFn::reduce(num, den)
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        -&self
    }
}

impl Sub<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl Mul<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        if self.is_zero() || rhs.is_zero() {
            return RationalFn::zero();
        }
        // cross-cancel; inputs are already reduced
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        RationalFn::normalize_den(&n1 * &n2, &d1 * &d2)
    }
}

fn cancel(n: &Poly, d: &Poly) -> (Poly, Poly) {
    if d.is_constant() || n.is_constant() {
        return (n.clone(), d.clone());
    }
    let g = gcd(n, d);
    if g.is_one() {
        (n.clone(), d.clone())
    } else {
        (
            n.div_exact(&g).expect("gcd divides"),
            d.div_exact(&g).expect("gcd divides"),
        )
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFn> for RationalFn {
            type Output = RationalFn;
            fn $m(self, rhs: RationalFn) -> RationalFn {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFn> for RationalFn {
            type Output = RationalFn;
            fn $m(self, rhs: &RationalFn) -> RationalFn {
                (&self).$m(rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::ratfn_to_string(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Poly {
        Poly::var(Var::P)
    }

    #[test]
    fn self_quotient_is_one() {
        let f = &p().pow(2) - &Poly::var(Var::E);
        let q = RationalFn::new(f.clone(), f).unwrap();
        assert!(q.is_one());
    }

    #[test]
    fn sum_of_conjugate_poles() {
        let ia = &Poly::i() * &Poly::var(Var::Alpha);
        let a = RationalFn::new(Poly::one(), &p() + &ia).unwrap();
        let b = RationalFn::new(Poly::one(), &p() - &ia).unwrap();
        let expect = RationalFn::new(
            &Poly::int(2) * &p(),
            &p().pow(2) + &Poly::var(Var::Alpha).pow(2),
        )
        .unwrap();
        assert_eq!(&a + &b, expect);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            RationalFn::new(Poly::one(), Poly::zero()),
            Err(ExprError::ZeroDenominator)
        ));
        assert!(RationalFn::zero().inv().is_err());
    }
}
