use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::gauss::GaussRat;

/// Symbols of the polynomial ring.
///
/// `x` itself is never a symbol: position dependence enters only through the
/// exponential generators `U`, `UPlus`, `UMinus` and `V`, whose derivatives are
/// supplied by a [`DerivationTable`](super::DerivationTable). The last four
/// symbols carry the free-particle amplitudes.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    P,
    E,
    Alpha,
    /// `e^{2 alpha x}`
    U,
    /// `e^{2 alpha (x-1)}`
    UPlus,
    /// `e^{-2 alpha (x+1)}`
    UMinus,
    /// `e^{-2 alpha x}`
    V,
    APlus,
    AMinus,
    B,
    /// complex conjugate of `B`
    BBar,
}

pub const NVARS: usize = 11;

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::P,
        Var::E,
        Var::Alpha,
        Var::U,
        Var::UPlus,
        Var::UMinus,
        Var::V,
        Var::APlus,
        Var::AMinus,
        Var::B,
        Var::BBar,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::P => "p",
            Var::E => "E",
            Var::Alpha => "alpha",
            Var::U => "u",
            Var::UPlus => "u_p",
            Var::UMinus => "u_m",
            Var::V => "v",
            Var::APlus => "a_p",
            Var::AMinus => "a_m",
            Var::B => "b",
            Var::BBar => "bc",
        }
    }

    pub fn is_generator(self) -> bool {
        matches!(self, Var::U | Var::UPlus | Var::UMinus | Var::V)
    }
}

/// Exponent vector indexed by [`Var::index`]. Lexicographic order on the
/// array is the monomial order used for leading terms and division.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var) -> Self {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u16) -> Self {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Monomial(m)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut m = other.0;
        for (a, b) in m.iter_mut().zip(self.0.iter()) {
            *a -= *b;
        }
        Monomial(m)
    }

    pub fn gcd_with(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a = (*a).min(*b);
        }
        Monomial(m)
    }

    pub fn with_exp(&self, v: Var, e: u16) -> Monomial {
        let mut m = self.0;
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn has_generator(&self) -> bool {
        Var::ALL
            .iter()
            .any(|v| v.is_generator() && self.exp(*v) > 0)
    }
}

/// Sparse multivariate polynomial over the Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Poly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Poly::monomial(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(GaussRat::from_int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Poly::constant(GaussRat::from_ratio(num, den))
    }

    pub fn i() -> Self {
        Poly::constant(GaussRat::i())
    }

    pub fn var(v: Var) -> Self {
        Poly::monomial(Monomial::var(v), GaussRat::one())
    }

    pub fn monomial(m: Monomial, c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussRat)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    pub fn constant_term(&self) -> GaussRat {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(GaussRat::zero)
    }

    /// Lex-greatest term.
    pub fn leading(&self) -> Option<(&Monomial, &GaussRat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> GaussRat {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(GaussRat::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL.iter().copied().filter(|v| self.contains(*v)).collect()
    }

    pub fn has_generator(&self) -> bool {
        self.terms.keys().any(|m| m.has_generator())
    }

    /// Componentwise minimum of all exponent vectors.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(*first, |acc, m| acc.gcd_with(m)),
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    /// Divide every term by `m`; caller guarantees divisibility.
    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (m.quotient_of(k), a.clone()))
                .collect(),
        }
    }

    /// Scale so the leading coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Complex conjugate under the assumption that every symbol is real.
    pub fn conj(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect(),
        }
    }

    /// Complex conjugate that also exchanges `B` and `BBar`.
    pub fn conj_swap_b(&self) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut e = m.0;
            e.swap(Var::B.index(), Var::BBar.index());
            (Monomial(e), c.conj())
        }))
    }

    /// Real part, all symbols real.
    pub fn re(&self) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            (m.to_owned(), GaussRat::new(c.re.clone(), Default::default()))
        }))
    }

    /// Imaginary part, all symbols real.
    pub fn im(&self) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            (m.to_owned(), GaussRat::new(c.im.clone(), Default::default()))
        }))
    }

    /// Partial derivative with respect to a symbol.
    pub fn diff(&self, v: Var) -> Poly {
        let idx = v.index();
        Poly::from_terms(self.terms.iter().filter(|(m, _)| m.0[idx] > 0).map(|(m, c)| {
            let e = m.0[idx];
            (m.with_exp(v, e - 1), c * &GaussRat::from_int(e as i64))
        }))
    }

    /// Coefficients with respect to `v`: entry `k` multiplies `v^k`.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Poly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exp(v) as usize;
            out[k].add_term(m.with_exp(v, 0), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                out.add_term(m.with_exp(v, m.exp(v) + k as u16), a.clone());
            }
        }
        out
    }

    /// Replace `v` by `replacement` everywhere.
    pub fn substitute(&self, v: Var, replacement: &Poly) -> Poly {
        if !self.contains(v) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(v);
        // Horner in v
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * replacement) + c;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.len() == 1 {
            if !self.terms.keys().all(|m| dm.divides(m)) {
                return None;
            }
            let inv = dc.inv()?;
            return Some(self.div_monomial(dm).scale(&inv));
        }
        let dinv = dc.inv()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let qm = dm.quotient_of(rm);
            let qc = rc * &dinv;
            let step = d.mul_monomial(&qm).scale(&qc);
            rem = &rem - &step;
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn eval<F: Fn(Var) -> Complex64>(&self, assign: F) -> Complex64 {
        let vals: Vec<Complex64> = Var::ALL.iter().map(|v| assign(*v)).collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let (re, im) = c.to_f64_pair();
            let mut t = Complex64::new(re, im);
            for (k, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= vals[k].powu(e as u32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Drop every term whose monomial satisfies `pred`.
    pub fn drop_terms<F: Fn(&Monomial) -> bool>(&self, pred: F) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !pred(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Poly {
        Poly::var(Var::P)
    }
    fn a() -> Poly {
        Poly::var(Var::Alpha)
    }

    #[test]
    fn difference_of_squares() {
        let ia = &Poly::i() * &a();
        let lhs = (&p() + &ia) * (&p() - &ia);
        let rhs = &p().pow(2) + &a().pow(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_division() {
        let f = &p() + &Poly::int(1);
        let g = &p() - &a();
        let prod = &f * &g;
        assert_eq!(prod.div_exact(&g), Some(f.clone()));
        assert_eq!((&prod + &Poly::int(1)).div_exact(&g), None);
    }

    #[test]
    fn substitution_shifts_momentum() {
        // p^2 with p -> p + i alpha
        let shifted = p().pow(2).substitute(Var::P, &(&p() + &(&Poly::i() * &a())));
        let expect = &(&p().pow(2) - &a().pow(2)) + &(&Poly::int(2) * &(&Poly::i() * &(&p() * &a())));
        assert_eq!(shifted, expect);
    }

    #[test]
    fn coefficient_split_round_trip() {
        let f = &(&p().pow(3) * &a()) + &(&p() + &Poly::var(Var::E));
        let cs = f.coeffs_in(Var::P);
        assert_eq!(cs.len(), 4);
        assert_eq!(Poly::from_coeffs_in(Var::P, &cs), f);
    }
}
