use std::collections::BTreeMap;

use super::poly::{Poly, Var};
use super::ratfn::RationalFn;
use super::ExprError;

/// x-derivative rules for the exponential generators: `g -> s * 2 alpha * g`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DerivationTable {
    signs: BTreeMap<Var, i8>,
}

impl DerivationTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Register `g` with exponent sign `s` (`+1` or `-1`).
    pub fn with(mut self, g: Var, s: i8) -> Self {
        assert!(g.is_generator(), "{} is not an exponential generator", g.name());
        assert!(s == 1 || s == -1, "sign must be +1 or -1");
        self.signs.insert(g, s);
        self
    }

    pub fn sign(&self, g: Var) -> Option<i8> {
        self.signs.get(&g).copied()
    }

    pub fn generators(&self) -> impl Iterator<Item = (Var, i8)> + '_ {
        self.signs.iter().map(|(v, s)| (*v, *s))
    }

    fn check(&self, f: &Poly) -> Result<(), ExprError> {
        for v in f.vars() {
            if v.is_generator() && !self.signs.contains_key(&v) {
                return Err(ExprError::UnknownGenerator(v.name().to_string()));
            }
        }
        Ok(())
    }

    /// d/dx of a polynomial: sum over generators of `s * 2 alpha * g * df/dg`.
    pub fn diff_poly(&self, f: &Poly) -> Result<Poly, ExprError> {
        self.check(f)?;
        let two_alpha = &Poly::int(2) * &Poly::var(Var::Alpha);
        let mut out = Poly::zero();
        for (&g, &s) in &self.signs {
            if !f.contains(g) {
                continue;
            }
            let rate = &two_alpha * &Poly::int(s as i64);
            let term = &(&rate * &Poly::var(g)) * &f.diff(g);
            out = &out + &term;
        }
        Ok(out)
    }
}

/// d/dx of a rational function via the quotient rule.
pub fn differentiate(f: &RationalFn, table: &DerivationTable) -> Result<RationalFn, ExprError> {
    let dn = table.diff_poly(f.num())?;
    if f.is_poly() {
        return Ok(RationalFn::from_poly(dn));
    }
    let dd = table.diff_poly(f.den())?;
    if dd.is_zero() {
        return RationalFn::new(dn, f.den().clone());
    }
    let num = &(&dn * f.den()) - &(f.num() * &dd);
    RationalFn::new(num, f.den().pow(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> DerivationTable {
        DerivationTable::new().with(Var::U, 1)
    }

    #[test]
    fn defining_rule() {
        let u = RationalFn::var(Var::U);
        let d = differentiate(&u, &table()).unwrap();
        let expect = RationalFn::from_poly(&Poly::int(2) * &(&Poly::var(Var::Alpha) * &Poly::var(Var::U)));
        assert_eq!(d, expect);
    }

    #[test]
    fn chain_rule_square() {
        let u2 = RationalFn::from_poly(Poly::var(Var::U).pow(2));
        let d = differentiate(&u2, &table()).unwrap();
        let expect =
            RationalFn::from_poly(&Poly::int(4) * &(&Poly::var(Var::Alpha) * &Poly::var(Var::U).pow(2)));
        assert_eq!(d, expect);
    }

    #[test]
    fn x_independent_denominator() {
        let den = &Poly::var(Var::P).pow(2) + &Poly::var(Var::Alpha).pow(2);
        let f = RationalFn::new(Poly::var(Var::U), den.clone()).unwrap();
        let d = differentiate(&f, &table()).unwrap();
        let expect = RationalFn::new(
            &Poly::int(2) * &(&Poly::var(Var::Alpha) * &Poly::var(Var::U)),
            den,
        )
        .unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn unknown_generator_rejected() {
        let f = RationalFn::var(Var::V);
        assert!(matches!(
            differentiate(&f, &table()),
            Err(ExprError::UnknownGenerator(_))
        ));
    }
}
