//! Operator form of `p^2 * rho * p^2 - E^2 rho - 2E Re(p^2 * rho - E rho)`
//! with Bopp shifts: left multiplication by `p^2` acts as `(p - i D/2)^2`,
//! right multiplication as `(p + i D/2)^2`.

use crate::expr::{GaussRat, Poly, RationalFn, Var};

use super::relation::{Provenance, Relation, Unknown};

/// Apply `(p + c D)` to an x-independent-coefficient relation in `D^n R[0]`.
fn apply_linear(r: &Relation, c: &GaussRat) -> Relation {
    let p = RationalFn::var(Var::P);
    let mut out = Relation::new(Provenance::Combined);
    for (u, a) in r.terms() {
        out.add(*u, &(&p * a));
        out.add(Unknown::rho(u.n + 1), &a.scale(c));
    }
    out
}

/// `(p - i D/2)^2 rho`.
pub fn left_p2(r: &Relation) -> Relation {
    let c = GaussRat::from_parts((0, 1), (-1, 2));
    apply_linear(&apply_linear(r, &c), &c)
}

/// `(p + i D/2)^2 rho`.
pub fn right_p2(r: &Relation) -> Relation {
    let c = GaussRat::from_parts((0, 1), (1, 2));
    apply_linear(&apply_linear(r, &c), &c)
}

/// Real part for real `rho`: every symbol is real, so take real parts of the
/// Gaussian-rational coefficients.
pub fn real_part(r: &Relation) -> Relation {
    r.map_coeffs(|c| {
        assert!(c.is_poly(), "polynomial coefficients expected");
        RationalFn::from_poly(c.num().re())
    })
}

pub fn hrhetc_relation() -> Relation {
    let rho = Relation::from_terms(Provenance::Combined, [(Unknown::rho(0), RationalFn::one())]);
    let e = RationalFn::var(Var::E);
    let sandwich = right_p2(&left_p2(&rho));
    let e2 = rho.scale(&(&e * &e));
    let kinetic = left_p2(&rho).minus(&rho.scale(&e));
    let re = real_part(&kinetic).scale(&(&RationalFn::int(2) * &e));
    let mut out = sandwich.minus(&e2).minus(&re);
    out.provenance = Provenance::Combined;
    out
}

/// `(p^2 - E)^2`, the zeroth-order coefficient the expansion forces.
pub fn expected_zeroth_order() -> Poly {
    (&Poly::var(Var::P).pow(2) - &Poly::var(Var::E)).pow(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_matches_by_hand() {
        let r = hrhetc_relation();
        assert_eq!(r.coeff(Unknown::rho(4)), RationalFn::ratio(1, 16));
        let half_sum = RationalFn::from_poly(
            &Poly::ratio(1, 2) * &(&Poly::var(Var::P).pow(2) + &Poly::var(Var::E)),
        );
        assert_eq!(r.coeff(Unknown::rho(2)), half_sum);
        assert_eq!(r.coeff(Unknown::rho(0)), RationalFn::from_poly(expected_zeroth_order()));
        assert!(r.coeff(Unknown::rho(1)).is_zero());
        assert!(r.coeff(Unknown::rho(3)).is_zero());
    }
}
