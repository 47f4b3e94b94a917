//! Canonical text form: terms by descending total degree, then descending lex
//! order; `*` between factors, `^` for powers, `i` for the imaginary unit.

use super::gauss::GaussRat;
use super::poly::{Monomial, Poly, Var};
use super::ratfn::RationalFn;

fn monomial_str(m: &Monomial) -> String {
    Var::ALL
        .iter()
        .filter(|v| m.exp(**v) > 0)
        .map(|v| match m.exp(*v) {
            1 => v.name().to_string(),
            e => format!("{}^{}", v.name(), e),
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Sorted terms in display order.
pub fn display_order(p: &Poly) -> Vec<(&Monomial, &GaussRat)> {
    let mut ts: Vec<_> = p.terms().collect();
    ts.sort_by(|a, b| {
        b.0.total_degree()
            .cmp(&a.0.total_degree())
            .then_with(|| b.0.cmp(a.0))
    });
    ts
}

pub fn poly_to_string(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in display_order(p).into_iter().enumerate() {
        let neg = c.prints_negative();
        let mag = if neg { -c } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let ms = monomial_str(m);
        if ms.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&ms);
        } else {
            out.push_str(&format!("{mag}*{ms}"));
        }
    }
    out
}

fn wrap(p: &Poly) -> String {
    let s = poly_to_string(p);
    if p.len() > 1 {
        format!("({s})")
    } else {
        s
    }
}

pub fn ratfn_to_string(f: &RationalFn) -> String {
    if f.is_poly() {
        return poly_to_string(f.num());
    }
    format!("{}/{}", wrap(f.num()), wrap(f.den()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_text() {
        let p = Poly::var(Var::P);
        let e = Poly::var(Var::E);
        let z = (&p.pow(2) - &e).pow(2);
        assert_eq!(poly_to_string(&z), "p^4 - 2*p^2*E + E^2");
        let q = &(&Poly::ratio(1, 2) * &p) - &(&Poly::i() * &Poly::var(Var::Alpha));
        assert_eq!(poly_to_string(&q), "1/2*p - i*alpha");
    }

    #[test]
    fn fraction_text() {
        let f = RationalFn::new(Poly::int(2) * Poly::var(Var::P), Poly::var(Var::P).pow(2) + Poly::var(Var::Alpha).pow(2))
            .unwrap();
        assert_eq!(ratfn_to_string(&f), "2*p/(p^2 + alpha^2)");
    }
}
