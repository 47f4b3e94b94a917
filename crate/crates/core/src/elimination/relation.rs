use std::collections::BTreeMap;
use std::fmt;

use crate::expr::{differentiate, text, DerivationTable, Poly, RationalFn, Var};

use super::ElimError;

pub const MAX_SHIFT: i8 = 2;
pub const MAX_ORDER: u8 = 4;

/// `D^n rho(x, p + i k alpha)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Unknown {
    pub k: i8,
    pub n: u8,
}

impl Unknown {
    pub fn new(k: i8, n: u8) -> Self {
        assert!(k.abs() <= MAX_SHIFT && n <= MAX_ORDER, "unknown out of bounds");
        Unknown { k, n }
    }

    pub fn rho(n: u8) -> Self {
        Unknown::new(0, n)
    }

    pub fn is_target(&self) -> bool {
        self.k == 0
    }
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = match self.k {
            0 => "R[0]".to_string(),
            k => format!("R[{k:+}]"),
        };
        match self.n {
            0 => write!(f, "{r}"),
            n => write!(f, "D^{n} {r}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    BaseIm,
    BaseRe,
    Shifted,
    Differentiated,
    Combined,
    Limit,
}

/// Linear combination of unknowns with rational-function coefficients.
#[derive(Clone, Debug)]
pub struct Relation {
    terms: BTreeMap<Unknown, RationalFn>,
    pub provenance: Provenance,
}

impl PartialEq for Relation {
    /// Equality of the linear form; provenance is bookkeeping only.
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Relation {
    pub fn new(provenance: Provenance) -> Self {
        Relation {
            terms: BTreeMap::new(),
            provenance,
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Unknown, RationalFn)>>(
        provenance: Provenance,
        it: I,
    ) -> Self {
        let mut r = Relation::new(provenance);
        for (u, c) in it {
            r.add(u, &c);
        }
        r
    }

    pub fn add(&mut self, u: Unknown, c: &RationalFn) {
        if c.is_zero() {
            return;
        }
        let next = match self.terms.get(&u) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if next.is_zero() {
            self.terms.remove(&u);
        } else {
            self.terms.insert(u, next);
        }
    }

    pub fn coeff(&self, u: Unknown) -> RationalFn {
        self.terms.get(&u).cloned().unwrap_or_else(RationalFn::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Unknown, &RationalFn)> {
        self.terms.iter()
    }

    pub fn unknowns(&self) -> Vec<Unknown> {
        self.terms.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn only_targets(&self) -> bool {
        self.terms.keys().all(|u| u.is_target())
    }

    pub fn scale(&self, c: &RationalFn) -> Relation {
        Relation::from_terms(self.provenance, self.terms.iter().map(|(u, a)| (*u, a * c)))
    }

    pub fn plus(&self, other: &Relation) -> Relation {
        let mut out = self.clone();
        out.provenance = Provenance::Combined;
        for (u, c) in &other.terms {
            out.add(*u, c);
        }
        out
    }

    pub fn minus(&self, other: &Relation) -> Relation {
        self.plus(&other.scale(&RationalFn::int(-1)))
    }

    pub fn map_coeffs<F: Fn(&RationalFn) -> RationalFn>(&self, f: F) -> Relation {
        Relation::from_terms(self.provenance, self.terms.iter().map(|(u, c)| (*u, f(c))))
    }

    /// Highest derivative order among the terms.
    pub fn order(&self) -> u8 {
        self.terms.keys().map(|u| u.n).max().unwrap_or(0)
    }

    /// Shift every unknown by `k` in the momentum direction, substituting
    /// `p -> p + i k alpha` in the coefficients.
    pub fn shift(&self, k: i8) -> Result<Relation, ElimError> {
        let repl = &Poly::var(Var::P)
            + &(&Poly::constant(crate::expr::GaussRat::from_parts((0, 1), (k as i64, 1)))
                * &Poly::var(Var::Alpha));
        let mut out = Relation::new(Provenance::Shifted);
        for (u, c) in &self.terms {
            let nk = u.k + k;
            if nk.abs() > MAX_SHIFT {
                return Err(ElimError::ShiftOutOfBounds { from: u.k, by: k });
            }
            out.add(
                Unknown { k: nk, n: u.n },
                &c.substitute_automorphism(Var::P, &repl),
            );
        }
        Ok(out)
    }

    /// d/dx: coefficient derivative plus promotion of every unknown's order.
    pub fn differentiate(&self, table: &DerivationTable) -> Result<Relation, ElimError> {
        let mut out = Relation::new(Provenance::Differentiated);
        for (u, c) in &self.terms {
            if u.n >= MAX_ORDER {
                return Err(ElimError::OrderOverflow(*u));
            }
            out.add(Unknown { k: u.k, n: u.n + 1 }, c);
            out.add(*u, &differentiate(c, table)?);
        }
        Ok(out)
    }

    /// Terms in display order: highest derivative first, then by shift.
    pub fn display_terms(&self) -> Vec<(Unknown, &RationalFn)> {
        let mut ts: Vec<_> = self.terms.iter().map(|(u, c)| (*u, c)).collect();
        ts.sort_by(|a, b| b.0.n.cmp(&a.0.n).then(a.0.k.cmp(&b.0.k)));
        ts
    }

    /// `{unknown: coefficient}` in canonical text, display order.
    pub fn to_map(&self) -> Vec<(String, String)> {
        self.display_terms()
            .into_iter()
            .map(|(u, c)| (u.to_string(), text::ratfn_to_string(c)))
            .collect()
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 = 0");
        }
        let parts: Vec<String> = self
            .display_terms()
            .into_iter()
            .map(|(u, c)| {
                let cs = text::ratfn_to_string(c);
                let simple = c.is_poly() && c.num().len() == 1;
                if c.is_one() {
                    u.to_string()
                } else if simple {
                    format!("{cs}*{u}")
                } else {
                    format!("({cs})*{u}")
                }
            })
            .collect();
        write!(f, "{} = 0", parts.join(" + "))
    }
}
