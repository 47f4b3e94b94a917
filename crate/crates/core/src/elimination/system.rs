use crate::expr::{DerivationTable, Poly, RationalFn, Var};

use super::ElimError;

/// One term `c * exp(2 alpha s (x - offset))` of the potential.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialTerm {
    /// Coefficient, a rational function of `alpha` only.
    pub coeff: RationalFn,
    pub generator: Var,
    /// Sign of the exponent; also the momentum shift produced under Bopp shifting.
    pub sign: i8,
    pub offset: i32,
}

impl PotentialTerm {
    /// Exponential rate (coefficient of `alpha`) of the generator at `x`.
    pub fn rate_at(&self, x: f64) -> f64 {
        2.0 * self.sign as f64 * (x - self.offset as f64)
    }
}

/// Open interval of `x`, `None` for an infinite end.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Region {
    pub lo: Option<f64>,
    pub hi: Option<f64>,
}

impl Region {
    pub fn contains(&self, x: f64) -> bool {
        self.lo.map_or(true, |l| x > l) && self.hi.map_or(true, |h| x < h)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SystemSpec {
    pub name: String,
    pub terms: Vec<PotentialTerm>,
    pub region: Region,
}

impl SystemSpec {
    pub fn new(name: &str, terms: Vec<PotentialTerm>, region: Region) -> Result<Self, ElimError> {
        let spec = SystemSpec {
            name: name.to_string(),
            terms,
            region,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Every generator must be a known exponential, with an `alpha`-only
    /// coefficient, and decay throughout the region.
    pub fn validate(&self) -> Result<(), ElimError> {
        for t in &self.terms {
            if !t.generator.is_generator() {
                return Err(ElimError::Unsupported(format!(
                    "`{}` is not an exponential generator",
                    t.generator.name()
                )));
            }
            if t.sign != 1 && t.sign != -1 {
                return Err(ElimError::Unsupported("exponent sign must be +1 or -1".into()));
            }
            if t.coeff.vars().iter().any(|v| *v != Var::Alpha) {
                return Err(ElimError::Unsupported(format!(
                    "coefficient {} depends on more than alpha",
                    t.coeff
                )));
            }
            let decays = match t.sign {
                1 => self.region.hi.is_some_and(|h| h <= t.offset as f64),
                _ => self.region.lo.is_some_and(|l| l >= t.offset as f64),
            };
            if !decays {
                return Err(ElimError::InvalidSpec(format!(
                    "generator {} does not decay on the region",
                    t.generator.name()
                )));
            }
        }
        let mut gens: Vec<Var> = self.terms.iter().map(|t| t.generator).collect();
        gens.sort();
        gens.dedup();
        if gens.len() != self.terms.len() {
            return Err(ElimError::InvalidSpec("generator used twice".into()));
        }
        Ok(())
    }

    pub fn derivation_table(&self) -> DerivationTable {
        self.terms
            .iter()
            .fold(DerivationTable::new(), |t, term| t.with(term.generator, term.sign))
    }

    pub fn term_for(&self, g: Var) -> Option<&PotentialTerm> {
        self.terms.iter().find(|t| t.generator == g)
    }

    /// V = 0.
    pub fn free() -> Self {
        SystemSpec {
            name: "free".into(),
            terms: vec![],
            region: Region { lo: None, hi: None },
        }
    }

    /// V = e^{2 alpha x}; wall at x = 0, region x < 0.
    pub fn liouville() -> Self {
        SystemSpec::new(
            "liouville",
            vec![PotentialTerm {
                coeff: RationalFn::one(),
                generator: Var::U,
                sign: 1,
                offset: 0,
            }],
            Region { lo: None, hi: Some(0.0) },
        )
        .expect("valid preset")
    }

    /// V = e^{-2 alpha (x+1)} + e^{2 alpha (x-1)}; well on |x| < 1.
    pub fn sinh_gordon() -> Self {
        SystemSpec::new(
            "sinh-gordon",
            vec![
                PotentialTerm {
                    coeff: RationalFn::one(),
                    generator: Var::UPlus,
                    sign: 1,
                    offset: 1,
                },
                PotentialTerm {
                    coeff: RationalFn::one(),
                    generator: Var::UMinus,
                    sign: -1,
                    offset: -1,
                },
            ],
            Region { lo: Some(-1.0), hi: Some(1.0) },
        )
        .expect("valid preset")
    }

    /// V = -2 alpha e^{-2 alpha x} on the half-line x > 0.
    pub fn exp_delta() -> Self {
        SystemSpec::new(
            "exp-delta",
            vec![PotentialTerm {
                coeff: RationalFn::from_poly(&Poly::int(-2) * &Poly::var(Var::Alpha)),
                generator: Var::V,
                sign: -1,
                offset: 0,
            }],
            Region { lo: Some(0.0), hi: None },
        )
        .expect("valid preset")
    }

    /// Mirror image of [`exp_delta`](Self::exp_delta): V = -2 alpha e^{2 alpha x} on x < 0.
    pub fn exp_delta_left() -> Self {
        SystemSpec::new(
            "exp-delta-left",
            vec![PotentialTerm {
                coeff: RationalFn::from_poly(&Poly::int(-2) * &Poly::var(Var::Alpha)),
                generator: Var::U,
                sign: 1,
                offset: 0,
            }],
            Region { lo: None, hi: Some(0.0) },
        )
        .expect("valid preset")
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name.replace('_', "-").as_str() {
            "free" => Some(Self::free()),
            "liouville" => Some(Self::liouville()),
            "sinh-gordon" => Some(Self::sinh_gordon()),
            "exp-delta" | "delta" => Some(Self::exp_delta()),
            "exp-delta-left" => Some(Self::exp_delta_left()),
            _ => None,
        }
    }

    pub const PRESETS: [&'static str; 5] =
        ["free", "liouville", "sinh-gordon", "exp-delta", "exp-delta-left"];
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn growing_generator_rejected() {
        let err = SystemSpec::new(
            "bad",
            vec![PotentialTerm {
                coeff: RationalFn::one(),
                generator: Var::U,
                sign: 1,
                offset: 0,
            }],
            Region { lo: Some(0.0), hi: None },
        );
        assert!(matches!(err, Err(ElimError::InvalidSpec(_))));
    }

    #[test]
    fn non_generator_rejected() {
        let err = SystemSpec::new(
            "bad",
            vec![PotentialTerm {
                coeff: RationalFn::one(),
                generator: Var::P,
                sign: 1,
                offset: 0,
            }],
            Region { lo: None, hi: Some(0.0) },
        );
        assert!(matches!(err, Err(ElimError::Unsupported(_))));
    }
}
