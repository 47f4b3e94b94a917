use serde::ser::{Serialize, SerializeMap, Serializer};

use phasewall::elimination::{
    derive, expected_zeroth_order, hrhetc_relation, zeroth_order, Derivation, ElimError, Relation, SystemSpec,
};
use phasewall::expr::{Poly, RationalFn, Var};

/// `{unknown: coefficient}` in display order.
#[derive(Clone, Debug, PartialEq)]
pub struct Terms(pub Vec<(String, String)>);

impl Serialize for Terms {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct RelationOut {
    pub text: String,
    pub terms: Terms,
}

impl From<&Relation> for RelationOut {
    fn from(r: &Relation) -> Self {
        RelationOut {
            text: r.to_string(),
            terms: Terms(r.to_map()),
        }
    }
}

/// How the engine's zeroth-order coefficient compares with the printed one.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ZerothOrder {
    pub engine: String,
    /// equals `(p^2 - E)^2`
    pub is_square: bool,
    /// the whole limit relation equals the operator expansion of
    /// `p^2 * rho * p^2 - E^2 rho - 2E Re(p^2 * rho - E rho)`
    pub matches_operator_expansion: bool,
    pub printed: String,
    /// engine minus printed; "0" if they agree
    pub difference: String,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct DerivationSummary {
    pub system: String,
    pub base_im: RelationOut,
    pub base_re: RelationOut,
    pub pre_limit: Option<RelationOut>,
    pub limit: Option<RelationOut>,
    pub zeroth_order: Option<ZerothOrder>,
}

/// `p^4 - 2 E p + E^2` as printed with the limit equations.
pub fn printed_zeroth_order() -> Poly {
    let (p, e) = (Poly::var(Var::P), Poly::var(Var::E));
    &(&p.pow(4) - &(&Poly::int(2) * &(&e * &p))) + &e.pow(2)
}

impl DerivationSummary {
    pub fn from_derivation(d: &Derivation) -> Self {
        let zeroth = d.limit.as_ref().map(|lim| {
            let z = zeroth_order(lim);
            let printed = RationalFn::from_poly(printed_zeroth_order());
            ZerothOrder {
                engine: z.to_string(),
                is_square: z == RationalFn::from_poly(expected_zeroth_order()),
                matches_operator_expansion: *lim == hrhetc_relation(),
                printed: printed.to_string(),
                difference: (&z - &printed).to_string(),
            }
        });
        DerivationSummary {
            system: d.system.name.clone(),
            base_im: (&d.base_im).into(),
            base_re: (&d.base_re).into(),
            pre_limit: d.elimination.as_ref().map(|e| (&e.relation).into()),
            limit: d.limit.as_ref().map(Into::into),
            zeroth_order: zeroth,
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!(
            "system: {}\nbase Im: {}\nbase Re: {}\n",
            self.system, self.base_im.text, self.base_re.text
        );
        match (&self.pre_limit, &self.limit) {
            (Some(pre), Some(lim)) => {
                out.push_str(&format!("pre-limit: {}\nlimit: {}\n", pre.text, lim.text));
            }
            _ => out.push_str("nothing to eliminate\n"),
        }
        if let Some(z) = &self.zeroth_order {
            out.push_str(&format!(
                "zeroth order: {} (equals (p^2 - E)^2: {}; matches operator expansion: {})\n",
                z.engine,
                yes_no(z.is_square),
                yes_no(z.matches_operator_expansion)
            ));
            out.push_str(&format!(
                "printed zeroth order: {} (engine minus printed: {})\n",
                z.printed, z.difference
            ));
        }
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Debug, thiserror::Error)]
pub enum DeriveError {
    #[error("unknown system `{0}`; expected one of {list}", list = SystemSpec::PRESETS.join(", "))]
    UnknownSystem(String),
    #[error("no system given; pass --system or set \"system\" in the config file")]
    Missing,
    #[error(transparent)]
    Elim(#[from] ElimError),
}

pub fn run_derive(system: Option<&str>) -> Result<DerivationSummary, DeriveError> {
    let name = system.ok_or(DeriveError::Missing)?;
    let spec = SystemSpec::preset(name).ok_or_else(|| DeriveError::UnknownSystem(name.into()))?;
    Ok(DerivationSummary::from_derivation(&derive(&spec)?))
}
