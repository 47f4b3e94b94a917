use phasewall::expr::{GaussRat, ParseGaussError};
use phasewall::freepart::{
    from_wavefunction, purity_constraint, star_states, stargen_residual_free, Coeff, FreeError, FreeState,
};

#[derive(Debug, thiserror::Error)]
pub enum FreeArgsError {
    #[error("expected 5 values (a+ a- Re(b) Im(b) E) or 3 (alpha+ alpha- E), got {0}")]
    Arity(usize),
    #[error(transparent)]
    Parse(#[from] ParseGaussError),
    #[error("energy must be positive, got {0}")]
    Energy(String),
    #[error(transparent)]
    Free(#[from] FreeError),
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct FreeReport {
    pub a_plus: String,
    pub a_minus: String,
    pub b: String,
    pub energy: String,
    pub star_square: String,
    /// `|b|^2 - a+ a-`
    pub purity: String,
    pub stargen_im: String,
    pub stargen_re: String,
    pub pure: bool,
    pub stargen_zero: bool,
}

/// `(a+, a-, Re b, Im b, E)` or, from plane-wave amplitudes, `(alpha+, alpha-, E)`.
pub fn parse_state(values: &[String]) -> Result<FreeState<GaussRat>, FreeArgsError> {
    let q: Vec<GaussRat> = values.iter().map(|v| v.parse()).collect::<Result<_, _>>()?;
    let s = match q.as_slice() {
        [ap, am, br, bi, e] => FreeState::new(ap.clone(), am.clone(), br + &(&GaussRat::i() * bi), e.clone()),
        [ap, am, e] => from_wavefunction(ap, am, e.clone()),
        _ => return Err(FreeArgsError::Arity(values.len())),
    };
    if s.energy.to_f64_pair().0 <= 0.0 {
        return Err(FreeArgsError::Energy(s.energy.to_string()));
    }
    Ok(s)
}

fn terms_text(parts: &[(String, GaussRat)]) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    parts
        .iter()
        .map(|(d, c)| format!("({})*{d}", c.text()))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn free_report(s: &FreeState<GaussRat>) -> Result<FreeReport, FreeArgsError> {
    let square = star_states(s, s)?;
    let purity = purity_constraint(s);
    let r = stargen_residual_free(s);
    Ok(FreeReport {
        a_plus: s.a_plus.text(),
        a_minus: s.a_minus.text(),
        b: s.b.text(),
        energy: s.energy.text(),
        star_square: square.to_string(),
        purity: purity.text(),
        stargen_im: terms_text(&r.im),
        stargen_re: terms_text(&r.re),
        pure: purity.is_zero(),
        stargen_zero: r.is_zero(),
    })
}

impl FreeReport {
    pub fn text(&self) -> String {
        format!(
            "state: a+ = {}, a- = {}, b = {}, E = {}\nstar-square: {}\npurity residual: {}\nstargen residual im: {}\nstargen residual re: {}\n",
            self.a_plus, self.a_minus, self.b, self.energy, self.star_square, self.purity, self.stargen_im, self.stargen_re
        )
    }
}
