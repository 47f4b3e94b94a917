//! Distributional free-particle Wigner states
//! `rho = a+ d(p-k) + a- d(p+k) + d(p) [b e^{2ikx} + b* e^{-2ikx}]`, `k = sqrt(E)`,
//! handled exactly through a finite rule table for star products of deltas.

mod coeff;
mod oracle;
mod suite;

use std::fmt;

pub use coeff::Coeff;
pub use oracle::{check_rule, RuleCheck, ORACLE_TOL};
pub use suite::{run_free_suite, FreeCheck};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FreeError {
    #[error("states have different energies: {0} vs {1}")]
    EnergyMismatch(String, String),
    #[error("unsupported term: {0}")]
    Unsupported(String),
    #[error("oracle: {0}")]
    Oracle(String),
}

/// `d(p - c k) e^{2 i h k x}` with `c, h` in {-1, 0, 1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    /// `d(p - k)`
    Plus,
    /// `d(p + k)`
    Minus,
    /// `d(p) e^{2ikx}`
    Up,
    /// `d(p) e^{-2ikx}`
    Down,
}

impl Shape {
    pub const ALL: [Shape; 4] = [Shape::Plus, Shape::Minus, Shape::Up, Shape::Down];

    /// (momentum, half-frequency) in units of k.
    pub fn ch(self) -> (i8, i8) {
        match self {
            Shape::Plus => (1, 0),
            Shape::Minus => (-1, 0),
            Shape::Up => (0, 1),
            Shape::Down => (0, -1),
        }
    }

    pub fn from_ch(c: i8, h: i8) -> Option<Shape> {
        Shape::ALL.into_iter().find(|s| s.ch() == (c, h))
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::Plus => "delta(p - sqrt(E))",
            Shape::Minus => "delta(p + sqrt(E))",
            Shape::Up => "delta(p)*e^(2*i*sqrt(E)*x)",
            Shape::Down => "delta(p)*e^(-2*i*sqrt(E)*x)",
        })
    }
}

/// `d(p - c1 k) e^{2 i h1 k x} * d(p - c2 k) e^{2 i h2 k x}`.
///
/// Bopp-shifting gives `d(p - c1 k + h2 k) d(p - c2 k - h1 k) e^{2i(h1+h2)kx}`:
/// the product of coincident deltas is `d(0) d(p - c1 k + h2 k)`, and deltas
/// at distinct points multiply to zero (E > 0).
pub fn rule(left: Shape, right: Shape) -> Option<Shape> {
    let (c1, h1) = left.ch();
    let (c2, h2) = right.ch();
    if c1 - h2 != c2 + h1 {
        return None;
    }
    let s = Shape::from_ch(c1 - h2, h1 + h2);
    debug_assert!(s.is_some(), "products of free shapes stay free");
    s
}

/// All sixteen ordered products.
pub fn rule_table() -> Vec<(Shape, Shape, Option<Shape>)> {
    let mut out = Vec::with_capacity(16);
    for l in Shape::ALL {
        for r in Shape::ALL {
            out.push((l, r, rule(l, r)));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct FreeState<C: Coeff> {
    pub a_plus: C,
    pub a_minus: C,
    pub b: C,
    pub energy: C,
}

impl<C: Coeff> FreeState<C> {
    pub fn new(a_plus: C, a_minus: C, b: C, energy: C) -> Self {
        FreeState {
            a_plus,
            a_minus,
            b,
            energy,
        }
    }

    pub fn coeff(&self, s: Shape) -> C {
        match s {
            Shape::Plus => self.a_plus.clone(),
            Shape::Minus => self.a_minus.clone(),
            Shape::Up => self.b.clone(),
            Shape::Down => self.b.conj(),
        }
    }

    pub fn terms(&self) -> Vec<DeltaTerm<C>> {
        Shape::ALL
            .into_iter()
            .map(|s| DeltaTerm::new(self.coeff(s), s, self.energy.clone()))
            .collect()
    }
}

/// Coefficients of a star product of two free states, each multiplying
/// `d(0)` times the given shape.
#[derive(Clone, Debug, PartialEq)]
pub struct StarOutcome<C: Coeff> {
    /// Whether an overall `d(0)` factor is present (some rule fired).
    pub delta0: bool,
    pub plus: C,
    pub minus: C,
    pub up: C,
    pub down: C,
    pub energy: C,
}

impl<C: Coeff> StarOutcome<C> {
    pub fn coeff(&self, s: Shape) -> &C {
        match s {
            Shape::Plus => &self.plus,
            Shape::Minus => &self.minus,
            Shape::Up => &self.up,
            Shape::Down => &self.down,
        }
    }

    /// The outcome as a (real) state, if the interference pair is conjugate.
    pub fn as_state(&self) -> Option<FreeState<C>> {
        (self.down == self.up.conj()).then(|| {
            FreeState::new(
                self.plus.clone(),
                self.minus.clone(),
                self.up.clone(),
                self.energy.clone(),
            )
        })
    }
}

impl<C: Coeff> fmt::Display for StarOutcome<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Shape::ALL
            .into_iter()
            .filter(|s| !self.coeff(*s).is_zero())
            .map(|s| format!("({})*{}", self.coeff(s).text(), s))
            .collect();
        if parts.is_empty() {
            return f.write_str("0");
        }
        let body = parts.join(" + ");
        if self.delta0 {
            write!(f, "delta(0)*[{body}]")
        } else {
            f.write_str(&body)
        }
    }
}

pub fn star_states<C: Coeff>(s1: &FreeState<C>, s2: &FreeState<C>) -> Result<StarOutcome<C>, FreeError> {
    if s1.energy != s2.energy {
        return Err(FreeError::EnergyMismatch(s1.energy.text(), s2.energy.text()));
    }
    let mut out = StarOutcome {
        delta0: false,
        plus: C::zero(),
        minus: C::zero(),
        up: C::zero(),
        down: C::zero(),
        energy: s1.energy.clone(),
    };
    for (l, r, res) in rule_table() {
        let Some(res) = res else { continue };
        out.delta0 = true;
        let t = s1.coeff(l).mul(&s2.coeff(r));
        let slot = match res {
            Shape::Plus => &mut out.plus,
            Shape::Minus => &mut out.minus,
            Shape::Up => &mut out.up,
            Shape::Down => &mut out.down,
        };
        *slot = slot.add(&t);
    }
    Ok(out)
}

/// `|b|^2 - a+ a-`; zero exactly for pure states.
pub fn purity_constraint<C: Coeff>(s: &FreeState<C>) -> C {
    s.b.mul(&s.b.conj()).sub(&s.a_plus.mul(&s.a_minus))
}

/// Wigner function of `alpha+ e^{ikx} + alpha- e^{-ikx}`:
/// `(|alpha+|^2, |alpha-|^2, alpha+ alpha-*)`.
pub fn from_wavefunction<C: Coeff>(alpha_plus: &C, alpha_minus: &C, energy: C) -> FreeState<C> {
    FreeState::new(
        alpha_plus.mul(&alpha_plus.conj()),
        alpha_minus.mul(&alpha_minus.conj()),
        alpha_plus.mul(&alpha_minus.conj()),
        energy,
    )
}

/// `coeff * d(p - c sqrt(Ec)) e^{2 i h sqrt(Eh) x}`; the two energies differ
/// only for deliberately detuned ansatz terms.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaTerm<C: Coeff> {
    pub coeff: C,
    pub c: i8,
    pub c_energy: C,
    pub h: i8,
    pub h_energy: C,
}

impl<C: Coeff> DeltaTerm<C> {
    pub fn new(coeff: C, shape: Shape, energy: C) -> Self {
        let (c, h) = shape.ch();
        DeltaTerm {
            coeff,
            c,
            c_energy: energy.clone(),
            h,
            h_energy: energy,
        }
    }

    fn describe(&self) -> String {
        let loc = match self.c {
            0 => "delta(p)".to_string(),
            c => format!("delta(p - ({c})*sqrt({}))", self.c_energy.text()),
        };
        match self.h {
            0 => loc,
            h => format!("{loc}*e^(2*i*({h})*sqrt({})*x)", self.h_energy.text()),
        }
    }
}

/// Residuals of `p d_x rho = 0` and `(p^2 - d_x^2/4) rho = E rho` for a
/// sum of delta terms, term by term; zero coefficients are dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeResidual<C: Coeff> {
    pub im: Vec<(String, C)>,
    pub re: Vec<(String, C)>,
}

impl<C: Coeff> FreeResidual<C> {
    pub fn is_zero(&self) -> bool {
        self.im.is_empty() && self.re.is_empty()
    }
}

fn render<C: Coeff>(parts: &[(String, C)]) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    parts
        .iter()
        .map(|(d, c)| format!("({})*{d}", c.text()))
        .collect::<Vec<_>>()
        .join(" + ")
}

impl<C: Coeff> fmt::Display for FreeResidual<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "im: {}\nre: {}", render(&self.im), render(&self.re))
    }
}

/// Substitute delta terms using `p d(p - q) = q d(p - q)` and
/// `d_x^2 e^{2ihkx} = -4 h^2 k^2 e^{2ihkx}`.
pub fn stargen_residual_terms<C: Coeff>(
    terms: &[DeltaTerm<C>],
    energy: &C,
) -> Result<FreeResidual<C>, FreeError> {
    let mut out = FreeResidual {
        im: Vec::new(),
        re: Vec::new(),
    };
    for t in terms {
        // p d_x: (c sqrt(Ec)) (2 i h sqrt(Eh))
        let im = if t.c == 0 || t.h == 0 {
            C::zero()
        } else if t.c_energy == t.h_energy {
            C::i().mul(&C::from_int(2 * t.c as i64 * t.h as i64)).mul(&t.c_energy)
        } else {
            return Err(FreeError::Unsupported(t.describe()));
        }
        .mul(&t.coeff);
        // p^2 - d_x^2/4 - E: c^2 Ec + h^2 Eh - E
        let re = C::from_int((t.c as i64).pow(2))
            .mul(&t.c_energy)
            .add(&C::from_int((t.h as i64).pow(2)).mul(&t.h_energy))
            .sub(energy)
            .mul(&t.coeff);
        if !im.is_zero() {
            out.im.push((t.describe(), im));
        }
        if !re.is_zero() {
            out.re.push((t.describe(), re));
        }
    }
    Ok(out)
}

pub fn stargen_residual_free<C: Coeff>(s: &FreeState<C>) -> FreeResidual<C> {
    stargen_residual_terms(&s.terms(), &s.energy).expect("ansatz terms share one energy")
}
