use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::expr::{GaussRat, Poly, Var};

use super::{
    check_rule, from_wavefunction, purity_constraint, rule_table, star_states,
    stargen_residual_free, FreeState,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FreeCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &str, pass: bool, detail: impl Into<String>) -> FreeCheck {
    FreeCheck {
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

fn random_gauss(rng: &mut ChaCha8Rng) -> GaussRat {
    let mut part = || (rng.gen_range(-9..=9), rng.gen_range(1..=7));
    GaussRat::from_parts(part(), part())
}

/// Rational points on the unit circle from Pythagorean triples.
fn unit_phases() -> Vec<GaussRat> {
    [(3, 4, 5), (5, 12, 13), (8, 15, 17), (-7, 24, 25), (20, -21, 29), (0, 1, 1), (-1, 0, 1)]
        .into_iter()
        .map(|(a, b, c)| GaussRat::from_parts((a, c), (b, c)))
        .collect()
}

fn symbolic_state() -> FreeState<Poly> {
    let v = Poly::var;
    FreeState::new(v(Var::APlus), v(Var::AMinus), v(Var::B), v(Var::E))
}

fn star_square_symbolic() -> FreeCheck {
    let v = Poly::var;
    let s = symbolic_state();
    let o = star_states(&s, &s).expect("same energy");
    let bb = &v(Var::B) * &v(Var::BBar);
    let ok = o.delta0
        && o.plus == &v(Var::APlus).pow(2) + &bb
        && o.minus == &v(Var::AMinus).pow(2) + &bb
        && o.up == &(&v(Var::APlus) + &v(Var::AMinus)) * &v(Var::B)
        && o.down == o.up.conj_swap_b();
    check("star_square_symbolic", ok, o.to_string())
}

fn purity_examples() -> FreeCheck {
    let q = GaussRat::from_int;
    let e = q(2);
    let cases = [
        (FreeState::new(q(1), q(1), GaussRat::from_parts((3, 5), (4, 5)), e.clone()), q(0)),
        (FreeState::new(q(1), q(0), q(0), e.clone()), q(0)),
        (FreeState::new(q(1), q(1), q(2), e), q(3)),
    ];
    let got: Vec<GaussRat> = cases.iter().map(|(s, _)| purity_constraint(s)).collect();
    let ok = cases.iter().zip(&got).all(|((_, want), g)| g == want);
    let detail = got.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ");
    check("purity_examples", ok, detail)
}

/// purity, gauge invariance, the relative-phase relation and
/// `rho * rho = d(0) (a+ + a-) rho` over seeded random amplitudes.
fn wavefunction_checks() -> Vec<FreeCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let phases = unit_phases();
    let e = GaussRat::from_ratio(7, 3);
    let (mut purity, mut gauge, mut phase, mut pure_square) = (true, true, true, true);
    let n = 64;
    for j in 0..n {
        let (ap, am) = (random_gauss(&mut rng), random_gauss(&mut rng));
        let s = from_wavefunction(&ap, &am, e.clone());
        purity &= purity_constraint(&s).is_zero();

        let u = &phases[j % phases.len()];
        gauge &= from_wavefunction(&(u * &ap), &(u * &am), e.clone()) == s;

        // alpha = r u with rational r > 0: b conj(u+) u- must be real, >= 0
        let (up, um) = (&phases[j % phases.len()], &phases[(j + 3) % phases.len()]);
        let (rp, rm) = (
            GaussRat::from_ratio(rng.gen_range(1..9), rng.gen_range(1..5)),
            GaussRat::from_ratio(rng.gen_range(1..9), rng.gen_range(1..5)),
        );
        let sb = from_wavefunction(&(&rp * up), &(&rm * um), e.clone());
        let rel = &(&sb.b * &up.conj()) * um;
        phase &= rel.is_real() && rel.re > num_rational::BigRational::from_integer(0.into());

        let o = star_states(&s, &s).expect("same energy");
        let total = &s.a_plus + &s.a_minus;
        pure_square &= o.as_state().is_some_and(|st| {
            st.a_plus == &total * &s.a_plus && st.a_minus == &total * &s.a_minus && st.b == &total * &s.b
        });
    }
    vec![
        check("round_trip_purity", purity, format!("{n} random amplitude pairs")),
        check("phase_gauge", gauge, format!("{n} common phases")),
        check("relative_phase", phase, format!("{n} phase pairs")),
        check("pure_star_square", pure_square, "rho*rho = delta(0) (a+ + a-) rho"),
    ]
}

fn stargen_ansatz() -> FreeCheck {
    let r = stargen_residual_free(&symbolic_state());
    check("stargen_ansatz", r.is_zero(), r.to_string().replace('\n', "; "))
}

fn rule_oracle(tol: f64) -> FreeCheck {
    let mut worst: f64 = 0.0;
    let mut ok = true;
    let mut failures = Vec::new();
    for (l, r, _) in rule_table() {
        match check_rule(l, r, 2.0) {
            Ok(c) => {
                worst = worst.max(c.error);
                if !(c.error <= tol) {
                    ok = false;
                    failures.push(format!("{l:?}*{r:?}"));
                }
            }
            Err(e) => {
                ok = false;
                failures.push(format!("{l:?}*{r:?}: {e}"));
            }
        }
    }
    let mut detail = format!("16 rules, max extrapolated error {worst:.3e} (tol {tol:e})");
    if !failures.is_empty() {
        detail.push_str(&format!("; failing: {}", failures.join(", ")));
    }
    check("rule_oracle", ok, detail)
}

/// Every free-particle check, sorted by name. `oracle_tol` bounds the
/// rule-table oracle, the only inexact check (default [`ORACLE_TOL`](super::ORACLE_TOL)).
pub fn run_free_suite(oracle_tol: f64) -> Vec<FreeCheck> {
    let mut out = vec![star_square_symbolic(), purity_examples(), stargen_ansatz(), rule_oracle(oracle_tol)];
    out.extend(wavefunction_checks());
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freepart::ORACLE_TOL;

    #[test]
    fn all_checks_pass() {
        let out = run_free_suite(ORACLE_TOL);
        assert_eq!(out.len(), 8);
        for c in &out {
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn tight_oracle_tolerance_fails() {
        let out = run_free_suite(0.0);
        assert!(!out.iter().find(|c| c.name == "rule_oracle").unwrap().pass);
    }
}
