use phasewall::elimination::{
    derive, eliminate, expected_zeroth_order, hrhetc_relation, take_limit, zeroth_order, ElimError, Relation,
    SystemSpec, Unknown,
};
use phasewall::expr::{GaussRat, Poly, RationalFn, Var};

fn rf(p: Poly) -> RationalFn {
    RationalFn::from_poly(p)
}

fn limit_of(spec: &SystemSpec) -> Relation {
    derive(spec).unwrap().limit.unwrap()
}

#[test]
fn liouville_limit_coefficients() {
    let lim = limit_of(&SystemSpec::liouville());
    let (p, e) = (Poly::var(Var::P), Poly::var(Var::E));
    assert_eq!(lim.coeff(Unknown::rho(4)), RationalFn::ratio(1, 16));
    assert_eq!(lim.coeff(Unknown::rho(2)), rf(&Poly::ratio(1, 2) * &(&p.pow(2) + &e)));
    assert!(lim.coeff(Unknown::rho(3)).is_zero() && lim.coeff(Unknown::rho(1)).is_zero());
    assert_eq!(zeroth_order(&lim), rf(expected_zeroth_order()));
    assert_eq!(lim, hrhetc_relation());
}

#[test]
fn pre_limit_keeps_the_potential_squared() {
    let cases = [
        (SystemSpec::liouville(), -&Poly::var(Var::U).pow(2)),
        (
            SystemSpec::exp_delta(),
            &Poly::int(-4) * &(&Poly::var(Var::Alpha).pow(2) * &Poly::var(Var::V).pow(2)),
        ),
    ];
    for (spec, extra) in cases {
        let pre = eliminate(&spec).unwrap().relation;
        let z = zeroth_order(&pre);
        assert_eq!(&z - &rf(expected_zeroth_order()), rf(extra), "{}", spec.name);
    }
}

#[test]
fn presets_share_one_limit() {
    let reference = limit_of(&SystemSpec::liouville());
    for spec in [SystemSpec::sinh_gordon(), SystemSpec::exp_delta(), SystemSpec::exp_delta_left()] {
        assert_eq!(limit_of(&spec), reference, "{}", spec.name);
    }
}

#[test]
fn free_particle_has_nothing_to_eliminate() {
    let d = derive(&SystemSpec::free()).unwrap();
    assert!(d.elimination.is_none() && d.limit.is_none());
    assert_eq!(d.base_im.unknowns(), vec![Unknown::rho(1)]);
}

#[test]
fn certificate_reproduces_the_relation() {
    for spec in [SystemSpec::liouville(), SystemSpec::sinh_gordon(), SystemSpec::exp_delta()] {
        let el = eliminate(&spec).unwrap();
        let combined = el.certificate.combine();
        assert!(combined.only_targets(), "{}", spec.name);
        assert_eq!(combined.scale(&el.normalizer), el.relation, "{}", spec.name);
    }
}

#[test]
fn limit_requires_a_closed_relation() {
    let open = Relation::from_terms(
        phasewall::elimination::Provenance::Combined,
        [(Unknown::new(1, 0), RationalFn::one())],
    );
    assert!(matches!(
        take_limit(&open, &SystemSpec::liouville()),
        Err(ElimError::NotClosed(_))
    ));
}

/// Symbol `sum_n c_n (i q)^n` of the limit operator at `q = 2(p + s sqrt(E))`.
/// `Alpha` no longer occurs in the limit, so it stands in for `sqrt(E)`.
fn symbol_at_mode(lim: &Relation, s: i64) -> RationalFn {
    let k = Poly::var(Var::Alpha);
    let q = rf(&Poly::int(2) * &(&Poly::var(Var::P) + &(&Poly::int(s) * &k)));
    let iq = q.scale(&GaussRat::i());
    let mut sum = RationalFn::zero();
    for n in 0..=4u8 {
        let c = lim.coeff(Unknown::rho(n)).substitute(Var::E, &k.pow(2)).unwrap();
        sum = &sum + &(&c * &iq.pow(n as u32));
    }
    sum
}

/// The wall solution is a combination of `e^{2 i (p +- sqrt(E)) x}` modes in
/// x (with p-dependent weights); the limit operator annihilates each one.
#[test]
fn limit_annihilates_the_wall_modes() {
    let lim = limit_of(&SystemSpec::liouville());
    for s in [-1, 1] {
        assert!(symbol_at_mode(&lim, s).is_zero(), "mode sign {s}");
    }
    let mut printed = lim.clone();
    let p = Poly::var(Var::P);
    let e = Poly::var(Var::E);
    let z_printed = &(&p.pow(4) - &(&Poly::int(2) * &(&e * &p))) + &e.pow(2);
    printed.add(Unknown::rho(0), &(&rf(z_printed) - &zeroth_order(&lim)));
    assert!(!symbol_at_mode(&printed, 1).is_zero());
}
