use num_complex::Complex64;
use proptest::prelude::*;

use phasewall::elimination::{Provenance, Relation, SystemSpec, Unknown};
use phasewall::expr::{differentiate, solve, GaussRat, Poly, RationalFn, Solution, Var};
use phasewall::freepart::{from_wavefunction, purity_constraint, star_states};
use phasewall::residual::{random_smooth_field, stargen_residual, SHOWEQN_V};
use phasewall::starcalc::{star_general, PhaseField, PhaseGrid};

/// Sparse polynomial in p, u, alpha with small integer coefficients.
fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-5i64..=5, 0u16..3, 0u16..3, 0u16..2), 1..4).prop_map(|terms| {
        let mut out = Poly::zero();
        for (c, a, b, d) in terms {
            let m = &(&Poly::var(Var::P).pow(a as u32) * &Poly::var(Var::U).pow(b as u32)) * &Poly::var(Var::Alpha).pow(d as u32);
            out = &out + &(&Poly::int(c) * &m);
        }
        out
    })
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn gauss() -> impl Strategy<Value = GaussRat> {
    ((-9i64..=9, 1i64..=6), (-9i64..=9, 1i64..=6)).prop_map(|(re, im)| GaussRat::from_parts(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn polynomial_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn rational_functions_form_a_field(a in nonzero_poly(), b in nonzero_poly(), c in poly()) {
        let f = RationalFn::new(a.clone(), b.clone()).unwrap();
        let g = RationalFn::new(b, a).unwrap();
        prop_assert!((&f * &g).is_one());
        let h = RationalFn::from_poly(c);
        prop_assert_eq!(&(&f + &h) - &h, f);
    }

    #[test]
    fn derivation_obeys_leibniz(a in poly(), b in nonzero_poly(), c in poly()) {
        let table = SystemSpec::liouville().derivation_table();
        let f = RationalFn::new(a, b).unwrap();
        let g = RationalFn::from_poly(c);
        let lhs = differentiate(&(&f * &g), &table).unwrap();
        let rhs = &(&differentiate(&f, &table).unwrap() * &g) + &(&f * &differentiate(&g, &table).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn solutions_invariant_under_row_scaling(
        m in prop::collection::vec(poly(), 4),
        rhs in prop::collection::vec(poly(), 2),
        s in prop::collection::vec(nonzero_poly(), 2),
    ) {
        let r = |p: &Poly| RationalFn::from_poly(p.clone());
        let rows = vec![
            (vec![r(&m[0]), r(&m[1])], r(&rhs[0])),
            (vec![r(&m[2]), r(&m[3])], r(&rhs[1])),
        ];
        let scaled: Vec<_> = rows
            .iter()
            .zip(&s)
            .map(|((c, b), k)| (c.iter().map(|x| x * &r(k)).collect(), b * &r(k)))
            .collect();
        match (solve(&rows), solve(&scaled)) {
            (Ok(Solution::Unique(x)), Ok(Solution::Unique(y))) => prop_assert_eq!(x, y),
            (Ok(Solution::Underdetermined { rank: a, .. }), Ok(Solution::Underdetermined { rank: b, .. })) => {
                prop_assert_eq!(a, b)
            }
            (Err(_), Err(_)) => {}
            (x, y) => prop_assert!(false, "solvability changed under scaling: {:?} vs {:?}", x, y),
        }
    }

    #[test]
    fn shift_round_trip(cs in prop::collection::vec(poly(), 3), k in -1i8..=1, n in 0u8..=4) {
        let r = Relation::from_terms(
            Provenance::Combined,
            [
                (Unknown::new(0, n), RationalFn::from_poly(cs[0].clone())),
                (Unknown::new(1, 0), RationalFn::from_poly(cs[1].clone())),
                (Unknown::new(-1, 0), RationalFn::from_poly(cs[2].clone())),
            ],
        );
        prop_assert_eq!(r.shift(k).unwrap().shift(-k).unwrap(), r);
    }

    #[test]
    fn wavefunction_states_are_pure_and_gauge_free(ap in gauss(), am in gauss(), t in 0usize..4) {
        let e = GaussRat::from_ratio(5, 2);
        let s = from_wavefunction(&ap, &am, e.clone());
        prop_assert!(purity_constraint(&s).is_zero());
        let u = [
            GaussRat::from_parts((3, 5), (4, 5)),
            GaussRat::from_parts((-5, 13), (12, 13)),
            GaussRat::i(),
            GaussRat::from_int(-1),
        ][t].clone();
        prop_assert_eq!(from_wavefunction(&(&u * &ap), &(&u * &am), e), s.clone());
        let sq = star_states(&s, &s).unwrap().as_state().unwrap();
        let total = &s.a_plus + &s.a_minus;
        prop_assert_eq!(sq.b, &total * &s.b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn residual_ratio_is_scale_invariant(seed in 0u64..1000, c in 0.01f64..100.0, e in 2.0f64..6.0) {
        // a random field is no oscillator eigenstate, so the residual is O(1)
        let wf = random_smooth_field(seed, 128).unwrap();
        let a = stargen_residual(&wf, &SHOWEQN_V, e, 1e-6).unwrap();
        let b = stargen_residual(&wf.scale(c), &SHOWEQN_V, e, 1e-6).unwrap();
        for (a, b) in a.iter().zip(&b) {
            prop_assert!(a.ratio > 1e-3);
            prop_assert!((a.ratio - b.ratio).abs() <= 1e-12 * a.ratio, "{:?} vs {:?}", a, b);
        }
    }

    #[test]
    fn star_product_trace_and_hermiticity(
        a in -1.5f64..1.5, b in -1.5f64..1.5, w in 0.8f64..2.0,
        c in -1.5f64..1.5, d in -1.5f64..1.5, k in -1.0f64..1.0,
    ) {
        let g = PhaseGrid::new((-8.0, 8.0), 128, (-8.0, 8.0), 128).unwrap();
        let f = PhaseField::from_fn(g, |x, p| Complex64::new((-((x - a).powi(2) + (p - b).powi(2)) / w).exp(), 0.0));
        let h = PhaseField::from_fn(g, |x, p| {
            Complex64::new(0.0, k * (x + p)).exp() * (-((x - c).powi(2) + 0.75 * (p - d).powi(2)) / 1.5).exp()
        });
        let fh = star_general(&f, &h).unwrap();
        // trace: int f * h = int f h
        let plain = f.mul(&h).integral();
        prop_assert!((fh.integral() - plain).norm() <= 1e-8 * (1.0 + plain.norm()), "{} vs {}", fh.integral(), plain);
        // (f * h)^* = h^* * f^*
        let rev = star_general(&h.conj(), &f.conj()).unwrap();
        prop_assert!(fh.conj().max_abs_diff(&rev) <= 1e-8 * fh.max_abs(), "{} of {}", fh.conj().max_abs_diff(&rev), fh.max_abs());
    }
}
