use phasewall::wigner::{proportionality_suite, wigner_quadrature, CatalogEntry, WignerError, PROPORTIONALITY_TOL};

fn entries() -> Vec<(CatalogEntry, Vec<(f64, f64)>)> {
    vec![
        (CatalogEntry::wall(1.0), vec![(-0.7, 0.3), (-2.1, -1.4)]),
        (CatalogEntry::wall(4.0), vec![(-1.3, 2.2)]),
        (CatalogEntry::square_well(1), vec![(0.4, 0.9), (-0.6, -2.0)]),
        (CatalogEntry::square_well(2), vec![(0.25, 1.7)]),
        (CatalogEntry::delta_well(), vec![(0.8, 0.5), (-1.2, 2.5)]),
        (CatalogEntry::half_sho(), vec![(-0.9, 0.4), (-1.7, -1.1)]),
    ]
}

/// Analytic derivatives against 4th-order central differences.
#[test]
fn derivatives_match_finite_differences() {
    let h = 1e-3;
    for (e, pts) in entries() {
        for (x, p) in pts {
            let f = |x: f64, p: f64| e.value(x, p);
            let fd = |g: &dyn Fn(f64) -> f64| (g(-2.0 * h) - 8.0 * g(-h) + 8.0 * g(h) - g(2.0 * h)) / (12.0 * h);
            let dx = fd(&|t| f(x + t, p));
            let dp = fd(&|t| f(x, p + t));
            let dxp = fd(&|t| e.eval(x + t, p, 0, 1).unwrap());
            let dxx = fd(&|t| e.eval(x + t, p, 1, 0).unwrap());
            let dpppp = fd(&|t| e.eval(x, p + t, 0, 3).unwrap());
            let scale = 1.0 + e.value(x, p).abs();
            for (name, got, want) in [
                ("dx", e.eval(x, p, 1, 0).unwrap(), dx),
                ("dp", e.eval(x, p, 0, 1).unwrap(), dp),
                ("dxdp", e.eval(x, p, 1, 1).unwrap(), dxp),
                ("dxx", e.eval(x, p, 2, 0).unwrap(), dxx),
                ("dpppp", e.eval(x, p, 0, 4).unwrap(), dpppp),
            ] {
                assert!(
                    (got - want).abs() <= 1e-6 * scale * (1.0 + want.abs()),
                    "{} {name} at ({x}, {p}): {got} vs {want}",
                    e.label()
                );
            }
        }
    }
}

#[test]
fn derivative_order_is_bounded() {
    let e = CatalogEntry::wall(1.0);
    assert!(matches!(e.eval(-1.0, 0.0, 5, 0), Err(WignerError::OrderOutOfRange { .. })));
    assert!(matches!(e.eval(-1.0, 0.0, 0, 5), Err(WignerError::OrderOutOfRange { .. })));
}

/// Real wave functions give Wigner functions even in p; symmetric potentials
/// give ones even in x as well.
#[test]
fn parity() {
    for (e, pts) in entries() {
        for (x, p) in pts {
            let v = e.value(x, p);
            assert!((e.value(x, -p) - v).abs() <= 1e-12 * (1.0 + v.abs()), "{}", e.label());
        }
    }
    for e in [CatalogEntry::square_well(1), CatalogEntry::square_well(2), CatalogEntry::delta_well()] {
        for (x, p) in [(0.3, 0.2), (0.77, -1.9)] {
            let v = e.value(x, p);
            assert!((e.value(-x, p) - v).abs() <= 1e-12 * (1.0 + v.abs()), "{}", e.label());
        }
    }
}

#[test]
fn vanishes_outside_the_support() {
    assert_eq!(CatalogEntry::wall(1.0).value(0.3, 1.0), 0.0);
    assert_eq!(CatalogEntry::square_well(1).value(1.2, 0.0), 0.0);
    assert_eq!(CatalogEntry::half_sho().value(0.1, -0.5), 0.0);
}

/// At x = 0 the delta-well Wigner function is 1/(p^2 + 1).
#[test]
fn delta_well_origin_column() {
    let e = CatalogEntry::delta_well();
    for p in [-3.0, 0.0, 0.5, 7.0] {
        assert!((e.value(0.0, p) - 1.0 / (p * p + 1.0)).abs() < 1e-15);
    }
}

#[test]
fn quadrature_is_real_and_proportional() {
    let psi = CatalogEntry::square_well(1).wave();
    assert!(wigner_quadrature(&psi, 0.0, 0.0).unwrap() > 0.0);
    for c in proportionality_suite().unwrap() {
        assert!(c.points >= 20, "{}", c.case);
        if c.flag.is_none() {
            assert!(c.spread <= PROPORTIONALITY_TOL, "{c:?}");
        }
    }
}
