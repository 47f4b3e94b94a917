use std::collections::BTreeSet;

use crate::expr::{echelon, gcd, GaussRat, Poly, RationalFn, Var};

use super::relation::{Provenance, Relation, Unknown};
use super::system::SystemSpec;
use super::ElimError;

/// Imaginary and real parts of `H * rho = E rho`.
///
/// `(p - i D/2)^2 rho = (p^2 - D^2/4) rho - i p D rho`, and each potential
/// term `c g` contributes `c g rho(x, p + i s alpha)`; real and imaginary
/// parts pair the `+s` and `-s` shifts.
pub fn build_base_relations(spec: &SystemSpec) -> Result<(Relation, Relation), ElimError> {
    spec.validate()?;
    let p = RationalFn::var(Var::P);
    let e = RationalFn::var(Var::E);

    let mut im = Relation::new(Provenance::BaseIm);
    im.add(Unknown::rho(1), &-&p);

    let mut re = Relation::new(Provenance::BaseRe);
    re.add(Unknown::rho(0), &(&(&p * &p) - &e));
    re.add(Unknown::rho(2), &RationalFn::ratio(-1, 4));

    let half = GaussRat::from_ratio(1, 2);
    let half_over_i = GaussRat::from_parts((0, 1), (-1, 2)); // 1/(2i)
    for t in &spec.terms {
        let cg = &t.coeff * &RationalFn::var(t.generator);
        let s = t.sign;
        // Im: c g (R_s - R_-s) / 2i
        let im_c = cg.scale(&half_over_i);
        im.add(Unknown::new(s, 0), &im_c);
        im.add(Unknown::new(-s, 0), &-&im_c);
        // Re: c g (R_s + R_-s) / 2
        let re_c = cg.scale(&half);
        re.add(Unknown::new(s, 0), &re_c);
        re.add(Unknown::new(-s, 0), &re_c);
    }
    Ok((im, re))
}

/// Linear combination of the input relations producing the eliminated one.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub relations: Vec<Relation>,
    pub multipliers: Vec<RationalFn>,
}

impl Certificate {
    /// `sum_j multipliers[j] * relations[j]`.
    pub fn combine(&self) -> Relation {
        let mut out = Relation::new(Provenance::Combined);
        for (m, r) in self.multipliers.iter().zip(&self.relations) {
            if !m.is_zero() {
                out = out.plus(&r.scale(m));
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Elimination {
    pub base_im: Relation,
    pub base_re: Relation,
    /// Pre-limit relation in `R[0], D R[0], ..., D^4 R[0]`, normalized so the
    /// highest-order coefficient is `(1/2)^order`.
    pub relation: Relation,
    pub certificate: Certificate,
    /// Common factor divided out of `certificate.combine()` to get `relation`.
    pub normalizer: RationalFn,
}

/// The enlarged relation set: base Im and Re, both shifted by ±1 where a
/// potential exists, and x-derivatives (Im once, Re once and twice).
pub fn relation_set(spec: &SystemSpec) -> Result<Vec<Relation>, ElimError> {
    let (im, re) = build_base_relations(spec)?;
    if spec.terms.is_empty() {
        return Ok(vec![im, re]);
    }
    let table = spec.derivation_table();
    let d_re = re.differentiate(&table)?;
    let d2_re = d_re.differentiate(&table)?;
    let d_im = im.differentiate(&table)?;
    Ok(vec![
        im.clone(),
        re.clone(),
        im.shift(1)?,
        im.shift(-1)?,
        re.shift(1)?,
        re.shift(-1)?,
        d_im,
        d_re,
        d2_re,
    ])
}

/// Eliminate every shifted unknown, leaving one relation in `D^n R[0]`.
pub fn eliminate(spec: &SystemSpec) -> Result<Elimination, ElimError> {
    let rels = relation_set(spec)?;
    let (base_im, base_re) = (rels[0].clone(), rels[1].clone());

    let all: BTreeSet<Unknown> = rels.iter().flat_map(|r| r.unknowns()).collect();
    // eliminated columns first, highest order / largest |k| first; then targets
    let mut elim: Vec<Unknown> = all.iter().copied().filter(|u| !u.is_target()).collect();
    elim.sort_by(|a, b| b.n.cmp(&a.n).then(b.k.abs().cmp(&a.k.abs())).then(a.k.cmp(&b.k)));
    let targets: Vec<Unknown> = (0..=4).rev().map(Unknown::rho).collect();
    let cols: Vec<Unknown> = elim.iter().chain(targets.iter()).copied().collect();

    let matrix: Vec<Vec<RationalFn>> = rels
        .iter()
        .map(|r| cols.iter().map(|u| r.coeff(*u)).collect())
        .collect();
    let ech = echelon(&matrix, elim.len(), false)?;

    let unpivoted: Vec<Unknown> = (0..elim.len())
        .filter(|c| !ech.pivot_of_row.contains(&Some(*c)))
        .map(|c| elim[c])
        .collect();

    let found = ech
        .free_rows()
        .find(|&i| ech.rows[i].iter().any(|e| !e.is_zero()));
    let Some(row) = found else {
        let named = if unpivoted.is_empty() {
            "no relation survives".to_string()
        } else {
            unpivoted.iter().map(|u| u.to_string()).collect::<Vec<_>>().join(", ")
        };
        return Err(ElimError::NotClosed(named));
    };
    if let Some(c) = (0..elim.len()).find(|c| !ech.rows[row][*c].is_zero()) {
        return Err(ElimError::NotClosed(elim[c].to_string()));
    }

    let raw = Relation::from_terms(
        Provenance::Combined,
        cols.iter()
            .zip(&ech.rows[row])
            .filter(|(u, _)| u.is_target())
            .map(|(u, c)| (*u, c.clone())),
    );
    let (relation, normalizer) = normalize(&raw);
    Ok(Elimination {
        base_im,
        base_re,
        relation,
        certificate: Certificate {
            relations: rels,
            multipliers: ech.transform[row].clone(),
        },
        normalizer,
    })
}

/// Scale so the highest-order coefficient is `(1/2)^order`; returns the
/// relation and the factor it was multiplied by.
pub fn normalize(r: &Relation) -> (Relation, RationalFn) {
    let order = r.order();
    let top = r.coeff(Unknown::rho(order));
    if top.is_zero() {
        return (r.clone(), RationalFn::one());
    }
    let target = RationalFn::constant(GaussRat::from_ratio(1, 1 << order));
    let factor = &target * &top.inv().expect("nonzero");
    let mut out = r.scale(&factor);
    out.provenance = Provenance::Combined;
    (out, factor)
}

/// Leading behavior of a polynomial as alpha -> infinity at a fixed x:
/// the set of monomials with the largest exponential rate, then the largest
/// power of alpha. Returns (rate, alpha power, leading (p, E) polynomial).
fn dominant(f: &Poly, spec: &SystemSpec, x: f64) -> (f64, u16, Poly) {
    const TIE: f64 = 1e-9;
    let rate_of = |m: &crate::expr::Monomial| -> f64 {
        spec.terms
            .iter()
            .map(|t| m.exp(t.generator) as f64 * t.rate_at(x))
            .sum()
    };
    let mut best: Option<(f64, u16)> = None;
    for (m, _) in f.terms() {
        let key = (rate_of(m), m.exp(Var::Alpha));
        best = Some(match best {
            None => key,
            Some(b) if key.0 > b.0 + TIE || ((key.0 - b.0).abs() <= TIE && key.1 > b.1) => key,
            Some(b) => b,
        });
    }
    let (rate, apow) = best.unwrap_or((f64::NEG_INFINITY, 0));
    let lead = Poly::from_terms(
        f.terms()
            .filter(|(m, _)| (rate_of(m) - rate).abs() <= TIE && m.exp(Var::Alpha) == apow)
            .map(|(m, c)| {
                let mut e = m.0;
                e[Var::Alpha.index()] = 0;
                for t in &spec.terms {
                    e[t.generator.index()] = 0;
                }
                (crate::expr::Monomial(e), c.clone())
            }),
    );
    (rate, apow, lead)
}

/// Probe points inside the region, one per interval between crossings of
/// the exponential rates that occur in `f`.
fn probe_points(fs: &[&Poly], spec: &SystemSpec) -> Vec<f64> {
    let mut lines: BTreeSet<(i64, i64)> = BTreeSet::new();
    for f in fs {
        for (m, _) in f.terms() {
            // rate(x) = slope*x + intercept, integer coefficients
            let (mut a, mut b) = (0i64, 0i64);
            for t in &spec.terms {
                let e = m.exp(t.generator) as i64;
                a += 2 * t.sign as i64 * e;
                b -= 2 * t.sign as i64 * t.offset as i64 * e;
            }
            lines.insert((a, b));
        }
    }
    let lines: Vec<_> = lines.into_iter().collect();
    let mut cuts: Vec<f64> = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a1, b1) = lines[i];
            let (a2, b2) = lines[j];
            if a1 != a2 {
                let x = (b2 - b1) as f64 / (a1 - a2) as f64;
                if spec.region.contains(x) {
                    cuts.push(x);
                }
            }
        }
    }
    let lo = spec.region.lo;
    let hi = spec.region.hi;
    let mut pts: Vec<f64> = cuts.clone();
    if let Some(l) = lo {
        pts.push(l);
    }
    if let Some(h) = hi {
        pts.push(h);
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let mut probes = Vec::new();
    match (lo, pts.first()) {
        (None, Some(&f)) => probes.push(f - 1.0),
        (None, None) => probes.push(0.0),
        _ => {}
    }
    for w in pts.windows(2) {
        probes.push(0.5 * (w[0] + w[1]));
    }
    if hi.is_none() {
        if let Some(&l) = pts.last() {
            probes.push(l + 1.0);
        }
    }
    probes.retain(|x| spec.region.contains(*x));
    probes
}

fn limit_coeff(c: &RationalFn, spec: &SystemSpec, u: Unknown) -> Result<RationalFn, ElimError> {
    let probes = probe_points(&[c.num(), c.den()], spec);
    let mut value: Option<RationalFn> = None;
    for x in probes {
        let (rn, an, ln) = dominant(c.num(), spec, x);
        let (rd, ad, ld) = dominant(c.den(), spec, x);
        let v = if rn < rd - 1e-9 || ((rn - rd).abs() <= 1e-9 && an < ad) {
            RationalFn::zero()
        } else if (rn - rd).abs() <= 1e-9 && an == ad {
            RationalFn::new(ln, ld)?
        } else {
            return Err(ElimError::LimitDivergent(format!("({c})*{u}")));
        };
        match &value {
            None => value = Some(v),
            Some(prev) if *prev == v => {}
            Some(_) => {
                return Err(ElimError::LimitNonUniform(format!("({c})*{u}")));
            }
        }
    }
    Ok(value.unwrap_or_else(RationalFn::zero))
}

/// alpha -> infinity on the region where every generator decays.
///
/// Each coefficient's limit is found by dominant balance: the numerator and
/// denominator terms with the largest exponential rate (then the largest
/// power of alpha) decide whether it vanishes, tends to a ratio of (p, E)
/// polynomials, or diverges. Polynomial coefficients reduce to dropping every
/// generator-bearing monomial.
pub fn take_limit(r: &Relation, spec: &SystemSpec) -> Result<Relation, ElimError> {
    if let Some(u) = r.unknowns().into_iter().find(|u| !u.is_target()) {
        return Err(ElimError::NotClosed(u.to_string()));
    }
    let mut out = Relation::new(Provenance::Limit);
    for (u, c) in r.terms() {
        out.add(*u, &limit_coeff(c, spec, *u)?);
    }
    Ok(out)
}

/// Coefficient of `R[0]`; with the `(1/2)^order` normalization it is
/// comparable across presets.
pub fn zeroth_order(r: &Relation) -> RationalFn {
    r.coeff(Unknown::rho(0))
}

/// Multiply a relation through by the lcm of its denominators and divide by
/// the gcd of the numerators; result has polynomial, primitive coefficients.
pub fn clear_denominators(r: &Relation) -> Relation {
    let mut l = Poly::one();
    for (_, c) in r.terms() {
        let g = gcd::gcd(&l, c.den());
        l = &l * &c.den().div_exact(&g).expect("gcd divides");
    }
    let lr = RationalFn::from_poly(l);
    let scaled = r.scale(&lr);
    let content = gcd::gcd_many(scaled.terms().map(|(_, c)| c.num()));
    let inv = RationalFn::new(Poly::one(), content).expect("nonzero content");
    scaled.scale(&inv)
}
