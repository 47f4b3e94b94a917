//! Multivariate gcd over the Gaussian rationals.
//!
//! Recursive primitive PRS: strip the monomial content, split off the content
//! with respect to a main variable (a gcd of polynomials in one fewer
//! variable), then run pseudo-remainder steps on the primitive parts.

use super::poly::{Monomial, Poly, Var};

/// Monic gcd of `a` and `b`. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }

    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mono = ma.gcd_with(&mb);
    let a = if ma.is_one() { a.clone() } else { a.div_monomial(&ma) };
    let b = if mb.is_one() { b.clone() } else { b.div_monomial(&mb) };

    let core = gcd_no_monomial(&a, &b);
    let out = if mono.is_one() { core } else { core.mul_monomial(&mono) };
    out.monic()
}

/// gcd of a list; monic.
pub fn gcd_many<'a, I: IntoIterator<Item = &'a Poly>>(it: I) -> Poly {
    let mut g = Poly::zero();
    for p in it {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

fn gcd_no_monomial(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.len() == 1 || b.len() == 1 {
        // a single term with trivial monomial content is a constant; handled above
        return Poly::one();
    }
    // cheap divisibility shortcuts
    if a.len() >= b.len() {
        if a.div_exact(b).is_some() {
            return b.monic();
        }
    } else if b.div_exact(a).is_some() {
        return a.monic();
    }

    let v = match main_var(a, b) {
        Some(v) => v,
        None => return Poly::one(),
    };

    let in_a = a.contains(v);
    let in_b = b.contains(v);
    if !in_a {
        return gcd(a, &content_in(b, v));
    }
    if !in_b {
        return gcd(&content_in(a, v), b);
    }

    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let gc = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let gp = prs(pa, pb, v);
    (&gc * &gp).monic()
}

/// Variable to recurse on: present in both when possible, lowest combined degree.
fn main_var(a: &Poly, b: &Poly) -> Option<Var> {
    let mut best: Option<(u32, Var)> = None;
    for v in Var::ALL {
        let da = a.degree_in(v) as u32;
        let db = b.degree_in(v) as u32;
        if da > 0 && db > 0 {
            let score = da + db;
            if best.map(|(s, _)| score < s).unwrap_or(true) {
                best = Some((score, v));
            }
        }
    }
    if let Some((_, v)) = best {
        return Some(v);
    }
    Var::ALL
        .iter()
        .copied()
        .find(|v| a.contains(*v) || b.contains(*v))
}

/// Content of `f` viewed as a polynomial in `v` with coefficients in the other variables.
pub fn content_in(f: &Poly, v: Var) -> Poly {
    let mut coeffs: Vec<Poly> = f.coeffs_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    // small coefficients first: gcd collapses faster
    coeffs.sort_by_key(|c| c.len());
    gcd_many(coeffs.iter())
}

fn primitive_in(f: &Poly, v: Var) -> Poly {
    let c = content_in(f, v);
    if c.is_one() {
        f.monic()
    } else {
        f.div_exact(&c).expect("content divides").monic()
    }
}

fn lead_in(f: &Poly, v: Var) -> (u16, Poly) {
    let cs = f.coeffs_in(v);
    let d = cs.len() - 1;
    (d as u16, cs.into_iter().nth(d).unwrap())
}

/// Sparse pseudo-remainder of `a` by `b` in `v`.
pub fn prem(a: &Poly, b: &Poly, v: Var) -> Poly {
    let (db, lb) = lead_in(b, v);
    let mut r = a.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let (dr, lr) = lead_in(&r, v);
        if dr < db {
            return r;
        }
        let shift = Monomial::var_pow(v, dr - db);
        r = &(&lb * &r) - &(&lr * &b.mul_monomial(&shift));
    }
}

fn prs(mut a: Poly, mut b: Poly, v: Var) -> Poly {
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = prem(&a, &b, v);
        if r.is_zero() {
            return primitive_in(&b, v);
        }
        if r.degree_in(v) == 0 {
            return Poly::one();
        }
        a = b;
        b = primitive_in(&r, v);
    }
}
