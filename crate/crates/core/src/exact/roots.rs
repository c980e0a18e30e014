//! Rational roots of univariate polynomials over Q.
//!
//! Candidates come from the complex eigenvalues of the companion matrix of the
//! square-free part, are rationalized by continued fractions, and are accepted
//! only after exact evaluation; multiplicities come from exact division.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{rational_to_f64, LaurentPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalFactorization {
    /// Distinct rational roots in increasing order, with multiplicities.
    pub roots: Vec<(String, usize)>,
    #[serde(skip)]
    pub root_values: Vec<(Rational, usize)>,
    /// Monic cofactor without rational roots (1 when the polynomial splits).
    #[serde(skip)]
    pub remainder: LaurentPoly,
    pub splits: bool,
}

pub fn derivative(p: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (e, c) in p.terms() {
        if e != 0 {
            out.add_term(e - 1, c * Rational::from_integer(BigInt::from(e)));
        }
    }
    out
}

pub fn monic(p: &LaurentPoly) -> LaurentPoly {
    match p.leading_coeff() {
        Some(c) => p.scale(&c.recip()),
        None => p.clone(),
    }
}

/// Division with remainder of ordinary polynomials (nonnegative exponents).
/// `LaurentPoly::div_rem` treats `T` as a unit, which is wrong for gcds.
pub fn poly_div_rem(a: &LaurentPoly, b: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let db = b.degree().expect("nonzero divisor");
    let lc = b.leading_coeff().expect("nonzero divisor").clone();
    let mut rem = a.clone();
    let mut q = LaurentPoly::zero();
    while let Some(rd) = rem.degree() {
        if rd < db {
            break;
        }
        let t = LaurentPoly::monomial(rem.leading_coeff().unwrap() / &lc, rd - db);
        rem = &rem - &(&t * b);
        q = &q + &t;
    }
    (q, rem)
}

fn poly_div_exact(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let (q, r) = poly_div_rem(a, b);
    r.is_zero().then_some(q)
}

pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let (mut a, mut b) = (monic(a), monic(b));
    while !b.is_zero() {
        let (_, r) = poly_div_rem(&a, &b);
        a = b;
        b = monic(&r);
    }
    monic(&a)
}

/// Best rational approximations of `x` with denominators up to `max_den`.
fn convergents(x: f64, max_den: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut y = x;
    for _ in 0..40 {
        if !y.is_finite() || y.abs() > 1e15 {
            break;
        }
        let a = y.floor();
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        out.push(Rational::new(BigInt::from(h2), BigInt::from(k2)));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a;
        if frac.abs() < 1e-300 {
            break;
        }
        y = 1.0 / frac;
    }
    out
}

fn numeric_roots(p: &LaurentPoly) -> Vec<(f64, f64)> {
    let d = p.degree().unwrap_or(0);
    if d <= 0 {
        return vec![];
    }
    let d = d as usize;
    let lc = p.leading_coeff().expect("nonzero");
    let mut comp = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        comp[(i, d - 1)] = -rational_to_f64(&(p.coeff(i as i64) / lc));
    }
    comp.complex_eigenvalues().iter().map(|z| (z.re, z.im)).collect()
}

/// Factors out every rational root of `p` (a polynomial with nonnegative
/// exponents).
pub fn factor_rational_roots(p: &LaurentPoly) -> RationalFactorization {
    assert!(p.low_degree().unwrap_or(0) >= 0, "polynomial expected");
    let mut rest = monic(p);
    let mut found: Vec<(Rational, usize)> = Vec::new();
    let t = LaurentPoly::var_pow(1);
    let take_root = |rest: &mut LaurentPoly, r: &Rational| -> usize {
        let lin = &t - &LaurentPoly::constant(r.clone());
        let mut k = 0;
        while let Some(q) = poly_div_exact(rest, &lin) {
            *rest = q;
            k += 1;
        }
        k
    };
    // T is a unit among Laurent polynomials, so the zero root is read off the
    // low degree instead of by division
    if let Some(l) = rest.low_degree().filter(|&l| l > 0) {
        rest = rest.shift(-l);
        found.push((Rational::zero(), l as usize));
    }
    for _attempt in 0..3 {
        if rest.degree().unwrap_or(0) <= 0 {
            break;
        }
        let sqfree = {
            let g = poly_gcd(&rest, &derivative(&rest));
            poly_div_exact(&rest, &g).expect("gcd divides")
        };
        let mut progress = false;
        for (re, im) in numeric_roots(&sqfree) {
            if im.abs() > 1e-6 * (1.0 + re.abs()) {
                continue;
            }
            for cand in convergents(re, 1 << 40).into_iter().rev() {
                if (rational_to_f64(&cand) - re).abs() > 1e-6 * (1.0 + re.abs()) {
                    continue;
                }
                if !cand.is_zero() && sqfree.eval(&cand).is_zero() {
                    let k = take_root(&mut rest, &cand);
                    if k > 0 {
                        found.push((cand, k));
                        progress = true;
                    }
                    break;
                }
            }
        }
        if !progress {
            break;
        }
    }
    found.sort();
    let splits = rest.degree().unwrap_or(0) == 0;
    RationalFactorization {
        roots: found.iter().map(|(r, k)| (r.to_string(), *k)).collect(),
        root_values: found,
        remainder: monic(&rest),
        splits,
    }
}

/// Rational from a decimal-ish f64 when it is (numerically) a small fraction;
/// used only for display.
pub fn approx_small_fraction(x: f64) -> Option<(i64, i64)> {
    convergents(x, 10_000).into_iter().rev().find_map(|r| {
        let v = rational_to_f64(&r);
        ((v - x).abs() < 1e-9).then(|| (r.numer().to_i64().unwrap_or(0), r.denom().abs().to_i64().unwrap_or(1)))
    })
}
