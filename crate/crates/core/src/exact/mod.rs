//! Exact arithmetic: rationals, prime fields, Laurent polynomials, polynomial
//! matrices, truncated power series and sparse Gaussian elimination.

mod field;
mod laurent;
mod polymatrix;
mod qmatrix;
mod qnum;
mod roots;
mod sparse;

pub use field::{random_prime_60, Field, PrimeField, Rationals};
pub use laurent::{IntJson, LaurentPoly, RationalJson};
pub use polymatrix::PolyMatrix;
pub use qmatrix::QMatrix;
pub use qnum::{qbinom, qfact, qint};
pub use roots::{approx_small_fraction, derivative, factor_rational_roots, monic, poly_div_rem, poly_gcd, RationalFactorization};
pub use sparse::{
    rank_and_kernel, rank_two_tier, RankCertificate, SparseMatrix, SparseVec, DEFAULT_Q_CONFIRM_NNZ,
};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn ri(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rzero() -> Rational {
    Rational::zero()
}

pub fn rone() -> Rational {
    Rational::one()
}

/// Best-effort conversion to `f64` (used only on the floating side of the
/// monodromy checks).
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => r.to_f64().unwrap_or(f64::NAN),
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Rational::from_integer(n))
    }
}
