//! Dense complex matrix helpers: exponential, logarithm, square root, norms.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Largest singular value.
pub fn op_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}

/// Maximum absolute column sum.
pub fn norm1(m: &CMat) -> f64 {
    (0..m.ncols()).map(|j| m.column(j).iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// Scaling and squaring with a Taylor series.
pub fn expm(a: &CMat) -> CMat {
    let n = a.nrows();
    let nrm = norm1(a);
    let s = if nrm > 0.5 { (nrm / 0.5).log2().ceil() as i32 } else { 0 };
    let scaled = a / c(2f64.powi(s), 0.0);
    let mut sum = CMat::identity(n, n);
    let mut term = CMat::identity(n, n);
    for k in 1..40 {
        term = &term * &scaled / c(k as f64, 0.0);
        sum += &term;
        if norm1(&term) <= 1e-18 * norm1(&sum) {
            break;
        }
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

/// Principal square root by the Denman-Beavers iteration.
pub fn sqrtm(a: &CMat) -> Result<CMat> {
    let n = a.nrows();
    let mut y = a.clone();
    let mut z = CMat::identity(n, n);
    for _ in 0..100 {
        let yi = y.clone().try_inverse().ok_or_else(|| singular("sqrtm"))?;
        let zi = z.clone().try_inverse().ok_or_else(|| singular("sqrtm"))?;
        let ny = (&y + &zi) * c(0.5, 0.0);
        let nz = (&z + &yi) * c(0.5, 0.0);
        let delta = norm1(&(&ny - &y));
        y = ny;
        z = nz;
        if delta <= 1e-15 * norm1(&y) {
            return Ok(y);
        }
    }
    Err(Error::Numerical("Denman-Beavers square root".into()))
}

fn singular(what: &str) -> Error {
    Error::Numerical(format!("{what}: singular iterate"))
}

/// `log(I + e)` by the Mercator series; requires `||e|| < 1`.
fn log_series(e: &CMat, max_terms: usize) -> CMat {
    let n = e.nrows();
    let mut sum = CMat::zeros(n, n);
    let mut pow = CMat::identity(n, n);
    for k in 1..=max_terms {
        pow = &pow * e;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        sum += &pow * c(sign / k as f64, 0.0);
        if norm1(&pow) <= 1e-18 * (1.0 + norm1(&sum)) {
            break;
        }
    }
    sum
}

/// `log x` for `x = I + e` with `e^terms = 0` exactly in the underlying
/// algebra; the series is cut there so that rounding in higher powers never
/// enters.
pub fn log_unipotent(x: &CMat, terms: usize) -> CMat {
    let n = x.nrows();
    let e = x - CMat::identity(n, n);
    log_series(&e, terms.saturating_sub(1).max(1))
}

/// Principal logarithm by inverse scaling and squaring.
pub fn logm(x: &CMat) -> Result<CMat> {
    let n = x.nrows();
    let id = CMat::identity(n, n);
    for ev in eigenvalues(x) {
        if ev.im.abs() < 1e-12 && ev.re <= 0.0 {
            return Err(Error::Numerical(format!("eigenvalue {ev} on the branch cut")));
        }
    }
    let mut y = x.clone();
    let mut s = 0;
    while norm1(&(&y - &id)) > 0.25 {
        if s >= 60 {
            return Err(Error::Numerical("logm square roots".into()));
        }
        y = sqrtm(&y)?;
        s += 1;
    }
    Ok(log_series(&(&y - &id), 200) * c(2f64.powi(s), 0.0))
}

trait ComplexEigen {
    fn eigenvalues_complex(self) -> Vec<Complex64>;
}

impl ComplexEigen for CMat {
    fn eigenvalues_complex(self) -> Vec<Complex64> {
        if self.is_empty() {
            return Vec::new();
        }
        self.schur().eigenvalues().map(|v| v.iter().copied().collect()).unwrap_or_default()
    }
}

pub fn eigenvalues(m: &CMat) -> Vec<Complex64> {
    m.clone().eigenvalues_complex()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(v: &[Complex64]) -> CMat {
        CMat::from_diagonal(&nalgebra::DVector::from_column_slice(v))
    }

    #[test]
    fn exp_of_diagonal_and_nilpotent() {
        let a = diag(&[c(0.0, std::f64::consts::PI), c(1.0, 0.0)]);
        let e = expm(&a);
        assert!((e[(0, 0)] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((e[(1, 1)] - c(std::f64::consts::E, 0.0)).norm() < 1e-14);
        let mut n = CMat::zeros(3, 3);
        n[(0, 1)] = c(2.0, 0.0);
        n[(1, 2)] = c(3.0, 0.0);
        let e = expm(&n);
        assert!((e[(0, 2)] - c(3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn log_inverts_exp() {
        let mut a = CMat::zeros(3, 3);
        a[(0, 0)] = c(0.1, 0.3);
        a[(0, 1)] = c(1.5, 0.0);
        a[(1, 1)] = c(-0.2, 0.1);
        a[(2, 0)] = c(0.4, -0.7);
        a[(2, 2)] = c(0.05, 0.0);
        let back = logm(&expm(&a)).unwrap();
        assert!(norm1(&(back - &a)) < 1e-11);
        let r = sqrtm(&expm(&a)).unwrap();
        assert!(norm1(&(&r * &r - expm(&a))) < 1e-12);
    }

    #[test]
    fn unipotent_fast_path() {
        let mut n = CMat::zeros(3, 3);
        n[(0, 1)] = c(0.0, 5.0);
        n[(1, 2)] = c(7.0, 0.0);
        let back = log_unipotent(&expm(&n), 3);
        assert!(norm1(&(back - &n)) < 1e-12);
        assert!(norm1(&(logm(&expm(&n)).unwrap() - &n)) < 1e-9);
    }

    #[test]
    fn branch_cut_is_reported() {
        assert!(logm(&diag(&[c(-1.0, 0.0), c(1.0, 0.0)])).is_err());
    }
}
