use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use super::{LaurentPoly, QMatrix, Rational};
use crate::error::{Error, Result};

/// Square matrix of Laurent polynomials in one formal variable (usually `t`).
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<Vec<LaurentPoly>>,
}

impl PolyMatrix {
    pub fn zeros(n: usize) -> Self {
        PolyMatrix {
            n,
            entries: vec![vec![LaurentPoly::zero(); n]; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i][i] = LaurentPoly::one();
        }
        m
    }

    /// `c * t^exp` for a constant matrix `c`.
    pub fn from_constant(c: &QMatrix, exp: i64) -> Self {
        assert!(c.is_square());
        let n = c.rows;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.entries[i][j] = LaurentPoly::monomial(c[(i, j)].clone(), exp);
            }
        }
        m
    }

    /// Scalar polynomial times the identity.
    pub fn scalar(n: usize, p: &LaurentPoly) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i][i] = p.clone();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        self.entries[i][j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|p| p.is_zero())
    }

    /// Constant matrix of coefficients of t^k.
    pub fn coeff_matrix(&self, k: i64) -> QMatrix {
        let mut c = QMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                c[(i, j)] = self.entries[i][j].coeff(k);
            }
        }
        c
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.entries.iter().flatten().filter_map(|p| p.degree()).max()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.entries.iter().flatten().filter_map(|p| p.low_degree()).min()
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        PolyMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(&f).collect())
                .collect(),
        }
    }

    pub fn truncate(&self, max: i64) -> Self {
        self.map(|p| p.truncate(max))
    }

    pub fn shift(&self, k: i64) -> Self {
        self.map(|p| p.shift(k))
    }

    pub fn invert_var(&self) -> Self {
        self.map(|p| p.invert_var())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn mul_scalar_poly(&self, s: &LaurentPoly) -> Self {
        self.map(|p| p * s)
    }

    /// Entrywise exact division by a scalar polynomial.
    pub fn div_exact_scalar(&self, d: &LaurentPoly) -> Option<Self> {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.entries[i][j] = self.entries[i][j].div_exact(d)?;
            }
        }
        Some(out)
    }

    /// Sum of all entries (the scalar Hilbert series of a matrix series).
    pub fn entry_sum(&self) -> LaurentPoly {
        self.entries
            .iter()
            .flatten()
            .fold(LaurentPoly::zero(), |acc, p| &acc + p)
    }

    /// Total of all coefficients of all entries (value at t = 1).
    pub fn total(&self) -> Rational {
        self.entry_sum().eval(&Rational::from_integer(1.into()))
    }

    /// Power-series inverse up to and including `t^max_degree`. The matrix
    /// must have no negative powers and an invertible constant term.
    pub fn series_inverse_truncated(&self, max_degree: i64) -> Result<PolyMatrix> {
        if let Some(lo) = self.min_degree() {
            if lo < 0 {
                return Err(Error::Precondition(
                    "series inverse needs a matrix without negative powers".into(),
                ));
            }
        }
        let m0 = self.coeff_matrix(0);
        let m0_inv = m0
            .inverse()
            .ok_or_else(|| Error::Singular("constant term of matrix series is singular".into()))?;
        let top = self.max_degree().unwrap_or(0);
        let coeffs: Vec<QMatrix> = (0..=top).map(|k| self.coeff_matrix(k)).collect();
        let mut xs: Vec<QMatrix> = vec![m0_inv.clone()];
        for k in 1..=max_degree {
            let mut acc = QMatrix::zeros(self.n, self.n);
            for j in 1..=k.min(top) {
                acc = &acc + &(&coeffs[j as usize] * &xs[(k - j) as usize]);
            }
            xs.push((&m0_inv * &acc).scale(&Rational::from_integer((-1).into())));
        }
        let mut out = PolyMatrix::zeros(self.n);
        for (k, x) in xs.iter().enumerate() {
            out = &out + &PolyMatrix::from_constant(x, k as i64);
        }
        Ok(out)
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|p| p.display_with("t")).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<'a> Mul<&'a PolyMatrix> for &'a PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, rhs.n);
        let mut out = PolyMatrix::zeros(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..self.n {
                    if rhs.entries[k][j].is_zero() {
                        continue;
                    }
                    let prod = &self.entries[i][k] * &rhs.entries[k][j];
                    out.entries[i][j] = &out.entries[i][j] + &prod;
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a PolyMatrix> for &'a PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.entries[i][j] = &self.entries[i][j] + &rhs.entries[i][j];
            }
        }
        out
    }
}

impl<'a> Sub<&'a PolyMatrix> for &'a PolyMatrix {
    type Output = PolyMatrix;
    fn sub(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.entries[i][j] = &self.entries[i][j] - &rhs.entries[i][j];
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_minus_ct_plus_t2(c: &QMatrix) -> PolyMatrix {
        let n = c.rows;
        let id = PolyMatrix::identity(n);
        let ct = PolyMatrix::from_constant(c, 1);
        let t2 = PolyMatrix::scalar(n, &LaurentPoly::var_pow(2));
        &(&id - &ct) + &t2
    }

    #[test]
    fn geometric_series() {
        let m = PolyMatrix::scalar(1, &LaurentPoly::from_coeffs(0, &[1, -1]));
        let inv = m.series_inverse_truncated(3).unwrap();
        assert_eq!(*inv.get(0, 0), LaurentPoly::from_coeffs(0, &[1, 1, 1, 1]));
    }

    #[test]
    fn identity_inverse() {
        let id = PolyMatrix::identity(3);
        assert_eq!(id.series_inverse_truncated(5).unwrap(), id);
    }

    #[test]
    fn a2_inverse_second_order() {
        // (1 - Ct + t^2)^{-1} = I + Ct + (C^2 - I)t^2 + O(t^3); check by
        // multiplying back.
        let c = QMatrix::from_ints(&[vec![0, 1], vec![1, 0]]);
        let m = one_minus_ct_plus_t2(&c);
        let inv = m.series_inverse_truncated(2).unwrap();
        let expected = &(&PolyMatrix::identity(2) + &PolyMatrix::from_constant(&c, 1))
            + &PolyMatrix::from_constant(&(&(&c * &c) - &QMatrix::identity(2)), 2);
        assert_eq!(inv, expected);
        let back = (&inv * &m).truncate(2);
        assert_eq!(back, PolyMatrix::identity(2));
    }

    #[test]
    fn singular_constant_term_is_rejected() {
        let m = PolyMatrix::from_constant(&QMatrix::zeros(2, 2), 0);
        assert!(matches!(m.series_inverse_truncated(2), Err(Error::Singular(_))));
    }
}
