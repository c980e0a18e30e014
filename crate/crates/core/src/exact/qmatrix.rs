use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use super::{LaurentPoly, Rational};

/// Dense exact rational matrix (row-major).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged integer matrix");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = super::ri(*v);
            }
        }
        m
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = QMatrix::identity(self.rows);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Reduced row echelon form with the pivot column list.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        if !m[(r, j)].is_zero() {
                            let v = &m[(i, j)] - &(&f * &m[(r, j)]);
                            m[(i, j)] = v;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Kernel basis (right null space).
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Solves `self * x = b` when a solution exists (least-norm is not
    /// attempted; any particular solution is returned).
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(i, self.cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Characteristic polynomial det(T*I - M) via reduction to upper Hessenberg
    /// form followed by the Hessenberg determinant recurrence.
    pub fn charpoly(&self) -> LaurentPoly {
        assert!(self.is_square());
        let n = self.rows;
        let mut h = self.clone();
        // Similarity reduction to upper Hessenberg form.
        for k in 0..n.saturating_sub(2) {
            let Some(p) = (k + 1..n).find(|&i| !h[(i, k)].is_zero()) else {
                continue;
            };
            if p != k + 1 {
                h.swap_rows(p, k + 1);
                for i in 0..n {
                    h.data.swap(i * n + p, i * n + k + 1);
                }
            }
            let piv = h[(k + 1, k)].clone();
            for i in k + 2..n {
                if h[(i, k)].is_zero() {
                    continue;
                }
                let f = &h[(i, k)] / &piv;
                for j in 0..n {
                    if !h[(k + 1, j)].is_zero() {
                        let v = &h[(i, j)] - &(&f * &h[(k + 1, j)]);
                        h[(i, j)] = v;
                    }
                }
                for r in 0..n {
                    if !h[(r, i)].is_zero() {
                        let v = &h[(r, k + 1)] + &(&f * &h[(r, i)]);
                        h[(r, k + 1)] = v;
                    }
                }
            }
        }
        // p_0 = 1; p_m = (T - h_mm) p_{m-1} - sum_{i<m} h_{i,m} (prod sub-diag) p_{i-1}
        let t = LaurentPoly::var_pow(1);
        let mut polys: Vec<LaurentPoly> = vec![LaurentPoly::one()];
        for m in 0..n {
            let mut pm = &(&t - &LaurentPoly::constant(h[(m, m)].clone())) * &polys[m];
            let mut prod = Rational::one();
            for i in (0..m).rev() {
                prod *= &h[(i + 1, i)];
                if prod.is_zero() {
                    break;
                }
                let c = &prod * &h[(i, m)];
                if !c.is_zero() {
                    pm = &pm - &polys[i].scale(&c);
                }
            }
            polys.push(pm);
        }
        polys.pop().unwrap()
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ri};

    #[test]
    fn inverse_and_rank() {
        let m = QMatrix::from_ints(&[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, QMatrix::identity(2));
        let s = QMatrix::from_ints(&[vec![1, 2], vec![2, 4]]);
        assert!(s.inverse().is_none());
        assert_eq!(s.rank(), 1);
        assert_eq!(s.kernel(), vec![vec![ri(-2), ri(1)]]);
    }

    #[test]
    fn charpoly_matches_cofactor_expansion() {
        // [[2,1,0],[1,3,1],[0,1,4]]: det(T - M) = T^3 - 9T^2 + 24T - 18
        let m = QMatrix::from_ints(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(m.charpoly(), LaurentPoly::from_coeffs(0, &[-18, 24, -9, 1]));
        let mut n = QMatrix::zeros(3, 3);
        n[(0, 2)] = rat(1, 2);
        n[(2, 0)] = ri(2);
        // T^3 - T
        assert_eq!(n.charpoly(), LaurentPoly::from_coeffs(0, &[0, -1, 0, 1]));
    }

    #[test]
    fn charpoly_needs_pivot_swap() {
        // first sub-diagonal entry is zero, forcing a swap in the reduction
        let m = QMatrix::from_ints(&[
            vec![1, 2, 3, 4],
            vec![0, 1, 0, 2],
            vec![5, 0, 2, 1],
            vec![1, 1, 0, 3],
        ]);
        let p = m.charpoly();
        // Cayley-Hamilton
        let mut acc = QMatrix::zeros(4, 4);
        for (e, c) in p.terms() {
            acc = &acc + &m.pow(e as u32).scale(c);
        }
        assert!(acc.is_zero());
        assert_eq!(p.coeff(3), -m.trace());
    }
}
