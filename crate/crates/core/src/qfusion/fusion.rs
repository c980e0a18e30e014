//! The Verlinde ring at level `h - 2`, its generic Clebsch-Gordan limit, and
//! the Grothendieck-level functor `V_j -> P_j(C)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ri, QMatrix};

/// Multiplicities over `V_0, V_1, ...`; `level` is `None` for the generic
/// (Clebsch-Gordan) ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionElement {
    pub level: Option<usize>,
    pub mult: Vec<u64>,
}

impl FusionElement {
    pub fn zero(level: Option<usize>) -> Self {
        FusionElement {
            level,
            mult: level.map(|l| vec![0; l + 1]).unwrap_or_default(),
        }
    }

    pub fn simple(level: Option<usize>, k: usize) -> Result<Self> {
        let mut e = Self::zero(level);
        e.add_simple(k, 1)?;
        Ok(e)
    }

    fn add_simple(&mut self, k: usize, n: u64) -> Result<()> {
        if let Some(l) = self.level {
            if k > l {
                return Err(Error::Precondition(format!("V_{k} is outside level {l}")));
            }
        }
        if self.mult.len() <= k {
            self.mult.resize(k + 1, 0);
        }
        self.mult[k] += n;
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, &n) in other.mult.iter().enumerate() {
            if n > 0 {
                out.add_simple(k, n).expect("same level");
            }
        }
        out
    }

    /// Extends the simple-object rule bilinearly.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero(self.level);
        for (i, &a) in self.mult.iter().enumerate().filter(|p| *p.1 > 0) {
            for (j, &b) in other.mult.iter().enumerate().filter(|p| *p.1 > 0) {
                let prod = match self.level {
                    Some(l) => verlinde_product(i, j, l)?,
                    None => clebsch_gordan(i, j),
                };
                for (k, &n) in prod.mult.iter().enumerate() {
                    if n > 0 {
                        out.add_simple(k, a * b * n)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Multiplicities with trailing zeros removed.
    pub fn support(&self) -> Vec<u64> {
        let mut v = self.mult.clone();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }
}

/// `V_i (x) V_j = sum_{n=0}^{min(i, j, l - max(i,j))} V_{2n + |i-j|}`.
pub fn verlinde_product(i: usize, j: usize, level: usize) -> Result<FusionElement> {
    if i > level || j > level {
        return Err(Error::Precondition(format!("V_{i} (x) V_{j} outside level {level}")));
    }
    let mut out = FusionElement::zero(Some(level));
    let top = i.min(j).min(level - i.max(j));
    for n in 0..=top {
        out.add_simple(2 * n + i.abs_diff(j), 1)?;
    }
    Ok(out)
}

pub fn clebsch_gordan(i: usize, j: usize) -> FusionElement {
    let mut out = FusionElement::zero(None);
    for n in 0..=i.min(j) {
        out.add_simple(2 * n + i.abs_diff(j), 1).expect("generic");
    }
    out
}

/// `P_0 = I`, `P_1 = M`, `P_{j+1} = M P_j - P_{j-1}`.
pub fn tchebysheff(j: usize, m: &QMatrix) -> QMatrix {
    let n = m.rows;
    let (mut prev, mut cur) = (QMatrix::identity(n), m.clone());
    if j == 0 {
        return prev;
    }
    for _ in 1..j {
        let next = &(m * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn fusion_functor_image(x: &FusionElement, c: &QMatrix) -> QMatrix {
    let mut acc = QMatrix::zeros(c.rows, c.rows);
    for (k, &n) in x.mult.iter().enumerate() {
        if n > 0 {
            acc = &acc + &tchebysheff(k, c).scale(&ri(n as i64));
        }
    }
    acc
}

/// Degree-`n` component of the quantum Heisenberg algebra in the fusion
/// category at Coxeter number `h`: `sum_{j <= s/2} V_{s-2j}` with
/// `s = min(n, 2h-4-n)`.
pub fn a_component(n: usize, h: usize) -> FusionElement {
    let level = h - 2;
    let mut out = FusionElement::zero(Some(level));
    if n > 2 * h - 4 {
        return out;
    }
    let s = n.min(2 * h - 4 - n);
    for j in 0..=s / 2 {
        out.add_simple(s - 2 * j, 1).expect("s <= h - 2");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verlinde_examples() {
        assert_eq!(verlinde_product(1, 1, 2).unwrap().mult, vec![1, 0, 1]);
        assert_eq!(verlinde_product(1, 1, 1).unwrap().mult, vec![1, 0]);
        assert_eq!(clebsch_gordan(2, 3).support(), vec![0, 1, 0, 1, 0, 1]);
        assert!(verlinde_product(3, 0, 2).is_err());
    }

    #[test]
    fn chebyshev_recurrence() {
        let c = QMatrix::from_ints(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(tchebysheff(2, &c), QMatrix::zeros(2, 2));
        let m = QMatrix::from_ints(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(tchebysheff(2, &m), &(&m * &m) - &QMatrix::identity(2));
    }

    #[test]
    fn a_components_for_small_h() {
        let tuples: Vec<Vec<u64>> = (0..=4).map(|n| a_component(n, 4).support()).collect();
        assert_eq!(tuples, vec![vec![1], vec![0, 1], vec![1, 0, 1], vec![0, 1], vec![1]]);
        let h3: Vec<Vec<u64>> = (0..=2).map(|n| a_component(n, 3).support()).collect();
        assert_eq!(h3, vec![vec![1], vec![0, 1], vec![1]]);
        assert!(a_component(5, 4).support().is_empty());
    }
}
