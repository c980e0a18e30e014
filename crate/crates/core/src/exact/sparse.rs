use std::collections::{BTreeMap, HashSet};

use super::field::{random_prime_60, Field, PrimeField, Rationals};
use super::Rational;

/// Sparse vector: `(index, value)` pairs sorted by index, no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseVec<E> {
    pub entries: Vec<(usize, E)>,
}

impl<E: Clone> SparseVec<E> {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn from_sorted(entries: Vec<(usize, E)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec { entries }
    }

    pub fn from_map<F: Field<Elem = E>>(f: &F, m: BTreeMap<usize, E>) -> Self {
        SparseVec {
            entries: m.into_iter().filter(|(_, v)| !f.is_zero(v)).collect(),
        }
    }

    pub fn unit<F: Field<Elem = E>>(f: &F, i: usize) -> Self {
        SparseVec {
            entries: vec![(i, f.one())],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Option<&E> {
        self.entries
            .binary_search_by_key(&i, |(k, _)| *k)
            .ok()
            .map(|p| &self.entries[p].1)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// `self + c * other`.
    pub fn axpy<F: Field<Elem = E>>(&self, f: &F, c: &E, other: &SparseVec<E>) -> SparseVec<E> {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.entries;
        let b = &other.entries;
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let v = f.mul(c, &b[j].1);
                if !f.is_zero(&v) {
                    out.push((b[j].0, v));
                }
                j += 1;
            } else {
                let v = f.add(&a[i].1, &f.mul(c, &b[j].1));
                if !f.is_zero(&v) {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> SparseVec<E> {
        if f.is_zero(c) {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, f.mul(c, v))).collect(),
        }
    }
}

impl<E: Clone> Default for SparseVec<E> {
    fn default() -> Self {
        Self::new()
    }
}

/// Row-major sparse matrix.
#[derive(Clone, Debug)]
pub struct SparseMatrix<E> {
    pub ncols: usize,
    pub rows: Vec<SparseVec<E>>,
}

impl<E: Clone> SparseMatrix<E> {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: SparseVec<E>) {
        debug_assert!(row.max_index().map_or(true, |m| m < self.ncols));
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.nnz()).sum()
    }
}

impl SparseMatrix<Rational> {
    pub fn from_dense_ints(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = SparseMatrix::new(ncols);
        for r in rows {
            m.push_row(SparseVec {
                entries: r
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(i, v)| (i, super::ri(*v)))
                    .collect(),
            });
        }
        m
    }

    /// Reduction mod p; `None` if some denominator vanishes mod p.
    pub fn reduce_mod(&self, f: &PrimeField) -> Option<SparseMatrix<u64>> {
        let mut out = SparseMatrix::new(self.ncols);
        for r in &self.rows {
            let mut entries = Vec::with_capacity(r.nnz());
            for (i, v) in &r.entries {
                let x = f.reduce(v)?;
                if x != 0 {
                    entries.push((*i, x));
                }
            }
            out.push_row(SparseVec { entries });
        }
        Some(out)
    }
}

/// Forward elimination with a Markowitz-style pivot choice: the sparsest
/// remaining row is taken, and within it the column of smallest current
/// column count. Returns the pivot rows in elimination order.
fn markowitz_eliminate<F: Field>(f: &F, m: &SparseMatrix<F::Elem>) -> Vec<(usize, SparseVec<F::Elem>)> {
    let mut rows: Vec<Option<SparseVec<F::Elem>>> = m
        .rows
        .iter()
        .map(|r| if r.is_empty() { None } else { Some(r.clone()) })
        .collect();
    let mut col_rows: Vec<HashSet<usize>> = vec![HashSet::new(); m.ncols];
    for (ri, r) in rows.iter().enumerate() {
        if let Some(r) = r {
            for (c, _) in &r.entries {
                col_rows[*c].insert(ri);
            }
        }
    }
    // rows bucketed by nnz for cheap "sparsest row" queries
    let mut by_len: BTreeMap<usize, HashSet<usize>> = BTreeMap::new();
    for (ri, r) in rows.iter().enumerate() {
        if let Some(r) = r {
            by_len.entry(r.nnz()).or_default().insert(ri);
        }
    }
    let mut pivots = Vec::new();
    loop {
        let Some((&len, bucket)) = by_len.iter().next() else { break };
        let pr = *bucket.iter().min().unwrap();
        remove_from_bucket(&mut by_len, len, pr);
        let prow = rows[pr].take().unwrap();
        for (c, _) in &prow.entries {
            col_rows[*c].remove(&pr);
        }
        let (pc, pval) = prow
            .entries
            .iter()
            .min_by_key(|(c, _)| (col_rows[*c].len(), *c))
            .map(|(c, v)| (*c, v.clone()))
            .unwrap();
        let inv = f.inv(&pval);
        let prow = prow.scale(f, &inv);
        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for ti in targets {
            let old = rows[ti].take().unwrap();
            remove_from_bucket(&mut by_len, old.nnz(), ti);
            for (c, _) in &old.entries {
                col_rows[*c].remove(&ti);
            }
            let coef = f.neg(old.get(pc).unwrap());
            let new = old.axpy(f, &coef, &prow);
            if !new.is_empty() {
                for (c, _) in &new.entries {
                    col_rows[*c].insert(ti);
                }
                by_len.entry(new.nnz()).or_default().insert(ti);
                rows[ti] = Some(new);
            }
        }
        pivots.push((pc, prow));
    }
    pivots
}

fn remove_from_bucket(by_len: &mut BTreeMap<usize, HashSet<usize>>, len: usize, ri: usize) {
    if let Some(b) = by_len.get_mut(&len) {
        b.remove(&ri);
        if b.is_empty() {
            by_len.remove(&len);
        }
    }
}

/// Exact rank and a kernel basis (right null space) of `m`.
pub fn rank_and_kernel<F: Field>(f: &F, m: &SparseMatrix<F::Elem>) -> (usize, Vec<SparseVec<F::Elem>>) {
    let pivots = markowitz_eliminate(f, m);
    let rank = pivots.len();
    let pivot_cols: HashSet<usize> = pivots.iter().map(|(c, _)| *c).collect();
    let mut kernel = Vec::new();
    for free in (0..m.ncols).filter(|c| !pivot_cols.contains(c)) {
        // x_free = 1, other free variables 0; back-substitute pivots in
        // reverse elimination order (later pivot rows never contain earlier
        // pivot columns).
        let mut x: BTreeMap<usize, F::Elem> = BTreeMap::new();
        x.insert(free, f.one());
        for (pc, row) in pivots.iter().rev() {
            let mut acc = f.zero();
            for (c, v) in &row.entries {
                if *c == *pc {
                    continue;
                }
                if let Some(xv) = x.get(c) {
                    acc = f.add(&acc, &f.mul(v, xv));
                }
            }
            if !f.is_zero(&acc) {
                x.insert(*pc, f.neg(&acc));
            }
        }
        kernel.push(SparseVec::from_map(f, x));
    }
    (rank, kernel)
}

/// Default size threshold under which prime-field ranks are re-confirmed
/// over the rationals.
pub const DEFAULT_Q_CONFIRM_NNZ: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub rank: usize,
    pub prime: u64,
    pub rank_mod_p: usize,
    /// `Some` when the matrix was small enough to be re-done over Q.
    pub rank_over_q: Option<usize>,
}

impl RankCertificate {
    pub fn consistent(&self) -> bool {
        self.rank_over_q.map_or(true, |q| q == self.rank_mod_p)
    }
}

/// Rank over a random 60-bit prime field, confirmed over Q when the matrix has
/// at most `confirm_nnz` nonzeros. The rational answer is authoritative when
/// present; otherwise the modular rank (a lower bound that is exact with
/// overwhelming probability) is returned.
pub fn rank_two_tier(m: &SparseMatrix<Rational>, seed: u64, confirm_nnz: usize) -> RankCertificate {
    let mut s = seed;
    let (prime, reduced) = loop {
        let p = random_prime_60(s);
        let f = PrimeField::new(p);
        if let Some(r) = m.reduce_mod(&f) {
            break (p, r);
        }
        s = s.wrapping_add(1);
    };
    let f = PrimeField::new(prime);
    let rank_mod_p = markowitz_eliminate(&f, &reduced).len();
    let rank_over_q = if m.nnz() <= confirm_nnz {
        Some(markowitz_eliminate(&Rationals, m).len())
    } else {
        None
    };
    RankCertificate {
        rank: rank_over_q.unwrap_or(rank_mod_p),
        prime,
        rank_mod_p,
        rank_over_q,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ri;
    use proptest::prelude::*;

    fn mul_vec(m: &SparseMatrix<Rational>, v: &SparseVec<Rational>) -> Vec<Rational> {
        m.rows
            .iter()
            .map(|r| {
                r.entries.iter().fold(ri(0), |acc, (c, x)| match v.get(*c) {
                    Some(y) => acc + x * y,
                    None => acc,
                })
            })
            .collect()
    }

    #[test]
    fn zero_and_identity() {
        let z = SparseMatrix::from_dense_ints(&vec![vec![0, 0, 0]; 3]);
        let (r, k) = rank_and_kernel(&Rationals, &z);
        assert_eq!((r, k.len()), (0, 3));
        let id = SparseMatrix::from_dense_ints(&(0..4).map(|i| (0..4).map(|j| (i == j) as i64).collect()).collect::<Vec<_>>());
        let (r, k) = rank_and_kernel(&Rationals, &id);
        assert_eq!((r, k.len()), (4, 0));
    }

    #[test]
    fn proportional_rows() {
        let m = SparseMatrix::from_dense_ints(&[vec![1, 2], vec![2, 4]]);
        let (r, k) = rank_and_kernel(&Rationals, &m);
        assert_eq!(r, 1);
        assert_eq!(k.len(), 1);
        // kernel spanned by (-2, 1)
        let v = &k[0];
        let ratio = v.get(0).unwrap() / v.get(1).unwrap();
        assert_eq!(ratio, ri(-2));
    }

    #[test]
    fn two_tier_agrees_on_small_matrix() {
        let m = SparseMatrix::from_dense_ints(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        let cert = rank_two_tier(&m, 11, DEFAULT_Q_CONFIRM_NNZ);
        assert_eq!(cert.rank, 2);
        assert!(cert.consistent());
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(
            entries in proptest::collection::vec(-3i64..4, 20),
            seed in 0u64..1000,
        ) {
            let rows: Vec<Vec<i64>> = entries.chunks(5).map(|c| c.to_vec()).collect();
            let m = SparseMatrix::from_dense_ints(&rows);
            let (r, k) = rank_and_kernel(&Rationals, &m);
            prop_assert_eq!(r + k.len(), 5);
            for v in &k {
                prop_assert!(mul_vec(&m, v).iter().all(|x| *x == ri(0)));
            }
            let dense = crate::exact::QMatrix::from_ints(&rows);
            prop_assert_eq!(r, dense.rank());
            let cert = rank_two_tier(&m, seed, DEFAULT_Q_CONFIRM_NNZ);
            prop_assert_eq!(cert.rank_mod_p, r);
        }
    }
}
