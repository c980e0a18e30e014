use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exact::{Rational, Rationals, SparseVec};

pub type QVec = SparseVec<Rational>;

/// Incremental row echelon form over Q. The pivot of a row is its smallest
/// column index, so callers order columns by decreasing priority.
#[derive(Default)]
pub(crate) struct Echelon {
    rows: BTreeMap<usize, QVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    #[cfg(test)]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn row(&self, pivot: usize) -> Option<&QVec> {
        self.rows.get(&pivot)
    }

    /// Reduces `v` against the stored rows, only touching columns `>= from`.
    fn reduce_from(&self, mut v: QVec, from: usize) -> QVec {
        let mut cursor = from;
        loop {
            let next = v
                .entries
                .iter()
                .find(|(c, _)| *c >= cursor && self.rows.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, x)) = next else { break };
            v = v.axpy(&Rationals, &-x, &self.rows[&c]);
            cursor = c + 1;
        }
        v
    }

    pub fn reduce(&self, v: QVec) -> QVec {
        self.reduce_from(v, 0)
    }

    /// Returns `true` when `v` was independent of the stored rows.
    pub fn insert(&mut self, v: QVec) -> bool {
        let r = self.reduce(v);
        let Some((p, lead)) = r.entries.first().cloned() else {
            return false;
        };
        let r = if lead.is_one() { r } else { r.scale(&Rationals, &lead.recip()) };
        debug_assert!(!lead.is_zero());
        self.rows.insert(p, r);
        true
    }

    /// Back-substitution so that every row contains exactly one pivot column.
    pub fn finish(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for p in pivots {
            let row = self.rows.remove(&p).expect("pivot row");
            let row = self.reduce_from(row, p + 1);
            self.rows.insert(p, row);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ri;

    fn v(entries: &[(usize, i64)]) -> QVec {
        SparseVec::from_sorted(entries.iter().map(|(i, x)| (*i, ri(*x))).collect())
    }

    #[test]
    fn echelon_rank_and_back_substitution() {
        let mut e = Echelon::new();
        assert!(e.insert(v(&[(1, 1), (2, 1)])));
        assert!(e.insert(v(&[(0, 2), (1, 2), (3, 2)])));
        assert!(!e.insert(v(&[(0, 1), (2, -1), (3, 1)])));
        e.finish();
        assert_eq!(e.rank(), 2);
        // row 0 is x0 + x1 + x3 reduced by row 1 (x1 + x2): x0 - x2 + x3
        assert_eq!(e.row(0).unwrap(), &v(&[(0, 1), (2, -1), (3, 1)]));
    }
}
