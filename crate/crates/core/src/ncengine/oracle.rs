//! Brute-force reference for graded dimensions: all composable words of a
//! degree modulo the span of every `u * rel * v` landing in that degree.

use std::collections::HashMap;

use super::presentation::{AlgebraPresentation, Path, RelationKind};
use crate::error::{Error, Result};
use crate::exact::{rank_two_tier, Rational, SparseMatrix, SparseVec, DEFAULT_Q_CONFIRM_NNZ};

pub const DEFAULT_WORD_LIMIT: usize = 1_000_000;

/// All composable paths of degree `0..=max_degree`, grouped by degree.
pub fn enumerate_paths(p: &AlgebraPresentation, max_degree: usize, limit: usize) -> Result<Vec<Vec<Path>>> {
    let mut by_deg: Vec<Vec<Path>> = vec![Vec::new(); max_degree + 1];
    by_deg[0] = (0..p.num_vertices).map(Path::idempotent).collect();
    let mut count = by_deg[0].len();
    for n in 1..=max_degree {
        let mut out = Vec::new();
        for (g, gen) in p.generators.iter().enumerate() {
            let d = gen.degree as usize;
            if d > n {
                continue;
            }
            for u in &by_deg[n - d] {
                if p.path_target(u) == gen.source {
                    let mut letters = u.letters.clone();
                    letters.push(g);
                    out.push(Path {
                        source: if u.letters.is_empty() { gen.source } else { u.source },
                        letters,
                    });
                }
            }
        }
        count += out.len();
        if count > limit {
            return Err(Error::ResourceLimit(format!(
                "word enumeration exceeded {limit} words at degree {n}"
            )));
        }
        out.sort();
        by_deg[n] = out;
    }
    Ok(by_deg)
}

fn concat(u: &Path, w: &Path, v: &Path) -> Path {
    let mut letters = Vec::with_capacity(u.letters.len() + w.letters.len() + v.letters.len());
    letters.extend(&u.letters);
    letters.extend(&w.letters);
    letters.extend(&v.letters);
    Path {
        source: u.source,
        letters,
    }
}

/// Per-degree dimensions `0..=max_degree` of a homogeneous presentation.
pub fn word_span_oracle(p: &AlgebraPresentation, max_degree: usize) -> Result<Vec<usize>> {
    word_span_oracle_with_limit(p, max_degree, DEFAULT_WORD_LIMIT)
}

pub fn word_span_oracle_with_limit(p: &AlgebraPresentation, max_degree: usize, limit: usize) -> Result<Vec<usize>> {
    p.validate()?;
    if !p.is_homogeneous() {
        return Err(Error::Precondition("word-span oracle needs a homogeneous presentation".into()));
    }
    let paths = enumerate_paths(p, max_degree, limit)?;
    let mut dims = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        let index: HashMap<&Path, usize> = paths[n].iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut m: SparseMatrix<Rational> = SparseMatrix::new(paths[n].len());
        for rel in &p.relations {
            let RelationKind::Homogeneous { degree } = p.relation_kind(rel) else {
                unreachable!()
            };
            let d = degree as usize;
            if d > n {
                continue;
            }
            let (rs, rt) = p.relation_ends(rel);
            for a in 0..=n - d {
                for u in paths[a].iter().filter(|u| p.path_target(u) == rs) {
                    for v in paths[n - d - a].iter().filter(|v| v.source == rt) {
                        let mut row: Vec<(usize, Rational)> = rel
                            .terms
                            .iter()
                            .map(|(c, w)| (index[&concat(u, w, v)], c.clone()))
                            .collect();
                        row.sort_by_key(|(i, _)| *i);
                        m.push_row(SparseVec::from_sorted(row));
                    }
                }
            }
        }
        let rank = if m.nrows() == 0 {
            0
        } else {
            rank_two_tier(&m, 0x5eed ^ n as u64, DEFAULT_Q_CONFIRM_NNZ).rank
        };
        dims.push(paths[n].len() - rank);
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ri;

    #[test]
    fn free_loop_has_one_word_per_degree() {
        let mut p = AlgebraPresentation::new("free", 1);
        p.add_generator("x", 0, 0, 1);
        assert_eq!(word_span_oracle(&p, 3).unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn a2_preprojective() {
        let mut p = AlgebraPresentation::new("A2", 2);
        p.add_generator("a", 0, 1, 1);
        p.add_generator("a*", 1, 0, 1);
        let w1 = p.word("a a*", 0).unwrap();
        let w2 = p.word("a* a", 1).unwrap();
        p.add_relation(vec![(ri(1), w1)]).unwrap();
        p.add_relation(vec![(ri(1), w2)]).unwrap();
        assert_eq!(word_span_oracle(&p, 3).unwrap(), vec![2, 2, 0, 0]);
    }

    #[test]
    fn nilpotent_loop() {
        let mut p = AlgebraPresentation::new("x^2", 1);
        p.add_generator("x", 0, 0, 1);
        let w = p.word("x x", 0).unwrap();
        p.add_relation(vec![(ri(1), w)]).unwrap();
        assert_eq!(word_span_oracle(&p, 2).unwrap(), vec![1, 1, 0]);
    }

    #[test]
    fn word_limit_is_enforced() {
        let mut p = AlgebraPresentation::new("free2", 1);
        p.add_generator("x", 0, 0, 1);
        p.add_generator("y", 0, 0, 1);
        assert!(matches!(word_span_oracle_with_limit(&p, 12, 1000), Err(Error::ResourceLimit(_))));
    }
}
