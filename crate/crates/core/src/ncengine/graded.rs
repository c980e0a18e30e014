//! Degree-by-degree construction of a normal-word basis for a homogeneous
//! presentation.
//!
//! Every element of degree `n >= 1` is a combination of products `b * g` with
//! `b` a basis element of degree `n - deg g`; those products are the
//! candidates for degree `n`. The ideal in degree `n` is spanned, modulo the
//! candidates already identified, by the vectors `b * rel` for basis elements
//! `b`, and each such vector is computed from the right-multiplication maps of
//! lower degrees. Echelon pivots are taken on the deg-lex largest candidate
//! word, so the surviving candidates are exactly the normal words.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::echelon::{Echelon, QVec};
use super::presentation::{AlgebraPresentation, Path, RelationKind};
use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, PolyMatrix, Rational, Rationals, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElem {
    pub word: Vec<usize>,
    pub source: usize,
    pub target: usize,
    /// `(index in degree n - deg g, g)` with `self = parent * g`; `None` for
    /// idempotents.
    pub parent: Option<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct GradedBasisTable {
    pub presentation: AlgebraPresentation,
    /// `components[n]` is the normal-word basis of degree `n`.
    pub components: Vec<Vec<BasisElem>>,
    /// `right[n][g][i] = b_i * g` in degree `n + deg g` (empty when zero or
    /// beyond the computed range).
    pub(crate) right: Vec<Vec<Vec<QVec>>>,
    pub(crate) left: Vec<Vec<Vec<QVec>>>,
    /// `true` when the algebra was shown to vanish above the last nonzero
    /// component; `false` when the computation stopped at the degree bound.
    pub terminated: bool,
}

pub fn build_graded_basis(p: &AlgebraPresentation, max_degree: usize) -> Result<GradedBasisTable> {
    p.validate()?;
    let mut rel_info = Vec::new();
    for rel in &p.relations {
        match p.relation_kind(rel) {
            RelationKind::Homogeneous { degree: 0 } => {
                return Err(Error::Precondition("degree-0 relations are not supported".into()))
            }
            RelationKind::Homogeneous { degree } => rel_info.push((rel, degree as usize, p.relation_ends(rel))),
            RelationKind::Filtered { .. } => {
                return Err(Error::Precondition(
                    "graded engine needs a homogeneous presentation; use build_filtered_basis".into(),
                ))
            }
        }
    }
    let ngens = p.generators.len();
    let gdeg: Vec<usize> = p.generators.iter().map(|g| g.degree as usize).collect();
    let window = p.max_generator_degree() as usize;

    let mut components: Vec<Vec<BasisElem>> = vec![(0..p.num_vertices)
        .map(|v| BasisElem {
            word: Vec::new(),
            source: v,
            target: v,
            parent: None,
        })
        .collect()];
    let mut right: Vec<Vec<Vec<QVec>>> = vec![vec![vec![QVec::new(); p.num_vertices]; ngens]];
    let mut zero_run = 0;
    let mut terminated = false;

    for n in 1..=max_degree {
        // candidates, largest word first
        let mut cands: Vec<(Vec<usize>, usize, usize, usize)> = Vec::new();
        for g in 0..ngens {
            if gdeg[g] > n {
                continue;
            }
            let m = n - gdeg[g];
            for (i, b) in components[m].iter().enumerate() {
                if b.target == p.generators[g].source {
                    let mut w = b.word.clone();
                    w.push(g);
                    cands.push((w, m, i, g));
                }
            }
        }
        cands.sort_by(|a, b| b.0.cmp(&a.0));
        let col_of: HashMap<(usize, usize, usize), usize> = cands
            .iter()
            .enumerate()
            .map(|(c, (_, m, i, g))| ((*m, *i, *g), c))
            .collect();

        let mut ech = Echelon::new();
        for &(rel, d, (rs, _)) in &rel_info {
            if d > n {
                continue;
            }
            let m = n - d;
            for (i, b) in components[m].iter().enumerate() {
                if b.target != rs {
                    continue;
                }
                let mut acc = QVec::new();
                for (c, w) in &rel.terms {
                    let (last, prefix) = w.letters.split_last().expect("positive-degree word");
                    let mut x = QVec::unit(&Rationals, i);
                    let mut deg = m;
                    for &h in prefix {
                        x = apply(&right[deg][h], &x);
                        deg += gdeg[h];
                    }
                    let mapped = SparseVec::from_map(
                        &Rationals,
                        x.entries.iter().map(|(j, v)| (col_of[&(deg, *j, *last)], v.clone())).collect(),
                    );
                    acc = acc.axpy(&Rationals, c, &mapped);
                }
                ech.insert(acc);
            }
        }
        ech.finish();

        // survivors in ascending word order
        let survivors: Vec<usize> = (0..cands.len()).rev().filter(|&c| !ech.is_pivot(c)).collect();
        let basis_of: HashMap<usize, usize> = survivors.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let comp: Vec<BasisElem> = survivors
            .iter()
            .map(|&c| {
                let (w, m, i, g) = &cands[c];
                BasisElem {
                    word: w.clone(),
                    source: components[*m][*i].source,
                    target: p.generators[*g].target,
                    parent: Some((*i, *g)),
                }
            })
            .collect();
        for (c, (_, m, i, g)) in cands.iter().enumerate() {
            let image = match basis_of.get(&c) {
                Some(&k) => QVec::unit(&Rationals, k),
                None => {
                    let row = ech.row(c).expect("pivot row");
                    SparseVec::from_sorted(
                        row.entries
                            .iter()
                            .skip(1)
                            .map(|(col, v)| (basis_of[col], -v.clone()))
                            .collect::<std::collections::BTreeMap<_, _>>()
                            .into_iter()
                            .collect(),
                    )
                }
            };
            right[*m][*g][*i] = image;
        }
        right.push(vec![vec![QVec::new(); comp.len()]; ngens]);
        zero_run = if comp.is_empty() { zero_run + 1 } else { 0 };
        components.push(comp);
        if zero_run >= window {
            terminated = true;
            break;
        }
    }

    let left = build_left_tables(p, &components, &right);
    Ok(GradedBasisTable {
        presentation: p.clone(),
        components,
        right,
        left,
        terminated,
    })
}

/// `x * g` for `x` given in a degree whose right-multiplication row is `row`.
pub(crate) fn apply(row: &[QVec], x: &QVec) -> QVec {
    let mut out = QVec::new();
    for (j, c) in &x.entries {
        if let Some(img) = row.get(*j) {
            if !img.is_empty() {
                out = out.axpy(&Rationals, c, img);
            }
        }
    }
    out
}

pub(crate) fn build_left_tables(
    p: &AlgebraPresentation,
    components: &[Vec<BasisElem>],
    right: &[Vec<Vec<QVec>>],
) -> Vec<Vec<Vec<QVec>>> {
    let ngens = p.generators.len();
    let top = components.len() - 1;
    let mut left: Vec<Vec<Vec<QVec>>> = components
        .iter()
        .map(|c| vec![vec![QVec::new(); c.len()]; ngens])
        .collect();
    for (n, comp) in components.iter().enumerate() {
        for g in 0..ngens {
            let gen = &p.generators[g];
            let dg = gen.degree as usize;
            if n + dg > top {
                continue;
            }
            for (i, b) in comp.iter().enumerate() {
                if gen.target != b.source {
                    continue;
                }
                left[n][g][i] = match b.parent {
                    None => right[0][g][gen.source].clone(),
                    Some((pi, h)) => {
                        let m = n - p.generators[h].degree as usize;
                        let x = left[m][g][pi].clone();
                        apply(&right[m + dg][h], &x)
                    }
                };
            }
        }
    }
    left
}

impl GradedBasisTable {
    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.len()).collect()
    }

    /// Dimensions of degrees `0..=n`, padded with zeros past termination.
    /// Panics when the table was truncated below `n`.
    pub fn dims_through(&self, n: usize) -> Vec<usize> {
        assert!(self.terminated || n <= self.max_computed_degree(), "degree {n} beyond truncation");
        (0..=n).map(|k| self.components.get(k).map_or(0, |c| c.len())).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.components.iter().map(|c| c.len()).sum()
    }

    /// Highest degree with a nonzero component.
    pub fn top_degree(&self) -> usize {
        self.components.iter().rposition(|c| !c.is_empty()).unwrap_or(0)
    }

    pub fn max_computed_degree(&self) -> usize {
        self.components.len() - 1
    }

    pub fn generator_degree(&self, g: usize) -> usize {
        self.presentation.generators[g].degree as usize
    }

    /// `x * g` for `x` in degree `n`.
    pub fn right_mul(&self, n: usize, g: usize, x: &QVec) -> QVec {
        apply(&self.right[n][g], x)
    }

    /// `g * x` for `x` in degree `n`.
    pub fn left_mul(&self, n: usize, g: usize, x: &QVec) -> QVec {
        apply(&self.left[n][g], x)
    }

    /// Normal form of a path, as `(degree, coordinates)`; zero beyond the
    /// computed range.
    pub fn normal_form(&self, w: &Path) -> (usize, QVec) {
        let mut x = QVec::unit(&Rationals, w.source);
        let mut deg = 0;
        for &g in &w.letters {
            let d = deg + self.generator_degree(g);
            x = if d <= self.max_computed_degree() {
                self.right_mul(deg, g, &x)
            } else {
                QVec::new()
            };
            deg = d;
        }
        (deg, x)
    }

    /// Dimension of `e_s A[n] e_t` for every vertex pair.
    pub fn vertex_dims(&self, n: usize) -> Vec<Vec<usize>> {
        let r = self.presentation.num_vertices;
        let mut m = vec![vec![0; r]; r];
        if let Some(comp) = self.components.get(n) {
            for b in comp {
                m[b.source][b.target] += 1;
            }
        }
        m
    }

    /// Matrix Hilbert polynomial: entry `(i, j)` is the graded dimension of
    /// paths from `i` to `j`.
    pub fn hilbert_matrix(&self) -> PolyMatrix {
        let r = self.presentation.num_vertices;
        let mut h = PolyMatrix::zeros(r);
        for (n, comp) in self.components.iter().enumerate() {
            for b in comp {
                let mut e = h.get(b.source, b.target).clone();
                e.add_term(n as i64, Rational::from_integer(1.into()));
                h.set(b.source, b.target, e);
            }
        }
        h
    }

    pub fn hilbert_series(&self) -> LaurentPoly {
        let mut s = LaurentPoly::zero();
        for (n, c) in self.components.iter().enumerate() {
            if !c.is_empty() {
                s.add_term(n as i64, Rational::from_integer(c.len().into()));
            }
        }
        s
    }

    pub fn word_string(&self, n: usize, i: usize) -> String {
        let b = &self.components[n][i];
        self.presentation.path_string(&Path {
            source: b.source,
            letters: b.word.clone(),
        })
    }

    pub(crate) fn from_parts(
        presentation: AlgebraPresentation,
        components: Vec<Vec<BasisElem>>,
        right: Vec<Vec<Vec<QVec>>>,
        terminated: bool,
    ) -> Self {
        let left = build_left_tables(&presentation, &components, &right);
        GradedBasisTable {
            presentation,
            components,
            right,
            left,
            terminated,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ri;
    use crate::ncengine::oracle::word_span_oracle;

    fn loop_with_power(k: usize) -> AlgebraPresentation {
        let mut p = AlgebraPresentation::new("x^k", 1);
        p.add_generator("x", 0, 0, 1);
        let w = p.word(&vec!["x"; k].join(" "), 0).unwrap();
        p.add_relation(vec![(ri(1), w)]).unwrap();
        p
    }

    #[test]
    fn cube_zero_loop() {
        let t = build_graded_basis(&loop_with_power(3), 10).unwrap();
        assert!(t.terminated);
        assert_eq!(t.dims()[..4], [1, 1, 1, 0]);
        assert_eq!(t.total_dim(), 3);
    }

    #[test]
    fn a2_preprojective_basis() {
        let mut p = AlgebraPresentation::new("A2", 2);
        p.add_generator("a", 0, 1, 1);
        p.add_generator("a*", 1, 0, 1);
        let w1 = p.word("a a*", 0).unwrap();
        let w2 = p.word("a* a", 1).unwrap();
        p.add_relation(vec![(ri(1), w1)]).unwrap();
        p.add_relation(vec![(ri(1), w2)]).unwrap();
        let t = build_graded_basis(&p, 6).unwrap();
        assert_eq!(t.total_dim(), 4);
        let words: Vec<String> = (0..2).flat_map(|n| (0..t.components[n].len()).map(move |i| (n, i))).map(|(n, i)| t.word_string(n, i)).collect();
        assert_eq!(words, vec!["e1", "e2", "a", "a*"]);
    }

    #[test]
    fn commutative_polynomials_modulo_squares() {
        let mut p = AlgebraPresentation::new("uv", 1);
        p.add_generator("u", 0, 0, 1);
        p.add_generator("v", 0, 0, 1);
        let w = |s: &str| p.word(s, 0).unwrap();
        let rels = vec![
            vec![(ri(1), w("u v")), (ri(-1), w("v u"))],
            vec![(ri(1), w("u u"))],
            vec![(ri(1), w("v v"))],
        ];
        for r in rels {
            p.add_relation(r).unwrap();
        }
        let t = build_graded_basis(&p, 6).unwrap();
        assert_eq!(t.dims()[..3], [1, 2, 1]);
        assert_eq!(word_span_oracle(&p, 4).unwrap(), t.dims_through(4));
    }

    #[test]
    fn truncation_is_reported() {
        let mut p = AlgebraPresentation::new("free", 1);
        p.add_generator("x", 0, 0, 1);
        let t = build_graded_basis(&p, 5).unwrap();
        assert!(!t.terminated);
        assert_eq!(t.dims(), vec![1; 6]);
    }

    #[test]
    fn left_and_right_tables_agree_on_words() {
        let mut p = AlgebraPresentation::new("xy", 1);
        p.add_generator("x", 0, 0, 1);
        p.add_generator("y", 0, 0, 1);
        let w = |s: &str| p.word(s, 0).unwrap();
        // x y = 2 y x, x^2 = y^2 = 0
        let rels = vec![
            vec![(ri(1), w("x y")), (ri(-2), w("y x"))],
            vec![(ri(1), w("x x"))],
            vec![(ri(1), w("y y"))],
        ];
        for r in rels {
            p.add_relation(r).unwrap();
        }
        let t = build_graded_basis(&p, 5).unwrap();
        assert_eq!(t.total_dim(), 4);
        let w = |s: &str| t.presentation.word(s, 0).unwrap();
        // x * (y) computed by the left table equals the normal form of "x y"
        let (_, y) = t.normal_form(&w("y"));
        let xy = t.left_mul(1, 0, &y);
        assert_eq!(xy, t.normal_form(&w("x y")).1);
        let (_, yx) = t.normal_form(&w("y x"));
        assert_eq!(xy, yx.scale(&Rationals, &ri(2)));
    }
}
