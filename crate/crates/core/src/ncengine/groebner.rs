//! Noncommutative Buchberger completion for path-algebra quotients under the
//! deg-lex order, for (possibly inhomogeneous) presentations whose quotient is
//! finite-dimensional.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};

use num_traits::{One, Zero};

use super::algebra::{FiniteAlgebra, FiniteBasisElem};
use super::echelon::QVec;
use super::presentation::{AlgebraPresentation, Path};
use crate::error::{Error, Result};
use crate::exact::{Rational, SparseVec};

/// Monomial: field order gives deg-lex (weighted degree, letters, source).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub deg: u32,
    pub letters: Vec<usize>,
    pub source: usize,
}

pub type Poly = BTreeMap<Mono, Rational>;

#[derive(Clone, Debug)]
pub struct CompletionLimits {
    pub max_basis: usize,
    pub max_reductions: usize,
    pub max_normal_words: usize,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits {
            max_basis: 20_000,
            max_reductions: 2_000_000,
            max_normal_words: 200_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub presentation: AlgebraPresentation,
    pub elements: Vec<Poly>,
    pub dead_vertices: BTreeSet<usize>,
}

struct Completion<'a> {
    p: &'a AlgebraPresentation,
    basis: Vec<Option<Poly>>,
    dead: BTreeSet<usize>,
    reductions: usize,
    limits: CompletionLimits,
}

fn lead(f: &Poly) -> &Mono {
    f.keys().next_back().expect("nonzero polynomial")
}

fn contains_at(hay: &[usize], needle: &[usize]) -> Option<usize> {
    if needle.len() > hay.len() {
        return None;
    }
    (0..=hay.len() - needle.len()).find(|&i| &hay[i..i + needle.len()] == needle)
}

impl<'a> Completion<'a> {
    fn mono(&self, source: usize, letters: Vec<usize>) -> Mono {
        let deg = letters.iter().map(|&g| self.p.generators[g].degree).sum();
        Mono { deg, letters, source }
    }

    fn touches_dead(&self, m: &Mono) -> bool {
        if self.dead.is_empty() {
            return false;
        }
        self.dead.contains(&m.source)
            || m
                .letters
                .iter()
                .any(|&g| self.dead.contains(&self.p.generators[g].target))
    }

    fn from_path_terms(&self, terms: &[(Rational, Path)]) -> Poly {
        let mut f = Poly::new();
        for (c, w) in terms {
            let m = self.mono(w.source, w.letters.clone());
            let e = f.entry(m).or_insert_with(Rational::zero);
            *e += c;
        }
        f.retain(|_, c| !c.is_zero());
        f
    }

    /// `c * u f v` where `u f v` has source `source`.
    fn sandwich(&self, u: &[usize], f: &Poly, v: &[usize], source: usize, c: &Rational, out: &mut Poly) {
        for (m, fc) in f {
            let mut letters = Vec::with_capacity(u.len() + m.letters.len() + v.len());
            letters.extend_from_slice(u);
            letters.extend_from_slice(&m.letters);
            letters.extend_from_slice(v);
            let deg = m.deg + u.iter().chain(v).map(|&g| self.p.generators[g].degree).sum::<u32>();
            let key = Mono { deg, letters, source };
            let e = out.entry(key).or_insert_with(Rational::zero);
            *e += c * fc;
            if e.is_zero() {
                let key = Mono {
                    deg,
                    letters: [u, &m.letters[..], v].concat(),
                    source,
                };
                out.remove(&key);
            }
        }
    }

    fn find_divisor(&self, m: &Mono) -> Option<(usize, usize)> {
        for (k, g) in self.basis.iter().enumerate() {
            let Some(g) = g else { continue };
            let lm = lead(g);
            if lm.letters.is_empty() {
                continue;
            }
            if let Some(pos) = contains_at(&m.letters, &lm.letters) {
                return Some((k, pos));
            }
        }
        None
    }

    fn reduce(&mut self, mut work: Poly) -> Result<Poly> {
        let mut out = Poly::new();
        while let Some((m, c)) = work.pop_last() {
            if self.touches_dead(&m) {
                continue;
            }
            match self.find_divisor(&m) {
                None => {
                    out.insert(m, c);
                }
                Some((k, pos)) => {
                    self.reductions += 1;
                    if self.reductions > self.limits.max_reductions {
                        return Err(Error::NonTermination(format!(
                            "completion exceeded {} reduction steps",
                            self.limits.max_reductions
                        )));
                    }
                    let g = self.basis[k].as_ref().expect("live element").clone();
                    let len = lead(&g).letters.len();
                    let (u, rest) = m.letters.split_at(pos);
                    let v = &rest[len..];
                    let mut g_rest = g;
                    g_rest.pop_last();
                    self.sandwich(u, &g_rest, v, m.source, &-c, &mut work);
                }
            }
        }
        Ok(out)
    }

    fn overlaps(&self, f: &Poly, g: &Poly) -> Vec<Poly> {
        let a = &lead(f).letters;
        let b = &lead(g).letters;
        let mut out = Vec::new();
        let min = a.len().min(b.len());
        for k in 1..min {
            if a[a.len() - k..] == b[..k] {
                let source = lead(f).source;
                let mut s = Poly::new();
                self.sandwich(&[], f, &b[k..], source, &Rational::one(), &mut s);
                self.sandwich(&a[..a.len() - k], g, &[], source, &-Rational::one(), &mut s);
                s.retain(|_, c| !c.is_zero());
                if !s.is_empty() {
                    out.push(s);
                }
            }
        }
        out
    }
}

fn monic(mut f: Poly) -> Poly {
    let c = f.values().next_back().expect("nonzero").clone();
    if !c.is_one() {
        let inv = c.recip();
        for v in f.values_mut() {
            *v *= &inv;
        }
    }
    f
}

pub fn complete(p: &AlgebraPresentation) -> Result<GroebnerBasis> {
    complete_with_limits(p, CompletionLimits::default())
}

pub fn complete_with_limits(p: &AlgebraPresentation, limits: CompletionLimits) -> Result<GroebnerBasis> {
    p.validate()?;
    let mut st = Completion {
        p,
        basis: Vec::new(),
        dead: BTreeSet::new(),
        reductions: 0,
        limits,
    };
    // min-heap keyed by leading monomial
    let mut queue: BinaryHeap<Reverse<(Mono, u64)>> = BinaryHeap::new();
    let mut pending: HashMap<u64, Poly> = HashMap::new();
    let mut seq = 0u64;
    let mut push = |f: Poly, queue: &mut BinaryHeap<Reverse<(Mono, u64)>>, pending: &mut HashMap<u64, Poly>| {
        if f.is_empty() {
            return;
        }
        seq += 1;
        queue.push(Reverse((lead(&f).clone(), seq)));
        pending.insert(seq, f);
    };
    for rel in &p.relations {
        let f = st.from_path_terms(&rel.terms);
        push(f, &mut queue, &mut pending);
    }
    while let Some(Reverse((_, id))) = queue.pop() {
        let f = pending.remove(&id).expect("queued polynomial");
        let r = st.reduce(f)?;
        if r.is_empty() {
            continue;
        }
        let r = monic(r);
        let lm = lead(&r).clone();
        if lm.letters.is_empty() {
            // e_v lies in the ideal: the vertex dies and everything is redone.
            st.dead.insert(lm.source);
            for g in st.basis.drain(..).flatten() {
                push(g, &mut queue, &mut pending);
            }
            continue;
        }
        // elements whose leading word contains the new one are re-reduced
        for k in 0..st.basis.len() {
            let hit = st.basis[k]
                .as_ref()
                .is_some_and(|g| contains_at(&lead(g).letters, &lm.letters).is_some());
            if hit {
                let g = st.basis[k].take().expect("live");
                push(g, &mut queue, &mut pending);
            }
        }
        let mut spolys = st.overlaps(&r, &r);
        for g in st.basis.iter().flatten() {
            spolys.extend(st.overlaps(&r, g));
            spolys.extend(st.overlaps(g, &r));
        }
        for s in spolys {
            push(s, &mut queue, &mut pending);
        }
        st.basis.push(Some(r));
        if st.basis.iter().flatten().count() > st.limits.max_basis {
            return Err(Error::NonTermination(format!(
                "completion exceeded {} basis elements",
                st.limits.max_basis
            )));
        }
    }
    // final inter-reduction of tails
    let elements: Vec<Poly> = st.basis.iter().flatten().cloned().collect();
    let mut reduced = Vec::with_capacity(elements.len());
    for (k, f) in elements.iter().enumerate() {
        st.basis = elements
            .iter()
            .enumerate()
            .map(|(j, g)| (j != k).then(|| g.clone()))
            .collect();
        let mut tail = f.clone();
        let (lm, lc) = tail.pop_last().expect("nonzero");
        let mut t = st.reduce(tail)?;
        t.insert(lm, lc);
        reduced.push(t);
    }
    reduced.sort_by(|a, b| lead(a).cmp(lead(b)));
    Ok(GroebnerBasis {
        presentation: p.clone(),
        elements: reduced,
        dead_vertices: st.dead,
    })
}

impl GroebnerBasis {
    fn completion(&self) -> Completion<'_> {
        Completion {
            p: &self.presentation,
            basis: self.elements.iter().cloned().map(Some).collect(),
            dead: self.dead_vertices.clone(),
            reductions: 0,
            limits: CompletionLimits {
                max_reductions: usize::MAX,
                ..Default::default()
            },
        }
    }

    pub fn leading_words(&self) -> Vec<&Mono> {
        self.elements.iter().map(lead).collect()
    }

    pub fn normal_form(&self, f: Poly) -> Poly {
        self.completion().reduce(f).expect("unbounded reduction")
    }

    /// Normal words, in increasing deg-lex order.
    pub fn normal_words(&self, limit: usize) -> Result<Vec<Mono>> {
        let p = &self.presentation;
        let lms: Vec<&Vec<usize>> = self.elements.iter().map(|f| &lead(f).letters).collect();
        let alive = |v: usize| !self.dead_vertices.contains(&v);
        let mut words: Vec<Mono> = (0..p.num_vertices)
            .filter(|&v| alive(v))
            .map(|v| Mono {
                deg: 0,
                letters: vec![],
                source: v,
            })
            .collect();
        let mut frontier = words.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                let at = w.letters.last().map_or(w.source, |&g| p.generators[g].target);
                for (g, gen) in p.generators.iter().enumerate() {
                    if gen.source != at || !alive(gen.target) {
                        continue;
                    }
                    let mut letters = w.letters.clone();
                    letters.push(g);
                    if lms.iter().any(|lm| letters.ends_with(lm)) {
                        continue;
                    }
                    next.push(Mono {
                        deg: w.deg + gen.degree,
                        letters,
                        source: w.source,
                    });
                }
            }
            words.extend(next.iter().cloned());
            if words.len() > limit {
                return Err(Error::NonTermination(format!(
                    "more than {limit} normal words: quotient looks infinite-dimensional"
                )));
            }
            frontier = next;
        }
        words.sort();
        Ok(words)
    }

    pub fn to_finite_algebra(&self, limit: usize) -> Result<FiniteAlgebra> {
        let p = &self.presentation;
        let words = self.normal_words(limit)?;
        let index: HashMap<&Mono, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut comp = self.completion();
        let to_vec = |f: &Poly| -> QVec {
            let mut v: Vec<(usize, Rational)> = f.iter().map(|(m, c)| (index[m], c.clone())).collect();
            v.sort_by_key(|(i, _)| *i);
            SparseVec::from_sorted(v)
        };
        let mut right = vec![Vec::with_capacity(words.len()); p.generators.len()];
        for (g, gen) in p.generators.iter().enumerate() {
            for w in &words {
                let at = w.letters.last().map_or(w.source, |&h| p.generators[h].target);
                if at != gen.source {
                    right[g].push(QVec::new());
                    continue;
                }
                let mut letters = w.letters.clone();
                letters.push(g);
                let m = comp.mono(w.source, letters);
                let nf = comp.reduce(Poly::from([(m, Rational::one())]))?;
                right[g].push(to_vec(&nf));
            }
        }
        let unit = to_vec(
            &words
                .iter()
                .filter(|w| w.letters.is_empty())
                .map(|w| (w.clone(), Rational::one()))
                .collect(),
        );
        let basis = words
            .iter()
            .map(|w| FiniteBasisElem {
                word: w.letters.clone(),
                source: w.source,
                target: w.letters.last().map_or(w.source, |&h| p.generators[h].target),
                degree: w.deg as usize,
            })
            .collect();
        Ok(FiniteAlgebra {
            name: p.name.clone(),
            num_vertices: p.num_vertices,
            generators: p.generators.clone(),
            basis,
            right,
            unit,
            graded: p.is_homogeneous(),
            central: p.central.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ri;

    #[test]
    fn commutative_toy() {
        let mut p = AlgebraPresentation::new("uv", 1);
        p.add_generator("u", 0, 0, 1);
        p.add_generator("v", 0, 0, 1);
        let w = |p: &AlgebraPresentation, s: &str| p.word(s, 0).unwrap();
        let rels = vec![
            vec![(ri(1), w(&p, "u v")), (ri(-1), w(&p, "v u"))],
            vec![(ri(1), w(&p, "u u"))],
            vec![(ri(1), w(&p, "v v"))],
        ];
        for r in rels {
            p.add_relation(r).unwrap();
        }
        let gb = complete(&p).unwrap();
        let a = gb.to_finite_algebra(1000).unwrap();
        assert_eq!(a.dim(), 4);
        assert!(a.failing_relations(&p).is_empty());
    }

    #[test]
    fn inhomogeneous_matrix_algebra() {
        // a b = e1, b a = e2 on two vertices: Mat_2
        let mut p = AlgebraPresentation::new("Mat2", 2);
        p.add_generator("a", 0, 1, 1);
        p.add_generator("b", 1, 0, 1);
        let ab = p.word("a b", 0).unwrap();
        let ba = p.word("b a", 1).unwrap();
        p.add_relation(vec![(ri(1), ab), (ri(-1), Path::idempotent(0))]).unwrap();
        p.add_relation(vec![(ri(1), ba), (ri(-1), Path::idempotent(1))]).unwrap();
        let a = complete(&p).unwrap().to_finite_algebra(100).unwrap();
        assert_eq!(a.dim(), 4);
        assert!(a.failing_relations(&p).is_empty());
        assert_eq!(a.associativity_failures(100, 7), 0);
    }

    #[test]
    fn dead_vertex() {
        // x^2 = e, x^3 = 0 forces e = 0
        let mut p = AlgebraPresentation::new("dead", 1);
        p.add_generator("x", 0, 0, 1);
        let x2 = p.word("x x", 0).unwrap();
        let x3 = p.word("x x x", 0).unwrap();
        p.add_relation(vec![(ri(1), x2), (ri(-1), Path::idempotent(0))]).unwrap();
        p.add_relation(vec![(ri(1), x3)]).unwrap();
        let gb = complete(&p).unwrap();
        assert_eq!(gb.dead_vertices.len(), 1);
        assert_eq!(gb.to_finite_algebra(10).unwrap().dim(), 0);
    }

    #[test]
    fn q_commuting_plane_needs_overlaps() {
        // y x = 2 x y, x^2 = 0, y^3 = 0: dimension 6 with basis x^i y^j
        let mut p = AlgebraPresentation::new("qplane", 1);
        p.add_generator("x", 0, 0, 1);
        p.add_generator("y", 0, 0, 1);
        let w = |p: &AlgebraPresentation, s: &str| p.word(s, 0).unwrap();
        let rels = vec![
            vec![(ri(1), w(&p, "y x")), (ri(-2), w(&p, "x y"))],
            vec![(ri(1), w(&p, "x x"))],
            vec![(ri(1), w(&p, "y y y"))],
        ];
        for r in rels {
            p.add_relation(r).unwrap();
        }
        let a = complete(&p).unwrap().to_finite_algebra(100).unwrap();
        assert_eq!(a.dim(), 6);
        assert_eq!(a.associativity_failures(100, 3), 0);
    }
}
