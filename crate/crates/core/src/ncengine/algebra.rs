//! A finite-dimensional algebra given by a basis of normal words and the
//! right action of each generator. Both the graded engine and the filtered
//! routes produce one of these.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::echelon::QVec;
use super::graded::{apply, GradedBasisTable};
use super::presentation::{AlgebraPresentation, Generator, Path};
use crate::exact::{QMatrix, Rational, Rationals, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteBasisElem {
    pub word: Vec<usize>,
    pub source: usize,
    pub target: usize,
    /// Grading degree (graded algebras) or filtration degree of the normal
    /// word (filtered algebras).
    pub degree: usize,
}

#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    pub name: String,
    pub num_vertices: usize,
    pub generators: Vec<Generator>,
    pub basis: Vec<FiniteBasisElem>,
    /// `right[g][j] = b_j * g`.
    pub right: Vec<Vec<QVec>>,
    pub unit: QVec,
    /// Whether `degree` is a grading (otherwise only a filtration).
    pub graded: bool,
    pub central: Option<(String, Vec<usize>)>,
}

/// Dense left-multiplication matrices of the generators on the full basis.
#[derive(Clone, Debug)]
pub struct RegularRep {
    pub dim: usize,
    pub generator_names: Vec<String>,
    pub generators: Vec<QMatrix>,
    pub unit: Vec<Rational>,
}

pub fn dense(v: &QVec, n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (i, c) in &v.entries {
        out[*i] = c.clone();
    }
    out
}

pub fn sparse(v: &[Rational]) -> QVec {
    SparseVec::from_sorted(
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect(),
    )
}

impl FiniteAlgebra {
    pub fn from_graded(t: &GradedBasisTable) -> FiniteAlgebra {
        let mut offsets = Vec::with_capacity(t.components.len() + 1);
        let mut acc = 0;
        for c in &t.components {
            offsets.push(acc);
            acc += c.len();
        }
        let p = &t.presentation;
        let mut basis = Vec::with_capacity(acc);
        for (n, comp) in t.components.iter().enumerate() {
            for b in comp {
                basis.push(FiniteBasisElem {
                    word: b.word.clone(),
                    source: b.source,
                    target: b.target,
                    degree: n,
                });
            }
        }
        let top = t.max_computed_degree();
        let right = (0..p.generators.len())
            .map(|g| {
                let d = p.generators[g].degree as usize;
                let mut col = Vec::with_capacity(acc);
                for (n, comp) in t.components.iter().enumerate() {
                    for i in 0..comp.len() {
                        if n + d > top {
                            col.push(QVec::new());
                        } else {
                            let off = offsets[n + d];
                            col.push(SparseVec::from_sorted(
                                t.right[n][g][i].entries.iter().map(|(k, c)| (k + off, c.clone())).collect(),
                            ));
                        }
                    }
                }
                col
            })
            .collect();
        let unit = SparseVec::from_sorted((0..p.num_vertices).map(|v| (v, Rational::from_integer(1.into()))).collect());
        FiniteAlgebra {
            name: p.name.clone(),
            num_vertices: p.num_vertices,
            generators: p.generators.clone(),
            basis,
            right,
            unit,
            graded: true,
            central: p.central.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn zero(&self) -> QVec {
        QVec::new()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// `x * g`.
    pub fn right_mul_gen(&self, x: &QVec, g: usize) -> QVec {
        apply(&self.right[g], x)
    }

    /// `x * e_v`.
    pub fn right_mul_idem(&self, x: &QVec, v: usize) -> QVec {
        SparseVec::from_sorted(
            x.entries
                .iter()
                .filter(|(i, _)| self.basis[*i].target == v)
                .cloned()
                .collect(),
        )
    }

    /// `e_v * x`.
    pub fn left_mul_idem(&self, v: usize, x: &QVec) -> QVec {
        SparseVec::from_sorted(
            x.entries
                .iter()
                .filter(|(i, _)| self.basis[*i].source == v)
                .cloned()
                .collect(),
        )
    }

    pub fn idempotent(&self, v: usize) -> QVec {
        self.left_mul_idem(v, &self.unit)
    }

    pub fn generator_element(&self, g: usize) -> QVec {
        self.right_mul_gen(&self.unit, g)
    }

    /// `x * w` for a path `w`.
    pub fn mul_path(&self, x: &QVec, w: &Path) -> QVec {
        let mut y = self.right_mul_idem(x, w.source);
        for &g in &w.letters {
            y = self.right_mul_gen(&y, g);
        }
        y
    }

    pub fn path_element(&self, w: &Path) -> QVec {
        self.mul_path(&self.unit, w)
    }

    fn basis_path(&self, j: usize) -> Path {
        Path {
            source: self.basis[j].source,
            letters: self.basis[j].word.clone(),
        }
    }

    /// `x * b_j`.
    pub fn mul_basis(&self, x: &QVec, j: usize) -> QVec {
        self.mul_path(x, &self.basis_path(j))
    }

    pub fn mul(&self, x: &QVec, y: &QVec) -> QVec {
        let mut out = QVec::new();
        for (j, c) in &y.entries {
            out = out.axpy(&Rationals, c, &self.mul_basis(x, *j));
        }
        out
    }

    pub fn pow(&self, x: &QVec, k: u32) -> QVec {
        let mut acc = self.unit.clone();
        for _ in 0..k {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn add(&self, x: &QVec, y: &QVec) -> QVec {
        x.axpy(&Rationals, &Rational::from_integer(1.into()), y)
    }

    pub fn scale(&self, x: &QVec, c: &Rational) -> QVec {
        x.scale(&Rationals, c)
    }

    /// The designated central element (sum of its loops).
    pub fn central_element(&self) -> Option<QVec> {
        let (_, loops) = self.central.as_ref()?;
        let mut z = QVec::new();
        for &l in loops {
            z = self.add(&z, &self.generator_element(l));
        }
        Some(z)
    }

    /// Left multiplication by `x` as a dense matrix.
    pub fn left_matrix(&self, x: &QVec) -> QMatrix {
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for j in 0..n {
            for (i, c) in &self.mul_basis(x, j).entries {
                m[(*i, j)] = c.clone();
            }
        }
        m
    }

    /// Right multiplication `y -> y * x` as a dense matrix.
    pub fn right_matrix(&self, x: &QVec) -> QMatrix {
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for j in 0..n {
            let bj = SparseVec::unit(&Rationals, j);
            for (i, c) in &self.mul(&bj, x).entries {
                m[(*i, j)] = c.clone();
            }
        }
        m
    }

    pub fn regular_rep(&self) -> RegularRep {
        RegularRep {
            dim: self.dim(),
            generator_names: self.generators.iter().map(|g| g.name.clone()).collect(),
            generators: (0..self.generators.len())
                .map(|g| self.left_matrix(&self.generator_element(g)))
                .collect(),
            unit: dense(&self.unit, self.dim()),
        }
    }

    /// Evaluates every relation of `p` (same generator list) in the algebra
    /// and returns the indices of relations that do not vanish.
    pub fn failing_relations(&self, p: &AlgebraPresentation) -> Vec<usize> {
        (0..p.relations.len())
            .filter(|&k| {
                let mut acc = QVec::new();
                for (c, w) in &p.relations[k].terms {
                    acc = acc.axpy(&Rationals, c, &self.path_element(w));
                }
                !acc.is_empty()
            })
            .collect()
    }

    /// Checks `(ab)c = a(bc)` on `count` seeded random triples of basis
    /// elements; returns the number of failures.
    pub fn associativity_failures(&self, count: usize, seed: u64) -> usize {
        if self.dim() == 0 {
            return 0;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut bad = 0;
        for _ in 0..count {
            let [a, b, c] = [0; 3].map(|_| SparseVec::unit(&Rationals, rng.gen_range(0..self.dim())));
            if self.mul(&self.mul(&a, &b), &c) != self.mul(&a, &self.mul(&b, &c)) {
                bad += 1;
            }
        }
        bad
    }

    /// Dimensions of the basis grouped by `degree`.
    pub fn degree_dims(&self) -> Vec<usize> {
        let top = self.basis.iter().map(|b| b.degree).max().unwrap_or(0);
        let mut d = vec![0; top + 1];
        for b in &self.basis {
            d[b.degree] += 1;
        }
        d
    }

    /// Indices of basis elements in `e_s A e_t`.
    pub fn corner_indices(&self, s: usize, t: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].source == s && self.basis[i].target == t)
            .collect()
    }

    pub fn word_string(&self, j: usize) -> String {
        let b = &self.basis[j];
        if b.word.is_empty() {
            return format!("e{}", b.source + 1);
        }
        b.word
            .iter()
            .map(|&g| self.generators[g].name.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl RegularRep {
    /// Matrix of an arbitrary element given in basis coordinates.
    pub fn element_matrix(alg: &FiniteAlgebra, x: &QVec) -> QMatrix {
        alg.left_matrix(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ri;
    use crate::ncengine::graded::build_graded_basis;

    fn uv_algebra() -> AlgebraPresentation {
        let mut p = AlgebraPresentation::new("uv", 1);
        p.add_generator("u", 0, 0, 1);
        p.add_generator("v", 0, 0, 1);
        let w = |p: &AlgebraPresentation, s: &str| p.word(s, 0).unwrap();
        let r1 = vec![(ri(1), w(&p, "u v")), (ri(-1), w(&p, "v u"))];
        let r2 = vec![(ri(1), w(&p, "u u"))];
        let r3 = vec![(ri(1), w(&p, "v v"))];
        p.add_relation(r1).unwrap();
        p.add_relation(r2).unwrap();
        p.add_relation(r3).unwrap();
        p
    }

    #[test]
    fn graded_to_finite_respects_relations() {
        let p = uv_algebra();
        let a = FiniteAlgebra::from_graded(&build_graded_basis(&p, 6).unwrap());
        assert_eq!(a.dim(), 4);
        assert!(a.failing_relations(&p).is_empty());
        assert_eq!(a.associativity_failures(50, 1), 0);
        let rep = a.regular_rep();
        // L is a homomorphism on generator pairs
        let u = a.generator_element(0);
        let v = a.generator_element(1);
        assert_eq!(&rep.generators[0] * &rep.generators[1], a.left_matrix(&a.mul(&u, &v)));
        assert_eq!(a.left_matrix(&a.unit), QMatrix::identity(4));
    }
}
