//! Structural reports on finite-dimensional algebras: socle, graded Frobenius
//! pairings, trace form and characteristic polynomials.

use num_traits::Zero;
use serde::Serialize;

use super::algebra::{dense, sparse, FiniteAlgebra};
use super::echelon::QVec;
use crate::error::{Error, Result};
use crate::exact::{factor_rational_roots, LaurentPoly, QMatrix, Rational, RationalFactorization, Rationals, SparseVec};

fn stack(blocks: &[QMatrix], cols: usize) -> QMatrix {
    let rows: usize = blocks.iter().map(|b| b.rows).sum();
    let mut m = QMatrix::zeros(rows, cols);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows {
            for j in 0..cols {
                if !b[(i, j)].is_zero() {
                    m[(off + i, j)] = b[(i, j)].clone();
                }
            }
        }
        off += b.rows;
    }
    m
}

fn common_kernel(alg: &FiniteAlgebra, elems: &[QVec]) -> Vec<QVec> {
    let n = alg.dim();
    if elems.is_empty() {
        return (0..n).map(|i| SparseVec::unit(&Rationals, i)).collect();
    }
    let mut blocks = Vec::with_capacity(2 * elems.len());
    for x in elems {
        blocks.push(alg.left_matrix(x));
        blocks.push(alg.right_matrix(x));
    }
    stack(&blocks, n).kernel().iter().map(|v| sparse(v)).collect()
}

/// Two-sided socle: the common annihilator of the Jacobson radical.
///
/// For graded algebras with semisimple degree-0 part the radical is generated
/// by the positive-degree generators, so only their multiplications are used.
pub fn socle(alg: &FiniteAlgebra) -> Vec<QVec> {
    if alg.graded && alg.generators.iter().all(|g| g.degree > 0) {
        let gens: Vec<QVec> = (0..alg.generators.len()).map(|g| alg.generator_element(g)).collect();
        return common_kernel(alg, &gens);
    }
    common_kernel(alg, &radical(alg))
}

/// Jacobson radical as the kernel of the trace form (characteristic 0).
pub fn radical(alg: &FiniteAlgebra) -> Vec<QVec> {
    trace_form(alg).kernel().iter().map(|v| sparse(v)).collect()
}

/// Gram matrix `tr(L_{b_i b_j})` of the trace form on the basis.
pub fn trace_form(alg: &FiniteAlgebra) -> QMatrix {
    let n = alg.dim();
    let traces: Vec<Rational> = (0..n)
        .map(|k| {
            let bk = SparseVec::unit(&Rationals, k);
            (0..n).fold(Rational::zero(), |acc, j| acc + alg.mul_basis(&bk, j).get(j).cloned().unwrap_or_default())
        })
        .collect();
    let mut g = QMatrix::zeros(n, n);
    for i in 0..n {
        let bi = SparseVec::unit(&Rationals, i);
        for j in 0..n {
            let prod = alg.mul_basis(&bi, j);
            let mut t = Rational::zero();
            for (k, c) in &prod.entries {
                t += c * &traces[*k];
            }
            g[(i, j)] = t;
        }
    }
    g
}

pub fn trace_form_rank(alg: &FiniteAlgebra) -> usize {
    trace_form(alg).rank()
}

#[derive(Clone, Debug, Serialize)]
pub struct Charpoly {
    /// Coefficients from the constant term up, as reduced fractions.
    pub coefficients: Vec<String>,
    pub factorization: RationalFactorization,
    #[serde(skip)]
    pub poly: LaurentPoly,
}

pub fn charpoly_of_element(alg: &FiniteAlgebra, x: &QVec) -> Charpoly {
    let poly = alg.left_matrix(x).charpoly();
    let deg = poly.degree().unwrap_or(0).max(0);
    Charpoly {
        coefficients: (0..=deg).map(|k| poly.coeff(k).to_string()).collect(),
        factorization: factor_rational_roots(&poly),
        poly,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingRank {
    pub degree: usize,
    pub source: usize,
    pub middle: usize,
    pub left_dim: usize,
    pub right_dim: usize,
    pub rank: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusReport {
    pub top_degree: usize,
    /// `perm[a] = b` when `e_a A[d] e_b` is the one-dimensional corner at `a`.
    pub permutation: Option<Vec<usize>>,
    pub top_is_permutation: bool,
    pub degree_pass: Vec<bool>,
    pub pairings: Vec<PairingRank>,
    pub pass: bool,
}

/// Graded criterion: `A[d]` is an invertible bimodule over `A[0] = R` and the
/// multiplication pairings `e_a A[i] e_b x e_b A[d-i] e_s(a) -> A[d]` are perfect.
pub fn frobenius_check(alg: &FiniteAlgebra, d: usize) -> Result<FrobeniusReport> {
    if !alg.graded {
        return Err(Error::Precondition("Frobenius check needs a graded algebra".into()));
    }
    let dims = alg.degree_dims();
    let mut padded = dims.clone();
    padded.resize(d + 1, 0);
    let reversed: Vec<usize> = padded.iter().rev().cloned().collect();
    if dims.len() != d + 1 || padded != reversed {
        return Err(Error::Precondition(format!(
            "Hilbert polynomial not symmetric of degree {d}: P(t) = {:?}, t^d P(1/t) = {:?}",
            padded, reversed
        )));
    }
    let r = alg.num_vertices;
    let at = |deg: usize, s: usize, t: usize| -> Vec<usize> {
        (0..alg.dim())
            .filter(|&i| alg.basis[i].degree == deg && alg.basis[i].source == s && alg.basis[i].target == t)
            .collect()
    };
    let mut perm = vec![usize::MAX; r];
    let mut top_ok = true;
    let mut col_used = vec![0usize; r];
    for a in 0..r {
        let mut row_total = 0;
        for b in 0..r {
            let k = at(d, a, b).len();
            row_total += k;
            if k == 1 {
                perm[a] = b;
                col_used[b] += 1;
            } else if k > 1 {
                top_ok = false;
            }
        }
        if row_total != 1 {
            top_ok = false;
        }
    }
    if col_used.iter().any(|&c| c != 1) {
        top_ok = false;
    }
    let mut pairings = Vec::new();
    let mut degree_pass = vec![top_ok; d + 1];
    if top_ok {
        for i in 0..=d {
            for a in 0..r {
                let top = at(d, a, perm[a])[0];
                for b in 0..r {
                    let left = at(i, a, b);
                    let right = at(d - i, b, perm[a]);
                    if left.is_empty() && right.is_empty() {
                        continue;
                    }
                    let mut m = QMatrix::zeros(left.len(), right.len());
                    for (x, &li) in left.iter().enumerate() {
                        let bl = SparseVec::unit(&Rationals, li);
                        for (y, &rj) in right.iter().enumerate() {
                            m[(x, y)] = alg.mul_basis(&bl, rj).get(top).cloned().unwrap_or_default();
                        }
                    }
                    let rank = if left.is_empty() || right.is_empty() { 0 } else { m.rank() };
                    let pass = left.len() == right.len() && rank == left.len();
                    degree_pass[i] &= pass;
                    pairings.push(PairingRank {
                        degree: i,
                        source: a,
                        middle: b,
                        left_dim: left.len(),
                        right_dim: right.len(),
                        rank,
                        pass,
                    });
                }
            }
        }
    }
    Ok(FrobeniusReport {
        top_degree: d,
        permutation: top_ok.then_some(perm),
        top_is_permutation: top_ok,
        pass: top_ok && degree_pass.iter().all(|&p| p),
        degree_pass,
        pairings,
    })
}

/// Whether `x` lies in the span of `vs`.
pub fn in_span(vs: &[QVec], x: &QVec, n: usize) -> bool {
    span_rank(vs, n) == span_rank(&[vs, std::slice::from_ref(x)].concat(), n)
}

pub fn span_rank(vs: &[QVec], n: usize) -> usize {
    let mut m = QMatrix::zeros(vs.len(), n);
    for (i, v) in vs.iter().enumerate() {
        for (j, c) in dense(v, n).into_iter().enumerate() {
            m[(i, j)] = c;
        }
    }
    m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ri};
    use crate::ncengine::filtered::build_filtered_basis;
    use crate::ncengine::graded::build_graded_basis;
    use crate::ncengine::presentation::{AlgebraPresentation, Path};

    fn loop_algebra(n: usize) -> FiniteAlgebra {
        let mut p = AlgebraPresentation::new("x^n=0", 1);
        p.add_generator("x", 0, 0, 1);
        let w = vec!["x"; n].join(" ");
        let xn = p.word(&w, 0).unwrap();
        p.add_relation(vec![(ri(1), xn)]).unwrap();
        FiniteAlgebra::from_graded(&build_graded_basis(&p, 10).unwrap())
    }

    fn mat2() -> FiniteAlgebra {
        let mut p = AlgebraPresentation::new("Mat2", 2);
        p.add_generator("a", 0, 1, 1);
        p.add_generator("b", 1, 0, 1);
        let ab = p.word("a b", 0).unwrap();
        let ba = p.word("b a", 1).unwrap();
        p.add_relation(vec![(ri(1), ab), (ri(-1), Path::idempotent(0))]).unwrap();
        p.add_relation(vec![(ri(1), ba), (ri(-1), Path::idempotent(1))]).unwrap();
        build_filtered_basis(&p, 20).unwrap().algebra
    }

    #[test]
    fn socle_of_truncated_polynomial_ring() {
        let a = loop_algebra(3);
        let s = socle(&a);
        assert_eq!(s.len(), 1);
        let x = a.generator_element(0);
        assert!(in_span(&s, &a.mul(&x, &x), a.dim()));
    }

    #[test]
    fn semisimple_matrix_algebra() {
        let a = mat2();
        assert_eq!(a.dim(), 4);
        assert_eq!(socle(&a).len(), 4);
        assert_eq!(trace_form_rank(&a), 4);
        assert!(radical(&a).is_empty());
    }

    #[test]
    fn trace_form_of_dual_numbers() {
        assert_eq!(trace_form_rank(&loop_algebra(2)), 1);
    }

    #[test]
    fn frobenius_on_truncated_polynomials() {
        let r = frobenius_check(&loop_algebra(3), 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.permutation, Some(vec![0]));
    }

    #[test]
    fn asymmetric_hilbert_series_rejected() {
        let mut p = AlgebraPresentation::new("xy", 1);
        p.add_generator("x", 0, 0, 1);
        p.add_generator("y", 0, 0, 1);
        for w in ["x y", "y x", "x x", "y y"] {
            let path = p.word(w, 0).unwrap();
            p.add_relation(vec![(ri(1), path)]).unwrap();
        }
        let a = FiniteAlgebra::from_graded(&build_graded_basis(&p, 5).unwrap());
        assert!(matches!(frobenius_check(&a, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn charpoly_of_idempotent_and_zero() {
        // A_2 preprojective: e_1 a = a, a* e_1 = a*, so L_{e_1} has rank 2 on a 4-dim space
        let mut p = AlgebraPresentation::new("A2", 2);
        p.add_generator("a", 0, 1, 1);
        p.add_generator("a*", 1, 0, 1);
        let aa = p.word("a a*", 0).unwrap();
        let ba = p.word("a* a", 1).unwrap();
        p.add_relation(vec![(ri(1), aa)]).unwrap();
        p.add_relation(vec![(ri(1), ba)]).unwrap();
        let a = FiniteAlgebra::from_graded(&build_graded_basis(&p, 5).unwrap());
        let c = charpoly_of_element(&a, &a.idempotent(0));
        assert_eq!(c.factorization.root_values, vec![(ri(0), 2), (ri(1), 2)]);
        let z = charpoly_of_element(&a, &QVec::new());
        assert_eq!(z.poly, LaurentPoly::var_pow(4));
        let half = charpoly_of_element(&a, &a.scale(&a.unit, &rat(1, 2)));
        assert_eq!(half.factorization.root_values, vec![(rat(1, 2), 4)]);
    }
}
