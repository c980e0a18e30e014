//! Filtered (inhomogeneous) presentations.
//!
//! The main route homogenizes with a central degree-1 loop `t` and runs the
//! graded engine. Once multiplication by `t` is bijective on a window of
//! consecutive degrees, the component `A_hom[N]` is identified with the
//! filtered algebra (`t = 1`) and `t^{N-n} A_hom[n]` with the filtration piece
//! `F_n`. When the leading-term algebra is infinite this never stabilizes and
//! the completion route is used instead.

use super::algebra::{FiniteAlgebra, FiniteBasisElem};
use super::echelon::QVec;
use super::graded::{apply, build_graded_basis, GradedBasisTable};
use super::groebner::{complete_with_limits, CompletionLimits};
use super::presentation::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::exact::{QMatrix, Rational, Rationals, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FilteredRoute {
    Homogenization { stable_degree: usize },
    Completion { basis_size: usize },
}

#[derive(Clone, Debug)]
pub struct FilteredBasis {
    pub algebra: FiniteAlgebra,
    /// Dimensions of the associated graded algebra.
    pub gr_dims: Vec<usize>,
    pub total_dim: usize,
    pub route: FilteredRoute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FilteredStrategy {
    Homogenization,
    Completion,
    /// Homogenization first, completion if it does not stabilize.
    Auto,
}

pub fn build_filtered_basis(p: &AlgebraPresentation, top_degree: usize) -> Result<FilteredBasis> {
    build_filtered_basis_with(p, top_degree, FilteredStrategy::Auto)
}

pub fn build_filtered_basis_with(
    p: &AlgebraPresentation,
    top_degree: usize,
    strategy: FilteredStrategy,
) -> Result<FilteredBasis> {
    match strategy {
        FilteredStrategy::Homogenization => via_homogenization(p, top_degree),
        FilteredStrategy::Completion => via_completion(p),
        FilteredStrategy::Auto => match via_homogenization(p, top_degree) {
            Err(Error::NonTermination(_)) => via_completion(p),
            other => other,
        },
    }
}

fn via_completion(p: &AlgebraPresentation) -> Result<FilteredBasis> {
    let limits = CompletionLimits::default();
    let gb = complete_with_limits(p, limits.clone())?;
    let mut algebra = gb.to_finite_algebra(limits.max_normal_words)?;
    algebra.graded = p.is_homogeneous();
    let gr_dims = algebra.degree_dims();
    Ok(FilteredBasis {
        total_dim: algebra.dim(),
        gr_dims: if algebra.dim() == 0 { vec![] } else { gr_dims },
        algebra,
        route: FilteredRoute::Completion {
            basis_size: gb.elements.len(),
        },
    })
}

/// Matrix of multiplication by `t = sum_v t_v` from degree `n` to `n + 1`.
fn t_matrix(table: &GradedBasisTable, r: usize, n: usize) -> QMatrix {
    let rows = table.components[n + 1].len();
    let cols = table.components[n].len();
    let mut m = QMatrix::zeros(rows, cols);
    for j in 0..cols {
        let mut img = QVec::new();
        for v in 0..r {
            img = img.axpy(&Rationals, &Rational::from_integer(1.into()), &table.right[n][v][j]);
        }
        for (i, c) in &img.entries {
            m[(*i, j)] = c.clone();
        }
    }
    m
}

fn via_homogenization(p: &AlgebraPresentation, top_degree: usize) -> Result<FilteredBasis> {
    p.validate()?;
    let r = p.num_vertices;
    let h = p.homogenize()?;
    let table = build_graded_basis(&h, top_degree)?;
    let dims = table.dims();
    if table.terminated {
        // t is nilpotent, so t - 1 is invertible and the quotient vanishes
        return Ok(FilteredBasis {
            algebra: FiniteAlgebra {
                name: p.name.clone(),
                num_vertices: r,
                generators: p.generators.clone(),
                basis: vec![],
                right: vec![vec![]; p.generators.len()],
                unit: QVec::new(),
                graded: false,
                central: p.central.clone(),
            },
            gr_dims: vec![],
            total_dim: 0,
            route: FilteredRoute::Homogenization { stable_degree: dims.len() - 1 },
        });
    }
    let maxd = p.max_generator_degree() as usize;
    let window = 2 * maxd + 2;
    let top = table.max_computed_degree();
    let bijective = |n: usize| dims[n] == dims[n + 1] && t_matrix(&table, r, n).rank() == dims[n];
    let mut stable = None;
    let mut n = 0;
    while n + window <= top {
        if (n..n + window).all(|k| dims[k] == dims[n]) && (n..n + window).all(bijective) {
            stable = Some(n);
            break;
        }
        n += 1;
    }
    let big_n = stable.ok_or_else(|| {
        Error::NonTermination(format!(
            "homogenized dimensions did not stabilize by degree {top_degree}: {:?}",
            &dims[dims.len().saturating_sub(8)..]
        ))
    })?;
    let dim = dims[big_n];

    // inverse of t^d from degree N to N + d, for each generator degree
    let mut t_inv: Vec<Option<QMatrix>> = vec![None; maxd + 1];
    for d in 1..=maxd {
        let mut m = QMatrix::identity(dim);
        for k in 0..d {
            m = &t_matrix(&table, r, big_n + k) * &m;
        }
        t_inv[d] = Some(m.inverse().ok_or_else(|| Error::Singular("t^d not invertible on stable window".into()))?);
    }
    let to_sparse = |v: Vec<Rational>| super::algebra::sparse(&v);
    let right: Vec<Vec<QVec>> = (0..p.generators.len())
        .map(|g| {
            let d = p.generators[g].degree as usize;
            let inv = t_inv[d].as_ref().expect("computed");
            (0..dim)
                .map(|j| {
                    let img = &table.right[big_n][g + r][j];
                    let dense = super::algebra::dense(img, dim);
                    to_sparse(inv.mul_vec(&dense))
                })
                .collect()
        })
        .collect();
    let basis: Vec<FiniteBasisElem> = table.components[big_n]
        .iter()
        .map(|b| {
            let word: Vec<usize> = b.word.iter().filter(|&&g| g >= r).map(|&g| g - r).collect();
            let degree = word.iter().map(|&g| p.generators[g].degree as usize).sum();
            FiniteBasisElem {
                word,
                source: b.source,
                target: b.target,
                degree,
            }
        })
        .collect();
    let mut unit = QVec::new();
    for v in 0..r {
        let mut x = SparseVec::unit(&Rationals, v);
        for k in 0..big_n {
            x = apply(&table.right[k][v], &x);
        }
        unit = unit.axpy(&Rationals, &Rational::from_integer(1.into()), &x);
    }
    // dim F_n = rank of t^{N-n}: A_hom[n] -> A_hom[N]
    let mut f_dims = vec![0; big_n + 1];
    let mut m = QMatrix::identity(dims[big_n]);
    for n in (0..=big_n).rev() {
        f_dims[n] = m.rank();
        if n > 0 {
            m = &m * &t_matrix(&table, r, n - 1);
        }
    }
    let mut gr_dims: Vec<usize> = f_dims
        .iter()
        .enumerate()
        .map(|(n, &f)| f - if n == 0 { 0 } else { f_dims[n - 1] })
        .collect();
    while gr_dims.len() > 1 && gr_dims.last() == Some(&0) {
        gr_dims.pop();
    }
    let algebra = FiniteAlgebra {
        name: p.name.clone(),
        num_vertices: r,
        generators: p.generators.clone(),
        basis,
        right,
        unit,
        graded: p.is_homogeneous(),
        central: p.central.clone(),
    };
    Ok(FilteredBasis {
        total_dim: dim,
        gr_dims,
        algebra,
        route: FilteredRoute::Homogenization { stable_degree: big_n },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ri;
    use crate::ncengine::presentation::Path;

    fn mat2() -> AlgebraPresentation {
        let mut p = AlgebraPresentation::new("Mat2", 2);
        p.add_generator("a", 0, 1, 1);
        p.add_generator("b", 1, 0, 1);
        let ab = p.word("a b", 0).unwrap();
        let ba = p.word("b a", 1).unwrap();
        p.add_relation(vec![(ri(1), ab), (ri(-1), Path::idempotent(0))]).unwrap();
        p.add_relation(vec![(ri(1), ba), (ri(-1), Path::idempotent(1))]).unwrap();
        p
    }

    #[test]
    fn matrix_algebra_both_routes() {
        let p = mat2();
        let h = build_filtered_basis_with(&p, 20, FilteredStrategy::Homogenization).unwrap();
        let c = build_filtered_basis_with(&p, 20, FilteredStrategy::Completion).unwrap();
        assert_eq!(h.total_dim, 4);
        assert_eq!(c.total_dim, 4);
        assert_eq!(h.gr_dims, vec![2, 2]);
        assert_eq!(h.gr_dims, c.gr_dims);
        assert_eq!(h.algebra.degree_dims(), h.gr_dims);
        assert!(h.algebra.failing_relations(&p).is_empty());
        assert_eq!(h.algebra.associativity_failures(100, 11), 0);
    }

    #[test]
    fn deformed_nilpotent_loop() {
        // x^3 = x: semisimple, dimension 3, gr = k[x]/x^3
        let mut p = AlgebraPresentation::new("x3=x", 1);
        p.add_generator("x", 0, 0, 1);
        let x3 = p.word("x x x", 0).unwrap();
        let x1 = p.word("x", 0).unwrap();
        p.add_relation(vec![(ri(1), x3), (ri(-1), x1)]).unwrap();
        let f = build_filtered_basis(&p, 20).unwrap();
        assert_eq!(f.total_dim, 3);
        assert_eq!(f.gr_dims, vec![1, 1, 1]);
        assert!(matches!(f.route, FilteredRoute::Homogenization { .. }));
    }

    #[test]
    fn contradictory_relations_give_zero() {
        let mut p = AlgebraPresentation::new("x=1,x^2=0", 1);
        p.add_generator("x", 0, 0, 1);
        let x = p.word("x", 0).unwrap();
        let x2 = p.word("x x", 0).unwrap();
        p.add_relation(vec![(ri(1), x), (ri(-1), Path::idempotent(0))]).unwrap();
        p.add_relation(vec![(ri(1), x2)]).unwrap();
        assert_eq!(build_filtered_basis(&p, 20).unwrap().total_dim, 0);
        assert_eq!(build_filtered_basis_with(&p, 20, FilteredStrategy::Completion).unwrap().total_dim, 0);
    }
}
