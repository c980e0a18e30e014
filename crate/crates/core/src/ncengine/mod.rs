//! Finitely presented algebras over a semisimple base: presentations, a
//! brute-force word-span oracle, the graded basis engine, filtered algebras
//! via homogenization or completion, and structural reports on the resulting
//! finite-dimensional algebras.

mod echelon;
pub mod algebra;
pub mod cache;
pub mod filtered;
pub mod graded;
pub mod groebner;
pub mod oracle;
pub mod presentation;
pub mod structure;

pub use echelon::QVec;
pub use algebra::{FiniteAlgebra, FiniteBasisElem, RegularRep};
pub use graded::{build_graded_basis, BasisElem, GradedBasisTable};
pub use oracle::{word_span_oracle, word_span_oracle_with_limit};
pub use presentation::{AlgebraPresentation, Generator, Path, Relation, RelationKind};
pub use filtered::{build_filtered_basis, build_filtered_basis_with, FilteredBasis, FilteredRoute, FilteredStrategy};
pub use groebner::{complete, GroebnerBasis};
pub use structure::{
    charpoly_of_element, frobenius_check, radical, socle, trace_form, trace_form_rank, Charpoly, FrobeniusReport,
};
pub use cache::{build_graded_basis_cached, cache_key, TableCache, CACHE_ENV, ENGINE_VERSION};
