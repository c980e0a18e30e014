//! Exact and numerical verification workbench for centrally extended
//! preprojective algebras of ADE quivers, their spherical corners, the quantum
//! Heisenberg algebra, Verlinde fusion data, and the 2-dimensional exceptional
//! complex reflection groups with their Hecke algebras.

pub mod cli;
pub mod error;
pub mod exact;
pub mod ncengine;
pub mod preproj;
pub mod qfusion;
pub mod refl;
pub mod report;
pub mod rh;
pub mod rootdata;

pub use error::{Error, Result};
