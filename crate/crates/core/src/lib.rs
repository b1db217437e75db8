//! Exact computation of relative group cohomology and equivariant
//! cohomological dimensions.

pub mod error;
pub mod exact_linalg;
pub mod finite_groups;
pub mod group_modules;
pub mod bredon;
pub mod cli;
pub mod dimension_engine;
pub mod equivariant;
pub mod nonabelian;
pub mod relative_adamson;
pub mod relative_takasu;

pub use error::{Error, Result};
