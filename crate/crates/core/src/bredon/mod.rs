//! Orbit categories of finite groups restricted to a family, Bredon modules,
//! free resolutions of the constant functor, Bredon cohomology, and Shapiro
//! comparisons for restriction to a subgroup.

mod module;
mod orbit;
mod resolution;
mod shapiro;

pub use module::{
    atomic_module, coinduction_fixed_points, constant_module, free_bredon_module, yoneda_module,
    BredonModule,
};
pub use orbit::{Morphism, OrbitCategory, DEFAULT_ORBIT_GROUP_BOUND};
pub use resolution::{
    bredon_cohomology, bredon_cohomology_with, free_resolution_constant,
    free_resolution_constant_bounded, BredonResolution, FreeTerm, DEFAULT_BREDON_RANK_BOUND,
};
pub use shapiro::{
    coinduce_bredon_module, restricted_category, shapiro_bredon_check, shapiro_relative_check,
    ShapiroReport,
};
