//! Modules over integral group rings, free resolutions and ordinary group cohomology.

pub mod battery;
mod group;
mod module;
mod resolution;
mod ring;

pub use group::{free_reduce, Elem, Fixture, FixtureInclusion, Group, Inclusion, PresentedGroup, Word};
pub use module::{
    augmentation_ideal, augmentation_matrix, augmentation_sequence_is_exact, permutation_module,
    right_cosets, sign_characters, GroupModule,
};
pub(crate) use resolution::{choose_generators, evaluate_dual};
pub use resolution::{
    cohomology_with, fixture_resolution, free_resolution_finite, free_resolution_finite_bounded,
    group_cohomology, resolve_module, resolve_module_bounded, standard_resolution,
    tensor_product_resolution, FreeResolution, ModuleResolution, DEFAULT_TERM_DIMENSION_BOUND,
};
pub use ring::{GroupRingElement, GroupRingMatrix};
