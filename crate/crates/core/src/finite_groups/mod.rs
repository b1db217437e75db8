//! Finite groups as multiplication tables, their subgroups, and families of subgroups.

mod action;
mod builtins;
mod group;
mod subgroups;

pub use action::{power_automorphism, semidirect_product, GroupAction, SemidirectProduct};
pub use builtins::{
    alternating, builtin, cyclic, dihedral, direct_product, permutation_group, symmetric, trivial,
};
pub use group::{is_prime, prime_factors, FiniteGroup, DEFAULT_ORDER_BOUND};
pub use subgroups::{
    all_subgroups, all_subgroups_family, class_representative, conjugacy_classes_of,
    family_generated_by, family_generated_by_all, p_subgroups, proper_subgroups_family, quotient,
    subgroup_list, subgroup_list_bounded, sylow, trivial_family, ConjugacyClass, Subgroup,
    SubgroupFamily,
};
