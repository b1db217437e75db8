//! Relative cohomology with respect to a family of subgroups, computed from the
//! relative bar resolution on the disjoint union of coset spaces, together with
//! relative projectivity tests and splitting by averaging over Sylow subgroups.

mod bar;
mod projectivity;
mod splitting;

pub use bar::{
    adamson_cohomology, adamson_cohomology_family, BarVariant, CosetSpace, RelativeResolution,
    DEFAULT_TUPLE_BOUND,
};
pub use projectivity::{
    mod_p_euler_obstruction, relative_projectivity_test, verify_certificate, EulerObstruction,
    ProjectivityCertificate, ProjectivityRefutation, ProjectivityVerdict,
};
pub use splitting::{
    augmentation_test_epimorphism, average_splitting, bezout_coefficients, relative_trace,
    AveragedSection,
};

use crate::exact_linalg::IntegerMatrix;
use crate::finite_groups::Subgroup;
use crate::group_modules::GroupModule;

/// A section of an epimorphism that is equivariant for a subgroup.
#[derive(Clone, Debug, PartialEq)]
pub struct SplittingWitness {
    pub epimorphism: IntegerMatrix,
    pub section: IntegerMatrix,
    pub equivariance_scope: Subgroup,
}

impl SplittingWitness {
    /// `π s = id` and `s` commutes with the action of the scope.
    pub fn verify_against(&self, source: &GroupModule, target: &GroupModule) -> bool {
        let (pi, s) = (&self.epimorphism, &self.section);
        if pi.rows() != target.rank()
            || pi.cols() != source.rank()
            || s.rows() != source.rank()
            || s.cols() != target.rank()
        {
            return false;
        }
        if pi * s != IntegerMatrix::identity(target.rank()) {
            return false;
        }
        self.equivariance_scope
            .elements()
            .iter()
            .all(|&h| source.letter_matrix(h) * s == s * target.letter_matrix(h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::FgAbelianGroup;
    use crate::finite_groups::{cyclic, proper_subgroups_family, symmetric, sylow, FiniteGroup};
    use crate::group_modules::battery::{battery, DEFAULT_BATTERY, DEFAULT_SEED};
    use crate::group_modules::{group_cohomology, sign_characters, Group};

    fn trivial(k: &FiniteGroup) -> GroupModule {
        GroupModule::trivial(Group::finite(k.clone()), 1)
    }

    fn z() -> FgAbelianGroup {
        FgAbelianGroup::free(1)
    }

    #[test]
    fn whole_group_in_family_is_acyclic() {
        let k = symmetric(3).unwrap();
        let h = adamson_cohomology(&k, &[Subgroup::whole(&k)], &trivial(&k), 3).unwrap();
        assert_eq!(h[0], z());
        assert!(h[1..].iter().all(FgAbelianGroup::is_zero));
    }

    #[test]
    fn standard_ranks_for_c6_proper_family() {
        let k = cyclic(6);
        let gens = proper_subgroups_family(&k).unwrap().maximal_class_representatives(&k);
        let bar = RelativeResolution::new(&k, &gens, 2, BarVariant::Standard).unwrap();
        assert_eq!(bar.omega().len(), 5);
        assert_eq!(&bar.ranks()[..2], &[5, 25]);
        assert!((&bar.differential(1) * &bar.differential(2)).is_zero());
        assert!((&bar.augmentation() * &bar.differential(1)).is_zero());
    }

    #[test]
    fn trivial_subgroup_recovers_group_cohomology() {
        for n in [2usize, 3] {
            let k = cyclic(n);
            let m = trivial(&k);
            let rel = adamson_cohomology(&k, &[Subgroup::trivial(&k)], &m, 4).unwrap();
            let abs = group_cohomology(&m, 4).unwrap();
            assert_eq!(rel, abs);
        }
    }

    #[test]
    fn normal_subgroup_reduces_to_quotient() {
        let k = cyclic(6);
        let c3 = sylow(&k, 3).unwrap();
        let rel = adamson_cohomology(&k, &[c3], &trivial(&k), 4).unwrap();
        let c2 = cyclic(2);
        assert_eq!(rel, group_cohomology(&trivial(&c2), 4).unwrap());
    }

    #[test]
    fn proper_family_of_c6_vanishes_on_battery() {
        let k = cyclic(6);
        let gens = proper_subgroups_family(&k).unwrap().maximal_class_representatives(&k);
        for bm in battery(DEFAULT_BATTERY, &k, DEFAULT_SEED).unwrap().into_iter().take(4) {
            let h = adamson_cohomology(&k, &gens, &bm.module, 2).unwrap();
            assert!(h[1..].iter().all(FgAbelianGroup::is_zero), "{}", bm.name);
        }
    }

    #[test]
    fn contraction_and_witnesses() {
        let k = symmetric(3).unwrap();
        let gens = vec![sylow(&k, 2).unwrap(), sylow(&k, 3).unwrap()];
        for variant in [BarVariant::Standard, BarVariant::Normalized] {
            let bar = RelativeResolution::new(&k, &gens, 2, variant).unwrap();
            for i in 0..gens.len() {
                assert!(bar.verify_contraction(i).unwrap());
                let w = bar.splitting_witness(i);
                assert!(w.verify_against(&bar.term(0).unwrap(), &trivial(&k)));
            }
        }
    }

    #[test]
    fn standard_and_normalized_agree() {
        let k = symmetric(3).unwrap();
        let gens = vec![sylow(&k, 2).unwrap()];
        let m = GroupModule::character(Group::finite(k.clone()), &sign_characters(&k)[1]).unwrap();
        for module in [trivial(&k), m] {
            let a = RelativeResolution::new(&k, &gens, 3, BarVariant::Standard).unwrap();
            let b = RelativeResolution::new(&k, &gens, 3, BarVariant::Normalized).unwrap();
            let (ca, cb) = (a.hom_complex(&module).unwrap(), b.hom_complex(&module).unwrap());
            for i in 0..3 {
                assert_eq!(ca.cohomology_at(i).unwrap(), cb.cohomology_at(i).unwrap());
            }
        }
    }
}
