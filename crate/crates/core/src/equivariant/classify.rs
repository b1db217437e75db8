use serde::Serialize;

use super::complex::{ln_classify, BestvinaBradyInput, LnClassification};
use super::gamma_set::GammaSet;
use crate::dimension_engine::DimBounds;
use crate::error::Result;
use crate::finite_groups::FiniteGroup;

pub const CITE_GAMMA_FREE_DEFINITION: &str =
    "Γ-free: a free group with a basis that the acting group permutes";
pub const CITE_FREE_SET: &str = "a Γ-set is free exactly when every point stabilizer is trivial";
pub const CITE_FIXED_POINT_CRITERION: &str =
    "Leary–Nucinkis: for an effective admissible action on a nonempty finite flag complex L, H¹(P; H_L) is trivial iff L^P is nonempty";
pub const CITE_H1_CRITERION: &str =
    "a free Γ-group over finite Γ is Γ-free iff H¹(P; G) is trivial for every subgroup P";
pub const CITE_BREDON_STALLINGS_SWAN: &str =
    "equivariant Stallings–Swan (Bredon): cd_G(G⋊Γ) <= 1 iff G is Γ-free, for finite Γ";
pub const CITE_INASSARIDZE_CRITERION: &str =
    "for G free and Γ finite, cd([G⋊Γ:Γ]) <= 1 iff H¹(P; G) is trivial for every p-subgroup P";
pub const CITE_INASSARIDZE_DICHOTOMY: &str =
    "for Γ finite and G a nontrivial free Γ-group, cd([G⋊Γ:Γ]) is either 1 or ∞";
pub const CITE_MINIMAL_SUBGROUP_OBSTRUCTION: &str =
    "a p-subgroup with nontrivial H¹ yields a finite subgroup outside the family whose proper-subgroup family has infinite relative dimension";
pub const CITE_TAKASU_STALLINGS_SWAN: &str =
    "equivariant Stallings–Swan (Takasu): cd(G⋊Γ, Γ) <= 1 iff G is free with basis a free Γ-set";
pub const CITE_TRIVIAL_GROUP: &str = "the trivial Γ-group has every equivariant dimension 0";

/// A Γ-group presented by one of the constructions the classifier understands.
#[derive(Clone, Debug)]
pub enum GammaGroupSpec {
    /// The free group on a Γ-set.
    FreeWithBasis(GammaSet),
    /// The Bestvina–Brady kernel `H_L` of a flag complex with a Γ-action.
    BestvinaBrady(BestvinaBradyInput),
    /// A free group of the given rank with trivial Γ-action.
    TrivialAction { gamma: FiniteGroup, rank: usize },
}

impl GammaGroupSpec {
    pub fn gamma(&self) -> &FiniteGroup {
        match self {
            GammaGroupSpec::FreeWithBasis(s) => s.group(),
            GammaGroupSpec::BestvinaBrady(b) => b.group(),
            GammaGroupSpec::TrivialAction { gamma, .. } => gamma,
        }
    }
}

/// A value together with the result it rests on. `None` means undetermined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict<T> {
    pub value: T,
    pub citations: Vec<&'static str>,
}

impl<T> Verdict<T> {
    fn new(value: T, citations: &[&'static str]) -> Self {
        Verdict {
            value,
            citations: citations.to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub gamma_free: Verdict<Option<bool>>,
    pub strongly_gamma_free: Verdict<Option<bool>>,
    pub inassaridze_dim: Verdict<DimBounds>,
    pub bredon_dim_le_1: Verdict<Option<bool>>,
    pub cco_dim_le_1: Verdict<Option<bool>>,
    /// Per-class `H¹` verdicts when the fixed-point criterion was used.
    pub h1: Option<LnClassification>,
}

impl ClassificationReport {
    /// strongly Γ-free ⟹ Γ-free ⟹ Inassaridze dimension at most 1.
    pub fn is_consistent(&self) -> bool {
        let strong_ok = self.strongly_gamma_free.value != Some(true) || self.gamma_free.value == Some(true);
        let free_ok = self.gamma_free.value != Some(true)
            || self.inassaridze_dim.value.hi <= crate::dimension_engine::Extended::Finite(1);
        let bredon_ok = self.bredon_dim_le_1.value == self.gamma_free.value;
        let cco_ok = self.cco_dim_le_1.value == self.strongly_gamma_free.value;
        strong_ok && free_ok && bredon_ok && cco_ok
    }
}

fn from_basis(basis: &GammaSet) -> ClassificationReport {
    if basis.is_empty() {
        return trivial_group_report();
    }
    let strongly = basis.is_free();
    ClassificationReport {
        gamma_free: Verdict::new(Some(true), &[CITE_GAMMA_FREE_DEFINITION]),
        strongly_gamma_free: Verdict::new(Some(strongly), &[CITE_FREE_SET]),
        inassaridze_dim: Verdict::new(
            DimBounds::exact(1),
            &[CITE_H1_CRITERION, CITE_INASSARIDZE_CRITERION, CITE_INASSARIDZE_DICHOTOMY],
        ),
        bredon_dim_le_1: Verdict::new(Some(true), &[CITE_BREDON_STALLINGS_SWAN]),
        cco_dim_le_1: Verdict::new(Some(strongly), &[CITE_TAKASU_STALLINGS_SWAN]),
        h1: None,
    }
}

fn trivial_group_report() -> ClassificationReport {
    ClassificationReport {
        gamma_free: Verdict::new(Some(true), &[CITE_TRIVIAL_GROUP]),
        strongly_gamma_free: Verdict::new(Some(true), &[CITE_TRIVIAL_GROUP]),
        inassaridze_dim: Verdict::new(DimBounds::exact(0), &[CITE_TRIVIAL_GROUP]),
        bredon_dim_le_1: Verdict::new(Some(true), &[CITE_TRIVIAL_GROUP]),
        cco_dim_le_1: Verdict::new(Some(true), &[CITE_TRIVIAL_GROUP]),
        h1: None,
    }
}

fn from_bestvina_brady(input: &BestvinaBradyInput) -> Result<ClassificationReport> {
    if input.vertex_count().is_some_and(|n| n <= 1) {
        return Ok(trivial_group_report());
    }
    let ln = ln_classify(input)?;
    let free = input.is_discrete();
    let all_trivial = ln.trivial_everywhere();
    let p_trivial = ln.trivial_on_p_subgroups();

    let gamma_free = match (all_trivial, free) {
        (false, _) => Verdict::new(Some(false), &[CITE_FIXED_POINT_CRITERION, CITE_H1_CRITERION]),
        (true, true) => Verdict::new(Some(true), &[CITE_FIXED_POINT_CRITERION, CITE_H1_CRITERION]),
        (true, false) => Verdict::new(None, &[CITE_FIXED_POINT_CRITERION]),
    };
    let inassaridze_dim = match (p_trivial, free) {
        (false, _) => Verdict::new(
            DimBounds::infinite(),
            &[CITE_FIXED_POINT_CRITERION, CITE_MINIMAL_SUBGROUP_OBSTRUCTION],
        ),
        (true, true) => Verdict::new(
            DimBounds::exact(1),
            &[CITE_FIXED_POINT_CRITERION, CITE_INASSARIDZE_CRITERION, CITE_INASSARIDZE_DICHOTOMY],
        ),
        (true, false) => Verdict::new(DimBounds::at_least(1), &[CITE_FIXED_POINT_CRITERION]),
    };
    let strongly = match gamma_free.value {
        Some(false) => Some(false),
        _ if input.group().order() == 1 && free => Some(true),
        _ => None,
    };
    Ok(ClassificationReport {
        bredon_dim_le_1: Verdict::new(gamma_free.value, &[CITE_BREDON_STALLINGS_SWAN]),
        gamma_free,
        strongly_gamma_free: Verdict::new(strongly, &[CITE_GAMMA_FREE_DEFINITION]),
        inassaridze_dim,
        cco_dim_le_1: Verdict::new(strongly, &[CITE_TAKASU_STALLINGS_SWAN]),
        h1: Some(ln),
    })
}

/// Decides which of the three equivariant dimensions are at most one.
pub fn classify_gamma_group(spec: &GammaGroupSpec) -> Result<ClassificationReport> {
    match spec {
        GammaGroupSpec::FreeWithBasis(basis) => Ok(from_basis(basis)),
        GammaGroupSpec::TrivialAction { gamma, rank } => {
            let labels = (1..=*rank).map(|i| format!("s{i}")).collect();
            Ok(from_basis(&GammaSet::trivial(gamma, labels)))
        }
        GammaGroupSpec::BestvinaBrady(input) => from_bestvina_brady(input),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension_engine::Extended;
    use crate::equivariant::complex::{c6_five_point_action, FixedPointPattern};
    use crate::finite_groups::{alternating, cyclic};

    #[test]
    fn swapped_pair_is_strongly_free() {
        let c2 = cyclic(2);
        let basis = GammaSet::new(&c2, vec!["s1".into(), "s2".into()], &[(1, vec![1, 0])]).unwrap();
        let r = classify_gamma_group(&GammaGroupSpec::FreeWithBasis(basis)).unwrap();
        assert_eq!(r.strongly_gamma_free.value, Some(true));
        assert_eq!(r.bredon_dim_le_1.value, Some(true));
        assert_eq!(r.cco_dim_le_1.value, Some(true));
        assert_eq!(r.inassaridze_dim.value, DimBounds::exact(1));
        assert!(r.is_consistent());
    }

    #[test]
    fn c6_bestvina_brady() {
        let spec = GammaGroupSpec::BestvinaBrady(BestvinaBradyInput::Complex(c6_five_point_action()));
        let r = classify_gamma_group(&spec).unwrap();
        assert_eq!(r.inassaridze_dim.value, DimBounds::exact(1));
        assert_eq!(r.bredon_dim_le_1.value, Some(false));
        assert_eq!(r.gamma_free.value, Some(false));
        assert!(r.is_consistent());
    }

    #[test]
    fn c6_permuting_a_rank_five_basis() {
        let basis = c6_five_point_action().vertex_action().clone();
        let r = classify_gamma_group(&GammaGroupSpec::FreeWithBasis(basis)).unwrap();
        assert_eq!(r.gamma_free.value, Some(true));
        assert_eq!(r.bredon_dim_le_1.value, Some(true));
        assert_eq!(r.strongly_gamma_free.value, Some(false));
        assert_eq!(r.cco_dim_le_1.value, Some(false));
    }

    #[test]
    fn a5_pattern_and_trivial_actions() {
        let a5 = alternating(5).unwrap();
        let p = FixedPointPattern::proper_subgroups_only(&a5).unwrap();
        let r = classify_gamma_group(&GammaGroupSpec::BestvinaBrady(BestvinaBradyInput::Pattern(p))).unwrap();
        assert_eq!(r.inassaridze_dim.value.exact_value(), Some(Extended::Finite(1)));
        assert_eq!(r.bredon_dim_le_1.value, Some(false));

        let t = classify_gamma_group(&GammaGroupSpec::TrivialAction { gamma: cyclic(3), rank: 2 }).unwrap();
        assert_eq!(t.gamma_free.value, Some(true));
        assert_eq!(t.strongly_gamma_free.value, Some(false));
        let t0 = classify_gamma_group(&GammaGroupSpec::TrivialAction { gamma: cyclic(3), rank: 0 }).unwrap();
        assert_eq!(t0.inassaridze_dim.value, DimBounds::exact(0));
    }
}
