//! Γ-groups built from Γ-sets and flag complexes: fixed-point data, the
//! classification of equivariant dimension one, Cayley trees of free Γ-groups,
//! equivariant spanning trees, and the Klein bottle pair.

mod cayley;
mod classify;
mod complex;
mod gamma_set;
mod klein;
mod spanning;

pub use cayley::{
    act_on_word, cayley_ball, format_word, invert, reduce_product, CayleyBall, CayleyBallReport, CayleyEdge,
    EdgeStabilizerWitness, Word, MAX_CAYLEY_RADIUS,
};
pub use classify::{
    classify_gamma_group, ClassificationReport, GammaGroupSpec, Verdict, CITE_BREDON_STALLINGS_SWAN,
    CITE_FIXED_POINT_CRITERION, CITE_FREE_SET, CITE_GAMMA_FREE_DEFINITION, CITE_H1_CRITERION,
    CITE_INASSARIDZE_CRITERION, CITE_INASSARIDZE_DICHOTOMY, CITE_MINIMAL_SUBGROUP_OBSTRUCTION,
    CITE_TAKASU_STALLINGS_SWAN, CITE_TRIVIAL_GROUP,
};
pub use complex::{
    c6_five_point_action, fixed_subcomplex, ln_classify, subgroup_label, BestvinaBradyInput, ClassVerdict,
    ComplexAction, FixedPointPattern, FlagComplex, LnClassification,
};
pub use gamma_set::GammaSet;
pub use klein::{klein_pair, ConjugatePower, KleinElement, KleinReport, MAX_KLEIN_EXPONENT, MAX_KLEIN_SYLLABLES};
pub use spanning::{
    antipodal_square, equivariant_spanning_tree, equivariant_spanning_tree_bounded, verify_spanning_tree,
    GraphAction, SpanningTreeReport, DEFAULT_EDGE_ORBIT_BOUND,
};
