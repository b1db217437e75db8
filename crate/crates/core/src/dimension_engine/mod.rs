//! Forward-chaining derivation of dimension values from machine-checked
//! computations, cited axioms and the comparison rules between the theories.

mod engine;
mod examples;
pub(crate) mod leaf;
mod quantity;
mod rules;
mod trace;
mod value;

pub use engine::{Derivation, KnowledgeBase, Relation, Structure};
pub use examples::{
    bredon_exceeds_others, derive, reproduce_example, ExampleBundle, EXAMPLE_IDS, MAX_AMALGAM_RANK,
    MAX_PRODUCT_FACTORS,
};
pub use leaf::{prop, BuiltinAction, Coefficients, FixturePair, LeafOutcome, LeafSpec};
pub use quantity::{DimKind, DimQuantity};
pub use rules::{rule, Rule, RuleId, RULES};
pub use trace::{Axiom, Claim, DerivationTrace, DimFact, LeafRecord, Source, TraceNode};
pub use value::{DimBounds, Extended};
