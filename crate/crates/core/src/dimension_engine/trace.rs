use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::leaf::LeafSpec;
use super::quantity::DimQuantity;
use super::rules::{rule, RuleId};
use super::value::DimBounds;
use crate::error::{Error, Result};

/// One conclusion: a bound on a dimension, or a structural property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Claim {
    Bound { quantity: DimQuantity, value: DimBounds },
    Property { key: String, holds: bool },
}

impl Claim {
    pub fn bound(quantity: DimQuantity, value: DimBounds) -> Self {
        Claim::Bound { quantity, value }
    }

    pub fn property(key: impl Into<String>, holds: bool) -> Self {
        Claim::Property {
            key: key.into(),
            holds,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Claim::Bound { quantity, value } => {
                let (lo, hi) = (value.lo, value.hi);
                if value.is_exact() {
                    format!("{quantity} = {lo}")
                } else if value.hi.is_finite() && value.lo.finite() == Some(0) {
                    format!("{quantity} <= {hi}")
                } else if !value.hi.is_finite() {
                    format!("{quantity} >= {lo}")
                } else {
                    format!("{quantity} in [{lo}, {hi}]")
                }
            }
            Claim::Property { key, holds: true } => key.clone(),
            Claim::Property { key, holds: false } => format!("not {key}"),
        }
    }
}

/// A cited external fact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Axiom {
    pub id: String,
    pub statement: String,
    pub citation: String,
    pub claims: Vec<Claim>,
}

impl Axiom {
    pub fn new(id: &str, statement: &str, citation: &str, claims: Vec<Claim>) -> Self {
        Axiom {
            id: id.into(),
            statement: statement.into(),
            citation: citation.into(),
            claims,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.citation.trim().is_empty() {
            return Err(Error::invalid(format!("axiom {} has no citation", self.id)));
        }
        if self.claims.is_empty() {
            return Err(Error::invalid(format!("axiom {} makes no claim", self.id)));
        }
        for c in &self.claims {
            if let Claim::Bound { value, .. } = c {
                if !value.is_consistent() {
                    return Err(Error::invalid(format!("axiom {} has an empty interval", self.id)));
                }
            }
        }
        Ok(())
    }
}

/// A machine-checked computation: what was run and what it returned.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeafRecord {
    pub id: String,
    pub module: String,
    pub spec: LeafSpec,
    pub result: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum Source {
    Computation { leaf: String },
    Axiom { axiom: String },
    Rule {
        rule: RuleId,
        premises: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceNode {
    pub id: usize,
    pub claim: Claim,
    #[serde(flatten)]
    pub source: Source,
}

/// The part of a derivation that supports one fact. Machine-checked leaves and
/// cited axioms are kept in separate sections; `steps` lists every node in
/// dependency order.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DerivationTrace {
    pub computations: Vec<LeafRecord>,
    pub axioms: Vec<Axiom>,
    pub steps: Vec<TraceNode>,
}

impl DerivationTrace {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Restricts a full node list to the ancestors of `roots`.
    pub(crate) fn collect(
        nodes: &[TraceNode],
        roots: &[usize],
        leaves: &[LeafRecord],
        axioms: &[Axiom],
    ) -> DerivationTrace {
        let mut keep = BTreeSet::new();
        let mut stack: Vec<usize> = roots.to_vec();
        while let Some(i) = stack.pop() {
            if keep.insert(i) {
                if let Source::Rule { premises, .. } = &nodes[i].source {
                    stack.extend(premises);
                }
            }
        }
        let steps: Vec<TraceNode> = keep.iter().map(|&i| nodes[i].clone()).collect();
        let leaf_ids: BTreeSet<&str> = steps
            .iter()
            .filter_map(|n| match &n.source {
                Source::Computation { leaf } => Some(leaf.as_str()),
                _ => None,
            })
            .collect();
        let axiom_ids: BTreeSet<&str> = steps
            .iter()
            .filter_map(|n| match &n.source {
                Source::Axiom { axiom } => Some(axiom.as_str()),
                _ => None,
            })
            .collect();
        DerivationTrace {
            computations: leaves.iter().filter(|l| leaf_ids.contains(l.id.as_str())).cloned().collect(),
            axioms: axioms.iter().filter(|a| axiom_ids.contains(a.id.as_str())).cloned().collect(),
            steps,
        }
    }

    /// Re-executes every computation and compares with the recorded result.
    pub fn replay(&self) -> Result<Vec<(String, bool)>> {
        self.computations
            .iter()
            .map(|l| Ok((l.id.clone(), l.spec.run()?.result == l.result)))
            .collect()
    }

    pub fn replays(&self) -> Result<bool> {
        Ok(self.replay()?.iter().all(|(_, ok)| *ok))
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        if !self.computations.is_empty() {
            out.push_str("machine-checked:\n");
            for l in &self.computations {
                let _ = writeln!(out, "  [{}] {} ({})", l.id, l.spec.describe(), l.module);
            }
        }
        if !self.axioms.is_empty() {
            out.push_str("cited axioms:\n");
            for a in &self.axioms {
                let _ = writeln!(out, "  [{}] {}\n      cited: {}", a.id, a.statement, a.citation);
            }
        }
        out.push_str("derivation:\n");
        for n in &self.steps {
            let why = match &n.source {
                Source::Computation { leaf } => format!("computed [{leaf}]"),
                Source::Axiom { axiom } => format!("axiom [{axiom}]"),
                Source::Rule { rule: id, premises, note } => {
                    let r = rule(*id);
                    let from: Vec<String> = premises.iter().map(|p| format!("#{p}")).collect();
                    let mut s = format!("{id} {} from {}; {}", r.name, from.join(", "), r.anchor);
                    if let Some(note) = note {
                        let _ = write!(s, "; {note}");
                    }
                    s
                }
            };
            let _ = writeln!(out, "  #{} {}  <= {}", n.id, n.claim.render(), why);
        }
        out
    }
}

/// A derived value with the derivation behind it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimFact {
    pub quantity: DimQuantity,
    pub value: DimBounds,
    pub trace: DerivationTrace,
}

impl DimFact {
    pub fn unknown(quantity: DimQuantity) -> Self {
        DimFact {
            quantity,
            value: DimBounds::UNKNOWN,
            trace: DerivationTrace::default(),
        }
    }

    pub fn render_text(&self) -> String {
        format!("{} = {}\n{}", self.quantity, self.value, self.trace.render_text())
    }
}
