//! JSON input documents for Γ-sets, complexes, patterns and graphs.

use serde::{Deserialize, Serialize};

use super::parse::finite_group;
use crate::equivariant::{
    antipodal_square, c6_five_point_action, BestvinaBradyInput, ComplexAction, FixedPointPattern, FlagComplex,
    GammaGroupSpec, GammaSet, GraphAction,
};
use crate::error::{Error, Result};
use crate::finite_groups::FiniteGroup;

/// A finite group acting on labelled points; each generator entry is an
/// element index with the permutation it induces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaSetInput {
    pub group: String,
    pub labels: Vec<String>,
    #[serde(default)]
    pub generators: Vec<(usize, Vec<usize>)>,
}

impl GammaSetInput {
    pub fn build(&self) -> Result<(FiniteGroup, GammaSet)> {
        let g = finite_group(&self.group)?;
        let set = if self.generators.is_empty() {
            GammaSet::trivial(&g, self.labels.clone())
        } else {
            GammaSet::new(&g, self.labels.clone(), &self.generators)?
        };
        Ok((g, set))
    }
}

/// A Γ-group for the classifier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GammaGroupInput {
    /// The free group on a Γ-set.
    FreeBasis {
        group: String,
        labels: Vec<String>,
        #[serde(default)]
        generators: Vec<(usize, Vec<usize>)>,
    },
    /// The Bestvina–Brady kernel of a flag complex given by maximal simplices.
    Complex {
        group: String,
        labels: Vec<String>,
        simplices: Vec<Vec<usize>>,
        #[serde(default)]
        generators: Vec<(usize, Vec<usize>)>,
    },
    /// The Bestvina–Brady kernel of a 0-dimensional complex, known only through
    /// which subgroup classes fix a point.
    Pattern {
        group: String,
        nonempty_classes: Vec<usize>,
    },
    /// A free group of the given rank with trivial action.
    TrivialAction { group: String, rank: usize },
}

impl GammaGroupInput {
    pub fn build(&self) -> Result<GammaGroupSpec> {
        Ok(match self {
            GammaGroupInput::FreeBasis {
                group,
                labels,
                generators,
            } => {
                let (_, set) = GammaSetInput {
                    group: group.clone(),
                    labels: labels.clone(),
                    generators: generators.clone(),
                }
                .build()?;
                GammaGroupSpec::FreeWithBasis(set)
            }
            GammaGroupInput::Complex {
                group,
                labels,
                simplices,
                generators,
            } => {
                let (_, set) = GammaSetInput {
                    group: group.clone(),
                    labels: labels.clone(),
                    generators: generators.clone(),
                }
                .build()?;
                let complex = FlagComplex::new(labels.clone(), simplices)?;
                GammaGroupSpec::BestvinaBrady(BestvinaBradyInput::Complex(ComplexAction::new(complex, set)?))
            }
            GammaGroupInput::Pattern {
                group,
                nonempty_classes,
            } => {
                let g = finite_group(group)?;
                GammaGroupSpec::BestvinaBrady(BestvinaBradyInput::Pattern(FixedPointPattern::from_nonempty_classes(
                    &g,
                    nonempty_classes,
                )?))
            }
            GammaGroupInput::TrivialAction { group, rank } => GammaGroupSpec::TrivialAction {
                gamma: finite_group(group)?,
                rank: *rank,
            },
        })
    }
}

/// A graph with a vertex action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphInput {
    pub group: String,
    pub labels: Vec<String>,
    #[serde(default)]
    pub generators: Vec<(usize, Vec<usize>)>,
    pub edges: Vec<(usize, usize)>,
}

impl GraphInput {
    pub fn build(&self) -> Result<GraphAction> {
        let (_, set) = GammaSetInput {
            group: self.group.clone(),
            labels: self.labels.clone(),
            generators: self.generators.clone(),
        }
        .build()?;
        GraphAction::new(set, &self.edges)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &str) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::invalid(format!("{path}: {e}")))
}

pub const BUILTIN_GAMMA_GROUPS: &[&str] = &["c6-five-point-kernel", "c6-five-point-free", "c2-free", "c2-fixed-point"];
pub const BUILTIN_GAMMA_SETS: &[&str] = &["c6-five-point", "c2-free", "c2-fixed-point"];
pub const BUILTIN_GRAPHS: &[&str] = &["antipodal-square"];

fn c2_set(fixed_point: bool) -> GammaSet {
    let c2 = crate::finite_groups::cyclic(2);
    let (labels, perm) = if fixed_point {
        (vec!["x", "y", "z"], vec![1, 0, 2])
    } else {
        (vec!["x", "y"], vec![1, 0])
    };
    GammaSet::new(&c2, labels.into_iter().map(String::from).collect(), &[(1, perm)]).expect("valid C2-set")
}

pub fn builtin_gamma_set(name: &str) -> Result<GammaSet> {
    match name {
        "c6-five-point" => Ok(c6_five_point_action().vertex_action().clone()),
        "c2-free" => Ok(c2_set(false)),
        "c2-fixed-point" => Ok(c2_set(true)),
        _ => Err(Error::UnknownName(format!(
            "Γ-set {name:?}; builtins are {}",
            BUILTIN_GAMMA_SETS.join(", ")
        ))),
    }
}

pub fn builtin_gamma_group(name: &str) -> Result<GammaGroupSpec> {
    match name {
        "c6-five-point-kernel" => Ok(GammaGroupSpec::BestvinaBrady(BestvinaBradyInput::Complex(
            c6_five_point_action(),
        ))),
        "c6-five-point-free" => Ok(GammaGroupSpec::FreeWithBasis(builtin_gamma_set("c6-five-point")?)),
        "c2-free" | "c2-fixed-point" => Ok(GammaGroupSpec::FreeWithBasis(builtin_gamma_set(name)?)),
        _ => Err(Error::UnknownName(format!(
            "Γ-group {name:?}; builtins are {}",
            BUILTIN_GAMMA_GROUPS.join(", ")
        ))),
    }
}

pub fn builtin_graph(name: &str) -> Result<GraphAction> {
    match name {
        "antipodal-square" => Ok(antipodal_square()),
        _ => Err(Error::UnknownName(format!(
            "graph {name:?}; builtins are {}",
            BUILTIN_GRAPHS.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_parse_and_build() {
        let basis: GammaGroupInput = serde_json::from_str(
            r#"{"kind":"free_basis","group":"C2","labels":["x","y"],"generators":[[1,[1,0]]]}"#,
        )
        .unwrap();
        assert!(matches!(basis.build().unwrap(), GammaGroupSpec::FreeWithBasis(s) if s.is_free()));
        let pattern: GammaGroupInput =
            serde_json::from_str(r#"{"kind":"pattern","group":"C6","nonempty_classes":[0,1,2]}"#).unwrap();
        assert!(pattern.build().is_ok());
        let bad: std::result::Result<GammaGroupInput, _> =
            serde_json::from_str(r#"{"kind":"free_basis","group":"C2","labels":[],"extra":1}"#);
        assert!(bad.is_err());
        let graph: GraphInput = serde_json::from_str(
            r#"{"group":"C2","labels":["a","b","c"],"generators":[[1,[2,1,0]]],"edges":[[0,1],[1,2]]}"#,
        )
        .unwrap();
        assert!(graph.build().is_ok());
        for name in BUILTIN_GAMMA_GROUPS {
            builtin_gamma_group(name).unwrap();
        }
        assert!(builtin_gamma_set("c2-fixed-point").unwrap().stabilizer(2).order() == 2);
    }
}
