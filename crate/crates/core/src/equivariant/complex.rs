use std::collections::BTreeSet;

use serde::Serialize;

use super::gamma_set::GammaSet;
use crate::error::{Error, Result};
use crate::finite_groups::{all_subgroups, cyclic, prime_factors, ConjugacyClass, FiniteGroup, Subgroup};

const MAX_SIMPLEX_VERTICES: usize = 16;

/// A finite simplicial complex whose simplices are exactly the cliques of its
/// 1-skeleton. Simplices are stored as sorted vertex lists, all faces included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagComplex {
    labels: Vec<String>,
    simplices: BTreeSet<Vec<usize>>,
}

impl FlagComplex {
    /// Builds the downward closure of `maximal` and checks the flag condition.
    pub fn new(labels: Vec<String>, maximal: &[Vec<usize>]) -> Result<Self> {
        let n = labels.len();
        let mut simplices: BTreeSet<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        for s in maximal {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::invalid("empty simplex"));
            }
            if s.len() > MAX_SIMPLEX_VERTICES {
                return Err(Error::bound("simplex size", MAX_SIMPLEX_VERTICES, s.len()));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= n) {
                return Err(Error::invalid(format!("vertex {v} out of range")));
            }
            for mask in 1u32..(1 << s.len()) {
                let face: Vec<usize> = (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                simplices.insert(face);
            }
        }
        let complex = FlagComplex { labels, simplices };
        if let Some(clique) = complex.non_simplex_clique() {
            let names: Vec<&str> = clique.iter().map(|&v| complex.labels[v].as_str()).collect();
            return Err(Error::invalid(format!("not a flag complex: clique {names:?} spans no simplex")));
        }
        Ok(complex)
    }

    /// The 0-dimensional complex on the given vertices.
    pub fn discrete(labels: Vec<String>) -> Self {
        let simplices = (0..labels.len()).map(|v| vec![v]).collect();
        FlagComplex { labels, simplices }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        let mut s = simplex.to_vec();
        s.sort_unstable();
        self.simplices.contains(&s)
    }

    /// `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.simplices.iter().filter(|s| s.len() == 2).map(|s| (s[0], s[1])).collect()
    }

    pub fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        let all: Vec<&Vec<usize>> = self.simplices.iter().collect();
        all.iter()
            .filter(|s| !all.iter().any(|t| t.len() > s.len() && s.iter().all(|v| t.contains(v))))
            .map(|s| (*s).clone())
            .collect()
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let n = self.vertex_count();
        let mut adj = vec![vec![false; n]; n];
        for (u, v) in self.edges() {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        adj
    }

    /// A maximal clique of the 1-skeleton that is not a simplex, if any.
    fn non_simplex_clique(&self) -> Option<Vec<usize>> {
        let adj = self.adjacency();
        let mut found = None;
        let all: Vec<usize> = (0..self.vertex_count()).collect();
        bron_kerbosch(&adj, &mut Vec::new(), all, Vec::new(), &mut |clique| {
            if found.is_none() && !self.simplices.contains(clique) {
                found = Some(clique.to_vec());
            }
        });
        found
    }

    /// The full subcomplex on `vertices`, re-indexed in the given order.
    pub fn induced(&self, vertices: &[usize]) -> FlagComplex {
        let mut position = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        let simplices = self
            .simplices
            .iter()
            .filter(|s| s.iter().all(|&v| position[v] != usize::MAX))
            .map(|s| {
                let mut t: Vec<usize> = s.iter().map(|&v| position[v]).collect();
                t.sort_unstable();
                t
            })
            .collect();
        FlagComplex {
            labels: vertices.iter().map(|&v| self.labels[v].clone()).collect(),
            simplices,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let named = |s: &Vec<usize>| s.iter().map(|&v| self.labels[v].clone()).collect::<Vec<_>>();
        serde_json::json!({
            "vertices": self.labels,
            "maximal_simplices": self.maximal_simplices().iter().map(named).collect::<Vec<_>>(),
        })
    }
}

fn bron_kerbosch(
    adj: &[Vec<bool>],
    current: &mut Vec<usize>,
    candidates: Vec<usize>,
    excluded: Vec<usize>,
    report: &mut dyn FnMut(&[usize]),
) {
    if candidates.is_empty() && excluded.is_empty() {
        if !current.is_empty() {
            let mut c = current.clone();
            c.sort_unstable();
            report(&c);
        }
        return;
    }
    let mut candidates = candidates;
    let mut excluded = excluded;
    while let Some(v) = candidates.pop() {
        current.push(v);
        let next_c = candidates.iter().copied().filter(|&u| adj[v][u]).collect();
        let next_x = excluded.iter().copied().filter(|&u| adj[v][u]).collect();
        bron_kerbosch(adj, current, next_c, next_x, report);
        current.pop();
        excluded.push(v);
    }
}

/// A simplicial action of a finite group on a flag complex, given by its action
/// on vertices.
#[derive(Clone, Debug)]
pub struct ComplexAction {
    complex: FlagComplex,
    vertices: GammaSet,
}

impl ComplexAction {
    /// Checks that every element carries simplices to simplices.
    pub fn new(complex: FlagComplex, vertices: GammaSet) -> Result<Self> {
        if vertices.len() != complex.vertex_count() {
            return Err(Error::invalid("vertex action and complex have different vertex counts"));
        }
        for g in vertices.group().elements() {
            for s in complex.simplices() {
                let image: Vec<usize> = s.iter().map(|&v| vertices.act(g, v)).collect();
                if !complex.contains(&image) {
                    return Err(Error::invalid(format!(
                        "element {} does not map simplices to simplices",
                        vertices.group().label(g)
                    )));
                }
            }
        }
        Ok(ComplexAction { complex, vertices })
    }

    pub fn complex(&self) -> &FlagComplex {
        &self.complex
    }

    pub fn vertex_action(&self) -> &GammaSet {
        &self.vertices
    }

    pub fn group(&self) -> &FiniteGroup {
        self.vertices.group()
    }

    /// Setwise and pointwise stabilizers agree on every simplex.
    pub fn is_admissible(&self) -> bool {
        self.group().elements().all(|g| {
            self.complex.simplices().all(|s| {
                let mut image: Vec<usize> = s.iter().map(|&v| self.vertices.act(g, v)).collect();
                image.sort_unstable();
                image != *s || s.iter().all(|&v| self.vertices.act(g, v) == v)
            })
        })
    }

    pub fn is_effective(&self) -> bool {
        self.vertices.is_effective()
    }

    /// The simplices fixed pointwise by `p`.
    pub fn fixed_vertices(&self, p: &Subgroup) -> Vec<usize> {
        self.vertices.fixed_points(p)
    }

    /// Fixed-point data on conjugacy classes of subgroups.
    pub fn pattern(&self) -> Result<FixedPointPattern> {
        let classes = all_subgroups(self.group())?;
        let nonempty = classes
            .iter()
            .map(|c| !self.fixed_vertices(&c.representative).is_empty())
            .collect();
        FixedPointPattern::with_classes(self.group(), classes, nonempty)
    }
}

/// Simplices all of whose vertices are fixed by `p` (these are `p`-invariant);
/// for admissible actions this is the whole fixed subcomplex.
pub fn fixed_subcomplex(action: &ComplexAction, p: &Subgroup) -> FlagComplex {
    action.complex.induced(&action.fixed_vertices(p))
}

/// Which conjugacy classes of subgroups have nonempty fixed set, for an
/// action that need not be given explicitly. Classes follow the order of
/// [`all_subgroups`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointPattern {
    group: FiniteGroup,
    classes: Vec<ConjugacyClass>,
    nonempty: Vec<bool>,
}

impl FixedPointPattern {
    pub fn new(group: &FiniteGroup, nonempty: Vec<bool>) -> Result<Self> {
        Self::with_classes(group, all_subgroups(group)?, nonempty)
    }

    fn with_classes(group: &FiniteGroup, classes: Vec<ConjugacyClass>, nonempty: Vec<bool>) -> Result<Self> {
        if nonempty.len() != classes.len() {
            return Err(Error::invalid(format!(
                "pattern has {} entries for {} subgroup classes",
                nonempty.len(),
                classes.len()
            )));
        }
        let pattern = FixedPointPattern {
            group: group.clone(),
            classes,
            nonempty,
        };
        if let Some((big, small)) = pattern.monotonicity_violation() {
            return Err(Error::invalid(format!(
                "pattern is not monotone: fixed set nonempty at class {big} but empty at its subgroup class {small}"
            )));
        }
        Ok(pattern)
    }

    /// Nonempty exactly at the listed class ids.
    pub fn from_nonempty_classes(group: &FiniteGroup, ids: &[usize]) -> Result<Self> {
        let classes = all_subgroups(group)?;
        let mut nonempty = vec![false; classes.len()];
        for &i in ids {
            *nonempty
                .get_mut(i)
                .ok_or_else(|| Error::invalid(format!("subgroup class id {i} out of range")))? = true;
        }
        Self::with_classes(group, classes, nonempty)
    }

    /// Nonempty at every proper subgroup and empty at the whole group.
    pub fn proper_subgroups_only(group: &FiniteGroup) -> Result<Self> {
        let classes = all_subgroups(group)?;
        let nonempty = classes.iter().map(|c| c.representative.order() < group.order()).collect();
        Self::with_classes(group, classes, nonempty)
    }

    /// Every subgroup has a fixed point.
    pub fn all_fixed(group: &FiniteGroup) -> Result<Self> {
        let classes = all_subgroups(group)?;
        let n = classes.len();
        Self::with_classes(group, classes, vec![true; n])
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn nonempty(&self) -> &[bool] {
        &self.nonempty
    }

    pub fn class_of(&self, h: &Subgroup) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(h))
    }

    pub fn nonempty_at(&self, h: &Subgroup) -> Option<bool> {
        self.class_of(h).map(|i| self.nonempty[i])
    }

    fn monotonicity_violation(&self) -> Option<(usize, usize)> {
        for (i, ci) in self.classes.iter().enumerate() {
            if !self.nonempty[i] {
                continue;
            }
            for (j, cj) in self.classes.iter().enumerate() {
                if !self.nonempty[j] && cj.members.iter().any(|m| m.is_subgroup_of(&ci.representative)) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Short description of a subgroup by a greedy generating set.
pub fn subgroup_label(group: &FiniteGroup, h: &Subgroup) -> String {
    if h.is_trivial() {
        return "1".to_string();
    }
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![group.identity()];
    for &x in h.elements() {
        if !span.contains(&x) {
            gens.push(x);
            span = group.closure(&gens);
        }
    }
    let names: Vec<String> = gens.iter().map(|&g| group.label(g)).collect();
    format!("<{}>", names.join(","))
}

/// Fixed-point input for the Bestvina–Brady construction.
#[derive(Clone, Debug)]
pub enum BestvinaBradyInput {
    Complex(ComplexAction),
    /// Fixed-point data of a 0-dimensional `L` with at least two points.
    Pattern(FixedPointPattern),
}

impl BestvinaBradyInput {
    pub fn group(&self) -> &FiniteGroup {
        match self {
            BestvinaBradyInput::Complex(a) => a.group(),
            BestvinaBradyInput::Pattern(p) => p.group(),
        }
    }

    /// `Some(n)` when the vertex count is known.
    pub fn vertex_count(&self) -> Option<usize> {
        match self {
            BestvinaBradyInput::Complex(a) => Some(a.complex().vertex_count()),
            BestvinaBradyInput::Pattern(_) => None,
        }
    }

    /// True when `L` is known to be 0-dimensional, so that `H_L` is free.
    pub fn is_discrete(&self) -> bool {
        match self {
            BestvinaBradyInput::Complex(a) => a.complex().dimension().is_none_or(|d| d == 0),
            BestvinaBradyInput::Pattern(_) => true,
        }
    }
}

/// Verdict on one conjugacy class of subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassVerdict {
    pub class_id: usize,
    pub label: String,
    pub order: usize,
    /// `Some(p)` for nontrivial `p`-groups.
    pub prime: Option<usize>,
    pub fixed_set_nonempty: bool,
    pub h1_trivial: bool,
}

/// Triviality of `H¹(P; H_L)` for every class of subgroups `P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LnClassification {
    pub verdicts: Vec<ClassVerdict>,
}

impl LnClassification {
    pub fn trivial_everywhere(&self) -> bool {
        self.verdicts.iter().all(|v| v.h1_trivial)
    }

    /// Trivial at the identity subgroup and every nontrivial `p`-subgroup.
    pub fn trivial_on_p_subgroups(&self) -> bool {
        self.verdicts
            .iter()
            .filter(|v| v.order == 1 || v.prime.is_some())
            .all(|v| v.h1_trivial)
    }

    pub fn nontrivial_classes(&self) -> Vec<&ClassVerdict> {
        self.verdicts.iter().filter(|v| !v.h1_trivial).collect()
    }
}

/// `H¹(P; H_L)` is trivial exactly when `L^P` is nonempty, for an effective
/// admissible action on a nonempty finite flag complex.
pub fn ln_classify(input: &BestvinaBradyInput) -> Result<LnClassification> {
    let pattern = match input {
        BestvinaBradyInput::Complex(a) => {
            if a.complex().is_empty() {
                return Err(Error::precondition("the complex must be nonempty"));
            }
            if !a.is_effective() {
                return Err(Error::precondition("the action must be effective"));
            }
            if !a.is_admissible() {
                return Err(Error::precondition("the action must be admissible"));
            }
            a.pattern()?
        }
        BestvinaBradyInput::Pattern(p) => {
            if !p.nonempty[0] {
                return Err(Error::precondition("the pattern must describe a nonempty complex"));
            }
            p.clone()
        }
    };
    let g = pattern.group();
    let verdicts = pattern
        .classes
        .iter()
        .zip(&pattern.nonempty)
        .enumerate()
        .map(|(i, (c, &ne))| {
            let h = &c.representative;
            let primes = prime_factors(h.order());
            ClassVerdict {
                class_id: i,
                label: subgroup_label(g, h),
                order: h.order(),
                prime: (primes.len() == 1).then(|| primes[0]),
                fixed_set_nonempty: ne,
                h1_trivial: ne,
            }
        })
        .collect();
    Ok(LnClassification { verdicts })
}

fn letters(s: &str) -> Vec<String> {
    s.chars().map(|c| c.to_string()).collect()
}

/// `C6 = <g>` acting on five points by `a -> b -> c -> a` and `d <-> e`.
pub fn c6_five_point_action() -> ComplexAction {
    let c6 = cyclic(6);
    let labels = letters("abcde");
    let set = GammaSet::new(&c6, labels.clone(), &[(1, vec![1, 2, 0, 4, 3])]).expect("valid C6 action");
    ComplexAction::new(FlagComplex::discrete(labels), set).expect("discrete complexes admit every action")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_groups::{alternating, cyclic, sylow};

    fn fixed_labels(a: &ComplexAction, p: &Subgroup) -> Vec<String> {
        fixed_subcomplex(a, p).labels().to_vec()
    }

    #[test]
    fn c6_fixed_sets() {
        let a = c6_five_point_action();
        let g = a.group().clone();
        assert_eq!(fixed_labels(&a, &sylow(&g, 2).unwrap()), letters("abc"));
        assert_eq!(fixed_labels(&a, &sylow(&g, 3).unwrap()), letters("de"));
        assert!(fixed_subcomplex(&a, &Subgroup::whole(&g)).is_empty());
        assert_eq!(fixed_subcomplex(&a, &Subgroup::trivial(&g)), *a.complex());
        assert!(a.is_admissible() && a.is_effective());
    }

    #[test]
    fn c6_classification() {
        let ln = ln_classify(&BestvinaBradyInput::Complex(c6_five_point_action())).unwrap();
        let by_order: Vec<(usize, bool)> = ln.verdicts.iter().map(|v| (v.order, v.h1_trivial)).collect();
        assert_eq!(by_order, vec![(1, true), (2, true), (3, true), (6, false)]);
        assert!(ln.trivial_on_p_subgroups());
        assert!(!ln.trivial_everywhere());
    }

    #[test]
    fn a5_pattern() {
        let a5 = alternating(5).unwrap();
        let p = FixedPointPattern::proper_subgroups_only(&a5).unwrap();
        let ln = ln_classify(&BestvinaBradyInput::Pattern(p)).unwrap();
        let bad = ln.nontrivial_classes();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].order, 60);
        assert!(ln.trivial_on_p_subgroups());
    }

    #[test]
    fn monotonicity_is_enforced() {
        let c6 = cyclic(6);
        // classes: 1, C2, C3, C6
        assert!(FixedPointPattern::from_nonempty_classes(&c6, &[0, 3]).is_err());
        assert!(FixedPointPattern::from_nonempty_classes(&c6, &[0, 1]).is_ok());
        let all = FixedPointPattern::all_fixed(&c6).unwrap();
        assert!(ln_classify(&BestvinaBradyInput::Pattern(all)).unwrap().trivial_everywhere());
    }

    #[test]
    fn flag_condition() {
        let labels = letters("abc");
        let hollow = vec![vec![0, 1], vec![1, 2], vec![0, 2]];
        assert!(FlagComplex::new(labels.clone(), &hollow).is_err());
        let filled = FlagComplex::new(labels, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(filled.dimension(), Some(2));
        assert_eq!(filled.simplices().count(), 7);
        assert_eq!(filled.maximal_simplices(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn admissibility_detects_edge_flips() {
        let c2 = cyclic(2);
        let labels = letters("ab");
        let edge = FlagComplex::new(labels.clone(), &[vec![0, 1]]).unwrap();
        let flip = GammaSet::new(&c2, labels, &[(1, vec![1, 0])]).unwrap();
        let a = ComplexAction::new(edge, flip).unwrap();
        assert!(!a.is_admissible());
        assert!(ln_classify(&BestvinaBradyInput::Complex(a)).is_err());
    }
}
