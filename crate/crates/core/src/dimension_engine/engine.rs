use std::collections::BTreeMap;

use serde::Serialize;

use super::leaf::{prop, LeafSpec};
use super::quantity::{DimKind, DimQuantity};
use super::rules::RuleId;
use super::trace::{Axiom, Claim, DerivationTrace, DimFact, LeafRecord, Source, TraceNode};
use super::value::{DimBounds, Extended};
use crate::error::{Error, Result};

const MAX_ROUNDS: usize = 64;

/// A structural relation between quantities; each variant is consumed by one rule.
/// Subjects name Γ-groups and key their properties.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "relation", rename_all = "snake_case")]
pub enum Relation {
    /// `L ⊲ K` with `quantity` the dimension of `K/L` (R1, R2).
    Normal {
        quotient: DimQuantity,
        adamson: Option<DimQuantity>,
        bredon: Option<DimQuantity>,
    },
    /// Restriction to a subgroup (R4).
    BredonShapiro { sub: DimQuantity, sup: DimQuantity },
    /// Coinduction from a subgroup (R5).
    RelativeShapiro { sub: DimQuantity, sup: DimQuantity },
    /// The pair `(K, L)` and the dimensions of `K` and `L` (R6).
    TakasuLes {
        pair: DimQuantity,
        group: DimQuantity,
        sub: DimQuantity,
    },
    /// Bredon dimension of `G⋊Γ` for the Γ-group `subject` (R7).
    BredonFreeness { bredon: DimQuantity, subject: String },
    /// Inassaridze dimension of `G⋊Γ` (R8).
    InassaridzeCriterion { adamson: DimQuantity, subject: String },
    /// `cd(G⋊Γ, Γ)` (R9).
    TakasuFreeness { takasu: DimQuantity, subject: String },
    /// A finite group with a family of proper subgroups (R10).
    CdZeroFamily {
        adamson: DimQuantity,
        bredon: DimQuantity,
        subject: String,
    },
    /// A `p`-group with its proper subgroups (R11).
    PGroupProperFamily { adamson: DimQuantity, subject: String },
    /// Dimensions for the family generated by Γ and for finite subgroups (R12).
    FamiliesCoincide {
        subject: String,
        pairs: Vec<(DimQuantity, DimQuantity)>,
    },
    /// `H¹` of a product Γ-group from its factors (R13).
    ProductH1 { product: String, factors: Vec<String> },
    /// Quotient by a normal subgroup with the pushed-forward family (R14).
    QuotientBound { sup: DimQuantity, quotient: DimQuantity },
    /// `G = A *_C A` with `C ⊲ A` (R17).
    AmalgamBound { bredon: DimQuantity, quotient_cd: DimQuantity },
    /// `cd` of a finite group (A1).
    FiniteGroup { cd: DimQuantity },
    /// A family-relative dimension over the trivial family (A2).
    TrivialFamily { relative: DimQuantity, cd: DimQuantity },
    /// Fixed-point data of `L` decides `H¹(P; H_L)` (A3). Classes are
    /// `(label, is trivial or a p-group)`.
    FixedPointCriterion { subject: String, classes: Vec<(String, bool)> },
    /// Γ-freeness from `H¹` (A4).
    H1Criterion { subject: String },
    /// Change-of-families bound (A5).
    SpectralBound {
        target: DimQuantity,
        fin: DimQuantity,
        locals: Vec<DimQuantity>,
    },
    /// The whole group lies in the family (A6).
    FamilyContainsGroup { quantity: DimQuantity },
    /// Restriction to the subgroup has kernel in infinitely many degrees (A7).
    RestrictionKernel { takasu: DimQuantity, subject: String },
    /// Isomorphic subjects (A8).
    Isomorphic { a: DimQuantity, b: DimQuantity },
}

/// A relation together with the properties that must be established before
/// its rule may fire. A key prefixed with `!` must be established as false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Structure {
    pub relation: Relation,
    pub requires: Vec<String>,
    pub note: String,
}

impl Structure {
    pub fn new(relation: Relation, note: &str) -> Self {
        Structure {
            relation,
            requires: Vec::new(),
            note: note.into(),
        }
    }

    pub fn requiring(mut self, keys: &[String]) -> Self {
        self.requires.extend(keys.iter().cloned());
        self
    }
}

/// Everything the engine starts from.
#[derive(Clone, Debug, Default)]
pub struct KnowledgeBase {
    pub leaves: Vec<(String, LeafSpec)>,
    pub axioms: Vec<Axiom>,
    pub structures: Vec<Structure>,
}

impl KnowledgeBase {
    pub fn leaf(&mut self, id: &str, spec: LeafSpec) -> &mut Self {
        self.leaves.push((id.into(), spec));
        self
    }

    pub fn axiom(&mut self, axiom: Axiom) -> &mut Self {
        self.axioms.push(axiom);
        self
    }

    pub fn structure(&mut self, s: Structure) -> &mut Self {
        self.structures.push(s);
        self
    }

    /// True when some leaf, axiom or relation mentions `q`.
    pub fn mentions(&self, q: &DimQuantity) -> bool {
        let in_claims = |claims: &[Claim]| {
            claims
                .iter()
                .any(|c| matches!(c, Claim::Bound { quantity, .. } if quantity == q))
        };
        self.axioms.iter().any(|a| in_claims(&a.claims))
            || self.structures.iter().any(|s| {
                serde_json::to_value(&s.relation)
                    .ok()
                    .and_then(|v| serde_json::to_value(q).ok().map(|q| json_contains(&v, &q)))
                    .unwrap_or(false)
            })
            || self.leaves.iter().any(|(_, l)| {
                serde_json::to_value(l)
                    .ok()
                    .and_then(|v| serde_json::to_value(q).ok().map(|q| json_contains(&v, &q)))
                    .unwrap_or(false)
            })
    }

    /// Runs every leaf, loads the axioms and applies rules to a fixpoint.
    pub fn run(&self) -> Result<Derivation> {
        let mut d = Derivation::default();
        for (id, spec) in &self.leaves {
            let outcome = spec.run()?;
            for claim in &outcome.claims {
                if let Claim::Bound { value, .. } = claim {
                    if !value.lo.is_finite() {
                        return Err(Error::precondition(format!("leaf {id} concluded an infinite value")));
                    }
                }
            }
            d.leaves.push(LeafRecord {
                id: id.clone(),
                module: spec.module().into(),
                spec: spec.clone(),
                result: outcome.result,
            });
            for claim in outcome.claims {
                d.assert(claim, Source::Computation { leaf: id.clone() })?;
            }
        }
        for a in &self.axioms {
            a.validate()?;
            d.axioms.push(a.clone());
            for claim in &a.claims {
                d.assert(claim.clone(), Source::Axiom { axiom: a.id.clone() })?;
            }
        }
        for _ in 0..MAX_ROUNDS {
            let before = d.nodes.len();
            for s in &self.structures {
                let Some(req) = d.required(&s.requires) else { continue };
                for p in d.proposals(&s.relation)? {
                    let mut premises = p.premises;
                    premises.extend(&req);
                    premises.sort_unstable();
                    premises.dedup();
                    let note = (!s.note.is_empty()).then(|| s.note.clone());
                    d.assert(
                        p.claim,
                        Source::Rule {
                            rule: p.rule,
                            premises,
                            note,
                        },
                    )?;
                }
            }
            for p in d.adamson_bredon_proposals() {
                d.assert(
                    p.claim,
                    Source::Rule {
                        rule: p.rule,
                        premises: p.premises,
                        note: None,
                    },
                )?;
            }
            if d.nodes.len() == before {
                return Ok(d);
            }
        }
        Err(Error::bound("rule application rounds", MAX_ROUNDS, MAX_ROUNDS + 1))
    }
}

fn json_contains(haystack: &serde_json::Value, needle: &serde_json::Value) -> bool {
    if haystack == needle {
        return true;
    }
    match haystack {
        serde_json::Value::Array(xs) => xs.iter().any(|x| json_contains(x, needle)),
        serde_json::Value::Object(m) => m.values().any(|x| json_contains(x, needle)),
        _ => false,
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct Entry {
    bounds: Bounds,
    lo_node: Option<usize>,
    hi_node: Option<usize>,
}

#[derive(Clone, Copy, Debug)]
struct Bounds(DimBounds);

impl Default for Bounds {
    fn default() -> Self {
        Bounds(DimBounds::UNKNOWN)
    }
}

struct Proposal {
    claim: Claim,
    rule: RuleId,
    premises: Vec<usize>,
}

/// The state after running a knowledge base: every node, the leaf records and
/// axioms, and the current bounds and properties.
#[derive(Clone, Debug, Default)]
pub struct Derivation {
    nodes: Vec<TraceNode>,
    leaves: Vec<LeafRecord>,
    axioms: Vec<Axiom>,
    facts: BTreeMap<DimQuantity, Entry>,
    props: BTreeMap<String, (bool, usize)>,
}

fn le(v: Extended) -> DimBounds {
    DimBounds {
        lo: Extended::Finite(0),
        hi: v,
    }
}

fn ge(v: Extended) -> DimBounds {
    DimBounds {
        lo: v,
        hi: Extended::Infinite,
    }
}

impl Derivation {
    fn push(&mut self, claim: Claim, source: Source) -> usize {
        let id = self.nodes.len();
        self.nodes.push(TraceNode { id, claim, source });
        id
    }

    fn assert(&mut self, claim: Claim, source: Source) -> Result<()> {
        match &claim {
            Claim::Bound { quantity, value } => {
                let entry = self.facts.get(quantity).copied().unwrap_or_default();
                let cur = entry.bounds.0;
                let new = cur.meet(value);
                if !new.is_consistent() {
                    return Err(Error::precondition(format!(
                        "inconsistent bounds for {quantity}: {cur} and {value}"
                    )));
                }
                let (lo_up, hi_up) = (new.lo > cur.lo, new.hi < cur.hi);
                if !lo_up && !hi_up {
                    return Ok(());
                }
                let q = quantity.clone();
                let id = self.push(claim, source);
                let e = self.facts.entry(q).or_default();
                e.bounds = Bounds(new);
                if lo_up {
                    e.lo_node = Some(id);
                }
                if hi_up {
                    e.hi_node = Some(id);
                }
            }
            Claim::Property { key, holds } => match self.props.get(key) {
                Some((v, _)) if v == holds => {}
                Some(_) => return Err(Error::precondition(format!("property {key} derived both ways"))),
                None => {
                    let (k, h) = (key.clone(), *holds);
                    let id = self.push(claim, source);
                    self.props.insert(k, (h, id));
                }
            },
        }
        Ok(())
    }

    /// Node ids of the required properties, if all hold.
    fn required(&self, keys: &[String]) -> Option<Vec<usize>> {
        keys.iter()
            .map(|k| {
                let (key, want) = match k.strip_prefix('!') {
                    Some(rest) => (rest, false),
                    None => (k.as_str(), true),
                };
                match self.props.get(key) {
                    Some((v, id)) if *v == want => Some(*id),
                    _ => None,
                }
            })
            .collect()
    }

    pub fn bounds(&self, q: &DimQuantity) -> DimBounds {
        self.facts.get(q).map_or(DimBounds::UNKNOWN, |e| e.bounds.0)
    }

    pub fn property(&self, key: &str) -> Option<bool> {
        self.props.get(key).map(|(v, _)| *v)
    }

    fn lo(&self, q: &DimQuantity) -> Option<(Extended, usize)> {
        let e = self.facts.get(q)?;
        e.lo_node.map(|n| (e.bounds.0.lo, n))
    }

    fn hi(&self, q: &DimQuantity) -> Option<(Extended, usize)> {
        let e = self.facts.get(q)?;
        e.hi_node.map(|n| (e.bounds.0.hi, n))
    }

    fn prop_node(&self, key: &str) -> Option<(bool, usize)> {
        self.props.get(key).copied()
    }

    /// `target = source` in both directions.
    fn equal(&self, rule: RuleId, a: &DimQuantity, b: &DimQuantity, out: &mut Vec<Proposal>) {
        for (x, y) in [(a, b), (b, a)] {
            if let Some((v, n)) = self.lo(x) {
                out.push(Proposal {
                    claim: Claim::bound(y.clone(), ge(v)),
                    rule,
                    premises: vec![n],
                });
            }
            if let Some((v, n)) = self.hi(x) {
                out.push(Proposal {
                    claim: Claim::bound(y.clone(), le(v)),
                    rule,
                    premises: vec![n],
                });
            }
        }
    }

    fn lower(&self, rule: RuleId, from: &DimQuantity, to: &DimQuantity, out: &mut Vec<Proposal>) {
        if let Some((v, n)) = self.lo(from) {
            out.push(Proposal {
                claim: Claim::bound(to.clone(), ge(v)),
                rule,
                premises: vec![n],
            });
        }
    }

    fn set(rule: RuleId, q: &DimQuantity, v: DimBounds, premises: Vec<usize>) -> Proposal {
        Proposal {
            claim: Claim::bound(q.clone(), v),
            rule,
            premises,
        }
    }

    fn proposals(&self, r: &Relation) -> Result<Vec<Proposal>> {
        let mut out = Vec::new();
        match r {
            Relation::Normal {
                quotient,
                adamson,
                bredon,
            } => {
                if let Some(a) = adamson {
                    self.equal(RuleId::R1, quotient, a, &mut out);
                }
                if let Some(b) = bredon {
                    self.equal(RuleId::R2, quotient, b, &mut out);
                }
            }
            Relation::BredonShapiro { sub, sup } => self.lower(RuleId::R4, sub, sup, &mut out),
            Relation::RelativeShapiro { sub, sup } => self.lower(RuleId::R5, sub, sup, &mut out),
            Relation::TakasuLes { pair, group, sub } => {
                if let (Some((gh, gn)), Some((sh, sn))) = (self.hi(group), self.hi(sub)) {
                    let bound = gh.max(sh.add(Extended::Finite(1)));
                    out.push(Self::set(RuleId::R6, pair, le(bound), vec![gn, sn]));
                }
                if let (Some((gl, gn)), Some((sh, sn))) = (self.lo(group), self.hi(sub)) {
                    if gl > sh {
                        out.push(Self::set(RuleId::R6, pair, ge(gl), vec![gn, sn]));
                        if let Some((gh, hn)) = self.hi(group) {
                            out.push(Self::set(RuleId::R6, pair, le(gh), vec![gn, hn, sn]));
                        }
                    }
                }
            }
            Relation::BredonFreeness { bredon, subject } => {
                match self.prop_node(&prop("gamma_free", subject)) {
                    Some((true, n)) => {
                        out.push(Self::set(RuleId::R7, bredon, DimBounds::at_most(1), vec![n]));
                        if let Some((true, m)) = self.prop_node(&prop("nontrivial", subject)) {
                            out.push(Self::set(RuleId::R7, bredon, DimBounds::at_least(1), vec![n, m]));
                        }
                    }
                    Some((false, n)) => out.push(Self::set(RuleId::R7, bredon, DimBounds::at_least(2), vec![n])),
                    None => {}
                }
            }
            Relation::InassaridzeCriterion { adamson, subject } => {
                if let Some((true, f)) = self.prop_node(&prop("free_kernel", subject)) {
                    match self.prop_node(&prop("h1_trivial_p_subgroups", subject)) {
                        Some((true, n)) => {
                            out.push(Self::set(RuleId::R8, adamson, DimBounds::at_most(1), vec![f, n]));
                            if let Some((true, m)) = self.prop_node(&prop("nontrivial", subject)) {
                                out.push(Self::set(RuleId::R8, adamson, DimBounds::at_least(1), vec![f, n, m]));
                            }
                        }
                        Some((false, n)) => out.push(Self::set(RuleId::R8, adamson, DimBounds::infinite(), vec![f, n])),
                        None => {}
                    }
                }
            }
            Relation::TakasuFreeness { takasu, subject } => {
                match self.prop_node(&prop("strongly_gamma_free", subject)) {
                    Some((true, n)) => {
                        out.push(Self::set(RuleId::R9, takasu, DimBounds::at_most(1), vec![n]));
                    }
                    Some((false, n)) => out.push(Self::set(RuleId::R9, takasu, DimBounds::at_least(2), vec![n])),
                    None => {}
                }
            }
            Relation::CdZeroFamily {
                adamson,
                bredon,
                subject,
            } => {
                if let Some((true, n)) = self.prop_node(&prop("proper_family_contains_p_subgroups", subject)) {
                    out.push(Self::set(RuleId::R10, adamson, DimBounds::exact(0), vec![n]));
                    out.push(Self::set(RuleId::R10, bredon, DimBounds::at_least(2), vec![n]));
                }
            }
            Relation::PGroupProperFamily { adamson, subject } => {
                if let Some((true, n)) = self.prop_node(&prop("nontrivial_p_group", subject)) {
                    out.push(Self::set(RuleId::R11, adamson, DimBounds::infinite(), vec![n]));
                }
            }
            Relation::FamiliesCoincide { subject, pairs } => {
                if let Some((true, n)) = self.prop_node(&prop("h1_trivial_all", subject)) {
                    for (a, b) in pairs {
                        let mut local = Vec::new();
                        self.equal(RuleId::R12, a, b, &mut local);
                        for mut p in local {
                            p.premises.push(n);
                            out.push(p);
                        }
                    }
                }
            }
            Relation::ProductH1 { product, factors } => {
                let nodes: Option<Vec<(bool, usize)>> =
                    factors.iter().map(|f| self.prop_node(&prop("h1_trivial_all", f))).collect();
                if let Some(nodes) = nodes {
                    let holds = nodes.iter().all(|(v, _)| *v);
                    let premises = if holds {
                        nodes.iter().map(|(_, n)| *n).collect()
                    } else {
                        nodes.iter().filter(|(v, _)| !v).map(|(_, n)| *n).take(1).collect()
                    };
                    out.push(Proposal {
                        claim: Claim::property(prop("h1_trivial_all", product), holds),
                        rule: RuleId::R13,
                        premises,
                    });
                }
            }
            Relation::QuotientBound { sup, quotient } => self.lower(RuleId::R14, quotient, sup, &mut out),
            Relation::AmalgamBound { bredon, quotient_cd } => self.lower(RuleId::R17, quotient_cd, bredon, &mut out),
            Relation::FiniteGroup { cd } => {
                if let Some((true, n)) = self.prop_node(&prop("nontrivial_finite", &cd.group)) {
                    out.push(Self::set(RuleId::A1, cd, DimBounds::infinite(), vec![n]));
                }
            }
            Relation::TrivialFamily { relative, cd } => self.equal(RuleId::A2, cd, relative, &mut out),
            Relation::FixedPointCriterion { subject, classes } => {
                if let Some((true, adm)) = self.prop_node(&prop("admissible_effective", subject)) {
                    let data: Option<Vec<(bool, bool, usize)>> = classes
                        .iter()
                        .map(|(label, small)| {
                            self.prop_node(&prop("fixed_nonempty", &format!("{subject}; {label}")))
                                .map(|(v, n)| (*small, v, n))
                        })
                        .collect();
                    if let Some(data) = data {
                        for (key, filter) in [("h1_trivial_all", false), ("h1_trivial_p_subgroups", true)] {
                            let relevant: Vec<&(bool, bool, usize)> =
                                data.iter().filter(|(small, _, _)| !filter || *small).collect();
                            let holds = relevant.iter().all(|(_, v, _)| *v);
                            let mut premises = vec![adm];
                            if holds {
                                premises.extend(relevant.iter().map(|(_, _, n)| *n));
                            } else {
                                premises.extend(relevant.iter().filter(|(_, v, _)| !v).map(|(_, _, n)| *n).take(1));
                            }
                            out.push(Proposal {
                                claim: Claim::property(prop(key, subject), holds),
                                rule: RuleId::A3,
                                premises,
                            });
                        }
                    }
                }
            }
            Relation::H1Criterion { subject } => {
                if let (Some((true, f)), Some((v, n))) = (
                    self.prop_node(&prop("free_kernel", subject)),
                    self.prop_node(&prop("h1_trivial_all", subject)),
                ) {
                    out.push(Proposal {
                        claim: Claim::property(prop("gamma_free", subject), v),
                        rule: RuleId::A4,
                        premises: vec![f, n],
                    });
                }
            }
            Relation::SpectralBound { target, fin, locals } => {
                let his: Option<Vec<(Extended, usize)>> = locals.iter().map(|q| self.hi(q)).collect();
                if let (Some((fh, fnode)), Some(his)) = (self.hi(fin), his) {
                    let sup = his.iter().map(|(v, _)| *v).max().unwrap_or(Extended::Finite(0));
                    let mut premises = vec![fnode];
                    premises.extend(his.iter().map(|(_, n)| *n));
                    out.push(Self::set(RuleId::A5, target, le(fh.add(sup)), premises));
                }
            }
            Relation::FamilyContainsGroup { quantity } => {
                if !matches!(quantity.kind, DimKind::Adamson | DimKind::Bredon) {
                    return Err(Error::invalid(format!("{quantity} is not family-relative")));
                }
                out.push(Self::set(RuleId::A6, quantity, DimBounds::exact(0), Vec::new()));
            }
            Relation::RestrictionKernel { takasu, subject } => {
                if let Some((true, n)) = self.prop_node(&prop("restriction_kernel_infinitely_often", subject)) {
                    out.push(Self::set(RuleId::A7, takasu, DimBounds::infinite(), vec![n]));
                }
            }
            Relation::Isomorphic { a, b } => self.equal(RuleId::A8, a, b, &mut out),
        }
        Ok(out)
    }

    /// R3 on every subject that has both an Adamson and a Bredon quantity.
    fn adamson_bredon_proposals(&self) -> Vec<Proposal> {
        let mut out = Vec::new();
        for q in self.facts.keys().filter(|q| q.kind == DimKind::Adamson) {
            let b = DimQuantity {
                kind: DimKind::Bredon,
                ..q.clone()
            };
            if !self.facts.contains_key(&b) {
                continue;
            }
            self.lower(RuleId::R3, q, &b, &mut out);
            if let Some((v, n)) = self.hi(&b) {
                out.push(Self::set(RuleId::R3, q, le(v), vec![n]));
            }
        }
        out
    }

    pub fn fact(&self, q: &DimQuantity) -> DimFact {
        let Some(e) = self.facts.get(q) else {
            return DimFact::unknown(q.clone());
        };
        let roots: Vec<usize> = e.lo_node.into_iter().chain(e.hi_node).collect();
        DimFact {
            quantity: q.clone(),
            value: e.bounds.0,
            trace: DerivationTrace::collect(&self.nodes, &roots, &self.leaves, &self.axioms),
        }
    }

    /// The trace behind a property.
    pub fn property_trace(&self, key: &str) -> Option<DerivationTrace> {
        let (_, n) = self.props.get(key)?;
        Some(DerivationTrace::collect(&self.nodes, &[*n], &self.leaves, &self.axioms))
    }

    pub fn quantities(&self) -> impl Iterator<Item = (&DimQuantity, DimBounds)> {
        self.facts.iter().map(|(q, e)| (q, e.bounds.0))
    }

    pub fn nodes(&self) -> &[TraceNode] {
        &self.nodes
    }

    pub fn leaf_records(&self) -> &[LeafRecord] {
        &self.leaves
    }

    /// Subjects violating `cd([K : F]) <= cd_F(K)`: the Adamson lower bound
    /// exceeds the Bredon upper bound.
    pub fn adamson_bredon_violations(&self) -> Vec<DimQuantity> {
        self.facts
            .iter()
            .filter(|(q, _)| q.kind == DimKind::Adamson)
            .filter(|(q, e)| {
                let b = DimQuantity {
                    kind: DimKind::Bredon,
                    ..(*q).clone()
                };
                e.bounds.0.lo > self.bounds(&b).hi
            })
            .map(|(q, _)| q.clone())
            .collect()
    }
}
