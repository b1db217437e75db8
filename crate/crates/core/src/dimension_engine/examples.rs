use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::engine::{Derivation, KnowledgeBase, Relation, Structure};
use super::leaf::{prop, pushed_family_key, BuiltinAction, Coefficients, FixturePair, LeafSpec};
use super::quantity::{DimKind, DimQuantity};
use super::trace::{Axiom, Claim, DimFact};
use super::value::DimBounds;
use crate::equivariant::subgroup_label;
use crate::error::{Error, Result};
use crate::finite_groups::{all_subgroups, alternating, cyclic, is_prime, prime_factors, FiniteGroup};

/// Largest parameter accepted by the parametrised examples.
pub const MAX_PRODUCT_FACTORS: u32 = 12;
pub const MAX_AMALGAM_RANK: u32 = 8;

/// Identifiers accepted by [`reproduce_example`].
pub const EXAMPLE_IDS: &[&str] = &[
    "ex-2.15", "ex-5.2", "ex-4.10", "ex-4.11", "ex-4.15", "ex-4.16", "ex-5.6", "ex-5.9", "ex-5.10",
];

/// The reproduced values of one worked example, each with its derivation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExampleBundle {
    pub id: String,
    pub title: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<u32>,
    /// Headline values by short name, e.g. `takasu`, `adamson`, `bredon`.
    #[serde(flatten)]
    pub values: BTreeMap<String, DimBounds>,
    /// Structural properties the example relies on, with their truth values.
    pub properties: BTreeMap<String, bool>,
    pub facts: Vec<DimFact>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ExampleBundle {
    pub fn render_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.id, self.title);
        for (k, v) in &self.values {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        for (k, v) in &self.properties {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        for f in &self.facts {
            out.push('\n');
            out.push_str(&f.render_text());
        }
        out
    }

    /// Re-executes every machine-checked leaf in every trace.
    pub fn replays(&self) -> Result<bool> {
        for f in &self.facts {
            if !f.trace.replays()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

struct Spec {
    id: &'static str,
    title: String,
    parameter: Option<u32>,
    kb: KnowledgeBase,
    headline: Vec<(&'static str, DimQuantity)>,
    properties: Vec<String>,
    notes: Vec<String>,
}

/// Canonical id, accepting the alias `ex-5.1` and an inline parameter `ex-4.16(3)`.
fn normalize(id: &str) -> Result<(&'static str, Option<u32>)> {
    let id = id.trim();
    let (base, inline) = match id.split_once('(') {
        Some((b, rest)) => {
            let n = rest
                .strip_suffix(')')
                .and_then(|n| n.trim().parse::<u32>().ok())
                .ok_or_else(|| Error::invalid(format!("bad example parameter in {id:?}")))?;
            (b, Some(n))
        }
        None => (id, None),
    };
    let base = if base == "ex-5.1" { "ex-2.15" } else { base };
    EXAMPLE_IDS
        .iter()
        .find(|&&e| e == base)
        .map(|&e| (e, inline))
        .ok_or_else(|| Error::UnknownName(format!("example {id:?}")))
}

fn build(id: &str, parameter: Option<u32>) -> Result<Spec> {
    let (id, inline) = normalize(id)?;
    let parameter = parameter.or(inline);
    let takes_parameter = matches!(id, "ex-4.16" | "ex-5.10");
    if parameter.is_some() && !takes_parameter {
        return Err(Error::invalid(format!("{id} takes no parameter")));
    }
    match id {
        "ex-2.15" => Ok(product_pair()),
        "ex-5.2" => Ok(doubling_pair()),
        "ex-4.10" => c6_bestvina_brady(),
        "ex-4.11" => a5_floyd_richardson(),
        "ex-4.15" => Ok(cyclic_prime_flag_complex()),
        "ex-4.16" => prime_product(parameter.unwrap_or(2)),
        "ex-5.6" => Ok(c6_free_basis()),
        "ex-5.9" => Ok(klein_square()),
        "ex-5.10" => amalgam(parameter.unwrap_or(5)),
        _ => unreachable!("normalize only returns listed ids"),
    }
}

/// Reproduces a worked example. `parameter` is `n` for `ex-4.16` (default 2)
/// and `ex-5.10` (default 5).
pub fn reproduce_example(id: &str, parameter: Option<u32>) -> Result<ExampleBundle> {
    let spec = build(id, parameter)?;
    let d = spec.kb.run()?;
    bundle(spec, &d)
}

fn bundle(spec: Spec, d: &Derivation) -> Result<ExampleBundle> {
    let violations = d.adamson_bredon_violations();
    if !violations.is_empty() {
        return Err(Error::precondition(format!("Adamson exceeds Bredon for {violations:?}")));
    }
    let mut values = BTreeMap::new();
    let mut facts = Vec::new();
    for (name, q) in &spec.headline {
        let f = d.fact(q);
        values.insert(name.to_string(), f.value);
        facts.push(f);
    }
    let properties = spec
        .properties
        .iter()
        .filter_map(|k| d.property(k).map(|v| (k.clone(), v)))
        .collect();
    let mut notes = spec.notes;
    for (name, q) in &spec.headline {
        if q.kind == DimKind::Bredon {
            if let Some(hi) = d.bounds(q).hi.finite() {
                notes.push(format!(
                    "{name}: geometric dimension at most {} (gd-bound)",
                    hi.max(3)
                ));
            }
        }
    }
    Ok(ExampleBundle {
        id: spec.id.to_string(),
        title: spec.title,
        parameter: spec.parameter,
        values,
        properties,
        facts,
        notes,
    })
}

/// Best derivable fact for `target` from the built-in knowledge bases together
/// with `axioms`. Returns `[0, ∞]` with an empty trace when nothing applies.
pub fn derive(target: &DimQuantity, axioms: &[Axiom]) -> Result<DimFact> {
    for a in axioms {
        a.validate()?;
    }
    let mut kb = candidate_kbs(target)?
        .into_iter()
        .find(|kb| kb.mentions(target))
        .unwrap_or_default();
    for a in axioms {
        kb.axiom(a.clone());
    }
    if !kb.mentions(target) {
        return Ok(DimFact::unknown(target.clone()));
    }
    Ok(kb.run()?.fact(target))
}

fn candidate_kbs(target: &DimQuantity) -> Result<Vec<KnowledgeBase>> {
    let mut out = Vec::new();
    if let Some(kb) = finite_group_kb(target)? {
        out.push(kb);
    }
    if let Some(kb) = free_abelian_kb(target)? {
        out.push(kb);
    }
    for id in EXAMPLE_IDS {
        let parameter = match *id {
            "ex-4.16" => Some(product_size(target).unwrap_or(2)),
            "ex-5.10" => Some(amalgam_rank(target).unwrap_or(5)),
            _ => None,
        };
        out.push(build(id, parameter)?.kb);
    }
    Ok(out)
}

fn product_size(q: &DimQuantity) -> Option<u32> {
    let n = q.group.matches("H_{L_").count() as u32;
    (1..=MAX_PRODUCT_FACTORS).contains(&n).then_some(n)
}

fn amalgam_rank(q: &DimQuantity) -> Option<u32> {
    let rest = q.group.strip_prefix("G_")?;
    let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
    let n = digits.parse().ok()?;
    (1..=MAX_AMALGAM_RANK).contains(&n).then_some(n)
}

fn structure(relation: Relation, note: &str) -> Structure {
    Structure::new(relation, note)
}

fn bound(q: &DimQuantity, v: DimBounds) -> Claim {
    Claim::bound(q.clone(), v)
}

fn free_abelian_name(n: u32) -> String {
    vec!["Z"; n as usize].join("x")
}

/// Finite cyclic groups, `Z^n` and named finite groups, with the standard families.
fn finite_group_kb(target: &DimQuantity) -> Result<Option<KnowledgeBase>> {
    let name = target.group.as_str();
    let Ok(g) = crate::finite_groups::builtin(name) else {
        return Ok(None);
    };
    let mut kb = KnowledgeBase::default();
    let cd = DimQuantity::cd(name);
    kb.leaf(&format!("order {name}"), LeafSpec::FiniteOrder { group: name.into() });
    kb.structure(structure(Relation::FiniteGroup { cd: cd.clone() }, ""));
    let order = g.order();
    for q in [DimQuantity::adamson(name, "{1}"), DimQuantity::bredon(name, "{1}")] {
        kb.structure(structure(Relation::TrivialFamily { relative: q, cd: cd.clone() }, ""));
    }
    for q in [DimQuantity::adamson(name, "all"), DimQuantity::bredon(name, "all")] {
        kb.structure(structure(Relation::FamilyContainsGroup { quantity: q }, ""));
    }
    if order > 1 {
        let (a, b) = (DimQuantity::adamson(name, "proper"), DimQuantity::bredon(name, "proper"));
        kb.leaf(&format!("p-subgroups of {name}"), LeafSpec::ProperFamily { group: name.into() });
        kb.structure(structure(
            Relation::CdZeroFamily {
                adamson: a.clone(),
                bredon: b.clone(),
                subject: name.into(),
            },
            "",
        ));
        if let Some(m) = name.strip_prefix('C').and_then(|m| m.parse::<usize>().ok()) {
            let primes = prime_factors(m);
            let p = primes[0];
            if primes.iter().all(|&q| q == p) && m <= 32 {
                kb.leaf(
                    &format!("Euler obstruction {name}"),
                    LeafSpec::EulerObstruction {
                        order: m,
                        terms: 3,
                        subject: name.into(),
                    },
                );
                kb.structure(
                    structure(
                        Relation::PGroupProperFamily {
                            adamson: a.clone(),
                            subject: name.into(),
                        },
                        "",
                    )
                    .requiring(&[prop("euler_obstruction", name)]),
                );
            }
            let k = m / p;
            let quotient = format!("C{p}");
            let pushed = DimQuantity::bredon(quotient.as_str(), "{1}");
            let cdq = DimQuantity::cd(quotient.as_str());
            kb.leaf(&format!("C{m} / C{k}"), LeafSpec::PushedFamily { order: m, normal_order: k });
            kb.leaf(&format!("order {quotient}"), LeafSpec::FiniteOrder { group: quotient.clone() });
            kb.structure(
                structure(
                    Relation::QuotientBound {
                        sup: b.clone(),
                        quotient: pushed.clone(),
                    },
                    &format!("C{m} / C{k} ≅ C{p}"),
                )
                .requiring(&[pushed_family_key(m, k)]),
            );
            kb.structure(structure(Relation::TrivialFamily { relative: pushed, cd: cdq.clone() }, ""));
            kb.structure(structure(Relation::FiniteGroup { cd: cdq }, ""));
        }
    }
    Ok(Some(kb))
}

/// `cd(Z^n)` from the tensor-product resolution.
fn free_abelian_kb(target: &DimQuantity) -> Result<Option<KnowledgeBase>> {
    if target.kind != DimKind::Cd {
        return Ok(None);
    }
    let factors: Vec<&str> = target.group.split('x').collect();
    let n = factors.len() as u32;
    let is_named = target.group == "Z^2" || target.group == "2Z";
    if !(is_named || factors.iter().all(|f| *f == "Z")) || n > MAX_AMALGAM_RANK {
        return Ok(None);
    }
    let degrees = if is_named { 3 } else { n as usize + 1 };
    let mut kb = KnowledgeBase::default();
    kb.leaf(
        &format!("H*({})", target.group),
        LeafSpec::FixtureCohomology {
            group: target.group.clone(),
            coefficients: Coefficients::Trivial,
            degrees,
            quantity: target.clone(),
        },
    );
    Ok(Some(kb))
}

fn cohomology_leaf(kb: &mut KnowledgeBase, group: &str, c: Coefficients, degrees: usize, q: &DimQuantity) {
    kb.leaf(
        &format!("H*({group}; {})", coefficient_label(c)),
        LeafSpec::FixtureCohomology {
            group: group.into(),
            coefficients: c,
            degrees,
            quantity: q.clone(),
        },
    );
}

fn coefficient_label(c: Coefficients) -> &'static str {
    match c {
        Coefficients::Trivial => "Z",
        Coefficients::Sign => "Z_sign",
        Coefficients::Orientation => "Z_w",
        Coefficients::OrientationSquared => "Z_w⊠w",
    }
}

fn periodicity_leaf(kb: &mut KnowledgeBase, order: u32, q: &DimQuantity) {
    kb.leaf(
        &format!("H^even(C{order}; Z)"),
        LeafSpec::CyclicPeriodicity {
            order,
            degrees: 10,
            quantity: q.clone(),
        },
    );
}

fn product_pair() -> Spec {
    let (k, l) = ("ZxZ", "Z");
    let pair = DimQuantity::takasu(k, l);
    let (cdk, cdl) = (DimQuantity::cd(k), DimQuantity::cd(l));
    let fam = "⟨Z⟩";
    let (a, b) = (DimQuantity::adamson(k, fam), DimQuantity::bredon(k, fam));
    let mut kb = KnowledgeBase::default();
    cohomology_leaf(&mut kb, k, Coefficients::Trivial, 3, &cdk);
    cohomology_leaf(&mut kb, l, Coefficients::Trivial, 2, &cdl);
    kb.leaf(
        "H*(ZxZ, Z; Z)",
        LeafSpec::TakasuCone {
            pair: FixturePair::ProductSecondFactor,
            coefficients: Coefficients::Trivial,
            degrees: 3,
            quantity: pair.clone(),
        },
    );
    kb.leaf(
        "LES(ZxZ, Z; Z)",
        LeafSpec::LongExactSequence {
            pair: FixturePair::ProductSecondFactor,
            coefficients: Coefficients::Trivial,
            degrees: 3,
        },
    );
    kb.structure(structure(
        Relation::TakasuLes {
            pair: pair.clone(),
            group: cdk,
            sub: cdl.clone(),
        },
        "",
    ));
    kb.structure(structure(
        Relation::Normal {
            quotient: cdl,
            adamson: Some(a.clone()),
            bredon: Some(b.clone()),
        },
        "the second factor is normal with quotient the first factor, Z",
    ));
    Spec {
        id: "ex-2.15",
        title: "the pair (Z×Z, Z) with Z the second factor".into(),
        parameter: None,
        kb,
        headline: vec![("takasu", pair), ("adamson", a), ("bredon", b)],
        properties: vec![prop("les_exact", "ZxZ, Z; Trivial")],
        notes: Vec::new(),
    }
}

fn doubling_pair() -> Spec {
    let (k, l) = ("Z", "2Z");
    let pair = DimQuantity::takasu(k, l);
    let (cdk, cdl) = (DimQuantity::cd(k), DimQuantity::cd(l));
    let fam = "⟨2Z⟩";
    let (a, b) = (DimQuantity::adamson(k, fam), DimQuantity::bredon(k, fam));
    let q = DimQuantity::cd("Z/2");
    let mut kb = KnowledgeBase::default();
    cohomology_leaf(&mut kb, k, Coefficients::Trivial, 2, &cdk);
    cohomology_leaf(&mut kb, l, Coefficients::Trivial, 2, &cdl);
    kb.leaf(
        "H*(Z, 2Z; Z_sign)",
        LeafSpec::TakasuCone {
            pair: FixturePair::Doubling,
            coefficients: Coefficients::Sign,
            degrees: 3,
            quantity: pair.clone(),
        },
    );
    kb.leaf(
        "LES(Z, 2Z; Z_sign)",
        LeafSpec::LongExactSequence {
            pair: FixturePair::Doubling,
            coefficients: Coefficients::Sign,
            degrees: 3,
        },
    );
    periodicity_leaf(&mut kb, 2, &q);
    kb.structure(structure(
        Relation::TakasuLes {
            pair: pair.clone(),
            group: cdk,
            sub: cdl,
        },
        "",
    ));
    kb.structure(structure(
        Relation::Normal {
            quotient: q.clone(),
            adamson: Some(a.clone()),
            bredon: Some(b.clone()),
        },
        "2Z is normal in Z with quotient Z/2",
    ));
    kb.structure(structure(Relation::FiniteGroup { cd: q }, ""));
    Spec {
        id: "ex-5.2",
        title: "the pair (Z, 2Z) with sign coefficients".into(),
        parameter: None,
        kb,
        headline: vec![("takasu", pair), ("adamson", a), ("bredon", b)],
        properties: vec![prop("les_exact", "Z, 2Z; Sign")],
        notes: Vec::new(),
    }
}

/// `(label, trivial or of prime-power order)` for each conjugacy class.
fn classes(g: &FiniteGroup) -> Result<Vec<(String, bool)>> {
    Ok(all_subgroups(g)?
        .iter()
        .map(|c| {
            let h = &c.representative;
            let mut f = prime_factors(h.order());
            f.dedup();
            (subgroup_label(g, h), f.len() <= 1)
        })
        .collect())
}

fn c6_bestvina_brady() -> Result<Spec> {
    let s = "H_L";
    let k = "H_L⋊C6";
    let fam = "⟨C6⟩";
    let (a, b) = (DimQuantity::adamson(k, fam), DimQuantity::bredon(k, fam));
    let (ap, bp) = (DimQuantity::adamson("C6", "proper"), DimQuantity::bredon("C6", "proper"));
    let b1 = DimQuantity::bredon("C2", "{1}");
    let cd2 = DimQuantity::cd("C2");
    let c6 = cyclic(6);
    let cls = classes(&c6)?;
    let mut kb = KnowledgeBase::default();
    kb.leaf(
        "fixed sets of C6 on L",
        LeafSpec::FixedSets {
            action: BuiltinAction::C6FivePoint,
            subject: s.into(),
        },
    );
    kb.leaf(
        "H*_F(C6; sign at C6/C2)",
        LeafSpec::BredonWitness {
            degrees: 3,
            quantity: bp.clone(),
        },
    );
    kb.leaf("p-subgroups of C6", LeafSpec::ProperFamily { group: "C6".into() });
    kb.leaf("C6 / C3", LeafSpec::PushedFamily { order: 6, normal_order: 3 });
    periodicity_leaf(&mut kb, 2, &cd2);
    let fixed = |label: &str| prop("fixed_nonempty", &format!("{s}; {label}"));
    let proper_fixed: Vec<String> = cls
        .iter()
        .filter(|(l, _)| l != &subgroup_label(&c6, &crate::finite_groups::Subgroup::whole(&c6)))
        .map(|(l, _)| fixed(l))
        .collect();
    let whole = subgroup_label(&c6, &crate::finite_groups::Subgroup::whole(&c6));
    let mut lift = proper_fixed.clone();
    lift.push(format!("!{}", fixed(&whole)));
    kb.structure(structure(
        Relation::FixedPointCriterion {
            subject: s.into(),
            classes: cls,
        },
        "",
    ));
    kb.structure(structure(Relation::H1Criterion { subject: s.into() }, ""));
    kb.structure(structure(
        Relation::InassaridzeCriterion {
            adamson: a.clone(),
            subject: s.into(),
        },
        "",
    ));
    kb.structure(structure(
        Relation::BredonFreeness {
            bredon: b.clone(),
            subject: s.into(),
        },
        "",
    ));
    kb.structure(
        structure(
            Relation::BredonShapiro { sub: bp.clone(), sup: b.clone() },
            "a complement of H_L isomorphic to C6 outside the family meets it exactly in its proper subgroups",
        )
        .requiring(&lift),
    );
    kb.structure(
        structure(
            Relation::QuotientBound {
                sup: bp.clone(),
                quotient: b1.clone(),
            },
            "C6 / C3 ≅ C2",
        )
        .requiring(&[pushed_family_key(6, 3)]),
    );
    kb.structure(structure(Relation::TrivialFamily { relative: b1, cd: cd2.clone() }, ""));
    kb.structure(structure(Relation::FiniteGroup { cd: cd2 }, ""));
    kb.structure(structure(
        Relation::CdZeroFamily {
            adamson: ap.clone(),
            bredon: bp.clone(),
            subject: "C6".into(),
        },
        "",
    ));
    Ok(Spec {
        id: "ex-4.10",
        title: "Bestvina–Brady group H_L for C6 acting on five points".into(),
        parameter: None,
        kb,
        headline: vec![
            ("inassaridze", a),
            ("bredon", b),
            ("adamson_c6_proper", ap),
            ("bredon_c6_proper", bp),
        ],
        properties: vec![
            prop("h1_trivial_p_subgroups", s),
            prop("h1_trivial_all", s),
            prop("gamma_free", s),
            fixed(&whole),
        ],
        notes: Vec::new(),
    })
}

fn a5_floyd_richardson() -> Result<Spec> {
    let s = "H_L";
    let k = "H_L⋊A5";
    let fam = "⟨A5⟩";
    let (a, b) = (DimQuantity::adamson(k, fam), DimQuantity::bredon(k, fam));
    let fin = DimQuantity::bredon(k, "FIN");
    let p = DimQuantity::bredon("A5", "proper");
    let sub = DimQuantity::bredon("S", "S∩⟨A5⟩, S subconjugate to A5");
    let lifted = DimQuantity::bredon("S", "S∩⟨A5⟩, S a complement not conjugate to A5");
    let g = alternating(5)?;
    let cls = classes(&g)?;
    let whole = subgroup_label(&g, &crate::finite_groups::Subgroup::whole(&g));
    let mut pattern: Vec<Claim> = cls
        .iter()
        .map(|(l, _)| Claim::property(prop("fixed_nonempty", &format!("{s}; {l}")), l != &whole))
        .collect();
    pattern.extend([
        Claim::property(prop("admissible_effective", s), true),
        Claim::property(prop("free_kernel", s), true),
        Claim::property(prop("nontrivial", s), true),
    ]);
    let mut kb = KnowledgeBase::default();
    kb.axiom(Axiom::new(
        "acyclic-a5-complex",
        "A5 acts admissibly and effectively on an acyclic 2-dimensional flag complex L with no global fixed point, \
         every proper subgroup fixing a point; H_L is free of finite rank",
        "Floyd–Richardson acyclic complex, fixed points via the Leary–Nucinkis construction",
        pattern,
    ));
    kb.axiom(Axiom::new(
        "virtually-free",
        "cd_FIN(H_L⋊A5) = 1",
        "H_L⋊A5 is virtually free, hence acts properly on a tree (Dunwoody)",
        vec![bound(&fin, DimBounds::exact(1))],
    ));
    kb.axiom(Axiom::new(
        "a5-proper",
        "cd_proper(A5) = 2",
        "Bredon dimension of A5 for the family of proper subgroups (Adem)",
        vec![bound(&p, DimBounds::exact(2))],
    ));
    kb.structure(structure(
        Relation::FixedPointCriterion {
            subject: s.into(),
            classes: cls,
        },
        "",
    ));
    kb.structure(structure(Relation::H1Criterion { subject: s.into() }, ""));
    kb.structure(structure(
        Relation::InassaridzeCriterion {
            adamson: a.clone(),
            subject: s.into(),
        },
        "",
    ));
    kb.structure(structure(
        Relation::BredonFreeness {
            bredon: b.clone(),
            subject: s.into(),
        },
        "",
    ));
    kb.structure(structure(Relation::FamilyContainsGroup { quantity: sub.clone() }, ""));
    kb.structure(structure(
        Relation::Isomorphic { a: p.clone(), b: lifted.clone() },
        "such S is isomorphic to A5 and meets the family in its proper subgroups",
    ));
    kb.structure(structure(
        Relation::SpectralBound {
            target: b.clone(),
            fin,
            locals: vec![sub, lifted],
        },
        "every finite subgroup S is subconjugate to A5 or a complement isomorphic to A5",
    ));
    Ok(Spec {
        id: "ex-4.11",
        title: "Bestvina–Brady group H_L for A5 acting on an acyclic complex".into(),
        parameter: None,
        kb,
        headline: vec![("inassaridze", a), ("bredon", b)],
        properties: vec![
            prop("h1_trivial_p_subgroups", s),
            prop("h1_trivial_all", s),
            prop("gamma_free", s),
        ],
        notes: vec!["the exact value of the Bredon dimension (2 or 3) is not known".into()],
    })
}

fn flag_complex_pattern(s: &str, group: &str) -> Vec<Claim> {
    vec![
        Claim::property(prop("admissible_effective", s), true),
        Claim::property(prop("fixed_nonempty", &format!("{s}; 1")), true),
        Claim::property(prop("fixed_nonempty", &format!("{s}; {group}")), true),
        Claim::property(prop("torsion_free", s), true),
    ]
}

fn prime_classes(group: &str) -> Vec<(String, bool)> {
    vec![("1".into(), true), (group.into(), true)]
}

fn cyclic_prime_flag_complex() -> Spec {
    let s = "H_L";
    let k = "H_L⋊C_p";
    let (ag, bg) = (DimQuantity::adamson(k, "⟨C_p⟩"), DimQuantity::bredon(k, "⟨C_p⟩"));
    let (af, bf) = (DimQuantity::adamson(k, "FIN"), DimQuantity::bredon(k, "FIN"));
    let mut kb = KnowledgeBase::default();
    kb.axiom(Axiom::new(
        "cp-flag-complex",
        "for an odd prime p, C_p acts admissibly and effectively on a finite flag complex L with a global fixed point; \
         H_L is torsion-free",
        "Martínez-Pérez, Bestvina–Brady groups with cd_FIN exceeding the FIN-relative dimension",
        flag_complex_pattern(s, "C_p"),
    ));
    kb.axiom(Axiom::new(
        "cp-dimensions",
        "cd([H_L⋊C_p : FIN]) = 3 and cd_FIN(H_L⋊C_p) = 4",
        "Martínez-Pérez, computation for the same complex",
        vec![bound(&af, DimBounds::exact(3)), bound(&bf, DimBounds::exact(4))],
    ));
    kb.structure(structure(
        Relation::FixedPointCriterion {
            subject: s.into(),
            classes: prime_classes("C_p"),
        },
        "",
    ));
    kb.structure(
        structure(
            Relation::FamiliesCoincide {
                subject: s.into(),
                pairs: vec![(ag.clone(), af), (bg.clone(), bf)],
            },
            "",
        )
        .requiring(&[prop("torsion_free", s)]),
    );
    Spec {
        id: "ex-4.15",
        title: "Bestvina–Brady group with a C_p action fixing a point, p odd".into(),
        parameter: None,
        kb,
        headline: vec![("adamson", ag), ("bredon", bg)],
        properties: vec![prop("h1_trivial_all", s)],
        notes: Vec::new(),
    }
}

fn odd_primes(n: usize) -> Vec<usize> {
    (3..).filter(|&p| is_prime(p)).take(n).collect()
}

fn prime_product(n: u32) -> Result<Spec> {
    if n == 0 {
        return Err(Error::invalid("ex-4.16 needs at least one factor"));
    }
    if n > MAX_PRODUCT_FACTORS {
        return Err(Error::bound("product factors", MAX_PRODUCT_FACTORS as usize, n as usize));
    }
    let primes = odd_primes(n as usize);
    let factors: Vec<String> = (1..=n).map(|i| format!("H_{{L_{i}}}")).collect();
    let gammas: Vec<String> = primes.iter().map(|p| format!("C{p}")).collect();
    let g = factors.join("×");
    let gamma = gammas.join("×");
    let k = format!("({g})⋊({gamma})");
    let fam = format!("⟨{gamma}⟩");
    let (ag, bg) = (DimQuantity::adamson(&k, &fam), DimQuantity::bredon(&k, &fam));
    let (af, bf) = (DimQuantity::adamson(&k, "FIN"), DimQuantity::bredon(&k, "FIN"));
    let mut kb = KnowledgeBase::default();
    kb.leaf(
        "distinct primes",
        LeafSpec::DistinctPrimes {
            primes: primes.clone(),
            subject: g.clone(),
        },
    );
    for (f, c) in factors.iter().zip(&gammas) {
        kb.axiom(Axiom::new(
            &format!("flag-complex-{c}"),
            &format!("{c} acts admissibly and effectively on a finite flag complex with a global fixed point; {f} is torsion-free"),
            "Martínez-Pérez, Bestvina–Brady groups with a cyclic action of odd prime order",
            flag_complex_pattern(f, c),
        ));
        kb.structure(structure(
            Relation::FixedPointCriterion {
                subject: f.clone(),
                classes: prime_classes(c),
            },
            "",
        ));
    }
    kb.axiom(Axiom::new(
        "product-dimensions",
        &format!("cd([K : FIN]) = {} and cd_FIN(K) = {} for K = {k}", 3 * n, 4 * n),
        "Degrijse–Petrosyan, dimensions of products of these semidirect products",
        vec![
            bound(&af, DimBounds::exact(3 * n)),
            bound(&bf, DimBounds::exact(4 * n)),
            Claim::property(prop("torsion_free", &g), true),
        ],
    ));
    let mut req = vec![prop("coprime_orders", &g)];
    req.extend(factors.iter().map(|f| prop("torsion_free", f)));
    kb.structure(
        structure(
            Relation::ProductH1 {
                product: g.clone(),
                factors: factors.clone(),
            },
            "the orders are coprime, so every subgroup of the product is a product of subgroups",
        )
        .requiring(&req),
    );
    kb.structure(
        structure(
            Relation::FamiliesCoincide {
                subject: g.clone(),
                pairs: vec![(ag.clone(), af), (bg.clone(), bf)],
            },
            "",
        )
        .requiring(&[prop("torsion_free", &g)]),
    );
    Ok(Spec {
        id: "ex-4.16",
        title: format!("product of {n} Bestvina–Brady groups over distinct odd primes {primes:?}"),
        parameter: Some(n),
        kb,
        headline: vec![("adamson", ag), ("bredon", bg)],
        properties: vec![prop("h1_trivial_all", &g), prop("coprime_orders", &g)],
        notes: Vec::new(),
    })
}

fn c6_free_basis() -> Spec {
    let s = "G_L";
    let k = "G_L⋊C6";
    let b = DimQuantity::bredon(k, "⟨C6⟩");
    let t = DimQuantity::takasu(k, "C6");
    let mut kb = KnowledgeBase::default();
    kb.leaf(
        "free basis of G_L",
        LeafSpec::FreeBasis {
            action: BuiltinAction::C6FivePoint,
            subject: s.into(),
        },
    );
    kb.axiom(Axiom::new(
        "restriction-kernel",
        "restriction H^i(G_L⋊C6; Z) -> H^i(C6; Z) has nonzero kernel for infinitely many i",
        "Lyndon–Hochschild–Serre spectral sequence of G_L -> G_L⋊C6 -> C6 with trivial coefficients",
        vec![Claim::property(prop("restriction_kernel_infinitely_often", s), true)],
    ));
    kb.structure(structure(
        Relation::BredonFreeness {
            bredon: b.clone(),
            subject: s.into(),
        },
        "",
    ));
    kb.structure(structure(
        Relation::TakasuFreeness {
            takasu: t.clone(),
            subject: s.into(),
        },
        "",
    ));
    kb.structure(structure(
        Relation::RestrictionKernel {
            takasu: t.clone(),
            subject: s.into(),
        },
        "",
    ));
    Spec {
        id: "ex-5.6",
        title: "free group G_L on the five-point C6-set".into(),
        parameter: None,
        kb,
        headline: vec![("bredon", b), ("takasu", t)],
        properties: vec![
            prop("gamma_free", s),
            prop("strongly_gamma_free", s),
            prop("restriction_kernel_infinitely_often", s),
        ],
        notes: Vec::new(),
    }
}

fn klein_square() -> Spec {
    let s = "G";
    let t = DimQuantity::takasu("G⋊G", "G");
    let t2 = DimQuantity::takasu("G×G", "Δ(G)");
    let (cdg, cdgg) = (DimQuantity::cd("G"), DimQuantity::cd("G×G"));
    let (a, b) = (DimQuantity::adamson("G⋊G", "⟨G⟩"), DimQuantity::bredon("G⋊G", "⟨G⟩"));
    let (a2, b2) = (DimQuantity::adamson("G×G", "D"), DimQuantity::bredon("G×G", "D"));
    let (ad, bd) = (DimQuantity::adamson("δ", "⟨(c,c)⟩"), DimQuantity::bredon("δ", "⟨(c,c)⟩"));
    let q = DimQuantity::cd("Z/2");
    let mut kb = KnowledgeBase::default();
    cohomology_leaf(&mut kb, "Klein", Coefficients::Orientation, 3, &cdg);
    cohomology_leaf(&mut kb, "KleinxKlein", Coefficients::OrientationSquared, 5, &cdgg);
    kb.leaf(
        "Klein pair",
        LeafSpec::KleinPair {
            exponent_bound: 20,
            syllable_bound: 6,
            subject: s.into(),
        },
    );
    periodicity_leaf(&mut kb, 2, &q);
    let iso = [prop("pair_isomorphism", s)];
    for (x, y) in [(&t, &t2), (&a, &a2), (&b, &b2)] {
        kb.structure(
            structure(
                Relation::Isomorphic { a: x.clone(), b: y.clone() },
                "(g, h) ↦ (gh, h) carries G⋊G onto G×G and G onto the diagonal",
            )
            .requiring(&iso),
        );
    }
    kb.structure(structure(
        Relation::TakasuLes {
            pair: t2,
            group: cdgg,
            sub: cdg,
        },
        "the diagonal is isomorphic to G",
    ));
    let delta = [prop("delta_family_generated_by_cc", s)];
    kb.structure(
        structure(
            Relation::BredonShapiro { sub: bd.clone(), sup: b2 },
            "δ = ⟨(a, b)⟩ meets the family D in the subgroups of ⟨(c, c)⟩",
        )
        .requiring(&delta),
    );
    kb.structure(
        structure(
            Relation::RelativeShapiro { sub: ad.clone(), sup: a2 },
            "δ = ⟨(a, b)⟩ meets the family D in the subgroups of ⟨(c, c)⟩",
        )
        .requiring(&delta),
    );
    kb.structure(
        structure(
            Relation::Normal {
                quotient: q.clone(),
                adamson: Some(ad),
                bredon: Some(bd),
            },
            "δ is infinite cyclic and ⟨(c, c)⟩ has index 2",
        )
        .requiring(&[prop("cc_index_two_in_delta", s)]),
    );
    kb.structure(structure(Relation::FiniteGroup { cd: q }, ""));
    Spec {
        id: "ex-5.9",
        title: "the Klein bottle group G acting on itself by conjugation".into(),
        parameter: None,
        kb,
        headline: vec![("takasu", t), ("adamson", a), ("bredon", b)],
        properties: vec![
            prop("pair_isomorphism", s),
            prop("delta_family_generated_by_cc", s),
            prop("cc_index_two_in_delta", s),
        ],
        notes: Vec::new(),
    }
}

fn amalgam(n: u32) -> Result<Spec> {
    if n == 0 {
        return Err(Error::invalid("ex-5.10 needs n >= 1"));
    }
    if n > MAX_AMALGAM_RANK {
        return Err(Error::bound("amalgam rank", MAX_AMALGAM_RANK as usize, n as usize));
    }
    let g = format!("G_{n}");
    let semi = format!("{g}⋊{g}");
    let prod = format!("{g}×{g}");
    let b = DimQuantity::bredon(&semi, format!("⟨{g}⟩"));
    let b2 = DimQuantity::bredon(&prod, "D");
    let t = DimQuantity::takasu(&semi, &g);
    let t2 = DimQuantity::takasu(&prod, format!("Δ({g})"));
    let (cdg, cdgg) = (DimQuantity::cd(&g), DimQuantity::cd(&prod));
    let q = DimQuantity::cd(free_abelian_name(n));
    let mut kb = KnowledgeBase::default();
    cohomology_leaf(&mut kb, &free_abelian_name(n), Coefficients::Trivial, n as usize + 1, &q);
    kb.axiom(Axiom::new(
        "amalgam-cd",
        &format!("cd({g}) <= 2 for {g} = F_{n} amalgamated with itself along its commutator subgroup"),
        "an amalgam of free groups acts on its Bass–Serre tree with free stabilisers (Serre)",
        vec![bound(&cdg, DimBounds::at_most(2))],
    ));
    kb.axiom(Axiom::new(
        "product-cd",
        &format!("cd({prod}) <= 4"),
        "cd is subadditive on direct products (Bieri)",
        vec![bound(&cdgg, DimBounds::at_most(4))],
    ));
    kb.structure(structure(
        Relation::Isomorphic { a: b.clone(), b: b2.clone() },
        "(g, h) ↦ (gh, h) carries the semidirect product onto the direct product",
    ));
    kb.structure(structure(
        Relation::Isomorphic { a: t.clone(), b: t2.clone() },
        "(g, h) ↦ (gh, h) carries the semidirect product onto the direct product",
    ));
    kb.structure(structure(
        Relation::TakasuLes {
            pair: t2,
            group: cdgg.clone(),
            sub: cdg,
        },
        "",
    ));
    kb.structure(structure(
        Relation::AmalgamBound {
            bredon: b2,
            quotient_cd: q.clone(),
        },
        &format!("F_{n} modulo its commutator subgroup is Z^{n}"),
    ));
    let mut notes = Vec::new();
    if n > 4 {
        notes.push(format!(
            "the Bredon lower bound {n} exceeds the bound 4 on cd({prod}) and on the relative dimension"
        ));
    }
    Ok(Spec {
        id: "ex-5.10",
        title: format!("{g}, two copies of F_{n} amalgamated along the commutator subgroup"),
        parameter: Some(n),
        kb,
        headline: vec![("bredon", b), ("takasu", t), ("cd_product", cdgg), ("cd_quotient", q)],
        properties: Vec::new(),
        notes,
    })
}

/// True when the bundle's Bredon lower bound exceeds every finite upper bound
/// among its other headline values.
pub fn bredon_exceeds_others(bundle: &ExampleBundle) -> bool {
    let Some(b) = bundle.values.get("bredon") else {
        return false;
    };
    bundle
        .values
        .iter()
        .filter(|(k, _)| k.as_str() != "bredon" && k.as_str() != "cd_quotient")
        .all(|(_, v)| v.hi.is_finite() && b.lo > v.hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension_engine::Extended;

    fn values(id: &str, n: Option<u32>) -> BTreeMap<String, String> {
        let b = reproduce_example(id, n).unwrap();
        assert!(b.replays().unwrap(), "{id} traces replay");
        b.values.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
    }

    fn check(id: &str, n: Option<u32>, expected: &[(&str, &str)]) {
        let got = values(id, n);
        for (k, v) in expected {
            assert_eq!(got.get(*k).map(String::as_str), Some(*v), "{id} {k}: {got:?}");
        }
    }

    #[test]
    fn product_and_doubling_pairs() {
        check("ex-2.15", None, &[("takasu", "2"), ("adamson", "1"), ("bredon", "1")]);
        check("ex-5.1", None, &[("takasu", "2")]);
        check("ex-5.2", None, &[("takasu", "2"), ("adamson", "inf"), ("bredon", "inf")]);
    }

    #[test]
    fn bestvina_brady_examples() {
        check(
            "ex-4.10",
            None,
            &[("inassaridze", "1"), ("bredon", "inf"), ("adamson_c6_proper", "0")],
        );
        check("ex-4.11", None, &[("inassaridze", "1"), ("bredon", "[2, 3]")]);
        check("ex-4.15", None, &[("adamson", "3"), ("bredon", "4")]);
        for n in 1..=5u32 {
            let (a, b) = ((3 * n).to_string(), (4 * n).to_string());
            check("ex-4.16", Some(n), &[("adamson", &a), ("bredon", &b)]);
        }
    }

    #[test]
    fn takasu_examples() {
        check("ex-5.6", None, &[("bredon", "1"), ("takasu", "inf")]);
        check("ex-5.9", None, &[("takasu", "4"), ("adamson", "inf"), ("bredon", "inf")]);
    }

    #[test]
    fn amalgam_bound_exceeds_four() {
        let b = reproduce_example("ex-5.10(6)", None).unwrap();
        assert_eq!(b.values["bredon"].lo, Extended::Finite(6));
        assert_eq!(b.values["takasu"].hi, Extended::Finite(4));
        assert!(bredon_exceeds_others(&b));
        let small = reproduce_example("ex-5.10", Some(3)).unwrap();
        assert!(!bredon_exceeds_others(&small));
    }

    #[test]
    fn unknown_ids_and_parameters() {
        assert!(reproduce_example("ex-9.9", None).is_err());
        assert!(reproduce_example("ex-5.9", Some(2)).is_err());
        assert!(reproduce_example("ex-4.16", Some(MAX_PRODUCT_FACTORS + 1)).unwrap_err().is_bound());
    }

    #[test]
    fn derive_targets() {
        let t = DimQuantity::parse("cd(ZxZ, Z)").unwrap();
        assert_eq!(derive(&t, &[]).unwrap().value, DimBounds::exact(2));
        let k = DimQuantity::parse("cd([G⋊G : ⟨G⟩])").unwrap();
        assert_eq!(derive(&k, &[]).unwrap().value, DimBounds::infinite());
        let p = DimQuantity::adamson("C4", "proper");
        let f = derive(&p, &[]).unwrap();
        assert_eq!(f.value, DimBounds::infinite());
        assert!(f.trace.steps.iter().any(|s| matches!(s.source, crate::dimension_engine::Source::Rule { rule: crate::dimension_engine::RuleId::R11, .. })));
        let c6 = DimQuantity::bredon("C6", "proper");
        assert_eq!(derive(&c6, &[]).unwrap().value, DimBounds::infinite());
        assert_eq!(derive(&DimQuantity::cd("ZxZxZ"), &[]).unwrap().value, DimBounds::exact(3));
        let none = DimQuantity::cd("mystery");
        let f = derive(&none, &[]).unwrap();
        assert!(f.value.is_unknown() && f.trace.is_empty());
        let cited = Axiom::new(
            "given",
            "cd(mystery) = 3",
            "test citation",
            vec![Claim::bound(none.clone(), DimBounds::exact(3))],
        );
        let f = derive(&none, &[cited]).unwrap();
        assert_eq!(f.value, DimBounds::exact(3));
        assert_eq!(f.trace.axioms.len(), 1);
    }
}
