use serde::{Deserialize, Serialize};
use serde_json::json;

use super::quantity::DimQuantity;
use super::trace::Claim;
use super::value::DimBounds;
use crate::bredon::{atomic_module, bredon_cohomology_with, free_resolution_constant, OrbitCategory};
use crate::equivariant::{c6_five_point_action, fixed_subcomplex, klein_pair, subgroup_label, KleinElement};
use crate::error::{Error, Result};
use crate::exact_linalg::FgAbelianGroup;
use crate::finite_groups::{
    all_subgroups, cyclic, prime_factors, proper_subgroups_family, quotient, Subgroup,
};
use crate::group_modules::{
    cohomology_with, fixture_resolution, FixtureInclusion, Group, GroupModule, Inclusion, PresentedGroup,
};
use crate::relative_adamson::{mod_p_euler_obstruction, BarVariant, RelativeResolution};
use crate::relative_takasu::{les_verify, takasu_cone_route};

/// Property keys are `name(subject)`.
pub fn prop(name: &str, subject: &str) -> String {
    format!("{name}({subject})")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coefficients {
    Trivial,
    /// The sign character of `Z`, `t ↦ -1`.
    Sign,
    /// The orientation character of the Klein bottle group, `a, b ↦ -1`.
    Orientation,
    /// `w ⊠ w` on the square of the Klein bottle group.
    OrientationSquared,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixturePair {
    /// `(Z × Z, Z)` with `Z` the second factor.
    ProductSecondFactor,
    /// `(Z, 2Z)`.
    Doubling,
}

impl FixturePair {
    fn inclusion(self) -> Inclusion {
        Inclusion::Fixture(match self {
            FixturePair::ProductSecondFactor => FixtureInclusion::second_factor(),
            FixturePair::Doubling => FixtureInclusion::doubling(),
        })
    }

    fn label(self) -> &'static str {
        match self {
            FixturePair::ProductSecondFactor => "ZxZ, Z",
            FixturePair::Doubling => "Z, 2Z",
        }
    }
}

pub(crate) fn presented(name: &str) -> Result<PresentedGroup> {
    if let Some(m) = name.strip_prefix('C').and_then(|m| m.parse::<u32>().ok()) {
        return PresentedGroup::cyclic(m);
    }
    PresentedGroup::builtin(name)
}

pub(crate) fn coefficient_module(group: &PresentedGroup, c: Coefficients) -> Result<GroupModule> {
    let g = Group::presented(group.clone());
    match c {
        Coefficients::Trivial => Ok(GroupModule::trivial(g, 1)),
        Coefficients::Sign => GroupModule::character(g, &vec![-1; group.generator_names().len()]),
        Coefficients::Orientation => {
            if group.name() != "Klein" {
                return Err(Error::invalid("orientation coefficients need the Klein bottle group"));
            }
            GroupModule::character(g, &[-1, -1])
        }
        Coefficients::OrientationSquared => {
            let k = PresentedGroup::klein();
            if group != &PresentedGroup::product(&k, &k) {
                return Err(Error::invalid("orientation-squared coefficients need the Klein group squared"));
            }
            let w = GroupModule::character(Group::presented(k), &[-1, -1])?;
            w.external_tensor(&w)
        }
    }
}

fn show(groups: &[FgAbelianGroup]) -> Vec<String> {
    groups.iter().map(|g| g.to_string()).collect()
}

fn top_nonzero(groups: &[FgAbelianGroup]) -> Option<usize> {
    groups.iter().rposition(|g| !g.is_zero())
}

fn lower_bound(q: &DimQuantity, n: usize) -> Claim {
    Claim::bound(q.clone(), DimBounds::at_least(n as u32))
}

/// Which builtin Γ-set a leaf inspects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuiltinAction {
    /// `C6` on `{a,b,c,d,e}`: a 3-cycle and a transposition.
    C6FivePoint,
}

/// A computation whose outcome supports finite bounds or structural properties.
/// Leaves never conclude an infinite value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "computation", rename_all = "snake_case")]
pub enum LeafSpec {
    /// `H^*(K; M)` from an audited fixture resolution. Gives `cd >= top nonzero
    /// degree`, and `cd <= length` when the resolution stops before `degrees`.
    FixtureCohomology {
        group: String,
        coefficients: Coefficients,
        degrees: usize,
        quantity: DimQuantity,
    },
    /// `H^{2k}(C_m; Z) = Z/m` and odd degrees vanish, through `degrees`.
    CyclicPeriodicity {
        order: u32,
        degrees: usize,
        quantity: DimQuantity,
    },
    /// Relative cohomology of a fixture pair via the mapping cone.
    TakasuCone {
        pair: FixturePair,
        coefficients: Coefficients,
        degrees: usize,
        quantity: DimQuantity,
    },
    /// Exactness of the long exact sequence of a fixture pair.
    LongExactSequence {
        pair: FixturePair,
        coefficients: Coefficients,
        degrees: usize,
    },
    /// Fixed subcomplexes for every class of subgroups.
    FixedSets { action: BuiltinAction, subject: String },
    /// Stabilizers of a free basis permuted by the acting group.
    FreeBasis { action: BuiltinAction, subject: String },
    /// Pair isomorphism and conjugate powers in the Klein bottle group.
    KleinPair {
        exponent_bound: i64,
        syllable_bound: usize,
        subject: String,
    },
    /// Nonvanishing Bredon `H²` of `C6` with proper subgroups, on a sign module
    /// concentrated at one orbit.
    BredonWitness { degrees: usize, quantity: DimQuantity },
    /// Whether the family of proper subgroups of a finite group holds every
    /// `p`-subgroup, and whether the group is a nontrivial `p`-group.
    ProperFamily { group: String },
    /// The push-forward of the proper-subgroup family of `C_n` to `C_n / C_k`.
    PushedFamily { order: usize, normal_order: usize },
    /// The order of a finite group.
    FiniteOrder { group: String },
    /// The listed numbers are distinct primes, so the cyclic groups have coprime orders.
    DistinctPrimes { primes: Vec<usize>, subject: String },
    /// Mod-`p` Euler obstruction for the relative bar resolution of a cyclic `p`-group.
    EulerObstruction { order: usize, terms: usize, subject: String },
}

pub struct LeafOutcome {
    pub result: serde_json::Value,
    pub claims: Vec<Claim>,
}

impl LeafSpec {
    pub fn module(&self) -> &'static str {
        match self {
            LeafSpec::FixtureCohomology { .. } | LeafSpec::CyclicPeriodicity { .. } => "group_modules",
            LeafSpec::TakasuCone { .. } | LeafSpec::LongExactSequence { .. } => "relative_takasu",
            LeafSpec::FixedSets { .. } | LeafSpec::FreeBasis { .. } | LeafSpec::KleinPair { .. } => "equivariant",
            LeafSpec::BredonWitness { .. } => "bredon",
            LeafSpec::ProperFamily { .. }
            | LeafSpec::PushedFamily { .. }
            | LeafSpec::FiniteOrder { .. }
            | LeafSpec::DistinctPrimes { .. } => "finite_groups",
            LeafSpec::EulerObstruction { .. } => "relative_adamson",
        }
    }

    pub fn describe(&self) -> String {
        match self {
            LeafSpec::FixtureCohomology {
                group,
                coefficients,
                degrees,
                ..
            } => format!("H^0..{degrees}({group}; {coefficients:?}) from the fixture resolution"),
            LeafSpec::CyclicPeriodicity { order, degrees, .. } => {
                format!("H^k(C{order}; Z) for k <= {degrees}: Z/{order} in even degrees, 0 in odd")
            }
            LeafSpec::TakasuCone {
                pair,
                coefficients,
                degrees,
                ..
            } => format!("H^0..{degrees}({}; {coefficients:?}) via the mapping cone", pair.label()),
            LeafSpec::LongExactSequence {
                pair,
                coefficients,
                degrees,
            } => format!("long exact sequence of ({}) with {coefficients:?} coefficients through degree {degrees}", pair.label()),
            LeafSpec::FixedSets { subject, .. } => format!("fixed sets of every subgroup class on L for {subject}"),
            LeafSpec::FreeBasis { subject, .. } => format!("stabilizers of the basis of {subject}"),
            LeafSpec::KleinPair {
                exponent_bound,
                syllable_bound,
                ..
            } => format!("Klein pair isomorphism and conjugate powers a^m ~ b^n, |m|,|n| <= {exponent_bound}, conjugators of <= {syllable_bound} syllables"),
            LeafSpec::BredonWitness { degrees, .. } => {
                format!("Bredon H^0..{degrees} of C6 with proper subgroups on the frozen witness module")
            }
            LeafSpec::ProperFamily { group } => format!("p-subgroups of {group} against its proper subgroups"),
            LeafSpec::PushedFamily { order, normal_order } => {
                format!("push-forward of the proper subgroups of C{order} to C{order}/C{normal_order}")
            }
            LeafSpec::FiniteOrder { group } => format!("order of {group}"),
            LeafSpec::DistinctPrimes { primes, .. } => format!("{primes:?} are distinct primes"),
            LeafSpec::EulerObstruction { order, terms, .. } => {
                format!("mod-p Euler obstruction on {terms} relative bar terms over C{order}")
            }
        }
    }

    pub fn run(&self) -> Result<LeafOutcome> {
        match self {
            LeafSpec::FixtureCohomology {
                group,
                coefficients,
                degrees,
                quantity,
            } => {
                let p = presented(group)?;
                let res = fixture_resolution(&p, *degrees + 1)?;
                let m = coefficient_module(&p, *coefficients)?;
                let h = cohomology_with(&res, &m, *degrees)?;
                let composites = res.composites_vanish()?;
                if !composites {
                    return Err(Error::precondition("fixture resolution fails d∘d = 0"));
                }
                let ranks = res.ranks().to_vec();
                let length = ranks.iter().rposition(|&r| r > 0).unwrap_or(0);
                let mut claims = Vec::new();
                if let Some(top) = top_nonzero(&h) {
                    claims.push(lower_bound(quantity, top));
                }
                if length < *degrees {
                    claims.push(Claim::bound(quantity.clone(), DimBounds::at_most(length as u32)));
                }
                Ok(LeafOutcome {
                    result: json!({
                        "resolution_ranks": ranks,
                        "composites_vanish": composites,
                        "cohomology": show(&h),
                    }),
                    claims,
                })
            }
            LeafSpec::CyclicPeriodicity {
                order,
                degrees,
                quantity,
            } => {
                let p = PresentedGroup::cyclic(*order)?;
                let res = fixture_resolution(&p, *degrees + 1)?;
                let m = coefficient_module(&p, Coefficients::Trivial)?;
                let h = cohomology_with(&res, &m, *degrees)?;
                let periodic = (1..=*degrees).all(|k| {
                    if k % 2 == 0 {
                        h[k] == FgAbelianGroup::cyclic(*order as u64)
                    } else {
                        h[k].is_zero()
                    }
                });
                let mut claims = vec![Claim::property(prop("nontrivial_finite", &quantity.group), *order > 1)];
                if periodic && *order > 1 {
                    claims.push(lower_bound(quantity, *degrees - degrees % 2));
                }
                Ok(LeafOutcome {
                    result: json!({ "cohomology": show(&h), "periodic": periodic }),
                    claims,
                })
            }
            LeafSpec::TakasuCone {
                pair,
                coefficients,
                degrees,
                quantity,
            } => {
                let inc = pair.inclusion();
                let parent = inc.parent().as_presented().expect("fixture pairs are presented").clone();
                let m = coefficient_module(&parent, *coefficients)?;
                let r = takasu_cone_route(&inc, &m, *degrees)?;
                let claims = top_nonzero(&r.groups).map(|t| lower_bound(quantity, t)).into_iter().collect();
                Ok(LeafOutcome {
                    result: json!({ "relative_cohomology": show(&r.groups) }),
                    claims,
                })
            }
            LeafSpec::LongExactSequence {
                pair,
                coefficients,
                degrees,
            } => {
                let inc = pair.inclusion();
                let parent = inc.parent().as_presented().expect("fixture pairs are presented").clone();
                let m = coefficient_module(&parent, *coefficients)?;
                let r = les_verify(&inc, &m, *degrees)?;
                let nodes: Vec<String> = r.nodes.iter().map(|n| format!("{} = {}", n.label, n.group)).collect();
                let key = prop("les_exact", &format!("{}; {coefficients:?}", pair.label()));
                Ok(LeafOutcome {
                    result: json!({
                        "nodes": nodes,
                        "composites_zero": r.composites_zero,
                        "exact": r.exact,
                    }),
                    claims: vec![Claim::property(key, r.exact && r.composites_zero)],
                })
            }
            LeafSpec::FixedSets { action, subject } => {
                let BuiltinAction::C6FivePoint = action;
                let a = c6_five_point_action();
                let g = a.group().clone();
                let mut rows = Vec::new();
                let mut claims = Vec::new();
                for class in all_subgroups(&g)? {
                    let label = subgroup_label(&g, &class.representative);
                    let fixed = fixed_subcomplex(&a, &class.representative);
                    let names = fixed.labels().to_vec();
                    claims.push(Claim::property(prop("fixed_nonempty", &format!("{subject}; {label}")), !names.is_empty()));
                    rows.push(json!({ "subgroup": label, "order": class.representative.order(), "fixed": names }));
                }
                let admissible = a.is_admissible() && a.is_effective() && !a.complex().is_empty();
                let discrete = a.complex().dimension() == Some(0) && a.complex().vertex_count() >= 2;
                claims.push(Claim::property(prop("admissible_effective", subject), admissible));
                claims.push(Claim::property(prop("free_kernel", subject), discrete));
                claims.push(Claim::property(prop("nontrivial", subject), a.complex().vertex_count() >= 2));
                Ok(LeafOutcome {
                    result: json!({
                        "vertices": a.complex().labels(),
                        "fixed_sets": rows,
                        "admissible_effective": admissible,
                        "discrete": discrete,
                    }),
                    claims,
                })
            }
            LeafSpec::FreeBasis { action, subject } => {
                let BuiltinAction::C6FivePoint = action;
                let basis = c6_five_point_action().vertex_action().clone();
                let stabs: Vec<usize> = (0..basis.len()).map(|x| basis.stabilizer(x).order()).collect();
                let free = basis.is_free();
                Ok(LeafOutcome {
                    result: json!({
                        "basis": basis.labels(),
                        "stabilizer_orders": stabs,
                        "free_gamma_set": free,
                    }),
                    claims: vec![
                        Claim::property(prop("gamma_free", subject), true),
                        Claim::property(prop("strongly_gamma_free", subject), free),
                        Claim::property(prop("nontrivial", subject), !basis.is_empty()),
                    ],
                })
            }
            LeafSpec::KleinPair {
                exponent_bound,
                syllable_bound,
                subject,
            } => {
                let r = klein_pair(*exponent_bound, *syllable_bound)?;
                use KleinElement as K;
                let index_two = K::A.pow(2) == K::C && K::B.pow(2) == K::C && K::A != K::C;
                let family = r.passed() && r.only_even_diagonal;
                Ok(LeafOutcome {
                    result: serde_json::to_value(&r).map_err(|e| Error::invalid(e.to_string()))?,
                    claims: vec![
                        Claim::property(prop("pair_isomorphism", subject), r.relations_hold && r.inverse_on_generators && r.sampled_homomorphism),
                        Claim::property(prop("delta_family_generated_by_cc", subject), family),
                        Claim::property(prop("cc_index_two_in_delta", subject), index_two),
                    ],
                })
            }
            LeafSpec::BredonWitness { degrees, quantity } => {
                let k = cyclic(6);
                let cat = OrbitCategory::new(&k, &proper_subgroups_family(&k)?)?;
                let res = free_resolution_constant(&cat, *degrees + 1)?;
                let exact = res.verify_exact(&cat);
                let signs: Vec<i64> = k.elements().map(|g| if g % 2 == 0 { 1 } else { -1 }).collect();
                let sign = GroupModule::character(Group::finite(k.clone()), &signs)?;
                let witness = atomic_module(&cat, 2, &sign, 0)?;
                let h = bredon_cohomology_with(&cat, &res, &witness, *degrees)?;
                let claims = if exact {
                    top_nonzero(&h).map(|t| lower_bound(quantity, t)).into_iter().collect()
                } else {
                    Vec::new()
                };
                Ok(LeafOutcome {
                    result: json!({
                        "resolution_ranks": res.ranks(),
                        "resolution_exact": exact,
                        "witness_object": cat.object_label(2),
                        "cohomology": show(&h),
                    }),
                    claims,
                })
            }
            LeafSpec::ProperFamily { group } => proper_family(group),
            LeafSpec::PushedFamily { order, normal_order } => pushed_family(*order, *normal_order),
            LeafSpec::FiniteOrder { group } => {
                let g = crate::finite_groups::builtin(group)?;
                Ok(LeafOutcome {
                    result: json!({ "order": g.order() }),
                    claims: vec![Claim::property(prop("nontrivial_finite", group), g.order() > 1)],
                })
            }
            LeafSpec::DistinctPrimes { primes, subject } => {
                let all_prime = primes.iter().all(|&p| crate::finite_groups::is_prime(p));
                let mut sorted = primes.clone();
                sorted.sort_unstable();
                sorted.dedup();
                let distinct = sorted.len() == primes.len();
                Ok(LeafOutcome {
                    result: json!({ "primes": primes, "all_prime": all_prime, "distinct": distinct }),
                    claims: vec![Claim::property(prop("coprime_orders", subject), all_prime && distinct)],
                })
            }
            LeafSpec::EulerObstruction { order, terms, subject } => {
                let p = cyclic(*order);
                let family = proper_subgroups_family(&p)?;
                let bar = RelativeResolution::for_family(&p, &family, *terms, BarVariant::Normalized)?;
                let candidate = (0..*terms).map(|q| bar.term(q)).collect::<Result<Vec<_>>>()?;
                let obstruction = mod_p_euler_obstruction(&p, bar.generators(), &candidate)?;
                let mut primes = prime_factors(*order);
                primes.dedup();
                Ok(LeafOutcome {
                    result: serde_json::to_value(&obstruction).map_err(|e| Error::invalid(e.to_string()))?,
                    claims: vec![
                        Claim::property(prop("nontrivial_p_group", subject), primes.len() == 1),
                        Claim::property(prop("euler_obstruction", subject), obstruction.obstruction_holds),
                    ],
                })
            }
        }
    }
}

fn is_prime_power(n: usize) -> bool {
    let mut f = prime_factors(n);
    f.dedup();
    f.len() <= 1
}

fn proper_family(group: &str) -> Result<LeafOutcome> {
    let g = crate::finite_groups::builtin(group)?;
    let family = proper_subgroups_family(&g)?;
    let classes = all_subgroups(&g)?;
    let p_classes: Vec<&Subgroup> = classes
        .iter()
        .map(|c| &c.representative)
        .filter(|h| is_prime_power(h.order()))
        .collect();
    let contains_p = classes
        .iter()
        .filter(|c| is_prime_power(c.representative.order()))
        .all(|c| c.members.iter().all(|h| family.contains(h)));
    let proper = !family.contains(&Subgroup::whole(&g));
    let p_group = g.order() > 1 && is_prime_power(g.order());
    Ok(LeafOutcome {
        result: json!({
            "order": g.order(),
            "p_subgroup_class_orders": p_classes.iter().map(|h| h.order()).collect::<Vec<_>>(),
            "family_size": family.len(),
            "contains_every_p_subgroup": proper && contains_p,
        }),
        claims: vec![
            Claim::property(prop("proper_family_contains_p_subgroups", group), proper && contains_p),
            Claim::property(prop("nontrivial_p_group", group), p_group),
        ],
    })
}

/// Key for "the proper subgroups of `C_n` push forward to `{1}` on `C_n / C_k`".
pub fn pushed_family_key(order: usize, normal_order: usize) -> String {
    prop("pushed_family_trivial", &format!("C{order} / C{normal_order}"))
}

fn pushed_family(order: usize, normal_order: usize) -> Result<LeafOutcome> {
    if normal_order == 0 || !order.is_multiple_of(normal_order) {
        return Err(Error::invalid(format!("C{order} has no subgroup of order {normal_order}")));
    }
    let g = cyclic(order);
    let family = proper_subgroups_family(&g)?;
    let n = Subgroup::generated_by(&g, &[(order / normal_order) % order]);
    let (q, proj) = quotient(&g, &n)?;
    let pushed: Vec<usize> = all_subgroups(&q)?
        .into_iter()
        .filter(|c| {
            let pre: Vec<usize> = g.elements().filter(|&x| c.representative.contains(proj[x])).collect();
            family.contains(&Subgroup::new(&g, pre).expect("preimages are subgroups"))
        })
        .map(|c| c.representative.order())
        .collect();
    Ok(LeafOutcome {
        result: json!({
            "quotient_order": q.order(),
            "pushed_family_orders": pushed,
        }),
        claims: vec![Claim::property(pushed_family_key(order, normal_order), pushed == [1])],
    })
}
