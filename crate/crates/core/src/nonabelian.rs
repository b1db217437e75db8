//! First non-abelian cohomology `H^1(Γ; G)` of finite groups by enumeration,
//! and its comparison with `G`-conjugacy classes of complements in `G ⋊ Γ`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_groups::{
    cyclic, direct_product, power_automorphism, semidirect_product, subgroup_list_bounded, symmetric,
    alternating, dihedral, FiniteGroup, GroupAction, SemidirectProduct, Subgroup,
};

/// Largest number of generator-image tuples tried during cocycle enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 2_000_000;

/// A crossed homomorphism `c(γδ) = c(γ) · γ(c(δ))`, as the image of every element of `Γ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cocycle {
    pub assignment: Vec<usize>,
}

impl Cocycle {
    pub fn is_cocycle(&self, gamma: &FiniteGroup, g: &FiniteGroup, action: &GroupAction) -> bool {
        let c = &self.assignment;
        c.len() == gamma.order()
            && gamma.elements().all(|x| {
                gamma
                    .elements()
                    .all(|y| c[gamma.mul(x, y)] == g.mul(c[x], action.apply(x, c[y])))
            })
    }

    /// `γ ↦ h^-1 c(γ) γ(h)`.
    pub fn twist(&self, gamma: &FiniteGroup, g: &FiniteGroup, action: &GroupAction, h: usize) -> Cocycle {
        Cocycle {
            assignment: gamma
                .elements()
                .map(|x| g.mul(g.mul(g.inv(h), self.assignment[x]), action.apply(x, h)))
                .collect(),
        }
    }

    /// The principal cocycle `γ ↦ h^-1 γ(h)`.
    pub fn principal(gamma: &FiniteGroup, g: &FiniteGroup, action: &GroupAction, h: usize) -> Cocycle {
        Cocycle {
            assignment: vec![g.identity(); gamma.order()],
        }
        .twist(gamma, g, action, h)
    }
}

/// Equivalence classes of cocycles, each stored as its least member.
#[derive(Clone, Debug, Serialize)]
pub struct H1Set {
    pub classes: Vec<Cocycle>,
    pub class_sizes: Vec<usize>,
    pub trivial_class_index: usize,
    pub cocycle_count: usize,
}

impl H1Set {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// All cocycles, found by enumerating images of a generating set of `Γ` and
/// keeping those that extend to a section `γ ↦ (c(γ), γ)` of `G ⋊ Γ`.
pub fn enumerate_cocycles(
    gamma: &FiniteGroup,
    g: &FiniteGroup,
    action: &GroupAction,
    bound: usize,
) -> Result<Vec<Cocycle>> {
    let sd = semidirect_product(g, gamma, action);
    let gens = gamma.generators();
    let n = g.order();
    let tuples = (0..gens.len()).try_fold(1usize, |acc, _| acc.checked_mul(n));
    match tuples {
        Some(t) if t <= bound => {}
        _ => {
            return Err(Error::bound(
                "cocycle enumeration tuples",
                bound,
                tuples.unwrap_or(usize::MAX),
            ))
        }
    }
    let mut out = Vec::new();
    let mut images = vec![0usize; gens.len()];
    loop {
        let targets: Vec<usize> = gens.iter().zip(&images).map(|(&s, &c)| sd.pair(c, s)).collect();
        if let Some(map) = gamma.extend_homomorphism(&gens, &targets, sd.group.identity(), |a, b| sd.group.mul(a, b)) {
            out.push(Cocycle {
                assignment: map.iter().map(|&x| sd.split(x).0).collect(),
            });
        }
        // next tuple
        let mut i = 0;
        loop {
            if i == images.len() {
                out.sort();
                return Ok(out);
            }
            images[i] += 1;
            if images[i] < n {
                break;
            }
            images[i] = 0;
            i += 1;
        }
    }
}

pub fn h1_bruteforce(gamma: &FiniteGroup, g: &FiniteGroup, action: &GroupAction) -> Result<H1Set> {
    h1_bruteforce_bounded(gamma, g, action, DEFAULT_ENUMERATION_BOUND)
}

pub fn h1_bruteforce_bounded(
    gamma: &FiniteGroup,
    g: &FiniteGroup,
    action: &GroupAction,
    bound: usize,
) -> Result<H1Set> {
    let cocycles = enumerate_cocycles(gamma, g, action, bound)?;
    let mut seen: BTreeSet<Cocycle> = BTreeSet::new();
    let mut classes = Vec::new();
    let mut class_sizes = Vec::new();
    for c in &cocycles {
        if seen.contains(c) {
            continue;
        }
        let orbit: BTreeSet<Cocycle> = g.elements().map(|h| c.twist(gamma, g, action, h)).collect();
        classes.push(orbit.iter().next().expect("nonempty orbit").clone());
        class_sizes.push(orbit.len());
        seen.extend(orbit);
    }
    if seen.len() != cocycles.len() {
        return Err(Error::invalid("twisting produced a map that is not a cocycle"));
    }
    let trivial = Cocycle {
        assignment: vec![g.identity(); gamma.order()],
    };
    let trivial_class_index = classes
        .iter()
        .position(|rep| g.elements().any(|h| rep.twist(gamma, g, action, h) == trivial))
        .ok_or_else(|| Error::invalid("trivial cocycle missing"))?;
    Ok(H1Set {
        classes,
        class_sizes,
        trivial_class_index,
        cocycle_count: cocycles.len(),
    })
}

/// Subgroups `C` with `C ∩ G = 1` and `|C| = |Γ|`, grouped into classes under
/// conjugation by elements of `G`; each class sorted, classes sorted by least member.
pub fn complement_classes(sd: &SemidirectProduct) -> Result<Vec<Vec<Subgroup>>> {
    let s = &sd.group;
    let complements: Vec<Subgroup> = subgroup_list_bounded(s, s.order().max(1))?
        .into_iter()
        .filter(|c| c.order() == sd.acting_order && c.intersection(&sd.normal).is_trivial())
        .collect();
    let mut assigned: BTreeSet<Subgroup> = BTreeSet::new();
    let mut classes = Vec::new();
    for c in &complements {
        if assigned.contains(c) {
            continue;
        }
        let class: BTreeSet<Subgroup> = sd.normal.elements().iter().map(|&x| c.conjugate(s, x)).collect();
        assigned.extend(class.iter().cloned());
        classes.push(class.into_iter().collect::<Vec<_>>());
    }
    classes.sort();
    Ok(classes)
}

/// Outcome of matching cocycle classes with complement classes.
#[derive(Clone, Debug, Serialize)]
pub struct BijectionReport {
    pub h1_classes: usize,
    pub complement_classes: usize,
    /// `(cocycle class, complement class)` pairs.
    pub matching: Vec<(usize, usize)>,
    pub bijective: bool,
}

/// Sends each cocycle class to the class of `{(c(γ), γ)}` and checks the
/// result is a bijection onto the complement classes.
pub fn bijection_check(gamma: &FiniteGroup, g: &FiniteGroup, action: &GroupAction) -> Result<BijectionReport> {
    let h1 = h1_bruteforce(gamma, g, action)?;
    let sd = semidirect_product(g, gamma, action);
    let classes = complement_classes(&sd)?;
    let lookup: HashMap<&Subgroup, usize> = classes
        .iter()
        .enumerate()
        .flat_map(|(i, cl)| cl.iter().map(move |c| (c, i)))
        .collect();
    let mut matching = Vec::new();
    let mut hit = vec![false; classes.len()];
    let mut injective = true;
    for (i, c) in h1.classes.iter().enumerate() {
        let sub = Subgroup::new(
            &sd.group,
            gamma.elements().map(|x| sd.pair(c.assignment[x], x)).collect(),
        )?;
        let j = *lookup
            .get(&sub)
            .ok_or_else(|| Error::invalid("cocycle graph is not a complement"))?;
        injective &= !std::mem::replace(&mut hit[j], true);
        matching.push((i, j));
    }
    Ok(BijectionReport {
        h1_classes: h1.len(),
        complement_classes: classes.len(),
        matching,
        bijective: injective && hit.iter().all(|&h| h),
    })
}

/// A named action `Γ -> Aut(G)` from the builtin suite.
#[derive(Clone, Debug)]
pub struct NamedAction {
    pub name: String,
    pub gamma: FiniteGroup,
    pub g: FiniteGroup,
    pub action: GroupAction,
}

impl NamedAction {
    pub fn semidirect_order(&self) -> usize {
        self.gamma.order() * self.g.order()
    }
}

fn cyclic_on_cyclic(m: usize, n: usize, k: i64) -> Result<NamedAction> {
    let gamma = cyclic(m);
    let g = cyclic(n);
    let action = if m == 1 {
        GroupAction::trivial(&gamma, &g)
    } else {
        GroupAction::from_generator_images(&gamma, &g, &[(1, power_automorphism(&g, k)?)])?
    };
    Ok(NamedAction {
        name: format!("C{m} on C{n} by x^{k}"),
        gamma,
        g,
        action,
    })
}

/// `Γ = complement`, `G = normal` acting by conjugation inside `ambient`.
pub fn conjugation_action(
    name: &str,
    ambient: &FiniteGroup,
    normal: &Subgroup,
    complement: &Subgroup,
) -> Result<NamedAction> {
    if !normal.is_normal(ambient) {
        return Err(Error::precondition("conjugation needs a normal subgroup"));
    }
    let (g, g_emb) = normal.to_group(ambient);
    let (gamma, c_emb) = complement.to_group(ambient);
    let back: HashMap<usize, usize> = g_emb.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let perms = gamma
        .elements()
        .map(|c| {
            let y = c_emb[c];
            g.elements().map(|x| back[&ambient.conjugate(y, g_emb[x])]).collect()
        })
        .collect();
    let action = GroupAction::new(&gamma, &g, perms)?;
    Ok(NamedAction {
        name: name.to_string(),
        gamma,
        g,
        action,
    })
}

/// First normal subgroup of order `n` together with a complement of order `[S:N]`.
fn split_of(ambient: &FiniteGroup, n: usize) -> Result<(Subgroup, Subgroup)> {
    let subs = subgroup_list_bounded(ambient, ambient.order())?;
    let normal = subs
        .iter()
        .find(|h| h.order() == n && h.is_normal(ambient))
        .ok_or_else(|| Error::NotFound(format!("normal subgroup of order {n}")))?
        .clone();
    let complement = subs
        .iter()
        .find(|c| c.order() * n == ambient.order() && c.intersection(&normal).is_trivial())
        .ok_or_else(|| Error::NotFound("complement".into()))?
        .clone();
    Ok((normal, complement))
}

/// Semidirect products used for regression: cyclic actions by power maps,
/// trivial actions, and conjugation actions inside `A4` and `S4`.
pub fn builtin_suite() -> Result<Vec<NamedAction>> {
    let mut out = vec![
        cyclic_on_cyclic(2, 2, 1)?,
        cyclic_on_cyclic(2, 3, -1)?,
        cyclic_on_cyclic(2, 4, -1)?,
        cyclic_on_cyclic(2, 5, -1)?,
        cyclic_on_cyclic(2, 6, -1)?,
        cyclic_on_cyclic(3, 3, 1)?,
        cyclic_on_cyclic(4, 5, 2)?,
        cyclic_on_cyclic(3, 7, 2)?,
        cyclic_on_cyclic(6, 7, 3)?,
        cyclic_on_cyclic(4, 3, -1)?,
        cyclic_on_cyclic(8, 9, -1)?,
        cyclic_on_cyclic(1, 5, 1)?,
        cyclic_on_cyclic(3, 1, 1)?,
    ];
    let c3sq = direct_product(&cyclic(3), &cyclic(3));
    out.push(NamedAction {
        name: "C2 on C3xC3 by inversion".into(),
        action: GroupAction::from_generator_images(&cyclic(2), &c3sq, &[(1, power_automorphism(&c3sq, -1)?)])?,
        gamma: cyclic(2),
        g: c3sq,
    });
    let v4 = direct_product(&cyclic(2), &cyclic(2));
    out.push(NamedAction {
        name: "C2 on C2xC2 by swapping factors".into(),
        action: GroupAction::from_generator_images(&cyclic(2), &v4, &[(1, vec![0, 2, 1, 3])])?,
        gamma: cyclic(2),
        g: v4.clone(),
    });
    let k4 = direct_product(&cyclic(2), &cyclic(2));
    let c3 = cyclic(3);
    let inv = power_automorphism(&c3, -1)?;
    out.push(NamedAction {
        name: "C2xC2 on C3, first factor inverting".into(),
        action: GroupAction::new(
            &k4,
            &c3,
            k4.elements().map(|x| if x / 2 == 1 { inv.clone() } else { (0..3).collect() }).collect(),
        )?,
        gamma: k4,
        g: c3,
    });
    for (name, gamma, g) in [
        ("C2 trivially on S3", cyclic(2), symmetric(3)?),
        ("C2 trivially on D4", cyclic(2), dihedral(4)),
        ("C3 trivially on C2xC2", cyclic(3), v4.clone()),
    ] {
        out.push(NamedAction {
            name: name.into(),
            action: GroupAction::trivial(&gamma, &g),
            gamma,
            g,
        });
    }
    let a4 = alternating(4)?;
    let (n, c) = split_of(&a4, 4)?;
    out.push(conjugation_action("C3 on V4 inside A4", &a4, &n, &c)?);
    let s4 = symmetric(4)?;
    let (n, c) = split_of(&s4, 4)?;
    out.push(conjugation_action("S3 on V4 inside S4", &s4, &n, &c)?);
    let (n, c) = split_of(&s4, 12)?;
    out.push(conjugation_action("C2 on A4 inside S4", &s4, &n, &c)?);
    let s3 = symmetric(3)?;
    let (n, c) = split_of(&s3, 3)?;
    out.push(conjugation_action("C2 on C3 inside S3", &s3, &n, &c)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_groups::trivial;

    #[test]
    fn small_cases() {
        let c2 = cyclic(2);
        let h = h1_bruteforce(&c2, &c2, &GroupAction::trivial(&c2, &c2)).unwrap();
        assert_eq!(h.len(), 2);
        let inv = cyclic_on_cyclic(2, 3, -1).unwrap();
        let h = h1_bruteforce(&inv.gamma, &inv.g, &inv.action).unwrap();
        assert_eq!((h.len(), h.cocycle_count), (1, 3));
        let t = trivial();
        let c5 = cyclic(5);
        assert_eq!(h1_bruteforce(&t, &c5, &GroupAction::trivial(&t, &c5)).unwrap().len(), 1);
    }

    #[test]
    fn complements() {
        let inv = cyclic_on_cyclic(2, 3, -1).unwrap();
        let sd = semidirect_product(&inv.g, &inv.gamma, &inv.action);
        let cl = complement_classes(&sd).unwrap();
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].len(), 3);
        let c2 = cyclic(2);
        let sd = semidirect_product(&c2, &c2, &GroupAction::trivial(&c2, &c2));
        assert_eq!(complement_classes(&sd).unwrap().len(), 2);
        let t = trivial();
        let sd = semidirect_product(&t, &cyclic(3), &GroupAction::trivial(&cyclic(3), &t));
        assert_eq!(complement_classes(&sd).unwrap().len(), 1);
    }

    #[test]
    fn principal_cocycles_are_trivial() {
        for a in builtin_suite().unwrap().into_iter().filter(|a| a.semidirect_order() <= 24) {
            let h = h1_bruteforce(&a.gamma, &a.g, &a.action).unwrap();
            let base = &h.classes[h.trivial_class_index];
            for x in a.g.elements() {
                let p = Cocycle::principal(&a.gamma, &a.g, &a.action, x);
                assert!(p.is_cocycle(&a.gamma, &a.g, &a.action));
                assert!(a.g.elements().any(|y| &p.twist(&a.gamma, &a.g, &a.action, y) == base));
            }
        }
    }

    #[test]
    fn suite_orders() {
        let suite = builtin_suite().unwrap();
        assert!(suite.iter().all(|a| a.semidirect_order() <= 72));
        assert!(suite.iter().any(|a| a.semidirect_order() == 72));
    }
}
