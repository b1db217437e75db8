use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::group::{is_prime, FiniteGroup, DEFAULT_ORDER_BOUND};
use crate::error::{Error, Result};

/// A subgroup, stored as the sorted list of its element indices in the parent.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

impl Subgroup {
    /// Checks closure in `g`.
    pub fn new(g: &FiniteGroup, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.iter().any(|&x| x >= g.order()) {
            return Err(Error::invalid("subgroup element out of range"));
        }
        if elements.binary_search(&g.identity()).is_err() {
            return Err(Error::invalid("subgroup lacks the identity"));
        }
        for &a in &elements {
            if elements.binary_search(&g.inv(a)).is_err() {
                return Err(Error::invalid("subgroup not closed under inverses"));
            }
            for &b in &elements {
                if elements.binary_search(&g.mul(a, b)).is_err() {
                    return Err(Error::invalid("subgroup not closed under products"));
                }
            }
        }
        Ok(Subgroup { elements })
    }

    pub fn generated_by(g: &FiniteGroup, gens: &[usize]) -> Self {
        Subgroup {
            elements: g.closure(gens),
        }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Subgroup {
            elements: vec![g.identity()],
        }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup {
            elements: g.elements().collect(),
        }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// `x H x^-1`.
    pub fn conjugate(&self, g: &FiniteGroup, x: usize) -> Subgroup {
        let mut elements: Vec<usize> = self.elements.iter().map(|&h| g.conjugate(x, h)).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        g.elements().all(|x| self.conjugate(g, x) == *self)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            elements: self
                .elements
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        }
    }

    pub fn index_in(&self, g: &FiniteGroup) -> usize {
        g.order() / self.order()
    }

    /// Left cosets `xH`, each sorted, ordered by least element.
    pub fn left_cosets(&self, g: &FiniteGroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; g.order()];
        let mut out = Vec::new();
        for x in g.elements() {
            if seen[x] {
                continue;
            }
            let mut coset: Vec<usize> = self.elements.iter().map(|&h| g.mul(x, h)).collect();
            coset.sort_unstable();
            for &y in &coset {
                seen[y] = true;
            }
            out.push(coset);
        }
        out
    }

    /// Least element of each left coset, in coset order.
    pub fn coset_representatives(&self, g: &FiniteGroup) -> Vec<usize> {
        self.left_cosets(g).into_iter().map(|c| c[0]).collect()
    }

    /// The subgroup as a group in its own right, with the embedding of its elements.
    pub fn to_group(&self, g: &FiniteGroup) -> (FiniteGroup, Vec<usize>) {
        let pos: HashMap<usize, usize> = self.elements.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let labels = self.elements.iter().map(|&x| g.label(x)).collect();
        let sub = FiniteGroup::from_trusted_law(
            self.order(),
            |a, b| pos[&g.mul(self.elements[a], self.elements[b])],
            Some(labels),
        );
        (sub, self.elements.clone())
    }

    /// Subgroup of `g` given by the image of a subgroup of a subgroup `(sub, embedding)`.
    pub fn map_through(&self, embedding: &[usize]) -> Subgroup {
        let mut elements: Vec<usize> = self.elements.iter().map(|&x| embedding[x]).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    /// Pulls back a subgroup of the parent into the coordinates of `(sub, embedding)`.
    pub fn pull_back(&self, embedding: &[usize]) -> Subgroup {
        Subgroup {
            elements: embedding
                .iter()
                .enumerate()
                .filter(|(_, &x)| self.contains(x))
                .map(|(i, _)| i)
                .collect(),
        }
    }

    pub fn is_p_group(&self, p: usize) -> bool {
        let mut n = self.order();
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }
}

/// Subgroups conjugate to one another, with a canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
}

fn check_bound(g: &FiniteGroup, bound: usize) -> Result<()> {
    if g.order() > bound {
        return Err(Error::bound("group order for subgroup enumeration", bound, g.order()));
    }
    Ok(())
}

/// All subgroups, sorted by (order, elements).
pub fn subgroup_list(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    subgroup_list_bounded(g, DEFAULT_ORDER_BOUND)
}

pub fn subgroup_list_bounded(g: &FiniteGroup, bound: usize) -> Result<Vec<Subgroup>> {
    check_bound(g, bound)?;
    let mut cyclic: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut cyclic_gen: Vec<usize> = Vec::new();
    for x in g.elements() {
        if cyclic.insert(g.closure(&[x])) {
            cyclic_gen.push(x);
        }
    }
    let mut found: HashSet<Vec<usize>> = cyclic.iter().cloned().collect();
    let mut frontier: Vec<Vec<usize>> = cyclic.into_iter().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for &x in &cyclic_gen {
                if h.binary_search(&x).is_ok() {
                    continue;
                }
                let mut gens = subgroup_generators(g, h);
                gens.push(x);
                let k = g.closure(&gens);
                if found.insert(k.clone()) {
                    next.push(k);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Subgroup> = found.into_iter().map(|elements| Subgroup { elements }).collect();
    out.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    Ok(out)
}

fn subgroup_generators(g: &FiniteGroup, h: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![g.identity()];
    for &x in h {
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = g.closure(&gens);
        }
    }
    gens
}

/// Groups subgroups into conjugacy classes; classes are sorted by (order, representative).
pub fn conjugacy_classes_of(g: &FiniteGroup, subgroups: &[Subgroup]) -> Vec<ConjugacyClass> {
    let mut assigned: HashSet<&Subgroup> = HashSet::new();
    let mut out = Vec::new();
    for h in subgroups {
        if assigned.contains(h) {
            continue;
        }
        let mut members: Vec<Subgroup> = g.elements().map(|x| h.conjugate(g, x)).collect();
        members.sort();
        members.dedup();
        for m in &members {
            if let Some(s) = subgroups.iter().find(|s| *s == m) {
                assigned.insert(s);
            }
        }
        out.push(ConjugacyClass {
            representative: members[0].clone(),
            members,
        });
    }
    out.sort_by(|a, b| {
        (a.representative.order(), &a.representative).cmp(&(b.representative.order(), &b.representative))
    });
    out
}

/// All subgroups of `g`, grouped by conjugacy.
pub fn all_subgroups(g: &FiniteGroup) -> Result<Vec<ConjugacyClass>> {
    let subs = subgroup_list(g)?;
    Ok(conjugacy_classes_of(g, &subs))
}

/// Canonical representative of the conjugacy class of `h`.
pub fn class_representative(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    g.elements().map(|x| h.conjugate(g, x)).min().expect("nonempty group")
}

/// Set of subgroups closed under conjugation and passing to subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupFamily {
    members: Vec<Subgroup>,
}

impl SubgroupFamily {
    /// Validates nonemptiness and both closure properties against the full subgroup list.
    pub fn new(g: &FiniteGroup, members: Vec<Subgroup>) -> Result<Self> {
        let mut members = members;
        members.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        members.dedup();
        let fam = SubgroupFamily { members };
        if fam.members.is_empty() {
            return Err(Error::invalid("a family must be nonempty"));
        }
        if !fam.is_closed(g)? {
            return Err(Error::invalid(
                "family not closed under conjugation and subgroups",
            ));
        }
        Ok(fam)
    }

    fn is_closed(&self, g: &FiniteGroup) -> Result<bool> {
        let all = subgroup_list(g)?;
        for h in &self.members {
            for x in g.elements() {
                if !self.contains(&h.conjugate(g, x)) {
                    return Ok(false);
                }
            }
            for k in &all {
                if k.is_subgroup_of(h) && !self.contains(k) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    pub fn contains(&self, h: &Subgroup) -> bool {
        self.members.contains(h)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members not properly contained in another member.
    pub fn maximal_members(&self) -> Vec<Subgroup> {
        self.members
            .iter()
            .filter(|h| {
                !self
                    .members
                    .iter()
                    .any(|k| k.order() > h.order() && h.is_subgroup_of(k))
            })
            .cloned()
            .collect()
    }

    /// One representative per conjugacy class of maximal members.
    pub fn maximal_class_representatives(&self, g: &FiniteGroup) -> Vec<Subgroup> {
        let mut reps: Vec<Subgroup> = self
            .maximal_members()
            .iter()
            .map(|h| class_representative(g, h))
            .collect();
        reps.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        reps.dedup();
        reps
    }

    /// Conjugacy classes of members, sorted by (order, representative).
    pub fn conjugacy_classes(&self, g: &FiniteGroup) -> Vec<ConjugacyClass> {
        conjugacy_classes_of(g, &self.members)
    }

    /// `F ∩ P`: members contained in `p`, as a family of `p` in the coordinates of `(sub, embedding)`.
    pub fn restrict_to(&self, p: &Subgroup, embedding: &[usize]) -> SubgroupFamily {
        let members = self
            .members
            .iter()
            .filter(|h| h.is_subgroup_of(p))
            .map(|h| h.pull_back(embedding))
            .collect();
        let mut fam = SubgroupFamily { members };
        fam.members.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        fam
    }
}

/// Smallest family containing every subgroup in `generators`.
pub fn family_generated_by_all(g: &FiniteGroup, generators: &[Subgroup]) -> Result<SubgroupFamily> {
    let all = subgroup_list(g)?;
    let mut targets: Vec<Subgroup> = Vec::new();
    for l in generators {
        for x in g.elements() {
            targets.push(l.conjugate(g, x));
        }
    }
    targets.sort();
    targets.dedup();
    let members = all
        .into_iter()
        .filter(|h| targets.iter().any(|t| h.is_subgroup_of(t)))
        .collect();
    Ok(SubgroupFamily { members })
}

/// All subconjugates of `l`.
pub fn family_generated_by(g: &FiniteGroup, l: &Subgroup) -> Result<SubgroupFamily> {
    family_generated_by_all(g, std::slice::from_ref(l))
}

pub fn all_subgroups_family(g: &FiniteGroup) -> Result<SubgroupFamily> {
    family_generated_by(g, &Subgroup::whole(g))
}

pub fn trivial_family(g: &FiniteGroup) -> SubgroupFamily {
    SubgroupFamily {
        members: vec![Subgroup::trivial(g)],
    }
}

pub fn proper_subgroups_family(g: &FiniteGroup) -> Result<SubgroupFamily> {
    let members: Vec<Subgroup> = subgroup_list(g)?
        .into_iter()
        .filter(|h| h.order() < g.order())
        .collect();
    if members.is_empty() {
        return Err(Error::precondition("the trivial group has no proper subgroups"));
    }
    Ok(SubgroupFamily { members })
}

fn check_prime_divisor(g: &FiniteGroup, p: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if !g.order().is_multiple_of(p) {
        return Err(Error::precondition(format!("{p} does not divide |G| = {}", g.order())));
    }
    Ok(())
}

/// Every subgroup of `p`-power order (including the trivial one).
pub fn p_subgroups(g: &FiniteGroup, p: usize) -> Result<Vec<Subgroup>> {
    check_prime_divisor(g, p)?;
    Ok(subgroup_list(g)?
        .into_iter()
        .filter(|h| h.is_p_group(p))
        .collect())
}

/// A Sylow `p`-subgroup: the least (by element list) subgroup of order `p^{v_p(|G|)}`.
pub fn sylow(g: &FiniteGroup, p: usize) -> Result<Subgroup> {
    check_prime_divisor(g, p)?;
    let mut pk = 1;
    while g.order().is_multiple_of(pk * p) {
        pk *= p;
    }
    subgroup_list(g)?
        .into_iter()
        .find(|h| h.order() == pk)
        .ok_or_else(|| Error::NotFound(format!("Sylow {p}-subgroup")))
}

/// `G / N` for normal `N`, with the projection `G -> G/N`; cosets are ordered by least element.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
    if !n.is_normal(g) {
        return Err(Error::precondition("quotient by a non-normal subgroup"));
    }
    let cosets = n.left_cosets(g);
    let mut proj = vec![0; g.order()];
    for (k, c) in cosets.iter().enumerate() {
        for &x in c {
            proj[x] = k;
        }
    }
    let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
    let labels = reps.iter().map(|&x| format!("{}N", g.label(x))).collect();
    let q = FiniteGroup::from_trusted_law(cosets.len(), |a, b| proj[g.mul(reps[a], reps[b])], Some(labels));
    Ok((q, proj))
}

#[cfg(test)]
mod tests {
    use super::super::builtins::{alternating, cyclic, direct_product, symmetric};
    use super::*;

    #[test]
    fn c6_subgroups() {
        let g = cyclic(6);
        let classes = all_subgroups(&g).unwrap();
        let orders: Vec<usize> = classes.iter().map(|c| c.representative.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        assert!(classes.iter().all(|c| c.members.len() == 1));
    }

    #[test]
    fn s3_subgroups() {
        let g = symmetric(3).unwrap();
        let classes = all_subgroups(&g).unwrap();
        let shape: Vec<(usize, usize)> = classes
            .iter()
            .map(|c| (c.representative.order(), c.members.len()))
            .collect();
        assert_eq!(shape, vec![(1, 1), (2, 3), (3, 1), (6, 1)]);
    }

    #[test]
    fn a5_has_59_subgroups() {
        let g = alternating(5).unwrap();
        assert_eq!(subgroup_list(&g).unwrap().len(), 59);
        assert_eq!(all_subgroups(&g).unwrap().len(), 9);
    }

    #[test]
    fn families() {
        let g = cyclic(6);
        let c2 = Subgroup::generated_by(&g, &[3]);
        let f = family_generated_by(&g, &c2).unwrap();
        assert_eq!(f.members(), &[Subgroup::trivial(&g), c2.clone()]);
        let proper = proper_subgroups_family(&g).unwrap();
        assert_eq!(proper.len(), 3);
        assert_eq!(proper.maximal_members().len(), 2);
        assert_eq!(sylow(&g, 2).unwrap(), c2);
        assert!(p_subgroups(&g, 5).is_err());
        assert!(sylow(&g, 4).is_err());
        let s3 = symmetric(3).unwrap();
        let t = subgroup_list(&s3).unwrap().into_iter().find(|h| h.order() == 2).unwrap();
        assert_eq!(family_generated_by(&s3, &t).unwrap().len(), 4);
        assert!(SubgroupFamily::new(&s3, vec![t]).is_err());
    }

    #[test]
    fn quotient_of_c6() {
        let g = cyclic(6);
        let c3 = Subgroup::generated_by(&g, &[2]);
        let (q, proj) = quotient(&g, &c3).unwrap();
        assert!(q.is_isomorphic(&cyclic(2)));
        assert!(g.is_homomorphism_to(&q, &proj));
    }

    #[test]
    fn subgroup_to_group() {
        let g = direct_product(&cyclic(2), &cyclic(3));
        let h = Subgroup::generated_by(&g, &[1]);
        let (sub, emb) = h.to_group(&g);
        assert!(sub.is_isomorphic(&cyclic(3)));
        assert!(sub.is_homomorphism_to(&g, &emb));
    }
}
