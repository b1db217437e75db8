use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_groups::{FiniteGroup, Subgroup};

/// A finite set with a left action of a finite group, stored as one
/// permutation per group element: `perms[g][x] = g·x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaSet {
    #[serde(skip)]
    group: FiniteGroup,
    labels: Vec<String>,
    perms: Vec<Vec<usize>>,
}

fn check_permutation(p: &[usize], n: usize) -> Result<()> {
    if p.len() != n {
        return Err(Error::invalid(format!("permutation of length {} on {n} points", p.len())));
    }
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return Err(Error::invalid("map on points is not a bijection"));
        }
    }
    Ok(())
}

impl GammaSet {
    /// Extends permutations given for generating elements to the whole group and
    /// checks the result is a well-defined action.
    pub fn new(group: &FiniteGroup, labels: Vec<String>, generators: &[(usize, Vec<usize>)]) -> Result<Self> {
        let n = labels.len();
        for (g, p) in generators {
            if *g >= group.order() {
                return Err(Error::invalid(format!("element {g} outside the group")));
            }
            check_permutation(p, n)?;
        }
        let mut perms: Vec<Option<Vec<usize>>> = vec![None; group.order()];
        perms[group.identity()] = Some((0..n).collect());
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            let px = perms[x].clone().unwrap();
            for (g, pg) in generators {
                let y = group.mul(*g, x);
                let py: Vec<usize> = px.iter().map(|&i| pg[i]).collect();
                match &perms[y] {
                    Some(existing) if *existing != py => {
                        return Err(Error::invalid("generator permutations do not respect the group relations"));
                    }
                    Some(_) => {}
                    None => {
                        perms[y] = Some(py);
                        queue.push_back(y);
                    }
                }
            }
        }
        let perms = perms
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::invalid("given elements do not generate the group"))?;
        Self::from_element_perms(group, labels, perms)
    }

    /// Full table, checked to be a homomorphism into the symmetric group.
    pub fn from_element_perms(group: &FiniteGroup, labels: Vec<String>, perms: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if perms.len() != group.order() {
            return Err(Error::invalid("one permutation per group element required"));
        }
        for p in &perms {
            check_permutation(p, n)?;
        }
        if perms[group.identity()].iter().enumerate().any(|(i, &j)| i != j) {
            return Err(Error::invalid("identity element must act trivially"));
        }
        for a in group.elements() {
            for b in group.elements() {
                let ab = group.mul(a, b);
                if (0..n).any(|x| perms[ab][x] != perms[a][perms[b][x]]) {
                    return Err(Error::invalid("permutations do not form an action"));
                }
            }
        }
        Ok(GammaSet {
            group: group.clone(),
            labels,
            perms,
        })
    }

    /// Every element fixes every point.
    pub fn trivial(group: &FiniteGroup, labels: Vec<String>) -> Self {
        let n = labels.len();
        GammaSet {
            group: group.clone(),
            labels,
            perms: vec![(0..n).collect(); group.order()],
        }
    }

    /// The group acting on itself by left multiplication.
    pub fn regular(group: &FiniteGroup) -> Self {
        GammaSet {
            group: group.clone(),
            labels: group.elements().map(|g| group.label(g)).collect(),
            perms: group.elements().map(|g| group.elements().map(|x| group.mul(g, x)).collect()).collect(),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.perms[g][x]
    }

    pub fn perm(&self, g: usize) -> &[usize] {
        &self.perms[g]
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        let elems = self.group.elements().filter(|&g| self.perms[g][x] == x).collect();
        Subgroup::new(&self.group, elems).expect("point stabilizers are subgroups")
    }

    /// Orbits in order of their smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for x in 0..self.len() {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = self.group.elements().map(|g| self.perms[g][x]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Every point stabilizer is trivial.
    pub fn is_free(&self) -> bool {
        (0..self.len()).all(|x| self.stabilizer(x).is_trivial())
    }

    /// Only the identity fixes every point.
    pub fn is_effective(&self) -> bool {
        self.group
            .elements()
            .all(|g| g == self.group.identity() || (0..self.len()).any(|x| self.perms[g][x] != x))
    }

    pub fn fixed_points(&self, p: &Subgroup) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| p.elements().iter().all(|&g| self.perms[g][x] == x))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_groups::{cyclic, symmetric};

    fn names(s: &str) -> Vec<String> {
        s.chars().map(|c| c.to_string()).collect()
    }

    #[test]
    fn generator_extension_and_orbits() {
        let c6 = cyclic(6);
        let set = GammaSet::new(&c6, names("abcde"), &[(1, vec![1, 2, 0, 4, 3])]).unwrap();
        assert_eq!(set.orbits(), vec![vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(set.stabilizer(0).order(), 2);
        assert_eq!(set.stabilizer(3).order(), 3);
        assert!(set.is_effective());
        assert!(!set.is_free());
    }

    #[test]
    fn relations_are_enforced() {
        let c2 = cyclic(2);
        assert!(GammaSet::new(&c2, names("abc"), &[(1, vec![1, 2, 0])]).is_err());
        let c4 = cyclic(4);
        assert!(GammaSet::new(&c4, names("ab"), &[(2, vec![1, 0])]).is_err());
    }

    #[test]
    fn regular_is_free() {
        let s3 = symmetric(3).unwrap();
        let r = GammaSet::regular(&s3);
        assert!(r.is_free());
        assert_eq!(r.orbits().len(), 1);
    }
}
