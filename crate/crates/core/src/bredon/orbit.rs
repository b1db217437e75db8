use std::cmp::Reverse;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::finite_groups::{FiniteGroup, Subgroup, SubgroupFamily};

/// Largest group order for which orbit categories are built.
pub const DEFAULT_ORBIT_GROUP_BOUND: usize = 120;

/// A `K`-map `K/H_source -> K/H_target`, given by the image `g H_target` of the
/// base coset (an index into the target's coset list).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub coset: usize,
}

/// The orbit category of `K` restricted to a family: one object `K/H` per
/// conjugacy class of members, in decreasing order of `|H|`.
#[derive(Clone, Debug)]
pub struct OrbitCategory {
    group: FiniteGroup,
    family: SubgroupFamily,
    objects: Vec<Subgroup>,
    cosets: Vec<Vec<Vec<usize>>>,
    coset_of: Vec<Vec<usize>>,
    action: Vec<Vec<Vec<usize>>>,
    morphisms: Vec<Vec<Vec<usize>>>,
    position: Vec<Vec<Vec<Option<usize>>>>,
}

impl OrbitCategory {
    pub fn new(k: &FiniteGroup, family: &SubgroupFamily) -> Result<Self> {
        Self::with_bound(k, family, DEFAULT_ORBIT_GROUP_BOUND)
    }

    pub fn with_bound(k: &FiniteGroup, family: &SubgroupFamily, bound: usize) -> Result<Self> {
        if k.order() > bound {
            return Err(Error::bound("orbit category group order", bound, k.order()));
        }
        let mut objects: Vec<Subgroup> = family
            .conjugacy_classes(k)
            .into_iter()
            .map(|c| c.representative)
            .collect();
        objects.sort_by_key(|h| (Reverse(h.order()), h.clone()));
        let mut cosets = Vec::new();
        let mut coset_of = Vec::new();
        let mut action = Vec::new();
        for h in &objects {
            let cs = h.left_cosets(k);
            let mut of = vec![0; k.order()];
            for (i, c) in cs.iter().enumerate() {
                for &x in c {
                    of[x] = i;
                }
            }
            let act: Vec<Vec<usize>> = k
                .elements()
                .map(|g| cs.iter().map(|c| of[k.mul(g, c[0])]).collect())
                .collect();
            cosets.push(cs);
            coset_of.push(of);
            action.push(act);
        }
        let n = objects.len();
        let mut morphisms = vec![vec![Vec::new(); n]; n];
        let mut position = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let fixed: Vec<usize> = (0..cosets[b].len())
                    .filter(|&c| objects[a].elements().iter().all(|&h| action[b][h][c] == c))
                    .collect();
                let mut pos = vec![None; cosets[b].len()];
                for (i, &c) in fixed.iter().enumerate() {
                    pos[c] = Some(i);
                }
                morphisms[a][b] = fixed;
                position[a][b] = pos;
            }
        }
        Ok(OrbitCategory {
            group: k.clone(),
            family: family.clone(),
            objects,
            cosets,
            coset_of,
            action,
            morphisms,
            position,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn family(&self) -> &SubgroupFamily {
        &self.family
    }

    pub fn objects(&self) -> &[Subgroup] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    /// Index of the object whose subgroup is conjugate to `h`, with `x` such
    /// that `h = x H_object x^-1`.
    pub fn locate(&self, h: &Subgroup) -> Option<(usize, usize)> {
        let k = &self.group;
        self.objects.iter().enumerate().find_map(|(i, o)| {
            if o.order() != h.order() {
                return None;
            }
            k.elements().find(|&x| &o.conjugate(k, x) == h).map(|x| (i, x))
        })
    }

    /// Cosets of `H_object`, each a list of elements.
    pub fn cosets(&self, object: usize) -> &[Vec<usize>] {
        &self.cosets[object]
    }

    pub fn coset_of(&self, object: usize, g: usize) -> usize {
        self.coset_of[object][g]
    }

    /// `g · c` on `K/H_object`.
    pub fn act(&self, object: usize, g: usize, coset: usize) -> usize {
        self.action[object][g][coset]
    }

    /// `Mor(K/H_a, K/H_b)` as cosets of `H_b` fixed by `H_a`.
    pub fn morphisms(&self, a: usize, b: usize) -> &[usize] {
        &self.morphisms[a][b]
    }

    pub fn morphism_count(&self, a: usize, b: usize) -> usize {
        self.morphisms[a][b].len()
    }

    /// Position of a coset in `Mor(a, b)`.
    pub fn morphism_position(&self, a: usize, b: usize, coset: usize) -> Option<usize> {
        self.position[a][b][coset]
    }

    pub fn morphism(&self, a: usize, b: usize, k: usize) -> Morphism {
        Morphism {
            source: a,
            target: b,
            coset: self.morphisms[a][b][k],
        }
    }

    pub fn identity(&self, a: usize) -> Morphism {
        Morphism {
            source: a,
            target: a,
            coset: self.coset_of[a][self.group.identity()],
        }
    }

    /// A group element `g` with `f(eH) = gH'`.
    pub fn representative(&self, f: Morphism) -> usize {
        self.cosets[f.target][f.coset][0]
    }

    /// `second ∘ first`.
    pub fn compose(&self, first: Morphism, second: Morphism) -> Result<Morphism> {
        if first.target != second.source {
            return Err(Error::invalid("morphisms are not composable"));
        }
        Ok(Morphism {
            source: first.source,
            target: second.target,
            coset: self.act(second.target, self.representative(first), second.coset),
        })
    }

    /// Brute-force audit: every equivariant map `K/H_a -> K/H_b` is listed,
    /// identities exist, and composition is associative.
    pub fn verify(&self) -> bool {
        let k = &self.group;
        let n = self.objects.len();
        for a in 0..n {
            for b in 0..n {
                let mut found = Vec::new();
                for y in 0..self.cosets[b].len() {
                    // f(x H_a) = x y, checked on every element for well-definedness
                    let mut image = vec![usize::MAX; self.cosets[a].len()];
                    let mut ok = true;
                    for x in k.elements() {
                        let src = self.coset_of[a][x];
                        let tgt = self.act(b, x, y);
                        if image[src] == usize::MAX {
                            image[src] = tgt;
                        } else if image[src] != tgt {
                            ok = false;
                            break;
                        }
                    }
                    if ok {
                        found.push(y);
                    }
                }
                if found != self.morphisms[a][b] {
                    return false;
                }
            }
        }
        let all: Vec<Morphism> = (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| (0..self.morphisms[a][b].len()).map(move |i| (a, b, i))))
            .map(|(a, b, i)| self.morphism(a, b, i))
            .collect();
        for &f in &all {
            let left = self.compose(self.identity(f.source), f).ok();
            let right = self.compose(f, self.identity(f.target)).ok();
            if left != Some(f) || right != Some(f) {
                return false;
            }
        }
        for &f in &all {
            for &g in all.iter().filter(|g| g.source == f.target) {
                let gf = self.compose(f, g).expect("composable");
                if self.morphism_position(gf.source, gf.target, gf.coset).is_none() {
                    return false;
                }
                for &h in all.iter().filter(|h| h.source == g.target) {
                    let x = self.compose(gf, h).expect("composable");
                    let y = self.compose(f, self.compose(g, h).expect("composable")).expect("composable");
                    if x != y {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn object_label(&self, a: usize) -> String {
        let k = &self.group;
        let elems: Vec<String> = self.objects[a].elements().iter().map(|&x| k.label(x)).collect();
        format!("K/<{}>", elems.join(","))
    }

    pub fn to_json(&self) -> Value {
        let n = self.objects.len();
        json!({
            "group_order": self.group.order(),
            "objects": (0..n).map(|a| json!({
                "label": self.object_label(a),
                "subgroup": self.objects[a].elements(),
            })).collect::<Vec<_>>(),
            "morphisms": (0..n).map(|a| (0..n).map(|b| {
                self.morphisms[a][b].iter().map(|&c| self.cosets[b][c][0]).collect::<Vec<_>>()
            }).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_groups::{all_subgroups_family, cyclic, proper_subgroups_family, symmetric, trivial_family};

    #[test]
    fn c6_proper() {
        let k = cyclic(6);
        let o = OrbitCategory::new(&k, &proper_subgroups_family(&k).unwrap()).unwrap();
        assert_eq!(o.object_count(), 3);
        let orders: Vec<usize> = o.objects().iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![3, 2, 1]);
        assert_eq!(o.morphism_count(2, 2), 6);
        assert_eq!(o.morphism_count(1, 0), 0);
        assert_eq!(o.morphism_count(2, 0), 2);
        assert!(o.verify());
    }

    #[test]
    fn trivial_and_all_families() {
        let k = symmetric(3).unwrap();
        let o = OrbitCategory::new(&k, &trivial_family(&k)).unwrap();
        assert_eq!(o.object_count(), 1);
        assert_eq!(o.morphism_count(0, 0), 6);
        let c6 = cyclic(6);
        let o = OrbitCategory::new(&c6, &all_subgroups_family(&c6).unwrap()).unwrap();
        assert_eq!(o.object_count(), 4);
        assert_eq!(o.objects()[0].order(), 6);
        assert!(o.verify());
        let o = OrbitCategory::new(&k, &all_subgroups_family(&k).unwrap()).unwrap();
        assert!(o.verify());
        // S3/C2 has trivial Weyl group
        let c2 = o.objects().iter().position(|h| h.order() == 2).unwrap();
        assert_eq!(o.morphism_count(c2, c2), 1);
    }
}
