use serde::{Deserialize, Serialize};

use super::group::FiniteGroup;
use super::subgroups::Subgroup;
use crate::error::{Error, Result};

/// An action of `acting` on `target` by automorphisms: `perms[γ][g] = γ·g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupAction {
    perms: Vec<Vec<usize>>,
}

impl GroupAction {
    /// Full table; checks every map is an automorphism and `γ ↦ perms[γ]` is a homomorphism.
    pub fn new(acting: &FiniteGroup, target: &FiniteGroup, perms: Vec<Vec<usize>>) -> Result<Self> {
        if perms.len() != acting.order() {
            return Err(Error::invalid("one automorphism per acting element required"));
        }
        for (c, p) in perms.iter().enumerate() {
            if p.len() != target.order() {
                return Err(Error::invalid(format!("map for element {c} has wrong length")));
            }
            let mut hit = vec![false; target.order()];
            for &x in p {
                if x >= target.order() || std::mem::replace(&mut hit[x], true) {
                    return Err(Error::invalid(format!("map for element {c} is not a bijection")));
                }
            }
            if !target.is_homomorphism_to(target, p) {
                return Err(Error::invalid(format!("map for element {c} is not an automorphism")));
            }
        }
        for a in acting.elements() {
            for b in acting.elements() {
                let ab = acting.mul(a, b);
                if target
                    .elements()
                    .any(|x| perms[ab][x] != perms[a][perms[b][x]])
                {
                    return Err(Error::invalid("action is not a homomorphism"));
                }
            }
        }
        Ok(GroupAction { perms })
    }

    pub fn trivial(acting: &FiniteGroup, target: &FiniteGroup) -> Self {
        GroupAction {
            perms: vec![target.elements().collect(); acting.order()],
        }
    }

    /// Extends automorphisms given on generators of the acting group.
    pub fn from_generator_images(
        acting: &FiniteGroup,
        target: &FiniteGroup,
        images: &[(usize, Vec<usize>)],
    ) -> Result<Self> {
        let gens: Vec<usize> = images.iter().map(|(g, _)| *g).collect();
        let autos: Vec<Vec<usize>> = images.iter().map(|(_, p)| p.clone()).collect();
        // represent automorphisms by indices into a growing list
        let mut pool: Vec<Vec<usize>> = vec![target.elements().collect()];
        let mut index = std::collections::HashMap::new();
        index.insert(pool[0].clone(), 0usize);
        let gen_idx: Vec<usize> = autos
            .iter()
            .map(|p| {
                *index.entry(p.clone()).or_insert_with(|| {
                    pool.push(p.clone());
                    pool.len() - 1
                })
            })
            .collect();
        let pool = std::cell::RefCell::new(pool);
        let index = std::cell::RefCell::new(index);
        let compose = |a: usize, b: usize| {
            let c: Vec<usize> = {
                let pool = pool.borrow();
                (0..target.order()).map(|x| pool[a][pool[b][x]]).collect()
            };
            let mut index = index.borrow_mut();
            if let Some(&k) = index.get(&c) {
                return k;
            }
            let mut pool = pool.borrow_mut();
            pool.push(c.clone());
            index.insert(c, pool.len() - 1);
            pool.len() - 1
        };
        let map = acting
            .extend_homomorphism(&gens, &gen_idx, 0, compose)
            .ok_or_else(|| Error::invalid("generator images do not define an action"))?;
        let pool = pool.into_inner();
        let perms = map.iter().map(|&k| pool[k].clone()).collect();
        Self::new(acting, target, perms)
    }

    pub fn apply(&self, gamma: usize, g: usize) -> usize {
        self.perms[gamma][g]
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn is_trivial(&self) -> bool {
        self.perms
            .iter()
            .all(|p| p.iter().enumerate().all(|(i, &x)| i == x))
    }
}

/// `G ⋊ Γ` with multiplication `(g,γ)(h,δ) = (g·(γ·h), γδ)`; `(g, γ)` has index `g |Γ| + γ`.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: FiniteGroup,
    pub normal: Subgroup,
    pub complement: Subgroup,
    pub base_order: usize,
    pub acting_order: usize,
}

impl SemidirectProduct {
    pub fn pair(&self, g: usize, gamma: usize) -> usize {
        g * self.acting_order + gamma
    }

    pub fn split(&self, x: usize) -> (usize, usize) {
        (x / self.acting_order, x % self.acting_order)
    }

    /// The retraction `(g, γ) ↦ γ`.
    pub fn projection(&self) -> Vec<usize> {
        self.group.elements().map(|x| x % self.acting_order).collect()
    }
}

pub fn semidirect_product(
    base: &FiniteGroup,
    acting: &FiniteGroup,
    action: &GroupAction,
) -> SemidirectProduct {
    let m = acting.order();
    let n = base.order();
    let labels = (0..n * m)
        .map(|x| format!("({},{})", base.label(x / m), acting.label(x % m)))
        .collect();
    let group = FiniteGroup::from_trusted_law(
        n * m,
        |x, y| {
            let (g, c) = (x / m, x % m);
            let (h, d) = (y / m, y % m);
            base.mul(g, action.apply(c, h)) * m + acting.mul(c, d)
        },
        Some(labels),
    );
    let normal = Subgroup::generated_by(
        &group,
        &base.elements().map(|g| g * m + acting.identity()).collect::<Vec<_>>(),
    );
    let complement = Subgroup::generated_by(
        &group,
        &acting.elements().map(|c| base.identity() * m + c).collect::<Vec<_>>(),
    );
    SemidirectProduct {
        group,
        normal,
        complement,
        base_order: n,
        acting_order: m,
    }
}

/// The automorphism `g ↦ g^k` of an abelian group (`k` coprime to the exponent).
pub fn power_automorphism(g: &FiniteGroup, k: i64) -> Result<Vec<usize>> {
    if !g.is_abelian() {
        return Err(Error::precondition("power maps are automorphisms only for abelian groups"));
    }
    let p: Vec<usize> = g.elements().map(|x| g.pow(x, k)).collect();
    let mut hit = vec![false; g.order()];
    if p.iter().any(|&x| std::mem::replace(&mut hit[x], true)) {
        return Err(Error::invalid(format!("x -> x^{k} is not bijective")));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::super::builtins::{cyclic, symmetric};
    use super::*;

    #[test]
    fn c3_by_c2_inversion_is_s3() {
        let c3 = cyclic(3);
        let c2 = cyclic(2);
        let act = GroupAction::from_generator_images(&c2, &c3, &[(1, power_automorphism(&c3, -1).unwrap())])
            .unwrap();
        let sd = semidirect_product(&c3, &c2, &act);
        assert!(sd.group.is_isomorphic(&symmetric(3).unwrap()));
        assert!(sd.normal.is_normal(&sd.group));
        assert!(sd.group.is_homomorphism_to(&c2, &sd.projection()));
    }

    #[test]
    fn trivial_action_is_direct() {
        let c2 = cyclic(2);
        let sd = semidirect_product(&c2, &c2, &GroupAction::trivial(&c2, &c2));
        assert!(sd.group.is_abelian());
        assert!(sd.group.elements().all(|x| sd.group.element_order(x) <= 2));
    }

    #[test]
    fn bad_actions_rejected() {
        let c3 = cyclic(3);
        let c2 = cyclic(2);
        // x -> x^2 on C3 has order 2, so sending the generator of C3 to it fails
        let sq = power_automorphism(&c3, 2).unwrap();
        assert!(GroupAction::from_generator_images(&c3, &c3, &[(1, sq)]).is_err());
        assert!(GroupAction::new(&c2, &c3, vec![vec![0, 1, 2], vec![0, 0, 0]]).is_err());
    }
}
