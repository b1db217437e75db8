//! Modules over group rings: free abelian groups of finite rank with an
//! integral action.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::group::{Group, Inclusion, PresentedGroup};
use super::ring::GroupRingElement;
use crate::error::{Error, Result};
use crate::exact_linalg::lattice::{kernel_basis, solve_matrix};
use crate::exact_linalg::{FgAbelianGroup, IntegerMatrix};
use crate::finite_groups::{direct_product, FiniteGroup, Subgroup};

/// `Z^rank` with a left action. For finite groups the action is stored for
/// every element; for presented groups, for every generator.
#[derive(Clone, Debug)]
pub struct GroupModule {
    group: Arc<Group>,
    rank: usize,
    action: Vec<IntegerMatrix>,
    inverse: Vec<IntegerMatrix>,
}

impl PartialEq for GroupModule {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.action == other.action
    }
}

impl GroupModule {
    /// Validates invertibility and the group relations.
    pub fn new(group: Arc<Group>, rank: usize, action: Vec<IntegerMatrix>) -> Result<Self> {
        if action.len() != group.letter_count() {
            return Err(Error::invalid(format!(
                "expected {} action matrices, got {}",
                group.letter_count(),
                action.len()
            )));
        }
        let mut inverse = Vec::with_capacity(action.len());
        for m in &action {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::invalid("action matrix has the wrong size"));
            }
            inverse.push(if rank == 0 {
                IntegerMatrix::zeros(0, 0)
            } else {
                m.inverse_unimodular()
                    .map_err(|_| Error::invalid("action matrix is not invertible over Z"))?
            });
        }
        let module = GroupModule {
            group,
            rank,
            action,
            inverse,
        };
        module.check_relations()?;
        Ok(module)
    }

    fn check_relations(&self) -> Result<()> {
        let id = IntegerMatrix::identity(self.rank);
        match self.group.as_ref() {
            Group::Finite(g) => {
                if self.action[g.identity()] != id {
                    return Err(Error::invalid("identity does not act trivially"));
                }
                for a in g.elements() {
                    for b in g.elements() {
                        if &self.action[a] * &self.action[b] != self.action[g.mul(a, b)] {
                            return Err(Error::invalid(format!(
                                "action is not multiplicative at ({a}, {b})"
                            )));
                        }
                    }
                }
            }
            Group::Presented(p) => {
                for r in p.relators() {
                    if self.word_matrix(r) != id {
                        return Err(Error::invalid(format!(
                            "relator {} does not act trivially",
                            p.format_word(r)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Extends matrices given on generators of a finite group.
    pub fn from_generator_images(
        group: &FiniteGroup,
        gens: &[usize],
        mats: &[IntegerMatrix],
        rank: usize,
    ) -> Result<Self> {
        let pool = std::cell::RefCell::new(vec![IntegerMatrix::identity(rank)]);
        let mut idx = Vec::new();
        for m in mats {
            pool.borrow_mut().push(m.clone());
            idx.push(pool.borrow().len() - 1);
        }
        let map = group
            .extend_homomorphism(gens, &idx, 0, |a, b| {
                let prod = {
                    let p = pool.borrow();
                    &p[a] * &p[b]
                };
                let mut p = pool.borrow_mut();
                if let Some(k) = p.iter().position(|m| *m == prod) {
                    return k;
                }
                p.push(prod);
                p.len() - 1
            })
            .ok_or_else(|| Error::invalid("generator matrices do not define an action"))?;
        let pool = pool.into_inner();
        let action = map.iter().map(|&k| pool[k].clone()).collect();
        Self::new(Group::finite(group.clone()), rank, action)
    }

    pub fn trivial(group: Arc<Group>, rank: usize) -> Self {
        let n = group.letter_count();
        let id = IntegerMatrix::identity(rank);
        GroupModule {
            group,
            rank,
            action: vec![id.clone(); n],
            inverse: vec![id; n],
        }
    }

    /// Rank-one module with letter `k` acting by `signs[k]` (each `±1`).
    pub fn character(group: Arc<Group>, signs: &[i64]) -> Result<Self> {
        let action = signs
            .iter()
            .map(|&s| IntegerMatrix::from_i64(1, 1, &[s]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, 1, action)
    }

    /// Permutation module `Z[X]` for a `K`-set given by `perm[g][x] = g·x`.
    pub fn permutation(group: &FiniteGroup, perm: &[Vec<usize>]) -> Result<Self> {
        let n = perm.first().map_or(0, Vec::len);
        if perm.len() != group.order() || perm.iter().any(|p| p.len() != n) {
            return Err(Error::invalid("one permutation of the same set per element required"));
        }
        if perm[group.identity()].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(Error::invalid("identity does not act trivially"));
        }
        for a in group.elements() {
            for b in group.elements() {
                let ab = group.mul(a, b);
                if (0..n).any(|x| perm[ab][x] != perm[a][perm[b][x]]) {
                    return Err(Error::invalid("permutations do not define an action"));
                }
            }
        }
        let action: Vec<IntegerMatrix> = perm
            .iter()
            .map(|p| {
                let mut rows = vec![Vec::new(); n];
                for (x, &gx) in p.iter().enumerate() {
                    rows[gx].push((x, BigInt::one()));
                }
                IntegerMatrix::from_sparse_rows(n, n, rows)
            })
            .collect();
        let inverse = action.iter().map(IntegerMatrix::transpose).collect();
        Ok(GroupModule {
            group: Group::finite(group.clone()),
            rank: n,
            action,
            inverse,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Action of letter `k` (an element index for finite groups, a generator otherwise).
    pub fn letter_matrix(&self, k: usize) -> &IntegerMatrix {
        &self.action[k]
    }

    pub fn letter_matrices(&self) -> &[IntegerMatrix] {
        &self.action
    }

    pub fn word_matrix(&self, w: &[(usize, i8)]) -> IntegerMatrix {
        let mut out = IntegerMatrix::identity(self.rank);
        for &(g, e) in w {
            let m = if e < 0 { &self.inverse[g] } else { &self.action[g] };
            out = &out * m;
        }
        out
    }

    pub fn element_matrix(&self, x: &[i64]) -> IntegerMatrix {
        match self.group.as_ref() {
            Group::Finite(_) => self.action[x[0] as usize].clone(),
            Group::Presented(p) => self.word_matrix(&p.word_of(x)),
        }
    }

    /// Matrix of multiplication by a group ring element.
    pub fn eval(&self, r: &GroupRingElement) -> IntegerMatrix {
        let mut out = IntegerMatrix::zeros(self.rank, self.rank);
        for (g, c) in r.terms() {
            out = &out + &self.element_matrix(g).scale(&BigInt::from(*c));
        }
        out
    }

    /// Elements of a finite group, or the generators of a presented one.
    fn generating_matrices(&self, subgroup: Option<&Subgroup>) -> Vec<&IntegerMatrix> {
        match (self.group.as_ref(), subgroup) {
            (Group::Finite(g), Some(h)) => subgroup_generators(g, h)
                .iter()
                .map(|&x| &self.action[x])
                .collect(),
            (Group::Finite(g), None) => g.generators().iter().map(|&x| &self.action[x]).collect(),
            (Group::Presented(_), _) => self.action.iter().collect(),
        }
    }

    /// `M^H` as a free abelian group together with its inclusion `rank x k` matrix;
    /// `None` means the whole group.
    pub fn fixed_points(&self, subgroup: Option<&Subgroup>) -> (FgAbelianGroup, IntegerMatrix) {
        let id = IntegerMatrix::identity(self.rank);
        let mut stacked = IntegerMatrix::zeros(0, self.rank);
        for m in self.generating_matrices(subgroup) {
            stacked = stacked.vstack(&(m - &id));
        }
        let k = kernel_basis(&stacked);
        (FgAbelianGroup::free(k.cols()), k)
    }

    /// Submodule spanned by invariant columns of `basis`, with the induced action.
    pub fn submodule(&self, basis: &IntegerMatrix) -> Result<GroupModule> {
        let k = basis.cols();
        let mut action = Vec::with_capacity(self.action.len());
        for m in &self.action {
            let image = m * basis;
            let coords = solve_matrix(basis, &image)
                .ok_or_else(|| Error::invalid("span is not a submodule"))?;
            action.push(coords);
        }
        Self::new(self.group.clone(), k, action)
    }

    pub fn direct_sum(&self, other: &GroupModule) -> Result<GroupModule> {
        self.same_group(other)?;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| IntegerMatrix::block_diag(&[a.clone(), b.clone()]))
            .collect();
        let inverse = self
            .inverse
            .iter()
            .zip(&other.inverse)
            .map(|(a, b)| IntegerMatrix::block_diag(&[a.clone(), b.clone()]))
            .collect();
        Ok(GroupModule {
            group: self.group.clone(),
            rank: self.rank + other.rank,
            action,
            inverse,
        })
    }

    /// Diagonal tensor product `M ⊗ N`.
    pub fn tensor(&self, other: &GroupModule) -> Result<GroupModule> {
        self.same_group(other)?;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.kronecker(b))
            .collect();
        let inverse = self
            .inverse
            .iter()
            .zip(&other.inverse)
            .map(|(a, b)| a.kronecker(b))
            .collect();
        Ok(GroupModule {
            group: self.group.clone(),
            rank: self.rank * other.rank,
            action,
            inverse,
        })
    }

    /// The isomorphic module `P ρ(g) P^-1` for unimodular `P`.
    pub fn conjugate_by(&self, p: &IntegerMatrix) -> Result<GroupModule> {
        let pinv = p.inverse_unimodular()?;
        let action = self.action.iter().map(|m| &(p * m) * &pinv).collect();
        let inverse = self.inverse.iter().map(|m| &(p * m) * &pinv).collect();
        Ok(GroupModule {
            group: self.group.clone(),
            rank: self.rank,
            action,
            inverse,
        })
    }

    fn same_group(&self, other: &GroupModule) -> Result<()> {
        if self.group != other.group {
            return Err(Error::invalid("modules over different groups"));
        }
        Ok(())
    }

    /// Restriction along an inclusion whose parent is this module's group.
    pub fn restrict_along(&self, inc: &Inclusion) -> Result<GroupModule> {
        if **inc.parent() != *self.group {
            return Err(Error::invalid("inclusion target differs from the module's group"));
        }
        let sub = inc.sub().clone();
        let action = (0..sub.letter_count())
            .map(|k| self.element_matrix(&inc.map(&sub.letter(k))))
            .collect();
        Self::new(sub, self.rank, action)
    }

    /// Restriction to a subgroup of a finite group.
    pub fn restrict(&self, h: &Subgroup) -> Result<GroupModule> {
        let g = self.finite_group()?;
        self.restrict_along(&Inclusion::finite(g, h))
    }

    pub fn finite_group(&self) -> Result<&FiniteGroup> {
        self.group
            .as_finite()
            .ok_or_else(|| Error::precondition("operation needs a finite group"))
    }

    /// Inflation along a surjection `proj: K -> Q` (this module lives over `Q`).
    pub fn inflate(&self, k: &FiniteGroup, proj: &[usize]) -> Result<GroupModule> {
        let action = k.elements().map(|x| self.action[proj[x]].clone()).collect();
        Self::new(Group::finite(k.clone()), self.rank, action)
    }

    /// Action of a subgroup element given in parent coordinates, for a module over `(sub, embedding)`.
    fn sub_action(&self, embedding: &[usize], parent_elem: usize) -> &IntegerMatrix {
        let k = embedding
            .iter()
            .position(|&x| x == parent_elem)
            .expect("element lies in the subgroup");
        &self.action[k]
    }

    /// `Z K ⊗_H M` for this module over `H` (given through `inc`).
    pub fn induce(&self, inc: &Inclusion) -> Result<GroupModule> {
        let Inclusion::Finite {
            parent,
            subgroup,
            embedding,
            ..
        } = inc
        else {
            return Err(Error::precondition("induction is implemented for finite index subgroups of finite groups"));
        };
        let k = parent.as_finite().expect("finite parent");
        let reps = subgroup.coset_representatives(k);
        let cosets = subgroup.left_cosets(k);
        let coset_of = |x: usize| cosets.iter().position(|c| c.binary_search(&x).is_ok()).unwrap();
        let r = self.rank;
        let n = reps.len();
        let action = k
            .elements()
            .map(|g| {
                let mut m = IntegerMatrix::zeros(n * r, n * r);
                for (c, &x) in reps.iter().enumerate() {
                    let gx = k.mul(g, x);
                    let c2 = coset_of(gx);
                    let h = k.mul(k.inv(reps[c2]), gx);
                    m.add_block(c2 * r, c * r, self.sub_action(embedding, h));
                }
                m
            })
            .collect();
        Self::new(parent.clone(), n * r, action)
    }

    /// `Hom_H(Z K, M)` for this module over `H` (given through `inc`).
    pub fn coinduce(&self, inc: &Inclusion) -> Result<GroupModule> {
        let Inclusion::Finite {
            parent,
            subgroup,
            embedding,
            ..
        } = inc
        else {
            return Err(Error::precondition("coinduction is implemented for finite index subgroups of finite groups"));
        };
        let k = parent.as_finite().expect("finite parent");
        let cosets = right_cosets(k, subgroup);
        let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
        let coset_of = |x: usize| cosets.iter().position(|c| c.binary_search(&x).is_ok()).unwrap();
        let r = self.rank;
        let n = reps.len();
        let action = k
            .elements()
            .map(|g| {
                let mut m = IntegerMatrix::zeros(n * r, n * r);
                for (c, &y) in reps.iter().enumerate() {
                    let yg = k.mul(y, g);
                    let c2 = coset_of(yg);
                    let h = k.mul(yg, k.inv(reps[c2]));
                    m.add_block(c * r, c2 * r, self.sub_action(embedding, h));
                }
                m
            })
            .collect();
        Self::new(parent.clone(), n * r, action)
    }

    /// `M ⊠ N` over the product of the two groups.
    pub fn external_tensor(&self, other: &GroupModule) -> Result<GroupModule> {
        match (self.group.as_ref(), other.group.as_ref()) {
            (Group::Presented(a), Group::Presented(b)) => {
                let prod = Group::presented(PresentedGroup::product(a, b));
                let ia = IntegerMatrix::identity(self.rank);
                let ib = IntegerMatrix::identity(other.rank);
                let mut action: Vec<IntegerMatrix> =
                    self.action.iter().map(|m| m.kronecker(&ib)).collect();
                action.extend(other.action.iter().map(|m| ia.kronecker(m)));
                Self::new(prod, self.rank * other.rank, action)
            }
            (Group::Finite(a), Group::Finite(b)) => {
                let prod = direct_product(a, b);
                let nb = b.order();
                let action = prod
                    .elements()
                    .map(|x| self.action[x / nb].kronecker(&other.action[x % nb]))
                    .collect();
                Self::new(Group::finite(prod), self.rank * other.rank, action)
            }
            _ => Err(Error::invalid("external tensor needs two finite or two presented groups")),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (generators, action): (Vec<String>, Vec<&IntegerMatrix>) = match self.group.as_ref() {
            Group::Finite(g) => g
                .generators()
                .into_iter()
                .map(|x| (g.label(x), &self.action[x]))
                .unzip(),
            Group::Presented(p) => (p.generator_names().to_vec(), self.action.iter().collect()),
        };
        serde_json::json!({
            "rank": self.rank,
            "generators": generators,
            "action": action,
        })
    }

    pub fn from_json(v: &serde_json::Value, group: Arc<Group>) -> Result<Self> {
        let rank = v["rank"].as_u64().ok_or_else(|| Error::invalid("module needs a rank"))? as usize;
        let mats: Vec<IntegerMatrix> = serde_json::from_value(v["action"].clone())
            .map_err(|e| Error::invalid(format!("bad action matrices: {e}")))?;
        match group.as_ref() {
            Group::Finite(g) => {
                let gens = v["generators"]
                    .as_array()
                    .ok_or_else(|| Error::invalid("finite-group modules list their generators"))?
                    .iter()
                    .map(|s| {
                        let s = s.as_str().ok_or_else(|| Error::invalid("generator must be a string"))?;
                        Ok(group.parse_elem(s)?[0] as usize)
                    })
                    .collect::<Result<Vec<_>>>()?;
                if gens.len() != mats.len() {
                    return Err(Error::invalid("one matrix per generator required"));
                }
                Self::from_generator_images(g, &gens, &mats, rank)
            }
            Group::Presented(_) => Self::new(group, rank, mats),
        }
    }
}

/// Right cosets `H y`, each sorted, ordered by least element.
pub fn right_cosets(k: &FiniteGroup, h: &Subgroup) -> Vec<Vec<usize>> {
    let mut seen = vec![false; k.order()];
    let mut out = Vec::new();
    for y in k.elements() {
        if seen[y] {
            continue;
        }
        let mut c: Vec<usize> = h.elements().iter().map(|&x| k.mul(x, y)).collect();
        c.sort_unstable();
        for &z in &c {
            seen[z] = true;
        }
        out.push(c);
    }
    out
}

fn subgroup_generators(g: &FiniteGroup, h: &Subgroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![g.identity()];
    for &x in h.elements() {
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = g.closure(&gens);
        }
    }
    gens
}

/// `Z(K/L)` with `g` sending the coset `xL` to `gxL`; basis in left-coset order.
pub fn permutation_module(k: &FiniteGroup, l: &Subgroup) -> Result<GroupModule> {
    let cosets = l.left_cosets(k);
    let coset_of = |x: usize| cosets.iter().position(|c| c.binary_search(&x).is_ok()).unwrap();
    let perm: Vec<Vec<usize>> = k
        .elements()
        .map(|g| cosets.iter().map(|c| coset_of(k.mul(g, c[0]))).collect())
        .collect();
    GroupModule::permutation(k, &perm)
}

/// `I(K/L) = ker(Z(K/L) -> Z)` with basis `e_i - e_0` (`i >= 1`), and its
/// inclusion matrix into `Z(K/L)`.
pub fn augmentation_ideal(k: &FiniteGroup, l: &Subgroup) -> Result<(GroupModule, IntegerMatrix)> {
    let perm = permutation_module(k, l)?;
    let n = perm.rank();
    let mut inc = IntegerMatrix::zeros(n, n.saturating_sub(1));
    for i in 1..n {
        inc.set(0, i - 1, BigInt::from(-1));
        inc.set(i, i - 1, BigInt::one());
    }
    let ideal = perm.submodule(&inc)?;
    Ok((ideal, inc))
}

/// Homomorphisms `K -> {±1}`, as sign lists per element; the trivial one first.
pub fn sign_characters(k: &FiniteGroup) -> Vec<Vec<i64>> {
    let gens = k.generators();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << gens.len().min(20)) {
        let images: Vec<usize> = (0..gens.len()).map(|i| ((mask >> i) & 1) as usize).collect();
        if let Some(map) = k.extend_homomorphism(&gens, &images, 0, |a, b| a ^ b) {
            let signs: Vec<i64> = map.iter().map(|&s| if s == 0 { 1 } else { -1 }).collect();
            if !out.contains(&signs) {
                out.push(signs);
            }
        }
    }
    out
}

/// Augmentation `ε: Z(K/L) -> Z` as a `1 x [K:L]` matrix.
pub fn augmentation_matrix(n: usize) -> IntegerMatrix {
    IntegerMatrix::from_rows(&[vec![1i64; n]]).unwrap_or_else(|_| IntegerMatrix::zeros(1, 0))
}

/// Checks `0 -> I -> Z(K/L) -> Z -> 0` is exact on the level of lattices.
pub fn augmentation_sequence_is_exact(inclusion: &IntegerMatrix) -> bool {
    let n = inclusion.rows();
    let eps = augmentation_matrix(n);
    let composite_zero = (&eps * inclusion).is_zero();
    let ker = kernel_basis(&eps);
    let same = crate::exact_linalg::lattice::same_column_span(&ker, inclusion);
    let surjective = n > 0 && !eps.row(0).iter().all(Zero::is_zero);
    composite_zero && same && surjective
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_groups::{cyclic, symmetric, subgroup_list};

    #[test]
    fn c6_c3_augmentation_ideal_is_sign_type() {
        let k = cyclic(6);
        let c3 = Subgroup::generated_by(&k, &[2]);
        let (i, inc) = augmentation_ideal(&k, &c3).unwrap();
        assert_eq!(i.rank(), 1);
        assert_eq!(i.letter_matrix(1), &IntegerMatrix::from_i64(1, 1, &[-1]).unwrap());
        assert!(augmentation_sequence_is_exact(&inc));
    }

    #[test]
    fn s3_permutation_module() {
        let k = symmetric(3).unwrap();
        let c2 = subgroup_list(&k).unwrap().into_iter().find(|h| h.order() == 2).unwrap();
        assert_eq!(permutation_module(&k, &c2).unwrap().rank(), 3);
        assert_eq!(augmentation_ideal(&k, &c2).unwrap().0.rank(), 2);
        let whole = Subgroup::whole(&k);
        assert_eq!(augmentation_ideal(&k, &whole).unwrap().0.rank(), 0);
    }

    #[test]
    fn fixed_points_examples() {
        let k = cyclic(6);
        let c2 = Subgroup::generated_by(&k, &[3]);
        let c3 = Subgroup::generated_by(&k, &[2]);
        let m = permutation_module(&k, &c2).unwrap();
        assert_eq!(m.fixed_points(Some(&c3)).0, FgAbelianGroup::free(1));
        let c2g = cyclic(2);
        let sign = GroupModule::character(Group::finite(c2g.clone()), &[1, -1]).unwrap();
        assert!(sign.fixed_points(None).0.is_zero());
        let triv = GroupModule::trivial(Group::finite(c2g), 3);
        assert_eq!(triv.fixed_points(None).0, FgAbelianGroup::free(3));
    }

    #[test]
    fn induce_coinduce_shapes() {
        let k = cyclic(6);
        let c2 = Subgroup::generated_by(&k, &[3]);
        let inc = Inclusion::finite(&k, &c2);
        let triv = GroupModule::trivial(inc.sub().clone(), 1);
        let ind = triv.induce(&inc).unwrap();
        assert_eq!(ind.rank(), 3);
        assert_eq!(ind, permutation_module(&k, &c2).unwrap());
        let co = triv.coinduce(&inc).unwrap();
        assert_eq!(co.rank(), 3);
        let whole = Inclusion::finite(&k, &Subgroup::whole(&k));
        let m = GroupModule::character(whole.sub().clone(), &[1, -1, 1, -1, 1, -1]).unwrap();
        assert_eq!(m.coinduce(&whole).unwrap().rank(), 1);
    }

    #[test]
    fn restriction_of_permutation_module_is_free() {
        let k = cyclic(6);
        let c2 = Subgroup::generated_by(&k, &[3]);
        let c3 = Subgroup::generated_by(&k, &[2]);
        let res = permutation_module(&k, &c2).unwrap().restrict(&c3).unwrap();
        // free of rank one over C3: fixed points rank 1, rank 3
        assert_eq!(res.rank(), 3);
        assert_eq!(res.fixed_points(None).0, FgAbelianGroup::free(1));
    }

    #[test]
    fn invalid_action_rejected() {
        let g = Group::finite(cyclic(2));
        let bad = vec![IntegerMatrix::identity(1), IntegerMatrix::from_i64(1, 1, &[2]).unwrap()];
        assert!(GroupModule::new(g, 1, bad).is_err());
        let z = Group::presented(PresentedGroup::cyclic(2).unwrap());
        assert!(GroupModule::character(z.clone(), &[-1]).is_ok());
        assert!(GroupModule::new(z, 1, vec![IntegerMatrix::from_i64(1, 1, &[1]).unwrap(); 1]).is_ok());
    }

    #[test]
    fn characters_of_small_groups() {
        assert_eq!(sign_characters(&cyclic(6)).len(), 2);
        assert_eq!(sign_characters(&cyclic(3)).len(), 1);
        assert_eq!(sign_characters(&symmetric(3).unwrap()).len(), 2);
        assert_eq!(sign_characters(&crate::finite_groups::builtin("C2xC2").unwrap()).len(), 4);
    }
}
