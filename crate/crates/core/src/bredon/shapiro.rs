use serde::Serialize;

use super::module::BredonModule;
use super::orbit::OrbitCategory;
use super::resolution::bredon_cohomology;
use crate::error::{Error, Result};
use crate::exact_linalg::{FgAbelianGroup, IntegerMatrix};
use crate::finite_groups::{FiniteGroup, Subgroup, SubgroupFamily};
use crate::group_modules::{GroupModule, Inclusion};
use crate::relative_adamson::adamson_cohomology_family;

/// Degreewise comparison of two cohomology computations that should agree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShapiroReport {
    pub subgroup_side: Vec<FgAbelianGroup>,
    pub group_side: Vec<FgAbelianGroup>,
    pub agree: bool,
}

impl ShapiroReport {
    fn new(subgroup_side: Vec<FgAbelianGroup>, group_side: Vec<FgAbelianGroup>) -> Self {
        let agree = subgroup_side == group_side;
        ShapiroReport {
            subgroup_side,
            group_side,
            agree,
        }
    }
}

/// The orbit category of `P` for the family `F ∩ P`, with `P` re-indexed as its
/// own group, and the embedding `P -> K`.
pub fn restricted_category(cat: &OrbitCategory, p: &Subgroup) -> Result<(OrbitCategory, Vec<usize>)> {
    let (sub, emb) = p.to_group(cat.group());
    let fam = cat.family().restrict_to(p, &emb);
    let fam = SubgroupFamily::new(&sub, fam.members().to_vec())?;
    Ok((OrbitCategory::new(&sub, &fam)?, emb))
}

/// Right adjoint of restriction along `O_{F∩P}(P) -> O_F(K)`: the value at `K/H`
/// is `Hom(res Z̲[K/H], M) = ⊕_{P-orbits of K/H} M(P/stabilizer)`.
pub fn coinduce_bredon_module(
    cat_k: &OrbitCategory,
    cat_p: &OrbitCategory,
    embedding: &[usize],
    m: &BredonModule,
) -> Result<BredonModule> {
    let p = cat_p.group();
    let n = cat_k.object_count();
    // per object of K: orbit data (object of P, base point) and point -> (orbit, p)
    let mut orbits: Vec<Vec<(usize, usize)>> = Vec::with_capacity(n);
    let mut located: Vec<Vec<(usize, usize)>> = Vec::with_capacity(n);
    for a in 0..n {
        let size = cat_k.cosets(a).len();
        let mut loc = vec![(usize::MAX, 0); size];
        let mut orbs = Vec::new();
        for x in 0..size {
            if loc[x].0 != usize::MAX {
                continue;
            }
            let stab: Vec<usize> = p.elements().filter(|&y| cat_k.act(a, embedding[y], x) == x).collect();
            let stab = Subgroup::new(p, stab)?;
            let (obj, y) = cat_p
                .locate(&stab)
                .ok_or_else(|| Error::precondition("isotropy of a restricted orbit lies outside the family"))?;
            let base = cat_k.act(a, embedding[p.inv(y)], x);
            let o = orbs.len();
            orbs.push((obj, base));
            for g in p.elements() {
                let z = cat_k.act(a, embedding[g], base);
                if loc[z].0 == usize::MAX {
                    loc[z] = (o, g);
                }
            }
        }
        orbits.push(orbs);
        located.push(loc);
    }
    let generators: Vec<usize> = orbits
        .iter()
        .map(|os| os.iter().map(|&(q, _)| m.generators(q)).sum())
        .collect();
    let offsets: Vec<Vec<usize>> = orbits
        .iter()
        .map(|os| {
            let mut acc = 0;
            os.iter()
                .map(|&(q, _)| {
                    let o = acc;
                    acc += m.generators(q);
                    o
                })
                .collect()
        })
        .collect();
    let relations = orbits
        .iter()
        .map(|os| IntegerMatrix::block_diag(&os.iter().map(|&(q, _)| m.relations(q).clone()).collect::<Vec<_>>()))
        .collect();
    let mut maps = Vec::with_capacity(n);
    for a in 0..n {
        let mut row = Vec::with_capacity(n);
        for b in 0..n {
            let mut list = Vec::with_capacity(cat_k.morphism_count(a, b));
            for i in 0..cat_k.morphism_count(a, b) {
                let phi = cat_k.morphism(a, b, i);
                let mut mat = IntegerMatrix::zeros(generators[a], generators[b]);
                for (oa, &(qa, xa)) in orbits[a].iter().enumerate() {
                    let image = cat_k.act(b, cat_k.cosets(a)[xa][0], phi.coset);
                    let (ob, pp) = located[b][image];
                    let qb = orbits[b][ob].0;
                    let psi_coset = cat_p.coset_of(qb, pp);
                    let pos = cat_p
                        .morphism_position(qa, qb, psi_coset)
                        .ok_or_else(|| Error::invalid("restricted orbit map is not a morphism"))?;
                    mat.add_block(offsets[a][oa], offsets[b][ob], m.map_at(qa, qb, pos));
                }
                list.push(mat);
            }
            row.push(list);
        }
        maps.push(row);
    }
    BredonModule::new(cat_k, generators, relations, maps)
}

/// Compares `H^i_{F∩P}(P; M)` with `H^i_F(K; coind M)` for `i <= n`.
pub fn shapiro_bredon_check(
    cat_k: &OrbitCategory,
    p: &Subgroup,
    m: &BredonModule,
    n: usize,
) -> Result<ShapiroReport> {
    let (cat_p, emb) = restricted_category(cat_k, p)?;
    if !m.is_functorial(&cat_p) {
        return Err(Error::invalid("module is not a functor on the restricted orbit category"));
    }
    let lhs = bredon_cohomology(&cat_p, m, n)?;
    let co = coinduce_bredon_module(cat_k, &cat_p, &emb, m)?;
    let rhs = bredon_cohomology(cat_k, &co, n)?;
    Ok(ShapiroReport::new(lhs, rhs))
}

/// Compares `(F∩P) H^i(P; M)` with `F H^i(K; coind_P^K M)` for `i <= n`, where
/// `M` is a module over `P` re-indexed as its own group.
pub fn shapiro_relative_check(
    k: &FiniteGroup,
    family: &SubgroupFamily,
    p: &Subgroup,
    m: &GroupModule,
    n: usize,
) -> Result<ShapiroReport> {
    let inc = Inclusion::finite(k, p);
    let (sub, emb) = p.to_group(k);
    if m.finite_group()? != &sub {
        return Err(Error::invalid("module must live over the subgroup"));
    }
    let fam_p = SubgroupFamily::new(&sub, family.restrict_to(p, &emb).members().to_vec())?;
    let lhs = adamson_cohomology_family(&sub, &fam_p, m, n)?;
    let rhs = adamson_cohomology_family(k, family, &m.coinduce(&inc)?, n)?;
    Ok(ShapiroReport::new(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bredon::module::{atomic_module, coinduction_fixed_points, constant_module};
    use crate::finite_groups::{cyclic, family_generated_by, proper_subgroups_family, symmetric, sylow};
    use crate::group_modules::{sign_characters, Group};

    fn modules_over(p: &FiniteGroup) -> Vec<GroupModule> {
        sign_characters(p)
            .iter()
            .map(|s| GroupModule::character(Group::finite(p.clone()), s).unwrap())
            .collect()
    }

    #[test]
    fn c6_proper_at_c2() {
        let k = cyclic(6);
        let fam = proper_subgroups_family(&k).unwrap();
        let cat = OrbitCategory::new(&k, &fam).unwrap();
        let c2 = sylow(&k, 2).unwrap();
        let (cat_p, _) = restricted_category(&cat, &c2).unwrap();
        for m in modules_over(cat_p.group()) {
            let bm = coinduction_fixed_points(&cat_p, &m).unwrap();
            let r = shapiro_bredon_check(&cat, &c2, &bm, 3).unwrap();
            assert!(r.agree, "{r:?}");
            let r = shapiro_relative_check(&k, &fam, &c2, &m, 3).unwrap();
            assert!(r.agree, "{r:?}");
        }
        let r = shapiro_bredon_check(&cat, &c2, &constant_module(&cat_p), 3).unwrap();
        assert!(r.agree);
    }

    #[test]
    fn s3_c3_family() {
        let k = symmetric(3).unwrap();
        let c3 = sylow(&k, 3).unwrap();
        let fam = family_generated_by(&k, &c3).unwrap();
        let cat = OrbitCategory::new(&k, &fam).unwrap();
        let (cat_p, _) = restricted_category(&cat, &c3).unwrap();
        let p = cat_p.group().clone();
        for m in modules_over(&p) {
            let bm = coinduction_fixed_points(&cat_p, &m).unwrap();
            assert!(shapiro_bredon_check(&cat, &c3, &bm, 3).unwrap().agree);
            assert!(shapiro_relative_check(&k, &fam, &c3, &m, 3).unwrap().agree);
        }
        let triv = GroupModule::trivial(Group::finite(p.clone()), 1);
        let at = atomic_module(&cat_p, 0, &triv, 3).unwrap();
        assert!(shapiro_bredon_check(&cat, &c3, &at, 3).unwrap().agree);
    }
}
