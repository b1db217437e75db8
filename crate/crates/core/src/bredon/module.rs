use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use super::orbit::{Morphism, OrbitCategory};
use crate::error::{Error, Result};
use crate::exact_linalg::lattice::{solve_matrix, span_contains};
use crate::exact_linalg::{cokernel, FgAbelianGroup, IntegerMatrix};
use crate::finite_groups::Subgroup;
use crate::group_modules::GroupModule;

/// A contravariant functor from an orbit category to abelian groups. The
/// value at object `a` is presented as `Z^generators[a] / relations[a]`; the map
/// for `f: a -> b` is a `generators[a] x generators[b]` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct BredonModule {
    generators: Vec<usize>,
    relations: Vec<IntegerMatrix>,
    maps: Vec<Vec<Vec<IntegerMatrix>>>,
}

impl BredonModule {
    /// Checks shapes, compatibility with relations, and functoriality.
    pub fn new(
        cat: &OrbitCategory,
        generators: Vec<usize>,
        relations: Vec<IntegerMatrix>,
        maps: Vec<Vec<Vec<IntegerMatrix>>>,
    ) -> Result<Self> {
        let m = Self::new_unchecked(cat, generators, relations, maps)?;
        if !m.is_functorial(cat) {
            return Err(Error::invalid("Bredon module is not functorial"));
        }
        Ok(m)
    }

    fn new_unchecked(
        cat: &OrbitCategory,
        generators: Vec<usize>,
        relations: Vec<IntegerMatrix>,
        maps: Vec<Vec<Vec<IntegerMatrix>>>,
    ) -> Result<Self> {
        let n = cat.object_count();
        if generators.len() != n || relations.len() != n || maps.len() != n {
            return Err(Error::invalid("one value per object required"));
        }
        for a in 0..n {
            if relations[a].rows() != generators[a] {
                return Err(Error::invalid(format!("relations at object {a} have wrong height")));
            }
            if maps[a].len() != n {
                return Err(Error::invalid("one map list per pair of objects required"));
            }
            for b in 0..n {
                if maps[a][b].len() != cat.morphism_count(a, b) {
                    return Err(Error::invalid(format!("wrong number of maps for ({a}, {b})")));
                }
                for m in &maps[a][b] {
                    if m.rows() != generators[a] || m.cols() != generators[b] {
                        return Err(Error::invalid(format!("map for ({a}, {b}) has wrong shape")));
                    }
                }
            }
        }
        Ok(BredonModule {
            generators,
            relations,
            maps,
        })
    }

    pub fn generators(&self, a: usize) -> usize {
        self.generators[a]
    }

    pub fn relations(&self, a: usize) -> &IntegerMatrix {
        &self.relations[a]
    }

    pub fn value(&self, a: usize) -> FgAbelianGroup {
        cokernel(&self.relations[a])
    }

    pub fn values(&self) -> Vec<FgAbelianGroup> {
        (0..self.generators.len()).map(|a| self.value(a)).collect()
    }

    /// `M(f) : M(target) -> M(source)`.
    pub fn map(&self, cat: &OrbitCategory, f: Morphism) -> &IntegerMatrix {
        let k = cat
            .morphism_position(f.source, f.target, f.coset)
            .expect("morphism of this category");
        &self.maps[f.source][f.target][k]
    }

    pub fn map_at(&self, a: usize, b: usize, k: usize) -> &IntegerMatrix {
        &self.maps[a][b][k]
    }

    fn equal_mod(&self, a: usize, x: &IntegerMatrix, y: &IntegerMatrix) -> bool {
        span_contains(&self.relations[a], &(x - y))
    }

    /// Maps respect relations, identities act as identities, and
    /// `M(g ∘ f) = M(f) M(g)` on every composable pair.
    pub fn is_functorial(&self, cat: &OrbitCategory) -> bool {
        let n = cat.object_count();
        for a in 0..n {
            for b in 0..n {
                for m in &self.maps[a][b] {
                    if !span_contains(&self.relations[a], &(m * &self.relations[b])) {
                        return false;
                    }
                }
            }
            let id = self.map(cat, cat.identity(a));
            if !self.equal_mod(a, id, &IntegerMatrix::identity(self.generators[a])) {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                for i in 0..cat.morphism_count(a, b) {
                    let f = cat.morphism(a, b, i);
                    for c in 0..n {
                        for j in 0..cat.morphism_count(b, c) {
                            let g = cat.morphism(b, c, j);
                            let gf = cat.compose(f, g).expect("composable");
                            let lhs = self.map(cat, gf);
                            let rhs = self.map(cat, f) * self.map(cat, g);
                            if !self.equal_mod(a, lhs, &rhs) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    pub fn direct_sum(&self, other: &BredonModule) -> Result<BredonModule> {
        if self.generators.len() != other.generators.len() {
            return Err(Error::invalid("modules over different orbit categories"));
        }
        let n = self.generators.len();
        let generators = (0..n).map(|a| self.generators[a] + other.generators[a]).collect();
        let relations = (0..n)
            .map(|a| IntegerMatrix::block_diag(&[self.relations[a].clone(), other.relations[a].clone()]))
            .collect();
        let maps = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        self.maps[a][b]
                            .iter()
                            .zip(&other.maps[a][b])
                            .map(|(x, y)| IntegerMatrix::block_diag(&[x.clone(), y.clone()]))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(BredonModule {
            generators,
            relations,
            maps,
        })
    }

    pub fn to_json(&self, cat: &OrbitCategory) -> Value {
        let n = self.generators.len();
        json!({
            "objects": (0..n).map(|a| json!({
                "label": cat.object_label(a),
                "value": self.value(a).to_string(),
                "generators": self.generators[a],
                "relations": self.relations[a],
            })).collect::<Vec<_>>(),
            "maps": (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..self.maps[a][b].len()).map(move |i| (a, b, i))))
                .map(|(a, b, i)| json!({
                    "source": a,
                    "target": b,
                    "representative": cat.representative(cat.morphism(a, b, i)),
                    "matrix": self.maps[a][b][i],
                }))
                .collect::<Vec<_>>(),
        })
    }
}

/// `Z̲Δ` for a `K`-set `Δ` (given by `perm[g][x] = g·x`): the value at `K/H` is
/// `Z[Δ^H]`, with maps induced by precomposition.
pub fn free_bredon_module(cat: &OrbitCategory, perm: &[Vec<usize>]) -> Result<BredonModule> {
    let k = cat.group();
    let size = perm.first().map_or(0, Vec::len);
    if perm.len() != k.order() || perm.iter().any(|p| p.len() != size) {
        return Err(Error::invalid("one permutation of the same set per group element required"));
    }
    for x in 0..size {
        let stab: Vec<usize> = k.elements().filter(|&g| perm[g][x] == x).collect();
        let stab = Subgroup::new(k, stab)?;
        if !cat.family().contains(&stab) {
            return Err(Error::precondition(format!(
                "point {x} has isotropy outside the family"
            )));
        }
    }
    let n = cat.object_count();
    let fixed: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            (0..size)
                .filter(|&x| cat.objects()[a].elements().iter().all(|&h| perm[h][x] == x))
                .collect()
        })
        .collect();
    let index = |a: usize, x: usize| fixed[a].binary_search(&x).expect("fixed point");
    let maps = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    (0..cat.morphism_count(a, b))
                        .map(|i| {
                            let g = cat.representative(cat.morphism(a, b, i));
                            let mut m = IntegerMatrix::zeros(fixed[a].len(), fixed[b].len());
                            for (j, &x) in fixed[b].iter().enumerate() {
                                m.set(index(a, perm[g][x]), j, BigInt::one());
                            }
                            m
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    BredonModule::new_unchecked(
        cat,
        fixed.iter().map(Vec::len).collect(),
        fixed.iter().map(|f| IntegerMatrix::zeros(f.len(), 0)).collect(),
        maps,
    )
}

/// The free module on one object, `Z̲[K/H_b]`.
pub fn yoneda_module(cat: &OrbitCategory, b: usize) -> Result<BredonModule> {
    let perm: Vec<Vec<usize>> = cat
        .group()
        .elements()
        .map(|g| (0..cat.cosets(b).len()).map(|c| cat.act(b, g, c)).collect())
        .collect();
    free_bredon_module(cat, &perm)
}

/// The constant functor `Z̲`.
pub fn constant_module(cat: &OrbitCategory) -> BredonModule {
    let n = cat.object_count();
    let maps = (0..n)
        .map(|a| (0..n).map(|b| vec![IntegerMatrix::identity(1); cat.morphism_count(a, b)]).collect())
        .collect();
    BredonModule {
        generators: vec![1; n],
        relations: vec![IntegerMatrix::zeros(1, 0); n],
        maps,
    }
}

/// `K/H ↦ M^H`, with the map for `f(eH) = gH'` sending `v ∈ M^{H'}` to `g·v`.
pub fn coinduction_fixed_points(cat: &OrbitCategory, m: &GroupModule) -> Result<BredonModule> {
    let k = cat.group();
    if m.finite_group()? != k {
        return Err(Error::invalid("module lives over a different group"));
    }
    let n = cat.object_count();
    let mut bases = Vec::with_capacity(n);
    for h in cat.objects() {
        let (_, b) = m.fixed_points(Some(h));
        let left = solve_matrix(&b.transpose(), &IntegerMatrix::identity(b.cols()))
            .ok_or_else(|| Error::invalid("fixed-point lattice is not saturated"))?
            .transpose();
        bases.push((b, left));
    }
    let maps = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    (0..cat.morphism_count(a, b))
                        .map(|i| {
                            let g = cat.representative(cat.morphism(a, b, i));
                            &(&bases[a].1 * m.letter_matrix(g)) * &bases[b].0
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    BredonModule::new_unchecked(
        cat,
        bases.iter().map(|(b, _)| b.cols()).collect(),
        bases.iter().map(|(b, _)| IntegerMatrix::zeros(b.cols(), 0)).collect(),
        maps,
    )
}

/// The module concentrated at one object: `A` (or `A / modulus·A`) at `K/H`, zero
/// elsewhere, with `Aut(K/H) = N(H)/H` acting through `A`. `H` must act trivially.
pub fn atomic_module(cat: &OrbitCategory, object: usize, a: &GroupModule, modulus: u64) -> Result<BredonModule> {
    if a.finite_group()? != cat.group() {
        return Err(Error::invalid("module lives over a different group"));
    }
    let h = &cat.objects()[object];
    let r = a.rank();
    if h.elements().iter().any(|&x| a.letter_matrix(x) != &IntegerMatrix::identity(r)) {
        return Err(Error::precondition("the object's subgroup must act trivially"));
    }
    let n = cat.object_count();
    let generators: Vec<usize> = (0..n).map(|b| if b == object { r } else { 0 }).collect();
    let relations = (0..n)
        .map(|b| {
            if b != object || modulus == 0 {
                IntegerMatrix::zeros(generators[b], 0)
            } else {
                IntegerMatrix::identity(r).scale(&BigInt::from(modulus))
            }
        })
        .collect();
    let maps = (0..n)
        .map(|s| {
            (0..n)
                .map(|t| {
                    (0..cat.morphism_count(s, t))
                        .map(|i| {
                            if s == object && t == object {
                                let g = cat.representative(cat.morphism(s, t, i));
                                a.letter_matrix(g).clone()
                            } else {
                                IntegerMatrix::zeros(generators[s], generators[t])
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    BredonModule::new(cat, generators, relations, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_groups::{all_subgroups_family, cyclic, proper_subgroups_family};
    use crate::group_modules::{permutation_module, Group};

    fn c6_proper() -> OrbitCategory {
        let k = cyclic(6);
        OrbitCategory::new(&k, &proper_subgroups_family(&k).unwrap()).unwrap()
    }

    #[test]
    fn free_values() {
        let cat = c6_proper();
        let free = yoneda_module(&cat, 2).unwrap();
        assert_eq!(
            free.values(),
            vec![FgAbelianGroup::zero(), FgAbelianGroup::zero(), FgAbelianGroup::free(6)]
        );
        assert!(free.is_functorial(&cat));
        let c3 = yoneda_module(&cat, 0).unwrap();
        assert_eq!(c3.generators(2), 2);
        assert_eq!(c3.generators(0), 2);
        assert_eq!(c3.generators(1), 0);
    }

    #[test]
    fn coinduced_values() {
        let cat = c6_proper();
        let k = cat.group().clone();
        let c2 = cat.objects()[1].clone();
        let m = permutation_module(&k, &c2).unwrap();
        let co = coinduction_fixed_points(&cat, &m).unwrap();
        assert!(co.is_functorial(&cat));
        // objects are (C3, C2, 1)
        assert_eq!(
            (co.generators(2), co.generators(1), co.generators(0)),
            (3, 3, 1)
        );
        let triv = GroupModule::trivial(Group::finite(k.clone()), 1);
        assert_eq!(coinduction_fixed_points(&cat, &triv).unwrap(), constant_module(&cat));
    }

    #[test]
    fn sign_over_c2_all_family() {
        let k = cyclic(2);
        let cat = OrbitCategory::new(&k, &all_subgroups_family(&k).unwrap()).unwrap();
        let sign = GroupModule::character(Group::finite(k.clone()), &[1, -1]).unwrap();
        let co = coinduction_fixed_points(&cat, &sign).unwrap();
        // objects (C2/C2, C2/1)
        assert_eq!(co.values(), vec![FgAbelianGroup::zero(), FgAbelianGroup::free(1)]);
    }

    #[test]
    fn atomic_and_isotropy() {
        let cat = c6_proper();
        let k = cat.group().clone();
        let signs: Vec<i64> = k.elements().map(|g| if g % 2 == 0 { 1 } else { -1 }).collect();
        let sign = GroupModule::character(Group::finite(k.clone()), &signs).unwrap();
        let at = atomic_module(&cat, 2, &sign, 0).unwrap();
        assert!(at.is_functorial(&cat));
        assert!(atomic_module(&cat, 1, &sign, 0).is_err());
        let point = vec![vec![0usize]; 6];
        assert!(free_bredon_module(&cat, &point).is_err());
    }
}
