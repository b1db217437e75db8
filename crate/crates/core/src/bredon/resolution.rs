use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use super::module::BredonModule;
use super::orbit::{Morphism, OrbitCategory};
use crate::error::{Error, Result};
use crate::exact_linalg::lattice::{kernel_basis, span_contains};
use crate::exact_linalg::{FgAbelianGroup, IntegerMatrix, PresentedCochainComplex};
use crate::group_modules::choose_generators;

/// Ceiling on `Σ_objects rank F_q(K/H)` for a single resolution term.
pub const DEFAULT_BREDON_RANK_BOUND: usize = 20_000;

/// A free Bredon module `⊕_j Z̲[K/H_{o_j}]`, one Yoneda summand per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeTerm {
    /// Object of each generator.
    pub objects: Vec<usize>,
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

impl FreeTerm {
    fn new(cat: &OrbitCategory, objects: Vec<usize>) -> Self {
        let n = cat.object_count();
        let mut offsets = vec![Vec::with_capacity(objects.len()); n];
        let mut dims = vec![0; n];
        for a in 0..n {
            for &o in &objects {
                offsets[a].push(dims[a]);
                dims[a] += cat.morphism_count(a, o);
            }
        }
        FreeTerm { objects, offsets, dims }
    }

    pub fn rank(&self) -> usize {
        self.objects.len()
    }

    /// `rank_Z F(K/H_a)`.
    pub fn dim_at(&self, a: usize) -> usize {
        self.dims[a]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `F(ψ) : F(b) -> F(a)` applied to a vector, for `ψ: a -> b`.
    fn pull(&self, cat: &OrbitCategory, psi: Morphism, w: &[BigInt]) -> Vec<BigInt> {
        let (a, b) = (psi.source, psi.target);
        let g = cat.representative(psi);
        let mut out = vec![BigInt::zero(); self.dims[a]];
        for (j, &o) in self.objects.iter().enumerate() {
            for (k, &c) in cat.morphisms(b, o).iter().enumerate() {
                let x = &w[self.offsets[b][j] + k];
                if x.is_zero() {
                    continue;
                }
                let pos = cat
                    .morphism_position(a, o, cat.act(o, g, c))
                    .expect("composite morphism");
                out[self.offsets[a][j] + pos] += x;
            }
        }
        out
    }
}

/// A free resolution `... -> F_1 -> F_0 -> Z̲` over an orbit category.
/// Generator `j` of `F_q` (at object `o_j`) maps to `images[q][j] ∈ F_{q-1}(K/H_{o_j})`,
/// or to an integer multiple of `1 ∈ Z̲(K/H_{o_j})` when `q = 0`.
#[derive(Clone, Debug)]
pub struct BredonResolution {
    terms: Vec<FreeTerm>,
    images: Vec<Vec<Vec<BigInt>>>,
}

impl BredonResolution {
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn terms(&self) -> &[FreeTerm] {
        &self.terms
    }

    /// Number of Yoneda summands per degree.
    pub fn ranks(&self) -> Vec<usize> {
        self.terms.iter().map(FreeTerm::rank).collect()
    }

    /// Objects of the generators of `F_q`.
    pub fn generator_objects(&self, q: usize) -> &[usize] {
        &self.terms[q].objects
    }

    /// `d_q` evaluated at object `a`: `F_q(a) -> F_{q-1}(a)`, or `F_0(a) -> Z` for `q = 0`.
    pub fn evaluate(&self, cat: &OrbitCategory, q: usize, a: usize) -> IntegerMatrix {
        evaluate_differential(cat, &self.terms, &self.images, q, a)
    }

    /// Objectwise exactness of the augmented complex through the top degree
    /// (the top term is only required to map onto the cycles).
    pub fn verify_exact(&self, cat: &OrbitCategory) -> bool {
        for a in 0..cat.object_count() {
            let aug = self.evaluate(cat, 0, a);
            if !span_contains(&aug, &IntegerMatrix::identity(1)) {
                return false;
            }
            for q in 0..self.length() {
                let d = self.evaluate(cat, q, a);
                let next = self.evaluate(cat, q + 1, a);
                if !(&d * &next).is_zero() {
                    return false;
                }
                if !span_contains(&next, &kernel_basis(&d)) {
                    return false;
                }
            }
        }
        true
    }

    /// `Hom(F_•, M)` through the top degree.
    pub fn hom_complex(&self, cat: &OrbitCategory, m: &BredonModule) -> Result<PresentedCochainComplex> {
        let n = self.terms.len();
        let mut ranks = Vec::with_capacity(n);
        let mut relations = Vec::with_capacity(n);
        let mut offsets = Vec::with_capacity(n);
        for t in &self.terms {
            let mut off = Vec::with_capacity(t.rank());
            let mut total = 0;
            for &o in &t.objects {
                off.push(total);
                total += m.generators(o);
            }
            ranks.push(total);
            relations.push(IntegerMatrix::block_diag(
                &t.objects.iter().map(|&o| m.relations(o).clone()).collect::<Vec<_>>(),
            ));
            offsets.push(off);
        }
        let mut ds = Vec::with_capacity(n.saturating_sub(1));
        for q in 1..n {
            let (src, tgt) = (&self.terms[q - 1], &self.terms[q]);
            let mut d = IntegerMatrix::zeros(ranks[q], ranks[q - 1]);
            for (jt, &ot) in tgt.objects.iter().enumerate() {
                let v = &self.images[q][jt];
                for (js, &os) in src.objects.iter().enumerate() {
                    for k in 0..cat.morphism_count(ot, os) {
                        let c = &v[src.offsets[ot][js] + k];
                        if c.is_zero() {
                            continue;
                        }
                        let block = m.map_at(ot, os, k).scale(c);
                        d.add_block(offsets[q][jt], offsets[q - 1][js], &block);
                    }
                }
            }
            ds.push(d);
        }
        PresentedCochainComplex::new(ranks, relations, ds)
    }

    pub fn to_json(&self, cat: &OrbitCategory) -> Value {
        json!({
            "ranks": self.ranks(),
            "generator_objects": self.terms.iter()
                .map(|t| t.objects.iter().map(|&o| cat.object_label(o)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "total_dims": self.terms.iter().map(FreeTerm::total_dim).collect::<Vec<_>>(),
        })
    }
}

fn evaluate_differential(
    cat: &OrbitCategory,
    terms: &[FreeTerm],
    images: &[Vec<Vec<BigInt>>],
    q: usize,
    a: usize,
) -> IntegerMatrix {
    let t = &terms[q];
    let rows = if q == 0 { 1 } else { terms[q - 1].dims[a] };
    let mut cols = Vec::with_capacity(t.dims[a]);
    for (j, &o) in t.objects.iter().enumerate() {
        for k in 0..cat.morphism_count(a, o) {
            if q == 0 {
                cols.push(images[0][j].clone());
            } else {
                cols.push(terms[q - 1].pull(cat, cat.morphism(a, o, k), &images[q][j]));
            }
        }
    }
    IntegerMatrix::from_cols(rows, &cols)
}

/// Chooses generators for the subfunctor with the given kernels, object by object
/// in category order; returns `(object, vector)` pairs.
fn cover(
    cat: &OrbitCategory,
    kernels: &[IntegerMatrix],
    pull: &dyn Fn(Morphism, &[BigInt]) -> Vec<BigInt>,
) -> Result<Vec<(usize, Vec<BigInt>)>> {
    let mut chosen: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for a in 0..cat.object_count() {
        let dim = kernels[a].rows();
        let mut existing = Vec::new();
        for (b, w) in &chosen {
            for k in 0..cat.morphism_count(a, *b) {
                existing.push(pull(cat.morphism(a, *b, k), w));
            }
        }
        let existing = IntegerMatrix::from_cols(dim, &existing);
        let orbit = |v: &[BigInt]| -> Vec<Vec<BigInt>> {
            (0..cat.morphism_count(a, a))
                .map(|k| pull(cat.morphism(a, a, k), v))
                .collect()
        };
        for v in choose_generators(&kernels[a], &existing, &orbit)? {
            chosen.push((a, v));
        }
    }
    Ok(chosen)
}

/// Resolves `Z̲` by iterated free covers of kernels through degree `n`.
pub fn free_resolution_constant(cat: &OrbitCategory, n: usize) -> Result<BredonResolution> {
    free_resolution_constant_bounded(cat, n, DEFAULT_BREDON_RANK_BOUND)
}

pub fn free_resolution_constant_bounded(
    cat: &OrbitCategory,
    n: usize,
    limit: usize,
) -> Result<BredonResolution> {
    let objs = cat.object_count();
    let identity_pull = |_: Morphism, w: &[BigInt]| -> Vec<BigInt> { w.to_vec() };
    let gens0 = cover(cat, &vec![IntegerMatrix::identity(1); objs], &identity_pull)?;
    let mut terms = vec![FreeTerm::new(cat, gens0.iter().map(|(o, _)| *o).collect())];
    let mut images: Vec<Vec<Vec<BigInt>>> = vec![gens0.into_iter().map(|(_, v)| v).collect()];
    check_total(&terms[0], 0, limit)?;
    for q in 1..=n {
        let kernels: Vec<IntegerMatrix> = (0..objs)
            .map(|a| kernel_basis(&evaluate_differential(cat, &terms, &images, q - 1, a)))
            .collect();
        let prev = terms[q - 1].clone();
        let pull = |psi: Morphism, w: &[BigInt]| prev.pull(cat, psi, w);
        let gens = cover(cat, &kernels, &pull)?;
        let term = FreeTerm::new(cat, gens.iter().map(|(o, _)| *o).collect());
        check_total(&term, q, limit)?;
        terms.push(term);
        images.push(gens.into_iter().map(|(_, v)| v).collect());
    }
    Ok(BredonResolution { terms, images })
}

fn check_total(t: &FreeTerm, q: usize, limit: usize) -> Result<()> {
    if t.total_dim() > limit {
        return Err(Error::bound(
            format!("Bredon resolution term rank at degree {q}"),
            limit,
            t.total_dim(),
        ));
    }
    Ok(())
}

/// `H^i_F(K; M)` for `i = 0..=n`.
pub fn bredon_cohomology(cat: &OrbitCategory, m: &BredonModule, n: usize) -> Result<Vec<FgAbelianGroup>> {
    let res = free_resolution_constant(cat, n + 1)?;
    bredon_cohomology_with(cat, &res, m, n)
}

pub fn bredon_cohomology_with(
    cat: &OrbitCategory,
    res: &BredonResolution,
    m: &BredonModule,
    n: usize,
) -> Result<Vec<FgAbelianGroup>> {
    if res.length() < n + 1 {
        return Err(Error::precondition(format!(
            "resolution of length {} cannot compute degree {n}",
            res.length()
        )));
    }
    let c = res.hom_complex(cat, m)?;
    (0..=n).map(|i| c.cohomology_at(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bredon::module::{atomic_module, coinduction_fixed_points, constant_module};
    use crate::finite_groups::{all_subgroups_family, cyclic, proper_subgroups_family, trivial_family};
    use crate::group_modules::{group_cohomology, Group, GroupModule};

    #[test]
    fn all_family_is_projective() {
        let k = cyclic(6);
        let cat = OrbitCategory::new(&k, &all_subgroups_family(&k).unwrap()).unwrap();
        let res = free_resolution_constant(&cat, 3).unwrap();
        assert_eq!(res.ranks(), vec![1, 0, 0, 0]);
        assert!(res.verify_exact(&cat));
        let h = bredon_cohomology(&cat, &constant_module(&cat), 2).unwrap();
        assert_eq!(h, vec![FgAbelianGroup::free(1), FgAbelianGroup::zero(), FgAbelianGroup::zero()]);
    }

    #[test]
    fn trivial_family_is_group_cohomology() {
        let k = cyclic(2);
        let cat = OrbitCategory::new(&k, &trivial_family(&k)).unwrap();
        let res = free_resolution_constant(&cat, 5).unwrap();
        assert_eq!(res.ranks(), vec![1; 6]);
        assert!(res.verify_exact(&cat));
        let triv = GroupModule::trivial(Group::finite(k.clone()), 1);
        let co = coinduction_fixed_points(&cat, &triv).unwrap();
        assert_eq!(
            bredon_cohomology_with(&cat, &res, &co, 4).unwrap(),
            group_cohomology(&triv, 4).unwrap()
        );
    }

    #[test]
    fn c6_proper_resolution() {
        let k = cyclic(6);
        let cat = OrbitCategory::new(&k, &proper_subgroups_family(&k).unwrap()).unwrap();
        let res = free_resolution_constant(&cat, 5).unwrap();
        assert!(res.verify_exact(&cat));
        let signs: Vec<i64> = k.elements().map(|g| if g % 2 == 0 { 1 } else { -1 }).collect();
        let sign = GroupModule::character(Group::finite(k.clone()), &signs).unwrap();
        let witness = atomic_module(&cat, 2, &sign, 0).unwrap();
        let h = bredon_cohomology_with(&cat, &res, &witness, 3).unwrap();
        assert!(!h[2].is_zero(), "{h:?} ranks {:?}", res.ranks());
    }
}
