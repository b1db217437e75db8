//! Free resolutions over integral group rings and ordinary group cohomology.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::group::{Elem, Fixture, Group, PresentedGroup};
use super::module::GroupModule;
use super::ring::{GroupRingElement, GroupRingMatrix};
use crate::error::{Error, Result};
use crate::exact_linalg::lattice::{kernel_basis, row_hermite_form, same_column_span};
use crate::exact_linalg::{invariant_factors, CochainComplex, FgAbelianGroup, IntegerMatrix};
use crate::finite_groups::{direct_product, FiniteGroup};

/// Largest `Z`-dimension of a single term built by free covers.
pub const DEFAULT_TERM_DIMENSION_BOUND: usize = 4000;

/// `... -> F_1 -> F_0` with `F_k = (ZG)^{ranks[k]}`; `differentials[k-1]` is
/// `d_k : F_k -> F_{k-1}`, an `r_{k-1} x r_k` group ring matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeResolution {
    group: Arc<Group>,
    ranks: Vec<usize>,
    differentials: Vec<GroupRingMatrix>,
}

impl FreeResolution {
    pub fn new(group: Arc<Group>, ranks: Vec<usize>, differentials: Vec<GroupRingMatrix>) -> Result<Self> {
        if ranks.is_empty() || differentials.len() + 1 != ranks.len() {
            return Err(Error::invalid("need one differential per positive degree"));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.rows() != ranks[k] || d.cols() != ranks[k + 1] {
                return Err(Error::invalid(format!("differential {} has the wrong shape", k + 1)));
            }
        }
        let r = FreeResolution {
            group,
            ranks,
            differentials,
        };
        if !r.composites_vanish()? {
            return Err(Error::invalid("consecutive differentials do not compose to zero"));
        }
        Ok(r)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    /// Highest degree present.
    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `d_k`, for `1 <= k <= length`.
    pub fn differential(&self, k: usize) -> &GroupRingMatrix {
        &self.differentials[k - 1]
    }

    /// `d_k ∘ d_{k+1} = 0` in the group ring for every `k`.
    pub fn composites_vanish(&self) -> Result<bool> {
        for k in 1..self.differentials.len() {
            let c = self.differentials[k - 1].after(&self.differentials[k], &self.group)?;
            if !c.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `d_k ∘ d_{k+1} = 0` after evaluating entries as matrices on `m`.
    pub fn composites_vanish_in(&self, m: &GroupModule) -> bool {
        let ev = |d: &GroupRingMatrix| evaluate_dual(d, m);
        (1..self.differentials.len()).all(|k| {
            // the coboundaries compose contravariantly
            (&ev(&self.differentials[k]) * &ev(&self.differentials[k - 1])).is_zero()
        })
    }

    /// Truncation to degrees `0..=n`, padding with zero terms when shorter.
    pub fn truncate(&self, n: usize) -> FreeResolution {
        let mut ranks: Vec<usize> = self.ranks.iter().copied().take(n + 1).collect();
        let mut differentials: Vec<GroupRingMatrix> = self.differentials.iter().take(n).cloned().collect();
        while ranks.len() < n + 1 {
            let prev = *ranks.last().unwrap();
            ranks.push(0);
            differentials.push(GroupRingMatrix::zeros(prev, 0));
        }
        FreeResolution {
            group: self.group.clone(),
            ranks,
            differentials,
        }
    }

    /// `Hom_G(F_•, M)`: degree `k` is `M^{r_k}`, and the coboundary has block
    /// `(j, i)` equal to the action of entry `(i, j)` of `d_{k+1}`.
    pub fn hom_complex(&self, m: &GroupModule) -> Result<CochainComplex> {
        if self.group != *m.group() {
            return Err(Error::invalid("module lives over a different group"));
        }
        let ranks = self.ranks.iter().map(|r| r * m.rank()).collect();
        let ds = self.differentials.iter().map(|d| evaluate_dual(d, m)).collect();
        CochainComplex::new_unchecked(ranks, ds)
    }

    /// `d_k` as an integer matrix on `Z`-coordinates (finite groups): basis
    /// element `g e_j` has index `j |G| + g`.
    pub fn integral_differential(&self, k: usize) -> Result<IntegerMatrix> {
        let g = self
            .group
            .as_finite()
            .ok_or_else(|| Error::precondition("integral coordinates need a finite group"))?;
        Ok(integral_matrix(g, &self.differentials[k - 1]))
    }

    /// Checks exactness on `Z`-coordinates: `ker ε = im d_1` and `ker d_k = im d_{k+1}`
    /// for `1 <= k < length` (finite groups, resolutions of the trivial module).
    pub fn is_exact(&self) -> Result<bool> {
        let g = self
            .group
            .as_finite()
            .ok_or_else(|| Error::precondition("exactness check needs a finite group"))?;
        if self.ranks[0] != 1 {
            return Ok(false);
        }
        let n = g.order();
        let mut prev = IntegerMatrix::from_rows(&[vec![1i64; n]])?;
        for k in 1..=self.length() {
            let d = integral_matrix(g, &self.differentials[k - 1]);
            if !(&prev * &d).is_zero() || !same_column_span(&kernel_basis(&prev), &d) {
                return Ok(false);
            }
            prev = d;
        }
        Ok(true)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.group.name(),
            "ranks": self.ranks,
            "differentials": self.differentials.iter().map(|d| d.to_json(&self.group)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let name = v["group"].as_str().ok_or_else(|| Error::invalid("missing group name"))?;
        let group = Group::builtin(name)?;
        let ranks: Vec<usize> = serde_json::from_value(v["ranks"].clone())
            .map_err(|e| Error::invalid(format!("bad ranks: {e}")))?;
        let ds = v["differentials"]
            .as_array()
            .ok_or_else(|| Error::invalid("missing differentials"))?
            .iter()
            .map(|d| GroupRingMatrix::from_json(d, &group))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, ranks, ds)
    }
}

/// Coboundary `Hom(F_{k-1}, M) -> Hom(F_k, M)` for `d = d_k`.
pub(crate) fn evaluate_dual(d: &GroupRingMatrix, m: &GroupModule) -> IntegerMatrix {
    let r = m.rank();
    let mut out = IntegerMatrix::zeros(d.cols() * r, d.rows() * r);
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            let x = d.get(i, j);
            if !x.is_zero() {
                out.add_block(j * r, i * r, &m.eval(x));
            }
        }
    }
    out
}

/// `Z`-matrix of left multiplication data: column `(j, g)` is `g · d(e_j)`.
fn integral_matrix(g: &FiniteGroup, d: &GroupRingMatrix) -> IntegerMatrix {
    let n = g.order();
    let mut rows: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); d.rows() * n];
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            for (h, c) in d.get(i, j).terms() {
                let h = h[0] as usize;
                for x in g.elements() {
                    rows[i * n + g.mul(x, h)].push((j * n + x, BigInt::from(*c)));
                }
            }
        }
    }
    for r in &mut rows {
        r.sort_by_key(|e| e.0);
    }
    IntegerMatrix::from_sparse_rows(d.rows() * n, d.cols() * n, rows)
}

/// A free resolution of a module together with the augmentation `F_0 -> M`.
#[derive(Clone, Debug)]
pub struct ModuleResolution {
    pub module: GroupModule,
    /// `rank(M) x r_0`: column `j` is the image of the generator `e_j`.
    pub augmentation: IntegerMatrix,
    pub resolution: FreeResolution,
}

impl ModuleResolution {
    /// `Ext^k_G(M, N)` for `k = 0..=n` (needs length at least `n + 1`).
    pub fn ext(&self, target: &GroupModule, n: usize) -> Result<Vec<FgAbelianGroup>> {
        if self.resolution.length() < n + 1 {
            return Err(Error::DegreeOutOfRange {
                degree: n,
                max: self.resolution.length().saturating_sub(1),
            });
        }
        let c = self.resolution.truncate(n + 1).hom_complex(target)?;
        (0..=n).map(|k| c.cohomology_at(k)).collect()
    }
}

const PRIME: i64 = 2_147_483_629;

/// Incremental row echelon form modulo a large prime.
#[derive(Clone)]
struct ModEchelon {
    rows: Vec<(usize, Vec<i64>)>,
}

impl ModEchelon {
    fn new() -> Self {
        ModEchelon { rows: Vec::new() }
    }

    fn reduce(&self, mut v: Vec<i64>) -> Vec<i64> {
        for (p, r) in &self.rows {
            let c = v[*p];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(r) {
                    *x = (*x - c * y).rem_euclid(PRIME);
                }
            }
        }
        v
    }

    /// Inserts `v`; returns whether the rank grew.
    fn insert(&mut self, v: Vec<i64>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = mod_inverse(v[p]);
        for x in v.iter_mut() {
            *x = (*x * inv).rem_euclid(PRIME);
        }
        for (_, r) in self.rows.iter_mut() {
            let c = r[p];
            if c != 0 {
                for (x, y) in r.iter_mut().zip(&v) {
                    *x = (*x - c * y).rem_euclid(PRIME);
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

fn mod_inverse(a: i64) -> i64 {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(PRIME));
    e.x.mod_floor(&BigInt::from(PRIME)).to_i64().unwrap()
}

fn to_mod(v: &[BigInt]) -> Vec<i64> {
    let p = BigInt::from(PRIME);
    v.iter().map(|x| x.mod_floor(&p).to_i64().unwrap()).collect()
}

/// Chooses vectors whose orbits under `orbit`, together with the columns of
/// `existing`, span the saturated lattice with basis columns `lattice`. Candidates are the Hermite basis vectors and, for small
/// lattices, their pairwise sums and differences; the choice is greedy by rank
/// gain, then by small coefficients and support.
pub(crate) fn choose_generators(
    lattice: &IntegerMatrix,
    existing: &IntegerMatrix,
    orbit: &dyn Fn(&[BigInt]) -> Vec<Vec<BigInt>>,
) -> Result<Vec<Vec<BigInt>>> {
    let b = lattice.cols();
    let dim = lattice.rows();
    let mut ech = ModEchelon::new();
    for j in 0..existing.cols() {
        ech.insert(to_mod(&existing.col(j)));
    }
    let index = |m: &IntegerMatrix| -> BigInt {
        let f = invariant_factors(m);
        if f.len() < b {
            return BigInt::zero();
        }
        f.iter().product()
    };
    if b == 0 || (ech.rank() == b && index(existing).is_one()) {
        return Ok(Vec::new());
    }
    let hnf = row_hermite_form(&lattice.transpose());
    let basis: Vec<Vec<BigInt>> = (0..hnf.rows()).map(|i| hnf.row(i)).collect();
    let mut candidates: Vec<Vec<BigInt>> = basis.clone();
    if b <= 24 {
        for i in 0..b {
            for j in i + 1..b {
                candidates.push(basis[i].iter().zip(&basis[j]).map(|(x, y)| x + y).collect());
                candidates.push(basis[i].iter().zip(&basis[j]).map(|(x, y)| x - y).collect());
            }
        }
    }
    for c in candidates.iter_mut() {
        if c.iter().rev().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in c.iter_mut() {
                *x = -&*x;
            }
        }
    }
    candidates.retain(|c| c.iter().any(|x| !x.is_zero()));
    candidates.sort_by_cached_key(|c| {
        let support: Vec<usize> = c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect();
        let l1: BigInt = c.iter().map(|x| x.abs()).sum();
        let spread = support.last().unwrap() - support[0];
        (l1, support.len(), spread, support)
    });
    candidates.dedup();
    let orbits: Vec<Vec<Vec<i64>>> = candidates
        .iter()
        .map(|c| orbit(c).iter().map(|v| to_mod(v)).collect())
        .collect();

    let mut chosen: Vec<usize> = Vec::new();
    while ech.rank() < b {
        let mut best: Option<(usize, usize, ModEchelon)> = None;
        let cap = b - ech.rank();
        for (ci, orb) in orbits.iter().enumerate() {
            let mut e = ech.clone();
            let mut gain = 0;
            for v in orb {
                if e.insert(v.clone()) {
                    gain += 1;
                }
            }
            if gain > 0 && best.as_ref().is_none_or(|(g, _, _)| gain > *g) {
                let done = gain == cap;
                best = Some((gain, ci, e));
                if done {
                    break;
                }
            }
        }
        let (_, ci, e) = best.ok_or_else(|| Error::invalid("candidates do not span the lattice"))?;
        chosen.push(ci);
        ech = e;
    }
    // saturation: the orbit span must be the whole lattice
    let span_of = |chosen: &[usize]| -> IntegerMatrix {
        let cols: Vec<Vec<BigInt>> = chosen.iter().flat_map(|&c| orbit(&candidates[c])).collect();
        existing.hstack(&IntegerMatrix::from_cols(dim, &cols))
    };
    let mut current = index(&span_of(&chosen));
    while !current.is_one() {
        let mut best: Option<(BigInt, usize)> = None;
        for ci in 0..candidates.len() {
            let mut trial = chosen.clone();
            trial.push(ci);
            let idx = index(&span_of(&trial));
            if idx < current && best.as_ref().is_none_or(|(b, _)| idx < *b) {
                best = Some((idx, ci));
            }
        }
        let (idx, ci) = best.ok_or_else(|| Error::invalid("candidates do not generate the lattice"))?;
        chosen.push(ci);
        current = idx;
    }
    Ok(chosen.into_iter().map(|c| candidates[c].clone()).collect())
}

fn check_dimension(dim: usize, limit: usize) -> Result<()> {
    if dim > limit {
        return Err(Error::bound("free resolution term dimension", limit, dim));
    }
    Ok(())
}

/// Resolves a module over a finite group by iterated free covers, through degree `n`.
pub fn resolve_module(m: &GroupModule, n: usize) -> Result<ModuleResolution> {
    resolve_module_bounded(m, n, DEFAULT_TERM_DIMENSION_BOUND)
}

pub fn resolve_module_bounded(m: &GroupModule, n: usize, limit: usize) -> Result<ModuleResolution> {
    let g = m.finite_group()?.clone();
    let order = g.order();
    let rank = m.rank();
    // cover of M
    let act = |v: &[BigInt]| -> Vec<Vec<BigInt>> {
        g.elements().map(|x| m.letter_matrix(x).mul_vec(v)).collect()
    };
    let gens0 = choose_generators(&IntegerMatrix::identity(rank), &IntegerMatrix::zeros(rank, 0), &act)?;
    let r0 = gens0.len();
    check_dimension(r0 * order, limit)?;
    let aug = IntegerMatrix::from_cols(rank, &gens0);
    let mut integral = IntegerMatrix::from_cols(rank, &gens0.iter().flat_map(|v| act(v)).collect::<Vec<_>>());
    let mut ranks = vec![r0];
    let mut ds: Vec<GroupRingMatrix> = Vec::new();
    for _ in 1..=n {
        let prev_rank = *ranks.last().unwrap();
        let kernel = kernel_basis(&integral);
        let shift = |v: &[BigInt]| -> Vec<Vec<BigInt>> {
            g.elements()
                .map(|x| {
                    let mut out = vec![BigInt::zero(); v.len()];
                    for (idx, c) in v.iter().enumerate() {
                        if !c.is_zero() {
                            let (j, h) = (idx / order, idx % order);
                            out[j * order + g.mul(x, h)] = c.clone();
                        }
                    }
                    out
                })
                .collect()
        };
        let gens = choose_generators(&kernel, &IntegerMatrix::zeros(kernel.rows(), 0), &shift)?;
        check_dimension(gens.len() * order, limit)?;
        let mut d = GroupRingMatrix::zeros(prev_rank, gens.len());
        for (j, v) in gens.iter().enumerate() {
            for i in 0..prev_rank {
                let entry = GroupRingElement::from_terms(
                    (0..order)
                        .filter(|h| !v[i * order + h].is_zero())
                        .map(|h| (vec![h as i64], v[i * order + h].to_i64().expect("small coefficient"))),
                );
                d.set(i, j, entry);
            }
        }
        integral = IntegerMatrix::from_cols(
            prev_rank * order,
            &gens.iter().flat_map(|v| shift(v)).collect::<Vec<_>>(),
        );
        ranks.push(gens.len());
        ds.push(d);
    }
    let resolution = FreeResolution::new(m.group().clone(), ranks, ds)?;
    Ok(ModuleResolution {
        module: m.clone(),
        augmentation: aug,
        resolution,
    })
}

/// Resolution of the trivial module `Z` over a finite group, through degree `n`.
pub fn free_resolution_finite(k: &FiniteGroup, n: usize) -> Result<FreeResolution> {
    free_resolution_finite_bounded(k, n, DEFAULT_TERM_DIMENSION_BOUND)
}

pub fn free_resolution_finite_bounded(k: &FiniteGroup, n: usize, limit: usize) -> Result<FreeResolution> {
    let triv = GroupModule::trivial(Group::finite(k.clone()), 1);
    Ok(resolve_module_bounded(&triv, n, limit)?.resolution)
}

fn elem_monomial(x: Elem, c: i64) -> GroupRingElement {
    GroupRingElement::monomial(x, c)
}

/// Audited resolutions for the presented fixture groups, through degree `n`
/// (padded with zero terms beyond their length; cyclic groups are periodic).
pub fn fixture_resolution(p: &PresentedGroup, n: usize) -> Result<FreeResolution> {
    let group = Group::presented(p.clone());
    let g = group.as_ref();
    let one = |x: Elem| elem_monomial(x, 1);
    let id = g.identity();
    let gen_minus_one = |k: usize| GroupRingElement::minus_one(g, p.generator(k));
    let base = match p.kind() {
        Fixture::Integers => FreeResolution::new(
            group.clone(),
            vec![1, 1],
            vec![GroupRingMatrix::from_entries(vec![vec![gen_minus_one(0)]], 1)?],
        )?,
        Fixture::IntegersSquared => {
            let x = p.generator(0);
            let y = p.generator(1);
            let d1 = GroupRingMatrix::from_entries(vec![vec![gen_minus_one(0), gen_minus_one(1)]], 2)?;
            // Fox derivatives of x y x^-1 y^-1
            let dx = one(id.clone()).sub(&one(y));
            let dy = one(x).sub(&one(id.clone()));
            let d2 = GroupRingMatrix::from_entries(vec![vec![dx], vec![dy]], 1)?;
            FreeResolution::new(group.clone(), vec![1, 2, 1], vec![d1, d2])?
        }
        Fixture::Klein => {
            let a = p.generator(0);
            let b = p.generator(1);
            let a2 = g.mul(&a, &a);
            let b_inv = g.inv(&b);
            let a2b1 = g.mul(&a2, &b_inv);
            let a2b2 = g.mul(&a2b1, &b_inv);
            let d1 = GroupRingMatrix::from_entries(vec![vec![gen_minus_one(0), gen_minus_one(1)]], 2)?;
            // Fox derivatives of a a b^-1 b^-1
            let da = one(id.clone()).add(&one(a));
            let db = elem_monomial(a2b1, -1).add(&elem_monomial(a2b2, -1));
            let d2 = GroupRingMatrix::from_entries(vec![vec![da], vec![db]], 1)?;
            FreeResolution::new(group.clone(), vec![1, 2, 1], vec![d1, d2])?
        }
        Fixture::Cyclic(m) => {
            let norm = GroupRingElement::from_terms((0..*m as i64).map(|k| (vec![k], 1)));
            let ds = (1..=n.max(1))
                .map(|k| {
                    let e = if k % 2 == 1 { gen_minus_one(0) } else { norm.clone() };
                    GroupRingMatrix::from_entries(vec![vec![e]], 1)
                })
                .collect::<Result<Vec<_>>>()?;
            FreeResolution::new(group.clone(), vec![1; n.max(1) + 1], ds)?
        }
        Fixture::Product(a, b) => {
            let ra = fixture_resolution(a, n)?;
            let rb = fixture_resolution(b, n)?;
            tensor_product_resolution(&ra, &rb)?
        }
    };
    Ok(base.truncate(n))
}

/// `R_1 ⊗ R_2` over the product group, with Koszul signs; for two presented
/// groups the product is the fixture product, for two finite groups the direct product.
pub fn tensor_product_resolution(r1: &FreeResolution, r2: &FreeResolution) -> Result<FreeResolution> {
    let (group, emb1, emb2): (Arc<Group>, Box<dyn Fn(&Elem) -> Elem>, Box<dyn Fn(&Elem) -> Elem>) =
        match (r1.group().as_ref(), r2.group().as_ref()) {
            (Group::Presented(a), Group::Presented(b)) => {
                let (ia, ib) = (a.identity(), b.identity());
                (
                    Group::presented(PresentedGroup::product(a, b)),
                    Box::new(move |x: &Elem| x.iter().chain(&ib).copied().collect()),
                    Box::new(move |y: &Elem| ia.iter().chain(y).copied().collect()),
                )
            }
            (Group::Finite(a), Group::Finite(b)) => {
                let nb = b.order() as i64;
                (
                    Group::finite(direct_product(a, b)),
                    Box::new(move |x: &Elem| vec![x[0] * nb]),
                    Box::new(move |y: &Elem| vec![y[0]]),
                )
            }
            _ => return Err(Error::invalid("tensor product needs two finite or two presented groups")),
        };
    let (l1, l2) = (r1.length(), r2.length());
    let total = l1 + l2;
    // offsets[k] lists (p, q, start) blocks of degree k
    let blocks = |k: usize| -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        let mut start = 0;
        for p in 0..=k.min(l1) {
            let q = k - p;
            if q > l2 {
                continue;
            }
            out.push((p, q, start));
            start += r1.ranks()[p] * r2.ranks()[q];
        }
        out
    };
    let rank_of = |k: usize| -> usize {
        blocks(k)
            .iter()
            .map(|&(p, q, _)| r1.ranks()[p] * r2.ranks()[q])
            .sum()
    };
    let ranks: Vec<usize> = (0..=total).map(rank_of).collect();
    let mut ds = Vec::new();
    for k in 1..=total {
        let mut d = GroupRingMatrix::zeros(ranks[k - 1], ranks[k]);
        let lower = blocks(k - 1);
        let find = |p: usize, q: usize| lower.iter().find(|b| b.0 == p && b.1 == q).map(|b| b.2);
        for (p, q, start) in blocks(k) {
            let (a, bq) = (r1.ranks()[p], r2.ranks()[q]);
            for i in 0..a {
                for j in 0..bq {
                    let col = start + i * bq + j;
                    if p > 0 {
                        let s = find(p - 1, q).expect("block exists");
                        let dp = r1.differential(p);
                        for i2 in 0..r1.ranks()[p - 1] {
                            let x = dp.get(i2, i);
                            if !x.is_zero() {
                                d.set(s + i2 * bq + j, col, x.map(|e| emb1(&e.to_vec())));
                            }
                        }
                    }
                    if q > 0 {
                        let s = find(p, q - 1).expect("block exists");
                        let dq = r2.differential(q);
                        let sign = if p % 2 == 0 { 1 } else { -1 };
                        let bq2 = r2.ranks()[q - 1];
                        for j2 in 0..bq2 {
                            let y = dq.get(j2, j);
                            if !y.is_zero() {
                                d.set(s + i * bq2 + j2, col, y.map(|e| emb2(&e.to_vec())).scale(sign));
                            }
                        }
                    }
                }
            }
        }
        ds.push(d);
    }
    FreeResolution::new(group, ranks, ds)
}

/// A resolution of `Z` over `group` reaching degree `n`.
pub fn standard_resolution(group: &Group, n: usize) -> Result<FreeResolution> {
    match group {
        Group::Finite(k) => free_resolution_finite(k, n),
        Group::Presented(p) => fixture_resolution(p, n),
    }
}

/// `H^0 .. H^n` of `group` with coefficients in `m`.
pub fn group_cohomology(m: &GroupModule, n: usize) -> Result<Vec<FgAbelianGroup>> {
    let r = standard_resolution(m.group(), n + 1)?;
    cohomology_with(&r, m, n)
}

/// `H^0 .. H^n` computed from a given resolution of `Z` (length at least `n + 1`).
pub fn cohomology_with(r: &FreeResolution, m: &GroupModule, n: usize) -> Result<Vec<FgAbelianGroup>> {
    if r.length() < n + 1 {
        return Err(Error::DegreeOutOfRange {
            degree: n,
            max: r.length().saturating_sub(1),
        });
    }
    let c = r.truncate(n + 1).hom_complex(m)?;
    (0..=n).map(|k| c.cohomology_at(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_groups::{cyclic, symmetric, trivial};

    fn z() -> FgAbelianGroup {
        FgAbelianGroup::free(1)
    }

    #[test]
    fn c2_periodic_resolution() {
        let c2 = cyclic(2);
        let r = free_resolution_finite(&c2, 4).unwrap();
        assert_eq!(r.ranks(), &[1, 1, 1, 1, 1]);
        let g = r.group().clone();
        let t_minus = GroupRingElement::minus_one(&g, vec![1]);
        let t_plus = GroupRingElement::from_terms([(vec![0], 1), (vec![1], 1)]);
        assert_eq!(r.differential(1).get(0, 0), &t_minus);
        assert_eq!(r.differential(2).get(0, 0), &t_plus);
        assert_eq!(r.differential(3).get(0, 0), &t_minus);
        assert!(r.is_exact().unwrap());
    }

    #[test]
    fn c6_periodic_resolution() {
        let r = free_resolution_finite(&cyclic(6), 3).unwrap();
        assert_eq!(r.ranks(), &[1, 1, 1, 1]);
        let g = r.group().clone();
        assert_eq!(r.differential(1).get(0, 0), &GroupRingElement::minus_one(&g, vec![1]));
        assert_eq!(r.differential(2).get(0, 0).terms().count(), 6);
        assert!(r.is_exact().unwrap());
    }

    #[test]
    fn trivial_group_resolution() {
        let r = free_resolution_finite(&trivial(), 3).unwrap();
        assert_eq!(r.ranks(), &[1, 0, 0, 0]);
    }

    #[test]
    fn cohomology_of_c2() {
        let m = GroupModule::trivial(Group::finite(cyclic(2)), 1);
        let h = group_cohomology(&m, 4).unwrap();
        let c2 = FgAbelianGroup::cyclic(2);
        assert_eq!(h, vec![z(), FgAbelianGroup::zero(), c2.clone(), FgAbelianGroup::zero(), c2]);
    }

    #[test]
    fn s3_resolution_is_exact() {
        let r = free_resolution_finite(&symmetric(3).unwrap(), 4).unwrap();
        assert!(r.is_exact().unwrap());
        let m = GroupModule::trivial(r.group().clone(), 1);
        let h = cohomology_with(&r, &m, 3).unwrap();
        assert_eq!(h[1], FgAbelianGroup::zero());
        assert_eq!(h[2], FgAbelianGroup::cyclic(2));
        assert_eq!(h[3], FgAbelianGroup::zero());
    }

    #[test]
    fn fixture_cohomology() {
        let zg = Group::presented(PresentedGroup::integers());
        assert_eq!(group_cohomology(&GroupModule::trivial(zg.clone(), 1), 2).unwrap(), vec![z(), z(), FgAbelianGroup::zero()]);
        let sign = GroupModule::character(zg, &[-1]).unwrap();
        assert_eq!(group_cohomology(&sign, 1).unwrap()[1], FgAbelianGroup::cyclic(2));
        let z2 = Group::presented(PresentedGroup::integers_squared());
        assert_eq!(
            group_cohomology(&GroupModule::trivial(z2, 1), 2).unwrap(),
            vec![z(), FgAbelianGroup::free(2), z()]
        );
        let k = Group::presented(PresentedGroup::klein());
        assert_eq!(
            group_cohomology(&GroupModule::trivial(k.clone(), 1), 3).unwrap(),
            vec![z(), z(), FgAbelianGroup::cyclic(2), FgAbelianGroup::zero()]
        );
        let w = GroupModule::character(k, &[-1, -1]).unwrap();
        let h = group_cohomology(&w, 2).unwrap();
        assert_eq!(h[0], FgAbelianGroup::zero());
        assert_eq!(h[2], z());
    }

    #[test]
    fn klein_square_top_degree() {
        let k = PresentedGroup::klein();
        let r = fixture_resolution(&PresentedGroup::product(&k, &k), 5).unwrap();
        assert_eq!(&r.ranks()[..5], &[1, 4, 6, 4, 1]);
        let kg = Group::presented(k);
        let w = GroupModule::character(kg, &[-1, -1]).unwrap();
        let ww = w.external_tensor(&w).unwrap();
        let h = cohomology_with(&r, &ww, 4).unwrap();
        assert_eq!(h[4], z());
    }

    #[test]
    fn json_round_trip() {
        let r = fixture_resolution(&PresentedGroup::klein(), 2).unwrap();
        let back = FreeResolution::from_json(&r.to_json()).unwrap();
        assert_eq!(r, back);
    }
}
