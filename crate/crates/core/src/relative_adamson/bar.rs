use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::SplittingWitness;
use crate::error::{Error, Result};
use crate::exact_linalg::lattice::solve_matrix;
use crate::exact_linalg::{CochainComplex, FgAbelianGroup, IntegerMatrix};
use crate::finite_groups::{FiniteGroup, Subgroup, SubgroupFamily};
use crate::group_modules::GroupModule;

/// Largest number of tuples allowed in a single bar term.
pub const DEFAULT_TUPLE_BOUND: usize = 250_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BarVariant {
    /// All tuples: `B_q = Z Ω^{q+1}`.
    Standard,
    /// Tuples with distinct neighbouring entries (degenerate tuples are zero).
    Normalized,
}

/// The `K`-set `Ω = ⊔ K/L_i`, one coset space per generating subgroup.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    /// Point `p` is the coset `cosets[p]` of generator `owner[p]`.
    pub cosets: Vec<Vec<usize>>,
    pub owner: Vec<usize>,
    /// `perm[g][p] = g·p`.
    pub perm: Vec<Vec<usize>>,
    /// The point `L_i` itself, fixed by `L_i`.
    pub base_points: Vec<usize>,
}

impl CosetSpace {
    pub fn new(k: &FiniteGroup, generators: &[Subgroup]) -> Self {
        let mut cosets = Vec::new();
        let mut owner = Vec::new();
        let mut base_points = Vec::new();
        for (i, l) in generators.iter().enumerate() {
            let cs = l.left_cosets(k);
            base_points.push(cosets.len() + cs.iter().position(|c| c.contains(&k.identity())).unwrap());
            for c in cs {
                cosets.push(c);
                owner.push(i);
            }
        }
        let mut lookup: HashMap<(usize, usize), usize> = HashMap::new();
        for (p, c) in cosets.iter().enumerate() {
            for &x in c {
                lookup.insert((owner[p], x), p);
            }
        }
        let perm = k
            .elements()
            .map(|g| {
                (0..cosets.len())
                    .map(|p| lookup[&(owner[p], k.mul(g, cosets[p][0]))])
                    .collect()
            })
            .collect();
        CosetSpace {
            cosets,
            owner,
            perm,
            base_points,
        }
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }
}

/// The relative bar resolution `B_q = Z Ω^{q+1}` with diagonal action and
/// alternating face differentials, truncated at degree `n`.
#[derive(Clone, Debug)]
pub struct RelativeResolution {
    group: FiniteGroup,
    generators: Vec<Subgroup>,
    omega: CosetSpace,
    variant: BarVariant,
    truncation: usize,
    tuples: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl RelativeResolution {
    pub fn new(k: &FiniteGroup, generators: &[Subgroup], n: usize, variant: BarVariant) -> Result<Self> {
        Self::with_bound(k, generators, n, variant, DEFAULT_TUPLE_BOUND)
    }

    pub fn with_bound(
        k: &FiniteGroup,
        generators: &[Subgroup],
        n: usize,
        variant: BarVariant,
        bound: usize,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::invalid("a family needs at least one generating subgroup"));
        }
        let omega = CosetSpace::new(k, generators);
        let s = omega.len();
        let count = |q: usize| -> usize {
            match variant {
                BarVariant::Standard => s.saturating_pow(q as u32 + 1),
                BarVariant::Normalized => s.saturating_mul((s - 1).saturating_pow(q as u32)),
            }
        };
        if count(n) > bound {
            return Err(Error::bound(format!("bar resolution term in degree {n}"), bound, count(n)));
        }
        let mut tuples: Vec<Vec<Vec<usize>>> = vec![(0..s).map(|p| vec![p]).collect()];
        for q in 1..=n {
            let prev = &tuples[q - 1];
            let mut next = Vec::with_capacity(count(q));
            for t in prev {
                for p in 0..s {
                    if variant == BarVariant::Normalized && *t.last().unwrap() == p {
                        continue;
                    }
                    let mut u = t.clone();
                    u.push(p);
                    next.push(u);
                }
            }
            tuples.push(next);
        }
        let index = tuples
            .iter()
            .map(|ts| ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
            .collect();
        Ok(RelativeResolution {
            group: k.clone(),
            generators: generators.to_vec(),
            omega,
            variant,
            truncation: n,
            tuples,
            index,
        })
    }

    /// Uses the maximal members of `family` (one per conjugacy class) as generators.
    pub fn for_family(k: &FiniteGroup, family: &SubgroupFamily, n: usize, variant: BarVariant) -> Result<Self> {
        Self::new(k, &family.maximal_class_representatives(k), n, variant)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn generators(&self) -> &[Subgroup] {
        &self.generators
    }

    pub fn omega(&self) -> &CosetSpace {
        &self.omega
    }

    pub fn variant(&self) -> BarVariant {
        self.variant
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn term_rank(&self, q: usize) -> usize {
        self.tuples[q].len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.tuples.iter().map(Vec::len).collect()
    }

    fn act(&self, g: usize, t: &[usize]) -> Vec<usize> {
        t.iter().map(|&p| self.omega.perm[g][p]).collect()
    }

    /// `B_q` as a permutation module.
    pub fn term(&self, q: usize) -> Result<GroupModule> {
        let perm: Vec<Vec<usize>> = self
            .group
            .elements()
            .map(|g| self.tuples[q].iter().map(|t| self.index[q][&self.act(g, t)]).collect())
            .collect();
        GroupModule::permutation(&self.group, &perm)
    }

    /// Nonzero faces of a tuple, with signs.
    fn faces(&self, t: &[usize]) -> Vec<(i64, Vec<usize>)> {
        (0..t.len())
            .filter_map(|i| {
                let mut f = t.to_vec();
                f.remove(i);
                if self.variant == BarVariant::Normalized && i > 0 && i + 1 < t.len() && t[i - 1] == t[i + 1] {
                    return None;
                }
                Some((if i % 2 == 0 { 1 } else { -1 }, f))
            })
            .collect()
    }

    /// `∂_q : B_q -> B_{q-1}` for `1 <= q <= n`.
    pub fn differential(&self, q: usize) -> IntegerMatrix {
        let rows = self.term_rank(q - 1);
        let mut sparse: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); rows];
        for (j, t) in self.tuples[q].iter().enumerate() {
            for (sign, f) in self.faces(t) {
                sparse[self.index[q - 1][&f]].push((j, BigInt::from(sign)));
            }
        }
        IntegerMatrix::from_sparse_rows(rows, self.term_rank(q), sparse)
    }

    /// `ε : B_0 -> Z`.
    pub fn augmentation(&self) -> IntegerMatrix {
        IntegerMatrix::from_rows(&[vec![1i64; self.term_rank(0)]]).expect("one row")
    }

    /// The contracting homotopy over generator `i`: `s_q : B_q -> B_{q+1}`,
    /// `ω ↦ (x_i, ω)`; `q = -1` is encoded as `None`.
    pub fn homotopy(&self, i: usize, q: Option<usize>) -> IntegerMatrix {
        let x = self.omega.base_points[i];
        match q {
            None => {
                let mut m = IntegerMatrix::zeros(self.term_rank(0), 1);
                m.set(x, 0, BigInt::one());
                m
            }
            Some(q) => {
                let rows = self.term_rank(q + 1);
                let mut sparse: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); rows];
                for (j, t) in self.tuples[q].iter().enumerate() {
                    if self.variant == BarVariant::Normalized && t[0] == x {
                        continue;
                    }
                    let mut u = vec![x];
                    u.extend(t);
                    sparse[self.index[q + 1][&u]].push((j, BigInt::one()));
                }
                IntegerMatrix::from_sparse_rows(rows, self.term_rank(q), sparse)
            }
        }
    }

    /// Checks `∂s + s∂ = id` in degrees below the truncation and that every `s_q`
    /// commutes with the action of generator `i`'s subgroup.
    pub fn verify_contraction(&self, i: usize) -> Result<bool> {
        let eps = self.augmentation();
        let s_minus = self.homotopy(i, None);
        if (&eps * &s_minus) != IntegerMatrix::identity(1) {
            return Ok(false);
        }
        let mut prev_s = s_minus;
        let mut prev_d = eps;
        let l = &self.generators[i];
        for q in 0..self.truncation {
            let s = self.homotopy(i, Some(q));
            let d = self.differential(q + 1);
            let lhs = &(&d * &s) + &(&prev_s * &prev_d);
            if lhs != IntegerMatrix::identity(self.term_rank(q)) {
                return Ok(false);
            }
            let src = self.term(q)?;
            let tgt = self.term(q + 1)?;
            for &h in l.elements() {
                if &s * src.letter_matrix(h) != tgt.letter_matrix(h) * &s {
                    return Ok(false);
                }
            }
            prev_s = s;
            prev_d = d;
        }
        Ok(true)
    }

    /// The augmentation `B_0 -> Z` split over generator `i` by `1 ↦ x_i`.
    pub fn splitting_witness(&self, i: usize) -> SplittingWitness {
        SplittingWitness {
            epimorphism: self.augmentation(),
            section: self.homotopy(i, None),
            equivariance_scope: self.generators[i].clone(),
        }
    }

    /// `Hom_K(B_•, M)` through the truncation degree, reduced to orbit
    /// representatives: degree `q` is `⊕_orbits M^{stabilizer}`.
    pub fn hom_complex(&self, m: &GroupModule) -> Result<CochainComplex> {
        if m.group().as_finite() != Some(&self.group) {
            return Err(Error::invalid("module lives over a different group"));
        }
        let k = &self.group;
        let mut fixed: HashMap<Vec<usize>, (IntegerMatrix, IntegerMatrix)> = HashMap::new();
        let mut fixed_basis = |stab: &[usize]| -> Result<(IntegerMatrix, IntegerMatrix)> {
            if let Some(v) = fixed.get(stab) {
                return Ok(v.clone());
            }
            let h = Subgroup::new(k, stab.to_vec())?;
            let (_, b) = m.fixed_points(Some(&h));
            let left = solve_matrix(&b.transpose(), &IntegerMatrix::identity(b.cols()))
                .ok_or_else(|| Error::invalid("fixed-point lattice is not saturated"))?
                .transpose();
            fixed.insert(stab.to_vec(), (b.clone(), left.clone()));
            Ok((b, left))
        };
        // per degree: orbit representatives, stabilizers, and tuple -> (orbit, g)
        struct Orbits {
            reps: Vec<usize>,
            offsets: Vec<usize>,
            basis: Vec<(IntegerMatrix, IntegerMatrix)>,
            locate: Vec<(usize, usize)>,
            dim: usize,
        }
        let mut degrees = Vec::new();
        for q in 0..=self.truncation {
            let ts = &self.tuples[q];
            let mut locate = vec![(usize::MAX, 0); ts.len()];
            let mut reps = Vec::new();
            let mut offsets = Vec::new();
            let mut basis = Vec::new();
            let mut dim = 0;
            for (j, t) in ts.iter().enumerate() {
                if locate[j].0 != usize::MAX {
                    continue;
                }
                let o = reps.len();
                reps.push(j);
                let mut stab = Vec::new();
                for g in k.elements() {
                    let u = self.index[q][&self.act(g, t)];
                    if u == j {
                        stab.push(g);
                    }
                    if locate[u].0 == usize::MAX {
                        locate[u] = (o, g);
                    }
                }
                let b = fixed_basis(&stab)?;
                offsets.push(dim);
                dim += b.0.cols();
                basis.push(b);
            }
            degrees.push(Orbits {
                reps,
                offsets,
                basis,
                locate,
                dim,
            });
        }
        let mut ds = Vec::new();
        for q in 0..self.truncation {
            let (src, tgt) = (&degrees[q], &degrees[q + 1]);
            let mut sparse: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); tgt.dim];
            for (o, &y) in tgt.reps.iter().enumerate() {
                let (_, left_y) = &tgt.basis[o];
                let row0 = tgt.offsets[o];
                let mut blocks: HashMap<usize, IntegerMatrix> = HashMap::new();
                for (sign, f) in self.faces(&self.tuples[q + 1][y]) {
                    let (x, g) = src.locate[self.index[q][&f]];
                    let (b_x, _) = &src.basis[x];
                    let block = &(left_y * m.letter_matrix(g)) * b_x;
                    let block = block.scale(&BigInt::from(sign));
                    blocks
                        .entry(x)
                        .and_modify(|acc| *acc = &*acc + &block)
                        .or_insert(block);
                }
                for (x, block) in blocks {
                    let col0 = src.offsets[x];
                    for r in 0..block.rows() {
                        for (c, v) in block.row_entries(r) {
                            sparse[row0 + r].push((col0 + c, v.clone()));
                        }
                    }
                }
            }
            ds.push(IntegerMatrix::from_sparse_rows(tgt.dim, src.dim, sparse));
        }
        CochainComplex::new_unchecked(degrees.iter().map(|d| d.dim).collect(), ds)
    }
}

/// `F H^i(K; M)` for `i = 0..=n`, the family given by generating subgroups.
pub fn adamson_cohomology(
    k: &FiniteGroup,
    generators: &[Subgroup],
    m: &GroupModule,
    n: usize,
) -> Result<Vec<FgAbelianGroup>> {
    let bar = RelativeResolution::new(k, generators, n + 1, BarVariant::Normalized)?;
    let c = bar.hom_complex(m)?;
    (0..=n).map(|i| c.cohomology_at(i)).collect()
}

/// As [`adamson_cohomology`], with the family given by its members.
pub fn adamson_cohomology_family(
    k: &FiniteGroup,
    family: &SubgroupFamily,
    m: &GroupModule,
    n: usize,
) -> Result<Vec<FgAbelianGroup>> {
    adamson_cohomology(k, &family.maximal_class_representatives(k), m, n)
}
