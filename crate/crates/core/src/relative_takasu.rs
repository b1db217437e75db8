//! Relative cohomology `H^*(K, L; M)` of a group pair, computed either as
//! `Ext^{*-1}_K(I(K/L), M)` or as the cohomology of the mapping cone of restriction.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linalg::lattice::{exact_at, IntegerSolver};
use crate::exact_linalg::{AbelianMap, CochainComplex, FgAbelianGroup, IntegerMatrix, Subquotient};
use crate::finite_groups::{FiniteGroup, Subgroup};
use crate::group_modules::{
    augmentation_ideal, evaluate_dual, resolve_module, standard_resolution, Elem, FreeResolution, Group,
    GroupModule, GroupRingElement, GroupRingMatrix, Inclusion, PresentedGroup,
};

/// Largest ball radius searched when lifting over infinite fixture groups.
pub const DEFAULT_LIFT_RADIUS: i64 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    ExtRoute,
    ConeRoute,
}

#[derive(Clone, Debug)]
pub struct TakasuResult {
    pub group: String,
    pub subgroup: String,
    pub coefficients: GroupModule,
    /// Degrees `0..=n`; degree 0 is always zero.
    pub groups: Vec<FgAbelianGroup>,
    pub route: Route,
}

impl TakasuResult {
    /// Highest degree with a nonzero group, if any.
    pub fn top_nonvanishing_degree(&self) -> Option<usize> {
        self.groups.iter().rposition(|g| !g.is_zero())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.group,
            "subgroup": self.subgroup,
            "coefficients": self.coefficients.to_json(),
            "groups": self.groups,
            "route": self.route,
        })
    }
}

impl fmt::Display for TakasuResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gs: Vec<String> = self.groups.iter().map(|g| g.to_string()).collect();
        write!(f, "H^*({}, {}) = [{}]", self.group, self.subgroup, gs.join(", "))
    }
}

fn subgroup_name(l: &Subgroup) -> String {
    format!("order {} subgroup {:?}", l.order(), l.elements())
}

/// `H^i(K, L; M) = Ext^{i-1}_K(I(K/L), M)` for `i = 1..=n`, from a free resolution
/// of the augmentation ideal.
pub fn takasu_ext_route(k: &FiniteGroup, l: &Subgroup, m: &GroupModule, n: usize) -> Result<TakasuResult> {
    if m.group().as_finite() != Some(k) {
        return Err(Error::invalid("coefficients must live over K"));
    }
    let (ideal, _) = augmentation_ideal(k, l)?;
    let mut groups = vec![FgAbelianGroup::zero()];
    if n >= 1 {
        let res = resolve_module(&ideal, n)?;
        groups.extend(res.ext(m, n - 1)?);
    }
    Ok(TakasuResult {
        group: m.group().name(),
        subgroup: subgroup_name(l),
        coefficients: m.clone(),
        groups,
        route: Route::ExtRoute,
    })
}

/// A chain map over an inclusion `L -> K` from a resolution of `Z` over `L` to one
/// over `K`, lifting the identity of `Z`. `maps[k]` sends generator `j` of `Q_k`
/// to column `j`, with entries in the group ring of `K`.
#[derive(Clone, Debug)]
pub struct ChainLift {
    pub maps: Vec<GroupRingMatrix>,
}

/// The differentials of `q` pushed into the group ring of the parent.
fn pushed_differentials(inc: &Inclusion, q: &FreeResolution) -> Vec<GroupRingMatrix> {
    (1..=q.length())
        .map(|k| q.differential(k).map_entries(|x| x.map(|e| inc.map(e))))
        .collect()
}

fn ball(p: &PresentedGroup, radius: i64) -> Vec<Elem> {
    let dim = p.identity().len();
    let mut out: Vec<Elem> = Vec::new();
    let mut cur = vec![-radius; dim];
    loop {
        out.push(p.mul(&p.identity(), &cur));
        let mut i = 0;
        loop {
            if i == dim {
                out.sort();
                out.dedup();
                return out;
            }
            cur[i] += 1;
            if cur[i] <= radius {
                break;
            }
            cur[i] = -radius;
            i += 1;
        }
    }
}

/// Solves `d(x) = target` for `x` in `(ZG)^{d.cols()}` with coefficients supported on `window`.
fn solve_in_ring(
    group: &Group,
    d: &GroupRingMatrix,
    target: &[GroupRingElement],
    window: &[Elem],
) -> Option<Vec<GroupRingElement>> {
    let mut coord: HashMap<(usize, Elem), usize> = HashMap::new();
    let mut index = |key: (usize, Elem)| {
        let n = coord.len();
        *coord.entry(key).or_insert(n)
    };
    let mut columns: Vec<Vec<(usize, i64)>> = Vec::new();
    for i in 0..d.cols() {
        for s in window {
            let mut col = Vec::new();
            for i2 in 0..d.rows() {
                for (h, c) in d.get(i2, i).terms() {
                    col.push((index((i2, group.mul(s, h))), *c));
                }
            }
            columns.push(col);
        }
    }
    let mut rhs = Vec::new();
    for (i2, t) in target.iter().enumerate() {
        for (h, c) in t.terms() {
            rhs.push((index((i2, h.clone())), *c));
        }
    }
    let rows = coord.len();
    let mut m = IntegerMatrix::zeros(rows, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for &(r, c) in col {
            let v = m.get(r, j) + c;
            m.set(r, j, v);
        }
    }
    let mut b = vec![BigInt::zero(); rows];
    for (r, c) in rhs {
        b[r] += c;
    }
    let x = IntegerSolver::new(&m).solve(&b)?;
    let mut out = vec![GroupRingElement::zero(); d.cols()];
    for i in 0..d.cols() {
        for (w, s) in window.iter().enumerate() {
            let c = &x[i * window.len() + w];
            if !c.is_zero() {
                out[i].add_term(s.clone(), c.to_i64()?);
            }
        }
    }
    Some(out)
}

/// Lifts `id_Z` to a chain map `Q -> P` through degree `n`. A nonzero `variant`
/// adds that multiple of a boundary to each lift, giving a homotopic chain map.
pub fn chain_lift(
    inc: &Inclusion,
    p: &FreeResolution,
    q: &FreeResolution,
    n: usize,
    variant: i64,
) -> Result<ChainLift> {
    let group = inc.parent().as_ref();
    if p.ranks()[0] != 1 || q.ranks()[0] != 1 || p.length() < n || q.length() < n {
        return Err(Error::precondition("chain lifts need resolutions of Z reaching the degree"));
    }
    let qd = pushed_differentials(inc, q);
    let mut maps = vec![GroupRingMatrix::from_entries(vec![vec![GroupRingElement::one(group)]], 1)?];
    let windows: Vec<Vec<Elem>> = match group {
        Group::Finite(g) => vec![g.elements().map(|x| vec![x as i64]).collect()],
        Group::Presented(pg) => (0..=DEFAULT_LIFT_RADIUS).map(|r| ball(pg, r)).collect(),
    };
    for k in 1..=n {
        let targets = maps[k - 1].after(&qd[k - 1], group)?;
        let mut phi = GroupRingMatrix::zeros(p.ranks()[k], q.ranks()[k]);
        for j in 0..q.ranks()[k] {
            let target: Vec<GroupRingElement> = (0..targets.rows()).map(|i| targets.get(i, j).clone()).collect();
            let sol = windows
                .iter()
                .find_map(|w| solve_in_ring(group, p.differential(k), &target, w))
                .ok_or_else(|| {
                    Error::bound(format!("chain lift search in degree {k}"), DEFAULT_LIFT_RADIUS as usize, DEFAULT_LIFT_RADIUS as usize + 1)
                })?;
            for (i, x) in sol.into_iter().enumerate() {
                phi.set(i, j, x);
            }
            if variant != 0 && k < p.length() && p.ranks()[k + 1] > 0 {
                let bd = p.differential(k + 1);
                for i in 0..p.ranks()[k] {
                    let v = phi.get(i, j).add(&bd.get(i, 0).scale(variant));
                    phi.set(i, j, v);
                }
            }
        }
        maps.push(phi);
    }
    Ok(ChainLift { maps })
}

/// The cochain complexes of the pair and the restriction map between them.
#[derive(Clone, Debug)]
pub struct RelativeComplex {
    pub parent: CochainComplex,
    pub sub: CochainComplex,
    /// `restriction[k] : C^k(K) -> C^k(L)`.
    pub restriction: Vec<IntegerMatrix>,
    /// `cone^i = C^i(K) + C^{i-1}(L)`, `δ(a, b) = (δa, res(a) - δb)`.
    pub cone: CochainComplex,
}

impl RelativeComplex {
    /// Builds the complexes through degree `n` (so cohomology is valid through `n - 1`).
    pub fn build(inc: &Inclusion, m: &GroupModule, n: usize, variant: i64) -> Result<Self> {
        if *m.group() != *inc.parent() {
            return Err(Error::invalid("coefficients must live over the parent group"));
        }
        inc.validate()?;
        let p = standard_resolution(inc.parent(), n)?;
        let q = standard_resolution(inc.sub(), n)?;
        let lift = chain_lift(inc, &p, &q, n, variant)?;
        let parent = p.truncate(n).hom_complex(m)?;
        let q = q.truncate(n);
        let qd = pushed_differentials(inc, &q);
        let r = m.rank();
        let sub = CochainComplex::new_unchecked(
            q.ranks().iter().map(|x| x * r).collect(),
            qd.iter().map(|d| evaluate_dual(d, m)).collect(),
        )?;
        let restriction: Vec<IntegerMatrix> = lift
            .maps
            .iter()
            .map(|phi| {
                // f ↦ f ∘ φ has block (j, i) = ρ(φ_ij), the same shape as a coboundary
                evaluate_dual(phi, m)
            })
            .collect();
        let ck = parent.ranks();
        let cl = sub.ranks();
        let cone_rank = |i: usize| ck[i] + if i == 0 { 0 } else { cl[i - 1] };
        let mut ds = Vec::new();
        for i in 0..n {
            let mut d = IntegerMatrix::zeros(cone_rank(i + 1), cone_rank(i));
            d.add_block(0, 0, parent.differential(i).expect("degree in range"));
            d.add_block(ck[i + 1], 0, &restriction[i]);
            if i > 0 {
                d.add_block(ck[i + 1], ck[i], &-sub.differential(i - 1).expect("degree in range"));
            }
            ds.push(d);
        }
        let cone = CochainComplex::new((0..=n).map(cone_rank).collect(), ds)?;
        Ok(RelativeComplex {
            parent,
            sub,
            restriction,
            cone,
        })
    }
}

/// Relative cohomology in degrees `0..=n` as cohomology of the mapping cone.
pub fn takasu_cone_route(inc: &Inclusion, m: &GroupModule, n: usize) -> Result<TakasuResult> {
    takasu_cone_route_with_variant(inc, m, n, 0)
}

pub fn takasu_cone_route_with_variant(inc: &Inclusion, m: &GroupModule, n: usize, variant: i64) -> Result<TakasuResult> {
    let rc = RelativeComplex::build(inc, m, n + 1, variant)?;
    let groups = (0..=n).map(|i| rc.cone.cohomology_at(i)).collect::<Result<Vec<_>>>()?;
    Ok(TakasuResult {
        group: inc.parent().name(),
        subgroup: match inc {
            Inclusion::Finite { subgroup, .. } => subgroup_name(subgroup),
            Inclusion::Fixture(f) => f.sub.name(),
        },
        coefficients: m.clone(),
        groups,
        route: Route::ConeRoute,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LesNode {
    pub label: String,
    pub group: FgAbelianGroup,
}

/// The long exact sequence `H^i(K,L) -> H^i(K) -> H^i(L) -> H^{i+1}(K,L)` checked
/// node by node.
#[derive(Clone, Debug, Serialize)]
pub struct LesReport {
    pub nodes: Vec<LesNode>,
    pub composites_zero: bool,
    pub exact: bool,
    pub failures: Vec<String>,
}

/// Assembles and checks the long exact sequence through degree `n`.
pub fn les_verify(inc: &Inclusion, m: &GroupModule, n: usize) -> Result<LesReport> {
    let rc = RelativeComplex::build(inc, m, n + 2, 0)?;
    let ck = rc.parent.ranks().to_vec();
    let mut rel = Vec::new();
    let mut par = Vec::new();
    let mut sub = Vec::new();
    for i in 0..=n + 1 {
        rel.push(rc.cone.subquotient_at(i)?);
        par.push(rc.parent.subquotient_at(i)?);
        sub.push(rc.sub.subquotient_at(i)?);
    }
    // cochain maps: projection, restriction, inclusion b ↦ (0, b)
    let projection = |i: usize| -> IntegerMatrix {
        let mut p = IntegerMatrix::zeros(ck[i], rc.cone.ranks()[i]);
        p.add_block(0, 0, &IntegerMatrix::identity(ck[i]));
        p
    };
    let connecting = |i: usize| -> IntegerMatrix {
        let mut c = IntegerMatrix::zeros(rc.cone.ranks()[i + 1], rc.sub.ranks()[i]);
        c.add_block(ck[i + 1], 0, &IntegerMatrix::identity(rc.sub.ranks()[i]));
        c
    };
    let mut nodes = Vec::new();
    let mut maps: Vec<AbelianMap> = Vec::new();
    let mut push = |label: String, sq: &Subquotient| {
        nodes.push(LesNode {
            label,
            group: sq.group().clone(),
        })
    };
    for i in 0..=n {
        push(format!("H^{i}(K,L)"), &rel[i]);
        push(format!("H^{i}(K)"), &par[i]);
        push(format!("H^{i}(L)"), &sub[i]);
        maps.push(rel[i].induced_map(&projection(i), &par[i])?);
        maps.push(par[i].induced_map(&rc.restriction[i], &sub[i])?);
        maps.push(sub[i].induced_map(&connecting(i), &rel[i + 1])?);
    }
    push(format!("H^{}(K,L)", n + 1), &rel[n + 1]);
    let mut failures = Vec::new();
    let mut composites_zero = true;
    let mut exact = true;
    // exactness at the first node: 0 -> H^0(K,L) -> H^0(K)
    if !maps[0].is_injective() {
        exact = false;
        failures.push(format!("not exact at {}", nodes[0].label));
    }
    for t in 1..maps.len() {
        let (f, g) = (&maps[t - 1], &maps[t]);
        if !f.compose(g).is_zero() {
            composites_zero = false;
            failures.push(format!("composite through {} is nonzero", nodes[t].label));
        }
        if !exact_at(f, g) {
            exact = false;
            failures.push(format!("not exact at {}", nodes[t].label));
        }
    }
    Ok(LesReport {
        nodes,
        composites_zero,
        exact,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_groups::cyclic;
    use crate::group_modules::{group_cohomology, FixtureInclusion};

    fn z() -> FgAbelianGroup {
        FgAbelianGroup::free(1)
    }

    #[test]
    fn torus_relative_to_circle() {
        let inc = Inclusion::Fixture(FixtureInclusion::second_factor());
        let m = GroupModule::trivial(inc.parent().clone(), 1);
        let r = takasu_cone_route(&inc, &m, 3).unwrap();
        assert_eq!(r.groups, vec![FgAbelianGroup::zero(), z(), z(), FgAbelianGroup::zero()]);
        assert_eq!(r.top_nonvanishing_degree(), Some(2));
        let les = les_verify(&inc, &m, 3).unwrap();
        assert!(les.exact && les.composites_zero, "{:?}", les.failures);
    }

    #[test]
    fn integers_relative_to_even_integers() {
        let inc = Inclusion::Fixture(FixtureInclusion::doubling());
        let m = GroupModule::character(inc.parent().clone(), &[-1]).unwrap();
        let r = takasu_cone_route(&inc, &m, 3).unwrap();
        assert_eq!(r.groups[2], z());
        // H^0(2Z; Z) = Z injects into H^1 of the pair
        assert_eq!(r.groups[1].free_rank(), 1);
        let les = les_verify(&inc, &m, 2).unwrap();
        assert!(les.exact, "{:?}", les.failures);
        let restricted = m.restrict_along(&inc).unwrap();
        assert_eq!(group_cohomology(&restricted, 1).unwrap()[1], z());
    }

    #[test]
    fn routes_agree_on_c2_and_c6() {
        let c2 = cyclic(2);
        let triv = Subgroup::trivial(&c2);
        let m = GroupModule::trivial(Group::finite(c2.clone()), 1);
        let ext = takasu_ext_route(&c2, &triv, &m, 4).unwrap();
        let cone = takasu_cone_route(&Inclusion::finite(&c2, &triv), &m, 4).unwrap();
        assert_eq!(ext.groups, cone.groups);
        let c2z = FgAbelianGroup::cyclic(2);
        assert_eq!(&ext.groups[2..], &[c2z.clone(), FgAbelianGroup::zero(), c2z]);

        let c6 = cyclic(6);
        let l = Subgroup::generated_by(&c6, &[3]);
        let m6 = GroupModule::trivial(Group::finite(c6.clone()), 1);
        let ext = takasu_ext_route(&c6, &l, &m6, 3).unwrap();
        let cone = takasu_cone_route(&Inclusion::finite(&c6, &l), &m6, 3).unwrap();
        assert_eq!(ext.groups, cone.groups);
        assert!(ext.groups[1].is_zero());
    }

    #[test]
    fn whole_group_pair_vanishes() {
        let c6 = cyclic(6);
        let m = GroupModule::trivial(Group::finite(c6.clone()), 1);
        let whole = Subgroup::whole(&c6);
        assert!(takasu_ext_route(&c6, &whole, &m, 3).unwrap().groups.iter().all(FgAbelianGroup::is_zero));
        assert!(takasu_cone_route(&Inclusion::finite(&c6, &whole), &m, 3)
            .unwrap()
            .groups
            .iter()
            .all(FgAbelianGroup::is_zero));
    }

    #[test]
    fn two_lifts_agree() {
        let c6 = cyclic(6);
        let l = Subgroup::generated_by(&c6, &[2]);
        let inc = Inclusion::finite(&c6, &l);
        let m = GroupModule::character(Group::finite(c6), &[1, -1, 1, -1, 1, -1]).unwrap();
        let a = takasu_cone_route_with_variant(&inc, &m, 3, 0).unwrap();
        let b = takasu_cone_route_with_variant(&inc, &m, 3, 2).unwrap();
        assert_eq!(a.groups, b.groups);
    }
}
