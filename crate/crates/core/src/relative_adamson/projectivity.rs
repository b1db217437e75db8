use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::splitting::relative_trace;
use crate::error::{Error, Result};
use crate::exact_linalg::lattice::{kernel_basis, solve, Subquotient};
use crate::exact_linalg::{FgAbelianGroup, IntegerMatrix};
use crate::finite_groups::{prime_factors, FiniteGroup, Subgroup};
use crate::group_modules::GroupModule;

/// `φ_H` with `id_M = Σ_H Tr_H^K(φ_H)`.
#[derive(Clone, Debug)]
pub struct ProjectivityCertificate {
    pub terms: Vec<(Subgroup, IntegerMatrix)>,
}

/// Why the identity is not a sum of relative traces: its class in the
/// cokernel of the trace map and the order of that class.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectivityRefutation {
    pub trace_cokernel: FgAbelianGroup,
    /// `None` when the class has infinite order.
    pub identity_class_order: Option<BigInt>,
}

#[derive(Clone, Debug)]
pub enum ProjectivityVerdict {
    Projective(ProjectivityCertificate),
    NotProjective(ProjectivityRefutation),
}

impl ProjectivityVerdict {
    pub fn is_projective(&self) -> bool {
        matches!(self, ProjectivityVerdict::Projective(_))
    }
}

fn vec_of(m: &IntegerMatrix) -> Vec<BigInt> {
    (0..m.rows()).flat_map(|i| m.row(i)).collect()
}

fn mat_of(v: &[BigInt], r: usize) -> IntegerMatrix {
    IntegerMatrix::from_dense(r, r, &v.chunks(r).map(<[BigInt]>::to_vec).collect::<Vec<_>>())
}

/// Basis of `End_H(M)`, as flattened `r x r` matrices (columns).
fn equivariant_endomorphisms(k: &FiniteGroup, h: &Subgroup, m: &GroupModule) -> IntegerMatrix {
    let r = m.rank();
    let (sub, emb) = h.to_group(k);
    let mut stacked = IntegerMatrix::zeros(0, r * r);
    for g in sub.generators() {
        let rho = m.letter_matrix(emb[g]);
        // φ ↦ ρ φ - φ ρ on the flattened entries
        let mut block = IntegerMatrix::zeros(r * r, r * r);
        for a in 0..r {
            for b in 0..r {
                let mut basis = IntegerMatrix::zeros(r, r);
                basis.set(a, b, BigInt::one());
                let image = &(rho * &basis) - &(&basis * rho);
                for (idx, v) in vec_of(&image).into_iter().enumerate() {
                    if !v.is_zero() {
                        block.set(idx, a * r + b, v);
                    }
                }
            }
        }
        stacked = stacked.vstack(&block);
    }
    if stacked.rows() == 0 {
        return IntegerMatrix::identity(r * r);
    }
    kernel_basis(&stacked)
}

/// Higman-type test: is `id_M` an integral combination of traces `Tr_H^K(φ)` with
/// `φ ∈ End_H(M)`, `H` among the generating subgroups?
pub fn relative_projectivity_test(
    m: &GroupModule,
    generators: &[Subgroup],
) -> Result<ProjectivityVerdict> {
    let k = m.finite_group()?.clone();
    let r = m.rank();
    if r == 0 {
        return Ok(ProjectivityVerdict::Projective(ProjectivityCertificate { terms: Vec::new() }));
    }
    let mut traces: Vec<Vec<BigInt>> = Vec::new();
    let mut origin: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for (hi, h) in generators.iter().enumerate() {
        let ends = equivariant_endomorphisms(&k, h, m);
        for c in 0..ends.cols() {
            let phi = mat_of(&ends.col(c), r);
            traces.push(vec_of(&relative_trace(&k, h, m, m, &phi)));
            origin.push((hi, ends.col(c)));
        }
    }
    let span = IntegerMatrix::from_cols(r * r, &traces);
    let id = vec_of(&IntegerMatrix::identity(r));
    if let Some(x) = solve(&span, &id) {
        let mut terms: Vec<(Subgroup, IntegerMatrix)> = generators
            .iter()
            .map(|h| (h.clone(), IntegerMatrix::zeros(r, r)))
            .collect();
        for (coef, (hi, phi)) in x.iter().zip(&origin) {
            if !coef.is_zero() {
                let add = mat_of(phi, r).scale(coef);
                terms[*hi].1 = &terms[*hi].1 + &add;
            }
        }
        terms.retain(|(_, phi)| !phi.is_zero());
        let cert = ProjectivityCertificate { terms };
        debug_assert!(verify_certificate(&k, m, &cert));
        return Ok(ProjectivityVerdict::Projective(cert));
    }
    let sq = Subquotient::new(&IntegerMatrix::identity(r * r), &span)?;
    let coords = sq.coordinates(&id).expect("identity lies in the ambient lattice");
    let mut order: Option<BigInt> = Some(BigInt::one());
    for (c, modulus) in coords.iter().zip(sq.moduli()) {
        if c.is_zero() {
            continue;
        }
        if modulus.is_zero() {
            order = None;
            break;
        }
        let g = num_integer::Integer::gcd(c, modulus);
        let o = modulus / g;
        order = order.map(|acc| num_integer::Integer::lcm(&acc, &o));
    }
    Ok(ProjectivityVerdict::NotProjective(ProjectivityRefutation {
        trace_cokernel: sq.group().clone(),
        identity_class_order: order,
    }))
}

/// Re-checks a certificate: each `φ_H` is `H`-equivariant and the traces sum to `id`.
pub fn verify_certificate(k: &FiniteGroup, m: &GroupModule, cert: &ProjectivityCertificate) -> bool {
    let r = m.rank();
    let mut total = IntegerMatrix::zeros(r, r);
    for (h, phi) in &cert.terms {
        if h.elements().iter().any(|&x| m.letter_matrix(x) * phi != phi * m.letter_matrix(x)) {
            return false;
        }
        total = &total + &relative_trace(k, h, m, m, phi);
    }
    total == IntegerMatrix::identity(r)
}

/// Outcome of the mod-`p` Euler characteristic argument against a finite-length
/// relative resolution of `Z` over a `p`-group.
#[derive(Clone, Debug, Serialize)]
pub struct EulerObstruction {
    pub prime: u64,
    /// `dim_{F_p}(F_p ⊗ M_i)` for each candidate term.
    pub dimensions: Vec<usize>,
    pub all_projective: bool,
    pub all_divisible: bool,
    pub euler_characteristic_mod_p: u64,
    /// True when the candidate cannot be a resolution of `Z`: its Euler
    /// characteristic would be `1`, but it is `0 mod p`.
    pub obstruction_holds: bool,
}

/// For a `p`-group `P` and the family of proper subgroups (given by generators),
/// checks each candidate term is relatively projective with dimension divisible
/// by `p`, which rules out Euler characteristic `1`.
pub fn mod_p_euler_obstruction(
    p_group: &FiniteGroup,
    generators: &[Subgroup],
    candidate: &[GroupModule],
) -> Result<EulerObstruction> {
    let primes = {
        let mut f = prime_factors(p_group.order());
        f.dedup();
        f
    };
    if primes.len() != 1 {
        return Err(Error::precondition(format!(
            "group of order {} is not a nontrivial p-group",
            p_group.order()
        )));
    }
    let p = primes[0];
    if generators.iter().any(|h| h.order() == p_group.order()) {
        return Err(Error::precondition("family must consist of proper subgroups"));
    }
    let mut all_projective = true;
    for m in candidate {
        if m.finite_group()? != p_group {
            return Err(Error::invalid("candidate term over a different group"));
        }
        all_projective &= relative_projectivity_test(m, generators)?.is_projective();
    }
    let dimensions: Vec<usize> = candidate.iter().map(GroupModule::rank).collect();
    let all_divisible = dimensions.iter().all(|d| d % p == 0);
    let chi: i64 = dimensions
        .iter()
        .enumerate()
        .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum();
    let chi_mod = chi.rem_euclid(p as i64) as u64;
    Ok(EulerObstruction {
        prime: p as u64,
        dimensions,
        all_projective,
        all_divisible,
        euler_characteristic_mod_p: chi_mod,
        obstruction_holds: all_projective && all_divisible && chi_mod != 1 % p as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_groups::{cyclic, symmetric, subgroup_list};
    use crate::group_modules::{permutation_module, Group};

    #[test]
    fn permutation_modules_are_relatively_projective() {
        let k = symmetric(3).unwrap();
        for l in subgroup_list(&k).unwrap() {
            let m = permutation_module(&k, &l).unwrap();
            let v = relative_projectivity_test(&m, std::slice::from_ref(&l)).unwrap();
            let ProjectivityVerdict::Projective(cert) = v else {
                panic!("Z(K/L) should be (K,L)-projective")
            };
            assert!(verify_certificate(&k, &m, &cert));
        }
    }

    #[test]
    fn trivial_module_over_cp_is_not_free_relative() {
        for p in [2usize, 3, 5] {
            let k = cyclic(p);
            let m = GroupModule::trivial(Group::finite(k.clone()), 1);
            let v = relative_projectivity_test(&m, &[Subgroup::trivial(&k)]).unwrap();
            let ProjectivityVerdict::NotProjective(r) = v else {
                panic!("trivial module is not free")
            };
            assert_eq!(r.identity_class_order, Some(BigInt::from(p)));
            assert!(relative_projectivity_test(&m, &[Subgroup::whole(&k)]).unwrap().is_projective());
        }
    }

    #[test]
    fn euler_obstruction() {
        let c2 = cyclic(2);
        let free = permutation_module(&c2, &Subgroup::trivial(&c2)).unwrap();
        let o = mod_p_euler_obstruction(&c2, &[Subgroup::trivial(&c2)], &[free.clone(), free.clone(), free])
            .unwrap();
        assert!(o.obstruction_holds);
        assert_eq!(o.dimensions, vec![2, 2, 2]);
        let c6 = cyclic(6);
        assert!(mod_p_euler_obstruction(&c6, &[Subgroup::trivial(&c6)], &[]).is_err());
    }
}
