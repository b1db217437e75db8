use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SplittingWitness;
use crate::error::{Error, Result};
use crate::exact_linalg::IntegerMatrix;
use crate::finite_groups::{FiniteGroup, Subgroup};
use crate::group_modules::{permutation_module, GroupModule};

/// Integers `a_i` with `Σ a_i n_i = 1`. Coefficients after the first are taken
/// as least positive residues, so `(3, 2)` gives `(-1, 2)`.
pub fn bezout_coefficients(ns: &[i64]) -> Result<Vec<i64>> {
    let Some((&first, rest)) = ns.split_first() else {
        return Err(Error::invalid("no indices given"));
    };
    let mut g = BigInt::from(first);
    let mut coeffs = vec![BigInt::one()];
    for &n in rest {
        let n = BigInt::from(n);
        let e = g.extended_gcd(&n);
        let new_g = e.gcd.clone();
        let modulus = &g / &new_g;
        let mut v = e.y.mod_floor(&modulus);
        if v.is_zero() && !modulus.is_one() {
            v = modulus.clone();
        }
        let u = (&new_g - &v * &n) / &g;
        for c in coeffs.iter_mut() {
            *c *= &u;
        }
        coeffs.push(v);
        g = new_g;
    }
    if g.abs() != BigInt::one() {
        return Err(Error::invalid(format!("indices {ns:?} are not coprime")));
    }
    if g.is_negative() {
        for c in coeffs.iter_mut() {
            *c = -&*c;
        }
    }
    coeffs
        .into_iter()
        .map(|c| i64::try_from(c).map_err(|_| Error::invalid("Bezout coefficient overflow")))
        .collect()
}

/// `Σ_{γ ∈ K/P} ρ_src(γ) s ρ_tgt(γ)^-1`.
pub fn relative_trace(
    k: &FiniteGroup,
    p: &Subgroup,
    source: &GroupModule,
    target: &GroupModule,
    s: &IntegerMatrix,
) -> IntegerMatrix {
    let mut t = IntegerMatrix::zeros(s.rows(), s.cols());
    for g in p.coset_representatives(k) {
        let term = &(source.letter_matrix(g) * s) * target.letter_matrix(k.inv(g));
        t = &t + &term;
    }
    t
}

/// Result of combining Sylow-local sections.
#[derive(Clone, Debug)]
pub struct AveragedSection {
    pub witness: SplittingWitness,
    pub coefficients: Vec<i64>,
    pub indices: Vec<i64>,
}

/// Averages `P_i`-equivariant sections of a `K`-epimorphism `π: source -> target`
/// into a `K`-equivariant section `Σ a_i Tr_{P_i}^K(s_i)` with `Σ a_i [K:P_i] = 1`.
pub fn average_splitting(
    source: &GroupModule,
    target: &GroupModule,
    epimorphism: &IntegerMatrix,
    sections: &[SplittingWitness],
) -> Result<AveragedSection> {
    let k = source.finite_group()?.clone();
    if target.finite_group()? != &k {
        return Err(Error::invalid("modules over different groups"));
    }
    if !is_equivariant(&k, source, target, epimorphism) {
        return Err(Error::precondition("the epimorphism is not K-equivariant"));
    }
    for w in sections {
        if !w.verify_against(source, target) {
            return Err(Error::precondition("a given section is not a local splitting"));
        }
    }
    let indices: Vec<i64> = sections
        .iter()
        .map(|w| w.equivariance_scope.index_in(&k) as i64)
        .collect();
    let coefficients = bezout_coefficients(&indices)?;
    let mut s = IntegerMatrix::zeros(source.rank(), target.rank());
    for (w, &a) in sections.iter().zip(&coefficients) {
        let t = relative_trace(&k, &w.equivariance_scope, source, target, &w.section);
        s = &s + &t.scale(&BigInt::from(a));
    }
    let witness = SplittingWitness {
        epimorphism: epimorphism.clone(),
        section: s,
        equivariance_scope: Subgroup::whole(&k),
    };
    if !witness.verify_against(source, target) {
        return Err(Error::invalid("averaged section failed verification"));
    }
    Ok(AveragedSection {
        witness,
        coefficients,
        indices,
    })
}

pub(crate) fn is_equivariant(k: &FiniteGroup, source: &GroupModule, target: &GroupModule, f: &IntegerMatrix) -> bool {
    k.generators()
        .into_iter()
        .all(|g| target.letter_matrix(g) * f == f * source.letter_matrix(g))
}

/// The sum of augmentations `⊕_i Z(K/P_i) -> Z` with the evident local
/// sections `1 ↦ P_i`.
pub fn augmentation_test_epimorphism(
    k: &FiniteGroup,
    subgroups: &[Subgroup],
) -> Result<(GroupModule, GroupModule, IntegerMatrix, Vec<SplittingWitness>)> {
    let group = crate::group_modules::Group::finite(k.clone());
    let trivial = GroupModule::trivial(group, 1);
    let mut source: Option<GroupModule> = None;
    let mut offsets = Vec::new();
    let mut base = Vec::new();
    for p in subgroups {
        let m = permutation_module(k, p)?;
        offsets.push(source.as_ref().map_or(0, GroupModule::rank));
        base.push(p.left_cosets(k).iter().position(|c| c.contains(&k.identity())).unwrap());
        source = Some(match source {
            None => m,
            Some(s) => s.direct_sum(&m)?,
        });
    }
    let source = source.ok_or_else(|| Error::invalid("no subgroups given"))?;
    let pi = IntegerMatrix::from_rows(&[vec![1i64; source.rank()]])?;
    let sections = subgroups
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let mut s = IntegerMatrix::zeros(source.rank(), 1);
            s.set(offsets[i] + base[i], 0, BigInt::one());
            SplittingWitness {
                epimorphism: pi.clone(),
                section: s,
                equivariance_scope: p.clone(),
            }
        })
        .collect();
    Ok((source, trivial, pi, sections))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_groups::{cyclic, symmetric, sylow};

    #[test]
    fn bezout_normalization() {
        assert_eq!(bezout_coefficients(&[3, 2]).unwrap(), vec![-1, 2]);
        assert_eq!(bezout_coefficients(&[1]).unwrap(), vec![1]);
        let c = bezout_coefficients(&[15, 10, 6]).unwrap();
        assert_eq!(c[0] * 15 + c[1] * 10 + c[2] * 6, 1);
        assert!(bezout_coefficients(&[4, 6]).is_err());
    }

    #[test]
    fn c6_average() {
        let k = cyclic(6);
        let c2 = sylow(&k, 2).unwrap();
        let c3 = sylow(&k, 3).unwrap();
        let (src, tgt, pi, secs) = augmentation_test_epimorphism(&k, &[c2, c3]).unwrap();
        let avg = average_splitting(&src, &tgt, &pi, &secs).unwrap();
        assert_eq!(avg.coefficients, vec![-1, 2]);
        assert!(avg.witness.verify_against(&src, &tgt));
    }

    #[test]
    fn s3_and_p_group() {
        let k = symmetric(3).unwrap();
        let (src, tgt, pi, secs) =
            augmentation_test_epimorphism(&k, &[sylow(&k, 2).unwrap(), sylow(&k, 3).unwrap()]).unwrap();
        assert!(average_splitting(&src, &tgt, &pi, &secs).is_ok());
        let c4 = cyclic(4);
        let (src, tgt, pi, secs) = augmentation_test_epimorphism(&c4, &[Subgroup::whole(&c4)]).unwrap();
        let avg = average_splitting(&src, &tgt, &pi, &secs).unwrap();
        assert_eq!(avg.witness.section, secs[0].section);
    }
}
