//! Fixed, reproducible collections of coefficient modules used when searching
//! for nonvanishing cohomology.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::group::Group;
use super::module::{augmentation_ideal, permutation_module, sign_characters, GroupModule};
use crate::error::{Error, Result};
use crate::exact_linalg::IntegerMatrix;
use crate::finite_groups::{all_subgroups, FiniteGroup};

/// Identifier of the default battery.
pub const DEFAULT_BATTERY: &str = "paper-v1";
pub const DEFAULT_SEED: u64 = 0x5eed;
const RANDOM_MODULES: usize = 5;
const RANDOM_RANK_LIMIT: usize = 4;

#[derive(Clone, Debug)]
pub struct BatteryModule {
    pub name: String,
    pub module: GroupModule,
}

/// The battery `id` for `k`: trivial `Z`; `I(K/H)` for each proper class
/// representative `H`; the nontrivial sign characters; `Z(K/H)` for proper `H`;
/// and seeded random modules of rank at most 4.
pub fn battery(id: &str, k: &FiniteGroup, seed: u64) -> Result<Vec<BatteryModule>> {
    if id != DEFAULT_BATTERY {
        return Err(Error::UnknownName(format!("battery {id:?}")));
    }
    let group = Group::finite(k.clone());
    let classes = all_subgroups(k)?;
    let mut out = vec![BatteryModule {
        name: "trivial".into(),
        module: GroupModule::trivial(group.clone(), 1),
    }];
    let proper: Vec<_> = classes
        .iter()
        .map(|c| c.representative.clone())
        .filter(|h| h.order() < k.order())
        .collect();
    let mut pieces: Vec<GroupModule> = vec![GroupModule::trivial(group.clone(), 1)];
    for h in &proper {
        let (ideal, _) = augmentation_ideal(k, h)?;
        out.push(BatteryModule {
            name: format!("augmentation_ideal[{}]", subgroup_label(h.elements())),
            module: ideal.clone(),
        });
        if ideal.rank() < RANDOM_RANK_LIMIT {
            pieces.push(ideal);
        }
    }
    for (i, signs) in sign_characters(k).into_iter().enumerate().skip(1) {
        let m = GroupModule::character(group.clone(), &signs)?;
        out.push(BatteryModule {
            name: format!("sign[{i}]"),
            module: m.clone(),
        });
        pieces.push(m);
    }
    for h in &proper {
        let m = permutation_module(k, h)?;
        out.push(BatteryModule {
            name: format!("permutation[{}]", subgroup_label(h.elements())),
            module: m.clone(),
        });
        if m.rank() <= RANDOM_RANK_LIMIT {
            pieces.push(m);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for r in 0..RANDOM_MODULES {
        let mut m = pieces[rng.gen_range(0..pieces.len())].clone();
        loop {
            let next = &pieces[rng.gen_range(0..pieces.len())];
            if m.rank() + next.rank() > RANDOM_RANK_LIMIT || rng.gen_bool(0.4) {
                break;
            }
            m = m.direct_sum(next)?;
        }
        let p = random_unimodular(&mut rng, m.rank());
        out.push(BatteryModule {
            name: format!("random[{r}]"),
            module: m.conjugate_by(&p)?,
        });
    }
    Ok(out)
}

/// A product of elementary matrices with small entries.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> IntegerMatrix {
    let mut p = IntegerMatrix::identity(n);
    if n < 2 {
        return p;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        let mut e = IntegerMatrix::identity(n);
        e.set(i, j, c);
        p = &p * &e;
    }
    p
}

/// Short label for a subgroup: its order and elements.
pub fn subgroup_label(elements: &[usize]) -> String {
    format!("order{}:{:?}", elements.len(), elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_groups::cyclic;

    #[test]
    fn c6_battery_has_thirteen_modules() {
        let b = battery(DEFAULT_BATTERY, &cyclic(6), DEFAULT_SEED).unwrap();
        assert_eq!(b.len(), 13);
        assert!(b.iter().all(|m| m.module.rank() <= 6));
        let again = battery(DEFAULT_BATTERY, &cyclic(6), DEFAULT_SEED).unwrap();
        assert!(b.iter().zip(&again).all(|(x, y)| x.module == y.module));
    }

    #[test]
    fn unknown_battery() {
        assert!(battery("other", &cyclic(2), 1).is_err());
    }
}
