//! Bredon cohomology of C6 over the orbit category of its proper subgroups.

use relcohom::bredon::{atomic_module, bredon_cohomology_with, constant_module, free_resolution_constant, OrbitCategory};
use relcohom::finite_groups::{cyclic, proper_subgroups_family};
use relcohom::group_modules::{Group, GroupModule};

fn main() -> relcohom::Result<()> {
    let k = cyclic(6);
    let cat = OrbitCategory::new(&k, &proper_subgroups_family(&k)?)?;
    let objects: Vec<String> = (0..cat.object_count()).map(|i| cat.object_label(i)).collect();
    println!("objects: {objects:?}");
    let res = free_resolution_constant(&cat, 5)?;
    println!("resolution ranks {:?}, exact: {}", res.ranks(), res.verify_exact(&cat));

    let constant = bredon_cohomology_with(&cat, &res, &constant_module(&cat), 4)?;
    println!("constant Z: {:?}", constant.iter().map(ToString::to_string).collect::<Vec<_>>());
    let signs: Vec<i64> = k.elements().map(|g| if g % 2 == 0 { 1 } else { -1 }).collect();
    let sign = GroupModule::character(Group::finite(k.clone()), &signs)?;
    let witness = atomic_module(&cat, 2, &sign, 0)?;
    let h = bredon_cohomology_with(&cat, &res, &witness, 4)?;
    println!("atomic sign module at {}: {:?}", cat.object_label(2), h.iter().map(ToString::to_string).collect::<Vec<_>>());
    Ok(())
}
