//! Integral cohomology of small finite groups and of the fixture groups.

use relcohom::cli::parse::{fixture_module, named_group, NamedGroup};
use relcohom::finite_groups::{cyclic, symmetric};
use relcohom::group_modules::{cohomology_with, fixture_resolution, free_resolution_finite, Group, GroupModule};

fn show(gs: &[relcohom::exact_linalg::FgAbelianGroup]) -> String {
    gs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn main() -> relcohom::Result<()> {
    for (name, k) in [("C2", cyclic(2)), ("C6", cyclic(6)), ("S3", symmetric(3)?)] {
        let res = free_resolution_finite(&k, 7)?;
        let m = GroupModule::trivial(Group::finite(k), 1);
        println!("H^*({name}; Z) = [{}]", show(&cohomology_with(&res, &m, 6)?));
    }
    for (name, coeff) in [("ZxZ", "trivial"), ("Klein", "trivial"), ("Klein", "orientation")] {
        let NamedGroup::Fixture(p) = named_group(name)? else { unreachable!() };
        let res = fixture_resolution(&p, 4)?;
        let h = cohomology_with(&res, &fixture_module(&p, coeff)?, 3)?;
        println!("H^*({name}; {coeff}) = [{}]", show(&h));
    }
    Ok(())
}
