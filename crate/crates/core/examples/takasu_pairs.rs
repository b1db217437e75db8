//! Relative cohomology of group pairs by both routes, with the long exact sequence.

use relcohom::cli::parse::{fixture_module, named_group, NamedGroup};
use relcohom::finite_groups::{symmetric, sylow};
use relcohom::group_modules::{FixtureInclusion, Group, GroupModule, Inclusion};
use relcohom::relative_takasu::{les_verify, takasu_cone_route, takasu_ext_route};

fn main() -> relcohom::Result<()> {
    for (parent, coeff, inc) in [
        ("ZxZ", "trivial", FixtureInclusion::second_factor()),
        ("Z", "sign", FixtureInclusion::doubling()),
    ] {
        let NamedGroup::Fixture(p) = named_group(parent)? else { unreachable!() };
        let m = fixture_module(&p, coeff)?;
        let inc = Inclusion::Fixture(inc);
        let r = takasu_cone_route(&inc, &m, 3)?;
        let les = les_verify(&inc, &m, 3)?;
        println!("{} with {coeff} coefficients: {:?}; LES exact: {}", inc_label(parent), r.groups.iter().map(ToString::to_string).collect::<Vec<_>>(), les.exact);
    }

    let k = symmetric(3)?;
    let l = sylow(&k, 2)?;
    let m = GroupModule::trivial(Group::finite(k.clone()), 1);
    let ext = takasu_ext_route(&k, &l, &m, 4)?;
    let cone = takasu_cone_route(&Inclusion::finite(&k, &l), &m, 4)?;
    assert_eq!(ext.groups, cone.groups);
    println!("(S3, C2): {:?} by both routes", ext.groups.iter().map(ToString::to_string).collect::<Vec<_>>());
    Ok(())
}

fn inc_label(parent: &str) -> &'static str {
    if parent == "ZxZ" {
        "(ZxZ, Z)"
    } else {
        "(Z, 2Z)"
    }
}
