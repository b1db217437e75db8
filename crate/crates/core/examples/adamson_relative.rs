//! Adamson cohomology of C6 relative to its proper subgroups, over the module
//! battery, and the averaged splitting of the augmentation.

use relcohom::finite_groups::{cyclic, proper_subgroups_family, sylow};
use relcohom::group_modules::battery::{battery, DEFAULT_BATTERY, DEFAULT_SEED};
use relcohom::relative_adamson::{adamson_cohomology, augmentation_test_epimorphism, average_splitting};

fn main() -> relcohom::Result<()> {
    let k = cyclic(6);
    let gens = proper_subgroups_family(&k)?.maximal_class_representatives(&k);
    for b in battery(DEFAULT_BATTERY, &k, DEFAULT_SEED)? {
        let h = adamson_cohomology(&k, &gens, &b.module, 4)?;
        println!("{:<28} {:?}", b.name, h.iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    let (src, tgt, pi, secs) = augmentation_test_epimorphism(&k, &[sylow(&k, 2)?, sylow(&k, 3)?])?;
    let avg = average_splitting(&src, &tgt, &pi, &secs)?;
    println!(
        "averaged section with coefficients {:?}, verified: {}",
        avg.coefficients,
        avg.witness.verify_against(&src, &tgt)
    );
    Ok(())
}
