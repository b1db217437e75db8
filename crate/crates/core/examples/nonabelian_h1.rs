//! Non-abelian first cohomology against conjugacy classes of complements.

use relcohom::nonabelian::{bijection_check, builtin_suite, h1_bruteforce};

fn main() -> relcohom::Result<()> {
    for a in builtin_suite()? {
        let h = h1_bruteforce(&a.gamma, &a.g, &a.action)?;
        let r = bijection_check(&a.gamma, &a.g, &a.action)?;
        println!(
            "{:<28} |G⋊Γ| = {:>3}  |H¹| = {}  complement classes = {}  bijective: {}",
            a.name,
            a.semidirect_order(),
            h.len(),
            r.complement_classes,
            r.bijective
        );
    }
    Ok(())
}
