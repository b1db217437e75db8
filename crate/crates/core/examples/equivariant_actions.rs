//! Classification of Γ-groups, invariant spanning trees and Cayley balls.

use relcohom::cli::input::{builtin_gamma_group, builtin_gamma_set, BUILTIN_GAMMA_GROUPS};
use relcohom::equivariant::{antipodal_square, cayley_ball, classify_gamma_group, equivariant_spanning_tree};

fn main() -> relcohom::Result<()> {
    for name in BUILTIN_GAMMA_GROUPS {
        let r = classify_gamma_group(&builtin_gamma_group(name)?)?;
        println!(
            "{name}: Γ-free {:?}, strongly Γ-free {:?}, Inassaridze dimension {}",
            r.gamma_free.value, r.strongly_gamma_free.value, r.inassaridze_dim.value
        );
    }

    let square = antipodal_square();
    let r = equivariant_spanning_tree(&square)?;
    println!(
        "antipodal square: tree {:?}, stabilizer fixed sets connected {}",
        r.tree, r.stabilizer_fixed_sets_connected
    );

    for name in ["c2-free", "c2-fixed-point"] {
        let report = cayley_ball(&builtin_gamma_set(name)?, 3)?.report();
        println!(
            "{name}: {} vertices, tree {}, trivial edge stabilizers {}",
            report.vertex_count, report.is_tree, report.zero_unfree
        );
    }
    Ok(())
}
