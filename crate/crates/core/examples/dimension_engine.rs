//! Deriving dimension bounds with traces, and reproducing a worked example.

use relcohom::dimension_engine::{derive, reproduce_example, DimQuantity};

fn main() -> relcohom::Result<()> {
    for target in ["cd(ZxZ, Z)", "cd([C4 : proper])", "bredon:C6:proper"] {
        let fact = derive(&DimQuantity::parse(target)?, &[])?;
        print!("{}", fact.render_text());
        println!();
    }
    let bundle = reproduce_example("ex-5.9", None)?;
    print!("{}", bundle.render_text());
    println!("all leaves replay: {}", bundle.replays()?);
    Ok(())
}
