//! Derive the 5x5 stencils of the left T1 cap patch and print them as a table.
//!
//! `cargo run --example stencils -- --export golden/t1_stencils.txt` writes the
//! plain-text table instead.

use gtspline::stencil::{derive_stencils, rational};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let set = derive_stencils()?;
    let args: Vec<String> = std::env::args().collect();
    if let Some(pos) = args.iter().position(|a| a == "--export") {
        let path = args.get(pos + 1).ok_or("--export needs a path")?;
        std::fs::write(path, set.export())?;
        return Ok(());
    }
    // same arrangement as the printed table: cap row 4 first
    for k in 0..5 {
        for i in 0..5 {
            println!("stencil ({k},{i}):");
            for row in set.layout(i, 4 - k) {
                let cells: Vec<String> = row.iter().map(|w| format!("{:>8}", rational(*w))).collect();
                println!("  [{}]", cells.join(""));
            }
        }
    }
    Ok(())
}
