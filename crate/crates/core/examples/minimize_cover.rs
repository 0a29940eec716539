//! Minimize an ESOP cover read from a PLA-style file (one cube per line,
//! `0`/`1`/`-`, optional `.i N` header and `#` comments), or a built-in
//! example when no path is given.
//!
//! ```text
//! cargo run --example minimize_cover [cover.pla]
//! ```

use qimg::esop::{minimize_with_stats, EsopCover};
use qimg::verify::check_equivalence;

const BUILTIN: &str = "\
# f = a'b' ^ a'b ^ ab'
.i 2
00
01
10
";

fn main() -> qimg::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => BUILTIN.to_string(),
    };
    let cover = EsopCover::from_pla(&text)?;
    let (min, stats) = minimize_with_stats(&cover);

    println!("input:     {} cubes over {} variables", cover.len(), cover.num_vars());
    println!("           {cover}");
    println!(
        "minimized: {} cubes ({} merges, {} rotations)",
        min.len(),
        stats.merges,
        stats.rotations
    );
    println!("           {min}");
    println!("equivalence: {:?}", check_equivalence(&cover, &min)?);
    print!("{}", min.to_pla());
    Ok(())
}
