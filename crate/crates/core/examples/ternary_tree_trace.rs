//! Step through the minimizer by hand: build the ternary tree, then
//! alternate leaf merging and root rotation, printing the cube set after
//! every step.
//!
//! ```text
//! cargo run --example ternary_tree_trace [cube ...]
//! ```
//!
//! Default cubes are `0- 10 11`, which collapse to the constant `--`.

use qimg::esop::{build_tree, merge_leaves, rotate, traverse, EsopCover, TernaryTree};

fn show(step: &str, t: &TernaryTree) {
    let cubes: Vec<String> = t.paths().iter().map(|c| c.to_string()).collect();
    println!("{step:<24} order {:?}  {{{}}}", t.var_order(), cubes.join(", "));
}

fn main() -> qimg::Result<()> {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() {
        args = vec!["0-".into(), "10".into(), "11".into()];
    }
    let n = args[0].len();
    let cover = EsopCover::parse_cubes(n, &args)?;

    let mut tree = build_tree(&cover)?;
    show("build", &tree);
    for i in 1..=n {
        let merged = merge_leaves(&mut tree);
        show(&format!("merge {i} ({merged} merged)"), &tree);
        tree = rotate(tree);
        show(&format!("rotate {i}"), &tree);
    }
    let merged = merge_leaves(&mut tree);
    show(&format!("final merge ({merged})"), &tree);
    println!("result: {}", traverse(&tree)?);
    Ok(())
}
