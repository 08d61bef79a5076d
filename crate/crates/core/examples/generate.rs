//! Generate a seeded instance and print it in the edge-list format.
//!
//! `cargo run --example generate -- 3 8 2 40` reproduces the 40-vertex fixture.

use claw_bisect::{generate, BlockRecipe};

fn main() -> claw_bisect::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (k, t, p, seed) = match args[..] {
        [k, t, p, seed] => (k, t, p, seed),
        [k, t, p] => (k, t, p, 0),
        _ => (1, 2, 1, 0),
    };
    let g = generate(&BlockRecipe::new(k as usize, t as usize, p as usize, seed))?;
    print!("{}", g.to_text());
    Ok(())
}
