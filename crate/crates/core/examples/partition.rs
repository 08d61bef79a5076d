//! Split a generated graph into diamonds, triangles, trumpets and digons.

use claw_bisect::{find_blocks, generate, BlockRecipe};

fn main() -> claw_bisect::Result<()> {
    let g = generate(&BlockRecipe::new(2, 4, 2, 11))?;
    let part = find_blocks(&g)?;
    println!("n = {}, k = {}, t = {}, p = {}", g.order(), part.k, part.t, part.p);
    for block in &part.blocks {
        println!("  {:<8} {:?}", block.kind().as_str(), block.vertices());
    }
    println!("{}", serde_json::to_string_pretty(&part).expect("serializable"));
    Ok(())
}
