//! Timing on graphs far beyond the oracle's reach; the certificate checks
//! the result against the closed-form value.

use std::time::Instant;

use claw_bisect::{generate, min_bisection, BlockRecipe};

fn main() -> claw_bisect::Result<()> {
    for scale in [1, 10, 100, 1000] {
        let recipe = BlockRecipe::new(scale + 1, 4 * scale, scale, 1);
        let g = generate(&recipe)?;
        let start = Instant::now();
        let (_, cert) = min_bisection(&g)?;
        println!(
            "n = {:>6}  k = {:>5}  epsilon {:>5}  valid = {}  {:?}",
            g.order(),
            cert.k,
            cert.epsilon,
            cert.is_valid(),
            start.elapsed()
        );
    }
    Ok(())
}
