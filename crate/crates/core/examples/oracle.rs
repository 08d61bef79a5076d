//! Brute force against the constructor on every small recipe.

use claw_bisect::generator::small_corpus;
use claw_bisect::oracle::DEFAULT_LIMIT;
use claw_bisect::{find_blocks, min_bisection, oracle_min};

fn main() -> claw_bisect::Result<()> {
    let corpus = small_corpus(DEFAULT_LIMIT, 3, 3, 2);
    let mut agree = 0;
    for (recipe, g) in &corpus {
        let part = find_blocks(g)?;
        let (_, cert) = min_bisection(g)?;
        let r = oracle_min(g, DEFAULT_LIMIT)?;
        let ok = r.min_epsilon == Some(cert.epsilon);
        agree += ok as usize;
        println!(
            "k={} t={} p={} seed={}  n={:<2} constructor {:<2} oracle {:?} over {} colorings{}",
            part.k,
            part.t,
            part.p,
            recipe.seed,
            g.order(),
            cert.epsilon,
            r.min_epsilon,
            r.enumerated,
            if ok { "" } else { "  MISMATCH" }
        );
    }
    println!("{agree} of {} agree", corpus.len());
    Ok(())
}
