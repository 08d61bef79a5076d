//! The odd case by hand: remove a diamond, solve the rest, put it back.

use claw_bisect::bisection::{is_desired, mono_stats};
use claw_bisect::constructor::canonical_diamond;
use claw_bisect::{desired_bisection, find_blocks, generator, lift, reduce_diamond};

fn main() -> claw_bisect::Result<()> {
    let g = generator::ring_of_diamonds(3);
    let part = find_blocks(&g)?;
    let diamond = canonical_diamond(&part).expect("three diamonds");
    let red = reduce_diamond(&g, diamond)?;
    println!("removed {:?}, joined {} and {}", red.removed, red.x, red.y);

    let h = &red.reduced;
    let reduced_part = find_blocks(h)?;
    let b = desired_bisection(h, &reduced_part)?;
    println!(
        "reduced: n = {}, k = {}, epsilon {}, desired = {}",
        h.order(),
        reduced_part.k,
        mono_stats(h, &b)?.epsilon,
        is_desired(h, &reduced_part, &b).is_desired()
    );

    let lifted = lift(&red, &b)?;
    println!("lifted:  n = {}, epsilon {}", g.order(), mono_stats(&g, &lifted)?.epsilon);
    Ok(())
}
