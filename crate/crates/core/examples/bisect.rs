//! Minimum 2-bisection of the 40-vertex fixture (three diamonds, two digons).

use claw_bisect::generator::forty_vertex_instance;
use claw_bisect::{min_bisection, Color};

fn main() -> claw_bisect::Result<()> {
    let g = forty_vertex_instance();
    let (b, cert) = min_bisection(&g)?;
    println!("black: {:?}", b.class(Color::Black));
    println!("white: {:?}", b.class(Color::White));
    println!(
        "epsilon {} (formula {:?}), k = {} {}, valid = {}",
        cert.epsilon,
        cert.formula_value,
        cert.k,
        cert.parity.as_str(),
        cert.is_valid()
    );
    Ok(())
}
