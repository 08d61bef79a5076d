//! Classify the curated fixtures: which ones the solver accepts, and why not.

use claw_bisect::generator::curated_suite;

fn main() {
    for (name, g) in curated_suite() {
        let report = g.validate();
        let verdict = if report.is_applicable() { "ok" } else { "rejected" };
        println!("{name:>14}  n={:<3} {verdict:<8} {}", g.order(), report.summary());
    }
}
