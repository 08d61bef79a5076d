//! Minimum-monochromatic 2-bisections of connected claw-free cubic
//! multigraphs.
//!
//! A 2-bisection splits the vertices into two equal halves so that every
//! monochromatic component has at most two vertices. For a connected
//! claw-free cubic multigraph other than K4, with `k` diamonds and `p`
//! digons on `n` vertices, the fewest monochromatic edges any 2-bisection
//! can have is `(n - k - 2p) / 3`, plus one when `k` is odd.
//! [`min_bisection`] builds such a bisection and checks it against that
//! value; [`oracle_min`] confirms it by brute force on small graphs.
//!
//! ```
//! use claw_bisect::{generator, min_bisection, oracle_min};
//!
//! let g = generator::ring_of_diamonds(3);
//! let (_, cert) = min_bisection(&g).unwrap();
//! assert_eq!(cert.epsilon, 4);
//! assert_eq!(oracle_min(&g, 16).unwrap().min_epsilon, Some(4));
//! ```

pub mod bisection;
pub mod cli;
pub mod constructor;
pub mod error;
pub mod generator;
pub mod multigraph;
pub mod oracle;
pub mod structure;
pub mod wiring;

pub use bisection::{is_2bisection, is_desired, mono_stats, parity_check, Bisection, Color, MonoStats};
pub use constructor::{
    desired_bisection_csp, formula_value, lift, min_bisection, min_bisection_with, reduce_diamond,
    BisectionCertificate, DiamondReduction, Strategy,
};
pub use error::{Error, Result};
pub use generator::{generate, BlockRecipe};
pub use multigraph::{Multigraph, ValidationReport};
pub use oracle::{oracle_min, OracleResult};
pub use structure::{find_blocks, Block, BlockKind, StructurePartition};
pub use wiring::desired_bisection;
