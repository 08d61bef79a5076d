//! Exhaustive ground truth over all balanced bipartitions.
//!
//! Black sets are enumerated as the combinations containing vertex 0, in
//! lexicographic order; each one stands for itself and its color swap, so
//! counts below are over ordered colorings. All checks run on bitmasks and
//! share no code with the constructor.

use serde::Serialize;

use crate::bisection::{Bisection, Color};
use crate::error::{Error, Result};
use crate::multigraph::Multigraph;
use crate::structure::{find_blocks, Block};

pub const DEFAULT_LIMIT: usize = 16;
/// No enumeration beyond this many vertices, whatever limit is requested.
pub const HARD_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    /// Minimum epsilon over all 2-bisections, if any exists.
    pub min_epsilon: Option<usize>,
    #[serde(rename = "optima")]
    pub optima_count: u64,
    pub desired_exists: bool,
    pub enumerated: u64,
    /// First optimal coloring in enumeration order.
    #[serde(skip)]
    pub witness: Option<Bisection>,
}

/// Balanced black sets containing vertex 0, as bitmasks, in lexicographic
/// order of their sorted vertex lists.
pub struct BalancedMasks {
    n: usize,
    // chosen vertices besides 0, ascending
    idx: Vec<usize>,
    done: bool,
}

impl BalancedMasks {
    pub fn new(n: usize) -> Self {
        let r = n / 2;
        let done = n == 0 || !n.is_multiple_of(2);
        BalancedMasks { n, idx: (1..r.max(1)).collect(), done }
    }
}

impl Iterator for BalancedMasks {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.done {
            return None;
        }
        let mask = self.idx.iter().fold(1u32, |m, &v| m | (1 << v));
        // advance to the next combination of idx within 1..n
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(mask)
    }
}

pub fn mask_to_bisection(n: usize, mask: u32) -> Bisection {
    let coloring = (0..n).map(|v| if mask >> v & 1 == 1 { Color::Black } else { Color::White }).collect();
    Bisection::new(coloring).expect("balanced mask")
}

/// Every balanced coloring with vertex 0 black.
pub fn balanced_bisections(g: &Multigraph, limit: usize) -> Result<impl Iterator<Item = Bisection>> {
    check_size(g.order(), limit)?;
    let n = g.order();
    Ok(BalancedMasks::new(n).map(move |m| mask_to_bisection(n, m)))
}

fn check_size(n: usize, limit: usize) -> Result<()> {
    let limit = limit.min(HARD_CAP);
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    Ok(())
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

struct Masks {
    // distinct neighbors per vertex
    nbrs: Vec<u32>,
    // (pair mask, multiplicity)
    pairs: Vec<(u32, usize)>,
}

impl Masks {
    fn new(g: &Multigraph) -> Self {
        let nbrs = (0..g.order()).map(|v| g.neighborhood(v).iter().fold(0u32, |m, &(u, _)| m | 1 << u)).collect();
        let pairs = g.pairs().map(|((u, v), m)| (1u32 << u | 1 << v, m as usize)).collect();
        Masks { nbrs, pairs }
    }
}

fn mono(pair: u32, black: u32) -> bool {
    let b = pair & black;
    b == 0 || b == pair
}

// desired-bisection conditions compiled to masks
struct DesiredRules {
    triangle_sides: Vec<[u32; 3]>,
    // pairs that must be bichromatic: in no triangle, or multiple
    must_split: Vec<u32>,
    diamond_edges: Vec<[u32; 5]>,
}

impl DesiredRules {
    fn new(g: &Multigraph, diamonds: &[Block]) -> Self {
        let bit = |v: usize| 1u32 << v;
        let triangles = g.triangles();
        let triangle_sides: Vec<[u32; 3]> =
            triangles.iter().map(|&[u, v, w]| [bit(u) | bit(v), bit(u) | bit(w), bit(v) | bit(w)]).collect();
        let must_split = g
            .pairs()
            .filter(|&((u, v), m)| m >= 2 || !triangle_sides.iter().flatten().any(|&s| s == bit(u) | bit(v)))
            .map(|((u, v), _)| bit(u) | bit(v))
            .collect();
        let diamond_edges = diamonds
            .iter()
            .filter_map(|d| match *d {
                Block::Diamond { a, b, c, d } => {
                    Some([bit(a) | bit(b), bit(a) | bit(c), bit(b) | bit(c), bit(b) | bit(d), bit(c) | bit(d)])
                }
                _ => None,
            })
            .collect();
        DesiredRules { triangle_sides, must_split, diamond_edges }
    }

    fn holds(&self, black: u32) -> bool {
        self.must_split.iter().all(|&p| !mono(p, black))
            && self.triangle_sides.iter().all(|sides| sides.iter().filter(|&&p| mono(p, black)).count() == 1)
            && self.diamond_edges.iter().all(|edges| edges.iter().filter(|&&p| mono(p, black)).count() == 1)
    }
}

/// Minimum epsilon over all 2-bisections of a graph with at most `limit`
/// vertices (capped at [`HARD_CAP`]).
pub fn oracle_min(g: &Multigraph, limit: usize) -> Result<OracleResult> {
    let n = g.order();
    check_size(n, limit)?;
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let masks = Masks::new(g);
    let rules = find_blocks(g).ok().map(|part| {
        let diamonds: Vec<Block> = part.diamonds().cloned().collect();
        DesiredRules::new(g, &diamonds)
    });

    let mut min_epsilon: Option<usize> = None;
    let mut optima = 0u64;
    let mut witness = None;
    let mut desired_exists = false;
    let mut enumerated = 0u64;
    for black in BalancedMasks::new(n) {
        enumerated += 2;
        let white = full & !black;
        if let Some(rules) = &rules {
            if !desired_exists && rules.holds(black) {
                desired_exists = true;
            }
        }
        let two = (0..n).all(|v| {
            let same = if black >> v & 1 == 1 { black } else { white };
            (masks.nbrs[v] & same).count_ones() <= 1
        });
        if !two {
            continue;
        }
        let eps: usize = masks.pairs.iter().filter(|&&(p, _)| mono(p, black)).map(|&(_, m)| m).sum();
        match min_epsilon {
            Some(best) if eps > best => {}
            Some(best) if eps == best => optima += 2,
            _ => {
                min_epsilon = Some(eps);
                optima = 2;
                witness = Some(black);
            }
        }
    }
    debug_assert!(n % 2 == 1 || enumerated == binomial(n as u64, n as u64 / 2));
    Ok(OracleResult {
        min_epsilon,
        optima_count: optima,
        desired_exists,
        enumerated,
        witness: witness.map(|m| mask_to_bisection(n, m)),
    })
}
