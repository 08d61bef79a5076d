//! Random and curated connected claw-free cubic multigraphs.
//!
//! Instances are assembled from blocks: each diamond leaves its two tips
//! free, each triangle all three corners, each digon both ends. The free
//! endpoints ("danglings") are then joined by a random perfect matching.
//! Joining two corners of one triangle turns it into a trumpet.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

pub const MAX_ATTEMPTS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlockRecipe {
    pub k: usize,
    pub t: usize,
    pub p: usize,
    pub seed: u64,
}

impl BlockRecipe {
    pub fn new(k: usize, t: usize, p: usize, seed: u64) -> Self {
        BlockRecipe { k, t, p, seed }
    }

    pub fn order(&self) -> usize {
        4 * self.k + 3 * self.t + 2 * self.p
    }

    fn danglings(&self) -> usize {
        2 * self.k + 3 * self.t + 2 * self.p
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Owner {
    Diamond(usize),
    Triangle(usize),
    Digon(usize),
}

/// Builds a connected claw-free cubic multigraph from the recipe. Vertex
/// labels are shuffled; the same recipe always yields the same edge list.
pub fn generate(recipe: &BlockRecipe) -> Result<Multigraph> {
    let blocks = recipe.k + recipe.t + recipe.p;
    if blocks == 0 {
        return Err(Error::InvalidRecipe("recipe has no blocks".into()));
    }
    if !recipe.danglings().is_multiple_of(2) {
        return Err(Error::InvalidRecipe(format!(
            "{} free endpoints cannot be matched (t must be even)",
            recipe.danglings()
        )));
    }
    let n = recipe.order();
    let mut rng = ChaCha8Rng::seed_from_u64(recipe.seed);

    let mut inner = Vec::new();
    // (vertex, owning block)
    let mut dangling: Vec<(usize, Owner)> = Vec::new();
    let mut next = 0;
    for i in 0..recipe.k {
        let (a, b, c, d) = (next, next + 1, next + 2, next + 3);
        next += 4;
        inner.extend([(a, b), (a, c), (b, c), (b, d), (c, d)]);
        dangling.extend([(a, Owner::Diamond(i)), (d, Owner::Diamond(i))]);
    }
    for i in 0..recipe.t {
        let (u, v, w) = (next, next + 1, next + 2);
        next += 3;
        inner.extend([(u, v), (v, w), (u, w)]);
        dangling.extend([u, v, w].map(|x| (x, Owner::Triangle(i))));
    }
    for i in 0..recipe.p {
        let (u, v) = (next, next + 1);
        next += 2;
        inner.extend([(u, v), (u, v)]);
        dangling.extend([(u, Owner::Digon(i)), (v, Owner::Digon(i))]);
    }
    let lone_digon = blocks == 1 && recipe.p == 1;

    for _ in 0..MAX_ATTEMPTS {
        let Some(matching) = random_matching(&dangling, lone_digon, &mut rng) else {
            continue;
        };
        let mut edges = inner.clone();
        edges.extend(matching);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let g = Multigraph::new(n, edges)?.relabel(&perm)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::Unsatisfiable { attempts: MAX_ATTEMPTS })
}

// Pairs danglings uniformly among allowed partners; None when it paints
// itself into a corner.
fn random_matching(dangling: &[(usize, Owner)], lone_digon: bool, rng: &mut impl Rng) -> Option<Vec<(usize, usize)>> {
    let forbidden = |x: &(usize, Owner), y: &(usize, Owner)| match (x.1, y.1) {
        (Owner::Diamond(i), Owner::Diamond(j)) => i == j,
        (Owner::Digon(i), Owner::Digon(j)) => i == j && !lone_digon,
        _ => false,
    };
    let mut open: Vec<usize> = (0..dangling.len()).collect();
    open.shuffle(rng);
    let mut out = Vec::with_capacity(open.len() / 2);
    while let Some(first) = open.pop() {
        let choices: Vec<usize> =
            (0..open.len()).filter(|&i| !forbidden(&dangling[first], &dangling[open[i]])).collect();
        let &pick = choices.choose(rng)?;
        let second = open.swap_remove(pick);
        out.push((dangling[first].0, dangling[second].0));
    }
    Some(out)
}

pub fn k4() -> Multigraph {
    Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).expect("K4")
}

/// Two vertices joined by three parallel edges.
pub fn triple_edge() -> Multigraph {
    Multigraph::new(2, [(0, 1); 3]).expect("triple edge")
}

/// Two triangles `0 1 2` and `3 4 5` joined by the matching `i -- i+3`.
pub fn prism() -> Multigraph {
    Multigraph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).expect("prism")
}

/// `count` diamonds in a cycle; diamond `i` is `4i..4i+4` with roles
/// `a b c d` in order, and `d` of one diamond is joined to `a` of the next.
pub fn ring_of_diamonds(count: usize) -> Multigraph {
    let n = 4 * count;
    let mut edges = Vec::new();
    for i in 0..count {
        let o = 4 * i;
        edges.extend([(o, o + 1), (o, o + 2), (o + 1, o + 2), (o + 1, o + 3), (o + 2, o + 3)]);
        edges.push((o + 3, (o + 4) % n));
    }
    Multigraph::new(n, edges).expect("ring of diamonds")
}

/// Diamond `0 1 2 3` with tips joined to a digon `4 = 5`.
pub fn diamond_digon() -> Multigraph {
    Multigraph::new(6, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4), (3, 5), (4, 5), (4, 5)]).expect("diamond digon")
}

/// The 3-cube; cubic and connected but every vertex is a claw center.
pub fn cube() -> Multigraph {
    let edges = (0..8usize).flat_map(|v| [1, 2, 4].into_iter().filter(move |b| v & b == 0).map(move |b| (v, v | b)));
    Multigraph::new(8, edges).expect("cube")
}

/// Seed for the 40-vertex fixture with three diamonds and two digons.
pub const FORTY_SEED: u64 = 40;

pub fn forty_vertex_instance() -> Multigraph {
    generate(&BlockRecipe::new(3, 8, 2, FORTY_SEED)).expect("seeded 40-vertex recipe is satisfiable")
}

/// Named fixtures: `k4`, `triple`, `prism`, `ring2`, `ring3`,
/// `diamond_digon`, `fig40` and the claw control `q3`.
pub fn curated_suite() -> Vec<(&'static str, Multigraph)> {
    vec![
        ("k4", k4()),
        ("triple", triple_edge()),
        ("prism", prism()),
        ("ring2", ring_of_diamonds(2)),
        ("ring3", ring_of_diamonds(3)),
        ("diamond_digon", diamond_digon()),
        ("fig40", forty_vertex_instance()),
        ("q3", cube()),
    ]
}

/// Every recipe with `k <= max_k`, `p <= max_p`, even `t`, and at most
/// `max_n` vertices, excluding the ones no wiring can realize (a lone
/// diamond).
pub fn small_recipes(max_n: usize, max_k: usize, max_p: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for k in 0..=max_k {
        for p in 0..=max_p {
            for t in (0..).step_by(2) {
                let n = 4 * k + 3 * t + 2 * p;
                if n > max_n {
                    break;
                }
                if n == 0 || (k, t, p) == (1, 0, 0) {
                    continue;
                }
                out.push((k, t, p));
            }
        }
    }
    out
}

/// Seeded instances over [`small_recipes`], `per_recipe` seeds each.
/// Recipes that fail to wire for a seed are skipped.
pub fn small_corpus(max_n: usize, max_k: usize, max_p: usize, per_recipe: u64) -> Vec<(BlockRecipe, Multigraph)> {
    let mut out = Vec::new();
    for (k, t, p) in small_recipes(max_n, max_k, max_p) {
        for seed in 0..per_recipe {
            let recipe = BlockRecipe::new(k, t, p, seed);
            if let Ok(g) = generate(&recipe) {
                out.push((recipe, g));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{find_blocks, BlockKind};

    #[test]
    fn two_triangles_wire_two_ways() {
        let mut kinds = std::collections::BTreeSet::new();
        for seed in 0..40 {
            let g = generate(&BlockRecipe::new(0, 2, 0, seed)).unwrap();
            assert!(g.validate().is_applicable());
            let part = find_blocks(&g).unwrap();
            assert_eq!((part.k, part.t, part.p), (0, 2, 0));
            let trumpets = part.blocks.iter().filter(|b| b.kind() == BlockKind::Trumpet).count();
            kinds.insert(trumpets);
        }
        // prism, or two trumpets joined at their apexes
        assert_eq!(kinds.into_iter().collect::<Vec<_>>(), vec![0, 2]);
    }

    #[test]
    fn diamond_with_digon() {
        let g = generate(&BlockRecipe::new(1, 0, 1, 3)).unwrap();
        let part = find_blocks(&g).unwrap();
        assert_eq!((part.k, part.t, part.p), (1, 0, 1));
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn lone_digon_is_triple_edge() {
        let g = generate(&BlockRecipe::new(0, 0, 1, 0)).unwrap();
        assert_eq!(g, triple_edge());
    }

    #[test]
    fn invalid_recipes() {
        assert!(matches!(generate(&BlockRecipe::new(0, 0, 0, 0)), Err(Error::InvalidRecipe(_))));
        assert!(matches!(generate(&BlockRecipe::new(0, 1, 0, 0)), Err(Error::InvalidRecipe(_))));
        assert!(matches!(generate(&BlockRecipe::new(1, 0, 0, 0)), Err(Error::Unsatisfiable { .. })));
    }

    #[test]
    fn forty_vertex_fixture() {
        let g = forty_vertex_instance();
        assert_eq!(g.order(), 40);
        let part = find_blocks(&g).unwrap();
        assert_eq!((part.k, part.p), (3, 2));
    }

    #[test]
    fn curated_fixtures() {
        for (name, g) in curated_suite() {
            let r = g.validate();
            match name {
                "k4" => assert!(r.is_k4),
                "q3" => assert!(!r.is_claw_free),
                _ => assert!(r.is_applicable(), "{name}"),
            }
        }
        let part = find_blocks(&ring_of_diamonds(2)).unwrap();
        assert_eq!(part.k, 2);
    }

    #[test]
    fn deterministic() {
        let r = BlockRecipe::new(2, 2, 1, 99);
        assert_eq!(generate(&r).unwrap().to_text(), generate(&r).unwrap().to_text());
    }

    #[test]
    fn recipes_cover_small_orders() {
        let recipes = small_recipes(16, 3, 3);
        assert!(recipes.contains(&(3, 0, 2)));
        assert!(recipes.contains(&(0, 0, 1)));
        assert!(!recipes.contains(&(1, 0, 0)));
        assert!(recipes.iter().all(|&(k, t, p)| 4 * k + 3 * t + 2 * p <= 16 && t % 2 == 0));
    }
}
