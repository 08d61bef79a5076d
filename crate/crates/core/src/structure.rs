//! Decomposition of a connected claw-free cubic multigraph into diamonds,
//! triangles, trumpets and digons.
//!
//! Every vertex of such a graph (other than K4) lies in exactly one of these
//! blocks. Classification runs in a fixed order: triple edges, trumpets
//! (doubled pair with a common neighbor), remaining doubled pairs as digons,
//! diamonds (a simple edge shared by two triangles), and finally the
//! triangles covering whatever is left.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockKind {
    Diamond,
    Triangle,
    Trumpet,
    Digon,
}

impl BlockKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BlockKind::Diamond => "diamond",
            BlockKind::Triangle => "triangle",
            BlockKind::Trumpet => "trumpet",
            BlockKind::Digon => "digon",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    /// `b c` is the shared side, `a d` the missing edge.
    Diamond { a: usize, b: usize, c: usize, d: usize },
    /// Ascending vertex triple.
    Triangle { vertices: [usize; 3] },
    /// Apex `w` joined once to each end of the doubled pair `x y` (`x < y`).
    Trumpet { apex: usize, x: usize, y: usize },
    /// Pair `u < v` joined by two or three parallel edges.
    Digon { u: usize, v: usize, multiplicity: u8 },
}

impl Block {
    pub fn kind(&self) -> BlockKind {
        match self {
            Block::Diamond { .. } => BlockKind::Diamond,
            Block::Triangle { .. } => BlockKind::Triangle,
            Block::Trumpet { .. } => BlockKind::Trumpet,
            Block::Digon { .. } => BlockKind::Digon,
        }
    }

    /// Vertices in role order: `[a, b, c, d]`, `[u, v, w]`, `[apex, x, y]`
    /// or `[u, v]`.
    pub fn vertices(&self) -> Vec<usize> {
        match *self {
            Block::Diamond { a, b, c, d } => vec![a, b, c, d],
            Block::Triangle { vertices } => vertices.to_vec(),
            Block::Trumpet { apex, x, y } => vec![apex, x, y],
            Block::Digon { u, v, .. } => vec![u, v],
        }
    }

    /// The block under a vertex renaming, normalized to the same role
    /// conventions. Diamond roles are re-chosen lexicographically.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> Block {
        match *self {
            Block::Diamond { a, b, c, d } => diamond_roles([f(a), f(d)], [f(b), f(c)]),
            Block::Triangle { vertices } => {
                let mut vs = vertices.map(&f);
                vs.sort_unstable();
                Block::Triangle { vertices: vs }
            }
            Block::Trumpet { apex, x, y } => {
                let (x, y) = (f(x).min(f(y)), f(x).max(f(y)));
                Block::Trumpet { apex: f(apex), x, y }
            }
            Block::Digon { u, v, multiplicity } => Block::Digon { u: f(u).min(f(v)), v: f(u).max(f(v)), multiplicity },
        }
    }
}

/// Lexicographically smallest role assignment for a diamond with tips
/// `{a, d}` and shared side `{b, c}`.
fn diamond_roles(tips: [usize; 2], shared: [usize; 2]) -> Block {
    Block::Diamond {
        a: tips[0].min(tips[1]),
        b: shared[0].min(shared[1]),
        c: shared[0].max(shared[1]),
        d: tips[0].max(tips[1]),
    }
}

impl Serialize for Block {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Block", 2)?;
        s.serialize_field("kind", self.kind().as_str())?;
        s.serialize_field("vertices", &self.vertices())?;
        s.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructurePartition {
    pub blocks: Vec<Block>,
    /// Diamonds.
    pub k: usize,
    /// Triangles plus trumpets.
    pub t: usize,
    /// Digons, a triple edge counting once.
    pub p: usize,
    #[serde(skip)]
    pub vertex_to_block: Vec<usize>,
}

impl StructurePartition {
    pub fn diamonds(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(|b| b.kind() == BlockKind::Diamond)
    }

    pub fn block_of(&self, v: usize) -> &Block {
        &self.blocks[self.vertex_to_block[v]]
    }
}

/// Computes the block partition of a cubic claw-free multigraph other than
/// K4. Fails with [`Error::Partition`] whenever some vertex cannot be
/// covered, which is how hidden claws surface here.
pub fn find_blocks(g: &Multigraph) -> Result<StructurePartition> {
    let n = g.order();
    if !g.is_cubic() {
        return Err(Error::Partition("graph is not cubic".into()));
    }
    if g.is_k4() {
        return Err(Error::Partition("K4 has no block partition".into()));
    }
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut blocks: Vec<Block> = Vec::new();

    let claim = |blocks: &mut Vec<Block>, owner: &mut Vec<Option<usize>>, block: Block| -> Result<()> {
        let idx = blocks.len();
        for v in block.vertices() {
            if let Some(other) = owner[v] {
                return Err(Error::Partition(format!(
                    "vertex {v} claimed by both {:?} and {:?}",
                    blocks[other], block
                )));
            }
            owner[v] = Some(idx);
        }
        blocks.push(block);
        Ok(())
    };

    let multi: Vec<((usize, usize), u8)> = g.pairs().filter(|&(_, m)| m >= 2).collect();

    for &((u, v), m) in &multi {
        if m == 3 {
            claim(&mut blocks, &mut owner, Block::Digon { u, v, multiplicity: 3 })?;
        }
    }
    for &((x, y), m) in &multi {
        if m != 2 {
            continue;
        }
        let other = |z: usize, partner: usize| g.neighborhood(z).iter().map(|&(w, _)| w).find(|&w| w != partner);
        match (other(x, y), other(y, x)) {
            (Some(wx), Some(wy)) if wx == wy => {
                claim(&mut blocks, &mut owner, Block::Trumpet { apex: wx, x, y })?;
            }
            _ => {}
        }
    }
    for &((u, v), m) in &multi {
        if m == 2 && owner[u].is_none() && owner[v].is_none() {
            claim(&mut blocks, &mut owner, Block::Digon { u, v, multiplicity: 2 })?;
        }
    }

    for ((b, c), m) in g.pairs() {
        if m != 1 || owner[b].is_some() || owner[c].is_some() {
            continue;
        }
        let common = common_neighbors(g, b, c);
        match common.as_slice() {
            [_] | [] => {}
            &[a, d] => {
                if g.adjacent(a, d) {
                    return Err(Error::Partition(format!("{a},{b},{c},{d} span a K4")));
                }
                claim(&mut blocks, &mut owner, diamond_roles([a, d], [b, c]))?;
            }
            _ => return Err(Error::Partition(format!("edge {b}{c} lies in more than two triangles"))),
        }
    }

    let mut triangles_at: Vec<Vec<[usize; 3]>> = vec![Vec::new(); n];
    for tri in g.triangles() {
        for v in tri {
            triangles_at[v].push(tri);
        }
    }
    for v in 0..n {
        if owner[v].is_some() {
            continue;
        }
        match triangles_at[v].as_slice() {
            [] => return Err(Error::Partition(format!("vertex {v} lies in no triangle, trumpet or digon"))),
            &[tri] => {
                if tri.iter().any(|&u| owner[u].is_some()) {
                    return Err(Error::Partition(format!("triangle {tri:?} overlaps another block")));
                }
                claim(&mut blocks, &mut owner, Block::Triangle { vertices: tri })?;
            }
            _ => return Err(Error::Partition(format!("vertex {v} lies in several triangles but no diamond"))),
        }
    }

    blocks.sort_by_key(|b| b.vertices().into_iter().min());
    let mut vertex_to_block = vec![0; n];
    for (i, block) in blocks.iter().enumerate() {
        for v in block.vertices() {
            vertex_to_block[v] = i;
        }
    }
    let count = |kinds: &[BlockKind]| blocks.iter().filter(|b| kinds.contains(&b.kind())).count();
    let k = count(&[BlockKind::Diamond]);
    let t = count(&[BlockKind::Triangle, BlockKind::Trumpet]);
    let p = count(&[BlockKind::Digon]);
    debug_assert_eq!(4 * k + 3 * t + 2 * p, n);
    Ok(StructurePartition { blocks, k, t, p, vertex_to_block })
}

fn common_neighbors(g: &Multigraph, u: usize, v: usize) -> Vec<usize> {
    g.neighborhood(u).iter().map(|&(w, _)| w).filter(|&w| w != v && g.adjacent(w, v)).collect()
}

/// All induced diamonds, found independently of [`find_blocks`], as
/// `(tips, shared side)` vertex sets.
pub fn diamonds(g: &Multigraph) -> Vec<Block> {
    let mut out = Vec::new();
    for ((b, c), _) in g.pairs() {
        let common = common_neighbors(g, b, c);
        for (i, &a) in common.iter().enumerate() {
            for &d in &common[i + 1..] {
                if !g.adjacent(a, d) {
                    out.push(diamond_roles([a, d], [b, c]));
                }
            }
        }
    }
    out
}

/// True when no vertex lies in two induced diamonds.
pub fn diamonds_disjoint_check(g: &Multigraph) -> bool {
    let mut used = vec![false; g.order()];
    for d in diamonds(g) {
        for v in d.vertices() {
            if std::mem::replace(&mut used[v], true) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prism() -> Multigraph {
        Multigraph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).unwrap()
    }

    fn diamond_digon() -> Multigraph {
        Multigraph::new(6, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4), (3, 5), (4, 5), (4, 5)]).unwrap()
    }

    #[test]
    fn triple_edge_is_one_digon() {
        let g = Multigraph::new(2, [(0, 1); 3]).unwrap();
        let part = find_blocks(&g).unwrap();
        assert_eq!(part.blocks, vec![Block::Digon { u: 0, v: 1, multiplicity: 3 }]);
        assert_eq!((part.k, part.t, part.p), (0, 0, 1));
    }

    #[test]
    fn prism_is_two_triangles() {
        let part = find_blocks(&prism()).unwrap();
        assert_eq!(part.blocks, vec![Block::Triangle { vertices: [0, 1, 2] }, Block::Triangle { vertices: [3, 4, 5] }]);
        assert_eq!((part.k, part.t, part.p), (0, 2, 0));
        assert_eq!(part.vertex_to_block, vec![0, 0, 0, 1, 1, 1]);
    }

    #[test]
    fn diamond_plus_digon() {
        let part = find_blocks(&diamond_digon()).unwrap();
        assert_eq!(
            part.blocks,
            vec![Block::Diamond { a: 0, b: 1, c: 2, d: 3 }, Block::Digon { u: 4, v: 5, multiplicity: 2 },]
        );
        assert_eq!((part.k, part.t, part.p), (1, 0, 1));
    }

    #[test]
    fn trumpets_take_precedence_over_digons() {
        // two trumpets joined at their apexes
        let g = Multigraph::new(6, [(0, 1), (0, 2), (1, 2), (1, 2), (0, 3), (3, 4), (3, 5), (4, 5), (4, 5)]).unwrap();
        let part = find_blocks(&g).unwrap();
        assert_eq!(part.blocks, vec![Block::Trumpet { apex: 0, x: 1, y: 2 }, Block::Trumpet { apex: 3, x: 4, y: 5 }]);
        assert_eq!((part.k, part.t, part.p), (0, 2, 0));
    }

    #[test]
    fn diamond_roles_are_lexicographic() {
        // tips 5 and 2, shared side 7 and 0
        let g = Multigraph::new(
            8,
            [(5, 7), (5, 0), (7, 0), (2, 7), (2, 0), (5, 1), (2, 3), (1, 3), (1, 4), (3, 6), (4, 6), (4, 6)],
        )
        .unwrap();
        let d = diamonds(&g);
        assert_eq!(d, vec![Block::Diamond { a: 2, b: 0, c: 7, d: 5 }]);
    }

    #[test]
    fn claw_is_reported() {
        let mut edges = Vec::new();
        for v in 0..8usize {
            for bit in [1, 2, 4] {
                if v & bit == 0 {
                    edges.push((v, v | bit));
                }
            }
        }
        let q3 = Multigraph::new(8, edges).unwrap();
        assert!(matches!(find_blocks(&q3), Err(Error::Partition(_))));
    }

    #[test]
    fn k4_and_non_cubic_rejected() {
        let k4 = Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(find_blocks(&k4).is_err());
        assert!(find_blocks(&Multigraph::new(2, [(0, 1)]).unwrap()).is_err());
    }

    #[test]
    fn ring_of_two_diamonds() {
        let g = Multigraph::new(
            8,
            [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (5, 7), (6, 7), (3, 4), (7, 0)],
        )
        .unwrap();
        assert!(diamonds_disjoint_check(&g));
        let part = find_blocks(&g).unwrap();
        assert_eq!((part.k, part.t, part.p), (2, 0, 0));
        assert!(diamonds_disjoint_check(&prism()));
    }

    #[test]
    fn k4_diamonds_overlap() {
        let k4 = Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(diamonds(&k4).is_empty());
        let k4_minus_e = Multigraph::new(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(diamonds(&k4_minus_e).len(), 1);
    }

    #[test]
    fn partition_json() {
        let json = serde_json::to_string(&find_blocks(&diamond_digon()).unwrap()).unwrap();
        assert_eq!(
            json,
            r#"{"blocks":[{"kind":"diamond","vertices":[0,1,2,3]},{"kind":"digon","vertices":[4,5]}],"k":1,"t":0,"p":1}"#
        );
    }
}
