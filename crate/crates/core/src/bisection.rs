//! Balanced two-colorings and their monochromatic edges.

use std::fmt;
use std::ops::Not;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;
use crate::structure::{Block, StructurePartition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Black,
    White,
}

impl Not for Color {
    type Output = Color;

    fn not(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

/// A two-coloring of `0..n` with equally many black and white vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bisection {
    coloring: Vec<Color>,
    black_count: usize,
    white_count: usize,
}

impl Bisection {
    pub fn new(coloring: Vec<Color>) -> Result<Self> {
        let black_count = coloring.iter().filter(|&&c| c == Color::Black).count();
        let white_count = coloring.len() - black_count;
        if black_count != white_count {
            return Err(Error::Unbalanced { black: black_count, white: white_count });
        }
        Ok(Bisection { coloring, black_count, white_count })
    }

    /// Colors the listed vertices black and the rest of `0..n` white.
    pub fn from_black_set(n: usize, black: &[usize]) -> Result<Self> {
        let mut coloring = vec![Color::White; n];
        for &v in black {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            coloring[v] = Color::Black;
        }
        Bisection::new(coloring)
    }

    pub fn color(&self, v: usize) -> Color {
        self.coloring[v]
    }

    pub fn coloring(&self) -> &[Color] {
        &self.coloring
    }

    pub fn len(&self) -> usize {
        self.coloring.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coloring.is_empty()
    }

    pub fn black_count(&self) -> usize {
        self.black_count
    }

    pub fn white_count(&self) -> usize {
        self.white_count
    }

    pub fn class(&self, color: Color) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.coloring[v] == color).collect()
    }

    /// The same partition with the colors exchanged.
    pub fn swapped(&self) -> Bisection {
        Bisection {
            coloring: self.coloring.iter().map(|&c| !c).collect(),
            black_count: self.white_count,
            white_count: self.black_count,
        }
    }

    fn check_domain(&self, g: &Multigraph) -> Result<()> {
        if self.len() != g.order() {
            return Err(Error::ColoringMismatch { expected: g.order(), got: self.len() });
        }
        Ok(())
    }

    fn mono(&self, u: usize, v: usize) -> bool {
        self.coloring[u] == self.coloring[v]
    }
}

/// Monochromatic edge counts, parallel edges counted with multiplicity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MonoStats {
    pub epsilon: usize,
    pub epsilon_black: usize,
    pub epsilon_white: usize,
}

pub fn mono_stats(g: &Multigraph, b: &Bisection) -> Result<MonoStats> {
    b.check_domain(g)?;
    let mut stats = MonoStats::default();
    for ((u, v), m) in g.pairs() {
        if b.mono(u, v) {
            match b.color(u) {
                Color::Black => stats.epsilon_black += m as usize,
                Color::White => stats.epsilon_white += m as usize,
            }
        }
    }
    stats.epsilon = stats.epsilon_black + stats.epsilon_white;
    Ok(stats)
}

/// Whether every monochromatic component has at most two vertices.
///
/// Equivalent to: no vertex has two distinct same-colored neighbors.
pub fn is_2bisection(g: &Multigraph, b: &Bisection) -> bool {
    if b.len() != g.order() {
        return false;
    }
    (0..g.order()).all(|v| g.neighborhood(v).iter().filter(|&&(u, _)| b.mono(u, v)).count() <= 1)
}

/// Number of edge endpoints inside `color` whose edge leaves the class,
/// with multiplicity.
pub fn bichromatic_endpoints(g: &Multigraph, b: &Bisection, color: Color) -> usize {
    (0..g.order())
        .filter(|&v| b.color(v) == color)
        .flat_map(|v| g.neighborhood(v).iter().filter(move |&&(u, _)| !b.mono(u, v)))
        .map(|&(_, m)| m as usize)
        .sum()
}

/// `epsilon_black == epsilon_white`. Always true for a 2-bisection of a cubic
/// multigraph.
pub fn parity_check(g: &Multigraph, b: &Bisection) -> bool {
    mono_stats(g, b).map(|s| s.epsilon_black == s.epsilon_white).unwrap_or(false)
}

/// A failed condition of a desired bisection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A triangle whose number of monochromatic sides is not one.
    TriangleMono { triangle: [usize; 3], mono_sides: usize },
    /// A monochromatic edge lying in no triangle.
    MonoOutsideTriangle { edge: (usize, usize) },
    /// A diamond whose number of monochromatic edges is not one.
    DiamondMono { diamond: [usize; 4], mono_edges: usize },
    /// A monochromatic multi-edge.
    MonoMultiEdge { edge: (usize, usize), multiplicity: u8 },
}

impl Violation {
    /// Short label of the violated condition.
    pub fn condition(&self) -> &'static str {
        match self {
            Violation::TriangleMono { .. } => "DB1",
            Violation::MonoOutsideTriangle { .. } => "DB2",
            Violation::DiamondMono { .. } => "DB3",
            Violation::MonoMultiEdge { .. } => "DB4",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TriangleMono { triangle: [u, v, w], mono_sides } => {
                write!(f, "DB1: triangle {u},{v},{w} has {mono_sides} monochromatic sides")
            }
            Violation::MonoOutsideTriangle { edge: (u, v) } => {
                write!(f, "DB2: monochromatic edge {u}{v} lies in no triangle")
            }
            Violation::DiamondMono { diamond: [a, b, c, d], mono_edges } => {
                write!(f, "DB3: diamond {a},{b},{c},{d} has {mono_edges} monochromatic edges")
            }
            Violation::MonoMultiEdge { edge: (u, v), multiplicity } => {
                write!(f, "DB4: {multiplicity}-fold edge {u}{v} is monochromatic")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DesiredReport {
    pub violations: Vec<Violation>,
}

impl DesiredReport {
    pub fn is_desired(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks all four desired-bisection conditions and lists every violation.
/// The triangle condition covers every triangle of `g`, including the two
/// inside each diamond and the one inside each trumpet.
pub fn is_desired(g: &Multigraph, part: &StructurePartition, b: &Bisection) -> DesiredReport {
    let mut violations = Vec::new();
    let triangles = g.triangles();
    let mut in_triangle = std::collections::HashSet::new();
    for &[u, v, w] in &triangles {
        in_triangle.extend([(u, v), (u, w), (v, w)]);
        let mono_sides = [(u, v), (u, w), (v, w)].iter().filter(|&&(x, y)| b.mono(x, y)).count();
        if mono_sides != 1 {
            violations.push(Violation::TriangleMono { triangle: [u, v, w], mono_sides });
        }
    }
    for ((u, v), _) in g.pairs() {
        if b.mono(u, v) && !in_triangle.contains(&(u, v)) {
            violations.push(Violation::MonoOutsideTriangle { edge: (u, v) });
        }
    }
    for block in &part.blocks {
        if let Block::Diamond { a, b: bb, c, d } = *block {
            let mono_edges = [(a, bb), (a, c), (bb, c), (bb, d), (c, d)].iter().filter(|&&(x, y)| b.mono(x, y)).count();
            if mono_edges != 1 {
                violations.push(Violation::DiamondMono { diamond: [a, bb, c, d], mono_edges });
            }
        }
    }
    for ((u, v), m) in g.pairs() {
        if m >= 2 && b.mono(u, v) {
            violations.push(Violation::MonoMultiEdge { edge: (u, v), multiplicity: m });
        }
    }
    DesiredReport { violations }
}

/// JSON form of a bisection with its monochromatic counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisectionRecord {
    pub black: Vec<usize>,
    pub white: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon_black: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon_white: Option<usize>,
}

impl BisectionRecord {
    pub fn new(g: &Multigraph, b: &Bisection) -> Result<Self> {
        let stats = mono_stats(g, b)?;
        Ok(BisectionRecord {
            black: b.class(Color::Black),
            white: b.class(Color::White),
            epsilon: Some(stats.epsilon),
            epsilon_black: Some(stats.epsilon_black),
            epsilon_white: Some(stats.epsilon_white),
        })
    }

    /// Rebuilds the coloring of `0..n`; every vertex must appear in exactly
    /// one of the two lists.
    pub fn to_bisection(&self, n: usize) -> Result<Bisection> {
        let mut coloring: Vec<Option<Color>> = vec![None; n];
        for (list, color) in [(&self.black, Color::Black), (&self.white, Color::White)] {
            for &v in list {
                let slot = coloring.get_mut(v).ok_or(Error::VertexOutOfRange { vertex: v, n })?;
                if slot.replace(color).is_some() {
                    return Err(Error::ColoringMismatch { expected: n, got: self.black.len() + self.white.len() });
                }
            }
        }
        let coloring: Option<Vec<Color>> = coloring.into_iter().collect();
        let coloring =
            coloring.ok_or(Error::ColoringMismatch { expected: n, got: self.black.len() + self.white.len() })?;
        Bisection::new(coloring)
    }
}
