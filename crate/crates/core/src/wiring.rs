//! Linear-time construction of desired bisections.
//!
//! Triangles and trumpets are the only blocks with an imbalance. Diamonds
//! and digons sit on "wires": chains of blocks joining two ports, where a
//! port is a triangle corner or a trumpet apex. Once every edge between
//! blocks is bichromatic, the color of one end of a wire fixes the whole
//! wire, the diamonds along it alternate their tip color, and the graph is
//! balanced exactly when the diamond tips are half black.
//!
//! Each triangle pairs two of its corners (these get opposite colors) and
//! leaves the third free. Following wires and pairings then splits the
//! ports into paths that start and end at free ports, and cycles. Cycles
//! are opened by re-pairing one of their triangles. Along a path the wires
//! with an odd number of diamonds alternate in tip color, so every path
//! contributes -1, 0 or +1 black-minus-white tips, and flipping whole paths
//! cancels the total.

use crate::bisection::{Bisection, Color};
use crate::error::{Error, Result};
use crate::multigraph::Multigraph;
use crate::structure::{Block, StructurePartition};

struct Wiring<'a> {
    part: &'a StructurePartition,
    // the neighbor outside the vertex's block, if any
    cross: Vec<Option<usize>>,
    // for ports: the other end of the wire and whether it has an odd
    // number of diamonds (ends then share a color)
    wire_end: Vec<Option<(usize, bool)>>,
    // per block: the free corner of a triangle
    free: Vec<Option<usize>>,
    coloring: Vec<Option<Color>>,
}

fn sign(c: Color) -> i64 {
    match c {
        Color::Black => 1,
        Color::White => -1,
    }
}

impl<'a> Wiring<'a> {
    fn new(g: &Multigraph, part: &'a StructurePartition) -> Self {
        let n = g.order();
        let mut cross = vec![None; n];
        for ((u, v), _) in g.pairs() {
            if part.vertex_to_block[u] != part.vertex_to_block[v] {
                cross[u] = Some(v);
                cross[v] = Some(u);
            }
        }
        let free = part
            .blocks
            .iter()
            .map(|b| match *b {
                Block::Triangle { vertices } => Some(vertices[2]),
                _ => None,
            })
            .collect();
        Wiring { part, cross, wire_end: vec![None; n], free, coloring: vec![None; n] }
    }

    fn is_port_block(&self, v: usize) -> bool {
        matches!(self.part.block_of(v), Block::Triangle { .. } | Block::Trumpet { .. })
    }

    fn ports(&self) -> impl Iterator<Item = usize> + '_ {
        self.part.blocks.iter().flat_map(|b| match *b {
            Block::Triangle { vertices } => vertices.to_vec(),
            Block::Trumpet { apex, .. } => vec![apex],
            _ => Vec::new(),
        })
    }

    /// Colors the chain block entered at `u` with `u` colored `c`; returns
    /// the exit vertex, its color and the tip sign of a diamond.
    fn enter(&mut self, u: usize, c: Color, paint: bool) -> Result<(usize, Color, i64)> {
        let (exit, exit_color, tips, inner) = match *self.part.block_of(u) {
            Block::Diamond { a, b, c: cc, d } => {
                let exit = if u == a { d } else { a };
                (exit, c, sign(c), Some([b, cc]))
            }
            Block::Digon { u: x, v: y, .. } => (if u == x { y } else { x }, !c, 0, None),
            _ => return Err(Error::SearchExhausted { dump: format!("vertex {u} is not on a wire") }),
        };
        if paint {
            self.coloring[u] = Some(c);
            self.coloring[exit] = Some(exit_color);
            if let Some(side) = inner {
                for v in side {
                    self.coloring[v] = Some(!c);
                }
            }
        }
        Ok((exit, exit_color, tips))
    }

    /// Follows the wire leaving port `start` colored `c`; returns the far
    /// port, its color and the sum of tip signs along the way.
    fn walk(&mut self, start: usize, c: Color, paint: bool) -> Result<(usize, Color, i64)> {
        let mut cur = start;
        let mut color = c;
        let mut tips = 0;
        loop {
            let u =
                self.cross[cur].ok_or_else(|| Error::SearchExhausted { dump: format!("port {cur} is isolated") })?;
            if self.is_port_block(u) {
                return Ok((u, !color, tips));
            }
            let (exit, exit_color, t) = self.enter(u, !color, paint)?;
            tips += t;
            cur = exit;
            color = exit_color;
        }
    }

    fn pair_partner(&self, port: usize) -> Option<usize> {
        match *self.part.block_of(port) {
            Block::Triangle { vertices } => {
                let free = self.free[self.part.vertex_to_block[port]]?;
                (port != free).then(|| vertices.into_iter().find(|&v| v != port && v != free)).flatten()
            }
            _ => None,
        }
    }

    fn is_free(&self, port: usize) -> bool {
        self.pair_partner(port).is_none()
    }

    /// Marks every port on the path starting at free port `start`.
    fn mark_path(&self, start: usize, marked: &mut [bool]) {
        let mut cur = start;
        loop {
            marked[cur] = true;
            let (q, _) = self.wire_end[cur].expect("port has a wire");
            marked[q] = true;
            match self.pair_partner(q) {
                Some(r) => cur = r,
                None => return,
            }
        }
    }

    fn solve(mut self) -> Result<Vec<Color>> {
        let ports: Vec<usize> = self.ports().collect();
        if ports.is_empty() {
            return self.solve_ring();
        }
        for &p in &ports {
            if self.wire_end[p].is_none() {
                let (q, qc, _) = self.walk(p, Color::Black, false)?;
                let same = qc == Color::Black;
                self.wire_end[p] = Some((q, same));
                self.wire_end[q] = Some((p, same));
            }
        }

        // open every cycle by re-pairing one of its triangles
        let n = self.coloring.len();
        let mut marked = vec![false; n];
        for &p in &ports {
            if self.is_free(p) && !marked[p] {
                self.mark_path(p, &mut marked);
            }
        }
        for &p0 in &ports {
            if marked[p0] {
                continue;
            }
            let p1 = self.pair_partner(p0).expect("unmarked ports are paired");
            let mut cur = p0;
            loop {
                marked[cur] = true;
                let (q, _) = self.wire_end[cur].expect("port has a wire");
                marked[q] = true;
                let r = self.pair_partner(q).expect("cycle ports are paired");
                marked[r] = true;
                if r == p0 {
                    break;
                }
                cur = r;
            }
            // the old free corner joins p0; p1 becomes the free end
            let block = self.part.vertex_to_block[p0];
            self.free[block] = Some(p1);
        }

        // every component is now a path; measure each with a black start
        let starts: Vec<usize> = {
            let mut seen = vec![false; n];
            let mut out = Vec::new();
            for &p in &ports {
                if self.is_free(p) && !seen[p] {
                    let mut tally = vec![false; n];
                    self.mark_path(p, &mut tally);
                    for (v, t) in tally.iter().enumerate() {
                        if *t {
                            seen[v] = true;
                        }
                    }
                    out.push(p);
                }
            }
            out
        };
        let mut weights = Vec::with_capacity(starts.len());
        for &s in &starts {
            weights.push(self.trace(s, Color::Black, false)?);
        }
        if let Some(w) = weights.iter().find(|w| w.abs() > 1) {
            return Err(Error::SearchExhausted { dump: format!("path with tip weight {w}") });
        }
        let total: i64 = weights.iter().sum();
        if total % 2 != 0 {
            return Err(Error::SearchExhausted { dump: "odd number of odd wires".into() });
        }
        // flip |total| / 2 paths carrying the surplus sign
        let mut to_flip = total.abs() / 2;
        for (&s, &w) in starts.iter().zip(&weights) {
            let flip = to_flip > 0 && w == total.signum();
            if flip {
                to_flip -= 1;
            }
            self.trace(s, if flip { Color::White } else { Color::Black }, true)?;
        }

        for block in &self.part.blocks {
            if let Block::Trumpet { x, y, .. } = *block {
                self.coloring[x] = Some(Color::Black);
                self.coloring[y] = Some(Color::White);
            }
        }
        self.finish()
    }

    /// Walks the path from free port `start`; returns its tip weight.
    fn trace(&mut self, start: usize, c: Color, paint: bool) -> Result<i64> {
        let mut cur = start;
        let mut color = c;
        let mut weight = 0;
        loop {
            if paint {
                self.coloring[cur] = Some(color);
            }
            let (q, qc, tips) = self.walk(cur, color, paint)?;
            weight += tips;
            if paint {
                self.coloring[q] = Some(qc);
            }
            match self.pair_partner(q) {
                Some(r) => {
                    cur = r;
                    color = !qc;
                }
                None => return Ok(weight),
            }
        }
    }

    // no triangles or trumpets: a single cycle of diamonds and digons, or
    // the triple edge
    fn solve_ring(mut self) -> Result<Vec<Color>> {
        let start = match self.part.blocks.first() {
            Some(&Block::Digon { u, v, multiplicity: 3 }) => {
                self.coloring[u] = Some(Color::Black);
                self.coloring[v] = Some(Color::White);
                return self.finish();
            }
            Some(Block::Diamond { a, .. }) => *a,
            Some(Block::Digon { u, .. }) => *u,
            _ => return Err(Error::SearchExhausted { dump: "empty partition".into() }),
        };
        let (mut cur, mut color, _) = self.enter(start, Color::Black, true)?;
        loop {
            let u = self.cross[cur].ok_or_else(|| Error::SearchExhausted { dump: "broken ring".into() })?;
            if u == start {
                if color == Color::Black {
                    return Err(Error::SearchExhausted { dump: "ring closes inconsistently".into() });
                }
                return self.finish();
            }
            (cur, color, _) = self.enter(u, !color, true)?;
        }
    }

    fn finish(self) -> Result<Vec<Color>> {
        let uncolored = self.coloring.iter().position(Option::is_none);
        match uncolored {
            Some(v) => Err(Error::SearchExhausted { dump: format!("vertex {v} left uncolored") }),
            None => Ok(self.coloring.into_iter().flatten().collect()),
        }
    }
}

/// A desired bisection of a connected claw-free cubic multigraph with an
/// even number of diamonds, built in linear time.
pub fn desired_bisection(g: &Multigraph, part: &StructurePartition) -> Result<Bisection> {
    let with_dump = |e: Error| match e {
        Error::SearchExhausted { dump } => Error::SearchExhausted { dump: format!("{dump}\n{}", g.to_text()) },
        other => other,
    };
    if !part.k.is_multiple_of(2) {
        return Err(with_dump(Error::SearchExhausted { dump: format!("{} diamonds", part.k) }));
    }
    let coloring = Wiring::new(g, part).solve().map_err(with_dump)?;
    Bisection::new(coloring).map_err(|e| with_dump(Error::SearchExhausted { dump: e.to_string() }))
}
