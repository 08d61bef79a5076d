//! Construction of minimum 2-bisections.
//!
//! With an even number of diamonds, a desired bisection is found by a
//! block-level backtracking search: each block takes one of its admissible
//! colorings, every edge between blocks must be bichromatic, and the block
//! imbalances must sum to zero. With an odd number of diamonds, one diamond
//! is replaced by a single edge between its outside neighbors, the reduced
//! graph is solved the same way, and the coloring is lifted back with the
//! diamond contributing two monochromatic edges.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bisection::{self, Bisection, Color};
use crate::error::{Error, Result};
use crate::multigraph::Multigraph;
use crate::structure::{self, find_blocks, Block, BlockKind, StructurePartition};
use crate::wiring;

/// One admissible coloring of a block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockColoring {
    pub block: usize,
    pub state: Vec<(usize, Color)>,
    /// Black minus white vertices in the block.
    pub imbalance: i32,
}

/// The colorings of `block` compatible with the desired-bisection conditions:
/// digon ends differ; a triangle has exactly one monochromatic side; a
/// trumpet's doubled pair differs; a diamond's shared side is the only
/// monochromatic edge.
pub fn admissible_colorings(index: usize, block: &Block) -> Vec<BlockColoring> {
    use Color::{Black, White};
    let make = |state: Vec<(usize, Color)>| {
        let imbalance = state.iter().map(|&(_, c)| if c == Black { 1 } else { -1 }).sum();
        BlockColoring { block: index, state, imbalance }
    };
    match *block {
        Block::Digon { u, v, .. } => [Black, White].iter().map(|&c| make(vec![(u, c), (v, !c)])).collect(),
        Block::Triangle { vertices: [u, v, w] } => {
            let mut out = Vec::with_capacity(6);
            for majority in [Black, White] {
                for odd in [u, v, w] {
                    out.push(make(
                        [u, v, w].iter().map(|&z| (z, if z == odd { !majority } else { majority })).collect(),
                    ));
                }
            }
            out
        }
        Block::Trumpet { apex, x, y } => {
            let mut out = Vec::with_capacity(4);
            for apex_color in [Black, White] {
                for x_color in [Black, White] {
                    out.push(make(vec![(apex, apex_color), (x, x_color), (y, !x_color)]));
                }
            }
            out
        }
        Block::Diamond { a, b, c, d } => {
            [Black, White].iter().map(|&side| make(vec![(a, !side), (b, side), (c, side), (d, !side)])).collect()
        }
    }
}

struct Search<'a> {
    states: Vec<Vec<BlockColoring>>,
    // (vertex, outside neighbor) for every edge leaving the block
    cross: Vec<Vec<(usize, usize)>>,
    block_of: &'a [usize],
    color: Vec<Option<Color>>,
    assigned: Vec<bool>,
    pressure: Vec<usize>,
    imbalance: i32,
    // unassigned blocks with imbalance +-1
    swing: usize,
}

struct Frame {
    block: usize,
    options: Vec<usize>,
    next: usize,
    current: Option<usize>,
}

impl<'a> Search<'a> {
    fn new(g: &Multigraph, part: &'a StructurePartition) -> Self {
        let nb = part.blocks.len();
        let states: Vec<_> = part.blocks.iter().enumerate().map(|(i, b)| admissible_colorings(i, b)).collect();
        let mut cross = vec![Vec::new(); nb];
        for ((u, v), _) in g.pairs() {
            let (bu, bv) = (part.vertex_to_block[u], part.vertex_to_block[v]);
            if bu != bv {
                cross[bu].push((u, v));
                cross[bv].push((v, u));
            }
        }
        let swing = states.iter().filter(|s| s[0].imbalance != 0).count();
        Search {
            states,
            cross,
            block_of: &part.vertex_to_block,
            color: vec![None; g.order()],
            assigned: vec![false; nb],
            pressure: vec![0; nb],
            imbalance: 0,
            swing,
        }
    }

    fn consistent(&self, st: &BlockColoring) -> bool {
        st.state.iter().all(|&(v, c)| {
            self.cross[self.block_of[v]].iter().filter(|&&(w, _)| w == v).all(|&(_, u)| self.color[u] != Some(c))
        })
    }

    // most constrained unassigned block, ties by index
    fn pick(&self) -> Option<usize> {
        (0..self.assigned.len())
            .filter(|&b| !self.assigned[b])
            .max_by_key(|&b| (self.pressure[b], std::cmp::Reverse(b)))
    }

    fn ordered_options(&self, block: usize) -> Vec<usize> {
        let mut opts: Vec<usize> = (0..self.states[block].len()).collect();
        opts.sort_by_key(|&s| (self.imbalance + self.states[block][s].imbalance).abs());
        opts
    }

    fn set(&mut self, block: usize, state: usize, on: bool) {
        let st = &self.states[block][state];
        for &(v, c) in &st.state {
            self.color[v] = on.then_some(c);
        }
        let delta = st.imbalance;
        let swings = delta != 0;
        self.assigned[block] = on;
        if on {
            self.imbalance += delta;
            self.swing -= swings as usize;
        } else {
            self.imbalance -= delta;
            self.swing += swings as usize;
        }
        for &(_, u) in &self.cross[block] {
            let other = self.block_of[u];
            if on {
                self.pressure[other] += 1;
            } else {
                self.pressure[other] -= 1;
            }
        }
    }

    fn try_assign(&mut self, block: usize, state: usize) -> bool {
        let st = &self.states[block][state];
        if !self.consistent(st) {
            return false;
        }
        let swing_after = self.swing - (st.imbalance != 0) as usize;
        if (self.imbalance + st.imbalance).unsigned_abs() as usize > swing_after {
            return false;
        }
        self.set(block, state, true);
        // forward check: every touched neighbor block keeps a consistent state
        let dead_end = self.cross[block]
            .iter()
            .map(|&(_, u)| self.block_of[u])
            .any(|other| !self.assigned[other] && !self.states[other].iter().any(|s| self.consistent(s)));
        if dead_end {
            self.set(block, state, false);
            return false;
        }
        true
    }

    fn run(mut self) -> Option<Vec<Color>> {
        let mut stack: Vec<Frame> = Vec::new();
        let mut descend = true;
        loop {
            if descend {
                match self.pick() {
                    None => break,
                    Some(block) => {
                        let options = self.ordered_options(block);
                        stack.push(Frame { block, options, next: 0, current: None });
                    }
                }
            }
            let frame = stack.last_mut()?;
            if let Some(s) = frame.current.take() {
                self.set(frame.block, s, false);
            }
            descend = false;
            while frame.next < frame.options.len() {
                let s = frame.options[frame.next];
                frame.next += 1;
                if self.try_assign(frame.block, s) {
                    frame.current = Some(s);
                    descend = true;
                    break;
                }
            }
            if !descend {
                stack.pop();
            }
        }
        debug_assert_eq!(self.imbalance, 0);
        self.color.into_iter().collect()
    }
}

/// Finds a desired bisection of a graph with an even number of diamonds.
pub fn desired_bisection_csp(g: &Multigraph, part: &StructurePartition) -> Result<Bisection> {
    let exhausted = || Error::SearchExhausted { dump: g.to_text() };
    if !part.k.is_multiple_of(2) {
        return Err(exhausted());
    }
    let coloring = Search::new(g, part).run().ok_or_else(exhausted)?;
    Bisection::new(coloring)
}

/// A graph with one diamond `a b c d` replaced by the edge `x y`, where `x`
/// and `y` are the outside neighbors of `a` and `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiamondReduction {
    pub removed: [usize; 4],
    pub x: usize,
    pub y: usize,
    pub reduced: Multigraph,
    pub new_edge_was_present: bool,
    /// `vertex_map[v]` is the original label of reduced vertex `v`.
    pub vertex_map: Vec<usize>,
}

impl DiamondReduction {
    fn to_reduced(&self, v: usize) -> usize {
        self.vertex_map.binary_search(&v).expect("vertex kept by the reduction")
    }

    /// `x` as a vertex of the reduced graph.
    pub fn reduced_x(&self) -> usize {
        self.to_reduced(self.x)
    }

    pub fn reduced_y(&self) -> usize {
        self.to_reduced(self.y)
    }
}

fn outside_neighbor(g: &Multigraph, v: usize, inside: [usize; 2]) -> Result<usize> {
    let out: Vec<usize> = g.neighborhood(v).iter().map(|&(u, _)| u).filter(|u| !inside.contains(u)).collect();
    match out.as_slice() {
        &[u] => Ok(u),
        _ => Err(Error::Reduction(format!("vertex {v} does not have exactly one outside neighbor"))),
    }
}

/// Deletes the diamond and joins its two outside neighbors, then checks that
/// the result is again a connected claw-free cubic multigraph (not K4) with
/// one diamond fewer, and that the new edge lies in no triangle unless it
/// landed on an existing edge.
pub fn reduce_diamond(g: &Multigraph, diamond: &Block) -> Result<DiamondReduction> {
    let Block::Diamond { a, b, c, d } = *diamond else {
        return Err(Error::Reduction(format!("{diamond:?} is not a diamond")));
    };
    let n = g.order();
    if [a, b, c, d].iter().any(|&v| v >= n) {
        return Err(Error::Reduction("diamond vertex out of range".into()));
    }
    let simple = [(a, b), (a, c), (b, c), (b, d), (c, d)].iter().all(|&(u, v)| g.multiplicity(u, v) == 1);
    if !simple || g.adjacent(a, d) {
        return Err(Error::Reduction(format!("{a},{b},{c},{d} is not an induced diamond")));
    }
    let x = outside_neighbor(g, a, [b, c])?;
    let y = outside_neighbor(g, d, [b, c])?;
    if x == y {
        return Err(Error::Reduction(format!("outside neighbors of {a} and {d} coincide at {x}")));
    }

    let removed = [a, b, c, d];
    let vertex_map: Vec<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
    let mut new_label = vec![usize::MAX; n];
    for (i, &v) in vertex_map.iter().enumerate() {
        new_label[v] = i;
    }
    let mut edges = Vec::new();
    for ((u, v), m) in g.pairs() {
        if removed.contains(&u) || removed.contains(&v) {
            continue;
        }
        edges.extend(std::iter::repeat_n((new_label[u], new_label[v]), m as usize));
    }
    edges.push((new_label[x], new_label[y]));
    let reduced = Multigraph::new(vertex_map.len(), edges).map_err(|e| Error::Reduction(e.to_string()))?;

    let red = DiamondReduction { removed, x, y, reduced, new_edge_was_present: g.adjacent(x, y), vertex_map };
    check_reduction(g, &red)?;
    Ok(red)
}

fn check_reduction(g: &Multigraph, red: &DiamondReduction) -> Result<()> {
    let fail = |msg: &str| Err(Error::Reduction(msg.to_string()));
    let h = &red.reduced;
    let report = h.validate();
    if report.is_k4 {
        return fail("reduced graph is K4: the input is a ring of two diamonds");
    }
    if !report.is_applicable() {
        return Err(Error::Reduction(format!("reduced graph: {}", report.summary())));
    }
    if structure::diamonds(h).len() + 1 != structure::diamonds(g).len() {
        return fail("reduction did not remove exactly one diamond");
    }
    let (x, y) = (red.reduced_x(), red.reduced_y());
    let common = h.neighborhood(x).iter().any(|&(w, _)| w != y && h.adjacent(w, y));
    match (red.new_edge_was_present, h.multiplicity(x, y)) {
        (false, 1) if !common => Ok(()),
        (false, _) => fail("new edge lies in a triangle"),
        (true, 3) if h.order() == 2 => Ok(()),
        (true, 2) if common => Ok(()),
        (true, _) => fail("absorbed edge is neither a trumpet pair nor a triple edge"),
    }
}

/// Extends a bisection of the reduced graph: `b` and `d` take the color of
/// `x`, `a` and `c` the color of `y`.
pub fn lift(red: &DiamondReduction, reduced_bisection: &Bisection) -> Result<Bisection> {
    if reduced_bisection.len() != red.reduced.order() {
        return Err(Error::Lift(format!(
            "bisection covers {} vertices, reduced graph has {}",
            reduced_bisection.len(),
            red.reduced.order()
        )));
    }
    let x_color = reduced_bisection.color(red.reduced_x());
    if x_color == reduced_bisection.color(red.reduced_y()) {
        return Err(Error::Lift(format!("x = {} and y = {} share a color", red.x, red.y)));
    }
    let mut coloring = vec![Color::Black; red.vertex_map.len() + 4];
    for (v, &orig) in red.vertex_map.iter().enumerate() {
        coloring[orig] = reduced_bisection.color(v);
    }
    let [a, b, c, d] = red.removed;
    coloring[b] = x_color;
    coloring[d] = x_color;
    coloring[a] = !x_color;
    coloring[c] = !x_color;
    Bisection::new(coloring)
}

/// `(n - k - 2p) / 3`, plus one when `k` is odd. `None` if the numerator is
/// negative or not divisible by three.
pub fn formula_value(n: usize, k: usize, p: usize) -> Option<usize> {
    let num = n.checked_sub(k + 2 * p)?;
    (num % 3 == 0).then(|| num / 3 + k % 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(k: usize) -> Parity {
        if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisectionCertificate {
    pub epsilon: usize,
    pub n: usize,
    pub k: usize,
    pub p: usize,
    pub formula_value: usize,
    pub parity: Parity,
    pub is_valid_2bisection: bool,
    /// Only meaningful for an even diamond count.
    pub is_desired: bool,
}

impl BisectionCertificate {
    pub fn is_valid(&self) -> bool {
        self.is_valid_2bisection && self.epsilon == self.formula_value && self.epsilon.is_multiple_of(2)
    }
}

impl Serialize for BisectionCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("BisectionCertificate", 7)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("k", &self.k)?;
        s.serialize_field("p", &self.p)?;
        s.serialize_field("epsilon", &self.epsilon)?;
        s.serialize_field("formula", &self.formula_value)?;
        s.serialize_field("parity", self.parity.as_str())?;
        s.serialize_field("valid", &self.is_valid())?;
        s.end()
    }
}

/// Checks a constructed bisection against the minimum formula. Any failure
/// is an internal error carrying the instance.
pub fn certify(g: &Multigraph, part: &StructurePartition, b: &Bisection) -> Result<BisectionCertificate> {
    let fail = |message: String| Error::Certificate { message, dump: g.to_text() };
    let stats = bisection::mono_stats(g, b)?;
    let n = g.order();
    let formula = formula_value(n, part.k, part.p).ok_or_else(|| fail("n - k - 2p is not divisible by 3".into()))?;
    let cert = BisectionCertificate {
        epsilon: stats.epsilon,
        n,
        k: part.k,
        p: part.p,
        formula_value: formula,
        parity: Parity::of(part.k),
        is_valid_2bisection: b.black_count() == b.white_count() && bisection::is_2bisection(g, b),
        is_desired: bisection::is_desired(g, part, b).is_desired(),
    };
    if !cert.is_valid_2bisection {
        return Err(fail("result is not a 2-bisection".into()));
    }
    if cert.epsilon != formula {
        return Err(fail(format!("epsilon {} differs from formula {formula}", cert.epsilon)));
    }
    if !cert.epsilon.is_multiple_of(2) {
        return Err(fail(format!("epsilon {} is odd", cert.epsilon)));
    }
    if cert.parity == Parity::Even && !cert.is_desired {
        return Err(fail("even-case result is not a desired bisection".into()));
    }
    Ok(cert)
}

fn applicable_partition(g: &Multigraph) -> Result<StructurePartition> {
    let report = g.validate();
    if !report.is_applicable() {
        return Err(Error::NotApplicable(Box::new(report)));
    }
    find_blocks(g)
}

/// The diamond reduced in the odd case: the lexicographically smallest
/// `(a, b, c, d)`.
pub fn canonical_diamond(part: &StructurePartition) -> Option<&Block> {
    part.diamonds().min_by_key(|d| d.vertices())
}

/// How the even-k desired bisection is built.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Linear-time path construction, see [`crate::wiring`].
    #[default]
    Wiring,
    /// Block-level backtracking, see [`desired_bisection_csp`].
    Search,
}

impl Strategy {
    fn desired(self, g: &Multigraph, part: &StructurePartition) -> Result<Bisection> {
        match self {
            Strategy::Wiring => wiring::desired_bisection(g, part),
            Strategy::Search => desired_bisection_csp(g, part),
        }
    }
}

/// A 2-bisection with the fewest monochromatic edges, and its certificate.
pub fn min_bisection(g: &Multigraph) -> Result<(Bisection, BisectionCertificate)> {
    min_bisection_with(g, Strategy::default())
}

pub fn min_bisection_with(g: &Multigraph, strategy: Strategy) -> Result<(Bisection, BisectionCertificate)> {
    let part = applicable_partition(g)?;
    let b = match canonical_diamond(&part) {
        Some(diamond) if part.k % 2 == 1 => {
            let diamond = diamond.clone();
            solve_odd(g, &diamond, strategy)?
        }
        _ => strategy.desired(g, &part)?,
    };
    let cert = certify(g, &part, &b)?;
    Ok((b, cert))
}

/// Odd-case construction reducing the given diamond instead of the
/// canonical one.
pub fn min_bisection_via(g: &Multigraph, diamond: &Block) -> Result<(Bisection, BisectionCertificate)> {
    let part = applicable_partition(g)?;
    if part.k % 2 == 0 {
        return Err(Error::Reduction("diamond count is even; no reduction applies".into()));
    }
    if !part.blocks.contains(diamond) || diamond.kind() != BlockKind::Diamond {
        return Err(Error::Reduction(format!("{diamond:?} is not a diamond block of the graph")));
    }
    let b = solve_odd(g, diamond, Strategy::default())?;
    let cert = certify(g, &part, &b)?;
    Ok((b, cert))
}

fn solve_odd(g: &Multigraph, diamond: &Block, strategy: Strategy) -> Result<Bisection> {
    let red = reduce_diamond(g, diamond)?;
    let reduced_part = find_blocks(&red.reduced)?;
    let reduced_bisection = strategy.desired(&red.reduced, &reduced_part)?;
    lift(&red, &reduced_bisection)
}
