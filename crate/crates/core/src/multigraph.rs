//! Loop-free multigraphs with edge multiplicities up to three.
//!
//! Vertices are labeled `0..n`. An unordered pair `{u, v}` carries a
//! multiplicity in `1..=3`; adjacency questions (neighbors, claws, triangles)
//! look only at distinct neighbors, while degree counts multiplicity.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::bisection::Color;
use crate::error::{Error, Result};

/// Highest multiplicity a pair can carry in a loop-free cubic multigraph.
pub const MAX_MULTIPLICITY: u8 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    pairs: BTreeMap<(usize, usize), u8>,
    // distinct neighbors with multiplicity, sorted by neighbor
    adj: Vec<Vec<(usize, u8)>>,
}

fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Multigraph {
    /// Builds a multigraph from a list of endpoint pairs; repeated pairs are
    /// parallel edges.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            *counts.entry(ordered(u, v)).or_default() += 1;
        }
        let mut pairs = BTreeMap::new();
        for ((u, v), count) in counts {
            if count > MAX_MULTIPLICITY as usize {
                return Err(Error::Multiplicity { u, v, count });
            }
            pairs.insert((u, v), count as u8);
        }
        Ok(Self::from_pairs(n, pairs))
    }

    fn from_pairs(n: usize, pairs: BTreeMap<(usize, usize), u8>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (&(u, v), &m) in &pairs {
            adj[u].push((v, m));
            adj[v].push((u, m));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Multigraph { n, pairs, adj }
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.pairs.values().map(|&m| m as usize).sum()
    }

    /// Distinct adjacent pairs `(u, v)` with `u < v`, and their multiplicities,
    /// in sorted order.
    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), u8)> + '_ {
        self.pairs.iter().map(|(&p, &m)| (p, m))
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u8 {
        self.pairs.get(&ordered(u, v)).copied().unwrap_or(0)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.multiplicity(u, v) > 0
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].iter().map(|&(_, m)| m as usize).sum())
    }

    /// Vertices joined to `v` by at least one edge, ascending.
    pub fn distinct_neighbors(&self, v: usize) -> Result<Vec<usize>> {
        self.check_vertex(v)?;
        Ok(self.adj[v].iter().map(|&(u, _)| u).collect())
    }

    /// Distinct neighbors of `v` with their multiplicities. Panics if `v` is
    /// out of range.
    pub fn neighborhood(&self, v: usize) -> &[(usize, u8)] {
        &self.adj[v]
    }

    pub fn is_cubic(&self) -> bool {
        (0..self.n).all(|v| self.adj[v].iter().map(|&(_, m)| m as usize).sum::<usize>() == 3)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &(u, _) in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    queue.push_back(u);
                }
            }
        }
        reached == self.n
    }

    /// Exact K4 test: four vertices, all six pairs present once.
    pub fn is_k4(&self) -> bool {
        self.n == 4 && self.pairs.len() == 6 && self.pairs.values().all(|&m| m == 1)
    }

    /// First induced claw found, as `(center, leaf, leaf, leaf)`.
    pub fn find_claw(&self) -> Option<[usize; 4]> {
        for center in 0..self.n {
            let nbrs = &self.adj[center];
            // a vertex on a multi-edge of a cubic graph has at most two
            // distinct neighbors
            if nbrs.len() < 3 {
                continue;
            }
            for i in 0..nbrs.len() {
                for j in i + 1..nbrs.len() {
                    let (x, y) = (nbrs[i].0, nbrs[j].0);
                    if self.adjacent(x, y) {
                        continue;
                    }
                    for &(z, _) in &nbrs[j + 1..] {
                        if !self.adjacent(x, z) && !self.adjacent(y, z) {
                            return Some([center, x, y, z]);
                        }
                    }
                }
            }
        }
        None
    }

    /// All triangles as ascending vertex triples, in lexicographic order.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for u in 0..self.n {
            let later: Vec<usize> = self.adj[u].iter().map(|&(v, _)| v).filter(|&v| v > u).collect();
            for (i, &v) in later.iter().enumerate() {
                for &w in &later[i + 1..] {
                    if self.adjacent(v, w) {
                        out.push([u, v, w]);
                    }
                }
            }
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let claw_witness = self.find_claw();
        ValidationReport {
            is_cubic: self.is_cubic(),
            is_connected: self.is_connected(),
            is_claw_free: claw_witness.is_none(),
            is_k4: self.is_k4(),
            claw_witness,
        }
    }

    /// Returns the graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Multigraph> {
        if perm.len() != self.n {
            return Err(Error::ColoringMismatch { expected: self.n, got: perm.len() });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::VertexOutOfRange { vertex: p, n: self.n });
            }
        }
        let pairs = self.pairs.iter().map(|(&(u, v), &m)| (ordered(perm[u], perm[v]), m)).collect();
        Ok(Self::from_pairs(self.n, pairs))
    }

    /// Parses the `n m` / `u v` edge-list format. Lines starting with `#`
    /// and blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let parse_pair = |line: usize, s: &str| -> Result<(usize, usize)> {
            let mut it = s.split_whitespace();
            let mut next = || -> Result<usize> {
                let tok = it.next().ok_or_else(|| Error::Parse { line, message: "expected two integers".into() })?;
                tok.parse().map_err(|_| Error::Parse { line, message: format!("invalid integer `{tok}`") })
            };
            let pair = (next()?, next()?);
            if it.next().is_some() {
                return Err(Error::Parse { line, message: "trailing tokens".into() });
            }
            Ok(pair)
        };

        let (line, header) = lines.next().ok_or(Error::Parse { line: 0, message: "missing `n m` header".into() })?;
        let (n, m) = parse_pair(line, header)?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (line, l) = lines.next().ok_or_else(|| Error::Parse {
                line: text.lines().count(),
                message: format!("expected {m} edges, found {}", edges.len()),
            })?;
            edges.push(parse_pair(line, l)?);
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse { line, message: format!("more than {m} edge lines") });
        }
        Multigraph::new(n, edges)
    }

    /// Writes the edge-list format: edges sorted by endpoints, one line per
    /// parallel copy.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count());
        for (&(u, v), &m) in &self.pairs {
            for _ in 0..m {
                let _ = writeln!(out, "{u} {v}");
            }
        }
        out
    }

    /// Graphviz rendering. Parallel edges are drawn separately; with a
    /// coloring, vertices are filled black or white.
    pub fn to_dot(&self, coloring: Option<&[Color]>) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            match coloring.and_then(|c| c.get(v)) {
                Some(Color::Black) => {
                    let _ = writeln!(out, "  {v} [style=filled, fillcolor=black, fontcolor=white];");
                }
                Some(Color::White) => {
                    let _ = writeln!(out, "  {v} [style=filled, fillcolor=white];");
                }
                None => {
                    let _ = writeln!(out, "  {v};");
                }
            }
        }
        for (&(u, v), &m) in &self.pairs {
            for _ in 0..m {
                let _ = writeln!(out, "  {u} -- {v};");
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub is_cubic: bool,
    pub is_connected: bool,
    pub is_claw_free: bool,
    pub is_k4: bool,
    pub claw_witness: Option<[usize; 4]>,
}

impl ValidationReport {
    /// Connected, cubic, claw-free and not K4.
    pub fn is_applicable(&self) -> bool {
        self.is_cubic && self.is_connected && self.is_claw_free && !self.is_k4
    }

    pub fn summary(&self) -> String {
        let mut problems = Vec::new();
        if self.is_k4 {
            problems.push("K4 is excluded".to_string());
        }
        if !self.is_cubic {
            problems.push("not cubic".to_string());
        }
        if !self.is_connected {
            problems.push("not connected".to_string());
        }
        if let Some([c, x, y, z]) = self.claw_witness {
            problems.push(format!("claw centered at {c} with leaves {x}, {y}, {z}"));
        }
        if problems.is_empty() {
            "connected claw-free cubic multigraph".to_string()
        } else {
            problems.join("; ")
        }
    }
}
