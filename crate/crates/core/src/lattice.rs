//! The two weighted lattices attached to a skew diagram.
//!
//! Coordinates: `i` grows downward (horizontal line index `0..=n`), `j` grows
//! rightward. Box `[i, j]` has bottom-right corner `(i, j)`.
//!
//! `L` has rightward horizontal edges and downward vertical edges on the box
//! right-hand sides. `R` has leftward horizontal edges and down-left diagonals
//! across the boxes. Vertical and diagonal edges in column `j` weigh `x_j`.
//!
//! Every horizontal line `a` is laid out as one contiguous segment running from
//! its left end to its right end. For partitions the ends are `(a, alpha_{a+1})`
//! and `(a, beta_a)`, with `alpha_{n+1} = alpha_n` and `beta_0 = beta_1`. Line
//! points that are not corners of any box (empty rows, or gaps where two rows
//! meet without sharing a corner) are recorded in [`Lattice::filled_points`].

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::poly::{Monomial, Polynomial};
use crate::shape::{IndexSelection, SkewShape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub i: usize,
    pub j: usize,
}

impl Node {
    pub fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    Horizontal,
    Vertical,
    Diagonal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: Node,
    pub to: Node,
    pub kind: EdgeKind,
    pub weight: Polynomial,
    column: Option<u32>,
}

impl Edge {
    /// The weight as a monomial: `x_j` for vertical/diagonal edges, `1` otherwise.
    pub fn weight_monomial(&self) -> Monomial {
        self.column.map_or_else(Monomial::one, Monomial::var)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    #[serde(rename = "L")]
    L,
    #[serde(rename = "R")]
    R,
}

#[derive(Clone, Debug)]
pub struct Lattice {
    flavor: Flavor,
    nodes: BTreeSet<Node>,
    edges: Vec<Edge>,
    out: BTreeMap<Node, Vec<usize>>,
    sources: Vec<Node>,
    sinks: Vec<Node>,
    lines: Vec<(usize, usize)>,
    filled: Vec<Node>,
}

/// Left and right ends of each horizontal line `0..=n`.
fn line_spans(shape: &SkewShape) -> Vec<(usize, usize)> {
    let n = shape.n();
    (0..=n)
        .map(|a| {
            let mut pts = vec![shape.alpha_next(a), shape.beta_at(a)];
            for row in [a, a + 1] {
                if shape.row_nonempty(row) {
                    pts.push(shape.alpha(row));
                    pts.push(shape.beta(row));
                }
            }
            let lo = *pts.iter().min().expect("nonempty");
            let hi = *pts.iter().max().expect("nonempty");
            (lo as usize, hi as usize)
        })
        .collect()
}

fn corners(shape: &SkewShape) -> BTreeSet<Node> {
    shape
        .boxes()
        .flat_map(|(i, j)| {
            [
                Node::new(i - 1, j - 1),
                Node::new(i - 1, j),
                Node::new(i, j - 1),
                Node::new(i, j),
            ]
        })
        .collect()
}

fn build(shape: &SkewShape, flavor: Flavor, sources: Vec<Node>, sinks: Vec<Node>) -> Lattice {
    let lines = line_spans(shape);
    let corner_set = corners(shape);
    let nodes: BTreeSet<Node> = lines
        .iter()
        .enumerate()
        .flat_map(|(a, &(lo, hi))| (lo..=hi).map(move |j| Node::new(a, j)))
        .collect();
    let filled = nodes.difference(&corner_set).copied().collect();

    let mut edges = Vec::new();
    for (a, &(lo, hi)) in lines.iter().enumerate() {
        for j in lo + 1..=hi {
            let (from, to) = match flavor {
                Flavor::L => (Node::new(a, j - 1), Node::new(a, j)),
                Flavor::R => (Node::new(a, j), Node::new(a, j - 1)),
            };
            edges.push(Edge {
                from,
                to,
                kind: EdgeKind::Horizontal,
                weight: Polynomial::one(),
                column: None,
            });
        }
    }
    for (i, j) in shape.boxes() {
        let (to, kind) = match flavor {
            Flavor::L => (Node::new(i, j), EdgeKind::Vertical),
            Flavor::R => (Node::new(i, j - 1), EdgeKind::Diagonal),
        };
        edges.push(Edge {
            from: Node::new(i - 1, j),
            to,
            kind,
            weight: Polynomial::x(j as u32),
            column: Some(j as u32),
        });
    }

    let mut out: BTreeMap<Node, Vec<usize>> = BTreeMap::new();
    for (idx, e) in edges.iter().enumerate() {
        out.entry(e.from).or_default().push(idx);
    }
    // Step order: the horizontal step first, which is also lexicographic order
    // on the target node.
    for list in out.values_mut() {
        list.sort_by_key(|&k| edges[k].to);
    }

    Lattice {
        flavor,
        nodes,
        edges,
        out,
        sources,
        sinks,
        lines,
        filled,
    }
}

/// The blue lattice: sources at the left ends of the lines in `A`, sinks at
/// the right ends of the lines in `B`.
pub fn build_l(shape: &SkewShape, sel: &IndexSelection) -> Lattice {
    let spans = line_spans(shape);
    let sources = sel
        .a_set()
        .iter()
        .map(|&a| Node::new(a, spans[a].0))
        .collect();
    let sinks = sel
        .b_set()
        .iter()
        .map(|&b| Node::new(b, spans[b].1))
        .collect();
    build(shape, Flavor::L, sources, sinks)
}

/// The red lattice: sources at the right ends of the lines in `B^c`, sinks at
/// the left ends of the lines in `A^c`.
pub fn build_r(shape: &SkewShape, sel: &IndexSelection) -> Lattice {
    let spans = line_spans(shape);
    let sources = sel
        .b_comp()
        .iter()
        .map(|&b| Node::new(b, spans[b].1))
        .collect();
    let sinks = sel
        .a_comp()
        .iter()
        .map(|&a| Node::new(a, spans[a].0))
        .collect();
    build(shape, Flavor::R, sources, sinks)
}

impl Lattice {
    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn nodes(&self) -> &BTreeSet<Node> {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn sources(&self) -> &[Node] {
        &self.sources
    }

    pub fn sinks(&self) -> &[Node] {
        &self.sinks
    }

    /// `(left end, right end)` of horizontal line `a`.
    pub fn line_span(&self, a: usize) -> (usize, usize) {
        self.lines[a]
    }

    /// Nodes that are not a corner of any box.
    pub fn filled_points(&self) -> &[Node] {
        &self.filled
    }

    pub fn contains(&self, v: Node) -> bool {
        self.nodes.contains(&v)
    }

    /// Outgoing edges in step order.
    pub fn out_edges(&self, v: Node) -> impl Iterator<Item = &Edge> + '_ {
        self.out
            .get(&v)
            .into_iter()
            .flatten()
            .map(|&k| &self.edges[k])
    }

    /// The edge of the given kind leaving `v`, if any.
    pub fn step(&self, v: Node, kind: EdgeKind) -> Option<&Edge> {
        self.out_edges(v).find(|e| e.kind == kind)
    }

    pub fn edge_between(&self, u: Node, v: Node) -> Option<&Edge> {
        self.out_edges(u).find(|e| e.to == v)
    }

    pub fn count_kind(&self, kind: EdgeKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    /// Kahn's algorithm; `None` if the graph has a cycle.
    pub fn topological_order(&self) -> Option<Vec<Node>> {
        let mut indegree: BTreeMap<Node, usize> = self.nodes.iter().map(|&v| (v, 0)).collect();
        for e in &self.edges {
            *indegree.get_mut(&e.to)? += 1;
        }
        let mut ready: VecDeque<Node> = indegree
            .iter()
            .filter(|(_, &d)| d == 0)
            .map(|(&v, _)| v)
            .collect();
        let mut order = Vec::with_capacity(self.nodes.len());
        while let Some(v) = ready.pop_front() {
            order.push(v);
            for e in self.out_edges(v) {
                let d = indegree.get_mut(&e.to)?;
                *d -= 1;
                if *d == 0 {
                    ready.push_back(e.to);
                }
            }
        }
        (order.len() == self.nodes.len()).then_some(order)
    }

    /// Monospace rendering: nodes `+`, sources `o`, sinks `x`, a node that is
    /// both `*`; edges `-`, `|` and `/`.
    pub fn draw(&self) -> String {
        let height = self.nodes.iter().map(|v| v.i).max().unwrap_or(0) * 2 + 1;
        let width = self.nodes.iter().map(|v| v.j).max().unwrap_or(0) * 2 + 1;
        let mut grid = vec![vec![' '; width]; height];
        for e in &self.edges {
            let (a, b) = (e.from.min(e.to), e.from.max(e.to));
            match e.kind {
                EdgeKind::Horizontal => grid[2 * a.i][2 * a.j.min(b.j) + 1] = '-',
                EdgeKind::Vertical => grid[2 * a.i + 1][2 * a.j] = '|',
                EdgeKind::Diagonal => grid[2 * a.i + 1][2 * a.j - 1] = '/',
            }
        }
        for v in &self.nodes {
            let is_src = self.sources.contains(v);
            let is_snk = self.sinks.contains(v);
            grid[2 * v.i][2 * v.j] = match (is_src, is_snk) {
                (true, true) => '*',
                (true, false) => 'o',
                (false, true) => 'x',
                (false, false) => '+',
            };
        }
        let mut out = String::new();
        for row in grid {
            let line: String = row.into_iter().collect();
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}
