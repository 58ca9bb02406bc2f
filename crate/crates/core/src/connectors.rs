//! Path enumeration, brute-force non-intersecting connectors, and the
//! complementary-connector bijection between the two lattices.
//!
//! Non-intersecting means vertex-disjoint. Connectors always join the i-th
//! source to the i-th sink (both ordered by row).

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::detring::PolyMatrix;
use crate::lattice::{EdgeKind, Flavor, Lattice, Node};
use crate::poly::{Monomial, Polynomial};

/// Default cap on the number of path tuples a brute-force enumeration may visit.
pub const DEFAULT_MAX_TUPLES: u128 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConnectorError {
    #[error("{count} path tuples exceed the enumeration cap of {cap}")]
    TooManyTuples { count: u128, cap: u128 },
    #[error("connector is not vertex-disjoint")]
    NotDisjoint,
    #[error("not a valid connector on this lattice: {0}")]
    Invalid(String),
    #[error("complementary construction failed: {0}")]
    ContractViolation(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    nodes: Vec<Node>,
    mono: Monomial,
    weight: Polynomial,
}

impl Path {
    fn from_parts(nodes: Vec<Node>, weight: &Monomial) -> Self {
        Self {
            nodes,
            mono: weight.clone(),
            weight: Polynomial::from_monomial(weight.clone()),
        }
    }

    /// Builds a path from its node sequence, checking each step against `lat`.
    pub fn along(lat: &Lattice, nodes: Vec<Node>) -> Result<Self, ConnectorError> {
        let first = *nodes
            .first()
            .ok_or_else(|| ConnectorError::Invalid("empty node list".into()))?;
        if !lat.contains(first) {
            return Err(ConnectorError::Invalid(format!(
                "({}, {}) is not a lattice node",
                first.i, first.j
            )));
        }
        let mut w = Monomial::one();
        for pair in nodes.windows(2) {
            let e = lat.edge_between(pair[0], pair[1]).ok_or_else(|| {
                ConnectorError::Invalid(format!(
                    "no edge ({}, {}) -> ({}, {})",
                    pair[0].i, pair[0].j, pair[1].i, pair[1].j
                ))
            })?;
            w = w.mul(&e.weight_monomial());
        }
        Ok(Self::from_parts(nodes, &w))
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn weight(&self) -> &Polynomial {
        &self.weight
    }

    pub fn start(&self) -> Node {
        self.nodes[0]
    }

    pub fn end(&self) -> Node {
        *self.nodes.last().expect("paths are nonempty")
    }

    /// Nodes from which this path takes a step of the given kind.
    pub fn step_nodes(&self, kind: EdgeKind) -> impl Iterator<Item = Node> + '_ {
        self.nodes
            .windows(2)
            .filter(move |w| step_kind(w[0], w[1]) == kind)
            .map(|w| w[0])
    }
}

fn step_kind(u: Node, v: Node) -> EdgeKind {
    if u.i == v.i {
        EdgeKind::Horizontal
    } else if u.j == v.j {
        EdgeKind::Vertical
    } else {
        EdgeKind::Diagonal
    }
}

impl Serialize for Path {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.nodes.len()))?;
        for v in &self.nodes {
            seq.serialize_element(&[v.i, v.j])?;
        }
        seq.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Blue,
    Red,
}

impl Color {
    pub fn of(flavor: Flavor) -> Self {
        match flavor {
            Flavor::L => Color::Blue,
            Flavor::R => Color::Red,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Connector {
    paths: Vec<Path>,
    weight: Polynomial,
    color: Color,
}

impl Serialize for Connector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.paths.serialize(serializer)
    }
}

impl Connector {
    pub fn new(paths: Vec<Path>, color: Color) -> Self {
        let weight = paths.iter().map(|p| p.weight.clone()).product();
        Self {
            paths,
            weight,
            color,
        }
    }

    /// Builds a connector on `lat` from node sequences, validating every step
    /// and the source/sink matching.
    pub fn from_node_lists(lat: &Lattice, lists: Vec<Vec<Node>>) -> Result<Self, ConnectorError> {
        let paths = lists
            .into_iter()
            .map(|l| Path::along(lat, l))
            .collect::<Result<Vec<_>, _>>()?;
        let c = Self::new(paths, Color::of(lat.flavor()));
        c.check_endpoints(lat)?;
        Ok(c)
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn weight(&self) -> &Polynomial {
        &self.weight
    }

    pub fn color(&self) -> Color {
        self.color
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn node_set(&self) -> BTreeSet<Node> {
        self.paths
            .iter()
            .flat_map(|p| p.nodes.iter().copied())
            .collect()
    }

    pub fn is_disjoint(&self) -> bool {
        let total: usize = self.paths.iter().map(|p| p.nodes.len()).sum();
        self.node_set().len() == total
    }

    /// Nodes from which some path takes a step of the given kind.
    pub fn step_nodes(&self, kind: EdgeKind) -> BTreeSet<Node> {
        self.paths.iter().flat_map(|p| p.step_nodes(kind)).collect()
    }

    fn check_endpoints(&self, lat: &Lattice) -> Result<(), ConnectorError> {
        if self.color != Color::of(lat.flavor()) {
            return Err(ConnectorError::Invalid(
                "connector color does not match lattice".into(),
            ));
        }
        if self.paths.len() != lat.sources().len() {
            return Err(ConnectorError::Invalid(format!(
                "{} paths for {} sources",
                self.paths.len(),
                lat.sources().len()
            )));
        }
        for ((p, &s), &t) in self.paths.iter().zip(lat.sources()).zip(lat.sinks()) {
            if p.start() != s || p.end() != t {
                return Err(ConnectorError::Invalid(
                    "path endpoints do not match sources and sinks".into(),
                ));
            }
        }
        Ok(())
    }

    fn validate_on(&self, lat: &Lattice) -> Result<(), ConnectorError> {
        self.check_endpoints(lat)?;
        for p in &self.paths {
            Path::along(lat, p.nodes.clone())?;
        }
        if !self.is_disjoint() {
            return Err(ConnectorError::NotDisjoint);
        }
        Ok(())
    }
}

/// Nodes that can reach `target`.
fn reaching(lat: &Lattice, target: Node) -> HashSet<Node> {
    let mut preds: HashMap<Node, Vec<Node>> = HashMap::new();
    for e in lat.edges() {
        preds.entry(e.to).or_default().push(e.from);
    }
    let mut seen = HashSet::from([target]);
    let mut stack = vec![target];
    while let Some(v) = stack.pop() {
        for &u in preds.get(&v).into_iter().flatten() {
            if seen.insert(u) {
                stack.push(u);
            }
        }
    }
    seen
}

/// All directed paths from `src` to `snk`, in lexicographic order of their
/// node sequences.
pub fn enumerate_paths(lat: &Lattice, src: Node, snk: Node) -> Vec<Path> {
    if !lat.contains(src) || !lat.contains(snk) {
        return Vec::new();
    }
    let live = reaching(lat, snk);
    if !live.contains(&src) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut stack = vec![src];
    dfs_paths(lat, snk, &live, &mut stack, Monomial::one(), &mut out);
    out
}

fn dfs_paths(
    lat: &Lattice,
    snk: Node,
    live: &HashSet<Node>,
    stack: &mut Vec<Node>,
    weight: Monomial,
    out: &mut Vec<Path>,
) {
    let here = *stack.last().expect("stack holds the current node");
    if here == snk {
        out.push(Path::from_parts(stack.clone(), &weight));
        return;
    }
    for e in lat.out_edges(here) {
        if live.contains(&e.to) {
            stack.push(e.to);
            dfs_paths(lat, snk, live, stack, weight.mul(&e.weight_monomial()), out);
            stack.pop();
        }
    }
}

/// Weighted number of paths from `src` to `snk`, by memoized recursion on the DAG.
pub fn weighted_path_count(lat: &Lattice, src: Node, snk: Node) -> Polynomial {
    fn go(lat: &Lattice, v: Node, snk: Node, memo: &mut HashMap<Node, Polynomial>) -> Polynomial {
        if v == snk {
            return Polynomial::one();
        }
        if let Some(p) = memo.get(&v) {
            return p.clone();
        }
        let mut acc = Polynomial::zero();
        for e in lat.out_edges(v) {
            let rest = go(lat, e.to, snk, memo);
            if !rest.is_zero() {
                acc += rest.mul_monomial(&e.weight_monomial());
            }
        }
        memo.insert(v, acc.clone());
        acc
    }
    if !lat.contains(src) || !lat.contains(snk) {
        return Polynomial::zero();
    }
    go(lat, src, snk, &mut HashMap::new())
}

/// The LGV matrix: entry `(s, t)` is the weighted path count from the s-th
/// source to the t-th sink. Rows are labelled by source rows, columns by
/// sink rows.
pub fn path_count_matrix(lat: &Lattice) -> PolyMatrix {
    let entries = lat
        .sources()
        .iter()
        .flat_map(|&s| lat.sinks().iter().map(move |&t| (s, t)))
        .map(|(s, t)| weighted_path_count(lat, s, t))
        .collect();
    PolyMatrix::new(
        entries,
        lat.sources().iter().map(|v| v.i).collect(),
        lat.sinks().iter().map(|v| v.i).collect(),
    )
    .expect("sources and sinks are strictly ordered by row")
}

fn per_pair_paths(lat: &Lattice, matching: &[usize]) -> Vec<Vec<Path>> {
    lat.sources()
        .iter()
        .zip(matching)
        .map(|(&s, &t)| enumerate_paths(lat, s, lat.sinks()[t]))
        .collect()
}

fn check_cap(lists: &[Vec<Path>], cap: u128) -> Result<u128, ConnectorError> {
    let mut count: u128 = 1;
    for l in lists {
        count = count.saturating_mul(l.len() as u128);
    }
    if count > cap {
        return Err(ConnectorError::TooManyTuples { count, cap });
    }
    Ok(count)
}

/// Visits every tuple (one path per list), skipping tuples that share a node
/// when `disjoint_only`. Tuples are visited in lexicographic index order.
fn for_each_tuple<'a, F>(lists: &'a [Vec<Path>], disjoint_only: bool, visit: &mut F)
where
    F: FnMut(&[&'a Path]),
{
    fn rec<'a, F: FnMut(&[&'a Path])>(
        lists: &'a [Vec<Path>],
        disjoint_only: bool,
        chosen: &mut Vec<&'a Path>,
        used: &mut HashSet<Node>,
        visit: &mut F,
    ) {
        let k = chosen.len();
        if k == lists.len() {
            visit(chosen);
            return;
        }
        for p in &lists[k] {
            if disjoint_only && p.nodes.iter().any(|v| used.contains(v)) {
                continue;
            }
            if disjoint_only {
                used.extend(p.nodes.iter().copied());
            }
            chosen.push(p);
            rec(lists, disjoint_only, chosen, used, visit);
            chosen.pop();
            if disjoint_only {
                for v in &p.nodes {
                    used.remove(v);
                }
            }
        }
    }
    rec(
        lists,
        disjoint_only,
        &mut Vec::new(),
        &mut HashSet::new(),
        visit,
    );
}

/// All connectors (i-th source to i-th sink), optionally restricted to the
/// vertex-disjoint ones.
pub fn enumerate_connectors(
    lat: &Lattice,
    disjoint_only: bool,
    cap: u128,
) -> Result<Vec<Connector>, ConnectorError> {
    let identity: Vec<usize> = (0..lat.sources().len()).collect();
    let lists = per_pair_paths(lat, &identity);
    check_cap(&lists, cap)?;
    let color = Color::of(lat.flavor());
    let mut out = Vec::new();
    for_each_tuple(&lists, disjoint_only, &mut |tuple| {
        out.push(Connector::new(
            tuple.iter().map(|p| (*p).clone()).collect(),
            color,
        ));
    });
    Ok(out)
}

fn disjoint_weight_sum(lists: &[Vec<Path>]) -> Polynomial {
    let mut tally: HashMap<Monomial, u64> = HashMap::new();
    for_each_tuple(lists, true, &mut |tuple| {
        let m = tuple
            .iter()
            .fold(Monomial::one(), |acc, p| acc.mul(&p.mono));
        *tally.entry(m).or_default() += 1;
    });
    Polynomial::from_terms(tally.into_iter().map(|(m, c)| (BigInt::from(c), m)))
}

/// Weighted count of vertex-disjoint connectors.
pub fn connector_sum(lat: &Lattice, cap: u128) -> Result<Polynomial, ConnectorError> {
    let identity: Vec<usize> = (0..lat.sources().len()).collect();
    connector_sum_with_matching(lat, &identity, cap)
}

/// Weighted count of vertex-disjoint tuples joining source `k` to sink
/// `matching[k]`. Nonpermutability means this is zero for every
/// non-identity matching.
pub fn connector_sum_with_matching(
    lat: &Lattice,
    matching: &[usize],
    cap: u128,
) -> Result<Polynomial, ConnectorError> {
    if matching.len() != lat.sources().len() {
        return Err(ConnectorError::Invalid(
            "matching length differs from source count".into(),
        ));
    }
    let lists = per_pair_paths(lat, matching);
    check_cap(&lists, cap)?;
    Ok(disjoint_weight_sum(&lists))
}

fn check_pair(left: &Lattice, right: &Lattice) -> Result<(), ConnectorError> {
    if left.flavor() != Flavor::L || right.flavor() != Flavor::R {
        return Err(ConnectorError::Invalid(
            "expected an (L, R) lattice pair".into(),
        ));
    }
    if left.nodes() != right.nodes() {
        return Err(ConnectorError::Invalid(
            "lattices are over different shapes".into(),
        ));
    }
    Ok(())
}

/// From each start, step horizontally unless `turn` marks the node, in which
/// case take the `turn_kind` step. A path ends where it needs a horizontal
/// step and none exists.
fn trace(
    lat: &Lattice,
    starts: &[Node],
    turn: &BTreeSet<Node>,
    turn_kind: EdgeKind,
) -> Result<Vec<Path>, ConnectorError> {
    let mut paths = Vec::with_capacity(starts.len());
    for &s in starts {
        let mut nodes = vec![s];
        let mut w = Monomial::one();
        let mut here = s;
        loop {
            let kind = if turn.contains(&here) {
                turn_kind
            } else {
                EdgeKind::Horizontal
            };
            match lat.step(here, kind) {
                Some(e) => {
                    w = w.mul(&e.weight_monomial());
                    here = e.to;
                    nodes.push(here);
                }
                None if kind == EdgeKind::Horizontal => break,
                None => {
                    return Err(ConnectorError::ContractViolation(format!(
                        "no {:?} edge out of ({}, {})",
                        kind, here.i, here.j
                    )))
                }
            }
            if nodes.len() > lat.nodes().len() {
                return Err(ConnectorError::ContractViolation(
                    "path does not terminate".into(),
                ));
            }
        }
        paths.push(Path::from_parts(nodes, &w));
    }
    Ok(paths)
}

fn finish(paths: Vec<Path>, lat: &Lattice) -> Result<Connector, ConnectorError> {
    let c = Connector::new(paths, Color::of(lat.flavor()));
    if !c.is_disjoint() {
        return Err(ConnectorError::ContractViolation(
            "constructed connector intersects itself".into(),
        ));
    }
    let ends: Vec<Node> = c.paths.iter().map(Path::end).collect();
    if ends != lat.sinks() {
        return Err(ConnectorError::ContractViolation(format!(
            "paths end at {ends:?}, sinks are {:?}",
            lat.sinks()
        )));
    }
    Ok(c)
}

/// The red connector complementary to a non-intersecting blue connector:
/// from each red source, step horizontally unless the blue connector steps
/// vertically from the current node, in which case step diagonally.
pub fn complementary(
    blue: &Connector,
    left: &Lattice,
    right: &Lattice,
) -> Result<Connector, ConnectorError> {
    check_pair(left, right)?;
    blue.validate_on(left)?;
    let turns = blue.step_nodes(EdgeKind::Vertical);
    let paths = trace(right, right.sources(), &turns, EdgeKind::Diagonal)?;
    finish(paths, right)
}

/// Inverse of [`complementary`]: from each blue source, step horizontally
/// unless the red connector steps diagonally from the current node, in which
/// case step vertically.
pub fn complementary_inverse(
    red: &Connector,
    left: &Lattice,
    right: &Lattice,
) -> Result<Connector, ConnectorError> {
    check_pair(left, right)?;
    red.validate_on(right)?;
    let turns = red.step_nodes(EdgeKind::Diagonal);
    let paths = trace(left, left.sources(), &turns, EdgeKind::Vertical)?;
    finish(paths, left)
}

/// Nodes lying on both connectors.
pub fn intersection_nodes(blue: &Connector, red: &Connector) -> BTreeSet<Node> {
    blue.node_set()
        .intersection(&red.node_set())
        .copied()
        .collect()
}

/// Exhaustive audit of the complementary map on one (L, R) lattice pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub blue_count: usize,
    pub red_count: usize,
    pub blue_sum: Polynomial,
    pub red_sum: Polynomial,
    /// Distinct blue connectors have distinct images.
    pub injective: bool,
    /// Every disjoint red connector is an image.
    pub surjective: bool,
    pub weight_preserving: bool,
    pub round_trip: bool,
    /// Intersection nodes equal the blue vertical-step nodes, and there are
    /// `expected_intersections` of them, for every pair.
    pub intersections_ok: bool,
    pub expected_intersections: i64,
    /// First failure of the construction itself, if any.
    pub failure: Option<String>,
}

impl BijectionReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
            && self.injective
            && self.surjective
            && self.weight_preserving
            && self.round_trip
            && self.intersections_ok
    }
}

/// Enumerates the disjoint connectors on both lattices and checks every
/// property of the complementary map. `expected_intersections` is the number
/// of vertical blue steps forced by the endpoints.
pub fn bijection_check(
    left: &Lattice,
    right: &Lattice,
    expected_intersections: i64,
    cap: u128,
) -> Result<BijectionReport, ConnectorError> {
    check_pair(left, right)?;
    let blues = enumerate_connectors(left, true, cap)?;
    let reds = enumerate_connectors(right, true, cap)?;
    let mut report = BijectionReport {
        blue_count: blues.len(),
        red_count: reds.len(),
        blue_sum: blues.iter().map(|c| c.weight.clone()).sum(),
        red_sum: reds.iter().map(|c| c.weight.clone()).sum(),
        injective: true,
        surjective: true,
        weight_preserving: true,
        round_trip: true,
        intersections_ok: true,
        expected_intersections,
        failure: None,
    };
    let mut images: HashSet<Connector> = HashSet::with_capacity(blues.len());
    for blue in &blues {
        let red = match complementary(blue, left, right) {
            Ok(r) => r,
            Err(e) => {
                report.failure = Some(e.to_string());
                return Ok(report);
            }
        };
        report.weight_preserving &= red.weight == blue.weight;
        match complementary_inverse(&red, left, right) {
            Ok(back) => report.round_trip &= &back == blue,
            Err(e) => {
                report.failure = Some(e.to_string());
                return Ok(report);
            }
        }
        let inter = intersection_nodes(blue, &red);
        report.intersections_ok &= inter == blue.step_nodes(EdgeKind::Vertical)
            && inter.len() as i64 == expected_intersections;
        if !images.insert(red) {
            report.injective = false;
        }
    }
    report.surjective = images.len() == reds.len() && reds.iter().all(|r| images.contains(r));
    Ok(report)
}
