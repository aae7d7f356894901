//! Directed weighted graphs in CSR form, shortest paths, and diameter.
//!
//! Weights are small non-negative integers (`u32`), distances are `u64` with
//! [`INFINITY`] marking unreachable pairs. Single-source search picks between
//! a Dial bucket ring (weights bounded by [`DIAL_MAX_WEIGHT`]) and a binary
//! heap; [`exact_diameter`] runs one search per source reusing scratch
//! buffers, and [`apsp_oracle`] is an independent Floyd–Warshall used to
//! cross-check the faster paths.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

/// Distance value for unreachable pairs.
pub const INFINITY: u64 = u64::MAX;

/// Largest arc weight served by the Dial bucket ring; heavier graphs fall
/// back to the binary heap.
pub const DIAL_MAX_WEIGHT: u32 = 64;

/// Vertex-count cap for the Floyd–Warshall oracle.
pub const APSP_ORACLE_MAX_N: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub tail: u32,
    pub head: u32,
    pub weight: u32,
}

impl Arc {
    pub fn new(tail: u32, head: u32, weight: u32) -> Self {
        Arc { tail, head, weight }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    SelfLoop { vertex: u32 },
    Endpoint { arc_index: usize, endpoint: u32, n: usize },
    OracleBound { n: usize, max: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            GraphError::Endpoint { arc_index, endpoint, n } => {
                write!(f, "arc {arc_index} touches vertex {endpoint}, graph has {n}")
            }
            GraphError::OracleBound { n, max } => {
                write!(f, "apsp oracle refuses {n} vertices (max {max})")
            }
        }
    }
}

impl std::error::Error for GraphError {}

/// Both directions of an edge as two weight-`w` arcs; rejects self-loops.
pub fn double_arc(a: u32, b: u32, weight: u32) -> Result<[Arc; 2], GraphError> {
    if a == b {
        return Err(GraphError::SelfLoop { vertex: a });
    }
    Ok([Arc::new(a, b, weight), Arc::new(b, a, weight)])
}

/// Immutable digraph in compressed sparse row form. Arcs keep their input
/// order within each tail, so construction is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    n: usize,
    offsets: Vec<u32>,
    heads: Vec<u32>,
    weights: Vec<u32>,
    max_weight: u32,
}

/// Builds the CSR structure, validating that every endpoint is in range.
/// Parallel arcs and zero weights are allowed; self-loops are not rejected
/// here (only `double_arc` forbids them) but never shorten any path.
pub fn build_graph(n: usize, arcs: &[Arc]) -> Result<WeightedDigraph, GraphError> {
    assert!(n > 0, "graph needs at least one vertex");
    assert!(n <= u32::MAX as usize, "vertex ids must fit in u32");
    for (arc_index, arc) in arcs.iter().enumerate() {
        for endpoint in [arc.tail, arc.head] {
            if endpoint as usize >= n {
                return Err(GraphError::Endpoint { arc_index, endpoint, n });
            }
        }
    }
    let mut offsets = vec![0u32; n + 1];
    for arc in arcs {
        offsets[arc.tail as usize + 1] += 1;
    }
    for v in 0..n {
        offsets[v + 1] += offsets[v];
    }
    let mut cursor: Vec<u32> = offsets[..n].to_vec();
    let mut heads = vec![0u32; arcs.len()];
    let mut weights = vec![0u32; arcs.len()];
    let mut max_weight = 0;
    for arc in arcs {
        let slot = cursor[arc.tail as usize] as usize;
        cursor[arc.tail as usize] += 1;
        heads[slot] = arc.head;
        weights[slot] = arc.weight;
        max_weight = max_weight.max(arc.weight);
    }
    Ok(WeightedDigraph { n, offsets, heads, weights, max_weight })
}

impl WeightedDigraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.heads.len()
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    /// Out-arcs of `v` as `(head, weight)` pairs, in insertion order.
    pub fn out_arcs(&self, v: u32) -> impl Iterator<Item = (u32, u32)> + '_ {
        let lo = self.offsets[v as usize] as usize;
        let hi = self.offsets[v as usize + 1] as usize;
        self.heads[lo..hi].iter().copied().zip(self.weights[lo..hi].iter().copied())
    }

    /// Graph with every arc reversed.
    pub fn reversed(&self) -> WeightedDigraph {
        let mut arcs = Vec::with_capacity(self.arc_count());
        for v in 0..self.n as u32 {
            for (head, weight) in self.out_arcs(v) {
                arcs.push(Arc::new(head, v, weight));
            }
        }
        build_graph(self.n, &arcs).expect("reversing preserves endpoint validity")
    }
}

pub(crate) struct SsspScratch {
    pub(crate) dist: Vec<u64>,
    buckets: Vec<Vec<u32>>,
    heap: BinaryHeap<Reverse<(u64, u32)>>,
}

impl SsspScratch {
    pub(crate) fn new(g: &WeightedDigraph) -> Self {
        let ring = if g.max_weight <= DIAL_MAX_WEIGHT { g.max_weight as usize + 2 } else { 0 };
        SsspScratch {
            dist: vec![INFINITY; g.n],
            buckets: (0..ring).map(|_| Vec::new()).collect(),
            heap: BinaryHeap::new(),
        }
    }
}

/// Dial's algorithm: a ring of `C + 2` buckets indexed by distance mod ring
/// size. Any queued distance lies within `C` of the distance being settled,
/// so the ring never wraps onto a live bucket.
fn sssp_buckets(g: &WeightedDigraph, source: u32, scratch: &mut SsspScratch) {
    let dist = &mut scratch.dist;
    let buckets = &mut scratch.buckets;
    dist.fill(INFINITY);
    for bucket in buckets.iter_mut() {
        bucket.clear();
    }
    let ring = buckets.len() as u64;
    dist[source as usize] = 0;
    buckets[0].push(source);
    let mut queued = 1usize;
    let mut cur = 0u64;
    while queued > 0 {
        let idx = (cur % ring) as usize;
        while let Some(v) = buckets[idx].pop() {
            queued -= 1;
            if dist[v as usize] != cur {
                continue; // superseded by a shorter path
            }
            for (head, weight) in g.out_arcs(v) {
                let next = cur + weight as u64;
                if next < dist[head as usize] {
                    dist[head as usize] = next;
                    buckets[(next % ring) as usize].push(head);
                    queued += 1;
                }
            }
        }
        cur += 1;
    }
}

fn sssp_heap(g: &WeightedDigraph, source: u32, scratch: &mut SsspScratch) {
    let dist = &mut scratch.dist;
    let heap = &mut scratch.heap;
    dist.fill(INFINITY);
    heap.clear();
    dist[source as usize] = 0;
    heap.push(Reverse((0, source)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if d != dist[v as usize] {
            continue;
        }
        for (head, weight) in g.out_arcs(v) {
            let next = d + weight as u64;
            if next < dist[head as usize] {
                dist[head as usize] = next;
                heap.push(Reverse((next, head)));
            }
        }
    }
}

pub(crate) fn sssp_into(g: &WeightedDigraph, source: u32, scratch: &mut SsspScratch) {
    assert!((source as usize) < g.n, "source {source} out of range");
    if g.max_weight <= DIAL_MAX_WEIGHT {
        sssp_buckets(g, source, scratch);
    } else {
        sssp_heap(g, source, scratch);
    }
}

/// Shortest-path distances from `source` to every vertex ([`INFINITY`] when
/// unreachable).
pub fn sssp(g: &WeightedDigraph, source: u32) -> Vec<u64> {
    let mut scratch = SsspScratch::new(g);
    sssp_into(g, source, &mut scratch);
    scratch.dist
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiameterResult {
    pub value: u64,
    /// Lexicographically first ordered pair realizing the diameter.
    pub argmax: (u32, u32),
}

/// Exact directed diameter: max over ordered pairs of the shortest-path
/// distance, [`INFINITY`] if any pair is unreachable.
pub fn exact_diameter(g: &WeightedDigraph) -> DiameterResult {
    let mut scratch = SsspScratch::new(g);
    let mut best = DiameterResult { value: 0, argmax: (0, 0) };
    for source in 0..g.n as u32 {
        sssp_into(g, source, &mut scratch);
        for (target, &d) in scratch.dist.iter().enumerate() {
            if d > best.value {
                best = DiameterResult { value: d, argmax: (source, target as u32) };
            }
        }
    }
    best
}

/// Max of the pivot's out- and in-eccentricity: a value `E` with
/// `E <= diameter <= 2E` (both sides via the triangle inequality through the
/// pivot). Returns [`INFINITY`] when the pivot cannot reach or be reached by
/// some vertex.
pub fn two_approx_estimate(g: &WeightedDigraph, pivot: Option<u32>) -> u64 {
    let pivot = pivot.unwrap_or(0);
    assert!((pivot as usize) < g.n, "pivot {pivot} out of range");
    let out_ecc = sssp(g, pivot).into_iter().max().expect("graph is non-empty");
    let in_ecc = sssp(&g.reversed(), pivot).into_iter().max().expect("graph is non-empty");
    if out_ecc == INFINITY || in_ecc == INFINITY {
        return INFINITY;
    }
    out_ecc.max(in_ecc)
}

/// Floyd–Warshall all-pairs matrix, refusing graphs larger than
/// [`APSP_ORACLE_MAX_N`]. Deliberately a different algorithm from `sssp`, for
/// cross-checking.
pub fn apsp_oracle(g: &WeightedDigraph) -> Result<Vec<Vec<u64>>, GraphError> {
    if g.n > APSP_ORACLE_MAX_N {
        return Err(GraphError::OracleBound { n: g.n, max: APSP_ORACLE_MAX_N });
    }
    let n = g.n;
    let mut dist = vec![vec![INFINITY; n]; n];
    for (v, row) in dist.iter_mut().enumerate() {
        row[v] = 0;
    }
    for v in 0..n as u32 {
        for (head, weight) in g.out_arcs(v) {
            let slot = &mut dist[v as usize][head as usize];
            *slot = (*slot).min(weight as u64);
        }
    }
    for k in 0..n {
        let row_k = dist[k].clone();
        for row_i in dist.iter_mut() {
            let dik = row_i[k];
            if dik == INFINITY {
                continue;
            }
            for (dij, &dkj) in row_i.iter_mut().zip(&row_k) {
                if dkj == INFINITY {
                    continue;
                }
                let alt = dik + dkj;
                if alt < *dij {
                    *dij = alt;
                }
            }
        }
    }
    Ok(dist)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseGraphError {
    MissingProblemLine,
    Problem { line: usize, reason: &'static str },
    ArcLine { line: usize, reason: &'static str },
    ArcCount { expected: usize, found: usize },
    Junk { line: usize },
}

impl fmt::Display for ParseGraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseGraphError::MissingProblemLine => write!(f, "no `p sp N M` line"),
            ParseGraphError::Problem { line, reason } => {
                write!(f, "line {line}: bad problem line, {reason}")
            }
            ParseGraphError::ArcLine { line, reason } => {
                write!(f, "line {line}: bad arc line, {reason}")
            }
            ParseGraphError::ArcCount { expected, found } => {
                write!(f, "problem line promised {expected} arcs, found {found}")
            }
            ParseGraphError::Junk { line } => write!(f, "line {line}: unrecognized line"),
        }
    }
}

impl std::error::Error for ParseGraphError {}

/// Reads DIMACS shortest-path format: one `p sp N M` line, `a tail head
/// weight` lines with 1-based endpoints, `c` comments anywhere.
pub fn parse_graph(text: &str) -> Result<WeightedDigraph, ParseGraphError> {
    let mut shape: Option<(usize, usize)> = None;
    let mut arcs: Vec<Arc> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut fields = raw.split_ascii_whitespace();
        match fields.next() {
            None => {}
            Some("c") => {}
            Some("p") => {
                if shape.is_some() {
                    return Err(ParseGraphError::Problem { line, reason: "duplicate problem line" });
                }
                match (fields.next(), fields.next(), fields.next(), fields.next()) {
                    (Some("sp"), Some(n), Some(m), None) => {
                        let n = n.parse::<usize>().map_err(|_| ParseGraphError::Problem {
                            line,
                            reason: "vertex count is not an unsigned integer",
                        })?;
                        let m = m.parse::<usize>().map_err(|_| ParseGraphError::Problem {
                            line,
                            reason: "arc count is not an unsigned integer",
                        })?;
                        if n == 0 {
                            return Err(ParseGraphError::Problem {
                                line,
                                reason: "vertex count must be positive",
                            });
                        }
                        shape = Some((n, m));
                        arcs.reserve(m);
                    }
                    _ => {
                        return Err(ParseGraphError::Problem {
                            line,
                            reason: "expected `p sp N M`",
                        })
                    }
                }
            }
            Some("a") => {
                let (n, _) = shape.ok_or(ParseGraphError::ArcLine {
                    line,
                    reason: "arc before the problem line",
                })?;
                match (fields.next(), fields.next(), fields.next(), fields.next()) {
                    (Some(tail), Some(head), Some(weight), None) => {
                        let parse = |s: &str| s.parse::<u64>().ok();
                        let (tail, head, weight) = match (parse(tail), parse(head), parse(weight)) {
                            (Some(t), Some(h), Some(w)) => (t, h, w),
                            _ => {
                                return Err(ParseGraphError::ArcLine {
                                    line,
                                    reason: "fields are not unsigned integers",
                                })
                            }
                        };
                        if tail == 0 || head == 0 || tail > n as u64 || head > n as u64 {
                            return Err(ParseGraphError::ArcLine {
                                line,
                                reason: "endpoint outside 1..=N",
                            });
                        }
                        if weight > u32::MAX as u64 {
                            return Err(ParseGraphError::ArcLine {
                                line,
                                reason: "weight exceeds u32",
                            });
                        }
                        arcs.push(Arc::new(tail as u32 - 1, head as u32 - 1, weight as u32));
                    }
                    _ => {
                        return Err(ParseGraphError::ArcLine {
                            line,
                            reason: "expected `a tail head weight`",
                        })
                    }
                }
            }
            Some(_) => return Err(ParseGraphError::Junk { line }),
        }
    }
    let (n, m) = shape.ok_or(ParseGraphError::MissingProblemLine)?;
    if arcs.len() != m {
        return Err(ParseGraphError::ArcCount { expected: m, found: arcs.len() });
    }
    Ok(build_graph(n, &arcs).expect("endpoints validated during parsing"))
}

/// Renders DIMACS shortest-path format with arcs in CSR order, so equal
/// graphs serialize to identical bytes.
pub fn write_graph(g: &WeightedDigraph) -> String {
    let mut out = String::with_capacity(16 + 16 * g.arc_count());
    out.push_str(&format!("p sp {} {}\n", g.n, g.arc_count()));
    for v in 0..g.n as u32 {
        for (head, weight) in g.out_arcs(v) {
            out.push_str(&format!("a {} {} {}\n", v + 1, head + 1, weight));
        }
    }
    out
}
