//! The gadget digraph `ρ(S)` built from a triple-free instance.
//!
//! Two hubs `u`, `v` plus six vertex families: ABC and DCB hold all `N³`
//! vector triples; AB, ADX, ADY, DC hold (vector pair, coordinate triple)
//! combinations that satisfy per-slot conditions. Hub arcs have weights
//! 0..=4 from a fixed table; every other arc is a weight-1 double arc of
//! kind regular, index-switching (inside AB and DC), or skew (between ADX
//! and ADY). Vertex ids follow the derived order of [`VertexLabel`], so a
//! rebuild of the same instance is byte-for-byte identical.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::graph::{self, Arc, WeightedDigraph};
use crate::ov::{self, OrthWitness, OvInstance};

pub const U_ID: u32 = 0;
pub const V_ID: u32 = 1;

/// Coordinate triple `(i, j, k)`, 1-based, order-sensitive, repeats allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

impl Triple {
    pub fn new(i: u32, j: u32, k: u32) -> Self {
        Triple { i, j, k }
    }

    pub fn slots(self) -> [u32; 3] {
        [self.i, self.j, self.k]
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.i, self.j, self.k)
    }
}

/// Vertex of the reduction. The derived ordering (hubs, then ABC, AB, ADX,
/// ADY, DC, DCB, lexicographic within each family) is the canonical vertex-id
/// order of built graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexLabel {
    U,
    V,
    Abc { a: u32, b: u32, c: u32 },
    Ab { a: u32, b: u32, t: Triple },
    Adx { a: u32, d: u32, t: Triple },
    Ady { a: u32, d: u32, t: Triple },
    Dc { d: u32, c: u32, t: Triple },
    Dcb { d: u32, c: u32, b: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyTag {
    U,
    V,
    Abc,
    Ab,
    Adx,
    Ady,
    Dc,
    Dcb,
}

impl VertexLabel {
    pub fn tag(&self) -> FamilyTag {
        match self {
            VertexLabel::U => FamilyTag::U,
            VertexLabel::V => FamilyTag::V,
            VertexLabel::Abc { .. } => FamilyTag::Abc,
            VertexLabel::Ab { .. } => FamilyTag::Ab,
            VertexLabel::Adx { .. } => FamilyTag::Adx,
            VertexLabel::Ady { .. } => FamilyTag::Ady,
            VertexLabel::Dc { .. } => FamilyTag::Dc,
            VertexLabel::Dcb { .. } => FamilyTag::Dcb,
        }
    }

    pub fn is_hub(&self) -> bool {
        matches!(self, VertexLabel::U | VertexLabel::V)
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VertexLabel::U => f.write_str("U"),
            VertexLabel::V => f.write_str("V"),
            VertexLabel::Abc { a, b, c } => write!(f, "ABC({a},{b},{c})"),
            VertexLabel::Ab { a, b, t } => write!(f, "AB({a},{b};{t})"),
            VertexLabel::Adx { a, d, t } => write!(f, "ADX({a},{d};{t})"),
            VertexLabel::Ady { a, d, t } => write!(f, "ADY({a},{d};{t})"),
            VertexLabel::Dc { d, c, t } => write!(f, "DC({d},{c};{t})"),
            VertexLabel::Dcb { d, c, b } => write!(f, "DCB({d},{c},{b})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseLabelError {
    pub reason: &'static str,
}

impl fmt::Display for ParseLabelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad vertex label: {}", self.reason)
    }
}

impl std::error::Error for ParseLabelError {}

fn parse_fields<const K: usize>(body: &str) -> Result<[u32; K], ParseLabelError> {
    let mut out = [0u32; K];
    let mut fields = body.split(',');
    for slot in &mut out {
        let field = fields.next().ok_or(ParseLabelError { reason: "too few fields" })?;
        *slot = field.parse().map_err(|_| ParseLabelError { reason: "field is not an integer" })?;
    }
    if fields.next().is_some() {
        return Err(ParseLabelError { reason: "too many fields" });
    }
    Ok(out)
}

impl FromStr for VertexLabel {
    type Err = ParseLabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "U" => return Ok(VertexLabel::U),
            "V" => return Ok(VertexLabel::V),
            _ => {}
        }
        let open = s.find('(').ok_or(ParseLabelError { reason: "missing '('" })?;
        let body = s[open + 1..]
            .strip_suffix(')')
            .ok_or(ParseLabelError { reason: "missing closing ')'" })?;
        let family = &s[..open];
        match family {
            "ABC" | "DCB" => {
                let [x, y, z] = parse_fields::<3>(body)?;
                Ok(match family {
                    "ABC" => VertexLabel::Abc { a: x, b: y, c: z },
                    _ => VertexLabel::Dcb { d: x, c: y, b: z },
                })
            }
            "AB" | "ADX" | "ADY" | "DC" => {
                let (vecs, idxs) = body
                    .split_once(';')
                    .ok_or(ParseLabelError { reason: "missing ';' between vectors and indices" })?;
                let [x, y] = parse_fields::<2>(vecs)?;
                let [i, j, k] = parse_fields::<3>(idxs)?;
                let t = Triple::new(i, j, k);
                Ok(match family {
                    "AB" => VertexLabel::Ab { a: x, b: y, t },
                    "ADX" => VertexLabel::Adx { a: x, d: y, t },
                    "ADY" => VertexLabel::Ady { a: x, d: y, t },
                    _ => VertexLabel::Dc { d: x, c: y, t },
                })
            }
            _ => Err(ParseLabelError { reason: "unknown family" }),
        }
    }
}

/// Kind of a weight-1 double arc of the variable part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    Regular,
    IndexSwitching,
    Skew,
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeKind::Regular => "regular",
            EdgeKind::IndexSwitching => "index-switching",
            EdgeKind::Skew => "skew",
        })
    }
}

fn check_vector(inst: &OvInstance, id: u32) -> usize {
    let id = id as usize;
    assert!(id < inst.n(), "vector id {id} out of range (N = {})", inst.n());
    id
}

fn check_triple(inst: &OvInstance, t: Triple) {
    for coord in t.slots() {
        assert!(
            coord >= 1 && coord as usize <= inst.ell(),
            "coordinate {coord} out of range (ell = {})",
            inst.ell()
        );
    }
}

/// How many of the three slots of `t` hold a 1 in vector `v` (repeated slots
/// count with multiplicity).
fn slot_ones(inst: &OvInstance, v: usize, t: Triple) -> u32 {
    t.slots().iter().filter(|&&c| inst.bit(v, c as usize - 1)).count() as u32
}

/// True when some slot of `t` holds a 1 in both `x` and `y`.
fn slots_share_one(inst: &OvInstance, x: usize, y: usize, t: Triple) -> bool {
    t.slots().iter().any(|&c| inst.bit(x, c as usize - 1) && inst.bit(y, c as usize - 1))
}

/// Whether `label` is a vertex of `ρ(instance)`. Hubs and all of ABC/DCB
/// always exist; the indexed families require their slot conditions.
pub fn vertex_exists(inst: &OvInstance, label: &VertexLabel) -> bool {
    match *label {
        VertexLabel::U | VertexLabel::V => true,
        VertexLabel::Abc { a, b, c } => {
            check_vector(inst, a);
            check_vector(inst, b);
            check_vector(inst, c);
            true
        }
        VertexLabel::Dcb { d, c, b } => {
            check_vector(inst, d);
            check_vector(inst, c);
            check_vector(inst, b);
            true
        }
        VertexLabel::Ab { a, b, t } => {
            let (a, b) = (check_vector(inst, a), check_vector(inst, b));
            check_triple(inst, t);
            slot_ones(inst, a, t) == 3 && slot_ones(inst, b, t) >= 2
        }
        VertexLabel::Dc { d, c, t } => {
            let (d, c) = (check_vector(inst, d), check_vector(inst, c));
            check_triple(inst, t);
            slot_ones(inst, d, t) == 3 && slot_ones(inst, c, t) >= 2
        }
        VertexLabel::Ady { a, d, t } => {
            let (a, d) = (check_vector(inst, a), check_vector(inst, d));
            check_triple(inst, t);
            slot_ones(inst, a, t) == 3 && slot_ones(inst, d, t) == 3
        }
        VertexLabel::Adx { a, d, t } => {
            let (a, d) = (check_vector(inst, a), check_vector(inst, d));
            check_triple(inst, t);
            slot_ones(inst, a, t) + slot_ones(inst, d, t) >= 5
        }
    }
}

/// Kind of the variable-part edge between two non-hub labels, or `None` when
/// no arc joins them (including when either endpoint does not exist).
/// Panics on hub labels: hub arcs come from the constant part.
pub fn edge_exists(inst: &OvInstance, x: &VertexLabel, y: &VertexLabel) -> Option<EdgeKind> {
    assert!(!x.is_hub() && !y.is_hub(), "edge_exists is for non-hub labels");
    if x == y || !vertex_exists(inst, x) || !vertex_exists(inst, y) {
        return None;
    }
    directed_kind(inst, x, y).or_else(|| directed_kind(inst, y, x))
}

/// One-directional pattern match behind `edge_exists`; every rule is written
/// left-to-right and the caller tries both orders.
fn directed_kind(inst: &OvInstance, x: &VertexLabel, y: &VertexLabel) -> Option<EdgeKind> {
    match (*x, *y) {
        (VertexLabel::Abc { a, b, c }, VertexLabel::Ab { a: a2, b: b2, t })
            if a == a2 && b == b2 && slots_share_one(inst, c as usize, b as usize, t) =>
        {
            Some(EdgeKind::Regular)
        }
        (VertexLabel::Dcb { d, c, b }, VertexLabel::Dc { d: d2, c: c2, t })
            if d == d2 && c == c2 && slots_share_one(inst, b as usize, c as usize, t) =>
        {
            Some(EdgeKind::Regular)
        }
        (VertexLabel::Ab { a, t, .. }, VertexLabel::Ady { a: a2, t: t2, .. })
            if a == a2 && t == t2 =>
        {
            Some(EdgeKind::Regular)
        }
        (VertexLabel::Ady { d, t, .. }, VertexLabel::Dc { d: d2, t: t2, .. })
            if d == d2 && t == t2 =>
        {
            Some(EdgeKind::Regular)
        }
        (VertexLabel::Adx { a, d, t }, VertexLabel::Ady { a: a2, d: d2, t: t2 }) => {
            if a == a2 && d == d2 {
                Some(EdgeKind::Skew)
            } else if t == t2 && ((a == a2) ^ (d == d2)) {
                Some(EdgeKind::Regular)
            } else {
                None
            }
        }
        (VertexLabel::Ab { a, b, t }, VertexLabel::Ab { a: a2, b: b2, t: t2 })
            if a == a2 && b == b2 && t != t2 =>
        {
            Some(EdgeKind::IndexSwitching)
        }
        (VertexLabel::Dc { d, c, t }, VertexLabel::Dc { d: d2, c: c2, t: t2 })
            if d == d2 && c == c2 && t != t2 =>
        {
            Some(EdgeKind::IndexSwitching)
        }
        _ => None,
    }
}

/// Hub arc weights for one family member: `(to_u, from_u, to_v, from_v)`,
/// `None` where no arc exists. ABC touches only `u`, DCB only `v`.
pub fn hub_weights(tag: FamilyTag) -> [Option<u32>; 4] {
    match tag {
        FamilyTag::Abc => [Some(4), Some(0), None, None],
        FamilyTag::Ab => [Some(3), Some(0), Some(2), Some(2)],
        FamilyTag::Adx => [Some(1), Some(1), Some(1), Some(1)],
        FamilyTag::Ady => [Some(2), Some(2), Some(2), Some(2)],
        FamilyTag::Dc => [Some(2), Some(2), Some(0), Some(3)],
        FamilyTag::Dcb => [None, None, Some(0), Some(4)],
        FamilyTag::U | FamilyTag::V => [None; 4],
    }
}

fn push_constant_part(tag: FamilyTag, id: u32, arcs: &mut Vec<Arc>) -> usize {
    let [to_u, from_u, to_v, from_v] = hub_weights(tag);
    let before = arcs.len();
    if let Some(w) = to_u {
        arcs.push(Arc::new(id, U_ID, w));
    }
    if let Some(w) = from_u {
        arcs.push(Arc::new(U_ID, id, w));
    }
    if let Some(w) = to_v {
        arcs.push(Arc::new(id, V_ID, w));
    }
    if let Some(w) = from_v {
        arcs.push(Arc::new(V_ID, id, w));
    }
    arcs.len() - before
}

/// Constant-part arcs incident to the family vertex `id`. Panics on hub tags;
/// the single `u <-> v` weight-2 pair is emitted separately by the builder.
pub fn constant_part_arcs(tag: FamilyTag, id: u32) -> Vec<Arc> {
    assert!(!matches!(tag, FamilyTag::U | FamilyTag::V), "hubs have no per-member arcs");
    let mut arcs = Vec::with_capacity(4);
    push_constant_part(tag, id, &mut arcs);
    arcs
}

/// Family and arc-kind counts of one build, plus the bound checks they must
/// satisfy. All arc counts are directed (a double arc counts twice).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeReport {
    pub n: usize,
    pub ell: usize,
    pub abc: usize,
    pub ab: usize,
    pub adx: usize,
    pub ady: usize,
    pub dc: usize,
    pub dcb: usize,
    pub vertices: usize,
    pub hub_arcs: usize,
    pub regular_arcs: usize,
    pub index_switching_arcs: usize,
    pub skew_arcs: usize,
    pub arcs: usize,
}

impl SizeReport {
    /// `2 + 2N³ + 4N²ℓ³`.
    pub fn vertex_bound(n: usize, ell: usize) -> u128 {
        let (n, ell) = (n as u128, ell as u128);
        2 + 2 * n.pow(3) + 4 * n.pow(2) * ell.pow(3)
    }

    /// Directed regular-arc envelope `12N³ℓ³`: the five regular edge sources
    /// contribute at most `(2+2+2+2+4)·N³ℓ³` directed arcs.
    pub fn regular_arc_bound(n: usize, ell: usize) -> u128 {
        12 * (n as u128).pow(3) * (ell as u128).pow(3)
    }

    /// Directed index-switching envelope `4N²ℓ⁶` (two families, at most
    /// `ℓ³(ℓ³-1)` ordered arcs per vector pair).
    pub fn index_switching_arc_bound(n: usize, ell: usize) -> u128 {
        4 * (n as u128).pow(2) * (ell as u128).pow(6)
    }

    /// Directed skew envelope `2N²ℓ⁶`.
    pub fn skew_arc_bound(n: usize, ell: usize) -> u128 {
        2 * (n as u128).pow(2) * (ell as u128).pow(6)
    }

    /// Checks every bound this module can prove; violations mean the builder
    /// and the counting disagree, so they surface as errors, not test noise.
    pub fn check(&self) -> Result<(), ReductionError> {
        let (n, ell) = (self.n, self.ell);
        let n3 = (n as u128).pow(3);
        let family_cap = (n as u128).pow(2) * (ell as u128).pow(3);
        let hub_exact =
            2 + 2 * (self.abc + self.dcb) + 4 * (self.ab + self.adx + self.ady + self.dc);
        let checks: [(&'static str, u128, u128); 10] = [
            ("abc family size", self.abc as u128, n3),
            ("dcb family size", self.dcb as u128, n3),
            ("ab family cap", self.ab as u128, family_cap),
            ("adx family cap", self.adx as u128, family_cap),
            ("ady family cap", self.ady as u128, family_cap),
            ("dc family cap", self.dc as u128, family_cap),
            ("vertex bound", self.vertices as u128, Self::vertex_bound(n, ell)),
            ("regular arc bound", self.regular_arcs as u128, Self::regular_arc_bound(n, ell)),
            (
                "index-switching arc bound",
                self.index_switching_arcs as u128,
                Self::index_switching_arc_bound(n, ell),
            ),
            ("skew arc bound", self.skew_arcs as u128, Self::skew_arc_bound(n, ell)),
        ];
        for (what, value, bound) in checks {
            // the two family-size lines are equalities, the rest upper bounds
            let ok = match what {
                "abc family size" | "dcb family size" => value == bound,
                _ => value <= bound,
            };
            if !ok {
                return Err(ReductionError::BoundViolated { what, value, bound });
            }
        }
        if self.ady > self.adx {
            // six ones imply at least five, so ADY labels are a subset of ADX
            return Err(ReductionError::BoundViolated {
                what: "ady within adx",
                value: self.ady as u128,
                bound: self.adx as u128,
            });
        }
        let vertex_sum = 2 + self.abc + self.ab + self.adx + self.ady + self.dc + self.dcb;
        if self.vertices != vertex_sum {
            return Err(ReductionError::BoundViolated {
                what: "vertex partition",
                value: self.vertices as u128,
                bound: vertex_sum as u128,
            });
        }
        if self.hub_arcs != hub_exact {
            return Err(ReductionError::BoundViolated {
                what: "hub arc recount",
                value: self.hub_arcs as u128,
                bound: hub_exact as u128,
            });
        }
        let arc_sum =
            self.hub_arcs + self.regular_arcs + self.index_switching_arcs + self.skew_arcs;
        if self.arcs != arc_sum {
            return Err(ReductionError::BoundViolated {
                what: "arc kind partition",
                value: self.arcs as u128,
                bound: arc_sum as u128,
            });
        }
        Ok(())
    }
}

impl fmt::Display for SizeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instance n={} ell={}", self.n, self.ell)?;
        writeln!(
            f,
            "vertices total={} abc={} ab={} adx={} ady={} dc={} dcb={}",
            self.vertices, self.abc, self.ab, self.adx, self.ady, self.dc, self.dcb
        )?;
        write!(
            f,
            "arcs total={} hub={} regular={} index-switching={} skew={}",
            self.arcs,
            self.hub_arcs,
            self.regular_arcs,
            self.index_switching_arcs,
            self.skew_arcs
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ReductionError {
    /// The instance admits an orthogonal triple; `ρ` is only defined without one.
    OrthogonalTriple(OrthWitness),
    BoundViolated { what: &'static str, value: u128, bound: u128 },
    TooLarge { vertices: u128 },
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::OrthogonalTriple(w) => {
                write!(f, "instance admits an orthogonal triple: {w}")
            }
            ReductionError::BoundViolated { what, value, bound } => {
                write!(f, "size accounting failed: {what} is {value}, limit {bound}")
            }
            ReductionError::TooLarge { vertices } => {
                write!(f, "reduction needs {vertices} vertices, beyond u32 vertex ids")
            }
        }
    }
}

impl std::error::Error for ReductionError {}

/// Per-family index: for each ordered vector pair, the sorted list of
/// coordinate triples whose vertex exists. Lookup is a binary search, and
/// block-local position plus `base` yields the global vertex id.
#[derive(Clone, Debug)]
struct PairTriples {
    base: u32,
    n: usize,
    starts: Vec<u32>,
    triples: Vec<Triple>,
}

impl PairTriples {
    fn build(base: u32, inst: &OvInstance, mut exists: impl FnMut(u32, u32, Triple) -> bool) -> Self {
        let n = inst.n();
        let ell = inst.ell() as u32;
        let mut starts = Vec::with_capacity(n * n + 1);
        let mut triples = Vec::new();
        starts.push(0);
        for x in 0..n as u32 {
            for y in 0..n as u32 {
                for i in 1..=ell {
                    for j in 1..=ell {
                        for k in 1..=ell {
                            let t = Triple::new(i, j, k);
                            if exists(x, y, t) {
                                triples.push(t);
                            }
                        }
                    }
                }
                starts.push(triples.len() as u32);
            }
        }
        PairTriples { base, n, starts, triples }
    }

    fn len(&self) -> usize {
        self.triples.len()
    }

    fn block(&self, x: u32, y: u32) -> &[Triple] {
        let pair = x as usize * self.n + y as usize;
        &self.triples[self.starts[pair] as usize..self.starts[pair + 1] as usize]
    }

    fn block_base(&self, x: u32, y: u32) -> u32 {
        self.base + self.starts[x as usize * self.n + y as usize]
    }

    fn id_of(&self, x: u32, y: u32, t: Triple) -> Option<u32> {
        if x as usize >= self.n || y as usize >= self.n {
            return None;
        }
        let block = self.block(x, y);
        block.binary_search(&t).ok().map(|pos| self.block_base(x, y) + pos as u32)
    }
}

/// A built reduction: the CSR digraph plus everything needed to move between
/// vertex ids and labels.
#[derive(Clone, Debug)]
pub struct ReductionGraph {
    graph: WeightedDigraph,
    instance: OvInstance,
    labels: Vec<VertexLabel>,
    abc_base: u32,
    ab: PairTriples,
    adx: PairTriples,
    ady: PairTriples,
    dc: PairTriples,
    dcb_base: u32,
    sizes: SizeReport,
}

impl ReductionGraph {
    pub fn graph(&self) -> &WeightedDigraph {
        &self.graph
    }

    pub fn instance(&self) -> &OvInstance {
        &self.instance
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label_of(&self, id: u32) -> VertexLabel {
        self.labels[id as usize]
    }

    pub fn sizes(&self) -> &SizeReport {
        &self.sizes
    }

    /// Vertex id of `label`, or `None` when that label is not a vertex.
    pub fn id_of(&self, label: &VertexLabel) -> Option<u32> {
        let n = self.instance.n() as u32;
        let dense = |x: u32, y: u32, z: u32| (x * n + y) * n + z;
        match *label {
            VertexLabel::U => Some(U_ID),
            VertexLabel::V => Some(V_ID),
            VertexLabel::Abc { a, b, c } => {
                (a < n && b < n && c < n).then(|| self.abc_base + dense(a, b, c))
            }
            VertexLabel::Dcb { d, c, b } => {
                (d < n && c < n && b < n).then(|| self.dcb_base + dense(d, c, b))
            }
            VertexLabel::Ab { a, b, t } => self.ab.id_of(a, b, t),
            VertexLabel::Adx { a, d, t } => self.adx.id_of(a, d, t),
            VertexLabel::Ady { a, d, t } => self.ady.id_of(a, d, t),
            VertexLabel::Dc { d, c, t } => self.dc.id_of(d, c, t),
        }
    }

    /// Contiguous id range of one family.
    pub fn family_ids(&self, tag: FamilyTag) -> Range<u32> {
        let ab_base = self.ab.base;
        let adx_base = self.adx.base;
        let ady_base = self.ady.base;
        let dc_base = self.dc.base;
        let total = self.labels.len() as u32;
        match tag {
            FamilyTag::U => U_ID..V_ID,
            FamilyTag::V => V_ID..self.abc_base,
            FamilyTag::Abc => self.abc_base..ab_base,
            FamilyTag::Ab => ab_base..adx_base,
            FamilyTag::Adx => adx_base..ady_base,
            FamilyTag::Ady => ady_base..dc_base,
            FamilyTag::Dc => dc_base..self.dcb_base,
            FamilyTag::Dcb => self.dcb_base..total,
        }
    }
}

/// Convenience alias for `reduction.sizes()`.
pub fn size_report(reduction: &ReductionGraph) -> &SizeReport {
    reduction.sizes()
}

/// Peak-memory model of `build_reduction` (arc staging plus CSR plus labels),
/// from the size envelopes alone, for refusing oversized builds up front.
pub fn predicted_build_bytes(n: usize, ell: usize) -> u128 {
    let vertices = SizeReport::vertex_bound(n, ell);
    let hub = 2 + 4 * vertices;
    let arcs = hub
        + SizeReport::regular_arc_bound(n, ell)
        + SizeReport::index_switching_arc_bound(n, ell)
        + SizeReport::skew_arc_bound(n, ell);
    arcs * 20 + vertices * 40
}

/// Builds `ρ(inst)`. Fails on instances with an orthogonal triple (returning
/// the witness) and on size-accounting violations.
pub fn build_reduction(inst: &OvInstance) -> Result<ReductionGraph, ReductionError> {
    if let Some(witness) = ov::find_orthogonal_tuple(inst, 3) {
        return Err(ReductionError::OrthogonalTriple(witness));
    }
    if SizeReport::vertex_bound(inst.n(), inst.ell()) > u32::MAX as u128 {
        return Err(ReductionError::TooLarge {
            vertices: SizeReport::vertex_bound(inst.n(), inst.ell()),
        });
    }
    let n = inst.n() as u32;
    let n3 = (inst.n() * inst.n() * inst.n()) as u32;

    let abc_base = 2u32;
    let ab = PairTriples::build(abc_base + n3, inst, |a, b, t| {
        vertex_exists(inst, &VertexLabel::Ab { a, b, t })
    });
    let adx = PairTriples::build(ab.base + ab.len() as u32, inst, |a, d, t| {
        vertex_exists(inst, &VertexLabel::Adx { a, d, t })
    });
    let ady = PairTriples::build(adx.base + adx.len() as u32, inst, |a, d, t| {
        vertex_exists(inst, &VertexLabel::Ady { a, d, t })
    });
    let dc = PairTriples::build(ady.base + ady.len() as u32, inst, |d, c, t| {
        vertex_exists(inst, &VertexLabel::Dc { d, c, t })
    });
    let dcb_base = dc.base + dc.len() as u32;
    let total = (dcb_base + n3) as usize;

    let mut labels = Vec::with_capacity(total);
    labels.push(VertexLabel::U);
    labels.push(VertexLabel::V);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                labels.push(VertexLabel::Abc { a, b, c });
            }
        }
    }
    let push_family = |labels: &mut Vec<VertexLabel>,
                       index: &PairTriples,
                       make: fn(u32, u32, Triple) -> VertexLabel| {
        for x in 0..n {
            for y in 0..n {
                for &t in index.block(x, y) {
                    labels.push(make(x, y, t));
                }
            }
        }
    };
    push_family(&mut labels, &ab, |a, b, t| VertexLabel::Ab { a, b, t });
    push_family(&mut labels, &adx, |a, d, t| VertexLabel::Adx { a, d, t });
    push_family(&mut labels, &ady, |a, d, t| VertexLabel::Ady { a, d, t });
    push_family(&mut labels, &dc, |d, c, t| VertexLabel::Dc { d, c, t });
    for d in 0..n {
        for c in 0..n {
            for b in 0..n {
                labels.push(VertexLabel::Dcb { d, c, b });
            }
        }
    }
    debug_assert_eq!(labels.len(), total);

    let mut arcs: Vec<Arc> = Vec::new();
    let mut hub_arcs = 2usize;
    arcs.push(Arc::new(U_ID, V_ID, 2));
    arcs.push(Arc::new(V_ID, U_ID, 2));
    for (id, label) in labels.iter().enumerate().skip(2) {
        hub_arcs += push_constant_part(label.tag(), id as u32, &mut arcs);
    }

    let mut regular_arcs = 0usize;
    let push_edge = |arcs: &mut Vec<Arc>, counter: &mut usize, x: u32, y: u32| {
        arcs.push(Arc::new(x, y, 1));
        arcs.push(Arc::new(y, x, 1));
        *counter += 2;
    };

    // regular: ABC <-> AB, same (a, b), some slot where c and b are both 1
    for a in 0..n {
        for b in 0..n {
            let block = ab.block(a, b);
            let block_base = ab.block_base(a, b);
            for c in 0..n {
                let abc_id = abc_base + (a * n + b) * n + c;
                for (pos, &t) in block.iter().enumerate() {
                    if slots_share_one(inst, c as usize, b as usize, t) {
                        push_edge(&mut arcs, &mut regular_arcs, abc_id, block_base + pos as u32);
                    }
                }
            }
        }
    }
    // regular: AB <-> ADY, same a, same triple, every d
    for a in 0..n {
        for b in 0..n {
            let block_base = ab.block_base(a, b);
            for (pos, &t) in ab.block(a, b).iter().enumerate() {
                for d in 0..n {
                    if let Some(y_id) = ady.id_of(a, d, t) {
                        push_edge(&mut arcs, &mut regular_arcs, block_base + pos as u32, y_id);
                    }
                }
            }
        }
    }
    // regular: ADX <-> ADY, same triple, exactly one vector field changed
    for a in 0..n {
        for d in 0..n {
            let block_base = adx.block_base(a, d);
            for (pos, &t) in adx.block(a, d).iter().enumerate() {
                let x_id = block_base + pos as u32;
                for d2 in 0..n {
                    if d2 == d {
                        continue;
                    }
                    if let Some(y_id) = ady.id_of(a, d2, t) {
                        push_edge(&mut arcs, &mut regular_arcs, x_id, y_id);
                    }
                }
                for a2 in 0..n {
                    if a2 == a {
                        continue;
                    }
                    if let Some(y_id) = ady.id_of(a2, d, t) {
                        push_edge(&mut arcs, &mut regular_arcs, x_id, y_id);
                    }
                }
            }
        }
    }
    // regular: ADY <-> DC, same d, same triple, every c
    for a in 0..n {
        for d in 0..n {
            let block_base = ady.block_base(a, d);
            for (pos, &t) in ady.block(a, d).iter().enumerate() {
                for c in 0..n {
                    if let Some(dc_id) = dc.id_of(d, c, t) {
                        push_edge(&mut arcs, &mut regular_arcs, block_base + pos as u32, dc_id);
                    }
                }
            }
        }
    }
    // regular: DC <-> DCB, same (d, c), some slot where b and c are both 1
    for d in 0..n {
        for c in 0..n {
            let block = dc.block(d, c);
            let block_base = dc.block_base(d, c);
            for b in 0..n {
                let dcb_id = dcb_base + (d * n + c) * n + b;
                for (pos, &t) in block.iter().enumerate() {
                    if slots_share_one(inst, b as usize, c as usize, t) {
                        push_edge(&mut arcs, &mut regular_arcs, block_base + pos as u32, dcb_id);
                    }
                }
            }
        }
    }

    // index-switching: all pairs inside one (a, b) block of AB, then of DC
    let mut index_switching_arcs = 0usize;
    for index in [&ab, &dc] {
        for x in 0..n {
            for y in 0..n {
                let len = index.block(x, y).len() as u32;
                let block_base = index.block_base(x, y);
                for p in 0..len {
                    for q in p + 1..len {
                        push_edge(
                            &mut arcs,
                            &mut index_switching_arcs,
                            block_base + p,
                            block_base + q,
                        );
                    }
                }
            }
        }
    }

    // skew: every ADX/ADY pair with the same (a, d), index fields free
    let mut skew_arcs = 0usize;
    for a in 0..n {
        for d in 0..n {
            let x_base = adx.block_base(a, d);
            let y_base = ady.block_base(a, d);
            for px in 0..adx.block(a, d).len() as u32 {
                for py in 0..ady.block(a, d).len() as u32 {
                    push_edge(&mut arcs, &mut skew_arcs, x_base + px, y_base + py);
                }
            }
        }
    }

    let sizes = SizeReport {
        n: inst.n(),
        ell: inst.ell(),
        abc: n3 as usize,
        ab: ab.len(),
        adx: adx.len(),
        ady: ady.len(),
        dc: dc.len(),
        dcb: n3 as usize,
        vertices: total,
        hub_arcs,
        regular_arcs,
        index_switching_arcs,
        skew_arcs,
        arcs: arcs.len(),
    };
    sizes.check()?;
    let graph = graph::build_graph(total, &arcs).expect("builder emits only in-range endpoints");
    Ok(ReductionGraph {
        graph,
        instance: inst.clone(),
        labels,
        abc_base,
        ab,
        adx,
        ady,
        dc,
        dcb_base,
        sizes,
    })
}

/// Renders the id-to-label map, one `id<TAB>label` line per vertex.
pub fn write_labels(reduction: &ReductionGraph) -> String {
    let mut out = String::with_capacity(reduction.labels.len() * 20);
    for (id, label) in reduction.labels.iter().enumerate() {
        out.push_str(&format!("{id}\t{label}\n"));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseLabelsError {
    pub line: usize,
    pub reason: &'static str,
}

impl fmt::Display for ParseLabelsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.reason)
    }
}

impl std::error::Error for ParseLabelsError {}

/// Parses a label map produced by `write_labels`.
pub fn parse_labels(text: &str) -> Result<Vec<(u32, VertexLabel)>, ParseLabelsError> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        if line.is_empty() {
            continue;
        }
        let (id, label) = line
            .split_once('\t')
            .ok_or(ParseLabelsError { line: lineno, reason: "expected `id<TAB>label`" })?;
        let id = id
            .parse::<u32>()
            .map_err(|_| ParseLabelsError { line: lineno, reason: "id is not an integer" })?;
        let label = label
            .parse::<VertexLabel>()
            .map_err(|_| ParseLabelsError { line: lineno, reason: "unparsable vertex label" })?;
        out.push((id, label));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{exact_diameter, write_graph};
    use crate::ov::{gen_instance, GenMode, GenParams};
    use std::collections::BTreeMap;

    fn minimal() -> OvInstance {
        OvInstance::from_rows(&[[1]])
    }

    /// Independent per-definition restatement of the family conditions.
    fn naive_exists(inst: &OvInstance, label: &VertexLabel) -> bool {
        let ones = |v: u32, t: Triple| {
            t.slots().iter().filter(|&&c| inst.bit(v as usize, c as usize - 1)).count()
        };
        match *label {
            VertexLabel::U | VertexLabel::V | VertexLabel::Abc { .. } | VertexLabel::Dcb { .. } => {
                true
            }
            VertexLabel::Ab { a, b, t } => ones(a, t) == 3 && ones(b, t) >= 2,
            VertexLabel::Dc { d, c, t } => ones(d, t) == 3 && ones(c, t) >= 2,
            VertexLabel::Ady { a, d, t } => ones(a, t) + ones(d, t) == 6,
            VertexLabel::Adx { a, d, t } => ones(a, t) + ones(d, t) >= 5,
        }
    }

    /// Independent restatement of the edge rules, pattern by pattern.
    fn naive_edge(inst: &OvInstance, x: &VertexLabel, y: &VertexLabel) -> Option<EdgeKind> {
        if x == y || !naive_exists(inst, x) || !naive_exists(inst, y) {
            return None;
        }
        let share = |p: u32, q: u32, t: Triple| {
            t.slots()
                .iter()
                .any(|&c| inst.bit(p as usize, c as usize - 1) && inst.bit(q as usize, c as usize - 1))
        };
        let rule = |x: &VertexLabel, y: &VertexLabel| -> Option<EdgeKind> {
            match (*x, *y) {
                (VertexLabel::Abc { a, b, c }, VertexLabel::Ab { a: a2, b: b2, t }) => {
                    (a == a2 && b == b2 && share(c, b, t)).then_some(EdgeKind::Regular)
                }
                (VertexLabel::Dcb { d, c, b }, VertexLabel::Dc { d: d2, c: c2, t }) => {
                    (d == d2 && c == c2 && share(b, c, t)).then_some(EdgeKind::Regular)
                }
                (VertexLabel::Ab { a, t, .. }, VertexLabel::Ady { a: a2, t: t2, .. }) => {
                    (a == a2 && t == t2).then_some(EdgeKind::Regular)
                }
                (VertexLabel::Ady { d, t, .. }, VertexLabel::Dc { d: d2, t: t2, .. }) => {
                    (d == d2 && t == t2).then_some(EdgeKind::Regular)
                }
                (VertexLabel::Adx { a, d, t }, VertexLabel::Ady { a: a2, d: d2, t: t2 }) => {
                    if a == a2 && d == d2 {
                        Some(EdgeKind::Skew)
                    } else if t == t2 && (a == a2) != (d == d2) {
                        Some(EdgeKind::Regular)
                    } else {
                        None
                    }
                }
                (VertexLabel::Ab { a, b, t }, VertexLabel::Ab { a: a2, b: b2, t: t2 }) => {
                    (a == a2 && b == b2 && t != t2).then_some(EdgeKind::IndexSwitching)
                }
                (VertexLabel::Dc { d, c, t }, VertexLabel::Dc { d: d2, c: c2, t: t2 }) => {
                    (d == d2 && c == c2 && t != t2).then_some(EdgeKind::IndexSwitching)
                }
                _ => None,
            }
        };
        rule(x, y).or_else(|| rule(y, x))
    }

    #[test]
    fn label_ordering_is_the_canonical_id_order() {
        let t1 = Triple::new(1, 1, 1);
        let t2 = Triple::new(1, 1, 2);
        let chain = [
            VertexLabel::U,
            VertexLabel::V,
            VertexLabel::Abc { a: 0, b: 0, c: 0 },
            VertexLabel::Abc { a: 0, b: 1, c: 0 },
            VertexLabel::Ab { a: 0, b: 0, t: t1 },
            VertexLabel::Ab { a: 0, b: 0, t: t2 },
            VertexLabel::Adx { a: 0, d: 0, t: t1 },
            VertexLabel::Ady { a: 0, d: 0, t: t1 },
            VertexLabel::Dc { d: 0, c: 0, t: t1 },
            VertexLabel::Dcb { d: 0, c: 0, b: 0 },
        ];
        for pair in chain.windows(2) {
            assert!(pair[0] < pair[1], "{} should precede {}", pair[0], pair[1]);
        }
    }

    #[test]
    fn label_display_parse_roundtrip() {
        let samples = [
            VertexLabel::U,
            VertexLabel::V,
            VertexLabel::Abc { a: 3, b: 0, c: 7 },
            VertexLabel::Ab { a: 1, b: 2, t: Triple::new(4, 1, 9) },
            VertexLabel::Adx { a: 0, d: 5, t: Triple::new(2, 2, 2) },
            VertexLabel::Ady { a: 9, d: 9, t: Triple::new(1, 3, 1) },
            VertexLabel::Dc { d: 2, c: 4, t: Triple::new(8, 8, 1) },
            VertexLabel::Dcb { d: 0, c: 1, b: 2 },
        ];
        for label in samples {
            assert_eq!(label.to_string().parse::<VertexLabel>(), Ok(label));
        }
        assert!("AB(1,2)".parse::<VertexLabel>().is_err());
        assert!("XYZ(1,2,3)".parse::<VertexLabel>().is_err());
        assert!("ABC(1,2,3)x".parse::<VertexLabel>().is_err());
        assert!("ABC(1,2)".parse::<VertexLabel>().is_err());
    }

    #[test]
    fn existence_matches_naive_restatement_on_small_instances() {
        let instances = [
            OvInstance::from_rows(&[[1, 0], [1, 1]]),
            OvInstance::from_rows(&[[1, 1, 0], [0, 1, 1], [1, 1, 1]]),
        ];
        for inst in &instances {
            let n = inst.n() as u32;
            let ell = inst.ell() as u32;
            for x in 0..n {
                for y in 0..n {
                    for i in 1..=ell {
                        for j in 1..=ell {
                            for k in 1..=ell {
                                let t = Triple::new(i, j, k);
                                for label in [
                                    VertexLabel::Ab { a: x, b: y, t },
                                    VertexLabel::Adx { a: x, d: y, t },
                                    VertexLabel::Ady { a: x, d: y, t },
                                    VertexLabel::Dc { d: x, c: y, t },
                                ] {
                                    assert_eq!(
                                        vertex_exists(inst, &label),
                                        naive_exists(inst, &label),
                                        "{label}"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn edge_predicates_match_the_naive_restatement() {
        let instances = [
            minimal(),
            OvInstance::from_rows(&[[1, 0], [1, 1]]),
            OvInstance::from_rows(&[[1, 1, 0], [0, 1, 1], [1, 1, 1]]),
        ];
        for inst in &instances {
            let rg = build_reduction(inst).unwrap();
            let ids = 2..rg.graph().n() as u32;
            for x in ids.clone() {
                for y in ids.clone() {
                    if x == y {
                        continue;
                    }
                    let lx = rg.label_of(x);
                    let ly = rg.label_of(y);
                    assert_eq!(
                        edge_exists(inst, &lx, &ly),
                        naive_edge(inst, &lx, &ly),
                        "{lx} -> {ly}"
                    );
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "non-hub")]
    fn edge_exists_rejects_hub_labels() {
        let inst = minimal();
        edge_exists(&inst, &VertexLabel::U, &VertexLabel::Abc { a: 0, b: 0, c: 0 });
    }

    #[test]
    fn minimal_instance_has_the_frozen_eight_vertices_and_thirty_two_arcs() {
        let rg = build_reduction(&minimal()).unwrap();
        let t = Triple::new(1, 1, 1);
        assert_eq!(
            rg.labels(),
            &[
                VertexLabel::U,
                VertexLabel::V,
                VertexLabel::Abc { a: 0, b: 0, c: 0 },
                VertexLabel::Ab { a: 0, b: 0, t },
                VertexLabel::Adx { a: 0, d: 0, t },
                VertexLabel::Ady { a: 0, d: 0, t },
                VertexLabel::Dc { d: 0, c: 0, t },
                VertexLabel::Dcb { d: 0, c: 0, b: 0 },
            ]
        );
        // ids: 0=U 1=V 2=ABC 3=AB 4=ADX 5=ADY 6=DC 7=DCB
        let mut expected: Vec<(u32, u32, u32)> = vec![
            (0, 1, 2),
            (1, 0, 2), // u <-> v
            (2, 0, 4),
            (0, 2, 0), // ABC <-> u
            (3, 0, 3),
            (0, 3, 0),
            (3, 1, 2),
            (1, 3, 2), // AB hubs
            (4, 0, 1),
            (0, 4, 1),
            (4, 1, 1),
            (1, 4, 1), // ADX hubs
            (5, 0, 2),
            (0, 5, 2),
            (5, 1, 2),
            (1, 5, 2), // ADY hubs
            (6, 0, 2),
            (0, 6, 2),
            (6, 1, 0),
            (1, 6, 3), // DC hubs
            (7, 1, 0),
            (1, 7, 4), // DCB <-> v
            (2, 3, 1),
            (3, 2, 1), // ABC - AB        (regular)
            (3, 5, 1),
            (5, 3, 1), // AB - ADY        (regular)
            (5, 6, 1),
            (6, 5, 1), // ADY - DC        (regular)
            (6, 7, 1),
            (7, 6, 1), // DC - DCB        (regular)
            (4, 5, 1),
            (5, 4, 1), // ADX - ADY       (skew)
        ];
        let mut got: Vec<(u32, u32, u32)> = (0..8)
            .flat_map(|v| rg.graph().out_arcs(v).map(move |(h, w)| (v, h, w)))
            .collect();
        expected.sort_unstable();
        got.sort_unstable();
        assert_eq!(got, expected);

        let sizes = rg.sizes();
        assert_eq!((sizes.vertices, sizes.arcs), (8, 32));
        assert_eq!(
            (sizes.hub_arcs, sizes.regular_arcs, sizes.index_switching_arcs, sizes.skew_arcs),
            (22, 8, 0, 2)
        );
        assert_eq!(exact_diameter(rg.graph()).value, 4);
        assert!(write_graph(rg.graph()).starts_with("p sp 8 32\n"));
    }

    #[test]
    fn build_rejects_instances_with_an_orthogonal_triple() {
        let inst = OvInstance::from_rows(&[[1, 0], [0, 1]]);
        match build_reduction(&inst) {
            Err(ReductionError::OrthogonalTriple(w)) => assert_eq!(w.indices, vec![0, 0, 1]),
            other => panic!("expected a triple rejection, got {other:?}"),
        }
    }

    /// Ties the emitted arc list to `edge_exists`/`hub_weights`: every arc is
    /// accounted for, every predicted edge is present exactly once, and the
    /// per-kind counters match a full reclassification.
    fn audit_against_predicates(rg: &ReductionGraph) {
        let inst = rg.instance();
        let mut variable: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        let mut hub_seen = 0usize;
        for tail in 0..rg.graph().n() as u32 {
            for (head, w) in rg.graph().out_arcs(tail) {
                if tail <= V_ID || head <= V_ID {
                    hub_seen += 1;
                    let expected = if tail <= V_ID && head <= V_ID {
                        Some(2)
                    } else if head <= V_ID {
                        let [to_u, _, to_v, _] = hub_weights(rg.label_of(tail).tag());
                        if head == U_ID {
                            to_u
                        } else {
                            to_v
                        }
                    } else {
                        let [_, from_u, _, from_v] = hub_weights(rg.label_of(head).tag());
                        if tail == U_ID {
                            from_u
                        } else {
                            from_v
                        }
                    };
                    assert_eq!(Some(w), expected, "hub arc {tail}->{head}");
                } else {
                    assert_eq!(w, 1);
                    assert!(variable.insert((tail, head), w).is_none(), "duplicate arc");
                }
            }
        }
        let mut kind_counts: BTreeMap<EdgeKind, usize> = BTreeMap::new();
        let ids = 2..rg.graph().n() as u32;
        for x in ids.clone() {
            for y in ids.clone() {
                if x == y {
                    continue;
                }
                let lx = rg.label_of(x);
                let ly = rg.label_of(y);
                match edge_exists(inst, &lx, &ly) {
                    Some(kind) => {
                        assert!(variable.contains_key(&(x, y)), "missing arc {lx} -> {ly}");
                        *kind_counts.entry(kind).or_default() += 1;
                    }
                    None => {
                        assert!(!variable.contains_key(&(x, y)), "stray arc {lx} -> {ly}");
                    }
                }
            }
        }
        let sizes = rg.sizes();
        assert_eq!(hub_seen, sizes.hub_arcs);
        assert_eq!(kind_counts.get(&EdgeKind::Regular).copied().unwrap_or(0), sizes.regular_arcs);
        assert_eq!(
            kind_counts.get(&EdgeKind::IndexSwitching).copied().unwrap_or(0),
            sizes.index_switching_arcs
        );
        assert_eq!(kind_counts.get(&EdgeKind::Skew).copied().unwrap_or(0), sizes.skew_arcs);
        assert_eq!(variable.len(), sizes.arcs - sizes.hub_arcs);
        sizes.check().unwrap();
    }

    #[test]
    fn built_arcs_match_the_edge_predicates_exactly() {
        let instances = [
            minimal(),
            OvInstance::from_rows(&[[1, 0], [1, 1]]),
            OvInstance::from_rows(&[[1, 1, 0], [0, 1, 1], [1, 1, 1]]),
        ];
        for inst in &instances {
            audit_against_predicates(&build_reduction(inst).unwrap());
        }
        let params = GenParams { n: 3, ell: 4, mode: GenMode::NoQuadruple, density: 0.8, seed: 5 };
        let (inst, _) = gen_instance(&params).unwrap();
        audit_against_predicates(&build_reduction(&inst).unwrap());
    }

    #[test]
    fn id_of_inverts_label_of_everywhere() {
        let inst = OvInstance::from_rows(&[[1, 1, 0], [0, 1, 1], [1, 1, 1]]);
        let rg = build_reduction(&inst).unwrap();
        for id in 0..rg.graph().n() as u32 {
            assert_eq!(rg.id_of(&rg.label_of(id)), Some(id));
        }
        let absent = VertexLabel::Ady { a: 0, d: 1, t: Triple::new(1, 1, 1) };
        assert!(!vertex_exists(&inst, &absent));
        assert_eq!(rg.id_of(&absent), None);
        for tag in [FamilyTag::Abc, FamilyTag::Ab, FamilyTag::Adx, FamilyTag::Ady, FamilyTag::Dc, FamilyTag::Dcb] {
            for id in rg.family_ids(tag) {
                assert_eq!(rg.label_of(id).tag(), tag);
            }
        }
    }

    #[test]
    fn rebuilds_are_byte_for_byte_identical() {
        let params = GenParams { n: 4, ell: 4, mode: GenMode::NoQuadruple, density: 0.85, seed: 2 };
        let (inst, _) = gen_instance(&params).unwrap();
        let first = build_reduction(&inst).unwrap();
        let second = build_reduction(&inst).unwrap();
        assert_eq!(write_graph(first.graph()), write_graph(second.graph()));
        assert_eq!(write_labels(&first), write_labels(&second));
        assert_eq!(first.sizes(), second.sizes());
    }

    #[test]
    fn labels_file_roundtrips() {
        let rg = build_reduction(&OvInstance::from_rows(&[[1, 0], [1, 1]])).unwrap();
        let text = write_labels(&rg);
        let parsed = parse_labels(&text).unwrap();
        assert_eq!(parsed.len(), rg.labels().len());
        for (id, label) in parsed {
            assert_eq!(rg.label_of(id), label);
        }
        assert!(parse_labels("0 U\n").is_err());
        assert!(parse_labels("zero\tU\n").is_err());
    }

    /// N=3, ell=1 drives the regular-arc count to 288, above the crude
    /// 10N³ℓ³ = 270; the provable directed envelope is 12N³ℓ³ = 324.
    #[test]
    fn dense_degenerate_instance_pins_the_regular_arc_envelope() {
        let inst = OvInstance::from_rows(&[[1], [1], [1]]);
        let rg = build_reduction(&inst).unwrap();
        let sizes = rg.sizes();
        assert_eq!(sizes.regular_arcs, 288);
        assert!(sizes.regular_arcs as u128 > 10 * 27);
        assert!((sizes.regular_arcs as u128) <= SizeReport::regular_arc_bound(3, 1));
        audit_against_predicates(&rg);
    }
}
