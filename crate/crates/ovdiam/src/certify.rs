//! Outside-in checks of a built reduction: explicit short-path certificates
//! for the six far pair classes, hub-distance audits, soundness witnesses,
//! the 4-vs-≥7 gap verdict, and a composite verification report.
//!
//! Certificates follow fixed recipes whose interior vertices are named by
//! `ind` lookups (first coordinate where all given vectors hold 1). On
//! quadruple-free instances every lookup succeeds; a failed lookup returns
//! the offending tuple, which is itself an orthogonal quadruple. A recipe hop
//! may land on its own predecessor (for instance when the queried target
//! already carries the recipe's coordinate triple); such hops collapse, so a
//! certificate is a genuine walk of weight at most 4, with weight exactly 4
//! whenever no hop collapses.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{exact_diameter, sssp, sssp_into, two_approx_estimate, SsspScratch, INFINITY};
use crate::ov::{self, OrthWitness, OvInstance};
use crate::reduction::{
    build_reduction, FamilyTag, ReductionError, ReductionGraph, Triple, VertexLabel, U_ID, V_ID,
};

/// The six ordered family pairs not covered by hub routes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FarPairClass {
    AbcAdy,
    AbcDc,
    AbcDcb,
    AbDc,
    AbDcb,
    AdyDcb,
}

impl FarPairClass {
    pub const ALL: [FarPairClass; 6] = [
        FarPairClass::AbcAdy,
        FarPairClass::AbcDc,
        FarPairClass::AbcDcb,
        FarPairClass::AbDc,
        FarPairClass::AbDcb,
        FarPairClass::AdyDcb,
    ];

    /// Source and target family of this class.
    pub fn families(self) -> (FamilyTag, FamilyTag) {
        match self {
            FarPairClass::AbcAdy => (FamilyTag::Abc, FamilyTag::Ady),
            FarPairClass::AbcDc => (FamilyTag::Abc, FamilyTag::Dc),
            FarPairClass::AbcDcb => (FamilyTag::Abc, FamilyTag::Dcb),
            FarPairClass::AbDc => (FamilyTag::Ab, FamilyTag::Dc),
            FarPairClass::AbDcb => (FamilyTag::Ab, FamilyTag::Dcb),
            FarPairClass::AdyDcb => (FamilyTag::Ady, FamilyTag::Dcb),
        }
    }
}

impl fmt::Display for FarPairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FarPairClass::AbcAdy => "ABC->ADY",
            FarPairClass::AbcDc => "ABC->DC",
            FarPairClass::AbcDcb => "ABC->DCB",
            FarPairClass::AbDc => "AB->DC",
            FarPairClass::AbDcb => "AB->DCB",
            FarPairClass::AdyDcb => "ADY->DCB",
        })
    }
}

/// Far class of the ordered pair, or `None` when hub routes already bound the
/// pair's distance by 4 (a *near* pair).
pub fn classify_pair(x: &VertexLabel, y: &VertexLabel) -> Option<FarPairClass> {
    FarPairClass::ALL
        .into_iter()
        .find(|class| class.families() == (x.tag(), y.tag()))
}

/// A walk witnessing a short source-to-target connection: consecutive labels
/// are joined by arcs, and the weights sum to `total_weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCertificate {
    pub labels: Vec<VertexLabel>,
    pub total_weight: u64,
}

impl PathCertificate {
    /// True when some recipe hop collapsed; the walk then has fewer than the
    /// recipe's four hops, and the true distance is below 4.
    pub fn collapsed(&self) -> bool {
        self.labels.len() < 5
    }
}

impl fmt::Display for PathCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "weight {}:", self.total_weight)?;
        for label in &self.labels {
            write!(f, " {label}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CertifyError {
    /// The ordered pair is near; hub routes already cover it.
    NotFarPair,
    UnknownLabel(VertexLabel),
    /// An `ind` lookup failed; the tuple is an orthogonal quadruple of the
    /// instance (arity-3 lookups are padded by repeating the last vector).
    IndFailure { tuple: [usize; 4] },
    WitnessArity { got: usize },
    WitnessIndexOutOfRange { index: usize },
    WitnessNotOrthogonal,
    HubAuditFailed { detail: String },
    /// Exact diameter outside {4} ∪ [7, 8], impossible for a faithful build.
    DiameterOutOfRange { value: u64 },
    VerdictMismatch { diameter: u64, has_quadruple: bool },
    Construction(ReductionError),
    Validation { detail: String },
}

impl fmt::Display for CertifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertifyError::NotFarPair => write!(f, "pair is near, no certificate needed"),
            CertifyError::UnknownLabel(label) => write!(f, "label {label} is not a vertex"),
            CertifyError::IndFailure { tuple } => {
                write!(
                    f,
                    "no common 1-coordinate for vectors {} {} {} {} (orthogonal quadruple)",
                    tuple[0], tuple[1], tuple[2], tuple[3]
                )
            }
            CertifyError::WitnessArity { got } => write!(f, "witness has arity {got}, expected 4"),
            CertifyError::WitnessIndexOutOfRange { index } => {
                write!(f, "witness index {index} out of range")
            }
            CertifyError::WitnessNotOrthogonal => write!(f, "witness tuple is not orthogonal"),
            CertifyError::HubAuditFailed { detail } => write!(f, "hub audit failed: {detail}"),
            CertifyError::DiameterOutOfRange { value } => {
                if *value == INFINITY {
                    write!(f, "diameter is infinite")
                } else {
                    write!(f, "diameter {value} lies outside {{4}} and [7, 8]")
                }
            }
            CertifyError::VerdictMismatch { diameter, has_quadruple } => write!(
                f,
                "diameter {diameter} contradicts quadruple presence ({has_quadruple})"
            ),
            CertifyError::Construction(err) => write!(f, "{err}"),
            CertifyError::Validation { detail } => write!(f, "internal validation failed: {detail}"),
        }
    }
}

impl std::error::Error for CertifyError {}

impl From<ReductionError> for CertifyError {
    fn from(err: ReductionError) -> Self {
        CertifyError::Construction(err)
    }
}

fn ind(inst: &OvInstance, vectors: &[usize]) -> Result<u32, CertifyError> {
    match ov::first_common_one(inst, vectors) {
        Some(coord) => Ok(coord as u32),
        None => {
            let mut tuple = [*vectors.last().expect("ind needs vectors"); 4];
            tuple[..vectors.len()].copy_from_slice(vectors);
            // repeating the last vector preserves orthogonality
            Err(CertifyError::IndFailure { tuple })
        }
    }
}

/// The raw five-vertex recipe for one far pair, before collapsing.
fn recipe(
    inst: &OvInstance,
    class: FarPairClass,
    x: &VertexLabel,
    y: &VertexLabel,
) -> Result<[VertexLabel; 5], CertifyError> {
    let u = |v: u32| v as usize;
    match (class, *x, *y) {
        (FarPairClass::AbcAdy, VertexLabel::Abc { a, b, c }, VertexLabel::Ady { a: a2, d, .. }) => {
            let i = ind(inst, &[u(a), u(b), u(c), u(d)])?;
            let j = ind(inst, &[u(a), u(a2), u(b), u(d)])?;
            let k = ind(inst, &[u(a), u(a2), u(d)])?;
            let t = Triple::new(i, j, k);
            Ok([
                *x,
                VertexLabel::Ab { a, b, t },
                VertexLabel::Ady { a, d, t },
                VertexLabel::Adx { a: a2, d, t },
                *y,
            ])
        }
        (FarPairClass::AbcDc, VertexLabel::Abc { a, b, c }, VertexLabel::Dc { d, c: c2, .. }) => {
            let i = ind(inst, &[u(a), u(b), u(c), u(d)])?;
            let j = ind(inst, &[u(a), u(b), u(c2), u(d)])?;
            let k = ind(inst, &[u(a), u(c2), u(d)])?;
            let t = Triple::new(i, j, k);
            Ok([
                *x,
                VertexLabel::Ab { a, b, t },
                VertexLabel::Ady { a, d, t },
                VertexLabel::Dc { d, c: c2, t },
                *y,
            ])
        }
        (FarPairClass::AbcDcb, VertexLabel::Abc { a, b, c }, VertexLabel::Dcb { d, c: c2, b: b2 }) => {
            let i = ind(inst, &[u(a), u(b), u(c), u(d)])?;
            let j = ind(inst, &[u(a), u(b), u(c2), u(d)])?;
            let k = ind(inst, &[u(a), u(b2), u(c2), u(d)])?;
            let t = Triple::new(i, j, k);
            Ok([
                *x,
                VertexLabel::Ab { a, b, t },
                VertexLabel::Ady { a, d, t },
                VertexLabel::Dc { d, c: c2, t },
                *y,
            ])
        }
        (FarPairClass::AbDc, VertexLabel::Ab { a, b, .. }, VertexLabel::Dc { d, c, .. }) => {
            let i = ind(inst, &[u(a), u(b), u(c), u(d)])?;
            let t = Triple::new(i, i, i);
            Ok([
                *x,
                VertexLabel::Ab { a, b, t },
                VertexLabel::Ady { a, d, t },
                VertexLabel::Dc { d, c, t },
                *y,
            ])
        }
        (FarPairClass::AbDcb, VertexLabel::Ab { a, b, .. }, VertexLabel::Dcb { d, c, b: b2 }) => {
            let i = ind(inst, &[u(a), u(b), u(c), u(d)])?;
            let j = ind(inst, &[u(a), u(b), u(d)])?;
            let k = ind(inst, &[u(a), u(b2), u(c), u(d)])?;
            let t = Triple::new(i, j, k);
            Ok([
                *x,
                VertexLabel::Ab { a, b, t },
                VertexLabel::Ady { a, d, t },
                VertexLabel::Dc { d, c, t },
                *y,
            ])
        }
        (FarPairClass::AdyDcb, VertexLabel::Ady { a, d, .. }, VertexLabel::Dcb { d: d2, c, b }) => {
            let i = ind(inst, &[u(a), u(b), u(c), u(d2)])?;
            let j = ind(inst, &[u(a), u(c), u(d), u(d2)])?;
            let k = ind(inst, &[u(a), u(d), u(d2)])?;
            let t = Triple::new(i, j, k);
            Ok([
                *x,
                VertexLabel::Adx { a, d, t },
                VertexLabel::Ady { a, d: d2, t },
                VertexLabel::Dc { d: d2, c, t },
                *y,
            ])
        }
        _ => Err(CertifyError::Validation { detail: "class does not match label shapes".into() }),
    }
}

/// Builds the short-path certificate for a far ordered pair. The result is a
/// verified walk of weight at most 4 (exactly 4 unless a hop collapsed).
/// An `IndFailure` carries a genuine orthogonal quadruple of the instance.
pub fn build_short_path(
    rg: &ReductionGraph,
    x: &VertexLabel,
    y: &VertexLabel,
) -> Result<PathCertificate, CertifyError> {
    let class = classify_pair(x, y).ok_or(CertifyError::NotFarPair)?;
    for endpoint in [x, y] {
        if rg.id_of(endpoint).is_none() {
            return Err(CertifyError::UnknownLabel(*endpoint));
        }
    }
    let sequence = recipe(rg.instance(), class, x, y)?;
    let mut labels: Vec<VertexLabel> = Vec::with_capacity(5);
    for label in sequence {
        if labels.last() != Some(&label) {
            labels.push(label);
        }
    }
    let certificate =
        PathCertificate { total_weight: labels.len() as u64 - 1, labels };
    match verify_certificate(rg, &certificate) {
        Ok(true) => Ok(certificate),
        Ok(false) => Err(CertifyError::Validation {
            detail: format!("recipe produced an invalid walk for {x} -> {y}: {certificate}"),
        }),
        Err(err) => Err(err),
    }
}

/// Checks a certificate against the arc list: every consecutive label pair
/// must be joined by an arc, and the cheapest such arcs must sum to the
/// claimed total. A single-label certificate is valid iff its weight is 0.
pub fn verify_certificate(
    rg: &ReductionGraph,
    certificate: &PathCertificate,
) -> Result<bool, CertifyError> {
    if certificate.labels.is_empty() {
        return Ok(false);
    }
    let mut ids = Vec::with_capacity(certificate.labels.len());
    for label in &certificate.labels {
        ids.push(rg.id_of(label).ok_or(CertifyError::UnknownLabel(*label))?);
    }
    let mut total = 0u64;
    for hop in ids.windows(2) {
        let cheapest = rg
            .graph()
            .out_arcs(hop[0])
            .filter(|&(head, _)| head == hop[1])
            .map(|(_, weight)| weight as u64)
            .min();
        match cheapest {
            Some(weight) => total += weight,
            None => return Ok(false),
        }
    }
    Ok(total == certificate.total_weight)
}

/// Hub eccentricities of a valid build: every vertex within distance 4 of
/// and from both hubs, ABC pinned at (to u, to v) = (4, 3) and DCB at
/// (from u, from v) = (3, 4).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HubAudit {
    pub ecc_to_u: u64,
    pub ecc_from_u: u64,
    pub ecc_to_v: u64,
    pub ecc_from_v: u64,
}

pub fn hub_distance_audit(rg: &ReductionGraph) -> Result<HubAudit, CertifyError> {
    let g = rg.graph();
    let reversed = g.reversed();
    let from_u = sssp(g, U_ID);
    let from_v = sssp(g, V_ID);
    let to_u = sssp(&reversed, U_ID);
    let to_v = sssp(&reversed, V_ID);
    let fail = |detail: String| Err(CertifyError::HubAuditFailed { detail });

    for (name, row) in
        [("from u", &from_u), ("from v", &from_v), ("to u", &to_u), ("to v", &to_v)]
    {
        for (id, &d) in row.iter().enumerate() {
            if d > 4 {
                return fail(format!("vertex {} is at distance {d} {name}", rg.label_of(id as u32)));
            }
        }
    }
    for id in rg.family_ids(FamilyTag::Abc) {
        let (du, dv) = (to_u[id as usize], to_v[id as usize]);
        if (du, dv) != (4, 3) {
            return fail(format!("{} has hub distances ({du}, {dv}) instead of (4, 3)", rg.label_of(id)));
        }
    }
    for id in rg.family_ids(FamilyTag::Dcb) {
        let (du, dv) = (from_u[id as usize], from_v[id as usize]);
        if (du, dv) != (3, 4) {
            return fail(format!("{} has hub distances ({du}, {dv}) instead of (3, 4)", rg.label_of(id)));
        }
    }
    let max = |row: &[u64]| row.iter().copied().max().unwrap_or(0);
    Ok(HubAudit {
        ecc_to_u: max(&to_u),
        ecc_from_u: max(&from_u),
        ecc_to_v: max(&to_v),
        ecc_from_v: max(&from_v),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoundnessReport {
    pub source: VertexLabel,
    pub target: VertexLabel,
    pub distance: u64,
    /// True when the witness pair sits at distance at least 7.
    pub pass: bool,
}

/// For an orthogonal quadruple `(a, b, c, d)`, measures the distance from
/// `ABC(a,b,c)` to `DCB(d,c,b)`; soundness demands at least 7 (and a valid
/// build can never exceed 8, both hubs being within 4 of everything).
pub fn soundness_witness_check(
    rg: &ReductionGraph,
    witness: &OrthWitness,
) -> Result<SoundnessReport, CertifyError> {
    if witness.k() != 4 {
        return Err(CertifyError::WitnessArity { got: witness.k() });
    }
    let n = rg.instance().n();
    if let Some(&index) = witness.indices.iter().find(|&&i| i >= n) {
        return Err(CertifyError::WitnessIndexOutOfRange { index });
    }
    if !ov::is_orthogonal(rg.instance(), &witness.indices) {
        return Err(CertifyError::WitnessNotOrthogonal);
    }
    let [a, b, c, d] = [witness.indices[0], witness.indices[1], witness.indices[2], witness.indices[3]]
        .map(|i| i as u32);
    let source = VertexLabel::Abc { a, b, c };
    let target = VertexLabel::Dcb { d, c, b };
    let source_id = rg.id_of(&source).expect("ABC vertices always exist");
    let target_id = rg.id_of(&target).expect("DCB vertices always exist");
    let distance = sssp(rg.graph(), source_id)[target_id as usize];
    if distance > 8 {
        return Err(CertifyError::Validation {
            detail: format!("{source} -> {target} is at distance {distance}, beyond the hub cap 8"),
        });
    }
    Ok(SoundnessReport { source, target, distance, pass: distance >= 7 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GapVerdict {
    Diam4,
    DiamGe7,
}

impl fmt::Display for GapVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GapVerdict::Diam4 => "DIAM-4",
            GapVerdict::DiamGe7 => "DIAM-GE-7",
        })
    }
}

#[derive(Clone, Debug)]
pub struct GapReport {
    pub verdict: GapVerdict,
    pub diameter: u64,
    pub argmax: (VertexLabel, VertexLabel),
    pub quadruple: Option<OrthWitness>,
}

/// Builds the reduction, measures the exact diameter, and cross-checks the
/// verdict against an independent quadruple search: diameter 4 must mean no
/// orthogonal quadruple, diameter in [7, 8] must mean there is one.
pub fn gap_verdict(inst: &OvInstance) -> Result<GapReport, CertifyError> {
    let rg = build_reduction(inst)?;
    let result = exact_diameter(rg.graph());
    let quadruple = ov::find_orthogonal_tuple(inst, 4);
    let verdict = match result.value {
        4 => GapVerdict::Diam4,
        7..=8 => GapVerdict::DiamGe7,
        value => return Err(CertifyError::DiameterOutOfRange { value }),
    };
    if (verdict == GapVerdict::DiamGe7) != quadruple.is_some() {
        return Err(CertifyError::VerdictMismatch {
            diameter: result.value,
            has_quadruple: quadruple.is_some(),
        });
    }
    Ok(GapReport {
        verdict,
        diameter: result.value,
        argmax: (rg.label_of(result.argmax.0), rg.label_of(result.argmax.1)),
        quadruple,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Certificates are enumerated exhaustively up to this many vertices.
    pub full_pair_limit: usize,
    /// Ordered pairs sampled per far class beyond that.
    pub sample_per_class: usize,
    /// Orthogonal quadruples checked for soundness, in lexicographic order.
    pub max_soundness_witnesses: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            full_pair_limit: 2000,
            sample_per_class: 10_000,
            max_soundness_witnesses: 64,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckLine {
    pub pass: bool,
    pub name: String,
    pub details: String,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub lines: Vec<CheckLine>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.lines.iter().all(|line| line.pass)
    }

    fn push(&mut self, pass: bool, name: &str, details: String) {
        self.lines.push(CheckLine { pass, name: name.to_string(), details });
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(
                f,
                "{} {} {}",
                if line.pass { "PASS" } else { "FAIL" },
                line.name,
                line.details
            )?;
        }
        Ok(())
    }
}

/// Orthogonal quadruples in lexicographic non-decreasing order, at most `cap`.
fn orthogonal_quadruples(inst: &OvInstance, cap: usize) -> Vec<[usize; 4]> {
    let n = inst.n();
    let mut found = Vec::new();
    'outer: for i in 0..n {
        for j in i..n {
            for k in j..n {
                for l in k..n {
                    if ov::is_orthogonal(inst, &[i, j, k, l]) {
                        found.push([i, j, k, l]);
                        if found.len() >= cap {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    found
}

struct CertTally {
    checked: usize,
    weight4: usize,
    collapsed: usize,
    ind_failures: usize,
    bad: Option<String>,
}

impl CertTally {
    fn new() -> Self {
        CertTally { checked: 0, weight4: 0, collapsed: 0, ind_failures: 0, bad: None }
    }

    fn feed(
        &mut self,
        rg: &ReductionGraph,
        has_quadruple: bool,
        x: &VertexLabel,
        y: &VertexLabel,
    ) {
        self.checked += 1;
        match build_short_path(rg, x, y) {
            // an uncollapsed certificate has weight exactly 4, verified
            // against the arc list inside build_short_path
            Ok(cert) if cert.collapsed() => self.collapsed += 1,
            Ok(_) => self.weight4 += 1,
            Err(CertifyError::IndFailure { tuple }) => {
                self.ind_failures += 1;
                let genuine = has_quadruple && ov::is_orthogonal(rg.instance(), &tuple);
                if !genuine && self.bad.is_none() {
                    self.bad = Some(format!("bogus ind failure for {x} -> {y}"));
                }
            }
            Err(err) => {
                if self.bad.is_none() {
                    self.bad = Some(format!("{x} -> {y}: {err}"));
                }
            }
        }
    }
}

/// Runs every check on one instance and reports one PASS/FAIL line each:
/// size accounting, hub audit, exact diameter and gap verdict, near-pair and
/// global distance caps, per-class certificates (exhaustive on small builds,
/// seeded samples on large ones), soundness witnesses, and the 2-approximate
/// estimate sandwich.
pub fn run_verification(
    inst: &OvInstance,
    opts: &VerifyOptions,
) -> Result<VerifyReport, CertifyError> {
    let rg = build_reduction(inst)?;
    let g = rg.graph();
    let mut report = VerifyReport::default();
    let sizes = rg.sizes();
    report.push(true, "triple-free", "construction accepted the instance".into());
    match sizes.check() {
        Ok(()) => report.push(
            true,
            "size-bounds",
            format!("vertices={} arcs={}", sizes.vertices, sizes.arcs),
        ),
        Err(err) => report.push(false, "size-bounds", err.to_string()),
    }
    match hub_distance_audit(&rg) {
        Ok(audit) => report.push(
            true,
            "hub-audit",
            format!(
                "ecc(to u)={} ecc(from u)={} ecc(to v)={} ecc(from v)={}",
                audit.ecc_to_u, audit.ecc_from_u, audit.ecc_to_v, audit.ecc_from_v
            ),
        ),
        Err(err) => report.push(false, "hub-audit", err.to_string()),
    }

    // one full scan: exact diameter, near-pair cap 4, global cap 8
    let quadruple = ov::find_orthogonal_tuple(inst, 4);
    let mut scratch = SsspScratch::new(g);
    let mut diameter = 0u64;
    let mut argmax = (0u32, 0u32);
    let mut near_violation: Option<String> = None;
    let mut near_checked = 0usize;
    for source in 0..g.n() as u32 {
        sssp_into(g, source, &mut scratch);
        let source_label = rg.label_of(source);
        for (target, &d) in scratch.dist.iter().enumerate() {
            if d > diameter {
                diameter = d;
                argmax = (source, target as u32);
            }
            let target_label = rg.label_of(target as u32);
            if classify_pair(&source_label, &target_label).is_none() {
                near_checked += 1;
                if d > 4 && near_violation.is_none() {
                    near_violation =
                        Some(format!("near pair {source_label} -> {target_label} at distance {d}"));
                }
            }
        }
    }
    match near_violation {
        None => report.push(true, "near-pairs", format!("checked={near_checked} max<=4")),
        Some(detail) => report.push(false, "near-pairs", detail),
    }
    let verdict = match diameter {
        4 => Some(GapVerdict::Diam4),
        7..=8 => Some(GapVerdict::DiamGe7),
        _ => None,
    };
    let verdict_ok = verdict
        .map(|v| (v == GapVerdict::DiamGe7) == quadruple.is_some())
        .unwrap_or(false);
    report.push(
        verdict_ok,
        "gap-verdict",
        format!(
            "diameter={diameter} argmax=({} -> {}) quadruple={} verdict={}",
            rg.label_of(argmax.0),
            rg.label_of(argmax.1),
            quadruple.as_ref().map_or("none".to_string(), |w| w.to_string()),
            verdict.map_or("out-of-range".to_string(), |v| v.to_string()),
        ),
    );

    // certificates per far class
    let full = sizes.vertices <= opts.full_pair_limit;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for class in FarPairClass::ALL {
        let (src_tag, tgt_tag) = class.families();
        let sources = rg.family_ids(src_tag);
        let targets = rg.family_ids(tgt_tag);
        let mut tally = CertTally::new();
        if sources.is_empty() || targets.is_empty() {
            report.push(true, &format!("certificates-{class}"), "class uninhabited".into());
            continue;
        }
        if full {
            for s in sources.clone() {
                for t in targets.clone() {
                    tally.feed(&rg, quadruple.is_some(), &rg.label_of(s), &rg.label_of(t));
                }
            }
        } else {
            for _ in 0..opts.sample_per_class {
                let s = rng.random_range(sources.clone());
                let t = rng.random_range(targets.clone());
                tally.feed(&rg, quadruple.is_some(), &rg.label_of(s), &rg.label_of(t));
            }
        }
        let pass = tally.bad.is_none() && (quadruple.is_some() || tally.ind_failures == 0);
        let mut details = format!(
            "checked={} weight4={} collapsed={} ind-failures={}",
            tally.checked, tally.weight4, tally.collapsed, tally.ind_failures
        );
        if let Some(bad) = tally.bad {
            details = format!("{details} first-problem: {bad}");
        }
        report.push(pass, &format!("certificates-{class}"), details);
    }

    // soundness witnesses
    let witnesses = orthogonal_quadruples(inst, opts.max_soundness_witnesses);
    if quadruple.is_some() != !witnesses.is_empty() {
        report.push(false, "soundness-witnesses", "quadruple searches disagree".into());
    } else if witnesses.is_empty() {
        report.push(true, "soundness-witnesses", "no orthogonal quadruple".into());
    } else {
        let mut min = u64::MAX;
        let mut max = 0u64;
        let mut failure: Option<String> = None;
        for tuple in &witnesses {
            let witness = OrthWitness { indices: tuple.to_vec() };
            match soundness_witness_check(&rg, &witness) {
                Ok(sound) => {
                    min = min.min(sound.distance);
                    max = max.max(sound.distance);
                    if !sound.pass && failure.is_none() {
                        failure = Some(format!(
                            "{} -> {} at distance {}",
                            sound.source, sound.target, sound.distance
                        ));
                    }
                }
                Err(err) => {
                    if failure.is_none() {
                        failure = Some(err.to_string());
                    }
                }
            }
        }
        match failure {
            None => report.push(
                true,
                "soundness-witnesses",
                format!("checked={} distances in [{min}, {max}]", witnesses.len()),
            ),
            Some(detail) => report.push(false, "soundness-witnesses", detail),
        }
    }

    // 2-approximation sandwich
    let estimate = two_approx_estimate(g, None);
    let sandwich = estimate <= diameter && diameter <= 2 * estimate;
    report.push(
        sandwich,
        "two-approx",
        format!("estimate={estimate} diameter={diameter}"),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ov::{gen_instance, GenMode, GenParams};

    fn minimal_rg() -> ReductionGraph {
        build_reduction(&OvInstance::from_rows(&[[1]])).unwrap()
    }

    fn design_instance() -> OvInstance {
        OvInstance::from_rows(&[[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]])
    }

    fn no_quad_instance(seed: u64) -> OvInstance {
        let params = GenParams { n: 3, ell: 4, mode: GenMode::NoQuadruple, density: 0.85, seed };
        gen_instance(&params).unwrap().0
    }

    fn planted_instance(seed: u64) -> (OvInstance, OrthWitness) {
        let params =
            GenParams { n: 4, ell: 5, mode: GenMode::PlantedQuadruple, density: 0.9, seed };
        let (inst, witness) = gen_instance(&params).unwrap();
        (inst, witness.unwrap())
    }

    #[test]
    fn classify_pair_matches_the_six_class_table() {
        let t = Triple::new(1, 1, 1);
        let abc = VertexLabel::Abc { a: 0, b: 0, c: 0 };
        let ab = VertexLabel::Ab { a: 0, b: 0, t };
        let adx = VertexLabel::Adx { a: 0, d: 0, t };
        let ady = VertexLabel::Ady { a: 0, d: 0, t };
        let dc = VertexLabel::Dc { d: 0, c: 0, t };
        let dcb = VertexLabel::Dcb { d: 0, c: 0, b: 0 };
        assert_eq!(classify_pair(&abc, &ady), Some(FarPairClass::AbcAdy));
        assert_eq!(classify_pair(&abc, &dc), Some(FarPairClass::AbcDc));
        assert_eq!(classify_pair(&abc, &dcb), Some(FarPairClass::AbcDcb));
        assert_eq!(classify_pair(&ab, &dc), Some(FarPairClass::AbDc));
        assert_eq!(classify_pair(&ab, &dcb), Some(FarPairClass::AbDcb));
        assert_eq!(classify_pair(&ady, &dcb), Some(FarPairClass::AdyDcb));
        // reversed orientation and hub-adjacent pairs are near
        assert_eq!(classify_pair(&dcb, &abc), None);
        assert_eq!(classify_pair(&ady, &abc), None);
        assert_eq!(classify_pair(&abc, &adx), None);
        assert_eq!(classify_pair(&VertexLabel::U, &dcb), None);
        assert_eq!(classify_pair(&abc, &abc), None);
    }

    #[test]
    fn collapsing_recipes_on_the_minimal_instance() {
        let rg = minimal_rg();
        let t = Triple::new(1, 1, 1);
        let abc = VertexLabel::Abc { a: 0, b: 0, c: 0 };
        let ab = VertexLabel::Ab { a: 0, b: 0, t };
        let ady = VertexLabel::Ady { a: 0, d: 0, t };
        let adx = VertexLabel::Adx { a: 0, d: 0, t };
        let dc = VertexLabel::Dc { d: 0, c: 0, t };
        let dcb = VertexLabel::Dcb { d: 0, c: 0, b: 0 };

        // both endpoints already carry the recipe triple: two hops collapse
        let cert = build_short_path(&rg, &ab, &dc).unwrap();
        assert_eq!(cert.labels, vec![ab, ady, dc]);
        assert_eq!(cert.total_weight, 2);
        assert!(cert.collapsed());

        let cert = build_short_path(&rg, &abc, &dc).unwrap();
        assert_eq!(cert.labels, vec![abc, ab, ady, dc]);
        assert_eq!(cert.total_weight, 3);

        let cert = build_short_path(&rg, &abc, &dcb).unwrap();
        assert_eq!(cert.labels, vec![abc, ab, ady, dc, dcb]);
        assert_eq!(cert.total_weight, 4);
        assert!(!cert.collapsed());

        // the ABC -> ADY walk revisits ADY; non-consecutive repeats are fine
        let cert = build_short_path(&rg, &abc, &ady).unwrap();
        assert_eq!(cert.labels, vec![abc, ab, ady, adx, ady]);
        assert_eq!(cert.total_weight, 4);
        assert!(verify_certificate(&rg, &cert).unwrap());
    }

    #[test]
    fn every_far_pair_on_a_no_quadruple_instance_certifies() {
        let inst = no_quad_instance(3);
        let rg = build_reduction(&inst).unwrap();
        for class in FarPairClass::ALL {
            let (src_tag, tgt_tag) = class.families();
            for s in rg.family_ids(src_tag) {
                for t in rg.family_ids(tgt_tag) {
                    let cert = build_short_path(&rg, &rg.label_of(s), &rg.label_of(t)).unwrap();
                    assert!(cert.total_weight <= 4);
                    assert_eq!(cert.total_weight == 4, !cert.collapsed());
                    assert!(verify_certificate(&rg, &cert).unwrap());
                }
            }
        }
    }

    #[test]
    fn ind_failure_returns_the_quadruple_on_the_design_instance() {
        let rg = build_reduction(&design_instance()).unwrap();
        let source = VertexLabel::Abc { a: 0, b: 1, c: 2 };
        let target = VertexLabel::Dcb { d: 3, c: 2, b: 1 };
        match build_short_path(&rg, &source, &target) {
            Err(CertifyError::IndFailure { tuple }) => {
                assert_eq!(tuple, [0, 1, 2, 3]);
                assert!(ov::is_orthogonal(rg.instance(), &tuple));
            }
            other => panic!("expected an ind failure, got {other:?}"),
        }
        // a pair dodging the quadruple still certifies
        let easy_target = VertexLabel::Dcb { d: 0, c: 0, b: 0 };
        let cert = build_short_path(&rg, &VertexLabel::Abc { a: 0, b: 0, c: 0 }, &easy_target).unwrap();
        assert!(cert.total_weight <= 4);
    }

    #[test]
    fn near_pairs_are_rejected_not_certified() {
        let rg = minimal_rg();
        let abc = VertexLabel::Abc { a: 0, b: 0, c: 0 };
        let err = build_short_path(&rg, &abc, &abc).unwrap_err();
        assert_eq!(err, CertifyError::NotFarPair);
    }

    #[test]
    fn verify_certificate_detects_tampering() {
        let rg = minimal_rg();
        let abc = VertexLabel::Abc { a: 0, b: 0, c: 0 };
        let dcb = VertexLabel::Dcb { d: 0, c: 0, b: 0 };
        let mut cert = build_short_path(&rg, &abc, &dcb).unwrap();
        cert.total_weight = 3;
        assert!(!verify_certificate(&rg, &cert).unwrap());

        let no_arc = PathCertificate { labels: vec![abc, dcb], total_weight: 1 };
        assert!(!verify_certificate(&rg, &no_arc).unwrap());

        let ghost = VertexLabel::Ab { a: 0, b: 0, t: Triple::new(1, 1, 2) };
        let unknown = PathCertificate { labels: vec![abc, ghost], total_weight: 1 };
        assert_eq!(verify_certificate(&rg, &unknown), Err(CertifyError::UnknownLabel(ghost)));

        let single = PathCertificate { labels: vec![abc], total_weight: 0 };
        assert!(verify_certificate(&rg, &single).unwrap());
        let empty = PathCertificate { labels: vec![], total_weight: 0 };
        assert!(!verify_certificate(&rg, &empty).unwrap());
    }

    #[test]
    fn hub_audit_pins_the_four_eccentricities() {
        for inst in [
            OvInstance::from_rows(&[[1]]),
            no_quad_instance(9),
            planted_instance(4).0,
        ] {
            let rg = build_reduction(&inst).unwrap();
            let audit = hub_distance_audit(&rg).unwrap();
            assert_eq!(
                audit,
                HubAudit { ecc_to_u: 4, ecc_from_u: 3, ecc_to_v: 3, ecc_from_v: 4 },
                "n={} ell={}",
                inst.n(),
                inst.ell()
            );
        }
    }

    #[test]
    fn soundness_holds_on_planted_instances() {
        let (inst, witness) = planted_instance(1);
        let rg = build_reduction(&inst).unwrap();
        let sound = soundness_witness_check(&rg, &witness).unwrap();
        assert!(sound.pass, "distance {} for witness {witness}", sound.distance);
        assert!((7..=8).contains(&sound.distance));

        let short = OrthWitness { indices: vec![0, 1, 2] };
        assert_eq!(
            soundness_witness_check(&rg, &short),
            Err(CertifyError::WitnessArity { got: 3 })
        );
        let out = OrthWitness { indices: vec![0, 1, 2, 99] };
        assert_eq!(
            soundness_witness_check(&rg, &out),
            Err(CertifyError::WitnessIndexOutOfRange { index: 99 })
        );
        let bogus = OrthWitness { indices: vec![0, 0, 0, 0] };
        assert_eq!(soundness_witness_check(&rg, &bogus), Err(CertifyError::WitnessNotOrthogonal));
    }

    #[test]
    fn gap_verdict_separates_the_two_regimes() {
        let no_quad = gap_verdict(&no_quad_instance(7)).unwrap();
        assert_eq!(no_quad.verdict, GapVerdict::Diam4);
        assert_eq!(no_quad.diameter, 4);
        assert_eq!(no_quad.quadruple, None);

        let (inst, witness) = planted_instance(2);
        let planted = gap_verdict(&inst).unwrap();
        assert_eq!(planted.verdict, GapVerdict::DiamGe7);
        assert!((7..=8).contains(&planted.diameter));
        assert_eq!(planted.quadruple, Some(witness));

        let with_triple = OvInstance::from_rows(&[[1, 0], [0, 1]]);
        assert!(matches!(
            gap_verdict(&with_triple),
            Err(CertifyError::Construction(ReductionError::OrthogonalTriple(_)))
        ));
    }

    #[test]
    fn verification_report_passes_on_both_regimes() {
        let opts = VerifyOptions::default();
        for inst in [no_quad_instance(11), planted_instance(6).0] {
            let report = run_verification(&inst, &opts).unwrap();
            assert!(report.pass(), "{report}");
            let text = report.to_string();
            assert!(text.lines().count() >= 10);
            assert!(text.lines().all(|l| l.starts_with("PASS ")));
            assert!(text.contains("gap-verdict"));
        }
    }
}
