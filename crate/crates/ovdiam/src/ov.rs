//! Orthogonal-vectors instances: parsing, tuple search, and seeded generators.
//!
//! An instance is a set `S` of `N` binary vectors of length `ℓ`, stored
//! bit-packed. A k-tuple of indices (repetition allowed) is *orthogonal* when
//! every coordinate has a 0 in at least one selected vector. Searches return
//! the lexicographically smallest non-decreasing witness, so results are
//! stable across runs and platforms.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Bit-packed set of `n` binary vectors of length `ell`.
///
/// Row words beyond coordinate `ell` are always zero; every accessor and
/// search relies on that invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OvInstance {
    n: usize,
    ell: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl OvInstance {
    /// Builds an instance from explicit 0/1 rows; panics on empty or ragged
    /// input or on values other than 0 and 1.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        assert!(!rows.is_empty(), "instance needs at least one vector");
        let ell = rows[0].as_ref().len();
        assert!(ell > 0, "vectors must have at least one coordinate");
        let n = rows.len();
        let words_per_row = ell.div_ceil(64);
        let mut inst = OvInstance { n, ell, words_per_row, bits: vec![0; n * words_per_row] };
        for (v, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), ell, "vector {v} has a different length");
            for (c, &value) in row.iter().enumerate() {
                match value {
                    0 => {}
                    1 => inst.set_bit(v, c),
                    other => panic!("vector {v} coordinate {c} holds {other}, expected 0 or 1"),
                }
            }
        }
        inst
    }

    fn zeroed(n: usize, ell: usize) -> Self {
        let words_per_row = ell.div_ceil(64);
        OvInstance { n, ell, words_per_row, bits: vec![0; n * words_per_row] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Reads coordinate `coord` (0-based) of vector `vec`.
    pub fn bit(&self, vec: usize, coord: usize) -> bool {
        assert!(vec < self.n && coord < self.ell, "bit({vec}, {coord}) out of range");
        let w = self.bits[vec * self.words_per_row + coord / 64];
        w >> (coord % 64) & 1 == 1
    }

    fn set_bit(&mut self, vec: usize, coord: usize) {
        self.bits[vec * self.words_per_row + coord / 64] |= 1 << (coord % 64);
    }

    fn clear_bit(&mut self, vec: usize, coord: usize) {
        self.bits[vec * self.words_per_row + coord / 64] &= !(1 << (coord % 64));
    }

    fn row_words(&self, vec: usize) -> &[u64] {
        &self.bits[vec * self.words_per_row..(vec + 1) * self.words_per_row]
    }
}

/// Orthogonal index tuple, non-decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthWitness {
    pub indices: Vec<usize>,
}

impl OrthWitness {
    pub fn k(&self) -> usize {
        self.indices.len()
    }
}

impl fmt::Display for OrthWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, idx) in self.indices.iter().enumerate() {
            if pos > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{idx}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseInstanceError {
    MissingHeader,
    Header { line: usize, reason: &'static str },
    RowCount { expected: usize, found: usize },
    RowLength { line: usize, expected: usize, found: usize },
    Symbol { line: usize, column: usize, found: char },
}

impl fmt::Display for ParseInstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseInstanceError::MissingHeader => write!(f, "empty input, expected an `N ell` header"),
            ParseInstanceError::Header { line, reason } => write!(f, "line {line}: bad header, {reason}"),
            ParseInstanceError::RowCount { expected, found } => {
                write!(f, "expected {expected} vector rows, found {found}")
            }
            ParseInstanceError::RowLength { line, expected, found } => {
                write!(f, "line {line}: expected {expected} coordinates, found {found}")
            }
            ParseInstanceError::Symbol { line, column, found } => {
                write!(f, "line {line}, column {column}: expected '0' or '1', found {found:?}")
            }
        }
    }
}

impl std::error::Error for ParseInstanceError {}

/// Parses the `N ell` header plus `N` rows of `0`/`1` characters.
pub fn parse_instance(text: &str) -> Result<OvInstance, ParseInstanceError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(ParseInstanceError::MissingHeader)?;
    let mut fields = header.split_ascii_whitespace();
    let (n, ell) = match (fields.next(), fields.next(), fields.next()) {
        (Some(n), Some(ell), None) => {
            let parse = |s: &str| s.parse::<usize>().ok();
            match (parse(n), parse(ell)) {
                (Some(n), Some(ell)) => (n, ell),
                _ => {
                    return Err(ParseInstanceError::Header {
                        line: 1,
                        reason: "expected two unsigned integers `N ell`",
                    })
                }
            }
        }
        _ => {
            return Err(ParseInstanceError::Header {
                line: 1,
                reason: "expected exactly two fields `N ell`",
            })
        }
    };
    if n == 0 || ell == 0 {
        return Err(ParseInstanceError::Header { line: 1, reason: "N and ell must be positive" });
    }
    let rows: Vec<&str> = lines.collect();
    if rows.len() != n {
        return Err(ParseInstanceError::RowCount { expected: n, found: rows.len() });
    }
    let mut inst = OvInstance::zeroed(n, ell);
    for (v, row) in rows.iter().enumerate() {
        let line = v + 2;
        let mut coords = 0usize;
        for (idx, ch) in row.chars().enumerate() {
            match ch {
                '0' => {}
                '1' if idx < ell => inst.set_bit(v, idx),
                '1' => {}
                other => {
                    return Err(ParseInstanceError::Symbol { line, column: idx + 1, found: other })
                }
            }
            coords += 1;
        }
        if coords != ell {
            return Err(ParseInstanceError::RowLength { line, expected: ell, found: coords });
        }
    }
    Ok(inst)
}

/// Renders an instance in the same format `parse_instance` reads.
pub fn write_instance(inst: &OvInstance) -> String {
    let mut out = String::with_capacity(24 + inst.n * (inst.ell + 1));
    out.push_str(&format!("{} {}\n", inst.n, inst.ell));
    for v in 0..inst.n {
        for c in 0..inst.ell {
            out.push(if inst.bit(v, c) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

fn and_is_zero(rows: &[&[u64]]) -> bool {
    let words = rows[0].len();
    for w in 0..words {
        let mut acc = !0u64;
        for row in rows {
            acc &= row[w];
        }
        if acc != 0 {
            return false;
        }
    }
    true
}

/// True when every coordinate has a 0 in at least one selected vector.
/// Indices may repeat; they must be in range.
pub fn is_orthogonal(inst: &OvInstance, indices: &[usize]) -> bool {
    first_common_one(inst, indices).is_none()
}

/// 1-based first coordinate where *all* selected vectors hold 1, or `None`
/// exactly when the tuple is orthogonal.
pub fn first_common_one(inst: &OvInstance, indices: &[usize]) -> Option<usize> {
    assert!(!indices.is_empty(), "tuple must name at least one vector");
    for &i in indices {
        assert!(i < inst.n, "vector index {i} out of range");
    }
    for w in 0..inst.words_per_row {
        let mut acc = !0u64;
        for &i in indices {
            acc &= inst.row_words(i)[w];
        }
        if acc != 0 {
            return Some(w * 64 + acc.trailing_zeros() as usize + 1);
        }
    }
    None
}

/// Lexicographically smallest non-decreasing orthogonal `k`-tuple, `k` in
/// 2..=4, or `None` when the instance has no orthogonal `k`-tuple.
///
/// Prefix pruning keeps this exact: once a prefix ANDs to zero, its first
/// completion (repeating the last index) is already a witness, and sorting
/// any witness never increases its lexicographic rank.
pub fn find_orthogonal_tuple(inst: &OvInstance, k: usize) -> Option<OrthWitness> {
    assert!((2..=4).contains(&k), "tuple arity must be 2, 3, or 4");
    let n = inst.n;
    let witness = |indices: Vec<usize>| Some(OrthWitness { indices });
    match k {
        2 => {
            for i in 0..n {
                for j in i..n {
                    if and_is_zero(&[inst.row_words(i), inst.row_words(j)]) {
                        return witness(vec![i, j]);
                    }
                }
            }
        }
        3 => {
            for i in 0..n {
                for j in i..n {
                    if and_is_zero(&[inst.row_words(i), inst.row_words(j)]) {
                        return witness(vec![i, j, j]);
                    }
                    for l in j..n {
                        if and_is_zero(&[inst.row_words(i), inst.row_words(j), inst.row_words(l)]) {
                            return witness(vec![i, j, l]);
                        }
                    }
                }
            }
        }
        4 => {
            for i in 0..n {
                for j in i..n {
                    if and_is_zero(&[inst.row_words(i), inst.row_words(j)]) {
                        return witness(vec![i, j, j, j]);
                    }
                    for l in j..n {
                        if and_is_zero(&[inst.row_words(i), inst.row_words(j), inst.row_words(l)]) {
                            return witness(vec![i, j, l, l]);
                        }
                        for m in l..n {
                            if and_is_zero(&[
                                inst.row_words(i),
                                inst.row_words(j),
                                inst.row_words(l),
                                inst.row_words(m),
                            ]) {
                                return witness(vec![i, j, l, m]);
                            }
                        }
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenMode {
    /// Rejection-sample until no orthogonal quadruple exists.
    NoQuadruple,
    /// Plant an orthogonal quadruple, then reject until no triple exists.
    PlantedQuadruple,
}

#[derive(Clone, Debug)]
pub struct GenParams {
    pub n: usize,
    pub ell: usize,
    pub mode: GenMode,
    /// Probability that a background coordinate is 1.
    pub density: f64,
    pub seed: u64,
}

/// Generation retries before giving up on the requested shape.
pub const GEN_ATTEMPT_BUDGET: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub enum GenError {
    InvalidParams(&'static str),
    BudgetExhausted { attempts: usize },
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::InvalidParams(reason) => write!(f, "invalid generator parameters: {reason}"),
            GenError::BudgetExhausted { attempts } => {
                write!(f, "no instance of the requested shape after {attempts} attempts")
            }
        }
    }
}

impl std::error::Error for GenError {}

fn random_instance(rng: &mut ChaCha8Rng, n: usize, ell: usize, density: f64) -> OvInstance {
    let mut inst = OvInstance::zeroed(n, ell);
    for v in 0..n {
        for c in 0..ell {
            if rng.random_bool(density) {
                inst.set_bit(v, c);
            }
        }
    }
    inst
}

/// Overwrites four distinct rows with vectors that are pairwise and
/// triple-wise non-orthogonal yet jointly orthogonal: planted vector `t` is 0
/// exactly on coordinates `c` with `c % 4 == t`. Needs `n >= 4` and
/// `ell >= 4`; smaller shapes cannot host a triple-free quadruple at all.
fn plant_quadruple(rng: &mut ChaCha8Rng, inst: &mut OvInstance) {
    let n = inst.n;
    let mut ids: Vec<usize> = (0..n).collect();
    for t in 0..4 {
        let pick = rng.random_range(t..n);
        ids.swap(t, pick);
    }
    for (t, &v) in ids[..4].iter().enumerate() {
        for c in 0..inst.ell {
            if c % 4 == t {
                inst.clear_bit(v, c);
            } else {
                inst.set_bit(v, c);
            }
        }
    }
}

/// Seeded instance generator. Returns the instance and, in planted mode, the
/// lexicographically first orthogonal quadruple. Every accepted instance is
/// re-certified by `find_orthogonal_tuple` before it is returned.
pub fn gen_instance(params: &GenParams) -> Result<(OvInstance, Option<OrthWitness>), GenError> {
    if params.n == 0 || params.ell == 0 {
        return Err(GenError::InvalidParams("N and ell must be positive"));
    }
    if !(0.0..=1.0).contains(&params.density) || params.density.is_nan() {
        return Err(GenError::InvalidParams("density must lie in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for _ in 0..GEN_ATTEMPT_BUDGET {
        match params.mode {
            GenMode::NoQuadruple => {
                let inst = random_instance(&mut rng, params.n, params.ell, params.density);
                if find_orthogonal_tuple(&inst, 4).is_none() {
                    return Ok((inst, None));
                }
            }
            GenMode::PlantedQuadruple => {
                let mut inst = random_instance(&mut rng, params.n, params.ell, params.density);
                if params.n >= 4 && params.ell >= 4 {
                    plant_quadruple(&mut rng, &mut inst);
                }
                if find_orthogonal_tuple(&inst, 3).is_none() {
                    if let Some(quad) = find_orthogonal_tuple(&inst, 4) {
                        return Ok((inst, Some(quad)));
                    }
                }
            }
        }
    }
    Err(GenError::BudgetExhausted { attempts: GEN_ATTEMPT_BUDGET })
}
