//! Row, column, column-row, and mixed reductions of generating sets.
//!
//! A reduction zeroes the trailing rows and/or columns of each generating
//! matrix according to a non-decreasing list of reduction indices
//! `w_1 <= ... <= w_s`. Values `w_j >= m` are legal and zero the whole
//! matrix; they are stored unclamped because the cost formulas use the
//! raw values.

use crate::error::{Error, Result};
use crate::gf::GfMatrix;
use crate::nets::GeneratingSet;

/// Which trailing parts of the matrices a reduction zeroes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    Row,
    Column,
    ColumnRow,
}

impl ReductionKind {
    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::Row => "row",
            ReductionKind::Column => "column",
            ReductionKind::ColumnRow => "column-row",
        }
    }
}

impl std::str::FromStr for ReductionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "row" => Ok(ReductionKind::Row),
            "column" => Ok(ReductionKind::Column),
            "column-row" | "column_row" => Ok(ReductionKind::ColumnRow),
            other => Err(Error::InvalidParameter(format!(
                "unknown reduction kind {other:?} (expected row, column, or column-row)"
            ))),
        }
    }
}

/// A validated non-decreasing list of reduction indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionIndices {
    w: Vec<u32>,
}

impl ReductionIndices {
    pub fn new(w: Vec<u32>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::InvalidParameter("empty reduction index list".into()));
        }
        for i in 1..w.len() {
            if w[i] < w[i - 1] {
                return Err(Error::NonMonotoneIndices { position: i });
            }
        }
        if w[0] > 0 {
            // The quality bounds are stated for w_1 = 0; everything here
            // stays well-defined without it, so only warn.
            log::warn!(
                "reduction indices start at w_1 = {} (the quality bounds assume w_1 = 0)",
                w[0]
            );
        }
        Ok(Self { w })
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.w
    }

    pub fn get(&self, j: usize) -> u32 {
        self.w[j]
    }

    pub fn last(&self) -> u32 {
        *self.w.last().unwrap()
    }

    /// All-zero indices (the identity reduction).
    pub fn zeros(s: usize) -> Self {
        Self { w: vec![0; s] }
    }

    /// Largest 1-based index `j` with `w_j < m`; 0 if there is none.
    /// Coordinates beyond it have identically-zero points after any
    /// reduction.
    pub fn s_star(&self, m: usize) -> usize {
        let m = m as u32;
        // w is non-decreasing, so this is the partition point.
        self.w.partition_point(|&wj| wj < m)
    }
}

/// Named index schedules accepted by the command line, plus explicit
/// lists. The named schedules grow logarithmically in the coordinate
/// index (base `b`), at full and at half speed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Schedule {
    /// `w_j = min(floor(log_b j), m)`
    Log,
    /// `w_j = min(floor(log_b sqrt(j)), m)`
    LogSqrt,
    Explicit(Vec<u32>),
}

impl Schedule {
    pub fn name(&self) -> String {
        match self {
            Schedule::Log => "log2".into(),
            Schedule::LogSqrt => "log2sqrt".into(),
            Schedule::Explicit(w) => {
                let parts: Vec<String> = w.iter().map(u32::to_string).collect();
                parts.join(",")
            }
        }
    }

    pub fn indices(&self, b: u64, m: usize, s: usize) -> Result<ReductionIndices> {
        match self {
            Schedule::Explicit(w) => {
                if w.len() != s {
                    return Err(Error::InvalidParameter(format!(
                        "explicit schedule has {} entries for dimension {s}",
                        w.len()
                    )));
                }
                ReductionIndices::new(w.clone())
            }
            Schedule::Log => ReductionIndices::new(
                (1..=s as u64).map(|j| log_index(j, b, m, 1)).collect(),
            ),
            Schedule::LogSqrt => ReductionIndices::new(
                (1..=s as u64).map(|j| log_index(j, b, m, 2)).collect(),
            ),
        }
    }
}

impl std::str::FromStr for Schedule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "log2" => Ok(Schedule::Log),
            "log2sqrt" => Ok(Schedule::LogSqrt),
            list => {
                let w: Result<Vec<u32>> = list
                    .split(',')
                    .map(|tok| {
                        tok.trim().parse().map_err(|_| {
                            Error::InvalidParameter(format!("invalid reduction index {tok:?}"))
                        })
                    })
                    .collect();
                Ok(Schedule::Explicit(w?))
            }
        }
    }
}

/// `min(floor(log_b(j)) / root, m)` with integer arithmetic;
/// `floor(log_b j^(1/root)) = floor(floor(log_b j) / root)`.
fn log_index(j: u64, b: u64, m: usize, root: u32) -> u32 {
    let mut e = 0u32;
    let mut p = b;
    while p <= j {
        e += 1;
        match p.checked_mul(b) {
            Some(next) => p = next,
            None => break,
        }
    }
    (e / root).min(m as u32)
}

fn check_len(g: &GeneratingSet, w: &ReductionIndices) -> Result<()> {
    if w.len() != g.dimension() {
        return Err(Error::DimensionMismatch(format!(
            "{} reduction indices for dimension {}",
            w.len(),
            g.dimension()
        )));
    }
    Ok(())
}

fn check_sequence(g: &GeneratingSet, force: bool) -> Result<()> {
    if !g.from_sequence() {
        if !force {
            return Err(Error::NotFromSequence);
        }
        log::warn!(
            "column-type reduction on matrices not derived from a digital sequence; \
             quality guarantees do not apply"
        );
    }
    Ok(())
}

fn zero_tail(
    g: &GeneratingSet,
    keep_rows: impl Fn(usize) -> usize,
    keep_cols: impl Fn(usize) -> usize,
) -> Result<GeneratingSet> {
    let m = g.matrix_size();
    let b = g.modulus();
    let mut matrices = Vec::with_capacity(g.dimension());
    for (j, c) in g.matrices().iter().enumerate() {
        let kr = keep_rows(j);
        let kc = keep_cols(j);
        let mut out = GfMatrix::zero(b, m, m)?;
        for i in 0..kr {
            for r in 0..kc {
                out.set(i, r, c.get(i, r));
            }
        }
        matrices.push(out);
    }
    GeneratingSet::new(b, m, matrices, g.from_sequence())
}

fn kept(m: usize, wj: u32) -> usize {
    m - (wj as usize).min(m)
}

/// Zeroes the last `min(m, w_j)` rows of each matrix.
pub fn row_reduce(g: &GeneratingSet, w: &ReductionIndices) -> Result<GeneratingSet> {
    check_len(g, w)?;
    let m = g.matrix_size();
    zero_tail(g, |j| kept(m, w.get(j)), |_| m)
}

/// Zeroes the last `min(m, w_j)` columns of each matrix. Requires
/// matrices derived from a digital sequence unless `force` is set.
pub fn column_reduce(g: &GeneratingSet, w: &ReductionIndices, force: bool) -> Result<GeneratingSet> {
    check_len(g, w)?;
    check_sequence(g, force)?;
    let m = g.matrix_size();
    zero_tail(g, |_| m, |j| kept(m, w.get(j)))
}

/// Keeps only the top-left `(m - min(m, w_j))`-square block of each
/// matrix; equal to `column_reduce . row_reduce`.
pub fn column_row_reduce(
    g: &GeneratingSet,
    w: &ReductionIndices,
    force: bool,
) -> Result<GeneratingSet> {
    check_len(g, w)?;
    check_sequence(g, force)?;
    let m = g.matrix_size();
    zero_tail(g, |j| kept(m, w.get(j)), |j| kept(m, w.get(j)))
}

/// Zeroes the last `min(m, w_rows[j])` rows and the last
/// `min(m, w_cols[j])` columns of each matrix.
pub fn mixed_reduce(
    g: &GeneratingSet,
    w_rows: &ReductionIndices,
    w_cols: &ReductionIndices,
    force: bool,
) -> Result<GeneratingSet> {
    check_len(g, w_rows)?;
    check_len(g, w_cols)?;
    check_sequence(g, force)?;
    let m = g.matrix_size();
    zero_tail(g, |j| kept(m, w_rows.get(j)), |j| kept(m, w_cols.get(j)))
}

/// Applies the reduction selected by `kind`.
pub fn reduce(
    g: &GeneratingSet,
    kind: ReductionKind,
    w: &ReductionIndices,
    force: bool,
) -> Result<GeneratingSet> {
    match kind {
        ReductionKind::Row => row_reduce(g, w),
        ReductionKind::Column => column_reduce(g, w, force),
        ReductionKind::ColumnRow => column_row_reduce(g, w, force),
    }
}
