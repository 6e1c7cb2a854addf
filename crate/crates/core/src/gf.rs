//! Exact dense linear algebra over the prime field `F_b`.
//!
//! Matrices store one digit per entry (`u8`), which is the semantic
//! reference for every modulus. All arithmetic is carried out in `u64`
//! before the final `% b`, so no intermediate can overflow for any
//! prime `b < 256`.

use crate::error::{Error, Result};

/// Returns true iff `b` is a prime number (trial division).
pub fn is_prime(b: u64) -> bool {
    if b < 2 {
        return false;
    }
    if b % 2 == 0 {
        return b == 2;
    }
    let mut d = 3;
    while d * d <= b {
        if b % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn check_prime(b: u64) -> Result<u8> {
    if !is_prime(b) {
        return Err(Error::NotPrime(b));
    }
    if b > u8::MAX as u64 {
        return Err(Error::InvalidParameter(format!(
            "modulus {b} too large (must fit in one byte)"
        )));
    }
    Ok(b as u8)
}

/// Multiplicative inverse of `a` modulo the prime `b`, for `a != 0`.
fn mod_inverse(a: u64, b: u64) -> u64 {
    debug_assert!(a != 0 && a < b);
    // Fermat: a^(b-2) mod b.
    let mut result = 1u64;
    let mut base = a % b;
    let mut exp = b - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % b;
        }
        base = base * base % b;
        exp >>= 1;
    }
    result
}

/// A dense matrix over `F_b` with `b` prime, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfMatrix {
    b: u8,
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
}

impl GfMatrix {
    /// All-zero matrix.
    pub fn zero(b: u64, rows: usize, cols: usize) -> Result<Self> {
        let b = check_prime(b)?;
        Ok(Self {
            b,
            rows,
            cols,
            entries: vec![0; rows * cols],
        })
    }

    /// Identity matrix of the given size.
    pub fn identity(b: u64, n: usize) -> Result<Self> {
        let mut m = Self::zero(b, n, n)?;
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        Ok(m)
    }

    /// Builds a matrix from row slices, validating every digit.
    pub fn from_rows(b: u64, rows: &[Vec<u8>]) -> Result<Self> {
        let b = check_prime(b)?;
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {} columns",
                    row.len(),
                    ncols
                )));
            }
            for &e in row {
                if e >= b {
                    return Err(Error::DigitOutOfRange {
                        digit: e as u64,
                        modulus: b as u64,
                    });
                }
                entries.push(e);
            }
        }
        Ok(Self {
            b,
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.b as u64
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, r: usize) -> u8 {
        self.entries[i * self.cols + r]
    }

    /// Sets entry `(i, r)`; the digit must be `< b`.
    pub fn set(&mut self, i: usize, r: usize, value: u8) {
        assert!(value < self.b, "digit {value} out of range");
        self.entries[i * self.cols + r] = value;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[u8]> {
        (0..self.rows).map(|i| self.row(i))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self {
            b: self.b,
            rows: self.cols,
            cols: self.rows,
            entries: vec![0; self.entries.len()],
        };
        for i in 0..self.rows {
            for r in 0..self.cols {
                t.entries[r * self.rows + i] = self.get(i, r);
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Matrix product over `F_b`.
    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || self.b != other.b {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} (mod {}) times {}x{} (mod {})",
                self.rows, self.cols, self.b, other.rows, other.cols, other.b
            )));
        }
        let b = self.b as u64;
        let mut out = Self::zero(b, self.rows, other.cols)?;
        for i in 0..self.rows {
            for r in 0..other.cols {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc += self.get(i, k) as u64 * other.get(k, r) as u64;
                }
                out.entries[i * other.cols + r] = (acc % b) as u8;
            }
        }
        Ok(out)
    }

    /// Matrix-vector product over `F_b`.
    pub fn mat_vec(&self, v: &[u8]) -> Result<Vec<u8>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let b = self.b as u64;
        let mut out = vec![0u8; self.rows];
        for i in 0..self.rows {
            let row = self.row(i);
            let mut acc = 0u64;
            for (c, d) in row.iter().zip(v) {
                acc += *c as u64 * *d as u64;
            }
            out[i] = (acc % b) as u8;
        }
        Ok(out)
    }

    /// Rank over `F_b`, by Gaussian elimination with the first nonzero
    /// pivot in column order (deterministic).
    pub fn rank(&self) -> usize {
        let mut elim = GfEliminator::new(self.b as u64, self.cols);
        let mut rank = 0;
        for i in 0..self.rows {
            if elim.push_row(self.row(i)) {
                rank += 1;
            }
        }
        rank
    }
}

/// Tests whether a system of digit vectors is linearly independent over `F_b`.
/// The empty system is independent.
pub fn rows_independent(rows: &[Vec<u8>], b: u64) -> Result<bool> {
    check_prime(b)?;
    let ncols = rows.first().map_or(0, Vec::len);
    let mut elim = GfEliminator::new(b, ncols);
    for row in rows {
        if row.len() != ncols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a system of length-{} vectors",
                row.len(),
                ncols
            )));
        }
        for &e in row {
            if e as u64 >= b {
                return Err(Error::DigitOutOfRange {
                    digit: e as u64,
                    modulus: b,
                });
            }
        }
        if !elim.push_row(row) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Incremental Gaussian eliminator over `F_b`.
///
/// Rows are pushed one at a time; each push reports whether the row was
/// independent of everything pushed so far. `truncate` rolls the state
/// back to an earlier checkpoint, which makes the backtracking search in
/// the quality module cheap.
pub(crate) struct GfEliminator {
    b: u64,
    ncols: usize,
    // Echelon rows sorted by pivot column, each normalized to a unit
    // pivot and with its first nonzero at that pivot; pivots[k] is the
    // pivot column of echelon[k].
    echelon: Vec<Vec<u8>>,
    pivots: Vec<usize>,
    // Insertion positions in push order, so rollback can remove exactly
    // the most recent rows even though they sit sorted.
    history: Vec<usize>,
}

impl GfEliminator {
    pub fn new(b: u64, ncols: usize) -> Self {
        Self {
            b,
            ncols,
            echelon: Vec::new(),
            pivots: Vec::new(),
            history: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.echelon.len()
    }

    /// Rolls back to a state with `len` stored rows, undoing the most
    /// recent pushes in reverse order.
    pub fn truncate(&mut self, len: usize) {
        while self.history.len() > len {
            let pos = self.history.pop().unwrap();
            self.echelon.remove(pos);
            self.pivots.remove(pos);
        }
    }

    /// Reduces `row` against the stored echelon rows. Returns true (and
    /// stores the reduced row) iff it is independent of them.
    pub fn push_row(&mut self, row: &[u8]) -> bool {
        debug_assert_eq!(row.len(), self.ncols);
        let b = self.b;
        let mut work: Vec<u8> = row.to_vec();
        // Pivots ascend, and each stored row starts with zeros up to its
        // pivot, so one pass clears every pivot column for good.
        for (piv, ech) in self.pivots.iter().zip(&self.echelon) {
            let factor = work[*piv] as u64;
            if factor != 0 {
                // work -= factor * ech  (ech has a unit pivot)
                for (w, e) in work.iter_mut().zip(ech) {
                    let v = (*w as u64 + (b - factor) * *e as u64) % b;
                    *w = v as u8;
                }
            }
        }
        let Some(lead) = work.iter().position(|&e| e != 0) else {
            return false;
        };
        let inv = mod_inverse(work[lead] as u64, b);
        for w in work.iter_mut() {
            *w = (*w as u64 * inv % b) as u8;
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.echelon.insert(pos, work);
        self.history.push(pos);
        true
    }
}
