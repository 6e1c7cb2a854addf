//! The matrix-matrix product `XA` where the rows of `X` are the points of
//! a (reduced) digital net: the plain triple loop plus the three
//! structure-exploiting algorithms, all instrumented with operation
//! counts that can be held against the closed-form cost predictions.
//!
//! Everything is generic over [`Scalar`], so the same code runs in `f64`
//! and, in tests, in exact rational arithmetic.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::GfMatrix;
use crate::nets::{DigitalNet, GeneratingSet};
use crate::reduction::{column_reduce, column_row_reduce, row_reduce, ReductionIndices};
use crate::scalar::Scalar;

/// Dense row-major matrix over a scalar type.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {ncols} columns",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    /// The point matrix of a net: row `k` holds the coordinates of the
    /// `k`-th point, embedded exactly.
    pub fn from_net(net: &DigitalNet) -> Self {
        let n = net.point_count() as usize;
        let s = net.dimension();
        let den = net.denominator();
        let mut data = Vec::with_capacity(n * s);
        for k in 0..n as u64 {
            for j in 0..s {
                data.push(S::from_ratio(net.numerator(k, j), den));
            }
        }
        Self {
            rows: n,
            cols: s,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[S]> {
        self.data.chunks_exact(self.cols)
    }
}

impl Mat<f64> {
    /// Rejects NaN and infinite entries.
    pub fn validate_finite(&self) -> Result<()> {
        if self.data.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "matrix contains NaN or infinite entries".into(),
            ));
        }
        Ok(())
    }
}

/// Scalar operation counters. Multiplications and additions count real
/// arithmetic only (never index arithmetic); lookups count reads from a
/// precomputed row table.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OpCounts {
    pub scalar_mults: u64,
    pub scalar_adds: u64,
    pub table_lookups: u64,
}

/// The product algorithms the crate implements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Standard,
    RowReduced,
    ColumnReduced,
    ColumnRowReduced,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Standard,
        Algorithm::RowReduced,
        Algorithm::ColumnReduced,
        Algorithm::ColumnRowReduced,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Standard => "standard",
            Algorithm::RowReduced => "row",
            Algorithm::ColumnReduced => "column",
            Algorithm::ColumnRowReduced => "column-row",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Algorithm::Standard),
            "row" => Ok(Algorithm::RowReduced),
            "column" => Ok(Algorithm::ColumnReduced),
            "column-row" | "column_row" => Ok(Algorithm::ColumnRowReduced),
            other => Err(Error::InvalidParameter(format!(
                "unknown algorithm {other:?} (expected standard, row, column, or column-row)"
            ))),
        }
    }
}

/// Plain triple-loop product in fixed `(k, j, l)` order.
pub fn standard_product<S: Scalar>(x: &Mat<S>, a: &Mat<S>) -> Result<(Mat<S>, OpCounts)> {
    if x.cols != a.rows {
        return Err(Error::DimensionMismatch(format!(
            "X is {}x{}, A is {}x{}",
            x.rows, x.cols, a.rows, a.cols
        )));
    }
    let (n, s, tau) = (x.rows, x.cols, a.cols);
    let mut out = Mat::zeros(n, tau);
    for k in 0..n {
        for j in 0..s {
            let xv = x.get(k, j).clone();
            let arow = a.row(j);
            let orow = &mut out.data[k * tau..(k + 1) * tau];
            for (o, av) in orow.iter_mut().zip(arow) {
                *o += xv.clone() * av.clone();
            }
        }
    }
    let counts = OpCounts {
        scalar_mults: (n * s * tau) as u64,
        scalar_adds: (n * s * tau) as u64,
        table_lookups: 0,
    };
    Ok((out, counts))
}

fn check_product_inputs<S>(g: &GeneratingSet, w: &ReductionIndices, a: &Mat<S>) -> Result<()> {
    if w.len() != g.dimension() {
        return Err(Error::DimensionMismatch(format!(
            "{} reduction indices for dimension {}",
            w.len(),
            g.dimension()
        )));
    }
    if a.rows != g.dimension() {
        return Err(Error::DimensionMismatch(format!(
            "A has {} rows for dimension {}",
            a.rows,
            g.dimension()
        )));
    }
    Ok(())
}

/// `X~ A` for the row-reduced net, via one precomputed row table per
/// coordinate: the points of coordinate `j` lie on the grid with mesh
/// `b^-(m - w_j)`, so the `b^(m-w_j)` possible rows `(k / b^(m-w_j)) a_j`
/// are built once and then only looked up and accumulated.
pub fn row_reduced_product<S: Scalar>(
    g: &GeneratingSet,
    w: &ReductionIndices,
    a: &Mat<S>,
) -> Result<(Mat<S>, OpCounts)> {
    check_product_inputs(g, w, a)?;
    let reduced = row_reduce(g, w)?;
    let b = g.modulus();
    let m = g.matrix_size();
    let n = reduced.point_count()?;
    let tau = a.cols;
    let s_star = w.s_star(m);
    let mut out = Mat::zeros(n as usize, tau);
    let mut counts = OpCounts::default();
    for j in 0..s_star {
        let wj = w.get(j) as usize; // < m for j < s_star
        let table_len = b.pow((m - wj) as u32);
        let mut table: Vec<S> = Vec::with_capacity(table_len as usize * tau);
        for k in 0..table_len {
            let xv = S::from_ratio(k, table_len);
            for av in a.row(j) {
                table.push(xv.clone() * av.clone());
            }
        }
        counts.scalar_mults += table_len * tau as u64;
        // All N points of the coordinate; only the m - w_j leading output
        // digits can be nonzero.
        let nums = block_points(reduced.matrix(j), m - wj, m, b, m);
        let shift = b.pow(wj as u32);
        for (k, &num) in nums.iter().enumerate() {
            // Exact integer grid index of the point value.
            let idx = (num / shift) as usize;
            counts.table_lookups += 1;
            let trow = &table[idx * tau..(idx + 1) * tau];
            let orow = &mut out.data[k * tau..(k + 1) * tau];
            for (o, t) in orow.iter_mut().zip(trow) {
                *o += t.clone();
            }
            counts.scalar_adds += tau as u64;
        }
    }
    Ok((out, counts))
}

/// Numerators of the first `b^keep_cols` points of one coordinate, using
/// only the leading `keep_rows x keep_cols` block of the matrix.
fn block_points(c: &GfMatrix, keep_rows: usize, keep_cols: usize, b: u64, m: usize) -> Vec<u64> {
    let count = b.pow(keep_cols as u32);
    let weights: Vec<u64> = (0..m).map(|i| b.pow((m - 1 - i) as u32)).collect();
    let mut digits = vec![0u8; keep_cols];
    let mut out = Vec::with_capacity(count as usize);
    for k in 0..count {
        let mut rest = k;
        for d in digits.iter_mut() {
            *d = (rest % b) as u8;
            rest /= b;
        }
        let mut num = 0u64;
        for (i, weight) in weights.iter().enumerate().take(keep_rows) {
            let mut acc = 0u64;
            for (r, d) in digits.iter().enumerate() {
                acc += c.get(i, r) as u64 * *d as u64;
            }
            num += acc % b * weight;
        }
        out.push(num);
    }
    out
}

/// Shared engine for the column and column-row algorithms: per
/// coordinate only the leading block of points is materialized, the
/// running sum is tiled up to the next block size, and the final sum is
/// tiled to the full `b^m` rows.
fn tiled_product<S: Scalar>(
    reduced: &GeneratingSet,
    w: &ReductionIndices,
    a: &Mat<S>,
    keep_rows_of: impl Fn(usize, usize) -> usize,
) -> Result<(Mat<S>, OpCounts)> {
    let b = reduced.modulus();
    let m = reduced.matrix_size();
    let n = reduced.point_count()?;
    let tau = a.cols;
    let s_star = w.s_star(m);
    let mut counts = OpCounts::default();
    if s_star == 0 {
        // Every coordinate is identically zero.
        return Ok((Mat::zeros(n as usize, tau), counts));
    }
    let coord_values = |j: usize| -> (Vec<u64>, u64) {
        let wj = w.get(j) as usize;
        let keep_cols = m - wj;
        let nums = block_points(
            reduced.matrix(j),
            keep_rows_of(m, wj),
            keep_cols,
            b,
            m,
        );
        (nums, b.pow(keep_cols as u32))
    };

    // Start with the smallest block, coordinate s_star.
    let (nums, block) = coord_values(s_star - 1);
    let den = n;
    let mut acc: Vec<S> = Vec::with_capacity(block as usize * tau);
    for &num in &nums {
        let xv = S::from_ratio(num, den);
        for av in a.row(s_star - 1) {
            acc.push(xv.clone() * av.clone());
        }
    }
    counts.scalar_mults += block * tau as u64;
    let mut acc_rows = block;

    for j in (0..s_star - 1).rev() {
        let (nums, block) = coord_values(j);
        // Tile the accumulator up to this coordinate's block size.
        if acc_rows < block {
            let len = acc_rows as usize * tau;
            for _ in 1..block / acc_rows {
                acc.extend_from_within(0..len);
            }
            acc_rows = block;
        }
        for (k, &num) in nums.iter().enumerate() {
            let xv = S::from_ratio(num, den);
            let arow = a.row(j);
            let orow = &mut acc[k * tau..(k + 1) * tau];
            for (o, av) in orow.iter_mut().zip(arow) {
                *o += xv.clone() * av.clone();
            }
        }
        counts.scalar_mults += block * tau as u64;
        counts.scalar_adds += block * tau as u64;
    }

    // Final tiling to the full point count.
    if acc_rows < n {
        let len = acc_rows as usize * tau;
        for _ in 1..n / acc_rows {
            acc.extend_from_within(0..len);
        }
    }
    Ok((
        Mat {
            rows: n as usize,
            cols: tau,
            data: acc,
        },
        counts,
    ))
}

/// `X~ A` for the column-reduced net: coordinate `j` repeats its leading
/// `b^(m - w_j)` points vertically, so the partial sums are computed at
/// block size and duplicated instead of recomputed.
pub fn column_reduced_product<S: Scalar>(
    g: &GeneratingSet,
    w: &ReductionIndices,
    a: &Mat<S>,
    force: bool,
) -> Result<(Mat<S>, OpCounts)> {
    check_product_inputs(g, w, a)?;
    let reduced = column_reduce(g, w, force)?;
    tiled_product(&reduced, w, a, |m, _| m)
}

/// `X~ A` for the column-row-reduced net: identical to the column
/// algorithm, but point generation touches only the leading square
/// block of each matrix.
pub fn column_row_reduced_product<S: Scalar>(
    g: &GeneratingSet,
    w: &ReductionIndices,
    a: &Mat<S>,
    force: bool,
) -> Result<(Mat<S>, OpCounts)> {
    check_product_inputs(g, w, a)?;
    let reduced = column_row_reduce(g, w, force)?;
    tiled_product(&reduced, w, a, |m, wj| m - wj)
}

/// Closed-form operation counts (the expressions inside the O(.) with
/// constant 1), split into the product part and the point-generation
/// part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TheoreticalCosts {
    pub product_mults: u64,
    pub generation_ops: u64,
}

pub fn theoretical_costs(
    b: u64,
    m: usize,
    s: usize,
    tau: usize,
    w: &ReductionIndices,
    algorithm: Algorithm,
) -> TheoreticalCosts {
    let n = b.pow(m as u32);
    let s_star = w.s_star(m);
    let reduced_sum = |f: &dyn Fn(usize) -> u64| -> u64 {
        (0..s_star).map(|j| f(m - w.get(j) as usize)).sum()
    };
    match algorithm {
        Algorithm::Standard => TheoreticalCosts {
            product_mults: n * s as u64 * tau as u64,
            generation_ops: n * s as u64 * (m * m) as u64,
        },
        Algorithm::RowReduced => TheoreticalCosts {
            product_mults: reduced_sum(&|keep| b.pow(keep as u32) * tau as u64),
            generation_ops: reduced_sum(&|keep| n * (m * keep) as u64),
        },
        Algorithm::ColumnReduced => TheoreticalCosts {
            product_mults: reduced_sum(&|keep| b.pow(keep as u32) * tau as u64),
            generation_ops: reduced_sum(&|keep| b.pow(keep as u32) * (m * keep) as u64),
        },
        Algorithm::ColumnRowReduced => TheoreticalCosts {
            product_mults: reduced_sum(&|keep| b.pow(keep as u32) * tau as u64),
            generation_ops: reduced_sum(&|keep| b.pow(keep as u32) * (keep * keep) as u64),
        },
    }
}
