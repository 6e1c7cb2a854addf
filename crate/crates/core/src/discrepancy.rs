//! The weighted star discrepancy: the computable upper bound for reduced
//! nets (three-term maximum with exact rational coefficients) and exact
//! small-instance oracles to dominate it against.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::nets::DigitalNet;
use crate::reduction::{ReductionIndices, ReductionKind};

/// Default cap on `s*` for exhaustive subset enumeration in the bound.
pub const DEFAULT_SUBSET_LIMIT: usize = 15;

/// Budget for the exact star-discrepancy oracle.
pub const ORACLE_MAX_POINTS: u64 = 256;
pub const ORACLE_MAX_DIM: usize = 3;

/// Positive, non-increasing product weights `gamma_1 >= gamma_2 >= ...`;
/// the weight of a coordinate subset is the product of its members.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductWeights {
    gamma: Vec<f64>,
}

impl ProductWeights {
    pub fn new(gamma: Vec<f64>) -> Result<Self> {
        if gamma.is_empty() {
            return Err(Error::InvalidParameter("empty weight list".into()));
        }
        if gamma.iter().any(|&g| !(g > 0.0) || !g.is_finite()) {
            return Err(Error::InvalidParameter(
                "weights must be positive finite reals".into(),
            ));
        }
        if gamma.windows(2).any(|p| p[1] > p[0]) {
            return Err(Error::InvalidParameter(
                "weights must be non-increasing".into(),
            ));
        }
        Ok(Self { gamma })
    }

    /// `gamma_j = j^(-exponent)`.
    pub fn power_law(s: usize, exponent: f64) -> Result<Self> {
        if exponent < 0.0 {
            return Err(Error::InvalidParameter(
                "power-law exponent must be >= 0".into(),
            ));
        }
        Self::new((1..=s).map(|j| (j as f64).powf(-exponent)).collect())
    }

    pub fn constant(s: usize, value: f64) -> Result<Self> {
        Self::new(vec![value; s])
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    /// Weight of coordinate `j` (0-based).
    pub fn gamma(&self, j: usize) -> f64 {
        self.gamma[j]
    }

    /// Product weight of the subset encoded as a bitmask.
    pub fn gamma_of_mask(&self, mask: u64) -> f64 {
        (0..self.gamma.len())
            .filter(|j| mask >> j & 1 == 1)
            .map(|j| self.gamma[j])
            .product()
    }

    /// Product weight of a 0-based index set.
    pub fn gamma_of_set(&self, u: &[usize]) -> f64 {
        u.iter().map(|&j| self.gamma[j]).product()
    }
}

/// Where the per-projection quality parameters of the unreduced net come
/// from: one global `t` (every projection of a `(t, m, s)`-net is a
/// `(min(t, m), m, |u|)`-net) or an exact table keyed by coordinate
/// bitmask.
#[derive(Debug, Clone)]
pub enum TAssignment {
    Global(usize),
    PerSubset(HashMap<u64, usize>),
}

impl TAssignment {
    fn t_u(&self, mask: u64, m: usize) -> Result<usize> {
        match self {
            TAssignment::Global(t) => Ok((*t).min(m)),
            TAssignment::PerSubset(map) => map.get(&mask).copied().ok_or_else(|| {
                Error::InvalidParameter(format!("no t value for subset mask {mask:#b}"))
            }),
        }
    }
}

/// Everything the discrepancy bound needs.
#[derive(Debug, Clone)]
pub struct BoundInputs {
    pub b: u64,
    pub m: usize,
    pub w: ReductionIndices,
    pub weights: ProductWeights,
    pub t: TAssignment,
}

impl BoundInputs {
    pub fn new(
        b: u64,
        m: usize,
        w: ReductionIndices,
        weights: ProductWeights,
        t: TAssignment,
    ) -> Result<Self> {
        if weights.len() != w.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} reduction indices",
                weights.len(),
                w.len()
            )));
        }
        if let TAssignment::Global(t) = &t {
            if *t > m {
                return Err(Error::InvalidParameter(format!(
                    "global t = {t} exceeds m = {m}"
                )));
            }
        }
        Ok(Self {
            b,
            m,
            w,
            weights,
            t,
        })
    }

    fn dimension(&self) -> usize {
        self.w.len()
    }
}

fn binomial(n: usize, k: isize) -> BigInt {
    if k < 0 || k as usize > n {
        return BigInt::zero();
    }
    let k = k as usize;
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn factorial(v: usize) -> BigInt {
    (1..=v).map(BigInt::from).product()
}

/// Base coefficients of the two-dimensional discrepancy bound.
fn a_base(b: u64) -> (BigRational, BigRational) {
    let bi = b as i64;
    if b % 2 == 0 {
        (ratio(bi + 8, 4), ratio(bi * bi, 4 * (bi + 1)))
    } else {
        (ratio(bi + 4, 2), ratio(bi - 1, 4))
    }
}

/// The coefficient `a_{v,b}^{(q)}` of the `m^v` term in the projection
/// discrepancy bound for subsets of size `q >= 2`, as an exact rational.
pub fn a_coeff(v: usize, b: u64, u_size: usize) -> Result<BigRational> {
    if u_size < 2 {
        return Err(Error::InvalidParameter(format!(
            "a_coeff needs a subset size >= 2, got {u_size}"
        )));
    }
    if v > u_size - 1 {
        return Err(Error::InvalidParameter(format!(
            "v = {v} out of range for subset size {u_size}"
        )));
    }
    let (a0, a1) = a_base(b);
    let q = u_size;
    let half_b2 = ratio(b as i64 + 2, 2);
    let bm1 = BigInt::from(b - 1);

    let mut total = BigRational::zero();
    let c1 = binomial(q - 2, v as isize);
    if !c1.is_zero() {
        let pow = half_b2.pow((q - 2 - v) as i32);
        let frac = BigRational::new(bm1.pow(v as u32), BigInt::from(2u32).pow(v as u32) * factorial(v));
        let tail = a0.clone() + ratio((q * q) as i64 - 4, 1);
        total += BigRational::from(c1) * pow * frac * tail;
    }
    let c2 = binomial(q - 2, v as isize - 1);
    if !c2.is_zero() {
        // Here v >= 1.
        let pow = half_b2.pow((q - 1 - v) as i32);
        let frac = BigRational::new(
            bm1.pow((v - 1) as u32),
            BigInt::from(2u32).pow((v - 1) as u32) * factorial(v),
        );
        total += BigRational::from(c2) * pow * frac * a1;
    }
    Ok(total)
}

/// Exact ratio `b^t / b^m` for `t <= m`.
fn b_power_ratio(b: u64, t: usize, m: usize) -> BigRational {
    debug_assert!(t <= m);
    BigRational::new(BigInt::one(), BigInt::from(b).pow((m - t) as u32))
}

/// The first term of the bound: the maximum of
/// `(1/b^m) prod_{j in u} gamma_j (1 + b^(w_j))` over non-empty subsets
/// that reach beyond `[s*]`. Computed in closed form: take every factor
/// above 1; if none of those lies beyond `s*`, append the largest factor
/// beyond `s*`. Returns `None` when `s* = s` (the term is vacuous).
pub fn term1_bound(inputs: &BoundInputs) -> Option<(f64, Vec<usize>)> {
    let s = inputs.dimension();
    let s_star = inputs.w.s_star(inputs.m);
    if s_star == s {
        return None;
    }
    let factor = |j: usize| -> f64 {
        inputs.weights.gamma(j) * (1.0 + (inputs.b as f64).powi(inputs.w.get(j) as i32))
    };
    let mut subset: Vec<usize> = (0..s).filter(|&j| factor(j) > 1.0).collect();
    let mut product: f64 = subset.iter().map(|&j| factor(j)).product();
    if !subset.iter().any(|&j| j >= s_star) {
        // Must include at least one coordinate beyond s*.
        let best = (s_star..s)
            .max_by(|&x, &y| factor(x).partial_cmp(&factor(y)).unwrap())
            .unwrap();
        product *= factor(best);
        subset.push(best);
        subset.sort_unstable();
    }
    let scale = (inputs.b as f64).powi(inputs.m as i32);
    Some((product / scale, subset))
}

/// One evaluated discrepancy bound with its term breakdown. Subsets are
/// reported as 1-based coordinate lists.
#[derive(Debug, Clone, Serialize)]
pub struct DiscBound {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub term1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub term2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub term3: Option<f64>,
    pub bound: f64,
    pub argmax_subset: Vec<usize>,
}

/// Evaluates the three-term upper bound on the weighted star discrepancy
/// of the reduced net. The reduction kind selects the exponent
/// `T_u = min{m, max{w_max(u), t_u}}` (row) or `min{m, w_max(u) + t_u}`
/// (column and column-row).
pub fn weighted_disc_bound(inputs: &BoundInputs, kind: ReductionKind) -> Result<DiscBound> {
    weighted_disc_bound_with(inputs, kind, None, DEFAULT_SUBSET_LIMIT)
}

pub fn weighted_disc_bound_with(
    inputs: &BoundInputs,
    kind: ReductionKind,
    subsets: Option<&[Vec<usize>]>,
    subset_limit: usize,
) -> Result<DiscBound> {
    let b = inputs.b;
    let m = inputs.m;
    let s_star = inputs.w.s_star(m);

    let exponent = |wu: usize, tu: usize| -> usize {
        match kind {
            ReductionKind::Row => m.min(wu.max(tu)),
            ReductionKind::Column | ReductionKind::ColumnRow => m.min(wu + tu),
        }
    };

    let term1 = term1_bound(inputs);

    // Term 2: singletons within [s*].
    let mut term2: Option<(f64, Vec<usize>)> = None;
    for j in 0..s_star {
        let t_j = inputs.t.t_u(1 << j, m)?;
        let expo = exponent(inputs.w.get(j) as usize, t_j);
        let value = inputs.weights.gamma(j) * b_power_ratio(b, expo, m).to_f64().unwrap();
        if term2.as_ref().map_or(true, |(best, _)| value > *best) {
            term2 = Some((value, vec![j]));
        }
    }

    // Term 3: subsets of [s*] of size >= 2.
    let mut term3: Option<(f64, Vec<usize>)> = None;
    let mut eval_subset = |u: &[usize]| -> Result<()> {
        let q = u.len();
        let mask = u.iter().fold(0u64, |acc, &j| acc | 1 << j);
        let t_u = inputs.t.t_u(mask, m)?;
        let wu = inputs.w.get(*u.last().unwrap()) as usize;
        let expo = exponent(wu, t_u);
        // sum_v a_{v,b}^{(q)} m^v, exactly.
        let mut sum = BigRational::zero();
        for v in 0..q {
            sum += a_coeff(v, b, q)? * BigRational::from(BigInt::from(m).pow(v as u32));
        }
        let exact = b_power_ratio(b, expo, m) * sum;
        let value = inputs.weights.gamma_of_set(u) * exact.to_f64().unwrap();
        if term3.as_ref().map_or(true, |(best, _)| value > *best) {
            term3 = Some((value, u.to_vec()));
        }
        Ok(())
    };

    match subsets {
        Some(list) => {
            for u in list {
                let mut u = u.clone();
                u.sort_unstable();
                u.dedup();
                if u.len() < 2 {
                    continue;
                }
                if u.iter().any(|&j| j >= s_star) {
                    return Err(Error::InvalidParameter(format!(
                        "explicit subset {u:?} reaches beyond s* = {s_star}"
                    )));
                }
                eval_subset(&u)?;
            }
        }
        None => {
            if s_star > subset_limit {
                return Err(Error::BudgetExceeded(format!(
                    "subset enumeration over s* = {s_star} exceeds the limit {subset_limit}; \
                     pass an explicit subset family"
                )));
            }
            for mask in 1u64..(1 << s_star) {
                if mask.count_ones() < 2 {
                    continue;
                }
                let u: Vec<usize> = (0..s_star).filter(|j| mask >> j & 1 == 1).collect();
                eval_subset(&u)?;
            }
        }
    }

    let mut bound = f64::NEG_INFINITY;
    let mut argmax: Vec<usize> = Vec::new();
    for (value, subset) in [&term1, &term2, &term3].into_iter().flatten() {
        if *value > bound {
            bound = *value;
            argmax = subset.clone();
        }
    }
    if !bound.is_finite() && bound == f64::NEG_INFINITY {
        return Err(Error::InvalidParameter(
            "the bound has no applicable term (empty dimension?)".into(),
        ));
    }
    Ok(DiscBound {
        term1: term1.map(|(v, _)| v),
        term2: term2.map(|(v, _)| v),
        term3: term3.map(|(v, _)| v),
        bound,
        argmax_subset: argmax.iter().map(|j| j + 1).collect(),
    })
}

fn check_projection(net: &DigitalNet, u: &[usize]) -> Result<()> {
    if u.is_empty() {
        return Err(Error::InvalidParameter("empty coordinate subset".into()));
    }
    if u.iter().any(|&j| j >= net.dimension()) {
        return Err(Error::InvalidParameter(format!(
            "subset {u:?} out of range for dimension {}",
            net.dimension()
        )));
    }
    Ok(())
}

/// The local discrepancy of the projection onto `u` (0-based) at the
/// anchor `x`: counted fraction of points strictly dominated by `x`
/// minus the box volume.
pub fn local_discrepancy(net: &DigitalNet, u: &[usize], x: &[f64]) -> Result<f64> {
    check_projection(net, u)?;
    if x.len() != u.len() || x.iter().any(|&v| !(v > 0.0 && v <= 1.0)) {
        return Err(Error::InvalidParameter(
            "anchor must lie in (0, 1]^|u|".into(),
        ));
    }
    let n = net.point_count();
    let den = net.denominator() as f64;
    let mut count = 0u64;
    for k in 0..n {
        if u.iter()
            .zip(x)
            .all(|(&j, &xj)| (net.numerator(k, j) as f64) < xj * den)
        {
            count += 1;
        }
    }
    Ok(count as f64 / n as f64 - x.iter().product::<f64>())
}

/// Exact star discrepancy of the projection onto `u` (|u| <= 3,
/// N <= 256): the supremum of |local discrepancy| over anchors in
/// `(0,1]^|u|`, reported with limit values attained.
///
/// The supremum over half-open boxes is realized on the grid spanned by
/// the point coordinates and 1: at every grid corner it suffices to
/// compare the closed count from above (`count_<= / N - vol`) and the
/// open count from below (`vol - count_< / N`).
pub fn exact_star_discrepancy(net: &DigitalNet, u: &[usize]) -> Result<f64> {
    check_projection(net, u)?;
    let n = net.point_count();
    if u.len() > ORACLE_MAX_DIM || n > ORACLE_MAX_POINTS {
        return Err(Error::BudgetExceeded(format!(
            "exact star discrepancy limited to |u| <= {ORACLE_MAX_DIM}, N <= {ORACLE_MAX_POINTS}"
        )));
    }
    let d = u.len();
    let den = net.denominator();

    // Per-dimension grids: distinct coordinate numerators plus b^m (= 1).
    let grids: Vec<Vec<u64>> = u
        .iter()
        .map(|&j| {
            let mut vals = net.column(j);
            vals.push(den);
            vals.sort_unstable();
            vals.dedup();
            vals
        })
        .collect();

    // Points projected to u.
    let points: Vec<Vec<u64>> = (0..n)
        .map(|k| u.iter().map(|&j| net.numerator(k, j)).collect())
        .collect();

    let n_i = n as i128;
    let den_pow = (den as i128).pow(d as u32);
    let scale = (n_i * den_pow) as f64;
    let mut best: i128 = i128::MIN;

    // Iterate over corners of the outer dimensions; scan the last
    // dimension with sorted prefixes.
    let outer_dims = d - 1;
    let mut idx = vec![0usize; outer_dims];
    loop {
        let corner: Vec<u64> = (0..outer_dims).map(|i| grids[i][idx[i]]).collect();
        let outer_vol: i128 = corner.iter().map(|&c| c as i128).product();

        // Last coordinates of points inside the outer prefix, for both
        // box closures.
        let mut closed: Vec<u64> = Vec::new();
        let mut open: Vec<u64> = Vec::new();
        for p in &points {
            let le = (0..outer_dims).all(|i| p[i] <= corner[i]);
            let lt = (0..outer_dims).all(|i| p[i] < corner[i]);
            if le {
                closed.push(p[outer_dims]);
            }
            if lt {
                open.push(p[outer_dims]);
            }
        }
        closed.sort_unstable();
        open.sort_unstable();

        for &last in &grids[outer_dims] {
            let vol = outer_vol * last as i128; // over den^d
            let count_le = closed.partition_point(|&v| v <= last) as i128;
            let count_lt = open.partition_point(|&v| v < last) as i128;
            // count_le / N - vol / den^d and vol / den^d - count_lt / N,
            // both over the common denominator N * den^d.
            best = best.max(count_le * den_pow - n_i * vol);
            best = best.max(n_i * vol - count_lt * den_pow);
        }

        // Odometer over the outer grid.
        let mut pos = 0;
        loop {
            if pos == outer_dims {
                return Ok(best as f64 / scale);
            }
            idx[pos] += 1;
            if idx[pos] < grids[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Exact weighted star discrepancy: the maximum over non-empty
/// projections of `gamma_u` times the exact star discrepancy.
pub fn exact_weighted_star_discrepancy(
    net: &DigitalNet,
    weights: &ProductWeights,
) -> Result<f64> {
    let s = net.dimension();
    if s > ORACLE_MAX_DIM {
        return Err(Error::BudgetExceeded(format!(
            "exact weighted star discrepancy limited to s <= {ORACLE_MAX_DIM}"
        )));
    }
    if weights.len() != s {
        return Err(Error::DimensionMismatch(format!(
            "{} weights for dimension {s}",
            weights.len()
        )));
    }
    let mut best = f64::NEG_INFINITY;
    for mask in 1u64..(1 << s) {
        let u: Vec<usize> = (0..s).filter(|j| mask >> j & 1 == 1).collect();
        let disc = exact_star_discrepancy(net, &u)?;
        best = best.max(weights.gamma_of_mask(mask) * disc);
    }
    Ok(best)
}
