//! Quality certification: the linear-independence parameter `rho_m`,
//! minimal t-values, a brute-force elementary-interval oracle, and checks
//! of every bound the reductions come with.
//!
//! For a digital net the minimal quality parameter equals `m - rho_m`, so
//! the oracle and the algebraic route must agree exactly; the test suites
//! assert this.

use serde::Serialize;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf::{GfEliminator, GfMatrix};
use crate::nets::{DigitalNet, GeneratingSet};
use crate::reduction::{
    column_row_reduce, mixed_reduce, reduce, row_reduce, ReductionIndices, ReductionKind,
};

/// Default cap on the number of row systems examined per candidate level
/// of the `rho_m` search.
pub const DEFAULT_COMPOSITION_BUDGET: u64 = 10_000_000;

/// Default cap on `compositions x points` work in the elementary-interval
/// oracle.
pub const DEFAULT_ORACLE_BUDGET: u64 = 100_000_000;

/// Default cap on the dimension for exhaustive projection enumeration.
pub const DEFAULT_PROJECTION_LIMIT: usize = 10;

/// Largest `d` such that for every split `d_1 + ... + d_s = d` the
/// collected first `d_j` rows of the matrices are linearly independent
/// over `F_b`.
pub fn rho_m(g: &GeneratingSet) -> Result<usize> {
    rho_m_with_budget(g, DEFAULT_COMPOSITION_BUDGET)
}

pub fn rho_m_with_budget(g: &GeneratingSet, budget: u64) -> Result<usize> {
    rho_of_matrices(g.matrices(), g.modulus(), g.matrix_size(), budget)
}

fn rho_of_matrices(mats: &[GfMatrix], b: u64, m: usize, budget: u64) -> Result<usize> {
    // Once some level d has a dependent system, every higher level has
    // one too (extend the failing split), so the first failing level
    // determines rho.
    for d in 1..=m {
        if !level_independent(mats, b, m, d, budget)? {
            return Ok(d - 1);
        }
    }
    Ok(m)
}

/// Checks whether every split of `d` rows across the matrices is
/// independent. Splits are enumerated depth-first with one shared
/// eliminator so that prefixes are reduced only once; any dependency
/// found mid-push already decides the level because `d <= m` guarantees
/// the partial split extends to a full one.
fn level_independent(
    mats: &[GfMatrix],
    b: u64,
    m: usize,
    d: usize,
    budget: u64,
) -> Result<bool> {
    struct Search<'a> {
        mats: &'a [GfMatrix],
        m: usize,
        budget: u64,
        examined: u64,
        elim: GfEliminator,
    }

    impl Search<'_> {
        fn run(&mut self, j: usize, remaining: usize) -> Result<bool> {
            let last = j == self.mats.len() - 1;
            let checkpoint = self.elim.len();
            let cap = remaining.min(self.m);
            let tail_capacity = (self.mats.len() - 1 - j) * self.m;
            for part in 0..=cap {
                if part > 0 && !self.elim.push_row(self.mats[j].row(part - 1)) {
                    self.elim.truncate(checkpoint);
                    return Ok(false);
                }
                if last {
                    if part == remaining {
                        self.examined += 1;
                        if self.examined > self.budget {
                            return Err(Error::BudgetExceeded(format!(
                                "more than {} row systems at one level: too large for exact rho",
                                self.budget
                            )));
                        }
                    }
                } else if remaining - part <= tail_capacity && !self.run(j + 1, remaining - part)? {
                    self.elim.truncate(checkpoint);
                    return Ok(false);
                }
            }
            self.elim.truncate(checkpoint);
            Ok(true)
        }
    }

    let mut search = Search {
        mats,
        m,
        budget,
        examined: 0,
        elim: GfEliminator::new(b, m),
    };
    search.run(0, d)
}

/// Minimal quality parameter of the digital net generated by `g`,
/// `m - rho_m(g)`.
pub fn min_t(g: &GeneratingSet) -> Result<usize> {
    Ok(g.matrix_size() - rho_m(g)?)
}

pub fn min_t_with_budget(g: &GeneratingSet, budget: u64) -> Result<usize> {
    Ok(g.matrix_size() - rho_m_with_budget(g, budget)?)
}

/// Minimal quality parameter of the projection onto the (0-based)
/// coordinates in `u`.
pub fn projection_t(g: &GeneratingSet, u: &[usize]) -> Result<usize> {
    min_t(&g.project(u)?)
}

/// Brute-force minimal t: the smallest `t` such that every elementary
/// interval of volume `b^(t-m)` contains exactly `b^t` points. Counting
/// is exact on numerators.
pub fn oracle_min_t(net: &DigitalNet) -> Result<usize> {
    oracle_min_t_with_budget(net, DEFAULT_ORACLE_BUDGET)
}

pub fn oracle_min_t_with_budget(net: &DigitalNet, budget: u64) -> Result<usize> {
    let m = net.matrix_size();
    let mut work = 0u64;
    for t in 0..=m {
        if net_property_holds(net, t, budget, &mut work)? {
            return Ok(t);
        }
    }
    // t = m always holds: the whole cube contains all b^m points.
    unreachable!("the (m, m, s) property cannot fail");
}

fn net_property_holds(
    net: &DigitalNet,
    t: usize,
    budget: u64,
    work: &mut u64,
) -> Result<bool> {
    let b = net.modulus();
    let m = net.matrix_size();
    let s = net.dimension();
    let n = net.point_count();
    let d_total = m - t;
    let expected = b.pow(t as u32);
    let num_boxes = b.pow(d_total as u32) as usize;
    let mut split = vec![0usize; s];
    split[0] = d_total;
    let mut counts = vec![0u64; num_boxes];
    loop {
        *work += n;
        if *work > budget {
            return Err(Error::BudgetExceeded(
                "elementary-interval oracle budget exceeded".into(),
            ));
        }
        counts[..num_boxes].fill(0);
        // Cell index of point k: digits num_j / b^(m - d_j), mixed-radix
        // packed with radix b^(d_j) per coordinate.
        for k in 0..n {
            let mut idx = 0u64;
            for (j, &dj) in split.iter().enumerate() {
                let cell = net.numerator(k, j) / b.pow((m - dj) as u32);
                idx = idx * b.pow(dj as u32) + cell;
            }
            counts[idx as usize] += 1;
        }
        if counts[..num_boxes].iter().any(|&c| c != expected) {
            return Ok(false);
        }
        if !next_split(&mut split) {
            return Ok(true);
        }
    }
}

/// Advances `split` to the next composition of the same total, starting
/// from `(total, 0, ..., 0)`: move one unit from the leftmost positive
/// entry to its right neighbour and pull the rest back to the front.
fn next_split(split: &mut [usize]) -> bool {
    let s = split.len();
    let Some(first_pos) = split.iter().position(|&x| x > 0) else {
        return false; // total 0: the all-zero split is the only one
    };
    if first_pos + 1 >= s {
        return false;
    }
    let head = split[first_pos];
    split[first_pos] = 0;
    split[0] = head - 1;
    split[first_pos + 1] += 1;
    true
}

fn subtract_clamped(m: usize, sub: usize) -> usize {
    m.saturating_sub(sub)
}

/// Outcome of checking a two-sided rho bound plus a t upper bound for a
/// reduced generating set against the unreduced one.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCheck {
    /// rho of the unreduced set.
    pub rho: usize,
    /// Minimal t of the unreduced net, `m - rho`.
    pub t: usize,
    pub rho_reduced: usize,
    pub t_reduced: usize,
    pub rho_lower: usize,
    pub rho_upper: usize,
    pub t_upper: usize,
    /// Sharper rho upper bound that holds when the unreduced net is
    /// strict; populated by the column-row check (t is computed exactly
    /// there, so the net is strict by minimality).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict_rho_upper: Option<usize>,
    pub pass: bool,
}

impl BoundCheck {
    fn evaluate(
        rho: usize,
        t: usize,
        rho_reduced: usize,
        m: usize,
        rho_lower: usize,
        rho_upper: usize,
        t_upper: usize,
        strict_rho_upper: Option<usize>,
    ) -> Self {
        let t_reduced = m - rho_reduced;
        let mut pass = rho_lower <= rho_reduced && rho_reduced <= rho_upper && t_reduced <= t_upper;
        if let Some(strict) = strict_rho_upper {
            pass &= rho_reduced <= strict;
        }
        Self {
            rho,
            t,
            rho_reduced,
            t_reduced,
            rho_lower,
            rho_upper,
            t_upper,
            strict_rho_upper,
            pass,
        }
    }
}

/// Checks the two-sided row-reduction bound
/// `max{0, m - max{t, w_s}} <= rho~ <= max{0, m - w_s}` and
/// `t~ <= min{m, max{t, w_s}}`.
pub fn check_row_reduced_bounds(g: &GeneratingSet, w: &ReductionIndices) -> Result<BoundCheck> {
    let m = g.matrix_size();
    let rho = rho_m(g)?;
    let t = m - rho;
    let reduced = row_reduce(g, w)?;
    let rho_reduced = rho_m(&reduced)?;
    let ws = w.last() as usize;
    Ok(BoundCheck::evaluate(
        rho,
        t,
        rho_reduced,
        m,
        subtract_clamped(m, t.max(ws)),
        subtract_clamped(m, ws),
        m.min(t.max(ws)),
        None,
    ))
}

/// Checks the column-row bound `max{0, m - w_s - t} <= rho~ <=
/// max{0, m - w_s}` and `t~ <= min{m, w_s + t}`, plus the sharper strict
/// upper bound `rho~ <= max{0, m - max{t, w_s}}` (valid here because the
/// computed `t` is minimal, making the base net strict).
pub fn check_column_row_bounds(g: &GeneratingSet, w: &ReductionIndices) -> Result<BoundCheck> {
    if !g.from_sequence() {
        return Err(Error::NotFromSequence);
    }
    let m = g.matrix_size();
    let rho = rho_m(g)?;
    let t = m - rho;
    let reduced = column_row_reduce(g, w, false)?;
    let rho_reduced = rho_m(&reduced)?;
    let ws = w.last() as usize;
    Ok(BoundCheck::evaluate(
        rho,
        t,
        rho_reduced,
        m,
        subtract_clamped(m, ws + t),
        subtract_clamped(m, ws),
        m.min(ws + t),
        Some(subtract_clamped(m, t.max(ws))),
    ))
}

/// Checks the generalized bound for separate row and column indices:
/// `max{0, m - max{w_s^c + t, w_s^r}} <= rho~ <= max{0, m - max{w_s^c,
/// w_s^r}}` and `t~ <= min{m, max{w_s^c + t, w_s^r}}`.
pub fn check_mixed_bounds(
    g: &GeneratingSet,
    w_rows: &ReductionIndices,
    w_cols: &ReductionIndices,
) -> Result<BoundCheck> {
    if !g.from_sequence() {
        return Err(Error::NotFromSequence);
    }
    let m = g.matrix_size();
    let rho = rho_m(g)?;
    let t = m - rho;
    let reduced = mixed_reduce(g, w_rows, w_cols, false)?;
    let rho_reduced = rho_m(&reduced)?;
    let wsr = w_rows.last() as usize;
    let wsc = w_cols.last() as usize;
    let mix = (wsc + t).max(wsr);
    Ok(BoundCheck::evaluate(
        rho,
        t,
        rho_reduced,
        m,
        subtract_clamped(m, mix),
        subtract_clamped(m, wsc.max(wsr)),
        m.min(mix),
        None,
    ))
}

/// Per-projection bound check record.
#[derive(Debug, Clone, Serialize)]
pub struct ProjectionCheck {
    /// 1-based coordinate indices of the projection.
    pub u: Vec<usize>,
    /// Minimal t of the unreduced projection.
    pub t_u: usize,
    pub rho_reduced: usize,
    pub t_reduced: usize,
    pub rho_lower: usize,
    pub rho_upper: usize,
    pub t_upper: usize,
    pub pass: bool,
}

/// Checks, for every non-empty subset `u` of coordinates, the projection
/// bound of the given reduction kind:
/// row: `max{0, m - max{w_max(u), t_u}} <= rho_u~ <= max{0, m - w_max(u)}`,
/// column / column-row: the same with `w_max(u) + t_u` on the lower side
/// and `t_u~ <= min{m, w_max(u) + t_u}`.
pub fn check_projection_bounds(
    g: &GeneratingSet,
    w: &ReductionIndices,
    kind: ReductionKind,
) -> Result<Vec<ProjectionCheck>> {
    check_projection_bounds_with_limit(g, w, kind, DEFAULT_PROJECTION_LIMIT)
}

pub fn check_projection_bounds_with_limit(
    g: &GeneratingSet,
    w: &ReductionIndices,
    kind: ReductionKind,
    limit: usize,
) -> Result<Vec<ProjectionCheck>> {
    let s = g.dimension();
    if s > limit {
        return Err(Error::BudgetExceeded(format!(
            "projection enumeration over dimension {s} exceeds the limit {limit}"
        )));
    }
    let m = g.matrix_size();
    let reduced = reduce(g, kind, w, false)?;
    let mut checks = Vec::with_capacity((1usize << s) - 1);
    for mask in 1u64..(1 << s) {
        let u: Vec<usize> = (0..s).filter(|j| mask >> j & 1 == 1).collect();
        let u_max = *u.last().unwrap();
        let wu = w.get(u_max) as usize;
        let t_u = m - rho_m(&g.project(&u)?)?;
        let rho_reduced = rho_m(&reduced.project(&u)?)?;
        let t_reduced = m - rho_reduced;
        let (rho_lower, t_upper) = match kind {
            ReductionKind::Row => (subtract_clamped(m, wu.max(t_u)), m.min(wu.max(t_u))),
            ReductionKind::Column | ReductionKind::ColumnRow => {
                (subtract_clamped(m, wu + t_u), m.min(wu + t_u))
            }
        };
        let rho_upper = subtract_clamped(m, wu);
        let pass =
            rho_lower <= rho_reduced && rho_reduced <= rho_upper && t_reduced <= t_upper;
        checks.push(ProjectionCheck {
            u: u.iter().map(|j| j + 1).collect(),
            t_u,
            rho_reduced,
            t_reduced,
            rho_lower,
            rho_upper,
            t_upper,
            pass,
        });
    }
    Ok(checks)
}

/// Certified quality parameters of a generating set.
#[derive(Debug, Clone, Serialize)]
pub struct QualityReport {
    pub rho: usize,
    pub t: usize,
    /// True when `t` was computed exactly as `m - rho`, which makes the
    /// generated net strict by minimality.
    pub is_strict_certified: bool,
    /// Minimal t per non-empty projection (1-based index sets), when
    /// requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_projection: Option<Vec<(Vec<usize>, usize)>>,
}

impl QualityReport {
    pub fn exact(g: &GeneratingSet) -> Result<Self> {
        let rho = rho_m(g)?;
        Ok(Self {
            rho,
            t: g.matrix_size() - rho,
            is_strict_certified: true,
            per_projection: None,
        })
    }

    pub fn with_projections(g: &GeneratingSet, limit: usize) -> Result<Self> {
        let mut report = Self::exact(g)?;
        let s = g.dimension();
        if s > limit {
            return Err(Error::BudgetExceeded(format!(
                "projection enumeration over dimension {s} exceeds the limit {limit}"
            )));
        }
        let mut table = Vec::new();
        for mask in 1u64..(1 << s) {
            let u: Vec<usize> = (0..s).filter(|j| mask >> j & 1 == 1).collect();
            let t_u = projection_t(g, &u)?;
            table.push((u.iter().map(|j| j + 1).collect(), t_u));
        }
        report.per_projection = Some(table);
        Ok(report)
    }
}

/// Exact minimal t for every non-empty projection, keyed by coordinate
/// bitmask. Feeds the discrepancy bound.
pub fn projection_t_table(g: &GeneratingSet, limit: usize) -> Result<HashMap<u64, usize>> {
    let s = g.dimension();
    if s > limit {
        return Err(Error::BudgetExceeded(format!(
            "projection enumeration over dimension {s} exceeds the limit {limit}"
        )));
    }
    let mut table = HashMap::new();
    for mask in 1u64..(1 << s) {
        let u: Vec<usize> = (0..s).filter(|j| mask >> j & 1 == 1).collect();
        table.insert(mask, projection_t(g, &u)?);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::GfMatrix;
    use crate::nets::{generate_net, pascal_generating_set, random_generating_set, GeneratingSet};

    fn w(list: &[u32]) -> ReductionIndices {
        ReductionIndices::new(list.to_vec()).unwrap()
    }

    #[test]
    fn rho_of_upper_triangular_is_m() {
        let mat = GfMatrix::from_rows(
            3,
            &[vec![1, 2, 0, 1], vec![0, 1, 1, 2], vec![0, 0, 2, 0], vec![0, 0, 0, 1]],
        )
        .unwrap();
        let g = GeneratingSet::new(3, 4, vec![mat], false).unwrap();
        assert_eq!(rho_m(&g).unwrap(), 4);
        assert_eq!(min_t(&g).unwrap(), 0);
    }

    #[test]
    fn rho_zero_when_last_matrix_zero() {
        let g = GeneratingSet::new(
            2,
            5,
            vec![GfMatrix::identity(2, 5).unwrap(), GfMatrix::zero(2, 5, 5).unwrap()],
            false,
        )
        .unwrap();
        assert_eq!(rho_m(&g).unwrap(), 0);
        assert_eq!(min_t(&g).unwrap(), 5);
    }

    #[test]
    fn pascal_pair_is_a_zero_t_net() {
        let g = pascal_generating_set(2, 4, 2).unwrap();
        assert_eq!(rho_m(&g).unwrap(), 4);
        let net = generate_net(&g).unwrap();
        assert_eq!(oracle_min_t(&net).unwrap(), 0);
    }

    #[test]
    fn sobol_like_pair_has_t_zero_up_to_m6() {
        for m in 1..=6 {
            let g = pascal_generating_set(2, m, 2).unwrap();
            assert_eq!(rho_m(&g).unwrap(), m, "m={m}");
        }
    }

    #[test]
    fn oracle_on_van_der_corput() {
        let g = GeneratingSet::new(2, 3, vec![GfMatrix::identity(2, 3).unwrap()], true).unwrap();
        let net = generate_net(&g).unwrap();
        assert_eq!(oracle_min_t(&net).unwrap(), 0);
    }

    #[test]
    fn oracle_on_all_zero_matrices() {
        for m in 1..=4 {
            let g = GeneratingSet::new(
                2,
                m,
                vec![GfMatrix::zero(2, m, m).unwrap(), GfMatrix::zero(2, m, m).unwrap()],
                false,
            )
            .unwrap();
            let net = generate_net(&g).unwrap();
            assert_eq!(oracle_min_t(&net).unwrap(), m);
        }
    }

    #[test]
    fn oracle_matches_algebraic_t_on_random_sets() {
        for seed in 0..12 {
            for s in 1..=3 {
                let g = random_generating_set(2, 5, s, 1000 + seed).unwrap();
                let net = generate_net(&g).unwrap();
                assert_eq!(
                    min_t(&g).unwrap(),
                    oracle_min_t(&net).unwrap(),
                    "seed={seed} s={s}"
                );
            }
        }
    }

    #[test]
    fn projection_basics() {
        let g = pascal_generating_set(3, 3, 3).unwrap();
        // Singleton projection of an invertible matrix.
        assert_eq!(projection_t(&g, &[0]).unwrap(), 0);
        // Full projection equals the global t.
        assert_eq!(projection_t(&g, &[0, 1, 2]).unwrap(), min_t(&g).unwrap());
        // Pair {1, 3} in 1-based labels.
        assert_eq!(projection_t(&g, &[0, 2]).unwrap(), 0);
    }

    #[test]
    fn rho_is_permutation_invariant() {
        let g = random_generating_set(2, 5, 3, 77).unwrap();
        let rho = rho_m(&g).unwrap();
        let permuted = GeneratingSet::new(
            2,
            5,
            vec![g.matrix(2).clone(), g.matrix(0).clone(), g.matrix(1).clone()],
            false,
        )
        .unwrap();
        assert_eq!(rho_m(&permuted).unwrap(), rho);
    }

    #[test]
    fn rho_never_increases_under_reduction() {
        for seed in 0..8 {
            let g = random_generating_set(2, 5, 3, 300 + seed).unwrap();
            let rho = rho_m(&g).unwrap();
            let ww = w(&[0, 1, 2]);
            for kind in [ReductionKind::Row, ReductionKind::Column, ReductionKind::ColumnRow] {
                let red = reduce(&g, kind, &ww, true).unwrap();
                assert!(rho_m(&red).unwrap() <= rho);
            }
        }
    }

    #[test]
    fn row_bound_degenerate_branches() {
        let m = 5;
        for seed in 0..10 {
            let g = random_generating_set(2, m, 3, 400 + seed).unwrap();
            // w_s >= m forces rho~ = 0.
            let check = check_row_reduced_bounds(&g, &w(&[0, 2, 7])).unwrap();
            assert!(check.pass);
            assert_eq!(check.rho_reduced, 0);
            // w_s <= t leaves rho unchanged.
            let t = check.t;
            if t >= 1 {
                let check2 = check_row_reduced_bounds(&g, &w(&[0, 1.min(t as u32), t as u32])).unwrap();
                assert!(check2.pass);
                assert_eq!(check2.rho_reduced, check2.rho);
            }
        }
    }

    #[test]
    fn row_bounds_hold_on_random_instances() {
        for seed in 0..25u32 {
            let g = random_generating_set(2, 6, 3, 500 + seed as u64).unwrap();
            let step1 = seed % 4;
            let step2 = seed % 3;
            let ww = w(&[0, step1, step1 + step2]);
            let check = check_row_reduced_bounds(&g, &ww).unwrap();
            assert!(check.pass, "seed={seed}: {check:?}");
        }
    }

    #[test]
    fn zero_reduction_reports_equal_values() {
        let g = pascal_generating_set(3, 4, 3).unwrap();
        let zs = ReductionIndices::zeros(3);
        let row = check_row_reduced_bounds(&g, &zs).unwrap();
        assert_eq!(row.rho_reduced, row.rho);
        let cr = check_column_row_bounds(&g, &zs).unwrap();
        assert_eq!(cr.rho_reduced, cr.rho);
        let mixed = check_mixed_bounds(&g, &zs, &zs).unwrap();
        assert_eq!(mixed.rho_reduced, mixed.rho);
    }

    #[test]
    fn column_row_bounds_collapse_for_pascal() {
        // t = 0 makes both sides coincide: rho~ = m - w_s exactly.
        for &b in &[2u64, 3] {
            for m in 2..=5usize {
                let g = pascal_generating_set(b, m, 2).unwrap();
                for ws in 0..=m as u32 {
                    let check = check_column_row_bounds(&g, &w(&[0, ws])).unwrap();
                    assert!(check.pass, "b={b} m={m} ws={ws}: {check:?}");
                    assert_eq!(check.rho_reduced, m.saturating_sub(ws as usize));
                }
            }
        }
    }

    #[test]
    fn column_row_requires_sequence() {
        let g = random_generating_set(2, 4, 2, 9).unwrap();
        assert!(matches!(
            check_column_row_bounds(&g, &w(&[0, 1])),
            Err(Error::NotFromSequence)
        ));
    }

    #[test]
    fn projection_bounds_on_pascal_triple() {
        let g = pascal_generating_set(3, 4, 3).unwrap();
        let checks = check_projection_bounds(&g, &w(&[0, 1, 2]), ReductionKind::Row).unwrap();
        assert_eq!(checks.len(), 7);
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
        let checks = check_projection_bounds(&g, &w(&[0, 1, 2]), ReductionKind::ColumnRow).unwrap();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    }

    #[test]
    fn projection_bounds_degenerate_subsets() {
        let g = pascal_generating_set(3, 3, 3).unwrap();
        let checks = check_projection_bounds(&g, &w(&[0, 3, 3]), ReductionKind::Row).unwrap();
        for c in &checks {
            assert!(c.pass);
            if *c.u.last().unwrap() >= 2 {
                // w at the top coordinate >= m: projection rho collapses.
                assert_eq!(c.rho_reduced, 0, "{c:?}");
            }
        }
    }

    #[test]
    fn mixed_bounds_specialize() {
        let g = pascal_generating_set(2, 6, 2).unwrap();
        let zs = ReductionIndices::zeros(2);
        // Columns zero: same as the row bound with max{t, w^r}.
        let row_only = check_mixed_bounds(&g, &w(&[0, 2]), &zs).unwrap();
        let row_ref = check_row_reduced_bounds(&g, &w(&[0, 2])).unwrap();
        assert_eq!(row_only.rho_lower, row_ref.rho_lower);
        assert_eq!(row_only.t_upper, row_ref.t_upper);
        assert!(row_only.pass);
        // Rows zero: the column bound m - w^c - t.
        let col_only = check_mixed_bounds(&g, &zs, &w(&[0, 2])).unwrap();
        let col_ref = check_column_row_bounds(&g, &w(&[0, 2])).unwrap();
        assert_eq!(col_only.rho_lower, col_ref.rho_lower);
        assert!(col_only.pass);
        // The paper's example shape: independent row and column indices.
        let both = check_mixed_bounds(&g, &w(&[0, 2]), &w(&[0, 1])).unwrap();
        assert!(both.pass, "{both:?}");
    }

    #[test]
    fn quality_report_serializes() {
        let g = pascal_generating_set(2, 3, 2).unwrap();
        let report = QualityReport::with_projections(&g, 10).unwrap();
        assert_eq!(report.rho, 3);
        assert_eq!(report.t, 0);
        assert!(report.is_strict_certified);
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"rho\":3"));
    }

    #[test]
    fn budget_is_enforced() {
        let g = random_generating_set(2, 6, 6, 1).unwrap();
        let err = rho_m_with_budget(&g, 3);
        assert!(matches!(err, Err(Error::BudgetExceeded(_))));
    }
}
