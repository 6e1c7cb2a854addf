//! Quadrature of `f(x^T A)` over the unit cube by averaging over net
//! points, with closed-form reference integrals so errors are exact.

use serde::Serialize;

use crate::discrepancy::{weighted_disc_bound, BoundInputs, ProductWeights, TAssignment};
use crate::error::{Error, Result};
use crate::nets::{generate_net, DigitalNet, GeneratingSet};
use crate::product::{standard_product, Mat};
use crate::quality::min_t;
use crate::reduction::{reduce, ReductionKind, Schedule};

/// Integrands with closed-form integrals against `x ~ U[0,1]^s`,
/// composed with `y = x^T A`.
#[derive(Debug, Clone, PartialEq)]
pub enum Integrand {
    /// `f(y) = offset + sum_l c_l y_l`
    Linear { coeffs: Vec<f64>, offset: f64 },
    /// `f(y) = exp(sum_l c_l y_l)`
    Exponential { coeffs: Vec<f64> },
}

impl Integrand {
    pub fn coeffs(&self) -> &[f64] {
        match self {
            Integrand::Linear { coeffs, .. } | Integrand::Exponential { coeffs } => coeffs,
        }
    }

    pub fn evaluate(&self, y: &[f64]) -> f64 {
        match self {
            Integrand::Linear { coeffs, offset } => {
                offset + coeffs.iter().zip(y).map(|(c, v)| c * v).sum::<f64>()
            }
            Integrand::Exponential { coeffs } => {
                coeffs.iter().zip(y).map(|(c, v)| c * v).sum::<f64>().exp()
            }
        }
    }

    /// The exact integral of `f(x^T A)` over the unit cube.
    ///
    /// Linear: `offset + sum_l c_l sum_j A[j][l] / 2`. Exponential: with
    /// `beta = A c`, the separable product of `(e^beta_j - 1) / beta_j`
    /// (factor 1 where `beta_j = 0`).
    pub fn reference_integral(&self, a: &Mat<f64>) -> Result<f64> {
        let coeffs = self.coeffs();
        if coeffs.len() != a.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} columns of A",
                coeffs.len(),
                a.cols()
            )));
        }
        match self {
            Integrand::Linear { coeffs, offset } => {
                let mut total = *offset;
                for l in 0..a.cols() {
                    let col_sum: f64 = (0..a.rows()).map(|j| a.get(j, l)).sum();
                    total += coeffs[l] * col_sum / 2.0;
                }
                Ok(total)
            }
            Integrand::Exponential { coeffs } => {
                let mut product = 1.0;
                for j in 0..a.rows() {
                    let beta: f64 = (0..a.cols()).map(|l| a.get(j, l) * coeffs[l]).sum();
                    product *= if beta == 0.0 {
                        1.0
                    } else {
                        (beta.exp() - 1.0) / beta
                    };
                }
                Ok(product)
            }
        }
    }
}

/// Averages `f` over the rows of a precomputed product `XA`.
pub fn quadrature_of_product(xa: &Mat<f64>, f: &Integrand) -> f64 {
    let n = xa.rows();
    let sum: f64 = xa.row_iter().map(|row| f.evaluate(row)).sum();
    sum / n as f64
}

/// The QMC rule `(1/N) sum_k f(x_k^T A)` on the points of `net`.
pub fn qmc_quadrature(net: &DigitalNet, a: &Mat<f64>, f: &Integrand) -> Result<f64> {
    if a.rows() != net.dimension() {
        return Err(Error::DimensionMismatch(format!(
            "A has {} rows for a net of dimension {}",
            a.rows(),
            net.dimension()
        )));
    }
    if f.coeffs().len() != a.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{} coefficients for {} columns of A",
            f.coeffs().len(),
            a.cols()
        )));
    }
    let x = Mat::<f64>::from_net(net);
    let (xa, _) = standard_product(&x, a)?;
    Ok(quadrature_of_product(&xa, f))
}

/// One line of the reduction-error table.
#[derive(Debug, Clone, Serialize)]
pub struct ErrorRow {
    pub m: usize,
    pub n: u64,
    pub err_unreduced: f64,
    pub err_reduced: f64,
    pub disc_bound: f64,
}

/// For each generating set (one per matrix size), the absolute
/// quadrature error of the unreduced and the reduced net, next to the
/// discrepancy bound of the reduced net (with the exact global `t` of
/// the unreduced net).
pub fn error_report(
    sets: &[GeneratingSet],
    schedule: &Schedule,
    kind: ReductionKind,
    a: &Mat<f64>,
    f: &Integrand,
    weights: &ProductWeights,
    force: bool,
) -> Result<Vec<ErrorRow>> {
    let reference = f.reference_integral(a)?;
    let mut rows = Vec::with_capacity(sets.len());
    for g in sets {
        let s = g.dimension();
        if weights.len() != s || a.rows() != s {
            return Err(Error::DimensionMismatch(format!(
                "weights/A sized for dimension {}, set has {s}",
                weights.len()
            )));
        }
        let m = g.matrix_size();
        let w = schedule.indices(g.modulus(), m, s)?;
        let net = generate_net(g)?;
        let reduced_net = generate_net(&reduce(g, kind, &w, force)?)?;
        let q_full = qmc_quadrature(&net, a, f)?;
        let q_reduced = qmc_quadrature(&reduced_net, a, f)?;
        let t = min_t(g)?;
        let inputs = BoundInputs::new(
            g.modulus(),
            m,
            w,
            weights.clone(),
            TAssignment::Global(t),
        )?;
        let bound = weighted_disc_bound(&inputs, kind)?;
        rows.push(ErrorRow {
            m,
            n: net.point_count(),
            err_unreduced: (q_full - reference).abs(),
            err_reduced: (q_reduced - reference).abs(),
            disc_bound: bound.bound,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::GfMatrix;
    use crate::nets::{pascal_generating_set, random_generating_set};
    use crate::product::row_reduced_product;
    use crate::reduction::{row_reduce, ReductionIndices};

    fn small_a(s: usize, tau: usize) -> Mat<f64> {
        let rows: Vec<Vec<f64>> = (0..s)
            .map(|j| {
                (0..tau)
                    .map(|l| 0.3 * (j as f64 + 1.0) / s as f64 - 0.1 * l as f64)
                    .collect()
            })
            .collect();
        Mat::from_rows(rows).unwrap()
    }

    #[test]
    fn constant_integrand_integrates_to_one_exactly() {
        let f = Integrand::Linear {
            coeffs: vec![0.0, 0.0],
            offset: 1.0,
        };
        for seed in 0..4 {
            let g = random_generating_set(2, 4, 3, seed).unwrap();
            let a = small_a(3, 2);
            let net = generate_net(&g).unwrap();
            assert_eq!(qmc_quadrature(&net, &a, &f).unwrap(), 1.0);
            let w = ReductionIndices::new(vec![0, 2, 4]).unwrap();
            let reduced = generate_net(&row_reduce(&g, &w).unwrap()).unwrap();
            assert_eq!(qmc_quadrature(&reduced, &a, &f).unwrap(), 1.0);
        }
    }

    #[test]
    fn linear_error_on_one_dimensional_net_is_exact() {
        // On a (0, m, 1)-net the coordinate is a permutation of i/N, so
        // the quadrature error of a linear integrand is exactly
        // |sum_l c_l A_1l| / (2N).
        let m = 5;
        let g = GeneratingSet::new(2, m, vec![GfMatrix::identity(2, m).unwrap()], true).unwrap();
        let net = generate_net(&g).unwrap();
        let a = Mat::from_rows(vec![vec![0.7, -0.3]]).unwrap();
        let coeffs = vec![0.4, 1.1];
        let f = Integrand::Linear {
            coeffs: coeffs.clone(),
            offset: 0.25,
        };
        let q = qmc_quadrature(&net, &a, &f).unwrap();
        let reference = f.reference_integral(&a).unwrap();
        let mass: f64 = coeffs.iter().zip([0.7, -0.3]).map(|(c, av)| c * av).sum();
        let n = net.point_count() as f64;
        let expected_err = (mass / (2.0 * n)).abs();
        assert!(((q - reference).abs() - expected_err).abs() < 1e-14);
        assert!((q - reference).abs() <= 2f64.powi(-(m as i32)) * mass.abs());
    }

    #[test]
    fn exponential_reference_matches_midpoint_rule() {
        // Independent check of the closed form by 1D composite midpoint
        // quadrature on each separable factor.
        let a = Mat::from_rows(vec![vec![0.8, -0.2], vec![0.0, 0.5]]).unwrap();
        let coeffs = vec![0.9, 0.4];
        let f = Integrand::Exponential {
            coeffs: coeffs.clone(),
        };
        let closed = f.reference_integral(&a).unwrap();
        let steps = 20_000;
        let mut product = 1.0;
        for j in 0..2 {
            let beta: f64 = (0..2).map(|l| a.get(j, l) * coeffs[l]).sum();
            let mut acc = 0.0;
            for i in 0..steps {
                let x = (i as f64 + 0.5) / steps as f64;
                acc += (beta * x).exp();
            }
            product *= acc / steps as f64;
        }
        assert!((closed - product).abs() < 1e-8, "{closed} vs {product}");
    }

    #[test]
    fn quadrature_agrees_between_standard_and_fast_product() {
        let g = random_generating_set(2, 6, 5, 33).unwrap();
        let w = ReductionIndices::new(vec![0, 1, 1, 2, 3]).unwrap();
        let a = small_a(5, 3);
        let f = Integrand::Exponential {
            coeffs: vec![0.2, -0.4, 0.1],
        };
        let reduced_net = generate_net(&row_reduce(&g, &w).unwrap()).unwrap();
        let via_standard = qmc_quadrature(&reduced_net, &a, &f).unwrap();
        let (xa, _) = row_reduced_product(&g, &w, &a).unwrap();
        let via_fast = quadrature_of_product(&xa, &f);
        assert!((via_standard - via_fast).abs() < 1e-10);
    }

    #[test]
    fn error_report_degenerate_reductions() {
        let sets: Vec<GeneratingSet> = (3..=5)
            .map(|m| pascal_generating_set(2, m, 2).unwrap())
            .collect();
        let a = small_a(2, 2);
        let f = Integrand::Exponential {
            coeffs: vec![0.3, 0.2],
        };
        let weights = ProductWeights::power_law(2, 2.0).unwrap();
        // w = 0: both error columns coincide.
        let rows = error_report(
            &sets,
            &Schedule::Explicit(vec![0, 0]),
            ReductionKind::Row,
            &a,
            &f,
            &weights,
            false,
        )
        .unwrap();
        for row in &rows {
            assert_eq!(row.err_unreduced, row.err_reduced);
        }
        // w >= m everywhere: the reduced rule samples f at the origin only.
        let reference = f.reference_integral(&a).unwrap();
        let rows = error_report(
            &sets,
            &Schedule::Explicit(vec![9, 9]),
            ReductionKind::Row,
            &a,
            &f,
            &weights,
            false,
        )
        .unwrap();
        for row in &rows {
            let f_zero = f.evaluate(&[0.0, 0.0]);
            assert!((row.err_reduced - (f_zero - reference).abs()).abs() < 1e-14);
        }
    }

    #[test]
    fn error_report_runs_on_log_schedule() {
        let sets: Vec<GeneratingSet> = (4..=7)
            .map(|m| pascal_generating_set(2, m, 2).unwrap())
            .collect();
        let a = small_a(2, 2);
        let f = Integrand::Exponential {
            coeffs: vec![0.5, 0.1],
        };
        let weights = ProductWeights::power_law(2, 2.0).unwrap();
        let rows = error_report(
            &sets,
            &Schedule::Log,
            ReductionKind::Row,
            &a,
            &f,
            &weights,
            false,
        )
        .unwrap();
        assert_eq!(rows.len(), 4);
        for row in &rows {
            assert!(row.disc_bound > 0.0);
            assert!(row.err_unreduced <= row.disc_bound || row.err_unreduced < 1e-2);
        }
    }
}
