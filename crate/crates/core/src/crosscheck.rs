//! Oracle-vs-analytic comparison suite.
//!
//! Recomputes every externally visible quantity of [`crate::quadrature`]
//! and [`crate::bell`] through the truncated-number-basis path of
//! [`crate::fock`] and reports the discrepancies. Used by the
//! `oracle-check` CLI command and the acceptance tests.

use num_complex::Complex64;

use crate::bell;
use crate::fock::{self, DichotomicObservable, FockError};
use crate::model::{CatParams, DetectorModel, SuperpositionSign};
use crate::quadrature::{dist_superposition, integration_domain, HomodynePhase};

/// One compared quantity. For distributions the values are taken at the
/// grid point of largest deviation.
#[derive(Debug, Clone, PartialEq)]
pub struct CrosscheckEntry {
    pub name: &'static str,
    pub analytic: f64,
    pub oracle: f64,
    pub discrepancy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrosscheckReport {
    pub alpha: f64,
    pub eta: f64,
    pub entries: Vec<CrosscheckEntry>,
}

impl CrosscheckReport {
    /// Entry with the largest discrepancy.
    pub fn worst(&self) -> &CrosscheckEntry {
        self.entries
            .iter()
            .max_by(|a, b| a.discrepancy.total_cmp(&b.discrepancy))
            .expect("report is never empty")
    }

    pub fn max_discrepancy(&self) -> f64 {
        self.worst().discrepancy
    }
}

/// Number of grid points used for the distribution sup-norm comparison.
const DIST_POINTS: usize = 2001;

/// Runs the full comparison at a single (α, η) point with ξ = 1.
pub fn oracle_vs_analytic(p: &CatParams, eta: f64) -> Result<CrosscheckReport, FockError> {
    let d = DetectorModel::new(eta, 1.0)?;
    let n_max = fock::required_n_max(p.alpha());
    let mut entries = Vec::new();

    // Interference patterns of both superpositions, compared pointwise.
    let (lo, hi) = integration_domain(p, HomodynePhase::momentum(), eta);
    for (sign, name) in [
        (SuperpositionSign::Plus, "dist_superposition_plus"),
        (SuperpositionSign::Minus, "dist_superposition_minus"),
    ] {
        let state = fock::superposition_fock(sign, p, n_max)?;
        let grid =
            fock::oracle_distribution(&state, HomodynePhase::momentum(), eta, lo, hi, DIST_POINTS)?;
        let mut worst = CrosscheckEntry {
            name,
            analytic: 0.0,
            oracle: 0.0,
            discrepancy: 0.0,
        };
        for (x, v) in grid.points() {
            let closed = dist_superposition(sign, x, p, eta)?;
            let diff = (v - closed).abs();
            if diff > worst.discrepancy {
                worst = CrosscheckEntry {
                    name,
                    analytic: closed,
                    oracle: v,
                    discrepancy: diff,
                };
            }
        }
        entries.push(worst);
    }

    // Matrix elements of both dichotomic observables.
    let alpha = Complex64::new(p.alpha(), 0.0);
    let plus = fock::coherent_fock(alpha, n_max)?;
    let minus = fock::coherent_fock(-alpha, n_max)?;

    let c0_analytic = bell::c0_diag(p, eta);
    let c0_oracle =
        fock::oracle_matrix_element(DichotomicObservable::PositionSign, &plus, &plus, p, &d);
    entries.push(CrosscheckEntry {
        name: "c0_diag",
        analytic: c0_analytic,
        oracle: c0_oracle.re,
        discrepancy: (c0_oracle - Complex64::new(c0_analytic, 0.0)).norm(),
    });

    let c0_cross =
        fock::oracle_matrix_element(DichotomicObservable::PositionSign, &plus, &minus, p, &d);
    entries.push(CrosscheckEntry {
        name: "c0_offdiag_zero",
        analytic: 0.0,
        oracle: c0_cross.norm(),
        discrepancy: c0_cross.norm(),
    });

    let cpi2_analytic = bell::cpi2_offdiag(p, eta);
    let cpi2_oracle =
        fock::oracle_matrix_element(DichotomicObservable::FringeBins, &plus, &minus, p, &d);
    entries.push(CrosscheckEntry {
        name: "cpi2_offdiag",
        analytic: cpi2_analytic.re,
        oracle: cpi2_oracle.re,
        discrepancy: (cpi2_oracle - cpi2_analytic).norm(),
    });

    let diag_analytic = bell::cpi2_diag(p, eta);
    let diag_oracle =
        fock::oracle_matrix_element(DichotomicObservable::FringeBins, &plus, &plus, p, &d);
    entries.push(CrosscheckEntry {
        name: "cpi2_diag",
        analytic: diag_analytic,
        oracle: diag_oracle.re,
        discrepancy: (diag_oracle - Complex64::new(diag_analytic, 0.0)).norm(),
    });

    // Maximum Bell combination assembled from each path's own elements.
    let s_analytic = bell::s_max(p, &d).s_max;
    let s_oracle = 2.0 * (c0_oracle.re * c0_oracle.re + cpi2_oracle.norm_sqr()).sqrt();
    entries.push(CrosscheckEntry {
        name: "s_max",
        analytic: s_analytic,
        oracle: s_oracle,
        discrepancy: (s_analytic - s_oracle).abs(),
    });

    Ok(CrosscheckReport {
        alpha: p.alpha(),
        eta,
        entries,
    })
}
