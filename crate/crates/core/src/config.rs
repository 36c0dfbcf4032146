//! Numeric tolerances and defaults shared by every module.
//!
//! Every threshold a verdict depends on lives here so reports can print the
//! exact values they were produced with.

use serde::{Deserialize, Serialize};

/// Absolute tolerances used by checks and verdicts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// DFT agreement with naive summation; unitarity of the normalized matrix.
    pub dft: f64,
    /// Largest imaginary part tolerated before a form is realified.
    pub imaginary_part: f64,
    /// Residual below which a KKT candidate counts as a solution.
    pub kkt_residual: f64,
    /// Distance in lambda under which two KKT solutions are merged.
    pub kkt_dedup: f64,
    /// Relative margin separating window solutions from the constant-vector
    /// boundary solution at squared norm n.
    pub kkt_window_margin: f64,
    /// Floor applied to iterates so that `x log x` stays differentiable.
    pub lambda_floor: f64,
    /// Slack allowed on inequality verdicts (LSI values, quadratic minima,
    /// Dirichlet comparison, induction chain).
    pub slack: f64,
    /// `max_ratio <= 1 + contractive_margin` counts as contractive.
    pub contractive_margin: f64,
    /// Target width of the optimal-time bracket.
    pub bisection_width: f64,
    /// Relative tolerance of the cascade derivative relations.
    pub chain_relative: f64,
    /// |x - 1| below which cascade functions use their Taylor expansion.
    pub series_radius: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            dft: 1e-12,
            imaginary_part: 1e-12,
            kkt_residual: 1e-9,
            kkt_dedup: 1e-6,
            kkt_window_margin: 1e-6,
            lambda_floor: 1e-12,
            slack: 1e-9,
            contractive_margin: 1e-7,
            bisection_width: 1e-3,
            chain_relative: 1e-5,
            series_radius: 0.3,
        }
    }
}

/// Default sizes for scans and searches.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Defaults {
    pub quadratic_resolution: usize,
    pub quadratic_x_max: f64,
    pub cascade_x_max: f64,
    pub cascade_samples: usize,
    pub hyper_starts: usize,
    pub kkt_starts: usize,
    pub sphere_starts: usize,
    pub lsi_samples: usize,
    pub induction_samples: usize,
}

impl Default for Defaults {
    fn default() -> Self {
        Self {
            quadratic_resolution: 201,
            quadratic_x_max: 100.0,
            cascade_x_max: 50.0,
            cascade_samples: 100_000,
            hyper_starts: 64,
            kkt_starts: 10_000,
            sphere_starts: 1_000,
            lsi_samples: 100_000,
            induction_samples: 100_000,
        }
    }
}
