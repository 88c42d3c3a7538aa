//! Tolerances and the analysis radius.

use serde::{Deserialize, Serialize};

/// Numeric tolerances and the parameter-disc radius used across the pipeline.
///
/// Every threshold that decides a sign, a membership or a convergence test
/// lives here so runs are reproducible from a config file.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct Settings {
    /// Radius of the parameter disc |mu| <= eps_param under analysis.
    pub eps_param: f64,
    /// Absolute residual bound for located equilibria (max-norm of the field).
    pub tol_eq: f64,
    /// Half-width of the "zero" band in sign classifications.
    pub tol_class: f64,
    /// Slack for first-quadrant membership of equilibrium coordinates.
    pub tol_geom: f64,
    /// Distance below which two equilibria count as collided.
    pub tol_collide: f64,
    /// Relative integrator tolerance.
    pub rtol: f64,
    /// Absolute integrator tolerance.
    pub atol: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            eps_param: 0.1,
            tol_eq: 1e-12,
            tol_class: 1e-10,
            tol_geom: 1e-12,
            tol_collide: 1e-9,
            rtol: 1e-9,
            atol: 1e-12,
        }
    }
}

impl Settings {
    /// Detection band for the codimension condition `a = 0`, scaled by the
    /// magnitude of the quantities entering `a`.
    pub fn tol_a(&self, theta: f64, gamma: f64, delta: f64) -> f64 {
        1e-9 * f64::max(1.0, f64::max(theta * theta, gamma * gamma * delta * delta))
    }

    pub fn validate(&self) -> crate::Result<()> {
        let all = [
            ("eps_param", self.eps_param),
            ("tol_eq", self.tol_eq),
            ("tol_class", self.tol_class),
            ("tol_geom", self.tol_geom),
            ("tol_collide", self.tol_collide),
            ("rtol", self.rtol),
            ("atol", self.atol),
        ];
        for (name, v) in all {
            if !(v > 0.0) || !v.is_finite() {
                return Err(crate::Error::Config(format!(
                    "tolerance {name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }
}
