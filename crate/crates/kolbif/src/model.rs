//! The canonical planar Kolmogorov system and its derivatives.
//!
//! The family under study is, in scaled coordinates,
//!
//! ```text
//! d(xi1)/dt = xi1 * (mu1 - theta*xi1 + gamma*xi2 - M*xi1*xi2 + N*xi1^2)
//! d(xi2)/dt = xi2 * (mu2 - delta*xi1 +       xi2 + S*xi1^2   + P*xi2^2)
//! ```
//!
//! with `gamma < 0`, `theta*delta != 0` and `theta - gamma*delta != 0`.
//! The scaled form is obtained from a raw two-parameter Kolmogorov system
//! by [`canonicalize`]; both coordinate axes are invariant and the analysis
//! is confined to the closed first quadrant.
//!
//! Everything in this module is a pure function of its arguments. The right
//! hand side is evaluated in factored form `xi_i * (...)`, so a coordinate
//! that is exactly zero has exactly zero velocity; the axes are invariant in
//! floating point, not just analytically.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point (mu1, mu2) in the parameter plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamPoint {
    pub mu1: f64,
    pub mu2: f64,
}

impl ParamPoint {
    pub fn new(mu1: f64, mu2: f64) -> Self {
        ParamPoint { mu1, mu2 }
    }

    pub fn norm(&self) -> f64 {
        self.mu1.hypot(self.mu2)
    }
}

/// A point (xi1, xi2) in the scaled state plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub xi1: f64,
    pub xi2: f64,
}

impl State {
    pub fn new(xi1: f64, xi2: f64) -> Self {
        State { xi1, xi2 }
    }

    /// Membership in the closed first quadrant, with `tol_geom` slack.
    pub fn in_q1(&self, tol_geom: f64) -> bool {
        self.xi1 >= -tol_geom && self.xi2 >= -tol_geom
    }

    pub fn distance(&self, other: &State) -> f64 {
        (self.xi1 - other.xi1).hypot(self.xi2 - other.xi2)
    }
}

/// Coefficients of the raw (unscaled) system
///
/// ```text
/// dx/dtau = 2x * (mu1 + p11*x + p12*y + p13*x*y + s1*x^2)
/// dy/dtau = 2y * (mu2 + p21*x + p22*y + p23*x^2 + s2*y^2)
/// ```
///
/// evaluated at the reference parameter value; the analysis only consumes
/// these frozen values.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RawCoefficients {
    pub mu: ParamPoint,
    pub p11: f64,
    pub p12: f64,
    pub p13: f64,
    pub p21: f64,
    pub p22: f64,
    pub p23: f64,
    pub s1: f64,
    pub s2: f64,
}

/// Wall-clock direction of the scaled time relative to raw time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TimeDirection {
    /// t = 2*tau.
    Forward,
    /// t = -2*tau; parameters and the odd coefficients are negated so the
    /// scaled system keeps the canonical sign pattern.
    Reversed,
}

/// Result of scaling a raw system into canonical form.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Canonicalized {
    pub coefficients: Coefficients,
    pub time: TimeDirection,
    /// The raw parameter point mapped into the canonical frame
    /// (negated when time is reversed).
    pub mu: ParamPoint,
}

/// Coefficients (theta, gamma, delta, M, N, S, P) of the canonical system.
///
/// Invariants enforced at construction: `gamma < 0`, `theta*delta != 0`,
/// `theta - gamma*delta != 0`, all values finite.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Coefficients {
    pub theta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub m: f64,
    pub n: f64,
    pub s: f64,
    pub p: f64,
}

impl Coefficients {
    pub fn new(
        theta: f64,
        gamma: f64,
        delta: f64,
        m: f64,
        n: f64,
        s: f64,
        p: f64,
    ) -> Result<Self> {
        for (name, v) in [
            ("theta", theta),
            ("gamma", gamma),
            ("delta", delta),
            ("M", m),
            ("N", n),
            ("S", s),
            ("P", p),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!("{name} = {v} is not finite")));
            }
        }
        if gamma >= 0.0 {
            return Err(Error::GammaOutOfScope { gamma });
        }
        if theta * delta == 0.0 {
            return Err(Error::DegenerateCoefficients {
                reason: format!("theta*delta = 0 (theta = {theta}, delta = {delta})"),
            });
        }
        if theta - gamma * delta == 0.0 {
            return Err(Error::DegenerateCoefficients {
                reason: format!("theta - gamma*delta = 0 (theta = {theta}, gamma*delta = {})", gamma * delta),
            });
        }
        Ok(Coefficients {
            theta,
            gamma,
            delta,
            m,
            n,
            s,
            p,
        })
    }

    /// Shorthand for the recurring combination `theta - gamma*delta`.
    pub fn theta_minus_gamma_delta(&self) -> f64 {
        self.theta - self.gamma * self.delta
    }

    /// Right hand side of the canonical system at `s` for parameter `mu`.
    ///
    /// Evaluated in factored form so the axes are exactly invariant.
    pub fn vector_field(&self, mu: ParamPoint, st: State) -> [f64; 2] {
        let State { xi1, xi2 } = st;
        let g1 = mu.mu1 - self.theta * xi1 + self.gamma * xi2 - self.m * xi1 * xi2
            + self.n * xi1 * xi1;
        let g2 =
            mu.mu2 - self.delta * xi1 + xi2 + self.s * xi1 * xi1 + self.p * xi2 * xi2;
        [xi1 * g1, xi2 * g2]
    }

    /// Analytic Jacobian of [`Coefficients::vector_field`] at `st`.
    pub fn jacobian(&self, mu: ParamPoint, st: State) -> [[f64; 2]; 2] {
        let State { xi1, xi2 } = st;
        let j11 = mu.mu1 - 2.0 * self.theta * xi1 + self.gamma * xi2
            - 2.0 * self.m * xi1 * xi2
            + 3.0 * self.n * xi1 * xi1;
        let j12 = xi1 * (self.gamma - self.m * xi1);
        let j21 = xi2 * (-self.delta + 2.0 * self.s * xi1);
        let j22 = mu.mu2 - self.delta * xi1 + 2.0 * xi2 + self.s * xi1 * xi1
            + 3.0 * self.p * xi2 * xi2;
        [[j11, j12], [j21, j22]]
    }

    /// Central finite-difference Jacobian, used as the independent check of
    /// the analytic one.
    pub fn jacobian_fd(&self, mu: ParamPoint, st: State, h: f64) -> [[f64; 2]; 2] {
        let mut j = [[0.0; 2]; 2];
        for col in 0..2 {
            let mut plus = st;
            let mut minus = st;
            let step = h * f64::max(1.0, if col == 0 { st.xi1.abs() } else { st.xi2.abs() });
            if col == 0 {
                plus.xi1 += step;
                minus.xi1 -= step;
            } else {
                plus.xi2 += step;
                minus.xi2 -= step;
            }
            let fp = self.vector_field(mu, plus);
            let fm = self.vector_field(mu, minus);
            for row in 0..2 {
                j[row][col] = (fp[row] - fm[row]) / (2.0 * step);
            }
        }
        j
    }

    /// Second differential of the field at `st` applied to directions (u, v).
    pub fn second_differential(&self, st: State, u: [f64; 2], v: [f64; 2]) -> [f64; 2] {
        let State { xi1, xi2 } = st;
        // component 1: f1 = mu1*xi1 - theta*xi1^2 + gamma*xi1*xi2 - M*xi1^2*xi2 + N*xi1^3
        let f1_11 = -2.0 * self.theta - 2.0 * self.m * xi2 + 6.0 * self.n * xi1;
        let f1_12 = self.gamma - 2.0 * self.m * xi1;
        let f1_22 = 0.0;
        // component 2: f2 = mu2*xi2 - delta*xi1*xi2 + xi2^2 + S*xi1^2*xi2 + P*xi2^3
        let f2_11 = 2.0 * self.s * xi2;
        let f2_12 = -self.delta + 2.0 * self.s * xi1;
        let f2_22 = 2.0 + 6.0 * self.p * xi2;
        let cross = u[0] * v[1] + u[1] * v[0];
        [
            f1_11 * u[0] * v[0] + f1_12 * cross + f1_22 * u[1] * v[1],
            f2_11 * u[0] * v[0] + f2_12 * cross + f2_22 * u[1] * v[1],
        ]
    }

    /// Third differential of the field applied to (u, v, w); constant in the
    /// state because the field is cubic.
    pub fn third_differential(&self, u: [f64; 2], v: [f64; 2], w: [f64; 2]) -> [f64; 2] {
        let sym_112 = u[0] * v[0] * w[1] + u[0] * v[1] * w[0] + u[1] * v[0] * w[0];
        let d3_1 = 6.0 * self.n * u[0] * v[0] * w[0] - 2.0 * self.m * sym_112;
        let d3_2 = 2.0 * self.s * sym_112 + 6.0 * self.p * u[1] * v[1] * w[1];
        [d3_1, d3_2]
    }
}

/// Scale a raw system into canonical form.
///
/// Requires `p12 * p22 < 0`. For `p12 < 0 < p22` the change
/// `xi1 = -p12 x, xi2 = p22 y, t = 2 tau` applies directly; for
/// `p12 > 0 > p22` the mirrored change reverses time and negates the
/// parameters and the odd coefficients (M, N, S, P). The returned flag
/// records which frame is in use so reports can show both.
pub fn canonicalize(raw: &RawCoefficients) -> Result<Canonicalized> {
    for (name, v) in [
        ("p11", raw.p11),
        ("p12", raw.p12),
        ("p13", raw.p13),
        ("p21", raw.p21),
        ("p22", raw.p22),
        ("p23", raw.p23),
        ("s1", raw.s1),
        ("s2", raw.s2),
        ("mu1", raw.mu.mu1),
        ("mu2", raw.mu.mu2),
    ] {
        if !v.is_finite() {
            return Err(Error::InvalidInput(format!("{name} = {v} is not finite")));
        }
    }
    let product = raw.p12 * raw.p22;
    if product >= 0.0 {
        return Err(Error::RawOutOfScope { product });
    }
    let theta = raw.p11 / raw.p12;
    let gamma = raw.p12 / raw.p22;
    let delta = raw.p21 / raw.p12;
    let m = raw.p13 / (raw.p12 * raw.p22);
    let n = raw.s1 / (raw.p12 * raw.p12);
    let s = raw.p23 / (raw.p12 * raw.p12);
    let p = raw.s2 / (raw.p22 * raw.p22);
    let (time, sign) = if raw.p12 < 0.0 {
        (TimeDirection::Forward, 1.0)
    } else {
        (TimeDirection::Reversed, -1.0)
    };
    let coefficients = Coefficients::new(
        theta,
        gamma,
        delta,
        sign * m,
        sign * n,
        sign * s,
        sign * p,
    )?;
    Ok(Canonicalized {
        coefficients,
        time,
        mu: ParamPoint::new(sign * raw.mu.mu1, sign * raw.mu.mu2),
    })
}

/// Velocity of the raw system at (x, y); used by consistency checks.
pub fn raw_vector_field(raw: &RawCoefficients, x: f64, y: f64) -> [f64; 2] {
    let gx = raw.mu.mu1 + raw.p11 * x + raw.p12 * y + raw.p13 * x * y + raw.s1 * x * x;
    let gy = raw.mu.mu2 + raw.p21 * x + raw.p22 * y + raw.p23 * x * x + raw.s2 * y * y;
    [2.0 * x * gx, 2.0 * y * gy]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * f64::max(1.0, f64::max(a.abs(), b.abs()))
    }

    #[test]
    fn canonicalize_forward_ratios() {
        let raw = RawCoefficients {
            mu: ParamPoint::new(0.0, 0.0),
            p11: -1.0,
            p12: -1.0,
            p13: 0.0,
            p21: 1.0,
            p22: 1.0,
            p23: 0.0,
            s1: 0.0,
            s2: 0.0,
        };
        let canon = canonicalize(&raw).unwrap();
        let c = canon.coefficients;
        assert_eq!(canon.time, TimeDirection::Forward);
        assert_eq!(c.theta, 1.0);
        assert_eq!(c.gamma, -1.0);
        assert_eq!(c.delta, -1.0);
        assert_eq!((c.m, c.n, c.s, c.p), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn canonicalize_rejects_nonnegative_product() {
        let raw = RawCoefficients {
            mu: ParamPoint::new(0.0, 0.0),
            p11: 1.0,
            p12: 2.0,
            p13: 0.0,
            p21: 0.0,
            p22: 3.0,
            p23: 0.0,
            s1: 0.0,
            s2: 0.0,
        };
        match canonicalize(&raw) {
            Err(Error::RawOutOfScope { product }) => assert_eq!(product, 6.0),
            other => panic!("expected RawOutOfScope, got {other:?}"),
        }
        let zero = RawCoefficients { p12: 0.0, ..raw };
        assert!(matches!(
            canonicalize(&zero),
            Err(Error::RawOutOfScope { .. })
        ));
    }

    #[test]
    fn canonicalize_reversed_frame() {
        let raw = RawCoefficients {
            mu: ParamPoint::new(0.01, -0.02),
            p11: 2.0,
            p12: 1.0,
            p13: 0.0,
            p21: -3.0,
            p22: -1.0,
            p23: 0.0,
            s1: 0.0,
            s2: 0.0,
        };
        let canon = canonicalize(&raw).unwrap();
        let c = canon.coefficients;
        assert_eq!(canon.time, TimeDirection::Reversed);
        assert_eq!(c.theta, 2.0);
        assert_eq!(c.gamma, -1.0);
        assert_eq!(c.delta, -3.0);
        assert_eq!(canon.mu, ParamPoint::new(-0.01, 0.02));
    }

    /// The scaled field must reproduce the raw field through the change of
    /// variables, up to the d(tau)/dt factor, in both frames.
    #[test]
    fn canonicalize_is_consistent_with_the_raw_flow() {
        let cases = [
            // p12 < 0 < p22: forward frame
            RawCoefficients {
                mu: ParamPoint::new(0.013, -0.021),
                p11: 0.7,
                p12: -1.3,
                p13: 0.4,
                p21: -0.9,
                p22: 2.1,
                p23: 0.25,
                s1: -0.6,
                s2: 0.35,
            },
            // p12 > 0 > p22: reversed frame
            RawCoefficients {
                mu: ParamPoint::new(-0.004, 0.017),
                p11: 1.1,
                p12: 0.8,
                p13: -0.5,
                p21: 0.45,
                p22: -1.7,
                p23: -0.3,
                s1: 0.2,
                s2: -0.4,
            },
        ];
        for raw in cases {
            let canon = canonicalize(&raw).unwrap();
            let c = canon.coefficients;
            let (sx, sy, dtau_dt) = match canon.time {
                TimeDirection::Forward => (-raw.p12, raw.p22, 0.5),
                TimeDirection::Reversed => (raw.p12, -raw.p22, -0.5),
            };
            for &(x, y) in &[(0.04, 0.03), (0.0, 0.05), (0.07, 0.0), (0.011, 0.019)] {
                let raw_v = raw_vector_field(&raw, x, y);
                let st = State::new(sx * x, sy * y);
                let scaled = c.vector_field(canon.mu, st);
                // d(xi)/dt = diag(sx, sy) * d(x,y)/dtau * dtau/dt
                let expect = [sx * raw_v[0] * dtau_dt, sy * raw_v[1] * dtau_dt];
                for i in 0..2 {
                    assert!(
                        rel_close(scaled[i], expect[i], 1e-12),
                        "component {i} at ({x}, {y}): {} vs {}",
                        scaled[i],
                        expect[i]
                    );
                }
            }
        }
    }

    #[test]
    fn origin_and_axes_are_invariant() {
        let c = Coefficients::new(-2.0, -1.0, 1.0, 0.3, -0.4, 0.2, 0.6).unwrap();
        let mu = ParamPoint::new(0.03, -0.05);
        assert_eq!(c.vector_field(mu, State::new(0.0, 0.0)), [0.0, 0.0]);
        let on_y = c.vector_field(mu, State::new(0.0, 0.71));
        assert_eq!(on_y[0], 0.0);
        let on_x = c.vector_field(mu, State::new(0.29, 0.0));
        assert_eq!(on_x[1], 0.0);
    }

    #[test]
    fn field_vanishes_at_the_interior_equilibrium_of_the_linear_case() {
        let c = Coefficients::new(-2.0, -1.0, 1.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        let mu = ParamPoint::new(-0.03, 0.01);
        let v = c.vector_field(mu, State::new(0.02, 0.01));
        assert_eq!(v, [0.0, 0.0]);
    }

    #[test]
    fn jacobian_at_origin_is_diag_mu() {
        let c = Coefficients::new(1.5, -0.7, 2.0, 0.1, 0.2, 0.3, 0.4).unwrap();
        let mu = ParamPoint::new(-0.03, 0.01);
        let j = c.jacobian(mu, State::new(0.0, 0.0));
        assert_eq!(j, [[-0.03, 0.0], [0.0, 0.01]]);
    }

    #[test]
    fn jacobian_by_hand_on_the_x_axis() {
        // theta = 1, M = N = S = P = 0, mu = 0, state (1, 0):
        // d(f1)/d(xi1) = -2*theta*xi1 = -2, d(f1)/d(xi2) = gamma*xi1 = gamma,
        // d(f2)/d(xi1) = 0, d(f2)/d(xi2) = -delta*xi1 = -delta.
        let c = Coefficients::new(1.0, -1.0, -2.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        let j = c.jacobian(ParamPoint::new(0.0, 0.0), State::new(1.0, 0.0));
        assert_eq!(j, [[-2.0, c.gamma], [0.0, -c.delta]]);
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let c = Coefficients::new(-1.3, -0.8, -1.9, 0.45, -0.35, 0.27, -0.52).unwrap();
        let mu = ParamPoint::new(0.021, -0.037);
        for &(x, y) in &[(0.05, 0.03), (0.2, 0.15), (0.0, 0.12), (0.08, 0.0)] {
            let st = State::new(x, y);
            let a = c.jacobian(mu, st);
            let fd = c.jacobian_fd(mu, st, 1e-6);
            for r in 0..2 {
                for col in 0..2 {
                    assert!(
                        rel_close(a[r][col], fd[r][col], 1e-6),
                        "entry ({r},{col}): analytic {} vs fd {}",
                        a[r][col],
                        fd[r][col]
                    );
                }
            }
        }
    }

    #[test]
    fn coefficient_invariants_are_enforced() {
        assert!(matches!(
            Coefficients::new(1.0, 0.5, 1.0, 0.0, 0.0, 0.0, 0.0),
            Err(Error::GammaOutOfScope { .. })
        ));
        assert!(matches!(
            Coefficients::new(0.0, -1.0, 1.0, 0.0, 0.0, 0.0, 0.0),
            Err(Error::DegenerateCoefficients { .. })
        ));
        assert!(matches!(
            Coefficients::new(1.0, -1.0, -1.0, 0.0, 0.0, 0.0, 0.0),
            Err(Error::DegenerateCoefficients { .. })
        ));
        assert!(Coefficients::new(1.0, -1.0, -2.0, 0.0, 0.0, 0.0, 0.0).is_ok());
    }
}
