//! Location of the four equilibria O, E1, E2, E3.
//!
//! E1 and E2 live on the axes and solve scalar quadratics; the branch that
//! continues the small root through the origin is selected with a
//! cancellation-safe formula (large root explicitly, small root by Vieta).
//! E3 is the interior equilibrium and is refined by a damped Newton
//! iteration on the pair of off-axis factor polynomials.
//!
//! Equilibria outside the first quadrant ("virtual") are ordinary values,
//! not errors: the diagrams reason about equilibria entering and leaving Q1.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Coefficients, ParamPoint, State};
use crate::settings::Settings;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EquilibriumId {
    O,
    E1,
    E2,
    E3,
}

impl fmt::Display for EquilibriumId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EquilibriumId::O => "O",
            EquilibriumId::E1 => "E1",
            EquilibriumId::E2 => "E2",
            EquilibriumId::E3 => "E3",
        };
        f.write_str(s)
    }
}

/// A located equilibrium. Coordinates may be negative (virtual equilibria
/// are first-class); `in_q1` records closed-first-quadrant membership and
/// `residual` the max-norm of the vector field at the point.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Equilibrium {
    pub id: EquilibriumId,
    pub state: State,
    pub in_q1: bool,
    pub residual: f64,
}

fn build(c: &Coefficients, mu: ParamPoint, id: EquilibriumId, state: State, settings: &Settings) -> Equilibrium {
    let v = c.vector_field(mu, state);
    Equilibrium {
        id,
        state,
        in_q1: state.in_q1(settings.tol_geom),
        residual: f64::max(v[0].abs(), v[1].abs()),
    }
}

/// Root of `c2 x^2 + c1 x + c0 = 0` nearest zero, computed without
/// cancellation: the large-magnitude root comes from the sign-matched
/// quadratic formula, the small one from the product of roots.
///
/// `c1` is assumed nonzero (guaranteed by the callers). Returns an error
/// when the discriminant is negative or the two roots are equidistant
/// from zero without coinciding.
fn quadratic_root_near_zero(c2: f64, c1: f64, c0: f64, id: EquilibriumId) -> Result<f64> {
    if c2 == 0.0 {
        return Ok(-c0 / c1);
    }
    let disc = c1 * c1 - 4.0 * c2 * c0;
    if disc < 0.0 {
        return Err(Error::EquilibriumNotFound {
            id,
            reason: format!("no real root: discriminant {disc} < 0"),
        });
    }
    let big = (-c1 - c1.signum() * disc.sqrt()) / (2.0 * c2);
    if big == 0.0 {
        // c1 != 0 makes this unreachable for disc >= 0, kept as a guard
        return Ok(0.0);
    }
    let small = c0 / (c2 * big);
    if small.abs() == big.abs() && small != big {
        return Err(Error::EquilibriumNotFound {
            id,
            reason: "ambiguous branch: both roots equidistant from zero".into(),
        });
    }
    Ok(small)
}

/// E1 = (xi1, 0) with `mu1 - theta*xi1 + N*xi1^2 = 0`, on the branch that
/// continues `xi1 = mu1/theta` through the origin.
pub fn locate_e1(c: &Coefficients, mu: ParamPoint, settings: &Settings) -> Result<Equilibrium> {
    let xi1 = quadratic_root_near_zero(c.n, -c.theta, mu.mu1, EquilibriumId::E1)?;
    Ok(build(c, mu, EquilibriumId::E1, State::new(xi1, 0.0), settings))
}

/// E2 = (0, xi2) with `mu2 + xi2 + P*xi2^2 = 0`, continuing `xi2 = -mu2`.
pub fn locate_e2(c: &Coefficients, mu: ParamPoint, settings: &Settings) -> Result<Equilibrium> {
    let xi2 = quadratic_root_near_zero(c.p, 1.0, mu.mu2, EquilibriumId::E2)?;
    Ok(build(c, mu, EquilibriumId::E2, State::new(0.0, xi2), settings))
}

/// Lowest-order position of E3; the Newton seed and the admissibility test
/// used by the curve constructions.
pub fn e3_leading_order(c: &Coefficients, mu: ParamPoint) -> State {
    let denom = c.theta_minus_gamma_delta();
    State::new(
        (mu.mu1 - c.gamma * mu.mu2) / denom,
        (c.delta * mu.mu1 - c.theta * mu.mu2) / denom,
    )
}

/// Off-axis factor polynomials whose common zero is E3.
fn e3_system(c: &Coefficients, mu: ParamPoint, st: State) -> [f64; 2] {
    let State { xi1, xi2 } = st;
    [
        mu.mu1 - c.theta * xi1 + c.gamma * xi2 - c.m * xi1 * xi2 + c.n * xi1 * xi1,
        mu.mu2 - c.delta * xi1 + xi2 + c.s * xi1 * xi1 + c.p * xi2 * xi2,
    ]
}

fn e3_system_jacobian(c: &Coefficients, st: State) -> [[f64; 2]; 2] {
    let State { xi1, xi2 } = st;
    [
        [-c.theta - c.m * xi2 + 2.0 * c.n * xi1, c.gamma - c.m * xi1],
        [-c.delta + 2.0 * c.s * xi1, 1.0 + 2.0 * c.p * xi2],
    ]
}

const E3_MAX_ITERS: usize = 50;
const E3_MAX_HALVINGS: usize = 25;

/// E3, the interior equilibrium, by damped Newton iteration seeded at the
/// lowest-order point. Converges to factor residual below `tol_eq` within
/// 50 iterations everywhere in the analysis disc; non-convergence (expected
/// only near `theta - gamma*delta = 0`) is reported, not papered over.
pub fn locate_e3(c: &Coefficients, mu: ParamPoint, settings: &Settings) -> Result<Equilibrium> {
    let mut st = e3_leading_order(c, mu);
    let mut f = e3_system(c, mu, st);
    let mut norm = f64::max(f[0].abs(), f[1].abs());
    // Tighten below tol_eq: the field residual is the factor residual times
    // a coordinate, so this overshoots the requested bound.
    let target = settings.tol_eq * 0.1;
    for _ in 0..E3_MAX_ITERS {
        if norm <= target {
            break;
        }
        let j = e3_system_jacobian(c, st);
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det == 0.0 || !det.is_finite() {
            return Err(Error::EquilibriumNotFound {
                id: EquilibriumId::E3,
                reason: format!("singular Newton matrix at ({}, {})", st.xi1, st.xi2),
            });
        }
        let dx = (-f[0] * j[1][1] + f[1] * j[0][1]) / det;
        let dy = (-j[0][0] * f[1] + j[1][0] * f[0]) / det;
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..E3_MAX_HALVINGS {
            let trial = State::new(st.xi1 + lambda * dx, st.xi2 + lambda * dy);
            let ft = e3_system(c, mu, trial);
            let nt = f64::max(ft[0].abs(), ft[1].abs());
            if nt < norm || nt <= target {
                st = trial;
                f = ft;
                norm = nt;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            return Err(Error::EquilibriumNotFound {
                id: EquilibriumId::E3,
                reason: format!("damped Newton stalled with residual {norm:e}"),
            });
        }
    }
    if norm > settings.tol_eq {
        return Err(Error::EquilibriumNotFound {
            id: EquilibriumId::E3,
            reason: format!(
                "indeterminate at mu = ({}, {}): residual {norm:e} after {E3_MAX_ITERS} iterations",
                mu.mu1, mu.mu2
            ),
        });
    }
    Ok(build(c, mu, EquilibriumId::E3, st, settings))
}

/// Outcome of one locator inside an aggregate: failures are per-equilibrium
/// diagnostics, never an abort of the whole set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum Located {
    Found(Equilibrium),
    Missing { id: EquilibriumId, reason: String },
}

impl Located {
    pub fn id(&self) -> EquilibriumId {
        match self {
            Located::Found(e) => e.id,
            Located::Missing { id, .. } => *id,
        }
    }

    pub fn as_found(&self) -> Option<&Equilibrium> {
        match self {
            Located::Found(e) => Some(e),
            Located::Missing { .. } => None,
        }
    }
}

/// All four equilibria with collision bookkeeping.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquilibriumSet {
    /// Entries in the fixed order O, E1, E2, E3.
    pub points: Vec<Located>,
    /// Pairs closer than `tol_collide`.
    pub collisions: Vec<(EquilibriumId, EquilibriumId)>,
}

impl EquilibriumSet {
    pub fn get(&self, id: EquilibriumId) -> &Located {
        let idx = match id {
            EquilibriumId::O => 0,
            EquilibriumId::E1 => 1,
            EquilibriumId::E2 => 2,
            EquilibriumId::E3 => 3,
        };
        &self.points[idx]
    }

    /// Representative points after merging collided ones.
    pub fn distinct_states(&self, tol: f64) -> Vec<State> {
        let mut reps: Vec<State> = Vec::new();
        for p in self.points.iter().filter_map(Located::as_found) {
            if !reps.iter().any(|r| r.distance(&p.state) <= tol) {
                reps.push(p.state);
            }
        }
        reps
    }
}

/// Locate O, E1, E2, E3 for one parameter point.
pub fn all_equilibria(c: &Coefficients, mu: ParamPoint, settings: &Settings) -> EquilibriumSet {
    let origin = build(c, mu, EquilibriumId::O, State::new(0.0, 0.0), settings);
    let mut points = vec![Located::Found(origin)];
    for (id, res) in [
        (EquilibriumId::E1, locate_e1(c, mu, settings)),
        (EquilibriumId::E2, locate_e2(c, mu, settings)),
        (EquilibriumId::E3, locate_e3(c, mu, settings)),
    ] {
        points.push(match res {
            Ok(e) => Located::Found(e),
            Err(err) => Located::Missing {
                id,
                reason: err.to_string(),
            },
        });
    }
    let mut collisions = Vec::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if let (Some(a), Some(b)) = (points[i].as_found(), points[j].as_found()) {
                if a.state.distance(&b.state) <= settings.tol_collide {
                    collisions.push((a.id, b.id));
                }
            }
        }
    }
    EquilibriumSet { points, collisions }
}
