//! Eigenvalue data and linear classification of equilibria.
//!
//! At the interior equilibrium the characteristic polynomial is
//! `lambda^2 - 2*half_trace*lambda + det`, so the eigenvalues are
//! `half_trace +- sqrt(disc)` with `disc = half_trace^2 - det`. All three
//! quantities have closed forms in the equilibrium coordinates; the
//! finite-difference Jacobian serves as an independent oracle.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::equilibria::{self, Equilibrium, EquilibriumId};
use crate::error::{Error, Result};
use crate::model::{Coefficients, ParamPoint};
use crate::settings::Settings;

/// Closed-form characteristic quantities at the interior equilibrium.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CharQuantities {
    /// Half the trace of the Jacobian.
    pub half_trace: f64,
    /// Determinant of the Jacobian.
    pub det: f64,
    /// Quarter discriminant `half_trace^2 - det`; eigenvalues are
    /// `half_trace +- sqrt(disc)`.
    pub disc: f64,
    /// `M*delta - 2N + 2S*gamma`.
    pub c11: f64,
    /// `M + 2P*theta`.
    pub c12: f64,
}

/// Eigenvalue pair, complex when `disc < 0`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EigenPair {
    pub lambda1: Complex64,
    pub lambda2: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassKind {
    Saddle,
    StableNode,
    UnstableNode,
    StableFocus,
    UnstableFocus,
    NonHyperbolic,
    /// Nonzero rotation with vanishing damping: a Hopf-locus candidate.
    CenterCandidate,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassKind::Saddle => "saddle",
            ClassKind::StableNode => "stable node",
            ClassKind::UnstableNode => "unstable node",
            ClassKind::StableFocus => "stable focus",
            ClassKind::UnstableFocus => "unstable focus",
            ClassKind::NonHyperbolic => "non-hyperbolic",
            ClassKind::CenterCandidate => "center candidate",
        };
        f.write_str(s)
    }
}

/// A classification together with the distance of the deciding quantity
/// from its sign threshold, so callers can keep away from boundaries.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EquilibriumClass {
    pub kind: ClassKind,
    pub margin: f64,
}

/// Evaluate the closed-form `half_trace`, `det` and the full quartic `disc`
/// polynomial at a located interior equilibrium.
pub fn char_quantities_e3(c: &Coefficients, e: &Equilibrium, settings: &Settings) -> Result<CharQuantities> {
    if e.id != EquilibriumId::E3 {
        return Err(Error::Precondition(format!(
            "char_quantities_e3 needs E3, got {}",
            e.id
        )));
    }
    if e.residual > settings.tol_eq {
        return Err(Error::Precondition(format!(
            "E3 residual {:e} exceeds tol_eq {:e}",
            e.residual, settings.tol_eq
        )));
    }
    Ok(char_quantities_at(c, e.state.xi1, e.state.xi2))
}

/// The same closed forms as polynomials in the coordinates; exposed for
/// curve constructions that evaluate them off equilibrium.
pub fn char_quantities_at(c: &Coefficients, xi1: f64, xi2: f64) -> CharQuantities {
    let Coefficients {
        theta,
        gamma,
        delta,
        m,
        n,
        s,
        p,
        ..
    } = *c;
    let c11 = m * delta - 2.0 * n + 2.0 * s * gamma;
    let c12 = m + 2.0 * p * theta;
    let half_trace = 0.5 * xi2 - 0.5 * theta * xi1 + n * xi1 * xi1 - 0.5 * m * xi1 * xi2
        + p * xi2 * xi2;
    let det = -xi1
        * xi2
        * (theta - gamma * delta + c11 * xi1 + c12 * xi2
            - 4.0 * n * p * xi1 * xi2
            - 2.0 * m * s * xi1 * xi1
            + 2.0 * m * p * xi2 * xi2);
    // Quarter discriminant, all ten terms of the quartic.
    let disc = 0.25
        * (theta * theta * xi1 * xi1
            + 2.0 * xi1 * xi2 * (theta - 2.0 * gamma * delta)
            + xi2 * xi2)
        - n * theta * xi1.powi(3)
        + 0.5 * (2.0 * n + m * theta + 2.0 * c11) * xi1 * xi1 * xi2
        + 0.5 * (m + 2.0 * p * theta) * xi1 * xi2 * xi2
        + p * xi2.powi(3)
        + n * n * xi1.powi(4)
        - (n + 2.0 * s) * m * xi1.powi(3) * xi2
        + 0.25 * (m * m - 8.0 * n * p) * xi1 * xi1 * xi2 * xi2
        + m * p * xi1 * xi2.powi(3)
        + p * p * xi2.powi(4);
    CharQuantities {
        half_trace,
        det,
        disc,
        c11,
        c12,
    }
}

/// Eigenvalues `half_trace +- sqrt(disc)`.
pub fn eigenvalues(q: &CharQuantities) -> EigenPair {
    if q.disc >= 0.0 {
        let r = q.disc.sqrt();
        EigenPair {
            lambda1: Complex64::new(q.half_trace + r, 0.0),
            lambda2: Complex64::new(q.half_trace - r, 0.0),
        }
    } else {
        let w = (-q.disc).sqrt();
        EigenPair {
            lambda1: Complex64::new(q.half_trace, w),
            lambda2: Complex64::new(q.half_trace, -w),
        }
    }
}

/// Sign-table classification with a `tol_class` dead band: points inside
/// the band are reported non-hyperbolic rather than force-classified.
pub fn classify(q: &CharQuantities, settings: &Settings) -> EquilibriumClass {
    let tol = settings.tol_class;
    let p = q.half_trace;
    if q.det < -tol {
        return EquilibriumClass {
            kind: ClassKind::Saddle,
            margin: q.det.abs(),
        };
    }
    if q.det > tol {
        if q.disc > tol && p.abs() > tol {
            let kind = if p > 0.0 {
                ClassKind::UnstableNode
            } else {
                ClassKind::StableNode
            };
            return EquilibriumClass {
                kind,
                margin: q.det.min(q.disc).min(p.abs()),
            };
        }
        if q.disc < -tol {
            if p.abs() > tol {
                let kind = if p > 0.0 {
                    ClassKind::UnstableFocus
                } else {
                    ClassKind::StableFocus
                };
                return EquilibriumClass {
                    kind,
                    margin: q.det.min(-q.disc).min(p.abs()),
                };
            }
            // rotation with no decided damping: Hopf locus
            return EquilibriumClass {
                kind: ClassKind::CenterCandidate,
                margin: p.abs(),
            };
        }
    }
    EquilibriumClass {
        kind: ClassKind::NonHyperbolic,
        margin: q.det.abs().min(q.disc.abs()).min(p.abs()),
    }
}

/// Classification of a boundary equilibrium from its two real eigenvalues
/// (the axes are invariant, so both eigendirections are axis-aligned).
pub fn classify_real_pair(lambda1: f64, lambda2: f64, settings: &Settings) -> EquilibriumClass {
    let q = CharQuantities {
        half_trace: 0.5 * (lambda1 + lambda2),
        det: lambda1 * lambda2,
        disc: 0.25 * (lambda1 - lambda2) * (lambda1 - lambda2),
        c11: 0.0,
        c12: 0.0,
    };
    let tol = settings.tol_class;
    if lambda1.abs() <= tol || lambda2.abs() <= tol {
        return EquilibriumClass {
            kind: ClassKind::NonHyperbolic,
            margin: lambda1.abs().min(lambda2.abs()),
        };
    }
    classify(&q, settings)
}

/// Exact eigenvalues of a boundary equilibrium: for O the parameters
/// themselves, for E1/E2 the tangential and transverse derivatives along
/// and across the carrying axis.
pub fn boundary_eigenvalues(c: &Coefficients, mu: ParamPoint, e: &Equilibrium) -> Result<[f64; 2]> {
    match e.id {
        EquilibriumId::O => Ok([mu.mu1, mu.mu2]),
        EquilibriumId::E1 => {
            let xi1 = e.state.xi1;
            Ok([
                mu.mu1 - 2.0 * c.theta * xi1 + 3.0 * c.n * xi1 * xi1,
                mu.mu2 - c.delta * xi1 + c.s * xi1 * xi1,
            ])
        }
        EquilibriumId::E2 => {
            let xi2 = e.state.xi2;
            Ok([
                mu.mu1 + c.gamma * xi2,
                mu.mu2 + 2.0 * xi2 + 3.0 * c.p * xi2 * xi2,
            ])
        }
        EquilibriumId::E3 => Err(Error::Precondition(
            "boundary_eigenvalues is for O, E1, E2".into(),
        )),
    }
}

/// Report for one boundary equilibrium.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundaryReport {
    pub id: EquilibriumId,
    pub eigenvalues: [f64; 2],
    pub class: EquilibriumClass,
    pub in_q1: bool,
}

/// Classify O, E1 and E2 at their located coordinates. E1/E2 that do not
/// exist (no real root) are skipped in the returned list.
pub fn classify_boundary_equilibria(
    c: &Coefficients,
    mu: ParamPoint,
    settings: &Settings,
) -> Vec<BoundaryReport> {
    let mut out = Vec::with_capacity(3);
    let origin = Equilibrium {
        id: EquilibriumId::O,
        state: crate::model::State::new(0.0, 0.0),
        in_q1: true,
        residual: 0.0,
    };
    let mut push = |e: &Equilibrium| {
        let lam = boundary_eigenvalues(c, mu, e).expect("boundary id");
        out.push(BoundaryReport {
            id: e.id,
            eigenvalues: lam,
            class: classify_real_pair(lam[0], lam[1], settings),
            in_q1: e.in_q1,
        });
    };
    push(&origin);
    if let Ok(e1) = equilibria::locate_e1(c, mu, settings) {
        push(&e1);
    }
    if let Ok(e2) = equilibria::locate_e2(c, mu, settings) {
        push(&e2);
    }
    out
}

/// Compare the closed forms against the finite-difference Jacobian at a
/// located equilibrium. Mismatch names the offending quantity.
pub fn oracle_check(
    c: &Coefficients,
    mu: ParamPoint,
    e: &Equilibrium,
    settings: &Settings,
) -> Result<()> {
    if e.residual > settings.tol_eq {
        return Err(Error::Precondition(format!(
            "residual {:e} exceeds tol_eq",
            e.residual
        )));
    }
    let closed = char_quantities_at(c, e.state.xi1, e.state.xi2);
    let j = c.jacobian_fd(mu, e.state, 1e-6);
    let tr_half = 0.5 * (j[0][0] + j[1][1]);
    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    let disc = tr_half * tr_half - det;
    let checks: [(&'static str, f64, f64); 3] = [
        ("half_trace", closed.half_trace, tr_half),
        ("det", closed.det, det),
        ("disc", closed.disc, disc),
    ];
    for (name, cl, num) in checks {
        if (cl - num).abs() > 1e-10 * f64::max(1.0, cl.abs()) {
            return Err(Error::OracleMismatch {
                quantity: name,
                closed: cl,
                numeric: num,
            });
        }
    }
    let closed_eigs = eigenvalues(&closed);
    let numeric_eigs = eigenvalues(&CharQuantities {
        half_trace: tr_half,
        det,
        disc,
        c11: 0.0,
        c12: 0.0,
    });
    for (cl, num) in [
        (closed_eigs.lambda1, numeric_eigs.lambda1),
        (closed_eigs.lambda2, numeric_eigs.lambda2),
    ] {
        if (cl - num).norm() > 1e-8 * f64::max(1.0, cl.norm()) {
            return Err(Error::OracleMismatch {
                quantity: "eigenvalues",
                closed: cl.re,
                numeric: num.re,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibria::locate_e3;
    use crate::model::State;

    fn settings() -> Settings {
        Settings::default()
    }

    #[test]
    fn worked_linear_point() {
        let c = Coefficients::new(-2.0, -1.0, 1.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        let mu = ParamPoint::new(-0.03, 0.01);
        let e = locate_e3(&c, mu, &settings()).unwrap();
        let q = char_quantities_e3(&c, &e, &settings()).unwrap();
        assert!((q.half_trace - 0.025).abs() < 1e-15);
        assert!((q.det - 0.0002).abs() < 1e-15);
        assert!((q.disc - 0.000425).abs() < 1e-15);
        let pair = eigenvalues(&q);
        assert!((pair.lambda1.re - 0.045616).abs() < 1e-6);
        assert!((pair.lambda2.re - 0.004384).abs() < 1e-6);
        assert_eq!(pair.lambda1.im, 0.0);
        let class = classify(&q, &settings());
        assert_eq!(class.kind, ClassKind::UnstableNode);
    }

    #[test]
    fn quantities_vanish_at_the_origin() {
        let c = Coefficients::new(-2.0, -1.0, 1.0, 0.4, 0.3, -0.2, 0.1).unwrap();
        let q = char_quantities_at(&c, 0.0, 0.0);
        assert_eq!((q.half_trace, q.det, q.disc), (0.0, 0.0, 0.0));
    }

    #[test]
    fn disc_equals_half_trace_squared_minus_det() {
        // The quartic is the algebraic identity disc = half_trace^2 - det;
        // spot-check off equilibrium where no cancellation hides a bug.
        let c = Coefficients::new(-1.7, -0.6, -2.3, 0.8, -0.7, 0.9, -0.45).unwrap();
        for &(x1, x2) in &[(0.11, 0.07), (0.02, 0.31), (0.25, 0.19), (0.0, 0.1)] {
            let q = char_quantities_at(&c, x1, x2);
            let direct = q.half_trace * q.half_trace - q.det;
            assert!(
                (q.disc - direct).abs() <= 1e-12 * f64::max(1.0, direct.abs()),
                "at ({x1}, {x2}): {} vs {}",
                q.disc,
                direct
            );
        }
    }

    #[test]
    fn det_leading_term_matches_the_product_formula() {
        let c = Coefficients::new(-2.0, -1.0, 1.0, 0.3, -0.2, 0.4, 0.25).unwrap();
        let s = settings();
        for &(m1, m2) in &[(-0.008, 0.002), (-0.006, -0.004), (-0.009, 0.0035)] {
            let mu = ParamPoint::new(m1, m2);
            let e = locate_e3(&c, mu, &s).unwrap();
            let q = char_quantities_e3(&c, &e, &s).unwrap();
            let leading = -c.theta_minus_gamma_delta() * e.state.xi1 * e.state.xi2;
            // relative 1 + O(|mu|) agreement
            assert!(
                (q.det - leading).abs() <= 0.1 * leading.abs(),
                "det {} vs leading {}",
                q.det,
                leading
            );
        }
    }

    #[test]
    fn eigenvalue_edge_cases() {
        let s = settings();
        let pure = eigenvalues(&CharQuantities {
            half_trace: 0.0,
            det: 0.0001,
            disc: -0.0001,
            c11: 0.0,
            c12: 0.0,
        });
        assert_eq!(pure.lambda1, Complex64::new(0.0, 0.01));
        assert_eq!(pure.lambda2, Complex64::new(0.0, -0.01));
        let class = classify(
            &CharQuantities {
                half_trace: 0.0,
                det: 0.0001,
                disc: -0.0001,
                c11: 0.0,
                c12: 0.0,
            },
            &s,
        );
        assert_eq!(class.kind, ClassKind::CenterCandidate);

        let double = eigenvalues(&CharQuantities {
            half_trace: 1.0,
            det: 1.0,
            disc: 0.0,
            c11: 0.0,
            c12: 0.0,
        });
        assert_eq!(double.lambda1, double.lambda2);
    }

    #[test]
    fn saddle_wins_regardless_of_damping() {
        let s = settings();
        for p in [-0.4, 0.0, 0.4] {
            let q = CharQuantities {
                half_trace: p,
                det: -0.0002,
                disc: p * p + 0.0002,
                c11: 0.0,
                c12: 0.0,
            };
            assert_eq!(classify(&q, &s).kind, ClassKind::Saddle);
        }
    }

    #[test]
    fn boundary_classification_examples() {
        let s = settings();
        let c = Coefficients::new(-2.0, -1.0, 1.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        let mu = ParamPoint::new(-0.03, 0.01);
        let reports = classify_boundary_equilibria(&c, mu, &s);
        let o = &reports[0];
        assert_eq!(o.eigenvalues, [-0.03, 0.01]);
        assert_eq!(o.class.kind, ClassKind::Saddle);

        // E1 with theta = 1, N = S = 0, delta = 1, mu = (0.02, 0.05)
        let c = Coefficients::new(1.0, -1.0, 1.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        let mu = ParamPoint::new(0.02, 0.05);
        let reports = classify_boundary_equilibria(&c, mu, &s);
        let e1 = reports.iter().find(|r| r.id == EquilibriumId::E1).unwrap();
        assert!((e1.eigenvalues[0] + 0.02).abs() < 1e-15);
        assert!((e1.eigenvalues[1] - 0.03).abs() < 1e-15);
        assert_eq!(e1.class.kind, ClassKind::Saddle);

        // mu1 = 0: E1 sits at the origin with a zero tangential eigenvalue
        let reports = classify_boundary_equilibria(&c, ParamPoint::new(0.0, 0.05), &s);
        let e1 = reports.iter().find(|r| r.id == EquilibriumId::E1).unwrap();
        assert_eq!(e1.eigenvalues[0], 0.0);
        assert_eq!(e1.class.kind, ClassKind::NonHyperbolic);
    }

    #[test]
    fn oracle_check_passes_on_the_worked_point() {
        let s = settings();
        let c = Coefficients::new(-2.0, -1.0, 1.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        let mu = ParamPoint::new(-0.03, 0.01);
        let e = locate_e3(&c, mu, &s).unwrap();
        oracle_check(&c, mu, &e, &s).unwrap();
    }

    #[test]
    fn oracle_check_catches_a_dropped_quartic_term() {
        // Recompute disc without the M*P*xi1*xi2^3 term and feed the corrupted
        // value through the same comparison: it must fail on "disc".
        let s = settings();
        let c = Coefficients::new(1.0, -1.0, -2.0, 0.9, 0.0, 0.0, 0.8).unwrap();
        let mu = ParamPoint::new(0.03, -0.04);
        let e = locate_e3(&c, mu, &s).unwrap();
        let good = char_quantities_at(&c, e.state.xi1, e.state.xi2);
        let corrupted = good.disc - c.m * c.p * e.state.xi1 * e.state.xi2.powi(3);
        let j = c.jacobian_fd(mu, e.state, 1e-6);
        let tr_half = 0.5 * (j[0][0] + j[1][1]);
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        let disc = tr_half * tr_half - det;
        assert!((good.disc - disc).abs() <= 1e-10 * f64::max(1.0, disc.abs()));
        assert!(
            (corrupted - disc).abs() > 1e-10 * f64::max(1.0, disc.abs()),
            "mutation must be visible to the oracle"
        );
    }

    #[test]
    fn e3_requires_the_right_id_and_residual() {
        let s = settings();
        let c = Coefficients::new(-2.0, -1.0, 1.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        let fake = Equilibrium {
            id: EquilibriumId::E1,
            state: State::new(0.01, 0.0),
            in_q1: true,
            residual: 0.0,
        };
        assert!(char_quantities_e3(&c, &fake, &s).is_err());
        let bad_residual = Equilibrium {
            id: EquilibriumId::E3,
            state: State::new(0.01, 0.01),
            in_q1: true,
            residual: 1.0,
        };
        assert!(char_quantities_e3(&c, &bad_residual, &s).is_err());
    }
}
