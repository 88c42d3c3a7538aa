//! Bifurcation curves in the parameter plane and the case dispatch.
//!
//! All curves through the origin are emitted as their lowest-order
//! truncations: straight rays for the transcritical curves T1, T2, the
//! half-axes, the node-focus lines C1/C2/C3 and the Hopf curve H, plus one
//! parabola C4 tangent to the mu2-axis in the `a = 0` regime. The
//! qualitative structure of the diagrams is invariant under this
//! truncation.
//!
//! A node-focus or Hopf line only shapes the first-quadrant dynamics where
//! the interior equilibrium actually sits in Q1, so each line is restricted
//! to the ray on which the leading-order E3 position has positive
//! coordinates; lines with no such ray are dropped from the diagram.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::equilibria::{self, e3_leading_order};
use crate::error::{Error, Result};
use crate::model::{Coefficients, ParamPoint, State};
use crate::settings::Settings;

/// Identity of a curve in the parameter plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveKind {
    T1,
    T2,
    XPlus,
    XMinus,
    YPlus,
    YMinus,
    C1,
    C2,
    C3,
    C4,
    H,
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CurveKind::T1 => "T1",
            CurveKind::T2 => "T2",
            CurveKind::XPlus => "X+",
            CurveKind::XMinus => "X-",
            CurveKind::YPlus => "Y+",
            CurveKind::YMinus => "Y-",
            CurveKind::C1 => "C1",
            CurveKind::C2 => "C2",
            CurveKind::C3 => "C3",
            CurveKind::C4 => "C4",
            CurveKind::H => "H",
        };
        f.write_str(s)
    }
}

/// Lowest-order geometry of a curve.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub enum CurveGeometry {
    /// Ray from the origin with unit direction `dir`.
    Ray { dir: [f64; 2], slope: Option<f64> },
    /// `mu1 = coeff * mu2^2` on the half with `sign(mu2) = mu2_sign`.
    Parabola { coeff: f64, mu2_sign: f64 },
}

/// One bifurcation curve of the diagram.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BifurcationCurve {
    pub kind: CurveKind,
    pub geometry: CurveGeometry,
    /// Rotation frequency per unit mu1 on the Hopf curve.
    pub omega_coeff: Option<f64>,
}

impl BifurcationCurve {
    fn ray(kind: CurveKind, dir: [f64; 2], slope: Option<f64>) -> Self {
        let norm = dir[0].hypot(dir[1]);
        BifurcationCurve {
            kind,
            geometry: CurveGeometry::Ray {
                dir: [dir[0] / norm, dir[1] / norm],
                slope,
            },
            omega_coeff: None,
        }
    }

    /// Point at arclength-like parameter `s >= 0`.
    pub fn point_at(&self, s: f64) -> ParamPoint {
        match self.geometry {
            CurveGeometry::Ray { dir, .. } => ParamPoint::new(s * dir[0], s * dir[1]),
            CurveGeometry::Parabola { coeff, mu2_sign } => {
                let mu2 = mu2_sign * s;
                ParamPoint::new(coeff * mu2 * mu2, mu2)
            }
        }
    }

    /// Polar angle of the curve at distance `radius` from the origin.
    pub fn angle_at(&self, radius: f64) -> f64 {
        let p = self.point_at(radius);
        let mut a = p.mu2.atan2(p.mu1);
        if a < 0.0 {
            a += std::f64::consts::TAU;
        }
        a
    }

    /// Human-readable admissibility constraint.
    pub fn admissibility(&self) -> String {
        match self.geometry {
            CurveGeometry::Ray { dir, .. } => {
                if dir[0].abs() < 1e-15 {
                    format!("mu1 = 0, mu2 {} 0", if dir[1] > 0.0 { ">" } else { "<" })
                } else if dir[0] > 0.0 {
                    "mu1 > 0".into()
                } else {
                    "mu1 < 0".into()
                }
            }
            CurveGeometry::Parabola { mu2_sign, .. } => {
                format!("mu2 {} 0", if mu2_sign > 0.0 { ">" } else { "<" })
            }
        }
    }

    /// Slope at the origin for straight-line truncations.
    pub fn slope(&self) -> Option<f64> {
        match self.geometry {
            CurveGeometry::Ray { slope, .. } => slope,
            CurveGeometry::Parabola { .. } => None,
        }
    }

    /// Evenly spaced samples `(s, point)` out to `radius`.
    pub fn sample(&self, radius: f64, count: usize) -> Vec<(f64, ParamPoint)> {
        (1..=count)
            .map(|k| {
                let s = radius * k as f64 / count as f64;
                (s, self.point_at(s))
            })
            .collect()
    }
}

/// Coefficients of the node-focus quadratic form in the parameters:
/// the discriminant quarter at E3 is, to leading order, proportional to
/// `a*mu2^2 - 2b*mu1*mu2 + c*mu1^2`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct QuadraticFormCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// `b^2 - a*c`, computed directly.
    pub delta: f64,
    /// Roots of `a e^2 - 2 b e + c = 0`, sorted ascending, when `delta > 0`
    /// and `a != 0`.
    pub roots: Option<(f64, f64)>,
}

/// `a`, `b`, `c` of the node-focus form.
pub fn quad_coeffs(c: &Coefficients) -> QuadraticFormCoeffs {
    let (theta, gamma, delta) = (c.theta, c.gamma, c.delta);
    let a = theta * theta * (gamma + 1.0) * (gamma + 1.0) - 4.0 * theta * gamma * gamma * delta;
    let b = -2.0 * delta * delta * gamma * gamma
        + theta * (theta - delta) * gamma
        + theta * (theta + delta);
    let cc = (theta + delta) * (theta + delta) - 4.0 * gamma * delta * delta;
    let disc = b * b - a * cc;
    let roots = if disc > 0.0 && a != 0.0 {
        let r = disc.sqrt();
        let e_a = (b - r) / a;
        let e_b = (b + r) / a;
        Some((e_a.min(e_b), e_a.max(e_b)))
    } else {
        None
    };
    QuadraticFormCoeffs {
        a,
        b,
        c: cc,
        delta: disc,
        roots,
    }
}

/// Closed form of the discriminant per unit mu1^2:
/// `b^2 - a*c = -4*gamma*delta*(theta - gamma*delta)^3`.
pub fn delta_closed_form(c: &Coefficients) -> f64 {
    let u = c.theta_minus_gamma_delta();
    -4.0 * c.gamma * c.delta * u * u * u
}

/// Coefficients of the `a = 0` splitting: the discriminant quarter reduces
/// to `c*mu1^2 - 2b*mu1*mu2 + d*mu2^3` in lowest terms, up to a positive
/// factor.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CubicCaseCoeffs {
    pub c: f64,
    pub b: f64,
    pub d: f64,
    pub d31: f64,
    pub d21: f64,
    pub d11: f64,
}

/// The admissible-ray test: a line through the origin matters for the
/// first-quadrant dynamics only on the side where the leading-order E3
/// position is interior to Q1.
fn e3_admissible_direction(c: &Coefficients, dir: [f64; 2]) -> bool {
    let st = e3_leading_order(c, ParamPoint::new(dir[0], dir[1]));
    st.xi1 > 0.0 && st.xi2 > 0.0
}

fn line_with_e3_relevance(c: &Coefficients, kind: CurveKind, slope: f64) -> Option<BifurcationCurve> {
    for sign in [1.0, -1.0] {
        let dir = [sign, sign * slope];
        if e3_admissible_direction(c, dir) {
            return Some(BifurcationCurve::ray(kind, dir, Some(slope)));
        }
    }
    None
}

/// T1: `mu2 = (delta/theta) mu1` on `mu1/theta > 0`; E3 meets E1 here.
pub fn curve_t1(c: &Coefficients) -> BifurcationCurve {
    let slope = c.delta / c.theta;
    let sign = c.theta.signum();
    BifurcationCurve::ray(CurveKind::T1, [sign, sign * slope], Some(slope))
}

/// T2: `mu2 = (1/gamma) mu1` on `mu1 > 0`; E3 meets E2 here.
pub fn curve_t2(c: &Coefficients) -> BifurcationCurve {
    let slope = 1.0 / c.gamma;
    BifurcationCurve::ray(CurveKind::T2, [1.0, slope], Some(slope))
}

/// The four half-axes of the parameter plane, all transcritical.
pub fn half_axes() -> [BifurcationCurve; 4] {
    [
        BifurcationCurve::ray(CurveKind::XPlus, [1.0, 0.0], Some(0.0)),
        BifurcationCurve::ray(CurveKind::XMinus, [-1.0, 0.0], Some(0.0)),
        BifurcationCurve::ray(CurveKind::YPlus, [0.0, 1.0], None),
        BifurcationCurve::ray(CurveKind::YMinus, [0.0, -1.0], None),
    ]
}

/// Node-focus lines C1, C2 from the roots of the quadratic form. Absent
/// when the form has fixed sign (`delta < 0`), when `a = 0` (parabolic
/// regime, see [`curves_c34`]) or when no ray carries an interior E3.
pub fn curves_c12(c: &Coefficients, qc: &QuadraticFormCoeffs) -> Vec<BifurcationCurve> {
    let Some((e1, e2)) = qc.roots else {
        return Vec::new();
    };
    let mut out = Vec::new();
    if let Some(curve) = line_with_e3_relevance(c, CurveKind::C1, e1) {
        out.push(curve);
    }
    if let Some(curve) = line_with_e3_relevance(c, CurveKind::C2, e2) {
        out.push(curve);
    }
    out
}

/// Node-focus curves in the `a = 0` regime: the line C3 and the parabola C4
/// tangent to the mu2-axis, with the reduced cubic's coefficients.
///
/// Requires `a = 0` within its detection band, `gamma != -1` (automatic:
/// `a = -4*theta*delta != 0` there) and `d != 0`; `d = 0` needs terms this
/// toolkit does not evaluate and is reported as unsupported.
pub fn curves_c34(
    c: &Coefficients,
    settings: &Settings,
) -> Result<(BifurcationCurve, BifurcationCurve, CubicCaseCoeffs)> {
    let qc = quad_coeffs(c);
    let tol_a = settings.tol_a(c.theta, c.gamma, c.delta);
    if qc.a.abs() > tol_a {
        return Err(Error::Precondition(format!(
            "curves_c34 requires a = 0, got a = {}",
            qc.a
        )));
    }
    let g = c.gamma;
    if (g + 1.0).abs() < 1e-12 {
        return Err(Error::Precondition(
            "gamma = -1 is incompatible with a = 0".into(),
        ));
    }
    let c3_c = (4.0 * g * g + 3.0 * g + 1.0) / (4.0 * g * g * (1.0 - g));
    let c3_b = -(g + 1.0) / (2.0 * (g - 1.0));
    let d31 = 6.0 * c.s - 4.0 * c.n + 3.0 * c.m * c.delta;
    let d21 = 16.0 * c.p * c.delta * c.delta + 7.0 * c.m * c.delta - 6.0 * c.n + 6.0 * c.s;
    let d11 = 2.0 * c.s - 4.0 * c.n + 5.0 * c.m * c.delta;
    let bracket_terms = [
        (2.0 * c.s - c.n) * g.powi(4),
        d31 * g.powi(3),
        d21 * g * g,
        d11 * g,
        c.m * c.delta - c.n,
    ];
    let bracket: f64 = bracket_terms.iter().sum();
    let prefactor = 4.0 * g * (g + 1.0) / (c.delta * c.delta * (g - 1.0).powi(6));
    let d = prefactor * bracket;
    let scale: f64 = bracket_terms.iter().map(|t| t.abs()).sum();
    if d.abs() <= 1e-12 * prefactor.abs() * f64::max(1.0, scale) {
        return Err(Error::UnsupportedCubicCase);
    }
    let coeffs = CubicCaseCoeffs {
        c: c3_c,
        b: c3_b,
        d,
        d31,
        d21,
        d11,
    };
    // C3 as a line mu2 = (c/2b) mu1
    let slope = c3_c / (2.0 * c3_b);
    let c3 = line_with_e3_relevance(c, CurveKind::C3, slope).ok_or_else(|| {
        Error::Precondition("C3 carries no interior-E3 ray; unexpected in the a = 0 cases".into())
    })?;
    // C4: mu1 = -d (gamma-1)/(gamma+1) mu2^2, on the mu2 half-axis adjacent
    // to the interior-E3 wedge.
    let k = -d * (g - 1.0) / (g + 1.0);
    let mut branch = None;
    for mu2_sign in [1.0, -1.0] {
        let t = 1e-6;
        let mu = ParamPoint::new(k * t * t, mu2_sign * t);
        let st = e3_leading_order(c, mu);
        if st.xi1 > 0.0 && st.xi2 > 0.0 {
            branch = Some(mu2_sign);
            break;
        }
    }
    let mu2_sign = branch.ok_or_else(|| {
        Error::Precondition("C4 carries no interior-E3 branch; unexpected in the a = 0 cases".into())
    })?;
    let c4 = BifurcationCurve {
        kind: CurveKind::C4,
        geometry: CurveGeometry::Parabola { coeff: k, mu2_sign },
        omega_coeff: None,
    };
    Ok((c3, c4, coeffs))
}

/// Hopf curve H: present exactly when `0 < theta < gamma*delta`; the slope
/// is `(theta - delta) / (theta (gamma - 1))` and the eigenvalues on the
/// curve are `+- i omega` with `omega = omega_coeff * mu1` to leading order.
pub fn curve_h(c: &Coefficients) -> Option<BifurcationCurve> {
    let gd = c.gamma * c.delta;
    if !(c.theta > 0.0 && c.theta < gd) {
        return None;
    }
    let slope = (c.theta - c.delta) / (c.theta * (c.gamma - 1.0));
    let omega_coeff = ((gd - c.theta) * c.theta).sqrt() / (c.theta * (1.0 - c.gamma));
    let mut curve = line_with_e3_relevance(c, CurveKind::H, slope)?;
    curve.kind = CurveKind::H;
    curve.omega_coeff = Some(omega_coeff);
    Some(curve)
}

/// Slope bookkeeping: the products/sums that order the node-focus slopes
/// against the transcritical ones, and the sorted slope list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SlopeOrdering {
    pub m_t1: f64,
    pub m_t2: f64,
    pub m_c1: Option<f64>,
    pub m_c2: Option<f64>,
    pub m_h: Option<f64>,
    /// `(e1 - 1/gamma)(e2 - 1/gamma) = (theta - gamma delta)^2 / (gamma^2 a)`
    pub p1: Option<f64>,
    /// `(e1 - 1/gamma) + (e2 - 1/gamma)`
    pub s1: Option<f64>,
    /// `(e1 - delta/theta)(e2 - delta/theta) = (theta - gamma delta)^2 / a`
    pub p2: Option<f64>,
    /// `(e1 - delta/theta) + (e2 - delta/theta)`
    pub s2: Option<f64>,
    /// All defined slopes, ascending.
    pub order: Vec<(CurveKind, f64)>,
}

pub fn slope_ordering(c: &Coefficients, qc: &QuadraticFormCoeffs) -> SlopeOrdering {
    let m_t1 = c.delta / c.theta;
    let m_t2 = 1.0 / c.gamma;
    let (m_c1, m_c2) = match qc.roots {
        Some((e1, e2)) => (Some(e1), Some(e2)),
        None => (None, None),
    };
    let m_h = curve_h(c).and_then(|h| h.slope());
    let u = c.theta_minus_gamma_delta();
    let (p1, s1, p2, s2) = if qc.a != 0.0 && qc.roots.is_some() {
        let p1 = u * u / (c.gamma * c.gamma * qc.a);
        let s1 = -4.0 * u * c.theta / qc.a
            * ((c.gamma + 1.0) / (2.0 * c.gamma) - c.gamma * c.delta / c.theta);
        let p2 = u * u / qc.a;
        let s2 = 4.0 * u * c.theta * c.gamma / qc.a
            * ((c.gamma + 1.0) / (2.0 * c.gamma) - c.delta / c.theta);
        (Some(p1), Some(s1), Some(p2), Some(s2))
    } else {
        (None, None, None, None)
    };
    let mut order: Vec<(CurveKind, f64)> = vec![(CurveKind::T1, m_t1), (CurveKind::T2, m_t2)];
    if let Some(e1) = m_c1 {
        order.push((CurveKind::C1, e1));
    }
    if let Some(e2) = m_c2 {
        order.push((CurveKind::C2, e2));
    }
    if let Some(h) = m_h {
        order.push((CurveKind::H, h));
    }
    order.sort_by(|x, y| x.1.total_cmp(&y.1));
    SlopeOrdering {
        m_t1,
        m_t2,
        m_c1,
        m_c2,
        m_h,
        p1,
        s1,
        p2,
        s2,
        order,
    }
}

impl SlopeOrdering {
    /// The strict chain `m_T1 < m_C1 < m_H < m_C2 < m_T2 < 0` that holds in
    /// the Hopf regime.
    pub fn hopf_chain_holds(&self) -> bool {
        match (self.m_c1, self.m_h, self.m_c2) {
            (Some(c1), Some(h), Some(c2)) => {
                self.m_t1 < c1 && c1 < h && h < c2 && c2 < self.m_t2 && self.m_t2 < 0.0
            }
            _ => false,
        }
    }
}

/// Identifier of a parameter-plane diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseId {
    I,
    II,
    III,
    IV,
    Va,
    Vb,
    VIa,
    VIb,
    VII,
    VIII,
    IX,
    X,
}

impl CaseId {
    pub const ALL: [CaseId; 12] = [
        CaseId::I,
        CaseId::II,
        CaseId::III,
        CaseId::IV,
        CaseId::Va,
        CaseId::Vb,
        CaseId::VIa,
        CaseId::VIb,
        CaseId::VII,
        CaseId::VIII,
        CaseId::IX,
        CaseId::X,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CaseId::I => "I",
            CaseId::II => "II",
            CaseId::III => "III",
            CaseId::IV => "IV",
            CaseId::Va => "Va",
            CaseId::Vb => "Vb",
            CaseId::VIa => "VIa",
            CaseId::VIb => "VIb",
            CaseId::VII => "VII",
            CaseId::VIII => "VIII",
            CaseId::IX => "IX",
            CaseId::X => "X",
        }
    }

    pub fn parse(s: &str) -> Option<CaseId> {
        CaseId::ALL.iter().copied().find(|c| c.name() == s)
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The signed quantities that selected a case.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseConditions {
    pub theta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub theta_minus_gamma_delta: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub delta_disc: f64,
    pub d: Option<f64>,
    pub warnings: Vec<String>,
}

/// A dispatched diagram: its identifier, the assembled curve set and the
/// conditions that selected it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramCase {
    pub id: CaseId,
    pub curves: Vec<BifurcationCurve>,
    pub conditions: CaseConditions,
}

impl DiagramCase {
    pub fn curve(&self, kind: CurveKind) -> Option<&BifurcationCurve> {
        self.curves.iter().find(|c| c.kind == kind)
    }
}

/// Total dispatch of a coefficient tuple to its diagram case, assembling
/// the case's curve set along the way.
pub fn dispatch_case(c: &Coefficients, settings: &Settings) -> Result<DiagramCase> {
    let qc = quad_coeffs(c);
    let u = c.theta_minus_gamma_delta();
    let tol_a = settings.tol_a(c.theta, c.gamma, c.delta);
    let mut warnings = Vec::new();
    let mut d_value = None;

    let mut curves: Vec<BifurcationCurve> = half_axes().to_vec();
    curves.push(curve_t1(c));
    curves.push(curve_t2(c));

    let id = if u < 0.0 {
        if c.delta > 0.0 {
            CaseId::I
        } else if c.theta < 0.0 {
            if qc.a.abs() <= tol_a {
                let (c3, c4, cubic) = curves_c34(c, settings)?;
                d_value = Some(cubic.d);
                curves.push(c3);
                curves.push(c4);
                if c.gamma < -1.0 {
                    if cubic.d < 0.0 {
                        CaseId::Va
                    } else {
                        CaseId::Vb
                    }
                } else if cubic.d > 0.0 {
                    CaseId::VIa
                } else {
                    CaseId::VIb
                }
            } else {
                if qc.a.abs() <= 1e6 * tol_a {
                    warnings.push(format!(
                        "a = {} is close to the a = 0 band; dispatched to the generic case",
                        qc.a
                    ));
                }
                curves.extend(curves_c12(c, &qc));
                if qc.a > 0.0 {
                    if c.gamma > -1.0 {
                        CaseId::II
                    } else {
                        CaseId::III
                    }
                } else {
                    CaseId::IV
                }
            }
        } else {
            curves.extend(curves_c12(c, &qc));
            if let Some(h) = curve_h(c) {
                curves.push(h);
            }
            CaseId::VII
        }
    } else if c.delta > 0.0 {
        curves.extend(curves_c12(c, &qc));
        if c.theta < 0.0 {
            CaseId::VIII
        } else {
            CaseId::IX
        }
    } else {
        curves.extend(curves_c12(c, &qc));
        CaseId::X
    };

    Ok(DiagramCase {
        id,
        curves,
        conditions: CaseConditions {
            theta: c.theta,
            gamma: c.gamma,
            delta: c.delta,
            theta_minus_gamma_delta: u,
            a: qc.a,
            b: qc.b,
            c: qc.c,
            delta_disc: qc.delta,
            d: d_value,
            warnings,
        },
    })
}

/// Numerically estimated transcritical normal-form quantities at a point of
/// T1, from directional differences of the vector field along the kernel
/// eigenvector.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SotomayorQuantities {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    /// Transverse eigenvalue of E1 at the sample point (vanishes on T1).
    pub transverse_eigenvalue: f64,
    /// Expected leading value of `c3`: `2 (theta - gamma delta) / theta`.
    pub c3_expected: f64,
}

/// Evaluate the transcritical test at the point of T1 with abscissa `mu1`.
///
/// The sample sits on the exact curve: `mu2` is chosen so the transverse
/// eigenvalue of E1 vanishes (E3 collides with E1 there).
pub fn sotomayor_at_t1(c: &Coefficients, mu1: f64, settings: &Settings) -> Result<SotomayorQuantities> {
    if mu1 / c.theta <= 0.0 {
        return Err(Error::Precondition(format!(
            "T1 requires mu1/theta > 0, got mu1 = {mu1}, theta = {}",
            c.theta
        )));
    }
    let e1 = equilibria::locate_e1(c, ParamPoint::new(mu1, 0.0), settings)?;
    let xi1 = e1.state.xi1;
    let mu2 = c.delta * xi1 - c.s * xi1 * xi1;
    let mu0 = ParamPoint::new(mu1, mu2);
    let xi0 = State::new(xi1, 0.0);

    // Kernel eigenvector of the Jacobian (analytic entries) and the fixed
    // left eigenvector (0, 1) from the triangular structure on the axis.
    let v1 = (c.gamma - c.m * xi1) / (c.theta - 2.0 * c.n * xi1);
    let norm = v1.hypot(1.0);
    let v = [v1 / norm, 1.0 / norm];

    let h = 1e-4 * f64::max(1.0, xi1.abs());
    let k = 1e-4;
    let field = |st: State, mu: ParamPoint| c.vector_field(mu, st);
    let shift = |t: f64| State::new(xi0.xi1 + t * v[0], xi0.xi2 + t * v[1]);

    // c1 = w . d f / d mu2
    let c1 = (field(xi0, ParamPoint::new(mu1, mu2 + k))[1]
        - field(xi0, ParamPoint::new(mu1, mu2 - k))[1])
        / (2.0 * k);
    // c2 = w . [ D_xi (d f / d mu2) v ]  (mixed second difference)
    let c2 = (field(shift(h), ParamPoint::new(mu1, mu2 + k))[1]
        - field(shift(h), ParamPoint::new(mu1, mu2 - k))[1]
        - field(shift(-h), ParamPoint::new(mu1, mu2 + k))[1]
        + field(shift(-h), ParamPoint::new(mu1, mu2 - k))[1])
        / (4.0 * h * k);
    // c3 = w . D^2 f (v, v)  (second directional difference)
    let c3 = (field(shift(h), mu0)[1] - 2.0 * field(xi0, mu0)[1] + field(shift(-h), mu0)[1])
        / (h * h);

    let transverse = mu0.mu2 - c.delta * xi1 + c.s * xi1 * xi1;
    Ok(SotomayorQuantities {
        c1,
        c2,
        c3,
        transverse_eigenvalue: transverse,
        c3_expected: 2.0 * c.theta_minus_gamma_delta() / c.theta,
    })
}
