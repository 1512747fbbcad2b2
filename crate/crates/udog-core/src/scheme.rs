//! Gate targets and pulse-sequence construction.
//!
//! A target rotation is the triple (θ0, φ0, γ_g) defining U = e^{iγ_g n̂·σ⃗}
//! with n̂ = (sin θ0 cos φ0, sin θ0 sin φ0, cos θ0). The geometric realization
//! sandwiches a π rotation between two partial rotations,
//!
//!   U = R(π − θ0, φ0 − π/2) · R2(π) · R(θ0, φ0 − π/2),
//!
//! where R(ϑ, φ) = exp[−i ϑ (cos φ σx + sin φ σy)/2] and the middle π block is
//! a level-n identity: n π-pulses whose phases carry tunable offsets ξ_k.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::pulse::{PulseSequence, PulseShape, Segment};
use crate::su2::{expm_su2_unchecked, Mat2};
use crate::Error;

const ALT_SUM_TOL: f64 = 1e-12;

/// Target rotation triple (θ0, φ0, γ_g) for U = e^{iγ_g n̂·σ⃗}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateTarget {
    pub theta0: f64,
    pub phi0: f64,
    pub gamma_g: f64,
}

impl GateTarget {
    pub fn new(theta0: f64, phi0: f64, gamma_g: f64) -> Result<Self, Error> {
        if !(0.0..=PI).contains(&theta0) {
            return Err(Error::InvalidArgument(format!(
                "theta0 must lie in [0, pi], got {theta0}"
            )));
        }
        if !theta0.is_finite() || !phi0.is_finite() || !gamma_g.is_finite() {
            return Err(Error::InvalidArgument(
                "target angles must be finite".into(),
            ));
        }
        Ok(Self {
            theta0,
            phi0,
            gamma_g,
        })
    }

    /// Rotation axis n̂ = (sin θ0 cos φ0, sin θ0 sin φ0, cos θ0).
    pub fn axis(&self) -> [f64; 3] {
        [
            self.theta0.sin() * self.phi0.cos(),
            self.theta0.sin() * self.phi0.sin(),
            self.theta0.cos(),
        ]
    }

    /// Named single-qubit gates used by the CLI.
    pub fn named(name: &str) -> Option<Self> {
        let (theta0, phi0, gamma_g) = match name {
            "S" => (0.0, 0.0, -PI / 4.0),
            "T" => (0.0, 0.0, -PI / 8.0),
            "Z" => (0.0, 0.0, -PI / 2.0),
            "X" => (FRAC_PI_2, 0.0, FRAC_PI_2),
            "H" => (PI / 4.0, 0.0, FRAC_PI_2),
            _ => return None,
        };
        Some(Self {
            theta0,
            phi0,
            gamma_g,
        })
    }
}

/// Level-n identity: n π-pulses with phases φ0 + ξ_k γ_g + π/2 + p_k π.
///
/// The offsets must satisfy Σ_k (−1)^{k−1} ξ_k = 1 so that the composite
/// reproduces the single π pulse of the plain construction up to a global
/// phase.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSpec {
    xi: Vec<f64>,
    parity: Vec<u8>,
}

impl LevelSpec {
    /// Validated general form.
    pub fn new(xi: Vec<f64>, parity: Vec<u8>) -> Result<Self, Error> {
        if xi.is_empty() || xi.len().is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "level must be an odd positive integer, got {}",
                xi.len()
            )));
        }
        if parity.len() != xi.len() {
            return Err(Error::InvalidArgument(
                "parity pattern length must match xi length".into(),
            ));
        }
        if parity.iter().any(|p| *p > 1) {
            return Err(Error::InvalidArgument(
                "parity entries must be 0 or 1".into(),
            ));
        }
        let alt: f64 = xi
            .iter()
            .enumerate()
            .map(|(k, x)| if k % 2 == 0 { *x } else { -*x })
            .sum();
        if (alt - 1.0).abs() >= ALT_SUM_TOL {
            return Err(Error::InvalidArgument(format!(
                "alternating sum of xi must equal 1, got {alt}"
            )));
        }
        Ok(Self { xi, parity })
    }

    /// The plain single-π-pulse middle block.
    pub fn level1() -> Self {
        Self {
            xi: vec![1.0],
            parity: vec![0],
        }
    }

    /// Level-3 identity with free (ξ1, ξ2); the third offset is dependent,
    /// ξ3 = 1 + ξ2 − ξ1, and the last sub-pulse carries a π phase flip.
    pub fn level3(xi1: f64, xi2: f64) -> Self {
        Self {
            xi: vec![xi1, xi2, 1.0 + xi2 - xi1],
            parity: vec![0, 0, 1],
        }
    }

    /// Level-5 identity with free (ξ1..ξ4); ξ5 = 1 − ξ1 + ξ2 − ξ3 + ξ4 closes
    /// the alternating-sum constraint. Default parity pattern (0,0,0,0,1).
    pub fn level5(free: [f64; 4]) -> Self {
        Self::level5_with_parity(free, [0, 0, 0, 0, 1])
    }

    pub fn level5_with_parity(free: [f64; 4], parity: [u8; 5]) -> Self {
        let [a, b, c, d] = free;
        Self {
            xi: vec![a, b, c, d, 1.0 - a + b - c + d],
            parity: parity.to_vec(),
        }
    }

    pub fn n(&self) -> usize {
        self.xi.len()
    }

    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    /// Drive phase of sub-pulse k for the given target.
    pub fn sub_pulse_phase(&self, k: usize, target: &GateTarget) -> f64 {
        target.phi0 + self.xi[k] * target.gamma_g + FRAC_PI_2 + f64::from(self.parity[k]) * PI
    }
}

/// The ideal unitary e^{iγ_g n̂·σ⃗} of a target.
pub fn target_unitary(target: &GateTarget) -> Mat2 {
    // exp[+i γ n·σ] = exp[−i(−2γ/2) n·σ]; the axis is unit by construction.
    expm_su2_unchecked(target.axis(), -2.0 * target.gamma_g)
}

/// Build the geometric sequence for a target with the given middle identity.
///
/// Segments in time order: R(θ0, φ0 − π/2), the n π sub-pulses of `level`,
/// then R(π − θ0, φ0 − π/2). Outer rotations with zero area are dropped so
/// grids stay well-formed.
pub fn build_geometric(
    target: &GateTarget,
    level: &LevelSpec,
    shape: &PulseShape,
) -> Result<PulseSequence, Error> {
    // LevelSpec construction already guarantees odd n and the alternating sum.
    let phi_outer = target.phi0 - FRAC_PI_2;
    let mut segments = Vec::with_capacity(level.n() + 2);
    if target.theta0 > 0.0 {
        segments.push(Segment::with_shape(
            target.theta0,
            phi_outer,
            shape.clone(),
        )?);
    }
    for k in 0..level.n() {
        segments.push(Segment::with_shape(
            PI,
            level.sub_pulse_phase(k, target),
            shape.clone(),
        )?);
    }
    if PI - target.theta0 > 0.0 {
        segments.push(Segment::with_shape(
            PI - target.theta0,
            phi_outer,
            shape.clone(),
        )?);
    }
    PulseSequence::new(segments, format!("geometric-level{}", level.n()), *target)
}

/// Dynamical baseline: a three-segment X–Y Euler decomposition of the
/// z-rotation e^{−iα σz/2}, i.e. R(π/2, 0) · R(|α|, ±π/2) · R(π/2, π).
///
/// Used only as a generic comparison scheme; it enforces no geometric
/// conditions.
pub fn build_dynamical_euler(alpha: f64, shape: &PulseShape) -> Result<PulseSequence, Error> {
    if alpha.abs() > 2.0 * PI {
        return Err(Error::InvalidArgument(format!(
            "|alpha| must not exceed 2*pi, got {alpha}"
        )));
    }
    let target = GateTarget::new(0.0, 0.0, -alpha / 2.0)?;
    let mut segments = vec![Segment::with_shape(FRAC_PI_2, PI, shape.clone())?];
    if alpha != 0.0 {
        let middle_phase = if alpha > 0.0 { FRAC_PI_2 } else { -FRAC_PI_2 };
        segments.push(Segment::with_shape(
            alpha.abs(),
            middle_phase,
            shape.clone(),
        )?);
    }
    segments.push(Segment::with_shape(FRAC_PI_2, 0.0, shape.clone())?);
    PulseSequence::new(segments, "dynamical-euler".to_string(), target)
}
