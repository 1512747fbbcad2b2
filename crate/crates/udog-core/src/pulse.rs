//! Drive waveforms, exact propagators, and Bloch-path extraction.
//!
//! Time is dimensionless with the peak Rabi rate normalized to 1, so a square
//! π pulse has duration π. Each segment holds a drive phase that is constant
//! in time; the amplitude profile is set by its [`PulseShape`].
//!
//! The propagator of a segment under amplitude scale 1+ε and detuning δ is
//! built from per-substep closed-form exponentials of
//! ½[(1+ε)Ω(cos φ σx + sin φ σy) + δ σz]; square segments are exact with a
//! single substep.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::scheme::GateTarget;
use crate::su2::{expm_su2_unchecked, Mat2, NumericSettings};
use crate::Error;

/// Amplitude profile of one segment, as a non-negative shape that is scaled
/// so the segment area ∫Ω dt matches the declared value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PulseShape {
    Square,
    SineSquared,
    /// Piecewise-linear table of (time fraction in [0,1], relative amplitude).
    SampledTable(Vec<(f64, f64)>),
}

impl PulseShape {
    /// Relative amplitude at time fraction s ∈ [0, 1] (unnormalized).
    pub fn relative_amplitude(&self, s: f64) -> f64 {
        match self {
            PulseShape::Square => 1.0,
            PulseShape::SineSquared => {
                let v = (PI * s).sin();
                v * v
            }
            PulseShape::SampledTable(table) => {
                if table.is_empty() {
                    return 0.0;
                }
                if s <= table[0].0 {
                    return table[0].1;
                }
                for w in table.windows(2) {
                    let (s0, a0) = w[0];
                    let (s1, a1) = w[1];
                    if s <= s1 {
                        if s1 - s0 <= 0.0 {
                            return a1;
                        }
                        return a0 + (a1 - a0) * (s - s0) / (s1 - s0);
                    }
                }
                table.last().unwrap().1
            }
        }
    }

    /// ∫₀¹ relative_amplitude(s) ds.
    fn relative_integral(&self) -> f64 {
        match self {
            PulseShape::Square => 1.0,
            PulseShape::SineSquared => 0.5,
            PulseShape::SampledTable(table) => {
                let mut acc = 0.0;
                for w in table.windows(2) {
                    acc += 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0);
                }
                acc
            }
        }
    }

    /// Peak of the relative profile, used to fix the duration so the scaled
    /// amplitude tops out at 1.
    fn relative_peak(&self) -> f64 {
        match self {
            PulseShape::Square => 1.0,
            PulseShape::SineSquared => 1.0,
            PulseShape::SampledTable(table) => table.iter().map(|(_, a)| *a).fold(0.0, f64::max),
        }
    }

    fn validate(&self) -> Result<(), Error> {
        if let PulseShape::SampledTable(table) = self {
            if table.len() < 2 {
                return Err(Error::InvalidArgument(
                    "sampled-table shape needs at least two knots".into(),
                ));
            }
            if table.windows(2).any(|w| w[1].0 <= w[0].0) {
                return Err(Error::InvalidArgument(
                    "sampled-table time fractions must be strictly increasing".into(),
                ));
            }
            if table.iter().any(|(_, a)| *a < 0.0) {
                return Err(Error::InvalidArgument(
                    "relative amplitudes must be non-negative".into(),
                ));
            }
            if self.relative_integral() <= 0.0 {
                return Err(Error::InvalidArgument(
                    "sampled-table shape must have positive area".into(),
                ));
            }
        }
        Ok(())
    }
}

/// One constant-phase drive segment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    /// Pulse area ϑ = ∫Ω dt in radians.
    pub area: f64,
    /// Drive phase φ in radians.
    pub phase: f64,
    /// Duration in normalized time units.
    pub duration: f64,
    pub shape: PulseShape,
}

impl Segment {
    /// Square segment at peak amplitude 1 (duration equals area).
    pub fn square(area: f64, phase: f64) -> Result<Self, Error> {
        Self::with_shape(area, phase, PulseShape::Square)
    }

    /// Segment of the given shape, scaled to peak amplitude 1.
    pub fn with_shape(area: f64, phase: f64, shape: PulseShape) -> Result<Self, Error> {
        shape.validate()?;
        if !area.is_finite() || area <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "segment area must be positive, got {area}"
            )));
        }
        // Peak amplitude 1: area = duration * integral / peak.
        let duration = area * shape.relative_peak() / shape.relative_integral();
        Ok(Self {
            area,
            phase,
            duration,
            shape,
        })
    }

    /// Segment with an explicit duration; the shape is rescaled so the area
    /// still integrates to `area`.
    pub fn with_duration(
        area: f64,
        phase: f64,
        duration: f64,
        shape: PulseShape,
    ) -> Result<Self, Error> {
        shape.validate()?;
        if !area.is_finite() || area <= 0.0 || !duration.is_finite() || duration <= 0.0 {
            return Err(Error::InvalidArgument(
                "segment area and duration must be positive".into(),
            ));
        }
        Ok(Self {
            area,
            phase,
            duration,
            shape,
        })
    }

    /// Rabi rate Ω at local time τ ∈ [0, duration].
    pub fn omega_at(&self, tau: f64) -> f64 {
        let scale = self.area / (self.duration * self.shape.relative_integral());
        scale * self.shape.relative_amplitude(tau / self.duration)
    }
}

/// Ordered list of segments realizing a gate, with scheme metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseSequence {
    pub scheme: String,
    pub target: GateTarget,
    pub segments: Vec<Segment>,
}

impl PulseSequence {
    pub fn new(segments: Vec<Segment>, scheme: String, target: GateTarget) -> Result<Self, Error> {
        if segments.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(Self {
            scheme,
            target,
            segments,
        })
    }

    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    pub fn total_area(&self) -> f64 {
        self.segments.iter().map(|s| s.area).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sequence serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        let seq: PulseSequence = serde_json::from_str(text)
            .map_err(|e| Error::InvalidArgument(format!("bad sequence JSON: {e}")))?;
        if seq.segments.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(seq)
    }
}

/// Grid density for propagation and quadrature: substeps per segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub substeps_per_segment: usize,
}

impl GridSpec {
    pub fn new(substeps_per_segment: usize) -> Self {
        Self {
            substeps_per_segment,
        }
    }

    pub fn refined(&self) -> Self {
        Self {
            substeps_per_segment: self.substeps_per_segment * 2,
        }
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            substeps_per_segment: 256,
        }
    }
}

/// Closed-form substep propagator for constant Ω, φ, δ over time dt.
pub(crate) fn step_unitary(
    omega: f64,
    phase: f64,
    rabi_scale: f64,
    detuning: f64,
    dt: f64,
) -> Mat2 {
    let a = rabi_scale * omega;
    let lambda = (a * a + detuning * detuning).sqrt();
    if lambda * dt == 0.0 {
        return Mat2::identity();
    }
    let axis = [
        a * phase.cos() / lambda,
        a * phase.sin() / lambda,
        detuning / lambda,
    ];
    expm_su2_unchecked(axis, lambda * dt)
}

/// Time-ordered cumulative propagators U(t_k) with U(t_0) = I.
///
/// `rabi_scale` is 1+ε; `detuning` is the static σz/2 offset δ. Within each
/// substep the Hamiltonian is frozen at the midpoint amplitude and
/// exponentiated exactly, which makes square segments exact for any substep
/// count.
pub fn propagate(
    seq: &PulseSequence,
    rabi_scale: f64,
    detuning: f64,
    grid: &GridSpec,
) -> Result<Vec<(f64, Mat2)>, Error> {
    if seq.segments.is_empty() {
        return Err(Error::EmptySequence);
    }
    if !rabi_scale.is_finite() || rabi_scale <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "rabi scale 1+eps must be positive, got {rabi_scale}"
        )));
    }
    if grid.substeps_per_segment < 1 {
        return Err(Error::GridMismatch(
            "grid needs at least one substep per segment".into(),
        ));
    }
    let n_sub = grid.substeps_per_segment;
    let mut out = Vec::with_capacity(seq.segments.len() * n_sub + 1);
    let mut u = Mat2::identity();
    let mut t = 0.0;
    out.push((t, u));
    for seg in &seq.segments {
        let dt = seg.duration / n_sub as f64;
        for k in 0..n_sub {
            let tau_mid = (k as f64 + 0.5) * dt;
            let omega = seg.omega_at(tau_mid);
            let step = step_unitary(omega, seg.phase, rabi_scale, detuning, dt);
            u = step.mul(&u);
            t += dt;
            out.push((t, u));
        }
    }
    Ok(out)
}

/// Azimuth jump recorded at a Bloch-sphere pole crossing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AzimuthJump {
    /// Sample index at which the azimuth re-locked after the pole.
    pub index: usize,
    /// ϕ_new − ϕ_frozen, reduced to (−π, π].
    pub delta: f64,
    /// True for a south-pole crossing (θ = π), false for north (θ = 0).
    pub at_south: bool,
}

/// Bloch path (θ, ϕ, f) of the evolution, from the parameterization
/// U = [[e^{if} cos(θ/2), −e^{−i(f+ϕ)} sin(θ/2)],
///      [e^{i(f+ϕ)} sin(θ/2), e^{−if} cos(θ/2)]].
///
/// ϕ and f are unwrapped to continuity; at poles the azimuth is frozen and
/// the jump is recorded when it re-locks, with the matching f jump applied at
/// the same sample (f + ϕ stays continuous through south poles).
#[derive(Debug, Clone)]
pub struct BlochPath {
    pub t: Vec<f64>,
    pub theta: Vec<f64>,
    pub phi: Vec<f64>,
    pub f: Vec<f64>,
    pub jumps: Vec<AzimuthJump>,
}

impl BlochPath {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Geometric phase −½ ∮ (1 − cos θ) dϕ accumulated along the path,
    /// including the discrete pole-crossing contributions.
    pub fn geometric_phase(&self) -> f64 {
        // The sampled ϕ already contains the pole jumps; separate them out so
        // the smooth midpoint rule and the exact jump terms do not overlap.
        let mut jump_at = vec![0.0; self.len()];
        for j in &self.jumps {
            jump_at[j.index] += j.delta;
        }
        let mut acc = 0.0;
        for (k, jump) in jump_at.iter().enumerate().skip(1) {
            let dphi = self.phi[k] - self.phi[k - 1] - jump;
            let theta_mid = 0.5 * (self.theta[k] + self.theta[k - 1]);
            acc += -0.5 * (1.0 - theta_mid.cos()) * dphi;
        }
        for j in &self.jumps {
            if j.at_south {
                // −½ (1 − cos π) Δ = −Δ; north-pole jumps carry no weight.
                acc += -j.delta;
            }
        }
        acc
    }
}

fn wrap_to(value: f64, reference: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut v = value + two_pi * ((reference - value) / two_pi).round();
    // Guard against rounding landing just outside the half-open window.
    while v - reference > PI {
        v -= two_pi;
    }
    while v - reference < -PI {
        v += two_pi;
    }
    v
}

#[derive(Clone, Copy, PartialEq)]
enum PoleSide {
    North,
    South,
}

/// Extract the Bloch path from cumulative propagators starting at identity.
pub fn bloch_path(props: &[(f64, Mat2)]) -> Result<BlochPath, Error> {
    if props.is_empty() {
        return Err(Error::PathStartNotIdentity);
    }
    let tol = NumericSettings::default().unitarity_check;
    if props[0].1.max_diff(&Mat2::identity()) >= tol {
        return Err(Error::PathStartNotIdentity);
    }
    Ok(extract_path(props))
}

/// Bloch path of the dressed state that starts on the target axis at
/// (θ0, φ0): the path of U(t)·W where W maps |0⟩ onto the initial dressed
/// state. For θ0 = 0 this coincides with [`bloch_path`].
pub fn dressed_path(props: &[(f64, Mat2)], target: &GateTarget) -> Result<BlochPath, Error> {
    if props.is_empty() {
        return Err(Error::PathStartNotIdentity);
    }
    let w = expm_su2_unchecked(
        [
            (target.phi0 + PI / 2.0).cos(),
            (target.phi0 + PI / 2.0).sin(),
            0.0,
        ],
        target.theta0,
    );
    let shifted: Vec<(f64, Mat2)> = props.iter().map(|(t, u)| (*t, u.mul(&w))).collect();
    Ok(extract_path(&shifted))
}

fn extract_path(props: &[(f64, Mat2)]) -> BlochPath {
    let pole_tol = NumericSettings::default().pole_sin_tol;
    let n = props.len();
    let mut t = Vec::with_capacity(n);
    let mut theta = Vec::with_capacity(n);
    let mut phi = Vec::with_capacity(n);
    let mut f = Vec::with_capacity(n);
    let mut jumps = Vec::new();

    let mut pending: Option<PoleSide> = None;

    for (k, (tk, u)) in props.iter().enumerate() {
        let u00 = u.m[0][0];
        let u10 = u.m[1][0];
        let c = u00.norm();
        let s = u10.norm();
        let th = 2.0 * s.atan2(c);
        t.push(*tk);
        theta.push(th);

        if k == 0 {
            let f0 = if c > pole_tol { u00.arg() } else { 0.0 };
            let phi0 = if s > pole_tol { u10.arg() - f0 } else { 0.0 };
            f.push(f0);
            phi.push(phi0);
            if 2.0 * c * s < pole_tol {
                pending = Some(if c >= s {
                    PoleSide::North
                } else {
                    PoleSide::South
                });
            }
            continue;
        }

        let f_prev = f[k - 1];
        let phi_prev = phi[k - 1];
        let sin_theta = 2.0 * c * s;

        if sin_theta < pole_tol {
            // At a pole only one of arg(U00), arg(U10) is meaningful; freeze
            // the azimuth and keep the defined phase continuous.
            if c >= s {
                f.push(wrap_to(u00.arg(), f_prev));
                phi.push(phi_prev);
                pending = Some(PoleSide::North);
            } else {
                let sum = wrap_to(u10.arg(), f_prev + phi_prev);
                phi.push(phi_prev);
                f.push(sum - phi_prev);
                pending = Some(PoleSide::South);
            }
            continue;
        }

        let f_raw = u00.arg();
        let sum_raw = u10.arg();
        match pending.take() {
            Some(PoleSide::South) => {
                // f + ϕ is continuous through the south pole; re-lock ϕ on the
                // nearest branch and attribute the jump here.
                let phi_k = wrap_to(sum_raw - f_raw, phi_prev);
                let sum_k = wrap_to(sum_raw, f_prev + phi_prev);
                let delta = phi_k - phi_prev;
                if delta.abs() > 1e-12 {
                    jumps.push(AzimuthJump {
                        index: k,
                        delta,
                        at_south: true,
                    });
                }
                phi.push(phi_k);
                f.push(sum_k - phi_k);
            }
            Some(PoleSide::North) => {
                // f is continuous through the north pole; only ϕ re-locks.
                let f_k = wrap_to(f_raw, f_prev);
                let phi_k = wrap_to(sum_raw - f_raw, phi_prev);
                let delta = phi_k - phi_prev;
                if delta.abs() > 1e-12 {
                    jumps.push(AzimuthJump {
                        index: k,
                        delta,
                        at_south: false,
                    });
                }
                f.push(f_k);
                phi.push(phi_k);
            }
            None => {
                let f_k = wrap_to(f_raw, f_prev);
                let sum_k = wrap_to(sum_raw, f_prev + phi_prev);
                f.push(f_k);
                phi.push(sum_k - f_k);
            }
        }
    }

    BlochPath {
        t,
        theta,
        phi,
        f,
        jumps,
    }
}

/// Per-substep drive samples aligned with the grid used by `propagate`.
///
/// Entry k describes the substep between samples k and k+1: its segment
/// index, midpoint Rabi rate, and drive phase.
pub(crate) struct DriveGrid {
    pub dt: Vec<f64>,
    pub omega_mid: Vec<f64>,
    pub phase: Vec<f64>,
}

pub(crate) fn drive_grid(seq: &PulseSequence, grid: &GridSpec) -> DriveGrid {
    let n_sub = grid.substeps_per_segment;
    let total = seq.segments.len() * n_sub;
    let mut dt = Vec::with_capacity(total);
    let mut omega_mid = Vec::with_capacity(total);
    let mut phase = Vec::with_capacity(total);
    for seg in &seq.segments {
        let h = seg.duration / n_sub as f64;
        for k in 0..n_sub {
            dt.push(h);
            omega_mid.push(seg.omega_at((k as f64 + 0.5) * h));
            phase.push(seg.phase);
        }
    }
    DriveGrid {
        dt,
        omega_mid,
        phase,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::{build_geometric, target_unitary, GateTarget, LevelSpec};
    use crate::su2::trace_fidelity;
    use num_complex::Complex64 as C64;
    use std::f64::consts::FRAC_PI_2;

    fn single_pi_pulse(phase: f64) -> PulseSequence {
        PulseSequence::new(
            vec![Segment::square(PI, phase).unwrap()],
            "test".into(),
            GateTarget::new(0.0, 0.0, 0.0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn square_pi_pulse_is_plus_i_sigma_y() {
        let seq = single_pi_pulse(-FRAC_PI_2);
        let props = propagate(&seq, 1.0, 0.0, &GridSpec::new(1)).unwrap();
        let u = props.last().unwrap().1;
        let expect = Mat2::sigma_y().scale(C64::new(0.0, 1.0));
        assert!(u.max_diff(&expect) < 1e-14);
    }

    #[test]
    fn detuned_pi_pulse_matches_generalized_rabi() {
        let delta = 0.37;
        let seq = single_pi_pulse(0.0);
        let props = propagate(&seq, 1.0, delta, &GridSpec::new(1)).unwrap();
        let u = props.last().unwrap().1;
        let lambda = (1.0 + delta * delta).sqrt();
        let axis = [1.0 / lambda, 0.0, delta / lambda];
        let expect = expm_su2_unchecked(axis, lambda * PI);
        assert!(u.max_diff(&expect) < 1e-14);
    }

    #[test]
    fn substep_count_does_not_change_square_propagator() {
        let seq = single_pi_pulse(0.83);
        let u1 = propagate(&seq, 1.1, 0.2, &GridSpec::new(1))
            .unwrap()
            .last()
            .unwrap()
            .1;
        let u64 = propagate(&seq, 1.1, 0.2, &GridSpec::new(64))
            .unwrap()
            .last()
            .unwrap()
            .1;
        assert!(u1.max_diff(&u64) < 1e-13);
    }

    #[test]
    fn level1_s_gate_fidelity_via_matrix_product() {
        let target = GateTarget::named("S").unwrap();
        let seq = build_geometric(&target, &LevelSpec::level1(), &PulseShape::Square).unwrap();
        let props = propagate(&seq, 1.0, 0.0, &GridSpec::new(2)).unwrap();
        let f = trace_fidelity(&target_unitary(&target), &props.last().unwrap().1).unwrap();
        assert!(f > 1.0 - 1e-10);
    }

    #[test]
    fn propagate_rejects_empty_and_bad_scale() {
        let seq = single_pi_pulse(0.0);
        assert!(propagate(&seq, 0.0, 0.0, &GridSpec::new(1)).is_err());
        assert!(matches!(
            PulseSequence::new(vec![], "x".into(), GateTarget::new(0.0, 0.0, 0.0).unwrap()),
            Err(Error::EmptySequence)
        ));
    }

    #[test]
    fn identity_evolution_path_is_flat() {
        // Constant identity evolution: theta = 0 and f = 0 everywhere.
        let props: Vec<(f64, Mat2)> = (0..5).map(|k| (k as f64, Mat2::identity())).collect();
        let path = bloch_path(&props).unwrap();
        assert!(path.theta.iter().all(|&t| t.abs() < 1e-12));
        assert!(path.f.iter().all(|&f| f.abs() < 1e-12));
    }

    #[test]
    fn single_pulse_path_sweeps_meridian() {
        let seq = single_pi_pulse(-FRAC_PI_2);
        let props = propagate(&seq, 1.0, 0.0, &GridSpec::new(128)).unwrap();
        let path = bloch_path(&props).unwrap();
        // theta sweeps 0 -> pi monotonically, f stays 0.
        for k in 1..path.len() {
            assert!(path.theta[k] >= path.theta[k - 1] - 1e-12);
        }
        assert!((path.theta.last().unwrap() - PI).abs() < 1e-9);
        assert!(path.f.iter().all(|&f| f.abs() < 1e-9));
    }

    #[test]
    fn s_gate_global_phase_is_gamma() {
        let target = GateTarget::named("S").unwrap();
        let seq = build_geometric(&target, &LevelSpec::level1(), &PulseShape::Square).unwrap();
        let props = propagate(&seq, 1.0, 0.0, &GridSpec::new(256)).unwrap();
        let path = bloch_path(&props).unwrap();
        assert!((path.f.last().unwrap() - target.gamma_g).abs() < 1e-8);
        // And the quadrature of -1/2 (1 - cos theta) dphi agrees.
        assert!((path.geometric_phase() - target.gamma_g).abs() < 1e-7);
    }

    #[test]
    fn bloch_path_requires_identity_start() {
        let props = vec![(0.0, Mat2::sigma_x())];
        assert!(matches!(
            bloch_path(&props),
            Err(Error::PathStartNotIdentity)
        ));
    }

    #[test]
    fn dressed_path_returns_gamma_for_tilted_targets() {
        let target = GateTarget::new(1.1, 0.6, -0.9).unwrap();
        let seq =
            build_geometric(&target, &LevelSpec::level3(1.3, -0.4), &PulseShape::Square).unwrap();
        let props = propagate(&seq, 1.0, 0.0, &GridSpec::new(256)).unwrap();
        let path = dressed_path(&props, &target).unwrap();
        assert!((path.theta[0] - target.theta0).abs() < 1e-12);
        // Composites match the target up to a ±1 phase: compare modulo pi.
        let wrapped = (path.f.last().unwrap() - target.gamma_g).rem_euclid(PI);
        let dist = wrapped.min(PI - wrapped);
        assert!(dist < 1e-8, "dressed global phase off by {dist}");
    }

    #[test]
    fn shape_independence_of_final_propagator() {
        let target = GateTarget::named("S").unwrap();
        for level in [LevelSpec::level1(), LevelSpec::level3(1.5, 1.0)] {
            let sq = build_geometric(&target, &level, &PulseShape::Square).unwrap();
            let sine = build_geometric(&target, &level, &PulseShape::SineSquared).unwrap();
            let u_sq = propagate(&sq, 1.0, 0.0, &GridSpec::new(1))
                .unwrap()
                .last()
                .unwrap()
                .1;
            let u_sine = propagate(&sine, 1.0, 0.0, &GridSpec::new(512))
                .unwrap()
                .last()
                .unwrap()
                .1;
            assert!(u_sine.max_diff_up_to_phase(&u_sq) < 1e-8);
        }
    }

    #[test]
    fn shaped_refinement_converges() {
        let target = GateTarget::named("S").unwrap();
        let seq = build_geometric(
            &target,
            &LevelSpec::level3(1.5, 1.0),
            &PulseShape::SineSquared,
        )
        .unwrap();
        let grid = GridSpec::new(256);
        let u = propagate(&seq, 1.0, 0.0, &grid).unwrap().last().unwrap().1;
        let u2 = propagate(&seq, 1.0, 0.0, &grid.refined())
            .unwrap()
            .last()
            .unwrap()
            .1;
        assert!(u.max_diff(&u2) < 1e-10);
    }

    #[test]
    fn sequence_json_roundtrip_is_identical() {
        let target = GateTarget::named("S").unwrap();
        for shape in [
            PulseShape::Square,
            PulseShape::SineSquared,
            PulseShape::SampledTable(vec![(0.0, 0.0), (0.5, 1.0), (1.0, 0.0)]),
        ] {
            let seq = build_geometric(&target, &LevelSpec::level3(1.5, 1.0), &shape).unwrap();
            let text = seq.to_json();
            let back = PulseSequence::from_json(&text).unwrap();
            assert_eq!(seq, back);
        }
        // Field names are part of the file format.
        let text = build_geometric(&target, &LevelSpec::level1(), &PulseShape::Square)
            .unwrap()
            .to_json();
        assert!(text.contains("\"scheme\""));
        assert!(text.contains("\"gamma_g\""));
        assert!(text.contains("\"area\""));
        assert!(text.contains("\"square\""));
    }

    #[test]
    fn segment_area_matches_quadrature_of_omega() {
        for shape in [
            PulseShape::Square,
            PulseShape::SineSquared,
            PulseShape::SampledTable(vec![(0.0, 0.0), (0.3, 1.0), (1.0, 0.2)]),
        ] {
            let seg = Segment::with_shape(1.7, 0.0, shape).unwrap();
            let n = 20_000;
            let h = seg.duration / n as f64;
            let mut acc = 0.0;
            for k in 0..n {
                acc += seg.omega_at((k as f64 + 0.5) * h) * h;
            }
            assert!(
                (acc - seg.area).abs() < 1e-6,
                "area quadrature {acc} vs {}",
                seg.area
            );
        }
    }
}
