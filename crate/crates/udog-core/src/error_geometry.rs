//! Error curves, error distances, and Magnus error operators.
//!
//! For a quasi-static error Hamiltonian β·V(t) riding on the ideal drive, the
//! first-order (interaction-picture) error operator is
//!
//!   A1(t) = ∫₀ᵗ U_c†(t') V(t') U_c(t') dt',
//!
//! with V = H_c(t) for the Rabi channel and V = σz/2 for the detuning
//! channel. A1 is traceless, so its Pauli coefficients trace a curve r(t) in
//! three-dimensional space starting at the origin; the gate is first-order
//! immune to the channel exactly when the curve closes, r(T) = 0. The
//! reported error distance doubles the endpoint norm, d = 2‖r(T)‖, matching
//! the Bloch-vector convention used for the published distances.
//!
//! Second-order operators reduce to curve geometry as well: for a single
//! channel the Pauli vector of A2 is ∫ r'(t) × r(t) dt, twice the vector area
//! swept by the curve.

use serde::Serialize;

use crate::pulse::{drive_grid, propagate, GridSpec, PulseSequence, PulseShape};
use crate::quad::{add3, cross3, norm3, GaussRule};
use crate::su2::{pauli_decompose_unchecked, Mat2, NumericSettings, PauliVec};
use crate::{BlochPath, Error};

/// Error channel selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorChannel {
    /// Fractional amplitude miscalibration; generator H_c(t).
    Rabi,
    /// Quasi-static frequency offset; generator σz/2.
    Detuning,
}

impl ErrorChannel {
    pub fn as_str(&self) -> &'static str {
        match self {
            ErrorChannel::Rabi => "rabi",
            ErrorChannel::Detuning => "detuning",
        }
    }
}

impl std::str::FromStr for ErrorChannel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "rabi" => Ok(ErrorChannel::Rabi),
            "detuning" => Ok(ErrorChannel::Detuning),
            other => Err(Error::InvalidArgument(format!("unknown channel '{other}'"))),
        }
    }
}

/// Sampled error curve r(t) for one channel.
#[derive(Debug, Clone)]
pub struct ErrorCurve {
    pub channel: ErrorChannel,
    pub t: Vec<f64>,
    pub r: Vec<[f64; 3]>,
}

impl ErrorCurve {
    pub fn endpoint(&self) -> [f64; 3] {
        *self.r.last().expect("curve has at least the origin sample")
    }

    /// Error distance in the Bloch convention, d = 2‖r(T)‖.
    pub fn distance_bloch(&self) -> f64 {
        2.0 * norm3(self.endpoint())
    }

    pub fn is_closed(&self, tol: f64) -> bool {
        self.distance_bloch() < tol
    }

    /// CSV export with header `t,x,y,z` (half-convention components).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,x,y,z\n");
        for (t, r) in self.t.iter().zip(&self.r) {
            out.push_str(&format!("{},{},{},{}\n", t, r[0], r[1], r[2]));
        }
        out
    }

    /// Companion JSON summary.
    pub fn summary_json(&self) -> String {
        let e = self.endpoint();
        serde_json::json!({
            "channel": self.channel.as_str(),
            "endpoint": [e[0], e[1], e[2]],
            "distance_bloch": self.distance_bloch(),
        })
        .to_string()
    }
}

/// First- and second-order Magnus error operators.
#[derive(Debug, Clone)]
pub struct MagnusTerms {
    pub a1_rabi: Mat2,
    pub a1_detuning: Mat2,
    pub a2: Option<A2Pairs>,
}

/// Second-order operators per channel pair.
#[derive(Debug, Clone)]
pub struct A2Pairs {
    pub rabi_rabi: Mat2,
    pub detuning_detuning: Mat2,
    pub rabi_detuning: Mat2,
}

impl MagnusTerms {
    pub fn a1_vec(&self, channel: ErrorChannel) -> [f64; 3] {
        let m = match channel {
            ErrorChannel::Rabi => &self.a1_rabi,
            ErrorChannel::Detuning => &self.a1_detuning,
        };
        pauli_decompose_unchecked(m).as_vec3()
    }

    pub fn a2_vec(&self, channel: ErrorChannel) -> Option<[f64; 3]> {
        self.a2.as_ref().map(|p| {
            let m = match channel {
                ErrorChannel::Rabi => &p.rabi_rabi,
                ErrorChannel::Detuning => &p.detuning_detuning,
            };
            pauli_decompose_unchecked(m).as_vec3()
        })
    }
}

/// SO(3) matrix M with M·v = Pauli vector of U†(v·σ⃗)U.
pub(crate) fn so3_of(u: &Mat2) -> [[f64; 3]; 3] {
    let cols = [
        pauli_decompose_unchecked(&u.dagger().mul(&Mat2::sigma_x()).mul(u)),
        pauli_decompose_unchecked(&u.dagger().mul(&Mat2::sigma_y()).mul(u)),
        pauli_decompose_unchecked(&u.dagger().mul(&Mat2::sigma_z()).mul(u)),
    ];
    let mut m = [[0.0; 3]; 3];
    for (j, col) in cols.iter().enumerate() {
        let v = col.as_vec3();
        for i in 0..3 {
            m[i][j] = v[i];
        }
    }
    m
}

fn mat3_apply(m: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

/// (1 − cos x)/x with a series guard near zero.
fn one_minus_cos_over(x: f64) -> f64 {
    if x.abs() < 1e-6 {
        x / 2.0 - x * x * x / 24.0
    } else {
        (1.0 - x.cos()) / x
    }
}

/// sin(x)/x with a series guard near zero.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-6 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Integrand vector of the channel generator in the rotating substep frame:
/// the Pauli vector of R(τ)† V R(τ) for R(τ) = exp[−i Ω τ σ_φ / 2].
fn frame_integrand(channel: ErrorChannel, omega: f64, phase: f64, tau: f64) -> [f64; 3] {
    match channel {
        // R† H_c R = H_c: constant vector (Ω/2)(cos φ, sin φ, 0).
        ErrorChannel::Rabi => [0.5 * omega * phase.cos(), 0.5 * omega * phase.sin(), 0.0],
        // R† (σz/2) R = ½[cos(Ωτ) σz − sin(Ωτ)(sin φ σx − cos φ σy)].
        ErrorChannel::Detuning => {
            let a = omega * tau;
            [
                -0.5 * a.sin() * phase.sin(),
                0.5 * a.sin() * phase.cos(),
                0.5 * a.cos(),
            ]
        }
    }
}

/// Running integral of [`frame_integrand`] from 0 to τ (closed form).
fn frame_running_integral(channel: ErrorChannel, omega: f64, phase: f64, tau: f64) -> [f64; 3] {
    match channel {
        ErrorChannel::Rabi => [
            0.5 * omega * tau * phase.cos(),
            0.5 * omega * tau * phase.sin(),
            0.0,
        ],
        ErrorChannel::Detuning => {
            let a = omega * tau;
            let c = tau * one_minus_cos_over(a); // (1 − cos Ωτ)/Ω
            let s = tau * sinc(a); // sin(Ωτ)/Ω
            [-0.5 * c * phase.sin(), 0.5 * c * phase.cos(), 0.5 * s]
        }
    }
}

struct CurveMachine {
    /// Propagator at every substep boundary.
    props: Vec<(f64, Mat2)>,
    /// Frame rotation at every substep start.
    rots: Vec<[[f64; 3]; 3]>,
    grid_dt: Vec<f64>,
    grid_omega: Vec<f64>,
    grid_phase: Vec<f64>,
}

impl CurveMachine {
    fn build(seq: &PulseSequence, grid: &GridSpec) -> Result<Self, Error> {
        let props = propagate(seq, 1.0, 0.0, grid)?;
        let dg = drive_grid(seq, grid);
        let rots = props[..props.len() - 1]
            .iter()
            .map(|(_, u)| so3_of(u))
            .collect();
        Ok(Self {
            props,
            rots,
            grid_dt: dg.dt,
            grid_omega: dg.omega_mid,
            grid_phase: dg.phase,
        })
    }

    /// Curve samples at substep boundaries, exact per substep.
    fn curve(&self, channel: ErrorChannel) -> ErrorCurve {
        let n = self.grid_dt.len();
        let mut t = Vec::with_capacity(n + 1);
        let mut r = Vec::with_capacity(n + 1);
        t.push(self.props[0].0);
        r.push([0.0; 3]);
        let mut acc = [0.0; 3];
        for k in 0..n {
            let inc = frame_running_integral(
                channel,
                self.grid_omega[k],
                self.grid_phase[k],
                self.grid_dt[k],
            );
            acc = add3(acc, mat3_apply(&self.rots[k], inc));
            t.push(self.props[k + 1].0);
            r.push(acc);
        }
        ErrorCurve { channel, t, r }
    }

    /// ∫ r'_a × r_b dt by per-substep Gauss quadrature with closed-form
    /// in-substep values.
    fn cross_integral(
        &self,
        a: ErrorChannel,
        b: ErrorChannel,
        curve_b: &ErrorCurve,
        rule: &GaussRule,
    ) -> [f64; 3] {
        let mut acc = [0.0; 3];
        for k in 0..self.grid_dt.len() {
            let rot = &self.rots[k];
            let omega = self.grid_omega[k];
            let phase = self.grid_phase[k];
            let rb0 = curve_b.r[k];
            let inc = rule.integrate_vec3(0.0, self.grid_dt[k], |tau| {
                let da = mat3_apply(rot, frame_integrand(a, omega, phase, tau));
                let rb = add3(
                    rb0,
                    mat3_apply(rot, frame_running_integral(b, omega, phase, tau)),
                );
                cross3(da, rb)
            });
            acc = add3(acc, inc);
        }
        acc
    }
}

/// Error curve from direct integration of U_c† V U_c.
///
/// Square segments use exact per-substep integrals; shaped segments refine
/// the grid until the endpoint is stable to the configured tolerance.
pub fn error_curve_direct(
    seq: &PulseSequence,
    channel: ErrorChannel,
    grid: &GridSpec,
) -> Result<ErrorCurve, Error> {
    let all_square = seq.segments.iter().all(|s| s.shape == PulseShape::Square);
    let mut g = *grid;
    let mut curve = CurveMachine::build(seq, &g)?.curve(channel);
    if all_square {
        return Ok(curve);
    }
    let tol = NumericSettings::default().endpoint_tol;
    for _ in 0..6 {
        g = g.refined();
        let refined = CurveMachine::build(seq, &g)?.curve(channel);
        let delta = norm3([
            refined.endpoint()[0] - curve.endpoint()[0],
            refined.endpoint()[1] - curve.endpoint()[1],
            refined.endpoint()[2] - curve.endpoint()[2],
        ]);
        curve = refined;
        if delta < tol {
            break;
        }
    }
    Ok(curve)
}

/// Error curve evaluated from the Bloch-path form of the integrands.
///
/// The integrands involve only θ, ϕ, f, the drive phase, and Ω, and are
/// accumulated with panel-wise Simpson within each segment; samples are
/// reported at panel boundaries. The path must have been extracted on a grid
/// with an even number of substeps per segment of `seq`.
pub fn error_curve_path(
    path: &BlochPath,
    seq: &PulseSequence,
    channel: ErrorChannel,
) -> Result<ErrorCurve, Error> {
    let n_seg = seq.segments.len();
    if n_seg == 0 {
        return Err(Error::EmptySequence);
    }
    if path.len() < 2 || !(path.len() - 1).is_multiple_of(n_seg) {
        return Err(Error::GridMismatch(format!(
            "{} path samples cannot tile {} segments",
            path.len(),
            n_seg
        )));
    }
    let n_sub = (path.len() - 1) / n_seg;
    if !n_sub.is_multiple_of(2) {
        return Err(Error::GridMismatch(
            "need an even number of substeps per segment".into(),
        ));
    }
    // The path grid must line up with the segment boundaries.
    let mut t_expect = 0.0;
    for (si, seg) in seq.segments.iter().enumerate() {
        t_expect += seg.duration;
        let at = path.t[(si + 1) * n_sub];
        if (at - t_expect).abs() > 1e-9 * (1.0 + t_expect.abs()) {
            return Err(Error::GridMismatch(format!(
                "segment boundary at t={t_expect} not found in path grid (got {at})"
            )));
        }
    }

    let mut t_out = vec![path.t[0]];
    let mut r_out = vec![[0.0; 3]];
    let mut acc = [0.0; 3];
    for (si, seg) in seq.segments.iter().enumerate() {
        let i0 = si * n_sub;
        let h = seg.duration / n_sub as f64;
        // Simpson panels over [i0, i0 + n_sub].
        let mut local = 0;
        while local + 2 <= n_sub {
            let mut vals = [[0.0; 3]; 3];
            for (slot, off) in [0usize, 1, 2].into_iter().enumerate() {
                let idx = i0 + local + off;
                let tau = (local + off) as f64 * h;
                vals[slot] = path_integrand(
                    channel,
                    seg.omega_at(tau),
                    seg.phase,
                    path.theta[idx],
                    path.phi[idx],
                    path.f[idx],
                );
            }
            for i in 0..3 {
                acc[i] += h / 3.0 * (vals[0][i] + 4.0 * vals[1][i] + vals[2][i]);
            }
            local += 2;
            t_out.push(path.t[i0 + local]);
            r_out.push(acc);
        }
    }
    Ok(ErrorCurve {
        channel,
        t: t_out,
        r: r_out,
    })
}

/// Closed-form integrand of the error-curve integrals in path variables.
pub(crate) fn path_integrand(
    channel: ErrorChannel,
    omega: f64,
    drive_phase: f64,
    theta: f64,
    phi: f64,
    f: f64,
) -> [f64; 3] {
    let two_f_phi = 2.0 * f + phi;
    match channel {
        ErrorChannel::Rabi => {
            let d = drive_phase - phi;
            [
                -0.5 * omega
                    * (d.sin() * two_f_phi.sin() - theta.cos() * d.cos() * two_f_phi.cos()),
                0.5 * omega * (d.sin() * two_f_phi.cos() + theta.cos() * d.cos() * two_f_phi.sin()),
                0.5 * omega * theta.sin() * d.cos(),
            ]
        }
        ErrorChannel::Detuning => [
            -0.5 * theta.sin() * two_f_phi.cos(),
            -0.5 * theta.sin() * two_f_phi.sin(),
            0.5 * theta.cos(),
        ],
    }
}

/// First- and (optionally) second-order Magnus error operators.
pub fn magnus_terms(seq: &PulseSequence, order: u8, grid: &GridSpec) -> Result<MagnusTerms, Error> {
    if order == 0 || order > 2 {
        return Err(Error::InvalidArgument(format!(
            "magnus order must be 1 or 2, got {order}"
        )));
    }
    let machine = CurveMachine::build(seq, grid)?;
    let rabi = machine.curve(ErrorChannel::Rabi);
    let det = machine.curve(ErrorChannel::Detuning);
    let to_mat = |v: [f64; 3]| PauliVec::new(v[0], v[1], v[2], 0.0).recompose();
    let a2 = if order == 2 {
        let rule = GaussRule::new(32);
        let ee = machine.cross_integral(ErrorChannel::Rabi, ErrorChannel::Rabi, &rabi, &rule);
        let dd =
            machine.cross_integral(ErrorChannel::Detuning, ErrorChannel::Detuning, &det, &rule);
        let ed_a = machine.cross_integral(ErrorChannel::Rabi, ErrorChannel::Detuning, &det, &rule);
        let ed_b = machine.cross_integral(ErrorChannel::Detuning, ErrorChannel::Rabi, &rabi, &rule);
        Some(A2Pairs {
            rabi_rabi: to_mat(ee),
            detuning_detuning: to_mat(dd),
            rabi_detuning: to_mat(add3(ed_a, ed_b)),
        })
    } else {
        None
    };
    Ok(MagnusTerms {
        a1_rabi: to_mat(rabi.endpoint()),
        a1_detuning: to_mat(det.endpoint()),
        a2,
    })
}

/// Frame-invariant closure pair of an endpoint for the sandwich construction.
///
/// Every sequence built as R(θ0)·(π pulses)·R(π−θ0) has endpoints of the form
/// r = α·â + β·(cos θ0 b̂ − sin θ0 ẑ) with â, b̂ the equatorial unit vectors at
/// azimuths φ0 − π/2 and φ0. The pair (α, β) vanishes exactly when the curve
/// closes, for every θ0 including the degenerate equatorial case.
pub fn closure_pair(endpoint: [f64; 3], theta0: f64, phi0: f64) -> (f64, f64) {
    let a_hat = [phi0.sin(), -phi0.cos(), 0.0];
    let b_hat = [phi0.cos(), phi0.sin(), 0.0];
    let alpha = endpoint[0] * a_hat[0] + endpoint[1] * a_hat[1];
    let along_b = endpoint[0] * b_hat[0] + endpoint[1] * b_hat[1];
    let beta = theta0.cos() * along_b - theta0.sin() * endpoint[2];
    (alpha, beta)
}

/// Scheme-level convenience: distances for both channels.
pub fn error_distances(seq: &PulseSequence, grid: &GridSpec) -> Result<(f64, f64), Error> {
    let rabi = error_curve_direct(seq, ErrorChannel::Rabi, grid)?;
    let det = error_curve_direct(seq, ErrorChannel::Detuning, grid)?;
    Ok((rabi.distance_bloch(), det.distance_bloch()))
}
