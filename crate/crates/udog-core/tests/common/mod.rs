//! Shared test support: an independent brute-force route to the error-curve
//! endpoints.
//!
//! The library computes curves from closed-form per-substep integrals. The
//! oracle here instead samples U†(t)·V(t)·U(t) densely, decomposes each
//! sample in the Pauli basis by plain matrix algebra, and integrates with
//! composite Simpson — no shared code path beyond the propagator itself.

use num_complex::Complex64 as C64;
use udog_core::error_geometry::ErrorChannel;
use udog_core::pulse::{propagate, GridSpec, PulseSequence};
use udog_core::su2::{pauli_decompose, Mat2};

/// Brute-force endpoint of the first-order error integral for one channel.
pub fn brute_force_endpoint(
    seq: &PulseSequence,
    channel: ErrorChannel,
    substeps: usize,
) -> [f64; 3] {
    assert!(
        substeps.is_multiple_of(2),
        "Simpson needs an even substep count"
    );
    let props = propagate(seq, 1.0, 0.0, &GridSpec::new(substeps)).expect("propagation");
    let n_sub = substeps;
    let mut acc = [0.0f64; 3];
    for (si, seg) in seq.segments.iter().enumerate() {
        let h = seg.duration / n_sub as f64;
        let i0 = si * n_sub;
        let eval = |offset: usize| -> [f64; 3] {
            let (_, u) = &props[i0 + offset];
            let v = generator_matrix(channel, seg.omega_at(offset as f64 * h), seg.phase);
            let m = u.dagger().mul(&v).mul(u);
            let p = pauli_decompose(&m).expect("conjugated generator stays Hermitian");
            [p.x, p.y, p.z]
        };
        let mut local = 0;
        while local + 2 <= n_sub {
            let a = eval(local);
            let b = eval(local + 1);
            let c = eval(local + 2);
            for i in 0..3 {
                acc[i] += h / 3.0 * (a[i] + 4.0 * b[i] + c[i]);
            }
            local += 2;
        }
    }
    acc
}

fn generator_matrix(channel: ErrorChannel, omega: f64, phase: f64) -> Mat2 {
    match channel {
        ErrorChannel::Rabi => {
            let off = C64::from_polar(0.5 * omega, -phase);
            Mat2::new(C64::new(0.0, 0.0), off, off.conj(), C64::new(0.0, 0.0))
        }
        ErrorChannel::Detuning => Mat2::sigma_z().scale(C64::new(0.5, 0.0)),
    }
}

pub fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}
