//! Property suite: structural invariants of the pulse constructions that do
//! not depend on specific published numbers.

mod common;

use std::f64::consts::PI;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use udog_core::error_geometry::{error_curve_direct, ErrorChannel};
use udog_core::pulse::{bloch_path, dressed_path, propagate, GridSpec, PulseShape, Segment};
use udog_core::robustness::{
    filter_function, gate_infidelity, parallel_transport_defect, phase_lock_defect,
};
use udog_core::scheme::{build_geometric, GateTarget, LevelSpec};
use udog_core::su2::{expm_su2, Mat2};
use udog_core::PulseSequence;

fn random_target(rng: &mut ChaCha8Rng) -> GateTarget {
    GateTarget::new(
        rng.gen_range(0.0..PI),
        rng.gen_range(-PI..PI),
        rng.gen_range(-PI..PI),
    )
    .unwrap()
}

fn random_level(rng: &mut ChaCha8Rng) -> LevelSpec {
    match rng.gen_range(0..3) {
        0 => LevelSpec::level1(),
        1 => LevelSpec::level3(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)),
        _ => LevelSpec::level5([
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
        ]),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expm_products_stay_unitary(
        ax in -1.0f64..1.0, ay in -1.0f64..1.0, az in 0.1f64..1.0,
        a in -6.0f64..6.0, b in -6.0f64..6.0,
    ) {
        let n = (ax * ax + ay * ay + az * az).sqrt();
        let axis = [ax / n, ay / n, az / n];
        let u = expm_su2(axis, a).unwrap();
        let v = expm_su2([axis[2], axis[0], axis[1]], b).unwrap();
        let w = u.mul(&v);
        prop_assert!(w.unitarity_defect() < 1e-11);
        prop_assert!((w.det().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn expm_angle_additivity(angle1 in -6.0f64..6.0, angle2 in -6.0f64..6.0) {
        let axis = [0.6, -0.48, 0.64];
        let lhs = expm_su2(axis, angle1).unwrap().mul(&expm_su2(axis, angle2).unwrap());
        let rhs = expm_su2(axis, angle1 + angle2).unwrap();
        prop_assert!(lhs.max_diff(&rhs) < 1e-12);
    }
}

#[test]
fn propagators_stay_unitary_with_errors() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..20 {
        let target = random_target(&mut rng);
        let seq = build_geometric(&target, &random_level(&mut rng), &PulseShape::Square).unwrap();
        let eps = rng.gen_range(-0.3..0.3);
        let delta = rng.gen_range(-0.3..0.3);
        let props = propagate(&seq, 1.0 + eps, delta, &GridSpec::new(4)).unwrap();
        for (_, u) in props {
            assert!(u.unitarity_defect() < 1e-11);
        }
    }
}

#[test]
fn dressed_path_is_parallel_transported() {
    // The dressed state that starts on the target axis never accumulates
    // dynamical phase: <psi|H_c|psi> = 0 along the whole sequence.
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..12 {
        let target = random_target(&mut rng);
        let seq = build_geometric(&target, &random_level(&mut rng), &PulseShape::Square).unwrap();
        let props = propagate(&seq, 1.0, 0.0, &GridSpec::new(256)).unwrap();
        let path = dressed_path(&props, &target).unwrap();
        let defect = parallel_transport_defect(&seq, &path).unwrap();
        assert!(defect < 1e-9, "PT defect {defect} for {target:?}");
    }
}

#[test]
fn drive_locks_to_path_azimuth() {
    // Within every segment the drive phase sits at +-pi/2 from the dressed
    // path azimuth.
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..12 {
        let target = random_target(&mut rng);
        let seq = build_geometric(&target, &random_level(&mut rng), &PulseShape::Square).unwrap();
        let props = propagate(&seq, 1.0, 0.0, &GridSpec::new(256)).unwrap();
        let path = dressed_path(&props, &target).unwrap();
        let defect = phase_lock_defect(&seq, &path).unwrap();
        assert!(defect < 1e-8, "phase-lock defect {defect} for {target:?}");
    }
}

#[test]
fn dressed_global_phase_matches_quadrature_and_gamma() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for _ in 0..10 {
        let target = random_target(&mut rng);
        let seq = build_geometric(&target, &random_level(&mut rng), &PulseShape::Square).unwrap();
        let props = propagate(&seq, 1.0, 0.0, &GridSpec::new(512)).unwrap();
        let path = dressed_path(&props, &target).unwrap();
        let f_end = *path.f.last().unwrap();
        let quad = path.geometric_phase();
        assert!(
            (f_end - quad).abs() < 1e-7,
            "phase {f_end} vs quadrature {quad} for {target:?}"
        );
        // A composite with arbitrary offsets reproduces the target only up to
        // a ±1 global phase, so f(T) matches gamma modulo pi.
        let wrapped = (f_end - target.gamma_g).rem_euclid(PI);
        let dist = wrapped.min(PI - wrapped);
        assert!(dist < 1e-8, "global phase off gamma by {dist}");
    }
}

#[test]
fn final_propagator_is_shape_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    for _ in 0..6 {
        let target = random_target(&mut rng);
        let level = random_level(&mut rng);
        let square = build_geometric(&target, &level, &PulseShape::Square).unwrap();
        let shaped = build_geometric(&target, &level, &PulseShape::SineSquared).unwrap();
        let u_sq = propagate(&square, 1.0, 0.0, &GridSpec::new(1))
            .unwrap()
            .last()
            .unwrap()
            .1;
        let u_sh = propagate(&shaped, 1.0, 0.0, &GridSpec::new(512))
            .unwrap()
            .last()
            .unwrap()
            .1;
        assert!(
            u_sh.max_diff_up_to_phase(&u_sq) < 1e-8,
            "shape dependence for {target:?}"
        );
    }
}

#[test]
fn filter_dc_equals_endpoint_norm_squared() {
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    for _ in 0..8 {
        let target = random_target(&mut rng);
        let seq = build_geometric(&target, &random_level(&mut rng), &PulseShape::Square).unwrap();
        for channel in [ErrorChannel::Rabi, ErrorChannel::Detuning] {
            let f0 = filter_function(&seq, channel, &[0.0]).unwrap().f[0];
            let endpoint = error_curve_direct(&seq, channel, &GridSpec::new(2))
                .unwrap()
                .endpoint();
            let expect = common::norm3(endpoint).powi(2);
            assert!((f0 - expect).abs() < 1e-10, "{channel:?}: {f0} vs {expect}");
        }
    }
}

#[test]
fn closed_curves_cancel_first_order() {
    // Once a curve closes, infidelity/beta -> 0 while infidelity/beta^2 stays
    // bounded (here it even vanishes, the next order being quartic).
    let target = GateTarget::named("S").unwrap();
    let seq = build_geometric(&target, &LevelSpec::level3(1.5, 1.0), &PulseShape::Square).unwrap();
    let mut prev_ratio = f64::INFINITY;
    for beta in [1e-2, 3e-3, 1e-3, 3e-4] {
        let infid = gate_infidelity(&seq, 0.0, beta).unwrap();
        let ratio = infid / beta;
        assert!(ratio < prev_ratio, "infidelity/beta must decrease");
        prev_ratio = ratio;
    }
    assert!(prev_ratio < 1e-9);
    // An open curve keeps a finite quadratic ratio instead.
    let open = build_geometric(&target, &LevelSpec::level1(), &PulseShape::Square).unwrap();
    let r1 = gate_infidelity(&open, 0.0, 1e-3).unwrap() / 1e-6;
    let r2 = gate_infidelity(&open, 0.0, 1e-4).unwrap() / 1e-8;
    assert!(
        (r1 / r2 - 1.0).abs() < 1e-2,
        "quadratic ratio drifts: {r1} vs {r2}"
    );
}

#[test]
fn detuning_endpoint_has_no_component_along_the_tilted_axis() {
    // For every sandwich sequence the detuning endpoint is confined to a
    // two-dimensional subspace: the component along sin(theta0)*b + cos(theta0)*z
    // vanishes identically, which is why two scalar conditions per channel
    // suffice. At theta0 = 0 this is the statement that the z component
    // vanishes.
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..20 {
        let target = random_target(&mut rng);
        let seq = build_geometric(&target, &random_level(&mut rng), &PulseShape::Square).unwrap();
        let e = error_curve_direct(&seq, ErrorChannel::Detuning, &GridSpec::new(2))
            .unwrap()
            .endpoint();
        let b_hat = [target.phi0.cos(), target.phi0.sin()];
        let along_b = e[0] * b_hat[0] + e[1] * b_hat[1];
        let forbidden = target.theta0.sin() * along_b + target.theta0.cos() * e[2];
        assert!(
            forbidden.abs() < 1e-9,
            "forbidden component {forbidden} for {target:?}"
        );
    }
    // z-rotation special case: the z component itself vanishes for random
    // offsets.
    for _ in 0..10 {
        let target = GateTarget::new(0.0, 0.0, rng.gen_range(-PI..PI)).unwrap();
        let level = LevelSpec::level3(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let seq = build_geometric(&target, &level, &PulseShape::Square).unwrap();
        let e = error_curve_direct(&seq, ErrorChannel::Detuning, &GridSpec::new(2))
            .unwrap()
            .endpoint();
        assert!(e[2].abs() < 1e-9);
    }
}

#[test]
fn direct_curve_matches_brute_force_oracle() {
    // Closed-form segment integration against dense Simpson quadrature of
    // the conjugated generator.
    let mut rng = ChaCha8Rng::seed_from_u64(48);
    for _ in 0..5 {
        let target = random_target(&mut rng);
        let seq = build_geometric(&target, &random_level(&mut rng), &PulseShape::Square).unwrap();
        for channel in [ErrorChannel::Rabi, ErrorChannel::Detuning] {
            let exact = error_curve_direct(&seq, channel, &GridSpec::new(2))
                .unwrap()
                .endpoint();
            let brute = common::brute_force_endpoint(&seq, channel, 2048);
            for i in 0..3 {
                assert!(
                    (exact[i] - brute[i]).abs() < 1e-8,
                    "{channel:?} component {i}: {} vs {}",
                    exact[i],
                    brute[i]
                );
            }
        }
    }
}

#[test]
fn sequence_json_is_deterministic_and_round_trips() {
    let target = GateTarget::named("S").unwrap();
    let seq = build_geometric(&target, &LevelSpec::level3(1.5, 1.0), &PulseShape::Square).unwrap();
    let a = seq.to_json();
    let b = seq.to_json();
    assert_eq!(a, b, "serialization must be byte-identical");
    let back = PulseSequence::from_json(&a).unwrap();
    assert_eq!(seq, back);
}

#[test]
fn bloch_path_of_composite_walks_the_poles() {
    // A z-rotation composite alternates pole-to-pole meridian sweeps, so the
    // azimuth jumps recorded at the poles must reconstruct the geometric
    // phase.
    let target = GateTarget::named("Z").unwrap();
    let seq = build_geometric(&target, &LevelSpec::level3(1.5, 1.0), &PulseShape::Square).unwrap();
    let props = propagate(&seq, 1.0, 0.0, &GridSpec::new(256)).unwrap();
    let path = bloch_path(&props).unwrap();
    assert!(!path.jumps.is_empty());
    assert!((path.geometric_phase() - path.f.last().unwrap()).abs() < 1e-7);
}

#[test]
fn segments_reject_nonpositive_area() {
    assert!(Segment::square(0.0, 0.1).is_err());
    assert!(Segment::square(-1.0, 0.1).is_err());
    let m = Mat2::identity();
    assert!(m.is_unitary(1e-12));
}
