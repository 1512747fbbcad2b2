//! Exact complex 2×2 unitary algebra.
//!
//! Conventions used throughout the crate:
//!
//! * Pauli matrices σx, σy, σz in the computational basis, σ⃗ = (σx, σy, σz).
//! * Rotations are generated as U = exp[−i (angle/2) n̂·σ⃗] for a unit axis n̂,
//!   so a 2π rotation of a spinor gives −I.
//! * A Hermitian 2×2 matrix decomposes as H = c0·I + x σx + y σy + z σz with
//!   real coefficients (c0, x, y, z).
//! * Gate fidelity is |Tr(U_ideal† U)| / 2, which is invariant under a global
//!   phase of either argument.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::Error;

/// Numeric tolerances shared by validation checks across the crate.
///
/// The defaults are absolute tolerances on matrix entries; callers that
/// accumulate long products can loosen `unitarity_check`.
#[derive(Debug, Clone, Copy)]
pub struct NumericSettings {
    /// Entrywise tolerance for exact-algebra checks (axis norms, Hermiticity).
    pub matrix_tol: f64,
    /// Tolerance for ‖U†U − I‖_max when an operation requires a unitary input.
    pub unitarity_check: f64,
    /// A path sample counts as a Bloch-sphere pole when sin θ falls below this.
    pub pole_sin_tol: f64,
    /// Target stability of quadrature endpoints under grid refinement.
    pub endpoint_tol: f64,
}

impl Default for NumericSettings {
    fn default() -> Self {
        Self {
            matrix_tol: 1e-12,
            unitarity_check: 1e-9,
            pole_sin_tol: 1e-9,
            endpoint_tol: 1e-10,
        }
    }
}

/// Complex 2×2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m: [[C64; 2]; 2],
}

impl Mat2 {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Self {
            m: [[a, b], [c, d]],
        }
    }

    pub fn identity() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        Self::new(one, zero, zero, one)
    }

    pub fn zero() -> Self {
        let zero = C64::new(0.0, 0.0);
        Self::new(zero, zero, zero, zero)
    }

    pub fn sigma_x() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        Self::new(zero, one, one, zero)
    }

    pub fn sigma_y() -> Self {
        let zero = C64::new(0.0, 0.0);
        Self::new(zero, C64::new(0.0, -1.0), C64::new(0.0, 1.0), zero)
    }

    pub fn sigma_z() -> Self {
        let zero = C64::new(0.0, 0.0);
        Self::new(C64::new(1.0, 0.0), zero, zero, C64::new(-1.0, 0.0))
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let a = &self.m;
        let b = &rhs.m;
        Mat2 {
            m: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
        }
    }

    /// Hermitian conjugate U†.
    pub fn dagger(&self) -> Mat2 {
        Mat2::new(
            self.m[0][0].conj(),
            self.m[1][0].conj(),
            self.m[0][1].conj(),
            self.m[1][1].conj(),
        )
    }

    pub fn add(&self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            self.m[0][0] + rhs.m[0][0],
            self.m[0][1] + rhs.m[0][1],
            self.m[1][0] + rhs.m[1][0],
            self.m[1][1] + rhs.m[1][1],
        )
    }

    pub fn sub(&self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            self.m[0][0] - rhs.m[0][0],
            self.m[0][1] - rhs.m[0][1],
            self.m[1][0] - rhs.m[1][0],
            self.m[1][1] - rhs.m[1][1],
        )
    }

    pub fn scale(&self, s: C64) -> Mat2 {
        Mat2::new(
            self.m[0][0] * s,
            self.m[0][1] * s,
            self.m[1][0] * s,
            self.m[1][1] * s,
        )
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Largest entrywise modulus, used as the matrix max-norm.
    pub fn max_norm(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|e| e.norm())
            .fold(0.0, f64::max)
    }

    /// ‖U†U − I‖_max.
    pub fn unitarity_defect(&self) -> f64 {
        self.dagger().mul(self).sub(&Mat2::identity()).max_norm()
    }

    /// ‖M − M†‖_max.
    pub fn hermiticity_defect(&self) -> f64 {
        self.sub(&self.dagger()).max_norm()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() < tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() < tol
    }

    /// ‖A − B‖_max.
    pub fn max_diff(&self, rhs: &Mat2) -> f64 {
        self.sub(rhs).max_norm()
    }

    /// Distance to `rhs` after removing the best global phase.
    ///
    /// Returns ‖e^{iα} A − B‖_max minimized over α, suitable for comparing
    /// gates that are defined only up to a global phase.
    pub fn max_diff_up_to_phase(&self, rhs: &Mat2) -> f64 {
        // Align phases on the largest entry of self.
        let mut best = (0usize, 0usize);
        let mut mag = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                if self.m[i][j].norm() > mag {
                    mag = self.m[i][j].norm();
                    best = (i, j);
                }
            }
        }
        if mag == 0.0 {
            return self.max_diff(rhs);
        }
        let ratio = rhs.m[best.0][best.1] / self.m[best.0][best.1];
        let phase = if ratio.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            ratio / ratio.norm()
        };
        self.scale(phase).max_diff(rhs)
    }
}

impl std::ops::Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2::mul(self, rhs)
    }
}

/// Pauli decomposition of a Hermitian 2×2 matrix: H = c0·I + x σx + y σy + z σz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliVec {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub c0: f64,
}

impl PauliVec {
    pub fn new(x: f64, y: f64, z: f64, c0: f64) -> Self {
        Self { x, y, z, c0 }
    }

    /// Euclidean norm of the traceless part (x, y, z).
    pub fn vec_norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn as_vec3(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Rebuild the Hermitian matrix c0·I + x σx + y σy + z σz.
    pub fn recompose(&self) -> Mat2 {
        Mat2::new(
            C64::new(self.c0 + self.z, 0.0),
            C64::new(self.x, -self.y),
            C64::new(self.x, self.y),
            C64::new(self.c0 - self.z, 0.0),
        )
    }
}

/// Closed-form exponential exp[−i (angle/2) axis·σ⃗] for a unit axis.
///
/// Errors if the axis norm deviates from 1 by more than the default matrix
/// tolerance.
pub fn expm_su2(axis: [f64; 3], angle: f64) -> Result<Mat2, Error> {
    let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if (norm - 1.0).abs() >= NumericSettings::default().matrix_tol {
        return Err(Error::NonUnitAxis { norm });
    }
    Ok(expm_su2_unchecked(axis, angle))
}

/// Same as [`expm_su2`] but skips the axis-norm check; used on hot paths where
/// the axis is normalized by construction.
pub(crate) fn expm_su2_unchecked(axis: [f64; 3], angle: f64) -> Mat2 {
    let c = (angle / 2.0).cos();
    let s = (angle / 2.0).sin();
    // cos(a/2)·I − i sin(a/2)·(n·σ)
    Mat2::new(
        C64::new(c, -s * axis[2]),
        C64::new(-s * axis[1], -s * axis[0]),
        C64::new(s * axis[1], -s * axis[0]),
        C64::new(c, s * axis[2]),
    )
}

/// Pauli decomposition of a Hermitian matrix.
///
/// Errors if the input is not Hermitian within the default matrix tolerance.
pub fn pauli_decompose(h: &Mat2) -> Result<PauliVec, Error> {
    let defect = h.hermiticity_defect();
    if defect >= NumericSettings::default().matrix_tol {
        return Err(Error::NotHermitian { defect });
    }
    Ok(pauli_decompose_unchecked(h))
}

pub(crate) fn pauli_decompose_unchecked(h: &Mat2) -> PauliVec {
    let a = h.m[0][0];
    let b = h.m[0][1];
    let c = h.m[1][0];
    let d = h.m[1][1];
    PauliVec {
        c0: 0.5 * (a.re + d.re),
        z: 0.5 * (a.re - d.re),
        x: 0.5 * (b.re + c.re),
        y: 0.5 * (c.im - b.im),
    }
}

/// Global-phase-invariant gate fidelity |Tr(U_ideal† U_actual)| / 2.
///
/// Both inputs must be unitary within `NumericSettings::unitarity_check`.
pub fn trace_fidelity(ideal: &Mat2, actual: &Mat2) -> Result<f64, Error> {
    let tol = NumericSettings::default().unitarity_check;
    for u in [ideal, actual] {
        let defect = u.unitarity_defect();
        if defect >= tol {
            return Err(Error::NotUnitary { defect });
        }
    }
    let f = ideal.dagger().mul(actual).trace().norm() / 2.0;
    // Products of near-unitary matrices can overshoot 1 by round-off.
    Ok(f.min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const X_AXIS: [f64; 3] = [1.0, 0.0, 0.0];
    const Z_AXIS: [f64; 3] = [0.0, 0.0, 1.0];

    #[test]
    fn expm_z_pi_is_diag() {
        let u = expm_su2(Z_AXIS, PI).unwrap();
        let expect = Mat2::new(
            C64::new(0.0, -1.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 1.0),
        );
        assert!(u.max_diff(&expect) < 1e-15);
    }

    #[test]
    fn expm_x_pi_is_minus_i_sigma_x() {
        let u = expm_su2(X_AXIS, PI).unwrap();
        let expect = Mat2::sigma_x().scale(C64::new(0.0, -1.0));
        assert!(u.max_diff(&expect) < 1e-15);
    }

    #[test]
    fn expm_x_two_pi_is_minus_identity() {
        let u = expm_su2(X_AXIS, 2.0 * PI).unwrap();
        let expect = Mat2::identity().scale(C64::new(-1.0, 0.0));
        assert!(u.max_diff(&expect) < 1e-15);
    }

    #[test]
    fn expm_rejects_non_unit_axis() {
        assert!(matches!(
            expm_su2([1.0, 1.0, 0.0], 0.3),
            Err(Error::NonUnitAxis { .. })
        ));
    }

    #[test]
    fn expm_angle_additivity() {
        let axis = {
            let v: [f64; 3] = [0.3, -0.5, 0.81];
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            [v[0] / n, v[1] / n, v[2] / n]
        };
        let (a, b) = (0.713, -1.92);
        let lhs = expm_su2(axis, a).unwrap().mul(&expm_su2(axis, b).unwrap());
        let rhs = expm_su2(axis, a + b).unwrap();
        assert!(lhs.max_diff(&rhs) < 1e-12);
    }

    #[test]
    fn decompose_sigma_z_half() {
        let h = Mat2::sigma_z().scale(C64::new(0.5, 0.0));
        let p = pauli_decompose(&h).unwrap();
        assert!((p.x, p.y, p.z, p.c0) == (0.0, 0.0, 0.5, 0.0));
    }

    #[test]
    fn decompose_identity() {
        let p = pauli_decompose(&Mat2::identity()).unwrap();
        assert!((p.x, p.y, p.z, p.c0) == (0.0, 0.0, 0.0, 1.0));
    }

    #[test]
    fn decompose_xy_mix() {
        let inv = 1.0 / 2.0f64.sqrt();
        let h = Mat2::sigma_x()
            .add(&Mat2::sigma_y())
            .scale(C64::new(inv, 0.0));
        let p = pauli_decompose(&h).unwrap();
        assert!((p.x - inv).abs() < 1e-15);
        assert!((p.y - inv).abs() < 1e-15);
        assert!(p.z.abs() < 1e-15 && p.c0.abs() < 1e-15);
    }

    #[test]
    fn decompose_recompose_roundtrip() {
        let p = PauliVec::new(0.37, -1.2, 0.051, 2.3);
        let q = pauli_decompose(&p.recompose()).unwrap();
        assert!((p.x - q.x).abs() < 1e-14);
        assert!((p.y - q.y).abs() < 1e-14);
        assert!((p.z - q.z).abs() < 1e-14);
        assert!((p.c0 - q.c0).abs() < 1e-14);
    }

    #[test]
    fn decompose_rejects_non_hermitian() {
        let m = Mat2::new(
            C64::new(0.0, 1.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        );
        assert!(matches!(
            pauli_decompose(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn fidelity_self_is_one() {
        let u = expm_su2(X_AXIS, 0.83).unwrap();
        assert!((trace_fidelity(&u, &u).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fidelity_orthogonal_generators() {
        let u = Mat2::sigma_x().scale(C64::new(0.0, -1.0));
        assert!(trace_fidelity(&Mat2::identity(), &u).unwrap() < 1e-15);
    }

    #[test]
    fn fidelity_is_phase_invariant() {
        let u = expm_su2(Z_AXIS, -0.41).unwrap();
        for alpha in [0.1, 1.7, -2.9] {
            let v = u.scale(C64::from_polar(1.0, alpha));
            assert!((trace_fidelity(&u, &v).unwrap() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn fidelity_rejects_non_unitary() {
        let m = Mat2::identity().scale(C64::new(2.0, 0.0));
        assert!(matches!(
            trace_fidelity(&m, &Mat2::identity()),
            Err(Error::NotUnitary { .. })
        ));
    }
}
