//! Three-component Bloch vectors and axis-angle rotations.
//!
//! Each wave-vector mode of the chain reduces to a pseudo-spin whose
//! magnetization is a unit vector on the Bloch sphere. Digital evolution
//! steps act on it as rotations about `z_hat` (driver) and `b_k` (target).

use crate::error::{Error, Result};

/// A point on (or near) the unit Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Self) -> Self {
        Self {
            x: self.y * other.z - self.z * other.y,
            y: self.z * other.x - self.x * other.z,
            z: self.x * other.y - self.y * other.x,
        }
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, a: f64) -> Self {
        Self::new(a * self.x, a * self.y, a * self.z)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.x + other.x, self.y + other.y, self.z + other.z)
    }

    pub fn normalized(&self) -> Self {
        self.scale(1.0 / self.norm())
    }
}

/// The driver axis: initial magnetization of every mode.
pub const UNIT_Z: BlochVector = BlochVector::new(0.0, 0.0, 1.0);

pub const UNIT_X: BlochVector = BlochVector::new(1.0, 0.0, 0.0);

/// Target-Hamiltonian axis for mode `k`: `(-sin k, 0, cos k)`.
pub fn target_axis(k: f64) -> BlochVector {
    BlochVector::new(-k.sin(), 0.0, k.cos())
}

/// How far an axis may deviate from unit norm before `rotate` rejects it.
const AXIS_NORM_TOL: f64 = 1e-9;

/// Right-handed rotation of `v` by `theta` about the unit vector `axis`
/// (Rodrigues form). Norms are preserved to machine precision.
pub fn rotate(axis: &BlochVector, theta: f64, v: &BlochVector) -> Result<BlochVector> {
    let norm = axis.norm();
    if (norm - 1.0).abs() > AXIS_NORM_TOL {
        return Err(Error::NonUnitAxis(norm));
    }
    Ok(rotate_unchecked(axis, theta, v))
}

/// `rotate` without the axis-norm check, for hot loops whose axes are unit
/// by construction (the driver axis and the per-mode target axes).
#[inline]
pub fn rotate_unchecked(axis: &BlochVector, theta: f64, v: &BlochVector) -> BlochVector {
    let (sin, cos) = theta.sin_cos();
    let axv = axis.cross(v);
    let adv = axis.dot(v);
    v.scale(cos)
        .add(&axv.scale(sin))
        .add(&axis.scale(adv * (1.0 - cos)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &BlochVector, b: &BlochVector, tol: f64) -> bool {
        (a.x - b.x).abs() < tol && (a.y - b.y).abs() < tol && (a.z - b.z).abs() < tol
    }

    #[test]
    fn rotation_fixes_its_axis() {
        for theta in [0.3, 1.0, 2.5, -4.0] {
            let got = rotate(&UNIT_Z, theta, &UNIT_Z).unwrap();
            assert!(close(&got, &UNIT_Z, 1e-15));
        }
    }

    #[test]
    fn zero_angle_is_identity() {
        let v = BlochVector::new(0.1, -0.7, 0.9).normalized();
        let axis = BlochVector::new(1.0, 2.0, 3.0).normalized();
        let got = rotate(&axis, 0.0, &v).unwrap();
        assert!(close(&got, &v, 1e-15));
    }

    #[test]
    fn right_hand_rule_about_x() {
        // Rotating z about +x by pi/2 lands on -y.
        let got = rotate(&UNIT_X, std::f64::consts::FRAC_PI_2, &UNIT_Z).unwrap();
        assert!(close(&got, &BlochVector::new(0.0, -1.0, 0.0), 1e-15));
    }

    #[test]
    fn non_unit_axis_rejected() {
        let axis = BlochVector::new(0.0, 0.0, 1.5);
        assert!(matches!(
            rotate(&axis, 1.0, &UNIT_Z),
            Err(Error::NonUnitAxis(_))
        ));
    }

    #[test]
    fn rotation_preserves_norm() {
        let axis = BlochVector::new(-2.0, 0.5, 1.0).normalized();
        let mut v = BlochVector::new(0.3, 0.4, -0.6).normalized();
        for _ in 0..1000 {
            v = rotate(&axis, 0.7, &v).unwrap();
        }
        assert!((v.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn target_axis_is_unit_and_planar() {
        for i in 1..40 {
            let k = i as f64 * 0.07;
            let b = target_axis(k);
            assert!((b.norm() - 1.0).abs() < 1e-15);
            assert_eq!(b.y, 0.0);
        }
    }
}
