//! Rigid-body pose algebra on SE(3) and the planar projection used for
//! covariance gating.
//!
//! A [`Pose`] is a unit quaternion plus translation, `T_YX`, mapping point
//! coordinates from frame X to frame Y. [`PlanarPose`] is the `[x, y, theta]`
//! image of a pose under [`project_planar`], for bodies moving on a floor
//! plane with z up.

use nalgebra::{Quaternion, UnitQuaternion, Vector3};
use std::f64::consts::PI;
use std::ops::Mul;

/// Wrap an angle to (-pi, pi]; the tie at -pi maps to +pi.
pub fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Rigid transform: rotation (unit quaternion) and translation in meters.
///
/// The quaternion is kept normalized and sign-canonicalized (first nonzero
/// component of `[w, x, y, z]` positive) so serialized output is
/// deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct Pose {
    rotation: UnitQuaternion<f64>,
    translation: Vector3<f64>,
}

impl Pose {
    pub fn identity() -> Self {
        Pose {
            rotation: UnitQuaternion::identity(),
            translation: Vector3::zeros(),
        }
    }

    /// Build from a (possibly unnormalized) quaternion and translation.
    /// The quaternion is renormalized only when its norm deviates by more
    /// than 1e-12, so re-reading canonically written poses is bit-exact.
    pub fn from_parts(rotation: Quaternion<f64>, translation: Vector3<f64>) -> Self {
        let n = rotation.norm();
        let q = if (n - 1.0).abs() > 1e-12 {
            rotation / n
        } else {
            rotation
        };
        Pose {
            rotation: canonical_sign(UnitQuaternion::new_unchecked(q)),
            translation,
        }
    }

    pub fn from_rotation(rotation: UnitQuaternion<f64>) -> Self {
        Pose::from_parts(rotation.into_inner(), Vector3::zeros())
    }

    pub fn from_translation(translation: Vector3<f64>) -> Self {
        Pose {
            rotation: UnitQuaternion::identity(),
            translation,
        }
    }

    /// Pure rotation about the z axis.
    pub fn from_yaw(theta: f64) -> Self {
        Pose::from_rotation(UnitQuaternion::from_axis_angle(&Vector3::z_axis(), theta))
    }

    pub fn rotation(&self) -> &UnitQuaternion<f64> {
        &self.rotation
    }

    pub fn translation(&self) -> &Vector3<f64> {
        &self.translation
    }

    pub fn transform_point(&self, p: &Vector3<f64>) -> Vector3<f64> {
        self.rotation * p + self.translation
    }

    /// Rotation angle (radians, in [0, pi]) between the two orientations.
    pub fn rotation_angle_to(&self, other: &Pose) -> f64 {
        self.rotation.angle_to(&other.rotation)
    }
}

fn canonical_sign(q: UnitQuaternion<f64>) -> UnitQuaternion<f64> {
    let c = q.into_inner();
    for v in [c.w, c.i, c.j, c.k] {
        if v > 0.0 {
            return q;
        }
        if v < 0.0 {
            return UnitQuaternion::new_unchecked(-c);
        }
    }
    q
}

/// Applies `b` then `a`: the transform of the chained frames, `T_YX * T_XZ`.
pub fn compose(a: &Pose, b: &Pose) -> Pose {
    Pose::from_parts(
        (a.rotation * b.rotation).into_inner(),
        a.rotation * b.translation + a.translation,
    )
}

pub fn inverse(a: &Pose) -> Pose {
    let r_inv = a.rotation.inverse();
    Pose::from_parts(r_inv.into_inner(), -(r_inv * a.translation))
}

impl Mul<&Pose> for &Pose {
    type Output = Pose;
    fn mul(self, rhs: &Pose) -> Pose {
        compose(self, rhs)
    }
}

/// Planar pose `[x, y, theta]` in meters and radians, theta in (-pi, pi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarPose {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl PlanarPose {
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        PlanarPose {
            x,
            y,
            theta: normalize_angle(theta),
        }
    }

    pub fn identity() -> Self {
        PlanarPose::new(0.0, 0.0, 0.0)
    }

    /// Applies `other` in this pose's frame (planar group composition).
    pub fn compose(&self, other: &PlanarPose) -> PlanarPose {
        let (s, c) = self.theta.sin_cos();
        PlanarPose::new(
            self.x + c * other.x - s * other.y,
            self.y + s * other.x + c * other.y,
            self.theta + other.theta,
        )
    }

    pub fn inverse(&self) -> PlanarPose {
        let (s, c) = self.theta.sin_cos();
        PlanarPose::new(
            -(c * self.x + s * self.y),
            -(-s * self.x + c * self.y),
            -self.theta,
        )
    }

    pub fn to_vector(&self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.theta)
    }
}

/// Projects a pose to `[x, y, theta]`: the first two translation components
/// and the Z-Y-X Euler yaw `atan2(R10, R00)`.
///
/// Inputs near gimbal lock (|pitch| > 89 degrees) are reported as a
/// data-quality warning through the `log` facade, not an error.
pub fn project_planar(t: &Pose) -> PlanarPose {
    let r = t.rotation.to_rotation_matrix();
    let m = r.matrix();
    let pitch = (-m[(2, 0)]).clamp(-1.0, 1.0).asin();
    if pitch.abs() > 89.0 * PI / 180.0 {
        log::warn!(
            "project_planar: pitch {:.2} deg is near gimbal lock; yaw unreliable",
            pitch.to_degrees()
        );
    }
    PlanarPose::new(
        t.translation.x,
        t.translation.y,
        m[(1, 0)].atan2(m[(0, 0)]),
    )
}

/// Lifts `[x, y, theta]` to SE(3) with zero z translation and pure yaw.
/// Exact section of [`project_planar`].
pub fn lift_planar(p: &PlanarPose) -> Pose {
    Pose::from_parts(
        UnitQuaternion::from_axis_angle(&Vector3::z_axis(), p.theta).into_inner(),
        Vector3::new(p.x, p.y, 0.0),
    )
}

/// Pose at time `t` between the timed samples `(a, t_a)` and `(b, t_b)`:
/// shortest-arc slerp on rotation, linear interpolation on translation.
/// Endpoints are reproduced exactly.
pub fn interpolate(a: &Pose, b: &Pose, t_a: f64, t_b: f64, t: f64) -> crate::Result<Pose> {
    if !(t_a < t_b) {
        return Err(crate::Error::InvalidArgument(format!(
            "interpolation interval must have t_a < t_b, got [{t_a}, {t_b}]"
        )));
    }
    if t < t_a || t > t_b {
        return Err(crate::Error::OutOfRange {
            what: "interpolation time",
            value: t,
            min: t_a,
            max: t_b,
        });
    }
    if t == t_a {
        return Ok(a.clone());
    }
    if t == t_b {
        return Ok(b.clone());
    }
    let u = (t - t_a) / (t_b - t_a);
    let rotation = slerp(&a.rotation, &b.rotation, u);
    let translation = a.translation * (1.0 - u) + b.translation * u;
    Ok(Pose::from_parts(rotation.into_inner(), translation))
}

/// Shortest-arc slerp; falls back to normalized linear interpolation when
/// the quaternions are numerically coincident (dot > 1 - 1e-9).
fn slerp(a: &UnitQuaternion<f64>, b: &UnitQuaternion<f64>, u: f64) -> UnitQuaternion<f64> {
    let qa = a.into_inner();
    let mut qb = b.into_inner();
    let mut dot = qa.dot(&qb);
    if dot < 0.0 {
        qb = -qb;
        dot = -dot;
    }
    if dot > 1.0 - 1e-9 {
        let q = qa * (1.0 - u) + qb * u;
        return UnitQuaternion::new_normalize(q);
    }
    let omega = dot.clamp(-1.0, 1.0).acos();
    let sin_omega = omega.sin();
    let wa = ((1.0 - u) * omega).sin() / sin_omega;
    let wb = (u * omega).sin() / sin_omega;
    UnitQuaternion::new_normalize(qa * wa + qb * wb)
}

/// Magnitude of the mean angular rate between two orientations over `dt`
/// seconds: |rotation angle| / dt.
pub fn angular_rate_norm(a: &Pose, b: &Pose, dt: f64) -> crate::Result<f64> {
    if dt <= 0.0 {
        return Err(crate::Error::InvalidArgument(format!(
            "angular_rate_norm requires dt > 0, got {dt}"
        )));
    }
    Ok(a.rotation_angle_to(b) / dt)
}
