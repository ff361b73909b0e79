//! Null hyperplanes and their degenerate intrinsic geometry.
//!
//! A null hyperplane `{x : n.x = offset}` has a null normal that is also
//! tangent to it, so the plane is foliated by parallel lightrays. Its metric
//! only measures distances between rays; collapsing each ray to a point gives
//! the 2d quotient plane in which all polyhedron metric data lives. The frame
//! stored here realizes the `(u, x^alpha)` coordinate system: an affine ray
//! coordinate `u` plus Cartesian quotient coordinates.

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::mink::{causal_class, CausalClass, FourCovector, FourVector, Tolerance};

/// A null hyperplane with a deterministic frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NullHyperplane {
    /// Null normal covector, future-pointing when raised.
    pub normal: FourCovector,
    /// The plane is `{x : normal.pair(x) = offset}`.
    pub offset: f64,
    /// Canonical on-plane reference point (minimal-norm solution).
    pub base: FourVector,
    /// Null tangent along the rays, normalized to unit time component.
    pub ray_dir: FourVector,
    /// Spacelike unit frame vectors spanning the quotient directions.
    pub e1: FourVector,
    pub e2: FourVector,
    /// Covector reading off the ray coordinate: pairs to 1 with `ray_dir`
    /// and to 0 with `e1`, `e2`.
    u_form: FourCovector,
}

/// Quotient-plane coordinates of a point set, one pair per input point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarImage {
    pub points: Vec<[f64; 2]>,
    pub labels: Vec<String>,
}

/// Parameters for the seven-generator symmetry group of a null hyperplane:
/// a euclidean motion of the quotient plane together with the affine ray map
/// `u -> u_scale * u + u_shear . x + u_translation`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperplaneSymmetry {
    pub translation: [f64; 2],
    pub rotation: f64,
    pub u_translation: f64,
    pub u_scale: f64,
    pub u_shear: [f64; 2],
}

impl Default for HyperplaneSymmetry {
    fn default() -> Self {
        Self {
            translation: [0.0, 0.0],
            rotation: 0.0,
            u_translation: 0.0,
            u_scale: 1.0,
            u_shear: [0.0, 0.0],
        }
    }
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

impl NullHyperplane {
    /// The unique null hyperplane containing the ray `{point + s * null_dir}`.
    ///
    /// The frame is deterministic: `ray_dir` is `null_dir` rescaled to unit
    /// time component (flipped to future if needed), `e1` is Gram-Schmidt
    /// seeded from the spatial axis least aligned with the ray and `e2`
    /// completes a right-handed spatial triple with the ray direction.
    pub fn through(point: &FourVector, null_dir: &FourVector, tol: &Tolerance) -> Result<Self> {
        if !(point.is_finite() && null_dir.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        if causal_class(null_dir, tol) != CausalClass::Null {
            return Err(GeometryError::NotNullDirection);
        }
        let ray_dir = *null_dir * (1.0 / null_dir.t);
        let s_len = (ray_dir.x * ray_dir.x + ray_dir.y * ray_dir.y + ray_dir.z * ray_dir.z).sqrt();
        let s = [ray_dir.x / s_len, ray_dir.y / s_len, ray_dir.z / s_len];

        let abs = [s[0].abs(), s[1].abs(), s[2].abs()];
        let mut k = 0;
        if abs[1] < abs[k] {
            k = 1;
        }
        if abs[2] < abs[k] {
            k = 2;
        }
        let mut seed = [0.0; 3];
        seed[k] = 1.0;
        let proj = seed[0] * s[0] + seed[1] * s[1] + seed[2] * s[2];
        let mut u1 = [
            seed[0] - proj * s[0],
            seed[1] - proj * s[1],
            seed[2] - proj * s[2],
        ];
        let n1 = (u1[0] * u1[0] + u1[1] * u1[1] + u1[2] * u1[2]).sqrt();
        u1 = [u1[0] / n1, u1[1] / n1, u1[2] / n1];
        let u2 = cross3(s, u1);

        let normal = FourVector::new(1.0, s[0], s[1], s[2]).lower();
        let offset = normal.pair(point);
        let n = normal.as_array();
        let n2 = n.iter().map(|v| v * v).sum::<f64>();
        let base = FourVector::new(
            offset * n[0] / n2,
            offset * n[1] / n2,
            offset * n[2] / n2,
            offset * n[3] / n2,
        );
        let u_form = FourCovector::new(0.5, s[0] / 2.0, s[1] / 2.0, s[2] / 2.0);
        Ok(Self {
            normal,
            offset,
            base,
            ray_dir: FourVector::new(1.0, s[0], s[1], s[2]),
            e1: FourVector::new(0.0, u1[0], u1[1], u1[2]),
            e2: FourVector::new(0.0, u2[0], u2[1], u2[2]),
            u_form,
        })
    }

    /// Rebuild the deterministic frame of the plane through `point` whose
    /// rays run along the raised normal.
    pub fn from_normal(normal: &FourCovector, point: &FourVector, tol: &Tolerance) -> Result<Self> {
        let mut ray = normal.raise();
        if ray.t < 0.0 {
            ray = -ray;
        }
        Self::through(point, &ray, tol)
    }

    pub fn contains(&self, p: &FourVector, tol: &Tolerance) -> bool {
        let scale = self.normal.euclidean_norm() * p.euclidean_norm().max(1.0);
        (self.normal.pair(p) - self.offset).abs() <= tol.rel_eps * scale + tol.abs_eps
    }

    /// Quotient coordinates `(x . e1, x . e2)` of a point.
    pub fn image_of(&self, p: &FourVector) -> [f64; 2] {
        [
            crate::mink::minkowski_dot(p, &self.e1),
            crate::mink::minkowski_dot(p, &self.e2),
        ]
    }

    /// Affine ray coordinate relative to the base point.
    pub fn u_of(&self, p: &FourVector) -> f64 {
        self.u_form.pair(&(*p - self.base))
    }

    /// Inverse of (`image_of`, `u_of`): the plane point with the given
    /// absolute quotient coordinates and ray coordinate.
    pub fn point_from(&self, image: [f64; 2], u: f64) -> FourVector {
        let b = self.image_of(&self.base);
        self.base + self.e1 * (image[0] - b[0]) + self.e2 * (image[1] - b[1]) + self.ray_dir * u
    }

    /// Plane point at quotient coordinates relative to the base point.
    pub fn point_at(&self, xi: [f64; 2], u: f64) -> FourVector {
        self.base + self.e1 * xi[0] + self.e2 * xi[1] + self.ray_dir * u
    }

    /// Ray coordinate of a displacement (base-independent linear form).
    pub fn u_of_displacement(&self, d: &FourVector) -> f64 {
        self.u_form.pair(d)
    }

    /// Collapse each lightray to a point: the planar image of a point set.
    pub fn planar_image(&self, points: &[FourVector], tol: &Tolerance) -> Result<PlanarImage> {
        let mut image = PlanarImage {
            points: Vec::new(),
            labels: Vec::new(),
        };
        for (i, p) in points.iter().enumerate() {
            if !self.contains(p, tol) {
                return Err(GeometryError::PointOffPlane(i));
            }
            image.points.push(self.image_of(p));
            image.labels.push(i.to_string());
        }
        Ok(image)
    }

    /// Apply one element of the hyperplane's symmetry group to an on-plane
    /// point. The shear acts on the point's original quotient coordinates.
    pub fn apply_symmetry(
        &self,
        p: &FourVector,
        params: &HyperplaneSymmetry,
        tol: &Tolerance,
    ) -> Result<FourVector> {
        if params.u_scale <= 0.0 {
            return Err(GeometryError::NonPositiveScale);
        }
        if !self.contains(p, tol) {
            return Err(GeometryError::PointOffPlane(0));
        }
        let b = self.image_of(&self.base);
        let abs = self.image_of(p);
        let xi = [abs[0] - b[0], abs[1] - b[1]];
        let u = self.u_of(p);
        let (c, s) = (params.rotation.cos(), params.rotation.sin());
        let xi_new = [
            c * xi[0] - s * xi[1] + params.translation[0],
            s * xi[0] + c * xi[1] + params.translation[1],
        ];
        let u_new = params.u_scale * u
            + params.u_shear[0] * xi[0]
            + params.u_shear[1] * xi[1]
            + params.u_translation;
        Ok(self.base + self.e1 * xi_new[0] + self.e2 * xi_new[1] + self.ray_dir * u_new)
    }
}
