//! Minkowski linear algebra with metric signature (-,+,+,+).
//!
//! Vectors carry upper indices, covectors lower indices, and every raise or
//! lower goes through [`FourVector::lower`] / [`FourCovector::raise`]
//! explicitly. The Levi-Civita orientation is fixed by `eps_{0123} = +1`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};

/// A spacetime point, displacement or direction (upper index).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// A normal or momentum-like object (lower index).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FourCovector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Causal character of a four-vector under a [`Tolerance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CausalClass {
    Timelike,
    Null,
    Spacelike,
    Zero,
}

/// Relative tolerance with an absolute floor, used by every causal test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rel_eps: f64,
    pub abs_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rel_eps: 1e-9,
            abs_eps: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(rel_eps: f64, abs_eps: f64) -> Result<Self> {
        if abs_eps > 0.0 && abs_eps <= rel_eps && rel_eps < 1e-3 {
            Ok(Self { rel_eps, abs_eps })
        } else {
            Err(GeometryError::BadTolerance)
        }
    }
}

impl FourVector {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self { t, x, y, z }
    }

    pub const fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.t, self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    /// Lower the index with eta: (t, x, y, z) -> (-t, x, y, z).
    pub fn lower(&self) -> FourCovector {
        FourCovector {
            t: -self.t,
            x: self.x,
            y: self.y,
            z: self.z,
        }
    }

    /// Minkowski norm squared, v.v.
    pub fn norm_sq(&self) -> f64 {
        minkowski_dot(self, self)
    }

    /// Euclidean norm of the raw components, used only for tolerance scales.
    pub fn euclidean_norm(&self) -> f64 {
        (self.t * self.t + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl FourCovector {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self { t, x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.t, self.x, self.y, self.z]
    }

    /// Raise the index with eta inverse: (t, x, y, z) -> (-t, x, y, z).
    pub fn raise(&self) -> FourVector {
        FourVector {
            t: -self.t,
            x: self.x,
            y: self.y,
            z: self.z,
        }
    }

    /// Natural pairing c_mu v^mu (no metric involved).
    pub fn pair(&self, v: &FourVector) -> f64 {
        self.t * v.t + self.x * v.x + self.y * v.y + self.z * v.z
    }

    pub fn euclidean_norm(&self) -> f64 {
        (self.t * self.t + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

impl Add for FourVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.t + rhs.t,
            self.x + rhs.x,
            self.y + rhs.y,
            self.z + rhs.z,
        )
    }
}

impl Sub for FourVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(
            self.t - rhs.t,
            self.x - rhs.x,
            self.y - rhs.y,
            self.z - rhs.z,
        )
    }
}

impl Mul<f64> for FourVector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.t * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for FourVector {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl Add for FourCovector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.t + rhs.t,
            self.x + rhs.x,
            self.y + rhs.y,
            self.z + rhs.z,
        )
    }
}

impl Mul<f64> for FourCovector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.t * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for FourCovector {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

/// eta_{mu nu} u^mu v^nu = -u_t v_t + u_x v_x + u_y v_y + u_z v_z.
pub fn minkowski_dot(u: &FourVector, v: &FourVector) -> f64 {
    -u.t * v.t + u.x * v.x + u.y * v.y + u.z * v.z
}

/// eta^{mu nu} a_mu b_nu for covectors; same component formula as for vectors.
pub fn covector_inner(a: &FourCovector, b: &FourCovector) -> f64 {
    -a.t * b.t + a.x * b.x + a.y * b.y + a.z * b.z
}

/// Classify a vector as Zero, Null, Timelike or Spacelike.
///
/// Zero wins when every component sits within `abs_eps` of 0; the null band
/// is `|v.v| <= rel_eps * |v|_e^2` so it scales with the vector.
pub fn causal_class(v: &FourVector, tol: &Tolerance) -> CausalClass {
    let max_component = v.t.abs().max(v.x.abs()).max(v.y.abs()).max(v.z.abs());
    if max_component <= tol.abs_eps {
        return CausalClass::Zero;
    }
    let n2 = v.norm_sq();
    let e2 = v.euclidean_norm().powi(2);
    if n2.abs() <= tol.rel_eps * e2 {
        CausalClass::Null
    } else if n2 < 0.0 {
        CausalClass::Timelike
    } else {
        CausalClass::Spacelike
    }
}

pub fn is_null(v: &FourVector, tol: &Tolerance) -> bool {
    causal_class(v, tol) == CausalClass::Null
}

/// Raw Levi-Civita contraction w_mu = eps_{mu nu rho sigma} a^nu b^rho c^sigma
/// with eps_{0123} = +1, so that w.pair(u) = det[u; a; b; c] row-wise.
pub fn epsilon_contract(a: &FourVector, b: &FourVector, c: &FourVector) -> FourCovector {
    let (a, b, c) = (a.as_array(), b.as_array(), c.as_array());
    let minor = |p: usize, q: usize, r: usize| -> f64 {
        a[p] * (b[q] * c[r] - b[r] * c[q]) - a[q] * (b[p] * c[r] - b[r] * c[p])
            + a[r] * (b[p] * c[q] - b[q] * c[p])
    };
    FourCovector::new(
        minor(1, 2, 3),
        -minor(0, 2, 3),
        minor(0, 1, 3),
        -minor(0, 1, 2),
    )
}

/// Volume normal of the null tetrahedron spanned by edge vectors a, b, c:
/// the contraction `eps_{mu nu rho sigma} a b c / 36`, signed so that its
/// pairing with `outgoing_witness` is positive.
pub fn volume_normal(
    a: &FourVector,
    b: &FourVector,
    c: &FourVector,
    outgoing_witness: &FourVector,
    tol: &Tolerance,
) -> Result<FourCovector> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && outgoing_witness.is_finite()) {
        return Err(GeometryError::NonFinite);
    }
    let w = epsilon_contract(a, b, c);
    let scale = a.euclidean_norm() * b.euclidean_norm() * c.euclidean_norm();
    if w.euclidean_norm() <= tol.rel_eps * scale {
        return Err(GeometryError::DegenerateSpan);
    }
    let pairing = w.pair(outgoing_witness);
    if pairing.abs() <= tol.rel_eps * w.euclidean_norm() * outgoing_witness.euclidean_norm() {
        return Err(GeometryError::AmbiguousOrientation);
    }
    let signed = if pairing > 0.0 { w } else { -w };
    Ok(signed * (1.0 / 36.0))
}

/// Euclidean norm of the componentwise sum of a set of covectors.
///
/// For the outgoing hyperface normals of a closed 4-polytope this residual
/// vanishes; callers compare it against `tol * max normal magnitude`.
pub fn normal_zero_sum_residual(normals: &[FourCovector]) -> f64 {
    let mut sum = FourCovector::new(0.0, 0.0, 0.0, 0.0);
    for n in normals {
        sum = sum + *n;
    }
    sum.euclidean_norm()
}

/// Two routes to the area of the timelike parallelogram spanned by a pair of
/// null covectors.
///
/// The first return contracts the antisymmetrized square of
/// `(l1 (x) l2 - l2 (x) l1) / sqrt(2)` component by component (raising each
/// index through eta) and takes the square root; the second is the direct
/// scalar product `-eta^{mu nu} l1_mu l2_nu`. For covectors of a common time
/// orientation the two agree.
pub fn timelike_parallelogram_area_check(
    l1: &FourCovector,
    l2: &FourCovector,
    tol: &Tolerance,
) -> Result<(f64, f64)> {
    for l in [l1, l2] {
        if !is_null(&l.raise(), tol) {
            return Err(GeometryError::NotNull);
        }
    }
    let a1 = l1.as_array();
    let a2 = l2.as_array();
    let eta = [-1.0, 1.0, 1.0, 1.0];
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut contraction = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            let b_lo = (a1[mu] * a2[nu] - a1[nu] * a2[mu]) * inv_sqrt2;
            let b_hi = eta[mu] * eta[nu] * b_lo;
            contraction += b_lo * b_hi;
        }
    }
    let area = contraction.abs().sqrt();
    let dot = -covector_inner(l1, l2);
    Ok((area, dot))
}

/// A proper orthochronous Lorentz transformation stored as its matrix.
#[derive(Debug, Clone, Copy)]
pub struct Lorentz {
    m: [[f64; 4]; 4],
}

impl Lorentz {
    pub fn identity() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self { m }
    }

    /// Boost of the given rapidity along a spatial unit direction.
    pub fn boost(rapidity: f64, dir: [f64; 3]) -> Self {
        let n = (dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]).sqrt();
        let (nx, ny, nz) = (dir[0] / n, dir[1] / n, dir[2] / n);
        let ch = rapidity.cosh();
        let sh = rapidity.sinh();
        let mut m = [[0.0; 4]; 4];
        m[0][0] = ch;
        for (i, ni) in [nx, ny, nz].into_iter().enumerate() {
            m[0][i + 1] = sh * ni;
            m[i + 1][0] = sh * ni;
            for (j, nj) in [nx, ny, nz].into_iter().enumerate() {
                m[i + 1][j + 1] = (ch - 1.0) * ni * nj + if i == j { 1.0 } else { 0.0 };
            }
        }
        Self { m }
    }

    /// Spatial rotation by `angle` about a spatial unit axis.
    pub fn rotation(angle: f64, axis: [f64; 3]) -> Self {
        let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        let (ux, uy, uz) = (axis[0] / n, axis[1] / n, axis[2] / n);
        let c = angle.cos();
        let s = angle.sin();
        let u = [ux, uy, uz];
        let mut m = [[0.0; 4]; 4];
        m[0][0] = 1.0;
        for i in 0..3 {
            for j in 0..3 {
                let cross = match (i, j) {
                    (0, 1) => -uz,
                    (0, 2) => uy,
                    (1, 0) => uz,
                    (1, 2) => -ux,
                    (2, 0) => -uy,
                    (2, 1) => ux,
                    _ => 0.0,
                };
                let delta = if i == j { 1.0 } else { 0.0 };
                m[i + 1][j + 1] = c * delta + (1.0 - c) * u[i] * u[j] + s * cross;
            }
        }
        Self { m }
    }

    pub fn compose(&self, other: &Lorentz) -> Self {
        let mut m = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                for (k, other_row) in other.m.iter().enumerate() {
                    m[i][j] += self.m[i][k] * other_row[j];
                }
            }
        }
        Self { m }
    }

    pub fn apply(&self, v: &FourVector) -> FourVector {
        let a = v.as_array();
        let mut out = [0.0; 4];
        for (i, row) in self.m.iter().enumerate() {
            out[i] = row[0] * a[0] + row[1] * a[1] + row[2] * a[2] + row[3] * a[3];
        }
        FourVector::from_array(out)
    }
}
