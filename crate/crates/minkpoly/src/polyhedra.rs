//! Null polyhedra: tetrahedra and parallelepipeds embedded in null
//! hyperplanes, with signed-area accounting.
//!
//! Every face of a null polyhedron has the hyperplane's ray direction as its
//! only normal, so instead of an area vector each face carries its scalar
//! area with a sign: positive when the outgoing null leg is future-pointing.
//! The signed areas of a closed polyhedron sum to zero, which is the null
//! analogue of the closing-up condition on euclidean area normals.

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::hyperplane::NullHyperplane;
use crate::mink::{causal_class, CausalClass, FourVector, Tolerance};

/// Which half of the lightcross a face or hyperface opens toward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TimeSide {
    Past,
    Future,
}

impl TimeSide {
    pub fn flipped(self) -> Self {
        match self {
            TimeSide::Past => TimeSide::Future,
            TimeSide::Future => TimeSide::Past,
        }
    }
}

/// The two congruence types of a null tetrahedron, named by their
/// (past, future) face counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TetraKind {
    OneThree,
    TwoTwo,
}

/// A tetrahedron inside a null hyperplane. Face `i` omits vertex `i`; its
/// signed area is positive when the outgoing null leg is future-pointing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NullTetrahedron {
    pub vertices: [FourVector; 4],
    pub host: NullHyperplane,
    pub face_areas: [f64; 4],
    /// (past faces, future faces)
    pub tetra_type: (usize, usize),
    /// Quotient coordinates of the four vertices.
    pub image: [[f64; 2]; 4],
}

/// A parallelepiped inside a null hyperplane, stored as a base vertex and
/// three edge generators. Faces are listed as the (bc, ca, ab) triple at the
/// base vertex followed by the opposing triple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NullParallelepiped {
    pub base_vertex: FourVector,
    pub edges: [FourVector; 3],
    pub host: NullHyperplane,
    pub face_areas: [f64; 6],
    /// The vertex where the three past faces meet.
    pub initial_vertex: FourVector,
    /// Quotient images of the three edge generators.
    pub edge_images: [[f64; 2]; 3],
}

fn cross2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn sub2(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Coordinates of a displacement in the host's (u, x1, x2) system.
fn plane_coords(host: &NullHyperplane, d: &FourVector) -> [f64; 3] {
    let img = [
        crate::mink::minkowski_dot(d, &host.e1),
        crate::mink::minkowski_dot(d, &host.e2),
    ];
    [host.u_of_displacement(d), img[0], img[1]]
}

/// Sign of a face's outgoing null leg: +1 future, -1 past.
///
/// `span` holds two face edge vectors and `apex` points from the face toward
/// the rest of the polyhedron, all in (u, x1, x2) coordinates.
fn leg_sign(span: [[f64; 3]; 2], apex: [f64; 3], scale: f64) -> Result<f64> {
    let n = cross3(span[0], span[1]);
    let side = dot3(apex, n);
    if side.abs() <= 1e-14 * scale || n[0].abs() <= 1e-14 * scale {
        return Err(GeometryError::NotNullSpan);
    }
    // outgoing direction is -sign(side) * n
    Ok(if -side.signum() * n[0] > 0.0 {
        1.0
    } else {
        -1.0
    })
}

impl NullTetrahedron {
    /// Build a null tetrahedron from four vertices that span a null
    /// hyperplane with all six edges spacelike.
    pub fn build(vertices: [FourVector; 4], tol: &Tolerance) -> Result<Self> {
        for v in &vertices {
            if !v.is_finite() {
                return Err(GeometryError::NonFinite);
            }
        }
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (k, (i, j)) in pairs.iter().enumerate() {
            if causal_class(&(vertices[*j] - vertices[*i]), tol) != CausalClass::Spacelike {
                return Err(GeometryError::NonSpacelikeEdge(k));
            }
        }
        let m1 = vertices[1] - vertices[0];
        let m2 = vertices[2] - vertices[0];
        let m3 = vertices[3] - vertices[0];
        let w = crate::mink::epsilon_contract(&m1, &m2, &m3);
        let scale = m1.euclidean_norm() * m2.euclidean_norm() * m3.euclidean_norm();
        if w.euclidean_norm() <= tol.rel_eps * scale {
            return Err(GeometryError::NotNullSpan);
        }
        if causal_class(&w.raise(), tol) != CausalClass::Null {
            return Err(GeometryError::NotNullSpan);
        }
        let host = NullHyperplane::from_normal(&w, &vertices[0], tol)?;
        Self::finish(vertices, host, tol)
    }

    fn finish(vertices: [FourVector; 4], host: NullHyperplane, tol: &Tolerance) -> Result<Self> {
        let image = [
            host.image_of(&vertices[0]),
            host.image_of(&vertices[1]),
            host.image_of(&vertices[2]),
            host.image_of(&vertices[3]),
        ];
        let coords: Vec<[f64; 3]> = vertices
            .iter()
            .map(|v| plane_coords(&host, &(*v - vertices[0])))
            .collect();
        let diam = image
            .iter()
            .flat_map(|p| image.iter().map(move |q| (p[0] - q[0]).hypot(p[1] - q[1])))
            .fold(0.0f64, f64::max);

        let mut face_areas = [0.0; 4];
        for omit in 0..4 {
            let f: Vec<usize> = (0..4).filter(|&k| k != omit).collect();
            let area = 0.5
                * cross2(
                    sub2(image[f[1]], image[f[0]]),
                    sub2(image[f[2]], image[f[0]]),
                )
                .abs();
            if area <= tol.rel_eps * diam * diam {
                return Err(GeometryError::DegenerateFace(omit));
            }
            let span = [
                [
                    coords[f[1]][0] - coords[f[0]][0],
                    coords[f[1]][1] - coords[f[0]][1],
                    coords[f[1]][2] - coords[f[0]][2],
                ],
                [
                    coords[f[2]][0] - coords[f[0]][0],
                    coords[f[2]][1] - coords[f[0]][1],
                    coords[f[2]][2] - coords[f[0]][2],
                ],
            ];
            let apex = [
                coords[omit][0] - coords[f[0]][0],
                coords[omit][1] - coords[f[0]][1],
                coords[omit][2] - coords[f[0]][2],
            ];
            let sign = leg_sign(span, apex, diam.powi(3))?;
            face_areas[omit] = sign * area;
        }
        let n_future = face_areas.iter().filter(|a| **a > 0.0).count();
        Ok(Self {
            vertices,
            host,
            face_areas,
            tetra_type: (4 - n_future, n_future),
            image,
        })
    }

    /// Canonical maximally-regular tetrahedron of the given kind, embedded in
    /// `host` with all ray coordinates zero. The scale is the side of the
    /// outer triangle for `OneThree` and the leg (square side) for `TwoTwo`.
    pub fn regular(kind: TetraKind, scale: f64, host: &NullHyperplane) -> Result<Self> {
        if !(scale > 0.0) {
            return Err(GeometryError::NonPositiveScale);
        }
        let (image, face_areas): ([[f64; 2]; 4], [f64; 4]) = match kind {
            TetraKind::OneThree => {
                let r = scale / 3.0f64.sqrt();
                let angles = [90.0f64, 210.0, 330.0];
                let mut img = [[0.0; 2]; 4];
                for (i, deg) in angles.iter().enumerate() {
                    let a = deg.to_radians();
                    img[i] = [r * a.cos(), r * a.sin()];
                }
                img[3] = [0.0, 0.0];
                let big = 3.0f64.sqrt() / 4.0 * scale * scale;
                // one past face (the outer triangle, omitting the center
                // vertex) balancing three future faces of a third its area
                (
                    [img[0], img[1], img[2], img[3]],
                    [big / 3.0, big / 3.0, big / 3.0, -big],
                )
            }
            TetraKind::TwoTwo => {
                let h = scale / 2.0f64.sqrt();
                let img = [[h, 0.0], [0.0, h], [-h, 0.0], [0.0, -h]];
                let a = scale * scale / 2.0;
                // the pair of faces holding the 0-2 diagonal is past
                (img, [a, -a, a, -a])
            }
        };
        let vertices = [
            host.point_at(image[0], 0.0),
            host.point_at(image[1], 0.0),
            host.point_at(image[2], 0.0),
            host.point_at(image[3], 0.0),
        ];
        let image = [
            host.image_of(&vertices[0]),
            host.image_of(&vertices[1]),
            host.image_of(&vertices[2]),
            host.image_of(&vertices[3]),
        ];
        let n_future = face_areas.iter().filter(|a| **a > 0.0).count();
        Ok(Self {
            vertices,
            host: host.clone(),
            face_areas,
            tetra_type: (4 - n_future, n_future),
            image,
        })
    }

    /// Congruence-class representative with all four ray coordinates zero.
    ///
    /// The planar image, areas and type labels are unchanged; only the
    /// positions along the rays are flattened, which makes representatives of
    /// ray-shifted copies coincide vertexwise.
    pub fn canonicalize(&self) -> Self {
        let vertices = [
            self.host.point_from(self.image[0], 0.0),
            self.host.point_from(self.image[1], 0.0),
            self.host.point_from(self.image[2], 0.0),
            self.host.point_from(self.image[3], 0.0),
        ];
        Self {
            vertices,
            ..self.clone()
        }
    }

    /// Residual of the signed-area sum, to compare against
    /// `tol * total unsigned area`.
    pub fn signed_area_residual(&self) -> f64 {
        self.face_areas.iter().sum::<f64>().abs()
    }

    pub fn total_area(&self) -> f64 {
        self.face_areas.iter().map(|a| a.abs()).sum()
    }

    pub fn face_sides(&self) -> [TimeSide; 4] {
        let side = |a: f64| {
            if a > 0.0 {
                TimeSide::Future
            } else {
                TimeSide::Past
            }
        };
        [
            side(self.face_areas[0]),
            side(self.face_areas[1]),
            side(self.face_areas[2]),
            side(self.face_areas[3]),
        ]
    }
}

impl NullParallelepiped {
    /// Build a null parallelepiped from a base vertex and three spacelike
    /// edge generators spanning a null hyperplane. The base vertex must be
    /// the initial or final vertex, i.e. its planar image must lie strictly
    /// inside the triangle of its three neighbors.
    pub fn build(base: FourVector, edges: [FourVector; 3], tol: &Tolerance) -> Result<Self> {
        if !base.is_finite() || edges.iter().any(|e| !e.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        for (k, e) in edges.iter().enumerate() {
            if causal_class(e, tol) != CausalClass::Spacelike {
                return Err(GeometryError::NonSpacelikeEdge(k));
            }
        }
        let w = crate::mink::epsilon_contract(&edges[0], &edges[1], &edges[2]);
        let scale = edges
            .iter()
            .map(FourVector::euclidean_norm)
            .product::<f64>();
        if w.euclidean_norm() <= tol.rel_eps * scale {
            return Err(GeometryError::NotNullSpan);
        }
        if causal_class(&w.raise(), tol) != CausalClass::Null {
            return Err(GeometryError::NotNullSpan);
        }
        let host = NullHyperplane::from_normal(&w, &base, tol)?;

        let coords: Vec<[f64; 3]> = edges.iter().map(|e| plane_coords(&host, e)).collect();
        let imgs = [
            [coords[0][1], coords[0][2]],
            [coords[1][1], coords[1][2]],
            [coords[2][1], coords[2][2]],
        ];
        // barycentric coordinates of the base image inside its neighbor
        // triangle; strict with an abs_eps band
        let d = cross2(imgs[1], imgs[2]) + cross2(imgs[2], imgs[0]) + cross2(imgs[0], imgs[1]);
        let img_scale = imgs.iter().map(|p| p[0].hypot(p[1])).fold(0.0f64, f64::max);
        if d.abs() <= tol.abs_eps * img_scale * img_scale {
            return Err(GeometryError::ConvexityViolation);
        }
        let bary = [
            cross2(imgs[1], imgs[2]) / d,
            cross2(imgs[2], imgs[0]) / d,
            cross2(imgs[0], imgs[1]) / d,
        ];
        if bary.iter().any(|b| *b < tol.abs_eps) {
            return Err(GeometryError::ConvexityViolation);
        }

        // faces at the base vertex in (bc, ca, ab) order, then opposites
        let mut face_areas = [0.0; 6];
        for i in 0..3 {
            let j = (i + 1) % 3;
            let k = (i + 2) % 3;
            let area = cross2(imgs[j], imgs[k]).abs();
            let sign = leg_sign([coords[j], coords[k]], coords[i], scale)?;
            face_areas[i] = sign * area;
            face_areas[i + 3] = -face_areas[i];
        }
        let base_sides: Vec<f64> = face_areas[..3].iter().map(|a| a.signum()).collect();
        if base_sides[0] != base_sides[1] || base_sides[1] != base_sides[2] {
            return Err(GeometryError::ConvexityViolation);
        }
        let initial_vertex = if base_sides[0] < 0.0 {
            base
        } else {
            base + edges[0] + edges[1] + edges[2]
        };
        Ok(Self {
            base_vertex: base,
            edges,
            host,
            face_areas,
            initial_vertex,
            edge_images: imgs,
        })
    }

    /// The maximally regular doubly-null parallelepiped: twelve edges of
    /// equal length, rhombic faces with angles (2pi/3, pi/3), a regular
    /// hexagonal planar image, and the base-to-final diagonal on a lightray.
    pub fn regular_doubly_null(scale: f64, host: &NullHyperplane, tol: &Tolerance) -> Result<Self> {
        if !(scale > 0.0) {
            return Err(GeometryError::NonPositiveScale);
        }
        let u = scale / (2.0 * 2.0f64.sqrt());
        let mut edges = [FourVector::zero(); 3];
        for (i, e) in edges.iter_mut().enumerate() {
            let a = (90.0 + 120.0 * i as f64).to_radians();
            *e = host.e1 * (scale * a.cos()) + host.e2 * (scale * a.sin()) + host.ray_dir * u;
        }
        Self::build(host.base, edges, tol)
    }

    pub fn vertices(&self) -> [FourVector; 8] {
        let b = self.base_vertex;
        let [p, q, r] = self.edges;
        [
            b,
            b + p,
            b + q,
            b + r,
            b + p + q,
            b + q + r,
            b + r + p,
            b + p + q + r,
        ]
    }

    /// True when the planar images of the three edges sum to zero, i.e. the
    /// base and final vertices lie on one lightray.
    pub fn is_doubly_null(&self, tol: &Tolerance) -> bool {
        let s = [
            self.edge_images[0][0] + self.edge_images[1][0] + self.edge_images[2][0],
            self.edge_images[0][1] + self.edge_images[1][1] + self.edge_images[2][1],
        ];
        let scale = self
            .edge_images
            .iter()
            .map(|p| p[0].hypot(p[1]))
            .fold(0.0f64, f64::max);
        s[0].hypot(s[1]) <= tol.rel_eps * scale
    }

    pub fn signed_area_residual(&self) -> f64 {
        self.face_areas.iter().sum::<f64>().abs()
    }

    pub fn total_area(&self) -> f64 {
        self.face_areas.iter().map(|a| a.abs()).sum()
    }

    pub fn face_sides(&self) -> [TimeSide; 6] {
        let side = |a: f64| {
            if a > 0.0 {
                TimeSide::Future
            } else {
                TimeSide::Past
            }
        };
        [
            side(self.face_areas[0]),
            side(self.face_areas[1]),
            side(self.face_areas[2]),
            side(self.face_areas[3]),
            side(self.face_areas[4]),
            side(self.face_areas[5]),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn host_tz() -> NullHyperplane {
        NullHyperplane::through(
            &FourVector::zero(),
            &FourVector::new(1.0, 0.0, 0.0, 1.0),
            &tol(),
        )
        .unwrap()
    }

    /// Vertices of the maximally regular 4-simplex at unit scale.
    fn simplex_vertices() -> [FourVector; 5] {
        [
            FourVector::new(0.0, -SQRT3, -1.0, 0.0),
            FourVector::new(0.0, SQRT3, -1.0, 0.0),
            FourVector::new(0.0, 0.0, 2.0, 0.0),
            FourVector::new(1.0, 0.0, 0.0, -1.0),
            FourVector::new(1.0, 0.0, 0.0, 1.0),
        ]
    }

    #[test]
    fn regular_one_three() {
        let t = NullTetrahedron::regular(TetraKind::OneThree, 1.0, &host_tz()).unwrap();
        assert_eq!(t.tetra_type, (1, 3));
        let big = SQRT3 / 4.0;
        let mut areas: Vec<f64> = t.face_areas.to_vec();
        areas.sort_by(f64::total_cmp);
        assert_relative_eq!(areas[0], -big, max_relative = 1e-12);
        for a in &areas[1..] {
            assert_relative_eq!(*a, big / 3.0, max_relative = 1e-12);
        }
        assert!(t.signed_area_residual() <= 1e-10 * t.total_area());
        // outer triangle side 1, spokes 1/sqrt(3)
        let d01 = (t.vertices[1] - t.vertices[0]).norm_sq().sqrt();
        let d03 = (t.vertices[3] - t.vertices[0]).norm_sq().sqrt();
        assert_relative_eq!(d01, 1.0, max_relative = 1e-12);
        assert_relative_eq!(d03, 1.0 / SQRT3, max_relative = 1e-12);
    }

    #[test]
    fn regular_two_two() {
        let t = NullTetrahedron::regular(TetraKind::TwoTwo, 1.0, &host_tz()).unwrap();
        assert_eq!(t.tetra_type, (2, 2));
        for a in t.face_areas {
            assert_relative_eq!(a.abs(), 0.5, max_relative = 1e-12);
        }
        assert!(t.signed_area_residual() <= 1e-12);
        // four sides of length 1, two diagonals of length sqrt(2)
        let mut lengths: Vec<f64> = [(0usize, 1usize), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
            .iter()
            .map(|(i, j)| (t.vertices[*j] - t.vertices[*i]).norm_sq().sqrt())
            .collect();
        lengths.sort_by(f64::total_cmp);
        for l in &lengths[..4] {
            assert_relative_eq!(*l, 1.0, max_relative = 1e-12);
        }
        for l in &lengths[4..] {
            assert_relative_eq!(*l, 2.0f64.sqrt(), max_relative = 1e-12);
        }
    }

    #[test]
    fn regular_scaling_dilates_image() {
        let h = host_tz();
        let t1 = NullTetrahedron::regular(TetraKind::OneThree, 1.0, &h).unwrap();
        let t2 = NullTetrahedron::regular(TetraKind::OneThree, 2.0, &h).unwrap();
        let b = h.image_of(&h.base);
        for (p1, p2) in t1.image.iter().zip(t2.image.iter()) {
            assert_relative_eq!(2.0 * (p1[0] - b[0]), p2[0] - b[0], epsilon = 1e-12);
            assert_relative_eq!(2.0 * (p1[1] - b[1]), p2[1] - b[1], epsilon = 1e-12);
        }
        assert!(NullTetrahedron::regular(TetraKind::TwoTwo, 0.0, &h).is_err());
    }

    #[test]
    fn spacelike_span_is_rejected() {
        let vs = [
            FourVector::new(0.0, 0.0, 0.0, 0.0),
            FourVector::new(0.0, 1.0, 0.0, 0.0),
            FourVector::new(0.0, 0.0, 1.0, 0.0),
            FourVector::new(0.0, 0.0, 0.0, 1.0),
        ];
        assert_eq!(
            NullTetrahedron::build(vs, &tol()),
            Err(GeometryError::NotNullSpan)
        );
    }

    #[test]
    fn simplex_hyperface_one_three() {
        // past hyperface {e1, e2, e3, p1} of the regular 4-simplex
        let v = simplex_vertices();
        let t = NullTetrahedron::build([v[0], v[1], v[2], v[3]], &tol()).unwrap();
        assert_eq!(t.tetra_type, (1, 3));
        assert_relative_eq!(t.face_areas[3], -3.0 * SQRT3, max_relative = 1e-12);
        for a in &t.face_areas[..3] {
            assert_relative_eq!(*a, SQRT3, max_relative = 1e-12);
        }
        assert!(t.signed_area_residual() <= 1e-10 * t.total_area());
        // past and future areas balance, read off the labels
        let sides = t.face_sides();
        let sum = |want: TimeSide| -> f64 {
            sides
                .iter()
                .zip(&t.face_areas)
                .filter(|(s, _)| **s == want)
                .map(|(_, a)| a.abs())
                .sum()
        };
        assert_relative_eq!(
            sum(TimeSide::Past),
            sum(TimeSide::Future),
            max_relative = 1e-12
        );
    }

    #[test]
    fn simplex_hyperface_two_two() {
        // future hyperface {e1, e2, p1, p2}: the two faces holding the
        // e1-e2 edge are past
        let v = simplex_vertices();
        let t = NullTetrahedron::build([v[0], v[1], v[3], v[4]], &tol()).unwrap();
        assert_eq!(t.tetra_type, (2, 2));
        assert_relative_eq!(t.face_areas[0], SQRT3, max_relative = 1e-12);
        assert_relative_eq!(t.face_areas[1], SQRT3, max_relative = 1e-12);
        assert_relative_eq!(t.face_areas[2], -SQRT3, max_relative = 1e-12);
        assert_relative_eq!(t.face_areas[3], -SQRT3, max_relative = 1e-12);
    }

    #[test]
    fn canonicalize_flattens_and_is_idempotent() {
        let v = simplex_vertices();
        let t = NullTetrahedron::build([v[0], v[1], v[2], v[3]], &tol()).unwrap();
        let c = t.canonicalize();
        for (orig, flat) in t.image.iter().zip(c.image.iter()) {
            assert_relative_eq!(orig[0], flat[0], epsilon = 1e-12);
            assert_relative_eq!(orig[1], flat[1], epsilon = 1e-12);
        }
        for vtx in &c.vertices {
            assert_relative_eq!(c.host.u_of(vtx), 0.0, epsilon = 1e-12);
        }
        let cc = c.canonicalize();
        for (a, b) in c.vertices.iter().zip(cc.vertices.iter()) {
            assert_relative_eq!((*a - *b).euclidean_norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn canonical_forms_of_ray_shifts_coincide() {
        let v = simplex_vertices();
        let t = NullTetrahedron::build([v[0], v[1], v[2], v[3]], &tol()).unwrap();
        let ray = t.host.ray_dir;
        let shifted = [
            t.vertices[0] + ray * 1.0,
            t.vertices[1] + ray * 2.0,
            t.vertices[2] + ray * 3.0,
            t.vertices[3] + ray * 4.0,
        ];
        let t2 = NullTetrahedron::build(shifted, &tol()).unwrap();
        let (c1, c2) = (t.canonicalize(), t2.canonicalize());
        for (a, b) in c1.vertices.iter().zip(c2.vertices.iter()) {
            assert_relative_eq!((*a - *b).euclidean_norm(), 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn regular_parallelepiped_shape() {
        let h = host_tz();
        let p = NullParallelepiped::regular_doubly_null(1.0, &h, &tol()).unwrap();
        for e in &p.edges {
            assert_relative_eq!(e.norm_sq(), 1.0, max_relative = 1e-12);
        }
        for a in p.face_areas {
            assert_relative_eq!(a.abs(), SQRT3 / 2.0, max_relative = 1e-12);
        }
        assert!(p.is_doubly_null(&tol()));
        assert!(p.signed_area_residual() <= 1e-12);
        assert_eq!(
            p.face_sides(),
            [
                TimeSide::Past,
                TimeSide::Past,
                TimeSide::Past,
                TimeSide::Future,
                TimeSide::Future,
                TimeSide::Future
            ]
        );
        assert_relative_eq!(
            (p.initial_vertex - p.base_vertex).euclidean_norm(),
            0.0,
            epsilon = 1e-12
        );

        // six intermediate vertices form a regular hexagon: all at equal
        // image radius from the center, at pi/3 angular steps
        let center = h.image_of(&p.base_vertex);
        let [a, b, c] = p.edge_images;
        let hexagon = [a, [-c[0], -c[1]], b, [-a[0], -a[1]], c, [-b[0], -b[1]]];
        let mut prev = (hexagon[5][1]).atan2(hexagon[5][0]);
        let _ = center;
        for pt in hexagon {
            assert_relative_eq!(pt[0].hypot(pt[1]), 1.0, max_relative = 1e-12);
            let ang = pt[1].atan2(pt[0]);
            let mut step = ang - prev;
            while step <= -std::f64::consts::PI {
                step += 2.0 * std::f64::consts::PI;
            }
            assert_relative_eq!(step.abs(), std::f64::consts::FRAC_PI_3, max_relative = 1e-9);
            prev = ang;
        }
    }

    #[test]
    fn parallelotope_hyperface_is_doubly_null() {
        // past hyperface of the regular parallelotope at unit scale
        let s = SQRT3 / 2.0;
        let base = FourVector::new(-1.0, 0.0, 0.0, 0.0);
        let g2 = FourVector::new(0.5, s, -s, -s);
        let g3 = FourVector::new(0.5, -s, s, -s);
        let g4 = FourVector::new(0.5, -s, -s, s);
        let p = NullParallelepiped::build(base, [g2, g3, g4], &tol()).unwrap();
        assert!(p.is_doubly_null(&tol()));
        assert_relative_eq!(
            (p.initial_vertex - base).euclidean_norm(),
            0.0,
            epsilon = 1e-12
        );
        for a in p.face_areas {
            assert_relative_eq!(a.abs(), SQRT3, max_relative = 1e-12);
        }
    }

    #[test]
    fn building_from_the_final_vertex_flips_labels() {
        let h = host_tz();
        let p = NullParallelepiped::regular_doubly_null(1.0, &h, &tol()).unwrap();
        // rebase at the opposite corner: the three faces there are future
        let final_vertex = p.base_vertex + p.edges[0] + p.edges[1] + p.edges[2];
        let q = NullParallelepiped::build(
            final_vertex,
            [-p.edges[0], -p.edges[1], -p.edges[2]],
            &tol(),
        )
        .unwrap();
        assert_eq!(
            q.face_sides(),
            [
                TimeSide::Future,
                TimeSide::Future,
                TimeSide::Future,
                TimeSide::Past,
                TimeSide::Past,
                TimeSide::Past
            ]
        );
        // the computed initial vertex is the original base
        assert_relative_eq!(
            (q.initial_vertex - p.base_vertex).euclidean_norm(),
            0.0,
            epsilon = 1e-12
        );
        assert!(q.is_doubly_null(&tol()));
    }

    #[test]
    fn convexity_gate() {
        let h = host_tz();
        let u = 0.4;
        let embed = |img: [f64; 2]| h.e1 * img[0] + h.e2 * img[1] + h.ray_dir * u;
        // images (1,0), (0,1), (2,2): the base image is outside the
        // neighbor triangle
        let bad = [embed([1.0, 0.0]), embed([0.0, 1.0]), embed([2.0, 2.0])];
        assert_eq!(
            NullParallelepiped::build(h.base, bad, &tol()),
            Err(GeometryError::ConvexityViolation)
        );
        // images (1,0), (0,1), (-2,-2) leave the base strictly inside
        let good = [embed([1.0, 0.0]), embed([0.0, 1.0]), embed([-2.0, -2.0])];
        let p = NullParallelepiped::build(h.base, good, &tol()).unwrap();
        assert!(!p.is_doubly_null(&tol()));
        assert!(p.signed_area_residual() <= 1e-10 * p.total_area());
    }

    #[test]
    fn doubly_null_boundary_behavior() {
        let h = host_tz();
        let t = tol();
        let p = NullParallelepiped::regular_doubly_null(1.0, &h, &t).unwrap();
        // perturb one edge image by 10x the relative tolerance
        let mut edges = p.edges;
        edges[0] = edges[0] + h.e1 * (10.0 * t.rel_eps);
        let q = NullParallelepiped::build(p.base_vertex, edges, &t).unwrap();
        assert!(!q.is_doubly_null(&t));
    }
}
