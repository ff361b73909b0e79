//! Tetrahedral diamonds: piecewise-flat causal diamonds over a spacelike
//! base tetrahedron.
//!
//! The eight null hyperplanes orthogonal to the base faces meet in two
//! apex vertices sitting above and below the center of the base's inscribed
//! sphere at a time offset equal to the inscribed radius.

use nalgebra::{Matrix4, Vector4};

use crate::error::{GeometryError, Result};
use crate::mink::{causal_class, minkowski_dot, CausalClass, FourVector, Tolerance};

use super::{assemble, Family, NullFaced4Polytope};

struct BaseFrame {
    /// Future-pointing unit timelike normal of the base hyperplane.
    normal: FourVector,
    /// Spacelike orthonormal frame spanning the hyperplane.
    axes: [FourVector; 3],
    /// Intrinsic coordinates of the four base vertices.
    coords: [[f64; 3]; 4],
}

fn base_frame(base: &[FourVector; 4], tol: &Tolerance) -> Result<BaseFrame> {
    for v in base {
        if !v.is_finite() {
            return Err(GeometryError::NonFinite);
        }
    }
    let m = [base[1] - base[0], base[2] - base[0], base[3] - base[0]];
    let w = crate::mink::epsilon_contract(&m[0], &m[1], &m[2]);
    let scale: f64 = m.iter().map(FourVector::euclidean_norm).product();
    if w.euclidean_norm() <= tol.rel_eps * scale {
        return Err(GeometryError::DegenerateBase);
    }
    let raised = w.raise();
    if causal_class(&raised, tol) != CausalClass::Timelike {
        return Err(GeometryError::NonSpacelikeBase);
    }
    let mut normal = raised * (1.0 / (-raised.norm_sq()).sqrt());
    if normal.t < 0.0 {
        normal = -normal;
    }

    // Gram-Schmidt inside the hyperplane; the induced metric is euclidean
    let mut axes = [FourVector::zero(); 3];
    let mut count = 0;
    for v in m {
        let mut u = v;
        for a in axes.iter().take(count) {
            u = u - *a * minkowski_dot(&u, a);
        }
        let n2 = u.norm_sq();
        if n2 <= tol.rel_eps * v.norm_sq() {
            return Err(GeometryError::DegenerateBase);
        }
        axes[count] = u * (1.0 / n2.sqrt());
        count += 1;
    }

    let mut coords = [[0.0; 3]; 4];
    for (k, v) in base.iter().enumerate() {
        let d = *v - base[0];
        for (j, a) in axes.iter().enumerate() {
            coords[k][j] = minkowski_dot(&d, a);
        }
    }
    Ok(BaseFrame {
        normal,
        axes,
        coords,
    })
}

fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
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

/// Inscribed sphere of a spacelike base tetrahedron, inside its own
/// hyperplane: the center (as a spacetime point) and the radius.
pub fn insphere(base: &[FourVector; 4], tol: &Tolerance) -> Result<(FourVector, f64)> {
    let frame = base_frame(base, tol)?;
    let (center3, r) = insphere_intrinsic(&frame.coords, tol)?;
    let center = base[0]
        + frame.axes[0] * center3[0]
        + frame.axes[1] * center3[1]
        + frame.axes[2] * center3[2];
    Ok((center, r))
}

/// Solve for the point equidistant from the four face planes: one linear
/// system in (center, radius) with inward unit face normals.
fn insphere_intrinsic(y: &[[f64; 3]; 4], tol: &Tolerance) -> Result<([f64; 3], f64)> {
    let mut m = Matrix4::zeros();
    let mut rhs = Vector4::zeros();
    for omit in 0..4 {
        let f: Vec<usize> = (0..4).filter(|&k| k != omit).collect();
        let e1 = sub3(y[f[1]], y[f[0]]);
        let e2 = sub3(y[f[2]], y[f[0]]);
        let mut u = cross3(e1, e2);
        let n = dot3(u, u).sqrt();
        if n <= tol.rel_eps * dot3(e1, e1).sqrt() * dot3(e2, e2).sqrt() {
            return Err(GeometryError::DegenerateBase);
        }
        u = [u[0] / n, u[1] / n, u[2] / n];
        if dot3(sub3(y[omit], y[f[0]]), u) < 0.0 {
            u = [-u[0], -u[1], -u[2]];
        }
        for c in 0..3 {
            m[(omit, c)] = u[c];
        }
        m[(omit, 3)] = -1.0;
        rhs[omit] = dot3(u, y[f[0]]);
    }
    if m.determinant().abs() <= tol.abs_eps {
        return Err(GeometryError::DegenerateBase);
    }
    let sol = m.lu().solve(&rhs).ok_or(GeometryError::DegenerateBase)?;
    if sol[3] <= 0.0 {
        return Err(GeometryError::DegenerateBase);
    }
    Ok(([sol[0], sol[1], sol[2]], sol[3]))
}

/// 3-volume of the spacelike base tetrahedron in its own hyperplane.
pub fn base_tetra_volume(base: &[FourVector; 4], tol: &Tolerance) -> Result<f64> {
    let frame = base_frame(base, tol)?;
    let y = frame.coords;
    let det = dot3(cross3(sub3(y[1], y[0]), sub3(y[2], y[0])), sub3(y[3], y[0]));
    Ok(det.abs() / 6.0)
}

/// Build the tetrahedral diamond over a spacelike base tetrahedron: the
/// base's four vertices plus an initial and a final apex on the time axis
/// through the insphere center, bounded by eight null tetrahedra.
pub fn tetrahedral_diamond(base: [FourVector; 4], tol: &Tolerance) -> Result<NullFaced4Polytope> {
    let frame = base_frame(&base, tol)?;
    let (center3, r) = insphere_intrinsic(&frame.coords, tol)?;
    let center = base[0]
        + frame.axes[0] * center3[0]
        + frame.axes[1] * center3[1]
        + frame.axes[2] * center3[2];
    let initial = center - frame.normal * r;
    let final_v = center + frame.normal * r;

    let mut vertices = base.to_vec();
    vertices.push(initial);
    vertices.push(final_v);
    let labels = ["b1", "b2", "b3", "b4", "i", "f"]
        .iter()
        .map(|s| s.to_string())
        .collect();

    // hyperfaces 0..3 join base faces to the initial vertex, 4..7 to the final
    let mut hyperface_ids = Vec::with_capacity(8);
    for apex in [4usize, 5] {
        for omit in 0..4 {
            let mut ids: Vec<usize> = (0..4).filter(|&k| k != omit).collect();
            ids.push(apex);
            hyperface_ids.push(ids);
        }
    }

    let mut face_ids = Vec::new();
    for omit in 0..4 {
        // base face: shared by the past and future hyperfaces over it
        let ids: Vec<usize> = (0..4).filter(|&k| k != omit).collect();
        face_ids.push((ids, (omit, omit + 4)));
    }
    for a in 0..4 {
        for b in a + 1..4 {
            let others: Vec<usize> = (0..4).filter(|&k| k != a && k != b).collect();
            face_ids.push((vec![a, b, 4], (others[0], others[1])));
            face_ids.push((vec![a, b, 5], (others[0] + 4, others[1] + 4)));
        }
    }

    let mut edge_ids = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            edge_ids.push((a, b));
        }
    }
    for apex in [4usize, 5] {
        for b in 0..4 {
            edge_ids.push((b, apex));
        }
    }

    assemble(
        Family::Diamond,
        labels,
        vertices,
        hyperface_ids,
        face_ids,
        edge_ids,
        tol,
        |_| GeometryError::NonSpacelikeFace,
    )
}

/// The maximally regular tetrahedral diamond: regular base tetrahedron with
/// inscribed radius `scale`, base edges 2*sqrt(6)*a, apex edges 2*sqrt(2)*a
/// and 4-volume 4*sqrt(3)*a^4.
pub fn regular_diamond(scale: f64) -> Result<NullFaced4Polytope> {
    if !(scale > 0.0) {
        return Err(GeometryError::NonPositiveScale);
    }
    let a = scale;
    let s6 = 6.0f64.sqrt();
    let s2 = 2.0f64.sqrt();
    let base = [
        FourVector::new(0.0, -s6 * a, -s2 * a, -a),
        FourVector::new(0.0, s6 * a, -s2 * a, -a),
        FourVector::new(0.0, 0.0, 2.0 * s2 * a, -a),
        FourVector::new(0.0, 0.0, 0.0, 3.0 * a),
    ];
    tetrahedral_diamond(base, &Tolerance::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::TimeSide;
    use crate::polytopes::{causal_profile, hull_volume, tessellation_obstruction_check};
    use approx::assert_relative_eq;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn regular_insphere() {
        let d = regular_diamond(1.0).unwrap();
        let base = [d.vertices[0], d.vertices[1], d.vertices[2], d.vertices[3]];
        let (center, r) = insphere(&base, &tol()).unwrap();
        assert_relative_eq!(center.euclidean_norm(), 0.0, epsilon = 1e-9);
        assert_relative_eq!(r, 1.0, max_relative = 1e-12);
        let apexes = (d.vertices[4] - FourVector::new(-1.0, 0.0, 0.0, 0.0)).euclidean_norm()
            + (d.vertices[5] - FourVector::new(1.0, 0.0, 0.0, 0.0)).euclidean_norm();
        assert_relative_eq!(apexes, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn corner_tetrahedron_insphere() {
        // unit right-corner tetrahedron: r = (3 - sqrt(3)) / 6
        let base = [
            FourVector::new(0.0, 0.0, 0.0, 0.0),
            FourVector::new(0.0, 1.0, 0.0, 0.0),
            FourVector::new(0.0, 0.0, 1.0, 0.0),
            FourVector::new(0.0, 0.0, 0.0, 1.0),
        ];
        let (center, r) = insphere(&base, &tol()).unwrap();
        assert_relative_eq!(r, (3.0 - SQRT3) / 6.0, max_relative = 1e-12);
        assert_relative_eq!(center.x, r, max_relative = 1e-12);
        assert_relative_eq!(center.y, r, max_relative = 1e-12);
        assert_relative_eq!(center.z, r, max_relative = 1e-12);

        // translation equivariance
        let shift = FourVector::new(0.0, 2.0, -1.0, 0.5);
        let moved = [
            base[0] + shift,
            base[1] + shift,
            base[2] + shift,
            base[3] + shift,
        ];
        let (center2, r2) = insphere(&moved, &tol()).unwrap();
        assert_relative_eq!(r2, r, max_relative = 1e-12);
        assert_relative_eq!(
            (center2 - center - shift).euclidean_norm(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn degenerate_and_nonspacelike_bases() {
        let flat = [
            FourVector::new(0.0, 0.0, 0.0, 0.0),
            FourVector::new(0.0, 1.0, 0.0, 0.0),
            FourVector::new(0.0, 0.0, 1.0, 0.0),
            FourVector::new(0.0, 1.0, 1.0, 0.0),
        ];
        assert_eq!(insphere(&flat, &tol()), Err(GeometryError::DegenerateBase));
        let timelike = [
            FourVector::new(0.0, 0.0, 0.0, 0.0),
            FourVector::new(1.0, 0.0, 0.0, 0.0),
            FourVector::new(0.0, 0.0, 1.0, 0.0),
            FourVector::new(0.0, 0.0, 0.0, 1.0),
        ];
        assert_eq!(
            insphere(&timelike, &tol()),
            Err(GeometryError::NonSpacelikeBase)
        );
    }

    #[test]
    fn regular_diamond_metrics() {
        let d = regular_diamond(1.0).unwrap();
        assert_relative_eq!(hull_volume(&d), 4.0 * SQRT3, max_relative = 1e-12);

        let mut lengths = d.edge_lengths();
        lengths.sort_by(f64::total_cmp);
        for l in &lengths[..8] {
            assert_relative_eq!(*l, 2.0 * 2.0f64.sqrt(), max_relative = 1e-12);
        }
        for l in &lengths[8..] {
            assert_relative_eq!(*l, 2.0 * 6.0f64.sqrt(), max_relative = 1e-12);
        }

        let mut areas: Vec<f64> = (0..d.faces.len()).map(|f| d.face_area_direct(f)).collect();
        areas.sort_by(f64::total_cmp);
        for a in &areas[..12] {
            assert_relative_eq!(*a, 2.0 * SQRT3, max_relative = 1e-12);
        }
        for a in &areas[12..] {
            assert_relative_eq!(*a, 6.0 * SQRT3, max_relative = 1e-12);
        }
    }

    #[test]
    fn volume_from_radius_and_base() {
        let d = regular_diamond(1.0).unwrap();
        let base = [d.vertices[0], d.vertices[1], d.vertices[2], d.vertices[3]];
        let (_, r) = insphere(&base, &tol()).unwrap();
        let v = base_tetra_volume(&base, &tol()).unwrap();
        assert_relative_eq!(0.5 * r * v, hull_volume(&d), max_relative = 1e-12);

        // each half-simplex carries a quarter of r * V
        for apex in [4usize, 5] {
            let e1 = d.vertices[1] - d.vertices[0];
            let e2 = d.vertices[2] - d.vertices[0];
            let e3 = d.vertices[3] - d.vertices[0];
            let e4 = d.vertices[apex] - d.vertices[0];
            let half = crate::mink::epsilon_contract(&e1, &e2, &e3).pair(&e4).abs() / 24.0;
            assert_relative_eq!(half, 0.25 * r * v, max_relative = 1e-12);
        }
    }

    #[test]
    fn diamond_causal_structure() {
        let d = regular_diamond(1.0).unwrap();
        for k in 0..4 {
            assert_eq!(d.hyperfaces[k].side, TimeSide::Past);
            assert_eq!(d.hyperfaces[k + 4].side, TimeSide::Future);
            // past hyperfaces are (3,1) tetrahedra, future ones (1,3)
            assert_eq!(d.hyperface_tetrahedron(k).unwrap().tetra_type, (3, 1));
            assert_eq!(d.hyperface_tetrahedron(k + 4).unwrap().tetra_type, (1, 3));
        }
        let p = causal_profile(&d);
        assert_eq!(p.hyperface_counts, (4, 4));
        assert_eq!(p.face_counts, (6, 4, 6));
        assert_eq!(p.edge_histogram.get(&(3, 0)), Some(&4));
        assert_eq!(p.edge_histogram.get(&(2, 2)), Some(&6));
        assert_eq!(p.edge_histogram.get(&(0, 3)), Some(&4));
        assert_eq!(p.vertex_histogram.get(&(4, 0)), Some(&1));
        assert_eq!(p.vertex_histogram.get(&(3, 3)), Some(&4));
        assert_eq!(p.vertex_histogram.get(&(0, 4)), Some(&1));
        assert_eq!(tessellation_obstruction_check(&d), (4, 12, false));
    }

    #[test]
    fn side_hyperface_image_contains_tangency_point() {
        let d = regular_diamond(1.0).unwrap();
        // hyperface over base face {b1,b2,b3} (the z = -1 face, omitting
        // b4): the apex image is the tangency point of the insphere with
        // that face, interior to it
        let t = d.hyperface_tetrahedron(3).unwrap();
        let apex_img = t.image[3];
        let tangency = FourVector::new(0.0, 0.0, 0.0, -1.0);
        let expected = t.host.image_of(&tangency);
        assert_relative_eq!(apex_img[0], expected[0], epsilon = 1e-9);
        assert_relative_eq!(apex_img[1], expected[1], epsilon = 1e-9);
    }

    #[test]
    fn zero_sum_of_normals() {
        let d = regular_diamond(1.0).unwrap();
        let normals = d.normals();
        let max_mag = normals
            .iter()
            .map(|n| n.euclidean_norm())
            .fold(0.0f64, f64::max);
        assert!(crate::mink::normal_zero_sum_residual(&normals) <= 1e-12 * max_mag);
    }
}
