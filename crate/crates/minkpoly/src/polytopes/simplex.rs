//! Null-faced 4-simplices.

use nalgebra::{Matrix4, Vector4};

use crate::error::{GeometryError, Result};
use crate::hyperplane::NullHyperplane;
use crate::mink::{FourVector, Tolerance};

use super::{assemble, Family, NullFaced4Polytope};

/// Build a 4-simplex from five affinely independent vertices whose five
/// tetrahedral hyperfaces all span null hyperplanes. Hyperface `k` omits
/// vertex `k`.
pub fn simplex_from_vertices(
    labels: [&str; 5],
    vertices: [FourVector; 5],
    tol: &Tolerance,
) -> Result<NullFaced4Polytope> {
    let m = Matrix4::from_columns(&[
        to_na(&(vertices[1] - vertices[0])),
        to_na(&(vertices[2] - vertices[0])),
        to_na(&(vertices[3] - vertices[0])),
        to_na(&(vertices[4] - vertices[0])),
    ]);
    let scale: f64 = (1..5)
        .map(|i| (vertices[i] - vertices[0]).euclidean_norm())
        .product();
    if m.determinant().abs() <= tol.rel_eps * scale {
        return Err(GeometryError::DegeneratePlanes);
    }

    let hyperface_ids: Vec<Vec<usize>> = (0..5)
        .map(|k| (0..5).filter(|&j| j != k).collect())
        .collect();
    let mut face_ids = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            // the face shared by hyperfaces a and b omits both vertices
            let ids: Vec<usize> = (0..5).filter(|&j| j != a && j != b).collect();
            face_ids.push((ids, (a, b)));
        }
    }
    let mut edge_ids = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            edge_ids.push((a, b));
        }
    }

    assemble(
        Family::Simplex,
        labels.iter().map(|s| s.to_string()).collect(),
        vertices.to_vec(),
        hyperface_ids,
        face_ids,
        edge_ids,
        tol,
        |_| GeometryError::NonSpacelikeFace,
    )
}

/// Intersect five null hyperplanes in general position into a 4-simplex:
/// vertex `k` is the meet of all planes except plane `k`, so plane `k`
/// carries the hyperface omitting that vertex.
pub fn simplex_from_hyperplanes(
    planes: &[NullHyperplane; 5],
    tol: &Tolerance,
) -> Result<NullFaced4Polytope> {
    let mut vertices = [FourVector::zero(); 5];
    for (k, vertex) in vertices.iter_mut().enumerate() {
        let rows: Vec<usize> = (0..5).filter(|&i| i != k).collect();
        let mut m = Matrix4::zeros();
        let mut rhs = Vector4::zeros();
        for (r, &i) in rows.iter().enumerate() {
            let n = planes[i].normal.as_array();
            for c in 0..4 {
                m[(r, c)] = n[c];
            }
            rhs[r] = planes[i].offset;
        }
        let row_scale: f64 = rows
            .iter()
            .map(|&i| planes[i].normal.euclidean_norm())
            .product();
        if m.determinant().abs() <= tol.rel_eps * row_scale {
            return Err(GeometryError::DegeneratePlanes);
        }
        let x = m.lu().solve(&rhs).ok_or(GeometryError::DegeneratePlanes)?;
        *vertex = FourVector::new(x[0], x[1], x[2], x[3]);
    }
    simplex_from_vertices(["v0", "v1", "v2", "v3", "v4"], vertices, tol)
}

/// The maximally regular null-faced 4-simplex: three "equator" vertices and
/// two "pole" vertices, with exactly two edge lengths (2*sqrt(3)*a and 2a)
/// and two face areas (3*sqrt(3)*a^2 and sqrt(3)*a^2).
pub fn regular_simplex(scale: f64) -> Result<NullFaced4Polytope> {
    if !(scale > 0.0) {
        return Err(GeometryError::NonPositiveScale);
    }
    let a = scale;
    let s3 = 3.0f64.sqrt();
    let vertices = [
        FourVector::new(0.0, -s3 * a, -a, 0.0),
        FourVector::new(0.0, s3 * a, -a, 0.0),
        FourVector::new(0.0, 0.0, 2.0 * a, 0.0),
        FourVector::new(a, 0.0, 0.0, -a),
        FourVector::new(a, 0.0, 0.0, a),
    ];
    simplex_from_vertices(
        ["e1", "e2", "e3", "p1", "p2"],
        vertices,
        &Tolerance::default(),
    )
}

fn to_na(v: &FourVector) -> Vector4<f64> {
    Vector4::new(v.t, v.x, v.y, v.z)
}
