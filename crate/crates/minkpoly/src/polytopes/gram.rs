//! Gram-matrix volume and face-area identities.
//!
//! For four independent hyperface normals, `L[i][j] = kappa * <l_i, l_j>`
//! with `kappa = (3!)^2` for the simplex and `kappa = 1` for the
//! parallelotope. The diagonal vanishes (null normals), past-future entries
//! are positive and past-past / future-future entries negative. Volume and
//! face areas then follow from `det L`:
//!
//! * simplex: `Omega = |det L|^(1/6) / 4!`, `s_ij = |L_ij| / (2 |det L|^(1/6))`
//! * parallelotope: `Omega = |det L|^(1/6)`, `s_ij = |L_ij| / |det L|^(1/6)`
//!
//! and directly from signed face areas: `Omega = |det S|^(1/2) / 6` for the
//! simplex, `|det S|^(1/2)` for the parallelotope.

use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::mink::covector_inner;

use super::{Family, NullFaced4Polytope};

/// Scalar products of four hyperface normals, scaled by the family factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramMatrix {
    pub entries: [[f64; 4]; 4],
    pub basis: [usize; 4],
    pub family: Family,
}

/// Signed areas of the six faces spanned by a hyperface basis, arranged as
/// a symmetric matrix with zero diagonal; signs follow the Gram matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AreaMatrix {
    pub entries: [[f64; 4]; 4],
    pub basis: [usize; 4],
    pub family: Family,
}

fn family_kappa(family: Family) -> Result<f64> {
    match family {
        Family::Simplex => Ok(36.0),
        Family::Parallelotope => Ok(1.0),
        Family::Diamond => Err(GeometryError::FamilyUnsupported(Family::Diamond)),
    }
}

fn det4(entries: &[[f64; 4]; 4]) -> f64 {
    Matrix4::from_fn(|i, j| entries[i][j]).determinant()
}

fn max_abs_offdiag(entries: &[[f64; 4]; 4]) -> f64 {
    let mut m = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                m = m.max(entries[i][j].abs());
            }
        }
    }
    m
}

/// Gram matrix of four hyperface normals. For parallelotopes the basis must
/// pick one hyperface per opposing pair (for instance the four past ones).
pub fn gram_matrix(p: &NullFaced4Polytope, basis: [usize; 4]) -> Result<GramMatrix> {
    let kappa = family_kappa(p.family)?;
    let normals: Vec<_> = basis.iter().map(|&k| p.hyperfaces[k].normal).collect();
    let m = Matrix4::from_fn(|i, j| normals[i].as_array()[j]);
    let scale: f64 = normals.iter().map(|n| n.euclidean_norm()).product();
    if m.determinant().abs() <= p.tol.rel_eps * scale {
        return Err(GeometryError::DependentBasis);
    }
    let mut entries = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            entries[i][j] = kappa * covector_inner(&normals[i], &normals[j]);
        }
    }
    Ok(GramMatrix {
        entries,
        basis,
        family: p.family,
    })
}

/// Spacetime volume from the Gram determinant.
pub fn volume_from_gram(g: &GramMatrix) -> Result<f64> {
    let det = det4(&g.entries);
    let scale = max_abs_offdiag(&g.entries);
    if det.abs() <= (1e-12 * scale).powi(4) {
        return Err(GeometryError::SingularGram);
    }
    let root = det.abs().powf(1.0 / 6.0);
    Ok(match g.family {
        Family::Simplex => root / 24.0,
        _ => root,
    })
}

/// Face areas of the basis pairs, with signs copied from the Gram matrix.
pub fn face_areas_from_gram(g: &GramMatrix) -> Result<AreaMatrix> {
    let det = det4(&g.entries);
    let scale = max_abs_offdiag(&g.entries);
    if det.abs() <= (1e-12 * scale).powi(4) {
        return Err(GeometryError::SingularGram);
    }
    let root = det.abs().powf(1.0 / 6.0);
    let denom = match g.family {
        Family::Simplex => 2.0 * root,
        _ => root,
    };
    let mut entries = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                entries[i][j] = g.entries[i][j] / denom;
            }
        }
    }
    Ok(AreaMatrix {
        entries,
        basis: g.basis,
        family: g.family,
    })
}

/// Spacetime volume directly from the signed face-area matrix.
pub fn volume_from_area_matrix(s: &AreaMatrix) -> Result<f64> {
    let det = det4(&s.entries);
    let scale = max_abs_offdiag(&s.entries);
    if det.abs() <= (1e-12 * scale).powi(4) {
        return Err(GeometryError::SingularAreaMatrix);
    }
    let root = det.abs().sqrt();
    Ok(match s.family {
        Family::Simplex => root / 6.0,
        _ => root,
    })
}

impl GramMatrix {
    /// Largest |diagonal| relative to the largest off-diagonal entry.
    pub fn diagonal_residual(&self) -> f64 {
        let m = max_abs_offdiag(&self.entries).max(f64::MIN_POSITIVE);
        (0..4)
            .map(|i| self.entries[i][i].abs())
            .fold(0.0f64, f64::max)
            / m
    }

    /// Check the sign pattern: past-future entries positive, same-side
    /// entries negative. Returns the number of violations.
    pub fn sign_violations(&self, p: &NullFaced4Polytope) -> usize {
        let mut bad = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                let same = p.hyperfaces[self.basis[i]].side == p.hyperfaces[self.basis[j]].side;
                let entry = self.entries[i][j];
                let ok = if same { entry < 0.0 } else { entry > 0.0 };
                if !ok {
                    bad += 1;
                }
            }
        }
        bad
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytopes::{hull_volume, regular_parallelotope, regular_simplex};
    use approx::assert_relative_eq;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    #[test]
    fn regular_simplex_gram_entries() {
        let s = regular_simplex(1.0).unwrap();
        // hyperfaces 3 and 4 are past, 0..2 future
        let g = gram_matrix(&s, [3, 4, 2, 0]).unwrap();
        assert_relative_eq!(g.entries[0][1], -216.0, max_relative = 1e-10);
        assert_relative_eq!(g.entries[0][2], 72.0, max_relative = 1e-10);
        assert_relative_eq!(g.entries[2][3], -72.0, max_relative = 1e-10);
        assert!(g.diagonal_residual() <= 1e-12);
        assert_eq!(g.sign_violations(&s), 0);
    }

    #[test]
    fn regular_simplex_three_volume_routes() {
        let s = regular_simplex(1.0).unwrap();
        let g = gram_matrix(&s, [3, 4, 2, 0]).unwrap();
        let v_gram = volume_from_gram(&g).unwrap();
        assert_relative_eq!(v_gram, SQRT3 / 2.0, max_relative = 1e-12);
        let areas = face_areas_from_gram(&g).unwrap();
        let v_area = volume_from_area_matrix(&areas).unwrap();
        assert_relative_eq!(v_area, SQRT3 / 2.0, max_relative = 1e-12);
        assert_relative_eq!(v_gram, hull_volume(&s), max_relative = 1e-12);
    }

    #[test]
    fn simplex_areas_match_direct_computation() {
        let s = regular_simplex(1.0).unwrap();
        let basis = [3, 4, 2, 0];
        let g = gram_matrix(&s, basis).unwrap();
        let areas = face_areas_from_gram(&g).unwrap();
        for i in 0..4 {
            for j in i + 1..4 {
                let face = s.face_between(basis[i], basis[j]).unwrap();
                assert_relative_eq!(
                    areas.entries[i][j].abs(),
                    s.face_area_direct(face),
                    max_relative = 1e-10
                );
            }
        }
        // the past-past pair bounds the big equatorial triangle
        assert_relative_eq!(areas.entries[0][1], -3.0 * SQRT3, max_relative = 1e-10);
    }

    #[test]
    fn regular_parallelotope_gram() {
        let p = regular_parallelotope(1.0).unwrap();
        let past: Vec<usize> = (0..8)
            .filter(|&k| p.hyperfaces[k].side == crate::polyhedra::TimeSide::Past)
            .collect();
        let g = gram_matrix(&p, [past[0], past[1], past[2], past[3]]).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_relative_eq!(g.entries[i][j], -9.0, max_relative = 1e-10);
                }
            }
        }
        let v = volume_from_gram(&g).unwrap();
        assert_relative_eq!(v, 3.0 * SQRT3, max_relative = 1e-12);
        let areas = face_areas_from_gram(&g).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_relative_eq!(areas.entries[i][j], -SQRT3, max_relative = 1e-10);
                }
            }
        }
        assert_relative_eq!(
            volume_from_area_matrix(&areas).unwrap(),
            3.0 * SQRT3,
            max_relative = 1e-12
        );
        // dropping the signs leaves the volume unchanged
        let mut unsigned = areas.clone();
        for i in 0..4 {
            for j in 0..4 {
                unsigned.entries[i][j] = unsigned.entries[i][j].abs();
            }
        }
        assert_relative_eq!(
            volume_from_area_matrix(&unsigned).unwrap(),
            3.0 * SQRT3,
            max_relative = 1e-12
        );
    }

    #[test]
    fn opposing_pair_is_dependent() {
        let p = regular_parallelotope(1.0).unwrap();
        // hyperfaces k and k+4 are an opposing pair with antiparallel normals
        assert_eq!(
            gram_matrix(&p, [0, 4, 1, 2]),
            Err(GeometryError::DependentBasis)
        );
    }

    #[test]
    fn diamond_is_unsupported() {
        let d = crate::polytopes::regular_diamond(1.0).unwrap();
        assert_eq!(
            gram_matrix(&d, [0, 1, 2, 3]),
            Err(GeometryError::FamilyUnsupported(Family::Diamond))
        );
    }
}
