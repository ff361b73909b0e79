//! Shape degrees of freedom by numerical rank.
//!
//! The shape manifold of a family is the kernel of its zero-volume
//! constraints on the defining coordinates, modulo the ten Poincare
//! generators. Stacking the finite-difference constraint Jacobian on top of
//! the isometry directions and counting independent rows gives
//! `dof = params - rank`: 5 for simplices (20 - 5 - 10) and 6 for
//! parallelotopes (20 - 4 - 10).

use nalgebra::DMatrix;

use crate::error::{GeometryError, Result};
use crate::mink::{covector_inner, epsilon_contract, FourVector};

use super::{Family, NullFaced4Polytope};

/// The six Lorentz generators (three boosts, three rotations) acting on
/// (t, x, y, z).
fn lorentz_generators() -> [[[f64; 4]; 4]; 6] {
    let mut gens = [[[0.0; 4]; 4]; 6];
    for axis in 0..3 {
        gens[axis][0][axis + 1] = 1.0;
        gens[axis][axis + 1][0] = 1.0;
    }
    for (k, (i, j)) in [(1usize, 2usize), (2, 3), (3, 1)].iter().enumerate() {
        gens[3 + k][*i][*j] = -1.0;
        gens[3 + k][*j][*i] = 1.0;
    }
    gens
}

fn apply_generator(m: &[[f64; 4]; 4], v: &FourVector) -> FourVector {
    let a = v.as_array();
    let mut out = [0.0; 4];
    for (i, row) in m.iter().enumerate() {
        out[i] = row[0] * a[0] + row[1] * a[1] + row[2] * a[2] + row[3] * a[3];
    }
    FourVector::from_array(out)
}

/// Defining coordinates of a polytope: five vertices for a simplex, the
/// origin plus the four generators for a parallelotope. Both are 20 numbers
/// and every vertex is an affine function of them.
fn parameters(p: &NullFaced4Polytope) -> Result<Vec<FourVector>> {
    match p.family {
        Family::Simplex => Ok(p.vertices.clone()),
        Family::Parallelotope => {
            let origin = p.vertices[0];
            let mut params = vec![origin];
            for axis in 0..4 {
                params.push(p.vertices[1 << axis] - origin);
            }
            Ok(params)
        }
        Family::Diamond => Err(GeometryError::FamilyUnsupported(Family::Diamond)),
    }
}

/// Zero-volume constraint values, one per independent hyperface.
fn constraints(family: Family, params: &[FourVector], scale: f64) -> Vec<f64> {
    let nullity = |a: &FourVector, b: &FourVector, c: &FourVector| {
        let w = epsilon_contract(a, b, c);
        covector_inner(&w, &w) / scale.powi(6)
    };
    match family {
        Family::Simplex => (0..5)
            .map(|omit| {
                let f: Vec<usize> = (0..5).filter(|&k| k != omit).collect();
                nullity(
                    &(params[f[1]] - params[f[0]]),
                    &(params[f[2]] - params[f[0]]),
                    &(params[f[3]] - params[f[0]]),
                )
            })
            .collect(),
        Family::Parallelotope => (0..4)
            .map(|i| {
                let f: Vec<usize> = (1..5).filter(|&k| k != i + 1).collect();
                nullity(&params[f[0]], &params[f[1]], &params[f[2]])
            })
            .collect(),
        Family::Diamond => unreachable!(),
    }
}

fn rank_at_step(p: &NullFaced4Polytope, params: &[FourVector], h: f64) -> usize {
    let family = p.family;
    let scale = p.diameter();
    let n_params = params.len() * 4;
    let n_constraints = match family {
        Family::Simplex => 5,
        _ => 4,
    };

    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n_constraints + 10);
    for row in 0..n_constraints {
        let mut grad = vec![0.0; n_params];
        for col in 0..n_params {
            let (vi, comp) = (col / 4, col % 4);
            let mut plus = params.to_vec();
            let mut minus = params.to_vec();
            let mut ap = plus[vi].as_array();
            let mut am = minus[vi].as_array();
            ap[comp] += h;
            am[comp] -= h;
            plus[vi] = FourVector::from_array(ap);
            minus[vi] = FourVector::from_array(am);
            let fp = constraints(family, &plus, scale);
            let fm = constraints(family, &minus, scale);
            grad[col] = (fp[row] - fm[row]) / (2.0 * h);
        }
        rows.push(grad);
    }

    // translations move the points for a simplex, only the origin for
    // generator coordinates
    let moving: Vec<usize> = match family {
        Family::Simplex => (0..params.len()).collect(),
        _ => vec![0],
    };
    for comp in 0..4 {
        let mut row = vec![0.0; n_params];
        for &vi in &moving {
            row[vi * 4 + comp] = 1.0;
        }
        rows.push(row);
    }
    for gen in lorentz_generators() {
        let mut row = vec![0.0; n_params];
        for (vi, v) in params.iter().enumerate() {
            let dv = apply_generator(&gen, v).as_array();
            for comp in 0..4 {
                row[vi * 4 + comp] = dv[comp];
            }
        }
        rows.push(row);
    }

    for row in rows.iter_mut() {
        let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 0.0 {
            for v in row.iter_mut() {
                *v /= norm;
            }
        }
    }
    let m = DMatrix::from_fn(rows.len(), n_params, |r, c| rows[r][c]);
    let singular = m.svd(false, false).singular_values;
    let max = singular.iter().fold(0.0f64, |a, b| a.max(*b));
    singular.iter().filter(|s| **s > 1e-7 * max).count()
}

/// Degrees of freedom of the polytope's shape manifold modulo isometries:
/// 5 for simplices, 6 for parallelotopes, stable under a tenfold change of
/// the finite-difference step.
pub fn dof_rank(p: &NullFaced4Polytope) -> Result<usize> {
    let params = parameters(p)?;
    let h = 1e-5 * p.diameter();
    let rank1 = rank_at_step(p, &params, h);
    let rank2 = rank_at_step(p, &params, 10.0 * h);
    if rank1 != rank2 {
        return Err(GeometryError::RankUnstable);
    }
    Ok(params.len() * 4 - rank1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytopes::{regular_diamond, regular_parallelotope, regular_simplex};

    #[test]
    fn regular_shapes() {
        assert_eq!(dof_rank(&regular_simplex(1.0).unwrap()).unwrap(), 5);
        assert_eq!(dof_rank(&regular_parallelotope(1.0).unwrap()).unwrap(), 6);
        assert_eq!(
            dof_rank(&regular_diamond(1.0).unwrap()),
            Err(GeometryError::FamilyUnsupported(Family::Diamond))
        );
    }
}
