//! Null-faced 4-parallelotopes and the doubly-null uniqueness probe.
//!
//! A parallelotope is spanned by four generators from an origin vertex.
//! Vertices are indexed by a 4-bit corner word (bit i set = the future side
//! of hyperface pair i) and labeled by the matching p/f 4-tuple.

use nalgebra::{DMatrix, DVector, Matrix4};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{GeometryError, Result};
use crate::mink::{causal_class, CausalClass, FourVector, Tolerance};

use super::{assemble, Family, NullFaced4Polytope};

/// Corner word -> vertex position.
fn corner(origin: &FourVector, gens: &[FourVector; 4], word: usize) -> FourVector {
    let mut v = *origin;
    for (i, g) in gens.iter().enumerate() {
        if word & (1 << i) != 0 {
            v = v + *g;
        }
    }
    v
}

fn corner_label(word: usize) -> String {
    (0..4)
        .map(|i| if word & (1 << i) != 0 { 'f' } else { 'p' })
        .collect()
}

/// Build a null-faced parallelotope from four spacelike, linearly
/// independent generators, each triple of which spans a null hyperplane.
///
/// Hyperfaces are ordered as the four sides through the origin (pair index
/// 0..3) followed by their opposites (4..7).
pub fn parallelotope_from_generators(
    origin: FourVector,
    gens: [FourVector; 4],
    tol: &Tolerance,
) -> Result<NullFaced4Polytope> {
    if !origin.is_finite() || gens.iter().any(|g| !g.is_finite()) {
        return Err(GeometryError::NonFinite);
    }
    for (i, g) in gens.iter().enumerate() {
        if causal_class(g, tol) != CausalClass::Spacelike {
            return Err(GeometryError::NonSpacelikeGenerator(i));
        }
    }
    let m = Matrix4::from_fn(|r, c| gens[c].as_array()[r]);
    let scale: f64 = gens.iter().map(FourVector::euclidean_norm).product();
    if m.determinant().abs() <= tol.rel_eps * scale {
        return Err(GeometryError::DependentGenerators);
    }
    for i in 0..4 {
        let free: Vec<usize> = (0..4).filter(|&j| j != i).collect();
        let w = crate::mink::epsilon_contract(&gens[free[0]], &gens[free[1]], &gens[free[2]]);
        if causal_class(&w.raise(), tol) != CausalClass::Null {
            return Err(GeometryError::NonNullHyperface(i));
        }
    }

    let vertices: Vec<FourVector> = (0..16).map(|w| corner(&origin, &gens, w)).collect();
    let labels: Vec<String> = (0..16).map(corner_label).collect();

    let mut hyperface_ids = Vec::with_capacity(8);
    for side in 0..2 {
        for i in 0..4 {
            let free: Vec<usize> = (0..4).filter(|&j| j != i).collect();
            let ids: Vec<usize> = (0..8)
                .map(|c| {
                    let mut word = side << i;
                    for (k, &axis) in free.iter().enumerate() {
                        word |= ((c >> k) & 1) << axis;
                    }
                    word
                })
                .collect();
            hyperface_ids.push(ids);
        }
    }

    let mut face_ids = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let free: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
            for bi in 0..2usize {
                for bj in 0..2usize {
                    let ids: Vec<usize> = (0..4)
                        .map(|c| {
                            (bi << i)
                                | (bj << j)
                                | ((c & 1) << free[0])
                                | (((c >> 1) & 1) << free[1])
                        })
                        .collect();
                    let ha = if bi == 0 { i } else { 4 + i };
                    let hb = if bj == 0 { j } else { 4 + j };
                    face_ids.push((ids, (ha, hb)));
                }
            }
        }
    }

    let mut edge_ids = Vec::new();
    for axis in 0..4 {
        for word in 0..16usize {
            if word & (1 << axis) == 0 {
                edge_ids.push((word, word | (1 << axis)));
            }
        }
    }

    assemble(
        Family::Parallelotope,
        labels,
        vertices,
        hyperface_ids,
        face_ids,
        edge_ids,
        tol,
        GeometryError::NonNullHyperface,
    )
}

/// Generators of the regular doubly-null parallelotope at the given scale.
pub(crate) fn regular_generators(scale: f64) -> [FourVector; 4] {
    let h = scale / 2.0;
    let s = 3.0f64.sqrt() * scale / 2.0;
    [
        FourVector::new(h, s, s, s),
        FourVector::new(h, s, -s, -s),
        FourVector::new(h, -s, s, -s),
        FourVector::new(h, -s, -s, s),
    ]
}

/// The unique (up to scale) parallelotope whose hyperfaces are all
/// doubly-null parallelepipeds: all 32 edges congruent with length
/// sqrt(2)*a, all 24 faces rhombi of area sqrt(3)*a^2, volume 3*sqrt(3)*a^4.
pub fn regular_parallelotope(scale: f64) -> Result<NullFaced4Polytope> {
    if !(scale > 0.0) {
        return Err(GeometryError::NonPositiveScale);
    }
    let origin = FourVector::new(-scale, 0.0, 0.0, 0.0);
    parallelotope_from_generators(origin, regular_generators(scale), &Tolerance::default())
}

/// Outcome of the doubly-null projection probe.
#[derive(Debug, Clone)]
pub struct UniquenessReport {
    pub trials: usize,
    pub converged: usize,
    pub non_convergence: Vec<usize>,
    /// Relative edge-length spread of each converged solution.
    pub spreads: Vec<f64>,
    pub max_spread: f64,
}

/// Transverse spacelike frame of an almost-null direction, following the
/// same seed-axis rule as the hyperplane frame.
fn transverse_frame(dir: &FourVector) -> (FourVector, FourVector) {
    let sp = dir.spatial();
    let n = (sp[0] * sp[0] + sp[1] * sp[1] + sp[2] * sp[2]).sqrt();
    let s = [sp[0] / n, sp[1] / n, sp[2] / n];
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
    let u2 = [
        s[1] * u1[2] - s[2] * u1[1],
        s[2] * u1[0] - s[0] * u1[2],
        s[0] * u1[1] - s[1] * u1[0],
    ];
    (
        FourVector::new(0.0, u1[0], u1[1], u1[2]),
        FourVector::new(0.0, u2[0], u2[1], u2[2]),
    )
}

/// Residuals of the constraint system on the generators: one nullity value
/// per hyperface pair, plus two quotient components of the hyperface
/// diagonal per pair required doubly-null.
fn constraint_residuals(gens: &[FourVector; 4], doubly_null_pairs: &[usize]) -> Vec<f64> {
    let scale: f64 = gens
        .iter()
        .map(FourVector::euclidean_norm)
        .fold(0.0f64, f64::max)
        .max(1e-30);
    let mut r = Vec::with_capacity(4 + 2 * doubly_null_pairs.len());
    let mut normals = [crate::mink::FourCovector::new(0.0, 0.0, 0.0, 0.0); 4];
    for i in 0..4 {
        let free: Vec<usize> = (0..4).filter(|&j| j != i).collect();
        let w = crate::mink::epsilon_contract(&gens[free[0]], &gens[free[1]], &gens[free[2]]);
        normals[i] = w;
        r.push(crate::mink::covector_inner(&w, &w) / scale.powi(6));
    }
    for &i in doubly_null_pairs {
        let free: Vec<usize> = (0..4).filter(|&j| j != i).collect();
        let diag = gens[free[0]] + gens[free[1]] + gens[free[2]];
        let mut ray = normals[i].raise();
        if ray.t < 0.0 {
            ray = -ray;
        }
        let (e1, e2) = transverse_frame(&ray);
        r.push(crate::mink::minkowski_dot(&diag, &e1) / scale);
        r.push(crate::mink::minkowski_dot(&diag, &e2) / scale);
    }
    r
}

/// Gauss-Newton projection of a generator set onto the constraint manifold.
pub(crate) fn project_generators(
    mut gens: [FourVector; 4],
    doubly_null_pairs: &[usize],
) -> Option<[FourVector; 4]> {
    let n_res = 4 + 2 * doubly_null_pairs.len();
    for _ in 0..80 {
        let r = constraint_residuals(&gens, doubly_null_pairs);
        let worst = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if worst <= 1e-13 {
            return Some(gens);
        }
        let scale = gens
            .iter()
            .map(FourVector::euclidean_norm)
            .fold(0.0f64, f64::max);
        let h = 1e-7 * scale;
        let mut jac = DMatrix::zeros(n_res, 16);
        for col in 0..16 {
            let (gi, comp) = (col / 4, col % 4);
            let mut plus = gens;
            let mut minus = gens;
            let mut ap = plus[gi].as_array();
            let mut am = minus[gi].as_array();
            ap[comp] += h;
            am[comp] -= h;
            plus[gi] = FourVector::from_array(ap);
            minus[gi] = FourVector::from_array(am);
            let rp = constraint_residuals(&plus, doubly_null_pairs);
            let rm = constraint_residuals(&minus, doubly_null_pairs);
            for row in 0..n_res {
                jac[(row, col)] = (rp[row] - rm[row]) / (2.0 * h);
            }
        }
        let rhs = DVector::from_iterator(n_res, r.iter().map(|v| -v));
        let svd = jac.svd(true, true);
        let delta = svd.solve(&rhs, 1e-12).ok()?;
        for gi in 0..4 {
            let mut a = gens[gi].as_array();
            for comp in 0..4 {
                a[comp] += delta[gi * 4 + comp];
            }
            gens[gi] = FourVector::from_array(a);
        }
        if !gens.iter().all(FourVector::is_finite) {
            return None;
        }
    }
    let r = constraint_residuals(&gens, doubly_null_pairs);
    if r.iter().fold(0.0f64, |m, v| m.max(v.abs())) <= 1e-11 {
        Some(gens)
    } else {
        None
    }
}

fn edge_spread(gens: &[FourVector; 4]) -> f64 {
    let lengths: Vec<f64> = gens.iter().map(|g| g.norm_sq().sqrt()).collect();
    let max = lengths.iter().fold(f64::MIN, |m, v| m.max(*v));
    let min = lengths.iter().fold(f64::MAX, |m, v| m.min(*v));
    (max - min) / max
}

/// Project random starting parallelotopes onto the constraint set that a
/// chosen subset of opposing hyperface pairs be doubly-null (plus the four
/// null-hyperface constraints), and report the edge-length spread of every
/// converged solution. With all four pairs constrained, every solution
/// collapses onto the regular shape up to isometry and scale; the
/// edge-sharing web in fact closes with any three pairs, and unequal-edge
/// solutions only survive when two or fewer pairs are constrained.
pub fn probe_doubly_null_constraints(
    trials: usize,
    seed: u64,
    doubly_null_pairs: &[usize],
) -> UniquenessReport {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, 0.05).unwrap();
    let mut report = UniquenessReport {
        trials,
        converged: 0,
        non_convergence: Vec::new(),
        spreads: Vec::new(),
        max_spread: 0.0,
    };
    for trial in 0..trials {
        let mut gens = regular_generators(1.0);
        for g in gens.iter_mut() {
            let mut a = g.as_array();
            for c in a.iter_mut() {
                *c += noise.sample(&mut rng);
            }
            *g = FourVector::from_array(a);
        }
        match project_generators(gens, doubly_null_pairs) {
            Some(solution) => {
                report.converged += 1;
                let spread = edge_spread(&solution);
                report.max_spread = report.max_spread.max(spread);
                report.spreads.push(spread);
            }
            None => report.non_convergence.push(trial),
        }
    }
    report
}

/// The all-pairs probe: every hyperface required doubly-null.
pub fn doubly_null_uniqueness_probe(trials: usize, seed: u64) -> UniquenessReport {
    probe_doubly_null_constraints(trials, seed, &[0, 1, 2, 3])
}
