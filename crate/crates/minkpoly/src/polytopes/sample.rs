//! Seeded random populations of valid polytopes for property checks.

use rand::Rng;
use rand_distr::{Distribution, Normal, UnitSphere};

use crate::hyperplane::NullHyperplane;
use crate::mink::{FourCovector, FourVector, Lorentz, Tolerance};

use super::{
    hull_volume, parallelotope_from_generators, simplex_from_hyperplanes, tetrahedral_diamond,
    NullFaced4Polytope,
};

/// A random proper orthochronous Lorentz transformation: a rotation followed
/// by a boost of rapidity up to `max_rapidity`.
pub fn random_lorentz<R: Rng + ?Sized>(rng: &mut R, max_rapidity: f64) -> Lorentz {
    let axis: [f64; 3] = UnitSphere.sample(rng);
    let dir: [f64; 3] = UnitSphere.sample(rng);
    let angle = rng.random_range(0.0..std::f64::consts::TAU);
    let rapidity = rng.random_range(0.0..max_rapidity);
    Lorentz::boost(rapidity, dir).compose(&Lorentz::rotation(angle, axis))
}

/// A future-pointing null covector with energy in [0.5, 2).
pub fn random_null_covector<R: Rng + ?Sized>(rng: &mut R) -> FourCovector {
    let dir: [f64; 3] = UnitSphere.sample(rng);
    let e = rng.random_range(0.5..2.0);
    FourVector::new(e, e * dir[0], e * dir[1], e * dir[2]).lower()
}

/// Null hyperplane with ray direction (1, dir) and the given offset.
fn plane_from(dir: [f64; 3], offset: f64, tol: &Tolerance) -> NullHyperplane {
    // point with normal.pair(point) = offset; the normal is (-1, dir)
    let point = FourVector::new(
        -offset / 2.0,
        offset * dir[0] / 2.0,
        offset * dir[1] / 2.0,
        offset * dir[2] / 2.0,
    );
    NullHyperplane::through(&point, &FourVector::new(1.0, dir[0], dir[1], dir[2]), tol)
        .expect("unit-sphere direction is null")
}

/// Sample a valid null-faced 4-simplex: five null directions uniform on the
/// celestial sphere (pairwise at least 0.1 rad apart), offsets uniform in
/// [-1, 1], rejecting draws whose hull is too flat for well-conditioned
/// determinant chains.
pub fn sample_simplex<R: Rng + ?Sized>(rng: &mut R, tol: &Tolerance) -> NullFaced4Polytope {
    loop {
        let dirs: Vec<[f64; 3]> = (0..5).map(|_| UnitSphere.sample(rng)).collect();
        let mut separated = true;
        for i in 0..5 {
            for j in i + 1..5 {
                let dot: f64 = (0..3).map(|k| dirs[i][k] * dirs[j][k]).sum();
                if dot.clamp(-1.0, 1.0).acos() < 0.1 {
                    separated = false;
                }
            }
        }
        if !separated {
            continue;
        }
        let planes = [
            plane_from(dirs[0], rng.random_range(-1.0..1.0), tol),
            plane_from(dirs[1], rng.random_range(-1.0..1.0), tol),
            plane_from(dirs[2], rng.random_range(-1.0..1.0), tol),
            plane_from(dirs[3], rng.random_range(-1.0..1.0), tol),
            plane_from(dirs[4], rng.random_range(-1.0..1.0), tol),
        ];
        if let Ok(s) = simplex_from_hyperplanes(&planes, tol) {
            let diam = s.diameter();
            if diam > 0.0 && hull_volume(&s) / diam.powi(4) >= 1e-4 {
                return s;
            }
        }
    }
}

/// Sample a valid null-faced parallelotope by Newton projection of a
/// perturbed regular generator set onto the four null-hyperface constraints.
pub fn sample_parallelotope<R: Rng + ?Sized>(rng: &mut R, tol: &Tolerance) -> NullFaced4Polytope {
    let noise = Normal::new(0.0, 0.08).unwrap();
    loop {
        let mut gens = super::parallelotope::regular_generators(1.0);
        for g in gens.iter_mut() {
            let mut a = g.as_array();
            for c in a.iter_mut() {
                *c += noise.sample(rng);
            }
            *g = FourVector::from_array(a);
        }
        let Some(projected) = super::parallelotope::project_generators(gens, &[]) else {
            continue;
        };
        let origin = FourVector::new(rng.random_range(-1.0..1.0), 0.0, 0.0, 0.0);
        if let Ok(p) = parallelotope_from_generators(origin, projected, tol) {
            return p;
        }
    }
}

/// Sample a valid tetrahedral diamond: a random spacelike base tetrahedron,
/// boosted and translated into general position.
pub fn sample_diamond<R: Rng + ?Sized>(rng: &mut R, tol: &Tolerance) -> NullFaced4Polytope {
    let coord = Normal::new(0.0, 1.0).unwrap();
    loop {
        let pts: Vec<FourVector> = (0..4)
            .map(|_| FourVector::new(0.0, coord.sample(rng), coord.sample(rng), coord.sample(rng)))
            .collect();
        let m1 = pts[1] - pts[0];
        let m2 = pts[2] - pts[0];
        let m3 = pts[3] - pts[0];
        let vol = crate::mink::epsilon_contract(&m1, &m2, &m3)
            .raise()
            .euclidean_norm()
            / 6.0;
        let diam = pts
            .iter()
            .flat_map(|p| pts.iter().map(move |q| (*p - *q).euclidean_norm()))
            .fold(0.0f64, f64::max);
        if diam <= 0.0 || vol / diam.powi(3) < 0.02 {
            continue;
        }
        let l = random_lorentz(rng, 1.0);
        let shift = FourVector::new(
            coord.sample(rng),
            coord.sample(rng),
            coord.sample(rng),
            coord.sample(rng),
        );
        let base = [
            l.apply(&pts[0]) + shift,
            l.apply(&pts[1]) + shift,
            l.apply(&pts[2]) + shift,
            l.apply(&pts[3]) + shift,
        ];
        if let Ok(d) = tetrahedral_diamond(base, tol) {
            return d;
        }
    }
}
