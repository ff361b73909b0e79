//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use minkpoly::mink::{normal_zero_sum_residual, timelike_parallelogram_area_check, Tolerance};
use minkpoly::polytopes::{
    base_tetra_volume, causal_profile, dof_rank, doubly_null_uniqueness_probe,
    face_areas_from_gram, gram_matrix, hull_volume, insphere, probe_doubly_null_constraints,
    regular_diamond, regular_parallelotope, regular_simplex, sample,
    tessellation_obstruction_check, volume_from_area_matrix, volume_from_gram, Family,
    NullFaced4Polytope,
};
use minkpoly::report::Report;
use minkpoly::TimeSide;

const SQRT2: f64 = std::f64::consts::SQRT_2;
const SQRT3: f64 = 1.732_050_807_568_877_2;
const SQRT6: f64 = 2.449_489_742_783_178;

fn conclude(number: usize, name: &str, report: Report) {
    let ok = report.all_passed();
    println!(
        "ACCEPTANCE {number} {name}: {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(
        ok,
        "criterion {number} ({name}) failed:\n{}",
        report.render_lines()
    );
}

/// Largest relative deviation of the values from the nearest of the targets,
/// plus a check that every target is hit at least once.
fn match_value_set(report: &mut Report, name: &str, values: &[f64], targets: &[f64], tol: f64) {
    let mut worst = 0.0f64;
    let mut hits = vec![0usize; targets.len()];
    for v in values {
        let (idx, dev) = targets
            .iter()
            .enumerate()
            .map(|(i, t)| (i, (v - t).abs() / t.abs()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        hits[idx] += 1;
        worst = worst.max(dev);
    }
    report.check_le(name, worst, tol);
    report.check_exact(
        &format!("{name}_all_targets_hit"),
        true,
        hits.iter().all(|h| *h > 0),
    );
}

fn past_basis(p: &NullFaced4Polytope) -> [usize; 4] {
    let past: Vec<usize> = (0..p.hyperfaces.len())
        .filter(|&k| p.hyperfaces[k].side == TimeSide::Past)
        .collect();
    [past[0], past[1], past[2], past[3]]
}

fn three_route_volumes(p: &NullFaced4Polytope, basis: [usize; 4]) -> (f64, f64, f64) {
    let g = gram_matrix(p, basis).unwrap();
    let v_gram = volume_from_gram(&g).unwrap();
    let areas = face_areas_from_gram(&g).unwrap();
    let v_area = volume_from_area_matrix(&areas).unwrap();
    (hull_volume(p), v_gram, v_area)
}

#[test]
fn criterion_01_regular_simplex() {
    let start = Instant::now();
    let mut report = Report::new();
    let s = regular_simplex(1.0).unwrap();
    let (hull, v_gram, v_area) = three_route_volumes(&s, [0, 1, 2, 3]);
    report.check_rel("volume_hull", SQRT3 / 2.0, hull, 1e-9);
    report.check_rel("volume_gram_det", SQRT3 / 2.0, v_gram, 1e-9);
    report.check_rel("volume_area_det", SQRT3 / 2.0, v_area, 1e-9);
    let areas: Vec<f64> = (0..s.faces.len()).map(|f| s.face_area_direct(f)).collect();
    match_value_set(
        &mut report,
        "face_areas",
        &areas,
        &[3.0 * SQRT3, SQRT3],
        1e-9,
    );
    match_value_set(
        &mut report,
        "edge_lengths",
        &s.edge_lengths(),
        &[2.0 * SQRT3, 2.0],
        1e-9,
    );
    report.check_le("runtime_seconds", start.elapsed().as_secs_f64(), 1.0);
    conclude(1, "regular 4-simplex metrics", report);
}

#[test]
fn criterion_02_regular_diamond() {
    let start = Instant::now();
    let mut report = Report::new();
    let d = regular_diamond(1.0).unwrap();
    let tol = Tolerance::default();
    let base = [d.vertices[0], d.vertices[1], d.vertices[2], d.vertices[3]];
    let (_, r) = insphere(&base, &tol).unwrap();
    report.check_rel("insphere_radius", 1.0, r, 1e-9);
    let v3 = base_tetra_volume(&base, &tol).unwrap();
    report.check_rel("volume_r_v_over_2", 4.0 * SQRT3, 0.5 * r * v3, 1e-9);
    report.check_rel("volume_hull", 4.0 * SQRT3, hull_volume(&d), 1e-9);
    match_value_set(
        &mut report,
        "edge_lengths",
        &d.edge_lengths(),
        &[2.0 * SQRT6, 2.0 * SQRT2],
        1e-9,
    );
    let areas: Vec<f64> = (0..d.faces.len()).map(|f| d.face_area_direct(f)).collect();
    match_value_set(
        &mut report,
        "face_areas",
        &areas,
        &[6.0 * SQRT3, 2.0 * SQRT3],
        1e-9,
    );
    report.check_le("runtime_seconds", start.elapsed().as_secs_f64(), 1.0);
    conclude(2, "regular tetrahedral diamond metrics", report);
}

#[test]
fn criterion_03_regular_parallelotope() {
    let mut report = Report::new();
    let p = regular_parallelotope(1.0).unwrap();
    let (hull, v_gram, v_area) = three_route_volumes(&p, past_basis(&p));
    report.check_rel("volume_hull", 3.0 * SQRT3, hull, 1e-9);
    report.check_rel("volume_gram_det", 3.0 * SQRT3, v_gram, 1e-9);
    report.check_rel("volume_area_det", 3.0 * SQRT3, v_area, 1e-9);
    report.check_exact("edge_count", 32, p.edges.len());
    match_value_set(
        &mut report,
        "edge_lengths",
        &p.edge_lengths(),
        &[SQRT2],
        1e-9,
    );
    report.check_exact("face_count", 24, p.faces.len());
    let areas: Vec<f64> = (0..p.faces.len()).map(|f| p.face_area_direct(f)).collect();
    match_value_set(&mut report, "face_areas", &areas, &[SQRT3], 1e-9);

    // causal levels: vertex time is t = -1 + (number of f's)/2
    let mut level_dev = 0.0f64;
    for (label, v) in p.labels.iter().zip(&p.vertices) {
        let nf = label.chars().filter(|c| *c == 'f').count() as f64;
        level_dev = level_dev.max((v.t - (-1.0 + nf / 2.0)).abs());
    }
    report.check_le("causal_level_times", level_dev, 1e-9);

    // the six 2f vertices form a regular octahedron with edge sqrt(6)
    let mid: Vec<_> = p
        .labels
        .iter()
        .zip(&p.vertices)
        .filter(|(l, _)| l.chars().filter(|c| *c == 'f').count() == 2)
        .map(|(_, v)| *v)
        .collect();
    report.check_exact("octahedron_vertex_count", 6, mid.len());
    let mut dists = Vec::new();
    for i in 0..mid.len() {
        for j in i + 1..mid.len() {
            dists.push((mid[j] - mid[i]).norm_sq().sqrt());
        }
    }
    match_value_set(
        &mut report,
        "octahedron_distances",
        &dists,
        &[SQRT6, 2.0 * SQRT3],
        1e-9,
    );
    conclude(3, "regular parallelotope metrics", report);
}

#[test]
fn criterion_04_population_identities() {
    let start = Instant::now();
    let mut report = Report::new();
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1_000);

    for family in [Family::Simplex, Family::Parallelotope] {
        let name = format!("{family:?}").to_lowercase();
        let mut worst_volume = 0.0f64;
        let mut worst_area = 0.0f64;
        let mut worst_area_balance = 0.0f64;
        let mut worst_zero_sum = 0.0f64;
        let mut sign_violations = 0usize;
        for _ in 0..1_000 {
            let p = match family {
                Family::Simplex => sample::sample_simplex(&mut rng, &tol),
                _ => sample::sample_parallelotope(&mut rng, &tol),
            };
            let basis = match family {
                Family::Simplex => [0, 1, 2, 3],
                _ => past_basis(&p),
            };
            let (hull, v_gram, v_area) = three_route_volumes(&p, basis);
            worst_volume = worst_volume
                .max((v_gram - hull).abs() / hull)
                .max((v_area - hull).abs() / hull);
            let g = gram_matrix(&p, basis).unwrap();
            sign_violations += g.sign_violations(&p);
            let areas = face_areas_from_gram(&g).unwrap();
            for i in 0..4 {
                for j in i + 1..4 {
                    let face = p.face_between(basis[i], basis[j]).unwrap();
                    let direct = p.face_area_direct(face);
                    worst_area =
                        worst_area.max((areas.entries[i][j].abs() - direct).abs() / direct);
                }
            }
            let normals = p.normals();
            let max_mag = normals
                .iter()
                .map(|n| n.euclidean_norm())
                .fold(0.0f64, f64::max);
            worst_zero_sum = worst_zero_sum.max(normal_zero_sum_residual(&normals) / max_mag);
            for k in 0..p.hyperfaces.len() {
                let (residual, total) = if p.hyperfaces[k].vertex_ids.len() == 4 {
                    let t = p.hyperface_tetrahedron(k).unwrap();
                    (t.signed_area_residual(), t.total_area())
                } else {
                    let h = p.hyperface_parallelepiped(k).unwrap();
                    (h.signed_area_residual(), h.total_area())
                };
                worst_area_balance = worst_area_balance.max(residual / total);
            }
        }
        report.check_le(&format!("{name}_volume_routes"), worst_volume, 1e-8);
        report.check_le(&format!("{name}_face_areas"), worst_area, 1e-8);
        report.check_le(
            &format!("{name}_signed_area_balance"),
            worst_area_balance,
            1e-10,
        );
        report.check_le(&format!("{name}_normal_zero_sum"), worst_zero_sum, 1e-10);
        report.check_exact(&format!("{name}_gram_sign_violations"), 0, sign_violations);
    }
    report.check_le("runtime_seconds", start.elapsed().as_secs_f64(), 60.0);
    conclude(4, "random-population identities", report);
}

#[test]
fn criterion_05_causal_combinatorics() {
    let mut report = Report::new();
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2_000);

    let expected = |family: Family| -> (Vec<(usize, usize)>, (usize, usize, usize)) {
        match family {
            Family::Simplex => (vec![(2, 3)], (1, 6, 3)),
            Family::Diamond => (vec![(4, 4)], (6, 4, 6)),
            Family::Parallelotope => (vec![(4, 4)], (6, 12, 6)),
        }
    };
    let edge_expect = |family: Family| -> Vec<((usize, usize), usize)> {
        match family {
            Family::Simplex => vec![((0, 3), 1), ((1, 2), 6), ((2, 1), 3)],
            Family::Diamond => vec![((0, 3), 4), ((2, 2), 6), ((3, 0), 4)],
            Family::Parallelotope => vec![((0, 3), 4), ((1, 2), 12), ((2, 1), 12), ((3, 0), 4)],
        }
    };
    let vertex_expect = |family: Family| -> Vec<((usize, usize), usize)> {
        match family {
            Family::Simplex => vec![((1, 3), 2), ((2, 2), 3)],
            Family::Diamond => vec![((0, 4), 1), ((3, 3), 4), ((4, 0), 1)],
            Family::Parallelotope => {
                vec![
                    ((0, 4), 1),
                    ((1, 3), 4),
                    ((2, 2), 6),
                    ((3, 1), 4),
                    ((4, 0), 1),
                ]
            }
        }
    };

    for family in [Family::Simplex, Family::Diamond, Family::Parallelotope] {
        let name = format!("{family:?}").to_lowercase();
        let mut mismatches = 0usize;
        let draws = 300;
        for _ in 0..draws {
            let p = match family {
                Family::Simplex => sample::sample_simplex(&mut rng, &tol),
                Family::Diamond => sample::sample_diamond(&mut rng, &tol),
                Family::Parallelotope => sample::sample_parallelotope(&mut rng, &tol),
            };
            let profile = causal_profile(&p);
            let (hf, faces) = expected(family);
            let edges: Vec<((usize, usize), usize)> = profile
                .edge_histogram
                .iter()
                .map(|(k, v)| (*k, *v))
                .collect();
            let verts: Vec<((usize, usize), usize)> = profile
                .vertex_histogram
                .iter()
                .map(|(k, v)| (*k, *v))
                .collect();
            let ok = hf.contains(&profile.hyperface_counts)
                && profile.face_counts == faces
                && edges == edge_expect(family)
                && verts == vertex_expect(family)
                && profile.simplex_incidence_ok.unwrap_or(true);
            if !ok {
                mismatches += 1;
            }
        }
        report.check_exact(
            &format!("{name}_profile_mismatches_of_{draws}"),
            0,
            mismatches,
        );
    }
    conclude(5, "causal combinatorics on random draws", report);
}

#[test]
fn criterion_06_tessellation_obstruction() {
    let mut report = Report::new();
    let s = regular_simplex(1.0).unwrap();
    let d = regular_diamond(1.0).unwrap();
    let p = regular_parallelotope(1.0).unwrap();
    report.check_exact(
        "simplex",
        "(6, 4, false)",
        format!("{:?}", tessellation_obstruction_check(&s)),
    );
    report.check_exact(
        "diamond",
        "(4, 12, false)",
        format!("{:?}", tessellation_obstruction_check(&d)),
    );
    report.check_exact(
        "parallelotope",
        "(12, 12, true)",
        format!("{:?}", tessellation_obstruction_check(&p)),
    );
    conclude(6, "tessellation obstruction counts", report);
}

#[test]
fn criterion_07_tiling_block() {
    let start = Instant::now();
    let mut report = Report::new();
    let block = minkpoly::tiling::generate_tiling([2, 2, 2, 2], 1.0).unwrap();
    let lightcross = minkpoly::tiling::verify_face_lightcross(&block);
    report.check_exact(
        "lightcross_leg_violations",
        0,
        lightcross.leg_violations.len(),
    );
    report.check_exact(
        "lightcross_dihedral_violations",
        0,
        lightcross.dihedral_violations.len(),
    );

    let lattice = minkpoly::tiling::extract_lightray_lattice(&block);
    let interior = lattice.interior_nodes();
    report.check_exact("interior_node_count", 1, interior.len());
    let degrees = lattice.degrees();
    let all_eight = interior.iter().all(|&n| degrees[n] == (4, 4));
    report.check_exact("interior_null_degree_4_plus_4", true, all_eight);
    report.check_le(
        "collinear_ray_pairs",
        lattice.collinearity_residual(&interior),
        1e-10,
    );
    let rays = minkpoly::tiling::tetrahedral_direction_check(&lattice);
    report.check_le(
        "cosine_offdiag_vs_minus_third",
        rays.max_offdiag_deviation,
        1e-9,
    );
    report.check_le("runtime_seconds", start.elapsed().as_secs_f64(), 5.0);
    conclude(7, "tiling block and lightray lattice", report);
}

#[test]
fn criterion_08_dof_ranks() {
    let mut report = Report::new();
    let tol = Tolerance::default();
    report.check_exact(
        "regular_simplex",
        5,
        dof_rank(&regular_simplex(1.0).unwrap()).unwrap(),
    );
    report.check_exact(
        "regular_parallelotope",
        6,
        dof_rank(&regular_parallelotope(1.0).unwrap()).unwrap(),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(3_000);
    let mut simplex_bad = 0usize;
    let mut para_bad = 0usize;
    for _ in 0..100 {
        if dof_rank(&sample::sample_simplex(&mut rng, &tol)) != Ok(5) {
            simplex_bad += 1;
        }
        if dof_rank(&sample::sample_parallelotope(&mut rng, &tol)) != Ok(6) {
            para_bad += 1;
        }
    }
    report.check_exact("random_simplex_rank_failures_of_100", 0, simplex_bad);
    report.check_exact("random_parallelotope_rank_failures_of_100", 0, para_bad);
    conclude(8, "shape degrees of freedom", report);
}

#[test]
fn criterion_09_doubly_null_uniqueness() {
    let mut report = Report::new();
    let probe = doubly_null_uniqueness_probe(100, 42);
    report.check_exact("non_convergent_trials", 0, probe.non_convergence.len());
    report.check_le("max_edge_spread", probe.max_spread, 1e-7);
    // negative control: relax the constraint set until solutions with
    // visibly unequal edges appear. Three constrained pairs still force
    // equality (the edge-sharing web closes already there), so the control
    // keeps two.
    let three = probe_doubly_null_constraints(100, 42, &[0, 1, 2]);
    report.check_le("three_pair_probe_still_collapses", three.max_spread, 1e-7);
    let control = probe_doubly_null_constraints(100, 42, &[0, 1]);
    let loose = control.spreads.iter().filter(|s| **s > 1e-3).count();
    report.check_exact("control_has_unequal_edge_solutions", true, loose >= 1);
    conclude(9, "doubly-null uniqueness probe", report);
}

#[test]
fn criterion_10_parallelogram_identity() {
    let mut report = Report::new();
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4_000);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let l1 = sample::random_null_covector(&mut rng);
        let l2 = sample::random_null_covector(&mut rng);
        let (area, dot) = timelike_parallelogram_area_check(&l1, &l2, &tol).unwrap();
        worst = worst.max((area - dot).abs() / dot.abs().max(f64::MIN_POSITIVE));
    }
    report.check_le("two_routes_relative_agreement", worst, 1e-10);
    conclude(10, "timelike parallelogram area identity", report);
}
