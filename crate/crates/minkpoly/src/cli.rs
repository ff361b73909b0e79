//! Command-line front end: build canonical shapes, run verification suites,
//! generate tilings and lattices, and export machine-readable reports.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on usage
//! errors, 3 on I/O failures.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::GeometryError;
use crate::mink::{timelike_parallelogram_area_check, FourVector, Tolerance};
use crate::polyhedra::{NullParallelepiped, NullTetrahedron, TetraKind};
use crate::polytopes::{
    self, causal_profile, dof_rank, face_areas_from_gram, gram_matrix, hull_volume,
    tessellation_obstruction_check, volume_from_area_matrix, volume_from_gram, Family,
    NullFaced4Polytope,
};
use crate::report::{
    report_csv, vertices_csv, BlockExport, Envelope, LatticeExport, PolyhedronExport, Report,
    ShapeExport,
};
use crate::tiling;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "minkpoly",
    version,
    about = "Null hyperplanes, null polyhedra and null-faced 4-polytopes in Minkowski spacetime"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a canonical shape and export its geometry and causal data
    Build {
        /// simplex | diamond | parallelotope | tetra13 | tetra22 | parallelepiped
        shape: String,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite for a family or a previously built file
    Verify {
        /// simplex | diamond | parallelotope, or a path to a build output
        target: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Override the relative tolerance used by the geometric predicates
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a tiling block, verify its lightcross and lattice structure
    Tile {
        /// Cells per generator direction, e.g. 2,2,2,2
        #[arg(long, default_value = "2,2,2,2")]
        extent: String,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        /// Also export the dual lightray lattice
        #[arg(long)]
        with_lattice: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A command failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub exit_code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            exit_code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Self {
        Self {
            exit_code: EXIT_IO,
            message: message.into(),
        }
    }
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.exit_code
        }
    }
}

fn execute(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Build {
            shape,
            scale,
            format,
            out,
        } => {
            let env = cmd_build(&shape, scale)?;
            write_output(&env, format, out.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            target,
            seed,
            trials,
            tol,
            format,
            out,
        } => {
            let (env, ok) = cmd_verify(&target, seed, trials, tol)?;
            write_output(&env, format, out.as_deref())?;
            Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Tile {
            extent,
            scale,
            with_lattice,
            format,
            out,
        } => {
            let extent = parse_extent(&extent)?;
            let (env, ok) = cmd_tile(extent, scale, with_lattice)?;
            write_output(&env, format, out.as_deref())?;
            Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
    }
}

fn parse_extent(s: &str) -> Result<[usize; 4], Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(Failure::usage(format!(
            "extent must be four comma-separated counts, got '{s}'"
        )));
    }
    let mut extent = [0usize; 4];
    for (i, p) in parts.iter().enumerate() {
        extent[i] = p
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("invalid extent component '{p}'")))?;
        if extent[i] == 0 {
            return Err(Failure::usage("extent components must be at least 1"));
        }
    }
    Ok(extent)
}

fn geometry_failure(err: GeometryError) -> Failure {
    Failure::usage(err.to_string())
}

/// Build one of the canonical shapes.
pub fn cmd_build(shape: &str, scale: f64) -> Result<Envelope, Failure> {
    let tol = Tolerance::default();
    let mut env = Envelope::new(format!("build {shape} --scale {scale}"));
    match shape {
        "simplex" => {
            let p = polytopes::regular_simplex(scale).map_err(geometry_failure)?;
            env.shape = Some(ShapeExport::from_polytope(&p));
        }
        "diamond" => {
            let p = polytopes::regular_diamond(scale).map_err(geometry_failure)?;
            env.shape = Some(ShapeExport::from_polytope(&p));
        }
        "parallelotope" => {
            let p = polytopes::regular_parallelotope(scale).map_err(geometry_failure)?;
            env.shape = Some(ShapeExport::from_polytope(&p));
        }
        "tetra13" | "tetra22" => {
            let host = default_host(&tol);
            let kind = if shape == "tetra13" {
                TetraKind::OneThree
            } else {
                TetraKind::TwoTwo
            };
            let t = NullTetrahedron::regular(kind, scale, &host).map_err(geometry_failure)?;
            env.polyhedron = Some(PolyhedronExport {
                kind: shape.to_string(),
                field_order: crate::report::field_order(),
                vertices: t.vertices.iter().map(FourVector::as_array).collect(),
                host_normal: t.host.normal.as_array(),
                host_offset: t.host.offset,
                planar_image: t.image.to_vec(),
                signed_face_areas: t.face_areas.to_vec(),
                edge_lengths: [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
                    .iter()
                    .map(|(i, j)| (t.vertices[*j] - t.vertices[*i]).norm_sq().sqrt())
                    .collect(),
                doubly_null: None,
            });
        }
        "parallelepiped" => {
            let host = default_host(&tol);
            let p = NullParallelepiped::regular_doubly_null(scale, &host, &tol)
                .map_err(geometry_failure)?;
            let vertices = p.vertices();
            env.polyhedron = Some(PolyhedronExport {
                kind: shape.to_string(),
                field_order: crate::report::field_order(),
                vertices: vertices.iter().map(FourVector::as_array).collect(),
                host_normal: p.host.normal.as_array(),
                host_offset: p.host.offset,
                planar_image: vertices.iter().map(|v| p.host.image_of(v)).collect(),
                signed_face_areas: p.face_areas.to_vec(),
                edge_lengths: p.edges.iter().map(|e| e.norm_sq().sqrt()).collect(),
                doubly_null: Some(p.is_doubly_null(&tol)),
            });
        }
        other => {
            return Err(Failure::usage(format!(
                "unknown shape '{other}': expected simplex, diamond, parallelotope, tetra13, tetra22 or parallelepiped"
            )));
        }
    }
    Ok(env)
}

fn default_host(tol: &Tolerance) -> crate::hyperplane::NullHyperplane {
    crate::hyperplane::NullHyperplane::through(
        &FourVector::zero(),
        &FourVector::new(1.0, 0.0, 0.0, 1.0),
        tol,
    )
    .expect("t = z is a null hyperplane")
}

fn parse_family(target: &str) -> Option<Family> {
    match target {
        "simplex" => Some(Family::Simplex),
        "diamond" => Some(Family::Diamond),
        "parallelotope" => Some(Family::Parallelotope),
        _ => None,
    }
}

/// Verify a family (regular representative plus random populations) or a
/// single shape loaded from a build file.
pub fn cmd_verify(
    target: &str,
    seed: u64,
    trials: usize,
    tol_override: Option<f64>,
) -> Result<(Envelope, bool), Failure> {
    let tol = match tol_override {
        Some(rel) => Tolerance::new(rel, (rel * 1e-3).min(1e-12))
            .map_err(|e| Failure::usage(e.to_string()))?,
        None => Tolerance::default(),
    };
    let mut env = Envelope::new(format!("verify {target} --seed {seed} --trials {trials}"));
    let mut report = Report::new();

    if let Some(family) = parse_family(target) {
        let shape = regular_shape(family).map_err(geometry_failure)?;
        shape_checks(&shape, &mut report);
        population_checks(family, seed, trials, &tol, &mut report);
        parallelogram_identity_check(seed, 10_000, &tol, &mut report);
        env.shape = Some(ShapeExport::from_polytope(&shape));
    } else {
        let text = std::fs::read_to_string(target)
            .map_err(|e| Failure::io(format!("cannot read '{target}': {e}")))?;
        let loaded: Envelope = serde_json::from_str(&text)
            .map_err(|e| Failure::io(format!("cannot parse '{target}': {e}")))?;
        let shape_export = loaded
            .shape
            .ok_or_else(|| Failure::io(format!("'{target}' contains no shape section")))?;
        // a file whose shape no longer satisfies its family's constraints is
        // a failed verification, not a usage error
        match rebuild_from_export(&shape_export, &tol) {
            Ok(shape) => {
                report.check_exact("shape_rebuilds", "ok", "ok");
                shape_checks(&shape, &mut report);
                env.shape = Some(ShapeExport::from_polytope(&shape));
            }
            Err(e) => {
                report.check_exact("shape_rebuilds", "ok", e.to_string());
                env.shape = Some(shape_export);
            }
        }
    }

    let ok = report.all_passed();
    env.report = Some(report);
    Ok((env, ok))
}

fn regular_shape(family: Family) -> Result<NullFaced4Polytope, GeometryError> {
    match family {
        Family::Simplex => polytopes::regular_simplex(1.0),
        Family::Diamond => polytopes::regular_diamond(1.0),
        Family::Parallelotope => polytopes::regular_parallelotope(1.0),
    }
}

/// Rebuild a polytope from its exported defining vertices.
pub fn rebuild_from_export(
    shape: &ShapeExport,
    tol: &Tolerance,
) -> Result<NullFaced4Polytope, GeometryError> {
    let v = |i: usize| FourVector::from_array(shape.vertices[i]);
    match shape.family {
        Family::Simplex => {
            let labels: Vec<&str> = shape.labels.iter().map(String::as_str).collect();
            polytopes::simplex_from_vertices(
                [labels[0], labels[1], labels[2], labels[3], labels[4]],
                [v(0), v(1), v(2), v(3), v(4)],
                tol,
            )
        }
        Family::Diamond => polytopes::tetrahedral_diamond([v(0), v(1), v(2), v(3)], tol),
        Family::Parallelotope => {
            let origin = v(0);
            polytopes::parallelotope_from_generators(
                origin,
                [v(1) - origin, v(2) - origin, v(4) - origin, v(8) - origin],
                tol,
            )
        }
    }
}

/// Expected causal profile per family, after time-reversal normalization.
fn expected_profile(family: Family) -> (&'static str, &'static str, &'static str, &'static str) {
    match family {
        Family::Simplex => (
            "(2, 3)",
            "(1, 6, 3)",
            "[2,1:3 1,2:6 0,3:1]",
            "[2,2:3 1,3:2]",
        ),
        Family::Diamond => (
            "(4, 4)",
            "(6, 4, 6)",
            "[3,0:4 2,2:6 0,3:4]",
            "[4,0:1 3,3:4 0,4:1]",
        ),
        Family::Parallelotope => (
            "(4, 4)",
            "(6, 12, 6)",
            "[3,0:4 2,1:12 1,2:12 0,3:4]",
            "[4,0:1 3,1:4 2,2:6 1,3:4 0,4:1]",
        ),
    }
}

fn histogram_string(h: &std::collections::BTreeMap<(usize, usize), usize>) -> String {
    let mut parts: Vec<String> = h.iter().map(|((p, f), c)| format!("{p},{f}:{c}")).collect();
    parts.reverse(); // list past-heavy signatures first
    format!("[{}]", parts.join(" "))
}

/// Checks that apply to one concrete polytope.
pub fn shape_checks(p: &NullFaced4Polytope, report: &mut Report) {
    let family_name = format!("{:?}", p.family).to_lowercase();
    let normals = p.normals();
    let max_mag = normals
        .iter()
        .map(|n| n.euclidean_norm())
        .fold(0.0f64, f64::max);
    report.check_le(
        &format!("{family_name}.normal_zero_sum"),
        crate::mink::normal_zero_sum_residual(&normals),
        1e-10 * max_mag,
    );

    // signed face areas of every hyperface close up
    let mut worst_area_balance = 0.0f64;
    for k in 0..p.hyperfaces.len() {
        let (residual, total) = match p.hyperfaces[k].vertex_ids.len() {
            4 => {
                let t = p.hyperface_tetrahedron(k).expect("tetrahedral hyperface");
                (t.signed_area_residual(), t.total_area())
            }
            _ => {
                let h = p
                    .hyperface_parallelepiped(k)
                    .expect("parallelepiped hyperface");
                (h.signed_area_residual(), h.total_area())
            }
        };
        worst_area_balance = worst_area_balance.max(residual / total);
    }
    report.check_le(
        &format!("{family_name}.signed_area_balance"),
        worst_area_balance,
        1e-10,
    );

    let hull = hull_volume(p);
    match p.family {
        Family::Diamond => {
            let base = [p.vertices[0], p.vertices[1], p.vertices[2], p.vertices[3]];
            let (_, r) = polytopes::insphere(&base, &p.tol).expect("valid diamond base");
            let v3 = polytopes::base_tetra_volume(&base, &p.tol).expect("valid diamond base");
            report.check_rel(
                &format!("{family_name}.volume_r_v_over_2"),
                hull,
                0.5 * r * v3,
                1e-9,
            );
        }
        _ => {
            let basis = independent_basis(p);
            let g = gram_matrix(p, basis).expect("independent basis");
            report.check_le(
                &format!("{family_name}.gram_diagonal"),
                g.diagonal_residual(),
                1e-10,
            );
            report.check_exact(
                &format!("{family_name}.gram_sign_violations"),
                0,
                g.sign_violations(p),
            );
            let v_gram = volume_from_gram(&g).expect("nonsingular gram");
            report.check_rel(
                &format!("{family_name}.volume_gram_vs_hull"),
                hull,
                v_gram,
                1e-9,
            );
            let areas = face_areas_from_gram(&g).expect("nonsingular gram");
            let v_area = volume_from_area_matrix(&areas).expect("nonsingular area matrix");
            report.check_rel(
                &format!("{family_name}.volume_areas_vs_hull"),
                hull,
                v_area,
                1e-9,
            );
            let mut worst = 0.0f64;
            for i in 0..4 {
                for j in i + 1..4 {
                    let face = p.face_between(basis[i], basis[j]).expect("basis pair face");
                    let direct = p.face_area_direct(face);
                    worst = worst.max((areas.entries[i][j].abs() - direct).abs() / direct);
                }
            }
            report.check_le(&format!("{family_name}.face_areas_vs_direct"), worst, 1e-9);
            let expected_dof = if p.family == Family::Simplex { 5 } else { 6 };
            match dof_rank(p) {
                Ok(rank) => {
                    report.check_exact(&format!("{family_name}.dof_rank"), expected_dof, rank)
                }
                Err(e) => report.check_exact(
                    &format!("{family_name}.dof_rank"),
                    expected_dof,
                    format!("{e}"),
                ),
            }
        }
    }

    let profile = causal_profile(p);
    let (hf, faces, edges, verts) = expected_profile(p.family);
    report.check_exact(
        &format!("{family_name}.profile_hyperfaces"),
        hf,
        format!("{:?}", profile.hyperface_counts),
    );
    report.check_exact(
        &format!("{family_name}.profile_faces"),
        faces,
        format!("{:?}", profile.face_counts),
    );
    report.check_exact(
        &format!("{family_name}.profile_edges"),
        edges,
        histogram_string(&profile.edge_histogram),
    );
    report.check_exact(
        &format!("{family_name}.profile_vertices"),
        verts,
        histogram_string(&profile.vertex_histogram),
    );
    if let Some(ok) = profile.simplex_incidence_ok {
        report.check_exact(&format!("{family_name}.face_hyperface_incidence"), true, ok);
    }

    let expected_obstruction = match p.family {
        Family::Simplex => (6, 4, false),
        Family::Diamond => (4, 12, false),
        Family::Parallelotope => (12, 12, true),
    };
    report.check_exact(
        &format!("{family_name}.tessellation_obstruction"),
        format!("{expected_obstruction:?}"),
        format!("{:?}", tessellation_obstruction_check(p)),
    );
}

/// A valid Gram basis: all hyperfaces of a simplex but one, the four past
/// hyperfaces of a parallelotope.
fn independent_basis(p: &NullFaced4Polytope) -> [usize; 4] {
    match p.family {
        Family::Simplex => [0, 1, 2, 3],
        _ => {
            let past: Vec<usize> = (0..p.hyperfaces.len())
                .filter(|&k| p.hyperfaces[k].side == crate::polyhedra::TimeSide::Past)
                .collect();
            [past[0], past[1], past[2], past[3]]
        }
    }
}

/// Random-population identities for one family.
pub fn population_checks(
    family: Family,
    seed: u64,
    trials: usize,
    tol: &Tolerance,
    report: &mut Report,
) {
    let name = format!("{family:?}").to_lowercase();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_volume = 0.0f64;
    let mut worst_area = 0.0f64;
    let mut worst_area_balance = 0.0f64;
    let mut worst_zero_sum = 0.0f64;
    let mut sign_violations = 0usize;
    let mut profile_mismatches = 0usize;
    let mut dof_mismatches = 0usize;
    let dof_checks = trials.min(10);

    for trial in 0..trials {
        let p = match family {
            Family::Simplex => polytopes::sample::sample_simplex(&mut rng, tol),
            Family::Diamond => polytopes::sample::sample_diamond(&mut rng, tol),
            Family::Parallelotope => polytopes::sample::sample_parallelotope(&mut rng, tol),
        };
        let hull = hull_volume(&p);
        let normals = p.normals();
        let max_mag = normals
            .iter()
            .map(|n| n.euclidean_norm())
            .fold(0.0f64, f64::max);
        worst_zero_sum =
            worst_zero_sum.max(crate::mink::normal_zero_sum_residual(&normals) / max_mag);
        for k in 0..p.hyperfaces.len() {
            let (residual, total) = match p.hyperfaces[k].vertex_ids.len() {
                4 => {
                    let t = p.hyperface_tetrahedron(k).expect("tetrahedral hyperface");
                    (t.signed_area_residual(), t.total_area())
                }
                _ => {
                    let h = p
                        .hyperface_parallelepiped(k)
                        .expect("parallelepiped hyperface");
                    (h.signed_area_residual(), h.total_area())
                }
            };
            worst_area_balance = worst_area_balance.max(residual / total);
        }

        match family {
            Family::Diamond => {
                let base = [p.vertices[0], p.vertices[1], p.vertices[2], p.vertices[3]];
                let (_, r) = polytopes::insphere(&base, tol).expect("sampled diamond base");
                let v3 = polytopes::base_tetra_volume(&base, tol).expect("sampled diamond base");
                worst_volume = worst_volume.max((hull - 0.5 * r * v3).abs() / hull);
            }
            _ => {
                let basis = independent_basis(&p);
                let g = gram_matrix(&p, basis).expect("independent basis");
                sign_violations += g.sign_violations(&p);
                let v_gram = volume_from_gram(&g).expect("nonsingular gram");
                let areas = face_areas_from_gram(&g).expect("nonsingular gram");
                let v_area = volume_from_area_matrix(&areas).expect("nonsingular area matrix");
                worst_volume = worst_volume
                    .max((v_gram - hull).abs() / hull)
                    .max((v_area - hull).abs() / hull);
                for i in 0..4 {
                    for j in i + 1..4 {
                        let face = p.face_between(basis[i], basis[j]).expect("basis pair face");
                        let direct = p.face_area_direct(face);
                        worst_area =
                            worst_area.max((areas.entries[i][j].abs() - direct).abs() / direct);
                    }
                }
                if trial < dof_checks {
                    let expected_dof = if family == Family::Simplex { 5 } else { 6 };
                    if dof_rank(&p) != Ok(expected_dof) {
                        dof_mismatches += 1;
                    }
                }
            }
        }

        let profile = causal_profile(&p);
        let (hf, faces, edges, verts) = expected_profile(family);
        let matches = format!("{:?}", profile.hyperface_counts) == hf
            && format!("{:?}", profile.face_counts) == faces
            && histogram_string(&profile.edge_histogram) == edges
            && histogram_string(&profile.vertex_histogram) == verts;
        if !matches {
            profile_mismatches += 1;
        }
    }

    report.check_le(
        &format!("{name}.population_volume_routes"),
        worst_volume,
        1e-8,
    );
    if family != Family::Diamond {
        report.check_le(&format!("{name}.population_face_areas"), worst_area, 1e-8);
        report.check_exact(
            &format!("{name}.population_gram_sign_violations"),
            0,
            sign_violations,
        );
        report.check_exact(
            &format!("{name}.population_dof_mismatches"),
            0,
            dof_mismatches,
        );
    }
    report.check_le(
        &format!("{name}.population_signed_area_balance"),
        worst_area_balance,
        1e-10,
    );
    report.check_le(
        &format!("{name}.population_normal_zero_sum"),
        worst_zero_sum,
        1e-10,
    );
    report.check_exact(
        &format!("{name}.population_profile_mismatches"),
        0,
        profile_mismatches,
    );
}

/// Agreement of the two routes to the timelike-parallelogram area over
/// random pairs of future null covectors.
pub fn parallelogram_identity_check(seed: u64, pairs: usize, tol: &Tolerance, report: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5ca1_ab1e);
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let l1 = polytopes::sample::random_null_covector(&mut rng);
        let l2 = polytopes::sample::random_null_covector(&mut rng);
        let (area, dot) =
            timelike_parallelogram_area_check(&l1, &l2, tol).expect("sampled covectors are null");
        worst = worst.max((area - dot).abs() / dot.abs().max(f64::MIN_POSITIVE));
    }
    report.check_le("parallelogram_area_two_routes", worst, 1e-10);
}

/// Generate and verify a tiling block plus (optionally) its dual lattice.
pub fn cmd_tile(
    extent: [usize; 4],
    scale: f64,
    with_lattice: bool,
) -> Result<(Envelope, bool), Failure> {
    let mut env = Envelope::new(format!(
        "tile --extent {},{},{},{} --scale {scale}{}",
        extent[0],
        extent[1],
        extent[2],
        extent[3],
        if with_lattice { " --with-lattice" } else { "" }
    ));
    let block = tiling::generate_tiling(extent, scale).map_err(geometry_failure)?;
    let mut report = Report::new();

    let lightcross = tiling::verify_face_lightcross(&block);
    report.check_exact(
        "tiling.lightcross_leg_violations",
        0,
        lightcross.leg_violations.len(),
    );
    report.check_exact(
        "tiling.lightcross_dihedral_violations",
        0,
        lightcross.dihedral_violations.len(),
    );

    let lattice = tiling::extract_lightray_lattice(&block);
    let interior = lattice.interior_nodes();
    let expected_interior: usize = extent.iter().map(|n| n.saturating_sub(1)).product();
    report.check_exact(
        "lattice.interior_node_count",
        expected_interior,
        interior.len(),
    );
    report.check_le(
        "lattice.collinearity",
        lattice.collinearity_residual(&interior),
        1e-10,
    );
    let mut worst_null = 0.0f64;
    for s in &lattice.segments {
        let v = lattice.nodes[s.to] - lattice.nodes[s.from];
        worst_null = worst_null.max(v.norm_sq().abs() / v.euclidean_norm().powi(2));
    }
    report.check_le("lattice.segment_nullity", worst_null, 1e-10);
    let rays = tiling::tetrahedral_direction_check(&lattice);
    report.check_le(
        "lattice.ray_cosines_vs_tetrahedral",
        rays.max_offdiag_deviation,
        1e-9,
    );

    env.block = Some(BlockExport::from_block(&block, &lightcross));
    if with_lattice {
        env.lattice = Some(LatticeExport::from_lattice(&lattice, rays.cosines));
    }
    let ok = report.all_passed();
    env.report = Some(report);
    Ok((env, ok))
}

fn write_output(env: &Envelope, format: Format, out: Option<&Path>) -> Result<(), Failure> {
    let payload = match format {
        Format::Json => env.to_json(),
        Format::Csv => {
            if let Some(report) = &env.report {
                report_csv(report)
            } else if let Some(shape) = &env.shape {
                vertices_csv(&shape.labels, &shape.vertices)
            } else if let Some(poly) = &env.polyhedron {
                let labels: Vec<String> = (0..poly.vertices.len()).map(|i| i.to_string()).collect();
                vertices_csv(&labels, &poly.vertices)
            } else if let Some(block) = &env.block {
                let labels: Vec<String> = block
                    .vertex_keys
                    .iter()
                    .map(|k| format!("{},{},{},{}", k[0], k[1], k[2], k[3]).replace(',', "|"))
                    .collect();
                vertices_csv(&labels, &block.vertices)
            } else {
                String::new()
            }
        }
    };
    if let Some(report) = &env.report {
        eprint!("{}", report.render_lines());
    }
    match out {
        Some(path) => std::fs::write(path, payload)
            .map_err(|e| Failure::io(format!("cannot write '{}': {e}", path.display()))),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_rejects_unknown_shape_and_bad_scale() {
        assert_eq!(
            cmd_build("cube", 1.0).err().map(|f| f.exit_code),
            Some(EXIT_USAGE)
        );
        assert_eq!(
            cmd_build("simplex", -1.0).err().map(|f| f.exit_code),
            Some(EXIT_USAGE)
        );
    }

    #[test]
    fn verify_families_pass() {
        for family in ["simplex", "diamond", "parallelotope"] {
            let (env, ok) = cmd_verify(family, 7, 5, None).unwrap();
            let report = env.report.unwrap();
            assert!(ok, "{family} failed:\n{}", report.render_lines());
            assert_eq!(report.failed, 0);
        }
    }

    #[test]
    fn verify_roundtrip_through_file() {
        let dir = std::env::temp_dir().join("minkpoly_cli_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("simplex.json");
        let env = cmd_build("simplex", 1.0).unwrap();
        std::fs::write(&path, env.to_json()).unwrap();
        let (_, ok) = cmd_verify(path.to_str().unwrap(), 1, 1, None).unwrap();
        assert!(ok);
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn tile_small_block_passes() {
        let (env, ok) = cmd_tile([1, 1, 1, 2], 1.0, true).unwrap();
        assert!(ok);
        let block = env.block.unwrap();
        assert_eq!(block.cell_count, 2);
        assert!(env.lattice.is_some());
    }
}
