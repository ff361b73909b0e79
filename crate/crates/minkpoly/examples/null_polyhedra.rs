//! Null tetrahedra and parallelepipeds: signed face areas, the two
//! tetrahedron types, ray-coordinate canonicalization and the doubly-null
//! condition.
//!
//! Run with: cargo run --example null_polyhedra

use minkpoly::mink::{FourVector, Tolerance};
use minkpoly::{NullHyperplane, NullParallelepiped, NullTetrahedron, TetraKind};

fn main() {
    let tol = Tolerance::default();
    let host = NullHyperplane::through(
        &FourVector::zero(),
        &FourVector::new(1.0, 0.0, 0.0, 1.0),
        &tol,
    )
    .unwrap();

    for (name, kind) in [("(1,3)", TetraKind::OneThree), ("(2,2)", TetraKind::TwoTwo)] {
        let t = NullTetrahedron::regular(kind, 1.0, &host).unwrap();
        println!("regular {name} tetrahedron, scale 1");
        println!(
            "  planar image:     {:?}",
            t.image.map(|p| p.map(|c| (c * 1e6).round() / 1e6))
        );
        println!("  signed areas:     {:.6?}", t.face_areas);
        println!("  area balance:     {:.2e}", t.signed_area_residual());
        println!("  type (past, future) = {:?}\n", t.tetra_type);
    }

    // a genuine embedded tetrahedron and its flat canonical representative
    let s3 = 3.0f64.sqrt();
    let embedded = NullTetrahedron::build(
        [
            FourVector::new(0.0, -s3, -1.0, 0.0),
            FourVector::new(0.0, s3, -1.0, 0.0),
            FourVector::new(0.0, 0.0, 2.0, 0.0),
            FourVector::new(1.0, 0.0, 0.0, -1.0),
        ],
        &tol,
    )
    .unwrap();
    println!("hyperface of the regular 4-simplex as a null tetrahedron:");
    println!(
        "  type {:?}, signed areas {:.6?}",
        embedded.tetra_type, embedded.face_areas
    );
    let us: Vec<f64> = embedded
        .vertices
        .iter()
        .map(|v| embedded.host.u_of(v))
        .collect();
    println!("  ray coordinates before canonicalization: {us:.6?}");
    let flat = embedded.canonicalize();
    let us: Vec<f64> = flat.vertices.iter().map(|v| flat.host.u_of(v)).collect();
    println!("  ray coordinates after  canonicalization: {us:.6?}");
    println!("  (planar image and areas are unchanged)\n");

    let hexa = NullParallelepiped::regular_doubly_null(1.0, &host, &tol).unwrap();
    println!("regular doubly-null parallelepiped, scale 1");
    println!(
        "  edge images:      {:?}",
        hexa.edge_images.map(|p| p.map(|c| (c * 1e6).round() / 1e6))
    );
    println!("  signed areas:     {:.6?}", hexa.face_areas);
    println!("  doubly null:      {}", hexa.is_doubly_null(&tol));
    let diag = hexa.edges[0] + hexa.edges[1] + hexa.edges[2];
    println!(
        "  diagonal . diagonal = {:.2e} (a lightray segment)",
        diag.norm_sq()
    );

    // a generic parallelepiped: initial and final vertices separate in the image
    let generic = NullParallelepiped::build(
        host.base,
        [
            host.e1 * 1.0 + host.ray_dir * 0.3,
            host.e2 * 1.0 + host.ray_dir * 0.4,
            host.e1 * -2.0 + host.e2 * -2.0 + host.ray_dir * 0.5,
        ],
        &tol,
    )
    .unwrap();
    println!("\ngeneric null parallelepiped");
    println!("  doubly null:      {}", generic.is_doubly_null(&tol));
    println!("  signed areas:     {:.6?}", generic.face_areas);
    println!("  area balance:     {:.2e}", generic.signed_area_residual());
}
