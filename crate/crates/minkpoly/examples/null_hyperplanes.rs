//! Null hyperplane geometry: the degenerate frame, planar images that
//! collapse lightrays, and the seven-generator symmetry group.
//!
//! Run with: cargo run --example null_hyperplanes

use minkpoly::mink::{minkowski_dot, FourVector, Tolerance};
use minkpoly::{HyperplaneSymmetry, NullHyperplane};

fn main() {
    let tol = Tolerance::default();
    let host = NullHyperplane::through(
        &FourVector::zero(),
        &FourVector::new(1.0, 0.0, 0.0, 1.0),
        &tol,
    )
    .unwrap();
    println!("the t = z hyperplane");
    println!(
        "  normal covector: {:?} (null, also tangent)",
        host.normal.as_array()
    );
    println!("  ray direction:   {:?}", host.ray_dir.as_array());
    println!(
        "  quotient frame:  {:?}, {:?}",
        host.e1.as_array(),
        host.e2.as_array()
    );
    println!("  ray . ray      = {}", host.ray_dir.norm_sq());
    println!("  e1 . e1        = {}", minkowski_dot(&host.e1, &host.e1));

    // two points on one ray have the same planar image
    let p = host.point_at([0.8, -0.4], 0.3);
    let q = p + host.ray_dir * 5.0;
    println!("\nplanar images collapse rays:");
    println!("  image of p                 = {:?}", host.image_of(&p));
    println!("  image of p + 5 * ray       = {:?}", host.image_of(&q));
    println!("  interval p to shifted p    = {}", (q - p).norm_sq());

    // the metric measures distances between rays
    let r = host.point_at([2.0, 1.1], -0.7);
    let d = (r - p).norm_sq().sqrt();
    let (ip, ir) = (host.image_of(&p), host.image_of(&r));
    let image_d = (ir[0] - ip[0]).hypot(ir[1] - ip[1]);
    println!("\nquotient metric is euclidean between rays:");
    println!("  spacetime distance = {d:.12}");
    println!("  image distance     = {image_d:.12}");

    // the seven symmetry generators: planar motions plus the affine ray map
    println!("\nsymmetry group actions on p:");
    let cases = [
        ("identity", HyperplaneSymmetry::default()),
        (
            "planar translation",
            HyperplaneSymmetry {
                translation: [1.0, -2.0],
                ..Default::default()
            },
        ),
        (
            "planar rotation",
            HyperplaneSymmetry {
                rotation: 0.6,
                ..Default::default()
            },
        ),
        (
            "ray translation",
            HyperplaneSymmetry {
                u_translation: 1.0,
                ..Default::default()
            },
        ),
        (
            "ray rescaling",
            HyperplaneSymmetry {
                u_scale: 2.0,
                ..Default::default()
            },
        ),
        (
            "null rotation (shear)",
            HyperplaneSymmetry {
                u_shear: [0.5, 0.0],
                ..Default::default()
            },
        ),
    ];
    for (name, params) in cases {
        let moved = host.apply_symmetry(&p, &params, &tol).unwrap();
        println!(
            "  {name:22} -> {:?}, image {:?}",
            moved.as_array().map(|c| (c * 1e6).round() / 1e6),
            host.image_of(&moved).map(|c| (c * 1e6).round() / 1e6),
        );
    }
}
