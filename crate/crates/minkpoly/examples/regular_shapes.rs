//! The three maximally regular null-faced 4-polytopes, with their volumes
//! computed along three independent routes.
//!
//! Run with: cargo run --example regular_shapes

use minkpoly::mink::Tolerance;
use minkpoly::polytopes::{
    base_tetra_volume, face_areas_from_gram, gram_matrix, hull_volume, insphere, regular_diamond,
    regular_parallelotope, regular_simplex, volume_from_area_matrix, volume_from_gram,
    NullFaced4Polytope,
};
use minkpoly::TimeSide;

fn summarize(name: &str, p: &NullFaced4Polytope, basis: Option<[usize; 4]>) {
    println!("== {name}");
    println!(
        "   {} vertices, {} edges, {} faces, {} hyperfaces",
        p.vertices.len(),
        p.edges.len(),
        p.faces.len(),
        p.hyperfaces.len()
    );
    let mut lengths = p.edge_lengths();
    lengths.sort_by(f64::total_cmp);
    lengths.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    println!("   edge lengths: {lengths:.6?}");
    let mut areas: Vec<f64> = (0..p.faces.len()).map(|f| p.face_area_direct(f)).collect();
    areas.sort_by(f64::total_cmp);
    areas.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    println!("   face areas:   {areas:.6?}");
    println!("   hull volume:  {:.12}", hull_volume(p));
    if let Some(basis) = basis {
        let g = gram_matrix(p, basis).unwrap();
        let v_gram = volume_from_gram(&g).unwrap();
        let areas = face_areas_from_gram(&g).unwrap();
        let v_area = volume_from_area_matrix(&areas).unwrap();
        println!("   Gram route:   {v_gram:.12}");
        println!("   area route:   {v_area:.12}");
    }
}

fn main() {
    let simplex = regular_simplex(1.0).unwrap();
    summarize("regular 4-simplex (a = 1)", &simplex, Some([0, 1, 2, 3]));

    let diamond = regular_diamond(1.0).unwrap();
    summarize("regular tetrahedral diamond (a = 1)", &diamond, None);
    let tol = Tolerance::default();
    let base = [
        diamond.vertices[0],
        diamond.vertices[1],
        diamond.vertices[2],
        diamond.vertices[3],
    ];
    let (center, r) = insphere(&base, &tol).unwrap();
    let v3 = base_tetra_volume(&base, &tol).unwrap();
    println!("   insphere center {:?}, radius {r}", center.as_array());
    println!("   r * V / 2 =   {:.12}", 0.5 * r * v3);

    let para = regular_parallelotope(1.0).unwrap();
    let past: Vec<usize> = (0..8)
        .filter(|&k| para.hyperfaces[k].side == TimeSide::Past)
        .collect();
    summarize(
        "regular doubly-null parallelotope (a = 1)",
        &para,
        Some([past[0], past[1], past[2], past[3]]),
    );
    println!("   every hyperface is a doubly-null parallelepiped:");
    for k in 0..8 {
        let hexa = para.hyperface_parallelepiped(k).unwrap();
        print!(" {}", hexa.is_doubly_null(&tol));
    }
    println!();
}
