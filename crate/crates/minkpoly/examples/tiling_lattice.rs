//! The parallelotope tiling and its dual lightray lattice: lightcross
//! pattern at every interior face, eight null segments through every
//! interior node, and the tetrahedral ray pattern.
//!
//! Run with: cargo run --example tiling_lattice

use minkpoly::tiling::{
    extract_lightray_lattice, generate_tiling, tetrahedral_direction_check, verify_face_lightcross,
};

fn main() {
    let block = generate_tiling([3, 3, 3, 3], 1.0).unwrap();
    println!(
        "block 3x3x3x3: {} cells, {} deduplicated vertices, {} faces",
        block.cells.len(),
        block.vertices.len(),
        block.faces.len()
    );

    let lightcross = verify_face_lightcross(&block);
    println!(
        "lightcross scan: {} interior faces, {} boundary faces, {} leg violations, {} dihedral violations",
        lightcross.interior_faces,
        lightcross.boundary_faces,
        lightcross.leg_violations.len(),
        lightcross.dihedral_violations.len()
    );

    let lattice = extract_lightray_lattice(&block);
    println!(
        "\nlightray lattice: {} nodes, {} null segments",
        lattice.nodes.len(),
        lattice.segments.len()
    );
    let mut histogram = std::collections::BTreeMap::new();
    for d in lattice.degrees() {
        *histogram.entry(d).or_insert(0usize) += 1;
    }
    println!("degree histogram (future-going, past-going) -> nodes:");
    for (degree, count) in &histogram {
        println!("  {degree:?} -> {count}");
    }
    let interior = lattice.interior_nodes();
    println!(
        "interior nodes: {} (each on four full rays, collinearity residual {:.1e})",
        interior.len(),
        lattice.collinearity_residual(&interior)
    );

    let rays = tetrahedral_direction_check(&lattice);
    println!("\nray directions (one lattice step each):");
    for d in lattice.ray_directions {
        println!("  {:?}", d.as_array());
    }
    println!("cosine matrix of their spatial parts:");
    for row in rays.cosines {
        println!("  {row:9.6?}");
    }
    println!(
        "max deviation from the tetrahedral -1/3: {:.2e}",
        rays.max_offdiag_deviation
    );
}
