//! Causal census of the three polytope families and the face-count
//! obstruction that rules out tessellations by simplices and diamonds.
//!
//! Run with: cargo run --example causal_structure

use minkpoly::polytopes::{
    causal_profile, gram_matrix, regular_diamond, regular_parallelotope, regular_simplex,
    tessellation_obstruction_check, NullFaced4Polytope,
};
use minkpoly::TimeSide;

fn census(name: &str, p: &NullFaced4Polytope) {
    let profile = causal_profile(p);
    println!("== {name}");
    println!(
        "   hyperfaces (past, future): {:?}",
        profile.hyperface_counts
    );
    println!("   faces (pp, pf, ff):        {:?}", profile.face_counts);
    println!("   edges by signature:        {:?}", profile.edge_histogram);
    println!(
        "   vertices by signature:     {:?}",
        profile.vertex_histogram
    );
    let (pf, pp_ff, tileable) = tessellation_obstruction_check(p);
    println!("   dihedral balance: pf = {pf}, pp + ff = {pp_ff} -> can tile: {tileable}");
}

fn main() {
    let simplex = regular_simplex(1.0).unwrap();
    census("null-faced 4-simplex", &simplex);
    let g = gram_matrix(&simplex, [0, 1, 2, 3]).unwrap();
    println!("   Gram matrix of four normals (pf entries positive, same-side negative):");
    for row in g.entries {
        println!("     {row:8.1?}");
    }

    println!();
    census("tetrahedral diamond", &regular_diamond(1.0).unwrap());

    println!();
    let para = regular_parallelotope(1.0).unwrap();
    census("doubly-null parallelotope", &para);
    let past: Vec<usize> = (0..8)
        .filter(|&k| para.hyperfaces[k].side == TimeSide::Past)
        .collect();
    let g = gram_matrix(&para, [past[0], past[1], past[2], past[3]]).unwrap();
    println!("   Gram matrix of the four past normals:");
    for row in g.entries {
        println!("     {row:8.1?}");
    }
}
