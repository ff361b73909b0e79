//! The spacetime tiling by the regular doubly-null parallelotope and its
//! dual lightray lattice.
//!
//! Cells are integer translates of one parallelotope along its four
//! generators, so every vertex is keyed by an exact integer combination;
//! deduplication never compares floats. Each interior 2d face of the tiling
//! carries a lightcross of four null hyperface bodies, and stripping the
//! tiling down to the initial/final vertices of its cells leaves a lattice
//! of nodes threaded by lightrays in four tetrahedrally-arranged directions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::mink::{FourCovector, FourVector, Tolerance};

/// Default cap on the number of cells in one block.
pub const DEFAULT_CELL_CAP: usize = 1_000_000;

/// One parallelotope cell: its lattice index and its 16 vertex ids in
/// corner-word order (bit i set = future side of pair i).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellRecord {
    pub index: [i64; 4],
    pub vertex_ids: [usize; 16],
}

/// Where a 2d face touches a cell: through which of the cell's eight
/// hyperfaces (0..3 past sides, 4..7 future sides).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceIncidence {
    pub cell: usize,
    pub hyperface: usize,
}

/// A deduplicated 2d face of the block.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockFace {
    /// The two generator axes held fixed across the face.
    pub fixed_axes: (usize, usize),
    /// Lattice values of the fixed axes.
    pub fixed_values: (i64, i64),
    /// Lattice coordinates of the face's minimal corner.
    pub base: [i64; 4],
    pub vertex_ids: [usize; 4],
    pub incident: Vec<FaceIncidence>,
}

/// A finite block of the tiling.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TilingBlock {
    pub extent: [usize; 4],
    pub scale: f64,
    pub origin: FourVector,
    pub generators: [FourVector; 4],
    pub vertices: Vec<FourVector>,
    /// Integer generator combination of each vertex.
    pub vertex_keys: Vec<[i64; 4]>,
    pub cells: Vec<CellRecord>,
    pub faces: Vec<BlockFace>,
    pub tol: Tolerance,
}

/// A null segment of the lattice along ray direction `direction`, running
/// from the earlier node to the later one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSegment {
    pub from: usize,
    pub to: usize,
    pub direction: usize,
}

/// The dual lattice: initial/final vertices of cells joined by the null
/// diagonals of the hyperfaces.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LightrayLattice {
    pub nodes: Vec<FourVector>,
    pub node_keys: Vec<[i64; 4]>,
    pub segments: Vec<LatticeSegment>,
    /// Future-pointing ray directions, indexed by the sign pattern of their
    /// spatial parts: (---), (-++), (+-+), (++-).
    pub ray_directions: [FourVector; 4],
}

/// Outcome of the lightcross scan over interior faces.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LightcrossReport {
    pub interior_faces: usize,
    pub boundary_faces: usize,
    /// Faces whose four hyperface bodies fail to cover the four legs.
    pub leg_violations: Vec<usize>,
    /// Faces where the past-future dihedral count differs from the
    /// past-past plus future-future count.
    pub dihedral_violations: Vec<usize>,
}

impl LightcrossReport {
    pub fn is_clean(&self) -> bool {
        self.leg_violations.is_empty() && self.dihedral_violations.is_empty()
    }
}

/// Cosine matrix of the four ray directions' spatial parts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RayPatternReport {
    pub cosines: [[f64; 4]; 4],
    pub max_offdiag_deviation: f64,
}

/// Hyperface diagonals of the regular parallelotope at the given scale:
/// direction `i` takes one lattice step along every axis except `i`, and
/// runs from a cell's initial vertex to the final vertex of its past
/// hyperface `i`.
pub fn ray_directions(scale: f64) -> [FourVector; 4] {
    let g = crate::polytopes::regular_generators(scale);
    let mut dirs = [FourVector::zero(); 4];
    for (i, dir) in dirs.iter_mut().enumerate() {
        let mut d = FourVector::zero();
        for (j, gj) in g.iter().enumerate() {
            if j != i {
                d = d + *gj;
            }
        }
        *dir = d;
    }
    dirs
}

/// Generate a block of the tiling with the given per-axis cell counts.
pub fn generate_tiling(extent: [usize; 4], scale: f64) -> Result<TilingBlock> {
    generate_tiling_capped(extent, scale, DEFAULT_CELL_CAP)
}

/// Same as [`generate_tiling`] with an explicit cell cap.
pub fn generate_tiling_capped(extent: [usize; 4], scale: f64, cap: usize) -> Result<TilingBlock> {
    if !(scale > 0.0) {
        return Err(GeometryError::NonPositiveScale);
    }
    if extent.iter().any(|&n| n == 0) {
        return Err(GeometryError::ExtentTooLarge(0, cap));
    }
    let cell_count: usize = extent.iter().product();
    if cell_count > cap {
        return Err(GeometryError::ExtentTooLarge(cell_count, cap));
    }

    let generators = crate::polytopes::regular_generators(scale);
    let origin = FourVector::new(-scale, 0.0, 0.0, 0.0);
    let position = |key: &[i64; 4]| -> FourVector {
        let mut v = origin;
        for (i, g) in generators.iter().enumerate() {
            v = v + *g * (key[i] as f64);
        }
        v
    };

    let mut key_to_id: BTreeMap<[i64; 4], usize> = BTreeMap::new();
    let mut vertices = Vec::new();
    let mut vertex_keys = Vec::new();
    let mut vertex_id =
        |key: [i64; 4], vertices: &mut Vec<FourVector>, vertex_keys: &mut Vec<[i64; 4]>| -> usize {
            *key_to_id.entry(key).or_insert_with(|| {
                vertices.push(position(&key));
                vertex_keys.push(key);
                vertices.len() - 1
            })
        };

    let mut cells = Vec::with_capacity(cell_count);
    let mut face_map: BTreeMap<((usize, usize), (i64, i64), [i64; 4]), usize> = BTreeMap::new();
    let mut faces: Vec<BlockFace> = Vec::new();

    let mut index = [0i64; 4];
    loop {
        let mut ids = [0usize; 16];
        for (word, id) in ids.iter_mut().enumerate() {
            let key = [
                index[0] + (word & 1) as i64,
                index[1] + ((word >> 1) & 1) as i64,
                index[2] + ((word >> 2) & 1) as i64,
                index[3] + ((word >> 3) & 1) as i64,
            ];
            *id = vertex_id(key, &mut vertices, &mut vertex_keys);
        }
        let cell_idx = cells.len();
        cells.push(CellRecord {
            index,
            vertex_ids: ids,
        });

        // register the cell's 24 faces, two hyperface incidences each
        for i in 0..4 {
            for j in i + 1..4 {
                let free: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
                for bi in 0..2i64 {
                    for bj in 0..2i64 {
                        let mut base = index;
                        base[i] += bi;
                        base[j] += bj;
                        let map_key = ((i, j), (base[i], base[j]), base);
                        let face_id = *face_map.entry(map_key).or_insert_with(|| {
                            let mut vids = [0usize; 4];
                            for (c, vid) in vids.iter_mut().enumerate() {
                                let mut key = base;
                                key[free[0]] += (c & 1) as i64;
                                key[free[1]] += ((c >> 1) & 1) as i64;
                                *vid = vertex_id(key, &mut vertices, &mut vertex_keys);
                            }
                            faces.push(BlockFace {
                                fixed_axes: (i, j),
                                fixed_values: (base[i], base[j]),
                                base,
                                vertex_ids: vids,
                                incident: Vec::new(),
                            });
                            faces.len() - 1
                        });
                        let hf_i = if bi == 0 { i } else { 4 + i };
                        let hf_j = if bj == 0 { j } else { 4 + j };
                        faces[face_id].incident.push(FaceIncidence {
                            cell: cell_idx,
                            hyperface: hf_i,
                        });
                        faces[face_id].incident.push(FaceIncidence {
                            cell: cell_idx,
                            hyperface: hf_j,
                        });
                    }
                }
            }
        }

        // advance the 4d counter
        let mut axis = 0;
        loop {
            index[axis] += 1;
            if (index[axis] as usize) < extent[axis] {
                break;
            }
            index[axis] = 0;
            axis += 1;
            if axis == 4 {
                return Ok(TilingBlock {
                    extent,
                    scale,
                    origin,
                    generators,
                    vertices,
                    vertex_keys,
                    cells,
                    faces,
                    tol: Tolerance::default(),
                });
            }
        }
    }
}

impl TilingBlock {
    /// The hyperface body key (ray axis, lattice min-corner) of an incidence.
    fn hyperface_body(&self, inc: &FaceIncidence) -> (usize, [i64; 4]) {
        let cell = &self.cells[inc.cell];
        let axis = inc.hyperface % 4;
        let mut corner = cell.index;
        if inc.hyperface >= 4 {
            corner[axis] += 1;
        }
        (axis, corner)
    }

    pub(crate) fn position_of_key(&self, key: &[i64; 4]) -> FourVector {
        let mut v = self.origin;
        for (i, g) in self.generators.iter().enumerate() {
            v = v + *g * (key[i] as f64);
        }
        v
    }

    /// Centroid of a hyperface body given its key.
    fn hyperface_centroid(&self, axis: usize, corner: &[i64; 4]) -> FourVector {
        let mut c = FourVector::zero();
        let free: Vec<usize> = (0..4).filter(|&k| k != axis).collect();
        for word in 0..8usize {
            let mut key = *corner;
            for (k, &f) in free.iter().enumerate() {
                key[f] += ((word >> k) & 1) as i64;
            }
            c = c + self.position_of_key(&key);
        }
        c * (1.0 / 8.0)
    }

    fn face_centroid(&self, face: &BlockFace) -> FourVector {
        let mut c = FourVector::zero();
        for &v in &face.vertex_ids {
            c = c + self.vertices[v];
        }
        c * 0.25
    }
}

/// The ray-coordinate form of the null plane family with the given future
/// ray direction: pairs to 1 with the normalized ray, 0 with the quotient
/// frame.
fn u_form(ray: &FourVector) -> FourCovector {
    let r = *ray * (1.0 / ray.t);
    FourCovector::new(0.5, r.x / 2.0, r.y / 2.0, r.z / 2.0)
}

/// Scan every interior face of the block for the lightcross pattern: its
/// four distinct hyperface bodies must occupy the four legs (two null
/// plane families, one past and one future leg each), and the dihedral
/// census must balance past-future against past-past plus future-future.
pub fn verify_face_lightcross(block: &TilingBlock) -> LightcrossReport {
    let rays = ray_directions(block.scale);
    let forms: Vec<FourCovector> = rays.iter().map(u_form).collect();
    let mut report = LightcrossReport {
        interior_faces: 0,
        boundary_faces: 0,
        leg_violations: Vec::new(),
        dihedral_violations: Vec::new(),
    };
    for (f_idx, face) in block.faces.iter().enumerate() {
        let mut bodies: Vec<(usize, [i64; 4])> = face
            .incident
            .iter()
            .map(|inc| block.hyperface_body(inc))
            .collect();
        bodies.sort_unstable();
        bodies.dedup();
        if bodies.len() < 4 {
            report.boundary_faces += 1;
            continue;
        }
        report.interior_faces += 1;

        // legs: (plane family, future/past side of the face)
        let fc = block.face_centroid(face);
        let mut legs: Vec<(usize, bool)> = bodies
            .iter()
            .map(|(axis, corner)| {
                let delta = block.hyperface_centroid(*axis, corner) - fc;
                (*axis, forms[*axis].pair(&delta) > 0.0)
            })
            .collect();
        legs.sort_unstable();
        legs.dedup();
        let (i, j) = face.fixed_axes;
        let mut expected = vec![(i, false), (i, true), (j, false), (j, true)];
        expected.sort_unstable();
        if legs != expected {
            report.leg_violations.push(f_idx);
        }

        // dihedral census over the four incident cells
        let mut by_cell: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for inc in &face.incident {
            by_cell.entry(inc.cell).or_default().push(inc.hyperface);
        }
        let mut pf = 0usize;
        let mut pp_ff = 0usize;
        for sides in by_cell.values() {
            let past_count = sides.iter().filter(|&&h| h < 4).count();
            if past_count == 1 {
                pf += 1;
            } else {
                pp_ff += 1;
            }
        }
        if pf != pp_ff {
            report.dihedral_violations.push(f_idx);
        }
    }
    report
}

/// Strip the block down to its node lattice: the initial/final vertices of
/// the cells joined by the null hyperface diagonals.
pub fn extract_lightray_lattice(block: &TilingBlock) -> LightrayLattice {
    let rays = ray_directions(block.scale);
    let mut node_map: BTreeMap<[i64; 4], usize> = BTreeMap::new();
    let mut node_keys: Vec<[i64; 4]> = Vec::new();
    let mut seen: BTreeMap<([i64; 4], usize), ()> = BTreeMap::new();
    let mut segments = Vec::new();
    for cell in &block.cells {
        for dir in 0..4 {
            // past hyperface diagonal: initial vertex -> one step along
            // every axis but `dir`; future hyperface diagonal: one step
            // along `dir` -> final vertex
            for offset in 0..2 {
                let mut from = cell.index;
                if offset == 1 {
                    from[dir] += 1;
                }
                if seen.insert((from, dir), ()).is_some() {
                    continue;
                }
                let mut to = from;
                for (axis, t) in to.iter_mut().enumerate() {
                    if axis != dir {
                        *t += 1;
                    }
                }
                let a = *node_map.entry(from).or_insert_with(|| {
                    node_keys.push(from);
                    node_keys.len() - 1
                });
                let b = *node_map.entry(to).or_insert_with(|| {
                    node_keys.push(to);
                    node_keys.len() - 1
                });
                segments.push(LatticeSegment {
                    from: a,
                    to: b,
                    direction: dir,
                });
            }
        }
    }
    let nodes = node_keys.iter().map(|k| block.position_of_key(k)).collect();
    LightrayLattice {
        nodes,
        node_keys,
        segments,
        ray_directions: rays,
    }
}

impl LightrayLattice {
    /// (future-going, past-going) segment counts per node.
    pub fn degrees(&self) -> Vec<(usize, usize)> {
        let mut deg = vec![(0usize, 0usize); self.nodes.len()];
        for s in &self.segments {
            deg[s.from].0 += 1;
            deg[s.to].1 += 1;
        }
        deg
    }

    /// Nodes with the full four future-going and four past-going segments.
    pub fn interior_nodes(&self) -> Vec<usize> {
        self.degrees()
            .iter()
            .enumerate()
            .filter(|(_, d)| **d == (4, 4))
            .map(|(i, _)| i)
            .collect()
    }

    /// Affine spacing of consecutive nodes along a ray: the euclidean norm
    /// of one lattice step, measured in the tiling's preferred frame.
    pub fn affine_spacing(&self, direction: usize) -> f64 {
        self.ray_directions[direction].euclidean_norm()
    }

    /// Worst relative mismatch between same-direction segment vectors at
    /// the given nodes; zero when the two segments of each direction sit on
    /// one straight lightray through the node.
    pub fn collinearity_residual(&self, nodes: &[usize]) -> f64 {
        let mut worst = 0.0f64;
        for &n in nodes {
            for dir in 0..4 {
                let through: Vec<&LatticeSegment> = self
                    .segments
                    .iter()
                    .filter(|s| s.direction == dir && (s.from == n || s.to == n))
                    .collect();
                for a in &through {
                    for b in &through {
                        let va = self.nodes[a.to] - self.nodes[a.from];
                        let vb = self.nodes[b.to] - self.nodes[b.from];
                        let diff = (va - vb).euclidean_norm();
                        worst = worst.max(diff / va.euclidean_norm());
                    }
                }
            }
        }
        worst
    }
}

/// Cosine matrix of the four future ray directions after normalizing to
/// unit time component; the off-diagonals of a tetrahedral pattern all
/// equal -1/3.
pub fn tetrahedral_direction_check(lat: &LightrayLattice) -> RayPatternReport {
    let mut spatial = [[0.0f64; 3]; 4];
    for (i, d) in lat.ray_directions.iter().enumerate() {
        let r = *d * (1.0 / d.t);
        let n = (r.x * r.x + r.y * r.y + r.z * r.z).sqrt();
        spatial[i] = [r.x / n, r.y / n, r.z / n];
    }
    let mut cosines = [[0.0f64; 4]; 4];
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let c: f64 = (0..3).map(|k| spatial[i][k] * spatial[j][k]).sum();
            cosines[i][j] = c;
            if i != j {
                worst = worst.max((c + 1.0 / 3.0).abs());
            }
        }
    }
    RayPatternReport {
        cosines,
        max_offdiag_deviation: worst,
    }
}
