//! Null-faced 4-polytopes: 4-simplices, tetrahedral diamonds and
//! 4-parallelotopes whose hyperfaces are null polyhedra.
//!
//! Hyperface volume normals are obtained by triangulating each hyperface
//! into tetrahedra from its first vertex and summing the Levi-Civita
//! contractions of the edge triples (one factor of 3! divided out per
//! tetrahedron), oriented outward. The outgoing normals of a closed polytope
//! sum to zero, and their pairwise scalar products carry the polytope's
//! volume and face areas through the Gram-matrix identities in [`gram_matrix`].

mod diamond;
mod gram;
mod parallelotope;
mod rank;
pub mod sample;
mod simplex;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::hyperplane::NullHyperplane;
use crate::mink::{causal_class, CausalClass, FourCovector, FourVector, Tolerance};
use crate::polyhedra::TimeSide;

pub use diamond::{base_tetra_volume, insphere, regular_diamond, tetrahedral_diamond};
pub use gram::{
    face_areas_from_gram, gram_matrix, volume_from_area_matrix, volume_from_gram, AreaMatrix,
    GramMatrix,
};
pub(crate) use parallelotope::regular_generators;
pub use parallelotope::{
    doubly_null_uniqueness_probe, parallelotope_from_generators, probe_doubly_null_constraints,
    regular_parallelotope, UniquenessReport,
};
pub use rank::dof_rank;
pub use simplex::{regular_simplex, simplex_from_hyperplanes, simplex_from_vertices};

/// The three supported polytope families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Simplex,
    Diamond,
    Parallelotope,
}

/// Causal type of a 2d face, named by its two incident hyperfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FacePair {
    PastPast,
    PastFuture,
    FutureFuture,
}

impl FacePair {
    fn of(a: TimeSide, b: TimeSide) -> Self {
        match (a, b) {
            (TimeSide::Past, TimeSide::Past) => FacePair::PastPast,
            (TimeSide::Future, TimeSide::Future) => FacePair::FutureFuture,
            _ => FacePair::PastFuture,
        }
    }

    fn flipped(self) -> Self {
        match self {
            FacePair::PastPast => FacePair::FutureFuture,
            FacePair::FutureFuture => FacePair::PastPast,
            FacePair::PastFuture => FacePair::PastFuture,
        }
    }
}

/// A null hyperface: its vertices, host plane, time side and outgoing
/// volume normal.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Hyperface {
    /// Vertex ids; 8-vertex hyperfaces are stored in corner-bit order so
    /// that `ids[1] - ids[0]`, `ids[2] - ids[0]` and `ids[4] - ids[0]` are
    /// the three edge generators.
    pub vertex_ids: Vec<usize>,
    pub plane: NullHyperplane,
    pub side: TimeSide,
    pub normal: FourCovector,
}

impl Hyperface {
    /// Triangulation into vertex-id tetrahedra.
    fn tets(&self) -> Vec<[usize; 4]> {
        match self.vertex_ids.len() {
            4 => vec![[
                self.vertex_ids[0],
                self.vertex_ids[1],
                self.vertex_ids[2],
                self.vertex_ids[3],
            ]],
            8 => kuhn_tets(&self.vertex_ids),
            n => unreachable!("hyperface with {n} vertices"),
        }
    }
}

/// Path triangulation of a combinatorial cube given its corners in bit order.
fn kuhn_tets(ids: &[usize]) -> Vec<[usize; 4]> {
    let mut tets = Vec::with_capacity(6);
    for perm in [
        [1, 2, 4],
        [1, 4, 2],
        [2, 1, 4],
        [2, 4, 1],
        [4, 1, 2],
        [4, 2, 1],
    ] {
        let mut corner = 0usize;
        let mut tet = [ids[0]; 4];
        for (step, inc) in perm.iter().enumerate() {
            corner |= inc;
            tet[step + 1] = ids[corner];
        }
        tets.push(tet);
    }
    tets
}

/// A 2d face with its two incident hyperfaces.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Face {
    pub vertex_ids: Vec<usize>,
    pub hyperfaces: (usize, usize),
    pub pair: FacePair,
}

/// A 1d edge with the (past, future) counts of its incident hyperfaces.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Edge {
    pub vertex_ids: (usize, usize),
    pub signature: (usize, usize),
}

/// A 4-polytope whose hyperfaces are all null polyhedra.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NullFaced4Polytope {
    pub family: Family,
    pub labels: Vec<String>,
    pub vertices: Vec<FourVector>,
    pub hyperfaces: Vec<Hyperface>,
    pub faces: Vec<Face>,
    pub edges: Vec<Edge>,
    pub tol: Tolerance,
}

/// Per-signature census of a polytope's hyperfaces, faces, edges and
/// vertices, normalized so that past counts come out at or below future
/// counts (time reversal applied when needed).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CausalProfile {
    pub hyperface_counts: (usize, usize),
    /// (past-past, past-future, future-future)
    pub face_counts: (usize, usize, usize),
    /// (past incidences, future incidences) -> multiplicity
    pub edge_histogram: BTreeMap<(usize, usize), usize>,
    pub vertex_histogram: BTreeMap<(usize, usize), usize>,
    pub time_reversed: bool,
    /// For simplices: every hyperface pair meets in exactly one face whose
    /// vertex set is the intersection of theirs.
    pub simplex_incidence_ok: Option<bool>,
}

pub(crate) fn centroid(points: &[FourVector]) -> FourVector {
    let mut c = FourVector::zero();
    for p in points {
        c = c + *p;
    }
    c * (1.0 / points.len() as f64)
}

/// Assemble hyperface planes, outgoing normals and causal labels, then
/// classify faces and edges. `nonnull_err` names the error for a hyperface
/// that fails to lie in a null hyperplane.
pub(crate) fn assemble(
    family: Family,
    labels: Vec<String>,
    vertices: Vec<FourVector>,
    hyperface_ids: Vec<Vec<usize>>,
    face_ids: Vec<(Vec<usize>, (usize, usize))>,
    edge_ids: Vec<(usize, usize)>,
    tol: &Tolerance,
    nonnull_err: impl Fn(usize) -> GeometryError,
) -> Result<NullFaced4Polytope> {
    for v in &vertices {
        if !v.is_finite() {
            return Err(GeometryError::NonFinite);
        }
    }
    let body_centroid = centroid(&vertices);

    let mut hyperfaces = Vec::with_capacity(hyperface_ids.len());
    for (k, ids) in hyperface_ids.iter().enumerate() {
        let pts: Vec<FourVector> = ids.iter().map(|&i| vertices[i]).collect();
        let witness = centroid(&pts) - body_centroid;
        let tets = match ids.len() {
            4 => vec![[ids[0], ids[1], ids[2], ids[3]]],
            8 => kuhn_tets(ids),
            _ => return Err(nonnull_err(k)),
        };
        let mut normal = FourCovector::new(0.0, 0.0, 0.0, 0.0);
        for tet in &tets {
            let a = vertices[tet[1]] - vertices[tet[0]];
            let b = vertices[tet[2]] - vertices[tet[0]];
            let c = vertices[tet[3]] - vertices[tet[0]];
            let w = crate::mink::epsilon_contract(&a, &b, &c);
            let pairing = w.pair(&witness);
            if pairing.abs() <= tol.rel_eps * w.euclidean_norm() * witness.euclidean_norm() {
                return Err(GeometryError::AmbiguousOrientation);
            }
            let oriented = if pairing > 0.0 { w } else { -w };
            normal = normal + oriented * (1.0 / 6.0);
        }
        if causal_class(&normal.raise(), tol) != CausalClass::Null {
            return Err(nonnull_err(k));
        }
        let plane = NullHyperplane::from_normal(&normal, &vertices[ids[0]], tol)
            .map_err(|_| nonnull_err(k))?;
        for &i in ids {
            if !plane.contains(&vertices[i], tol) {
                return Err(nonnull_err(k));
            }
        }
        let side = if normal.raise().t > 0.0 {
            TimeSide::Past
        } else {
            TimeSide::Future
        };
        hyperfaces.push(Hyperface {
            vertex_ids: ids.clone(),
            plane,
            side,
            normal,
        });
    }

    for (k, (a, b)) in edge_ids.iter().enumerate() {
        if causal_class(&(vertices[*b] - vertices[*a]), tol) != CausalClass::Spacelike {
            return Err(GeometryError::NonSpacelikeEdge(k));
        }
    }

    let mut faces = Vec::with_capacity(face_ids.len());
    for (ids, (ha, hb)) in face_ids {
        let e1 = vertices[ids[1]] - vertices[ids[0]];
        let e2 = vertices[ids[2]] - vertices[ids[0]];
        let g11 = crate::mink::minkowski_dot(&e1, &e1);
        let g22 = crate::mink::minkowski_dot(&e2, &e2);
        let g12 = crate::mink::minkowski_dot(&e1, &e2);
        let det = g11 * g22 - g12 * g12;
        if !(g11 > 0.0 && det > tol.rel_eps * g11 * g22) {
            return Err(GeometryError::NonSpacelikeFace);
        }
        let pair = FacePair::of(hyperfaces[ha].side, hyperfaces[hb].side);
        faces.push(Face {
            vertex_ids: ids,
            hyperfaces: (ha, hb),
            pair,
        });
    }

    let edges = edge_ids
        .into_iter()
        .map(|(a, b)| {
            let mut past = 0;
            let mut future = 0;
            for h in &hyperfaces {
                if h.vertex_ids.contains(&a) && h.vertex_ids.contains(&b) {
                    match h.side {
                        TimeSide::Past => past += 1,
                        TimeSide::Future => future += 1,
                    }
                }
            }
            Edge {
                vertex_ids: (a, b),
                signature: (past, future),
            }
        })
        .collect();

    Ok(NullFaced4Polytope {
        family,
        labels,
        vertices,
        hyperfaces,
        faces,
        edges,
        tol: *tol,
    })
}

impl NullFaced4Polytope {
    pub fn hyperface_count_by_side(&self) -> (usize, usize) {
        let past = self
            .hyperfaces
            .iter()
            .filter(|h| h.side == TimeSide::Past)
            .count();
        (past, self.hyperfaces.len() - past)
    }

    /// Outgoing hyperface normals in hyperface order.
    pub fn normals(&self) -> Vec<FourCovector> {
        self.hyperfaces.iter().map(|h| h.normal).collect()
    }

    /// The face at the intersection of two hyperfaces, if any.
    pub fn face_between(&self, ha: usize, hb: usize) -> Option<usize> {
        self.faces
            .iter()
            .position(|f| f.hyperfaces == (ha, hb) || f.hyperfaces == (hb, ha))
    }

    /// Geometric area of a face from the 2d Gram determinant of its edge
    /// vectors: triangles from three corners, parallelograms from the
    /// corner-bit layout.
    pub fn face_area_direct(&self, face: usize) -> f64 {
        let f = &self.faces[face];
        let v = |i: usize| self.vertices[f.vertex_ids[i]];
        let (e1, e2, factor) = match f.vertex_ids.len() {
            3 => (v(1) - v(0), v(2) - v(0), 0.5),
            4 => (v(1) - v(0), v(2) - v(0), 1.0),
            n => unreachable!("face with {n} vertices"),
        };
        let g11 = crate::mink::minkowski_dot(&e1, &e1);
        let g22 = crate::mink::minkowski_dot(&e2, &e2);
        let g12 = crate::mink::minkowski_dot(&e1, &e2);
        factor * (g11 * g22 - g12 * g12).max(0.0).sqrt()
    }

    /// Minkowski lengths of all edges.
    pub fn edge_lengths(&self) -> Vec<f64> {
        self.edges
            .iter()
            .map(|e| {
                (self.vertices[e.vertex_ids.1] - self.vertices[e.vertex_ids.0])
                    .norm_sq()
                    .sqrt()
            })
            .collect()
    }

    /// View a tetrahedral hyperface as a null tetrahedron.
    pub fn hyperface_tetrahedron(&self, k: usize) -> Result<crate::polyhedra::NullTetrahedron> {
        let ids = &self.hyperfaces[k].vertex_ids;
        if ids.len() != 4 {
            return Err(GeometryError::FamilyUnsupported(self.family));
        }
        crate::polyhedra::NullTetrahedron::build(
            [
                self.vertices[ids[0]],
                self.vertices[ids[1]],
                self.vertices[ids[2]],
                self.vertices[ids[3]],
            ],
            &self.tol,
        )
    }

    /// View an 8-vertex hyperface as a null parallelepiped.
    pub fn hyperface_parallelepiped(
        &self,
        k: usize,
    ) -> Result<crate::polyhedra::NullParallelepiped> {
        let ids = &self.hyperfaces[k].vertex_ids;
        if ids.len() != 8 {
            return Err(GeometryError::FamilyUnsupported(self.family));
        }
        let base = self.vertices[ids[0]];
        crate::polyhedra::NullParallelepiped::build(
            base,
            [
                self.vertices[ids[1]] - base,
                self.vertices[ids[2]] - base,
                self.vertices[ids[4]] - base,
            ],
            &self.tol,
        )
    }

    pub fn diameter(&self) -> f64 {
        let mut d = 0.0f64;
        for (i, p) in self.vertices.iter().enumerate() {
            for q in &self.vertices[i + 1..] {
                d = d.max((*p - *q).euclidean_norm());
            }
        }
        d
    }
}

/// 4-volume by simplicial decomposition from the first vertex: triangulate
/// every hyperface that misses it and sum |det| / 4! over the pyramids.
/// Independent of the Gram-matrix route; for parallelotopes it equals the
/// absolute determinant of the four generators.
pub fn hull_volume(p: &NullFaced4Polytope) -> f64 {
    let apex = p.vertices[0];
    let mut volume = 0.0;
    for h in &p.hyperfaces {
        if h.vertex_ids.contains(&0) {
            continue;
        }
        for tet in h.tets() {
            let t0 = p.vertices[tet[0]];
            let a = p.vertices[tet[1]] - t0;
            let b = p.vertices[tet[2]] - t0;
            let c = p.vertices[tet[3]] - t0;
            let d = apex - t0;
            volume += crate::mink::epsilon_contract(&a, &b, &c).pair(&d).abs() / 24.0;
        }
    }
    volume
}

/// Census of causal signatures, time-reversal normalized.
pub fn causal_profile(p: &NullFaced4Polytope) -> CausalProfile {
    let (past, future) = p.hyperface_count_by_side();
    let mut flip = past > future;
    if past == future {
        // orient so the earliest vertex sits on past hyperfaces
        let earliest = p
            .vertices
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.t.total_cmp(&b.1.t))
            .map(|(i, _)| i)
            .unwrap();
        let (vp, vf) = vertex_signature(p, earliest);
        flip = vf > vp;
    }

    let hyperface_counts = if flip { (future, past) } else { (past, future) };
    let mut face_counts = (0, 0, 0);
    for f in &p.faces {
        let pair = if flip { f.pair.flipped() } else { f.pair };
        match pair {
            FacePair::PastPast => face_counts.0 += 1,
            FacePair::PastFuture => face_counts.1 += 1,
            FacePair::FutureFuture => face_counts.2 += 1,
        }
    }

    let mut edge_histogram = BTreeMap::new();
    for e in &p.edges {
        let sig = if flip {
            (e.signature.1, e.signature.0)
        } else {
            e.signature
        };
        *edge_histogram.entry(sig).or_insert(0) += 1;
    }
    let mut vertex_histogram = BTreeMap::new();
    for v in 0..p.vertices.len() {
        let sig = vertex_signature(p, v);
        let sig = if flip { (sig.1, sig.0) } else { sig };
        *vertex_histogram.entry(sig).or_insert(0) += 1;
    }

    let simplex_incidence_ok = (p.family == Family::Simplex).then(|| {
        let n = p.hyperfaces.len();
        let mut ok = true;
        for a in 0..n {
            for b in a + 1..n {
                match p.face_between(a, b) {
                    None => ok = false,
                    Some(f) => {
                        let mut common: Vec<usize> = p.hyperfaces[a]
                            .vertex_ids
                            .iter()
                            .filter(|i| p.hyperfaces[b].vertex_ids.contains(i))
                            .copied()
                            .collect();
                        common.sort_unstable();
                        let mut ids = p.faces[f].vertex_ids.clone();
                        ids.sort_unstable();
                        ok &= common == ids;
                    }
                }
            }
        }
        ok
    });

    CausalProfile {
        hyperface_counts,
        face_counts,
        edge_histogram,
        vertex_histogram,
        time_reversed: flip,
        simplex_incidence_ok,
    }
}

fn vertex_signature(p: &NullFaced4Polytope, v: usize) -> (usize, usize) {
    let mut past = 0;
    let mut future = 0;
    for h in &p.hyperfaces {
        if h.vertex_ids.contains(&v) {
            match h.side {
                TimeSide::Past => past += 1,
                TimeSide::Future => future += 1,
            }
        }
    }
    (past, future)
}

/// Count past-future faces against past-past plus future-future ones.
///
/// In any tessellation of spacetime with null hyperfaces the two tallies
/// balance at every 2d face, so equality is a necessary condition for a
/// shape to tile; the simplex and the diamond both fail it, in opposite
/// directions.
pub fn tessellation_obstruction_check(p: &NullFaced4Polytope) -> (usize, usize, bool) {
    let mut pf = 0;
    let mut pp_ff = 0;
    for f in &p.faces {
        match f.pair {
            FacePair::PastFuture => pf += 1,
            _ => pp_ff += 1,
        }
    }
    (pf, pp_ff, pf == pp_ff)
}
