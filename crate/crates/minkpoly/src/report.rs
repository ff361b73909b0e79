//! Machine-readable check reports and the versioned export envelope.
//!
//! Every command writes one envelope `{meta, shape?, block?, lattice?,
//! report?}`. Geometry arrays are flat numeric lists with an explicit field
//! order; numbers serialize with round-trip-exact precision. Output is
//! byte-deterministic for a fixed command line apart from the timestamp
//! line in `meta`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::mink::FourVector;
use crate::polyhedra::TimeSide;
use crate::polytopes::{
    causal_profile, hull_volume, tessellation_obstruction_check, CausalProfile, Family,
    NullFaced4Polytope,
};
use crate::tiling::{LightrayLattice, TilingBlock};

pub const SCHEMA_VERSION: &str = "1";

/// One verification record: a named quantity, what it should be, what it
/// came out as, and the tolerance of the comparison.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub tolerance: f64,
    pub pass: bool,
}

/// A tally of check records; the exit status of `verify` is nonzero
/// exactly when `failed > 0`.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Report {
    pub records: Vec<CheckRecord>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: CheckRecord) {
        if record.pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.records.push(record);
    }

    /// Relative comparison against a nonzero expected value.
    pub fn check_rel(&mut self, name: &str, expected: f64, actual: f64, rel_tol: f64) {
        let pass = (actual - expected).abs() <= rel_tol * expected.abs().max(f64::MIN_POSITIVE);
        self.push(CheckRecord {
            name: name.to_string(),
            expected: Value::from(expected),
            actual: Value::from(actual),
            tolerance: rel_tol,
            pass,
        });
    }

    /// Upper bound on a residual-like quantity.
    pub fn check_le(&mut self, name: &str, actual: f64, bound: f64) {
        self.push(CheckRecord {
            name: name.to_string(),
            expected: Value::from(format!("<= {bound:e}")),
            actual: Value::from(actual),
            tolerance: bound,
            pass: actual <= bound,
        });
    }

    /// Exact comparison of a count or flag rendered as a string.
    pub fn check_exact(&mut self, name: &str, expected: impl ToString, actual: impl ToString) {
        let (e, a) = (expected.to_string(), actual.to_string());
        let pass = e == a;
        self.push(CheckRecord {
            name: name.to_string(),
            expected: Value::from(e),
            actual: Value::from(a),
            tolerance: 0.0,
            pass,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// One `PASS`/`FAIL` line per record.
    pub fn render_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&format!(
                "{} {}: expected {}, actual {} (tol {:e})\n",
                if r.pass { "PASS" } else { "FAIL" },
                r.name,
                r.expected,
                r.actual,
                r.tolerance
            ));
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Meta {
    pub schema_version: String,
    pub tool: String,
    pub tool_version: String,
    pub command: String,
    pub timestamp_unix: u64,
}

impl Meta {
    pub fn new(command: String) -> Self {
        let timestamp_unix = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            tool: "minkpoly".to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            timestamp_unix,
        }
    }
}

/// Causal census in an export-friendly layout.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProfileExport {
    pub hyperfaces: [usize; 2],
    pub faces: [usize; 3],
    /// Rows of (past incidences, future incidences, count).
    pub edges: Vec<[usize; 3]>,
    pub vertices: Vec<[usize; 3]>,
    pub time_reversed: bool,
}

impl From<&CausalProfile> for ProfileExport {
    fn from(p: &CausalProfile) -> Self {
        let rows = |m: &std::collections::BTreeMap<(usize, usize), usize>| {
            m.iter().map(|((a, b), c)| [*a, *b, *c]).collect()
        };
        Self {
            hyperfaces: [p.hyperface_counts.0, p.hyperface_counts.1],
            faces: [p.face_counts.0, p.face_counts.1, p.face_counts.2],
            edges: rows(&p.edge_histogram),
            vertices: rows(&p.vertex_histogram),
            time_reversed: p.time_reversed,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HyperfaceExport {
    pub vertex_ids: Vec<usize>,
    pub side: TimeSide,
    pub normal: [f64; 4],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FaceExport {
    pub vertex_ids: Vec<usize>,
    pub hyperfaces: (usize, usize),
    pub pair: String,
    pub area: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeExport {
    pub vertex_ids: (usize, usize),
    pub signature: (usize, usize),
    pub length: f64,
}

/// A polytope with its combinatorics, causal labels and metric summary.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ShapeExport {
    pub family: Family,
    pub field_order: [String; 4],
    pub labels: Vec<String>,
    pub vertices: Vec<[f64; 4]>,
    pub hyperfaces: Vec<HyperfaceExport>,
    pub faces: Vec<FaceExport>,
    pub edges: Vec<EdgeExport>,
    pub volume: f64,
    pub profile: ProfileExport,
    /// (past-future faces, past-past plus future-future faces, tileable)
    pub obstruction: (usize, usize, bool),
}

pub fn field_order() -> [String; 4] {
    ["t".into(), "x".into(), "y".into(), "z".into()]
}

impl ShapeExport {
    pub fn from_polytope(p: &NullFaced4Polytope) -> Self {
        let pair_name = |pair: crate::polytopes::FacePair| match pair {
            crate::polytopes::FacePair::PastPast => "past-past",
            crate::polytopes::FacePair::PastFuture => "past-future",
            crate::polytopes::FacePair::FutureFuture => "future-future",
        };
        Self {
            family: p.family,
            field_order: field_order(),
            labels: p.labels.clone(),
            vertices: p.vertices.iter().map(FourVector::as_array).collect(),
            hyperfaces: p
                .hyperfaces
                .iter()
                .map(|h| HyperfaceExport {
                    vertex_ids: h.vertex_ids.clone(),
                    side: h.side,
                    normal: h.normal.as_array(),
                })
                .collect(),
            faces: p
                .faces
                .iter()
                .enumerate()
                .map(|(i, f)| FaceExport {
                    vertex_ids: f.vertex_ids.clone(),
                    hyperfaces: f.hyperfaces,
                    pair: pair_name(f.pair).to_string(),
                    area: p.face_area_direct(i),
                })
                .collect(),
            edges: p
                .edges
                .iter()
                .map(|e| EdgeExport {
                    vertex_ids: e.vertex_ids,
                    signature: e.signature,
                    length: (p.vertices[e.vertex_ids.1] - p.vertices[e.vertex_ids.0])
                        .norm_sq()
                        .sqrt(),
                })
                .collect(),
            volume: hull_volume(p),
            profile: ProfileExport::from(&causal_profile(p)),
            obstruction: tessellation_obstruction_check(p),
        }
    }
}

/// A null polyhedron (tetrahedron or parallelepiped) with its planar image.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyhedronExport {
    pub kind: String,
    pub field_order: [String; 4],
    pub vertices: Vec<[f64; 4]>,
    pub host_normal: [f64; 4],
    pub host_offset: f64,
    pub planar_image: Vec<[f64; 2]>,
    pub signed_face_areas: Vec<f64>,
    pub edge_lengths: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub doubly_null: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellExport {
    pub index: [i64; 4],
    pub vertex_ids: [usize; 16],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockExport {
    pub extent: [usize; 4],
    pub scale: f64,
    pub field_order: [String; 4],
    pub cell_count: usize,
    pub vertex_count: usize,
    pub face_count: usize,
    pub vertices: Vec<[f64; 4]>,
    pub vertex_keys: Vec<[i64; 4]>,
    pub cells: Vec<CellExport>,
    pub interior_faces: usize,
    pub boundary_faces: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SegmentExport {
    pub from: usize,
    pub to: usize,
    pub direction: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeExport {
    pub field_order: [String; 4],
    pub nodes: Vec<[f64; 4]>,
    pub node_keys: Vec<[i64; 4]>,
    pub segments: Vec<SegmentExport>,
    pub ray_directions: [[f64; 4]; 4],
    pub cosine_matrix: [[f64; 4]; 4],
    /// (future-going, past-going) -> node count
    pub degree_histogram: Vec<((usize, usize), usize)>,
}

impl BlockExport {
    pub fn from_block(block: &TilingBlock, report: &crate::tiling::LightcrossReport) -> Self {
        Self {
            extent: block.extent,
            scale: block.scale,
            field_order: field_order(),
            cell_count: block.cells.len(),
            vertex_count: block.vertices.len(),
            face_count: block.faces.len(),
            vertices: block.vertices.iter().map(FourVector::as_array).collect(),
            vertex_keys: block.vertex_keys.clone(),
            cells: block
                .cells
                .iter()
                .map(|c| CellExport {
                    index: c.index,
                    vertex_ids: c.vertex_ids,
                })
                .collect(),
            interior_faces: report.interior_faces,
            boundary_faces: report.boundary_faces,
        }
    }
}

impl LatticeExport {
    pub fn from_lattice(lat: &LightrayLattice, cosines: [[f64; 4]; 4]) -> Self {
        let mut hist: std::collections::BTreeMap<(usize, usize), usize> =
            std::collections::BTreeMap::new();
        for d in lat.degrees() {
            *hist.entry(d).or_insert(0) += 1;
        }
        Self {
            field_order: field_order(),
            nodes: lat.nodes.iter().map(FourVector::as_array).collect(),
            node_keys: lat.node_keys.clone(),
            segments: lat
                .segments
                .iter()
                .map(|s| SegmentExport {
                    from: s.from,
                    to: s.to,
                    direction: s.direction,
                })
                .collect(),
            ray_directions: [
                lat.ray_directions[0].as_array(),
                lat.ray_directions[1].as_array(),
                lat.ray_directions[2].as_array(),
                lat.ray_directions[3].as_array(),
            ],
            cosine_matrix: cosines,
            degree_histogram: hist.into_iter().collect(),
        }
    }
}

/// The single output document of every command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Envelope {
    pub meta: Meta,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<ShapeExport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polyhedron: Option<PolyhedronExport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block: Option<BlockExport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeExport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
}

impl Envelope {
    pub fn new(command: String) -> Self {
        Self {
            meta: Meta::new(command),
            shape: None,
            polyhedron: None,
            block: None,
            lattice: None,
            report: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelope serializes");
        s.push('\n');
        s
    }
}

/// CSV rendering of the vertex table of a shape export.
pub fn vertices_csv(labels: &[String], vertices: &[[f64; 4]]) -> String {
    let mut out = String::from("label,t,x,y,z\n");
    for (l, v) in labels.iter().zip(vertices) {
        out.push_str(&format!("{l},{},{},{},{}\n", v[0], v[1], v[2], v[3]));
    }
    out
}

/// CSV rendering of the check records of a report.
pub fn report_csv(report: &Report) -> String {
    let mut out = String::from("name,expected,actual,tolerance,pass\n");
    for r in &report.records {
        let clean = |v: &Value| v.to_string().replace(',', ";");
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.name,
            clean(&r.expected),
            clean(&r.actual),
            r.tolerance,
            r.pass
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_tallies_match_records() {
        let mut r = Report::new();
        r.check_rel("volume", 1.0, 1.0 + 1e-12, 1e-9);
        r.check_le("residual", 1e-11, 1e-10);
        r.check_exact("count", 5, 6);
        assert_eq!(r.passed, 2);
        assert_eq!(r.failed, 1);
        assert!(!r.all_passed());
        assert_eq!(r.records.len(), 3);
        let lines = r.render_lines();
        assert!(lines.contains("FAIL count"));
        assert!(lines.ends_with("2 passed, 1 failed\n"));
    }

    #[test]
    fn envelope_roundtrips_through_json() {
        let s = crate::polytopes::regular_simplex(1.0).unwrap();
        let mut env = Envelope::new("build simplex --scale 1".into());
        env.shape = Some(ShapeExport::from_polytope(&s));
        let json = env.to_json();
        let back: Envelope = serde_json::from_str(&json).unwrap();
        let shape = back.shape.unwrap();
        assert_eq!(shape.labels.len(), 5);
        assert_eq!(shape.vertices[2], [0.0, 0.0, 2.0, 0.0]);
        // round-trip-exact numeric serialization
        assert_eq!(shape.volume, hull_volume(&s));
    }
}
