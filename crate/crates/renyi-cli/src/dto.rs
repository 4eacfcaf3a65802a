//! JSON data model. Every command's JSON output deserializes back into
//! the same structures; entropies are stored in the base recorded in the
//! `base` field.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyOut {
    pub base: String,
    pub dist: Vec<f64>,
    pub entropies: Vec<EntropyRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyRow {
    pub order: String,
    pub entropy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessComponent {
    pub support: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundOut {
    pub base: String,
    pub orders: Vec<String>,
    pub h: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub side: String,
    pub bound: f64,
    pub attained: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<WitnessComponent>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveOut {
    pub base: String,
    pub orders: Vec<String>,
    pub n: usize,
    pub closed: bool,
    pub segments: Vec<CurveSegmentOut>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSegmentOut {
    pub from_support: usize,
    pub to_support: usize,
    pub points: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceOut {
    pub base: String,
    pub orders: Vec<String>,
    pub n: usize,
    pub resolution: usize,
    pub sheets: Vec<SheetOut>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SheetOut {
    /// "upper" or "lower" (the side of the H3 sandwich it is tight for).
    pub sheet: String,
    pub vertices: Vec<[f64; 3]>,
    /// Simplex label per vertex, descending supports.
    pub vertex_labels: Vec<[usize; 3]>,
    pub triangles: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOut {
    pub base: String,
    pub orders: Vec<String>,
    pub n: usize,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<u64>,
    pub seed: u64,
    pub tolerance: f64,
    pub total_checked: u64,
    pub violations: Vec<ViolationOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub envelope: Option<EnvelopeOut>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationOut {
    pub sample_index: u64,
    pub kind: String,
    pub bound: f64,
    pub observed: f64,
    pub excess: f64,
    pub dist: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeOut {
    pub bin_width: f64,
    pub bins: Vec<EnvelopeBinOut>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeBinOut {
    pub index: i64,
    pub h1_center: f64,
    pub min_h2: f64,
    pub max_h2: f64,
    pub count: u64,
}
