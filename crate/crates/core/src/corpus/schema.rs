//! On-disk corpus files.
//!
//! ```text
//! manifest.json
//! <split>/images/<figure_id>.png
//! <split>/annotations.json
//! <split>/qa_pairs.json
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::{Split, SplitCounts};
use crate::color::{ColorEntry, ColorId, SchemeMode};
use crate::qa::QaPair;
use crate::render::{BoundingBox, Placement};
use crate::synth::FigureSpec;
use crate::{Error, Result};

pub const MANIFEST_FILE: &str = "manifest.json";
pub const ANNOTATIONS_FILE: &str = "annotations.json";
pub const QA_FILE: &str = "qa_pairs.json";
pub const IMAGES_DIR: &str = "images";
pub const SCHEMA_VERSION: u32 = 1;

/// Configuration as recorded in the manifest. The output directory is left
/// out so a corpus is byte-identical wherever it is written.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigEcho {
    pub master_seed: u64,
    pub counts: SplitCounts,
    pub base_height: u32,
    pub per_segment_boxes: bool,
    pub magnitude_factors: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorPartition {
    pub subset_a: Vec<ColorId>,
    pub subset_b: Vec<ColorId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitInfo {
    pub split: Split,
    pub scheme_mode: SchemeMode,
    /// Figure ids `first_figure_id .. first_figure_id + figure_count`.
    pub first_figure_id: u64,
    pub figure_count: u64,
    pub qa_count: u64,
    pub balance_seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub generator_version: String,
    pub config: ConfigEcho,
    pub color_table_version: String,
    pub font_version: u8,
    pub color_partition: ColorPartition,
    pub splits: Vec<SplitInfo>,
}

impl Manifest {
    pub fn split(&self, split: Split) -> Option<&SplitInfo> {
        self.splits.iter().find(|s| s.split == split)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FigureRecord {
    pub figure_id: u64,
    /// Relative to the split directory.
    pub image: String,
    pub width: u32,
    pub height: u32,
    pub source_data: FigureSpec,
    pub colors: Vec<ColorEntry>,
    pub legend: Placement,
    pub boxes: Vec<BoundingBox>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnotationsFile {
    pub split: Split,
    pub figures: Vec<FigureRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QaFile {
    pub split: Split,
    pub qa_pairs: Vec<QaPair>,
}

pub fn image_name(figure_id: u64) -> String {
    format!("{IMAGES_DIR}/{figure_id}.png")
}

pub fn split_dir(root: &Path, split: Split) -> PathBuf {
    root.join(split.name())
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("corpus types serialize");
    bytes.push(b'\n');
    bytes
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_slice(&bytes).map_err(|e| Error::format(path.display().to_string(), e))
}

/// Writes via a sibling temp file and rename so readers never see partial files.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, bytes).map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

pub fn read_manifest(root: &Path) -> Result<Manifest> {
    read_json(&root.join(MANIFEST_FILE))
}
