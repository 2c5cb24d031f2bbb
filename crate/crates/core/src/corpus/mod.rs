//! Corpus orchestration: splits, on-disk layout, validation and statistics.

mod config;
mod generate;
pub mod oracle;
mod schema;
mod stats;
mod validate;

pub use config::{CorpusConfig, Split, SplitCounts, MAX_BASE_HEIGHT, MIN_BASE_HEIGHT};
pub use generate::{
    balance_seed, figure_type_for, generate_corpus, generate_figure, generate_split, FigureOutput, SplitOutput,
    MAX_ATTEMPTS,
};
pub use schema::{
    image_name, read_json, read_manifest, split_dir, to_json, AnnotationsFile, ColorPartition, ConfigEcho,
    FigureRecord, Manifest, QaFile, SplitInfo, ANNOTATIONS_FILE, IMAGES_DIR, MANIFEST_FILE, QA_FILE, SCHEMA_VERSION,
};
pub use stats::{corpus_stats, CorpusStats, SplitStats, TemplateStats};
pub use validate::{
    check_boxes, validate_corpus, SplitValidation, TemplateCount, ValidationReport, PIXEL_SAMPLE_STRIDE,
};
