use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::color::SchemeMode;
use crate::render::{RenderOptions, DEFAULT_BASE_HEIGHT};
use crate::synth::SynthConfig;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Split {
    Train,
    Val1,
    Val2,
    Test1,
    Test2,
}

impl Split {
    /// Generation order; figure ids are assigned contiguously in this order.
    pub const ALL: [Split; 5] = [Split::Train, Split::Val1, Split::Val2, Split::Test1, Split::Test2];

    pub fn name(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Val1 => "val1",
            Split::Val2 => "val2",
            Split::Test1 => "test1",
            Split::Test2 => "test2",
        }
    }

    pub fn index(self) -> usize {
        Split::ALL.iter().position(|&s| s == self).expect("listed")
    }

    /// The second validation and test splits swap the color subsets.
    pub fn scheme_mode(self) -> SchemeMode {
        match self {
            Split::Val2 | Split::Test2 => SchemeMode::Alternated,
            Split::Train | Split::Val1 | Split::Test1 => SchemeMode::Training,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SplitCounts {
    pub train: u64,
    pub val1: u64,
    pub val2: u64,
    pub test1: u64,
    pub test2: u64,
}

impl Default for SplitCounts {
    fn default() -> Self {
        SplitCounts {
            train: 1000,
            val1: 200,
            val2: 200,
            test1: 200,
            test2: 200,
        }
    }
}

impl SplitCounts {
    pub fn get(&self, split: Split) -> u64 {
        match split {
            Split::Train => self.train,
            Split::Val1 => self.val1,
            Split::Val2 => self.val2,
            Split::Test1 => self.test1,
            Split::Test2 => self.test2,
        }
    }

    /// Only `split` gets figures.
    pub fn only(split: Split, count: u64) -> Self {
        let mut c = SplitCounts {
            train: 0,
            val1: 0,
            val2: 0,
            test1: 0,
            test2: 0,
        };
        match split {
            Split::Train => c.train = count,
            Split::Val1 => c.val1 = count,
            Split::Val2 => c.val2 = count,
            Split::Test1 => c.test1 = count,
            Split::Test2 => c.test2 = count,
        }
        c
    }

    pub fn total(&self) -> u64 {
        Split::ALL.iter().map(|&s| self.get(s)).sum()
    }
}

/// Everything that determines a corpus. Parsed from TOML:
///
/// ```toml
/// master_seed = 7
/// base_height = 256
/// per_segment_boxes = false
/// magnitude_factors = [1.0, 10.0, 100.0]
/// output_dir = "corpus"
///
/// [counts]
/// train = 1000
/// val1 = 200
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CorpusConfig {
    pub master_seed: u64,
    pub counts: SplitCounts,
    pub base_height: u32,
    pub per_segment_boxes: bool,
    pub magnitude_factors: Vec<f64>,
    pub output_dir: PathBuf,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            master_seed: 0,
            counts: SplitCounts::default(),
            base_height: DEFAULT_BASE_HEIGHT,
            per_segment_boxes: false,
            magnitude_factors: SynthConfig::default().magnitude_factors,
            output_dir: PathBuf::from("corpus"),
        }
    }
}

/// Smallest base height that leaves room for the largest font layout.
pub const MIN_BASE_HEIGHT: u32 = 128;
pub const MAX_BASE_HEIGHT: u32 = 4096;

impl CorpusConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: CorpusConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if !(MIN_BASE_HEIGHT..=MAX_BASE_HEIGHT).contains(&self.base_height) {
            return Err(Error::Config(format!(
                "base_height {} outside [{MIN_BASE_HEIGHT}, {MAX_BASE_HEIGHT}]",
                self.base_height
            )));
        }
        if self.counts.total() > u64::from(u32::MAX) {
            return Err(Error::Config("total figure count is too large".into()));
        }
        self.synth().validate()
    }

    pub fn synth(&self) -> SynthConfig {
        SynthConfig {
            magnitude_factors: self.magnitude_factors.clone(),
        }
    }

    pub fn render_options(&self) -> RenderOptions {
        RenderOptions {
            base_height: self.base_height,
            per_segment_boxes: self.per_segment_boxes,
        }
    }

    /// First figure id of `split`.
    pub fn first_id(&self, split: Split) -> u64 {
        Split::ALL[..split.index()].iter().map(|&s| self.counts.get(s)).sum()
    }
}
