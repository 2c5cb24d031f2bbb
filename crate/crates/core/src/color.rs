//! The named color table and its A/B partition.

use std::collections::HashSet;
use std::fmt;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::seed;
use crate::synth::FigureType;
use crate::{Error, Result};

/// Frozen table of 100 X11 named colors, `id,name,r,g,b` per line.
pub const COLOR_TABLE_SOURCE: &str = include_str!("../assets/colors.txt");
pub const COLOR_TABLE_VERSION: &str = "x11-100-v1";
pub const COLOR_COUNT: usize = 100;
pub const SUBSET_SIZE: usize = COLOR_COUNT / 2;

/// Minimum Euclidean RGB distance from white used by the generator.
pub const DEFAULT_WHITE_DISTANCE: f64 = 100.0;

pub const WHITE: Rgb = Rgb([255, 255, 255]);
/// Text, axes and tick marks.
pub const INK: Rgb = Rgb([0, 0, 0]);
/// Gridlines and the legend frame.
pub const GRID: Rgb = Rgb([220, 220, 220]);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColorId(pub u16);

impl fmt::Display for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Rgb(pub [u8; 3]);

impl Rgb {
    pub fn distance(self, other: Rgb) -> f64 {
        self.0
            .iter()
            .zip(other.0)
            .map(|(&a, b)| {
                let d = f64::from(a) - f64::from(b);
                d * d
            })
            .sum::<f64>()
            .sqrt()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorEntry {
    pub id: ColorId,
    pub name: String,
    pub rgb: Rgb,
}

/// Validated, id-indexed color table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorTable {
    entries: Vec<ColorEntry>,
}

impl ColorTable {
    pub fn entries(&self) -> &[ColorEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, id: ColorId) -> Option<&ColorEntry> {
        self.entries.get(usize::from(id.0))
    }

    /// Panics on an unknown id; ids come from a validated spec.
    pub fn entry(&self, id: ColorId) -> &ColorEntry {
        self.get(id)
            .unwrap_or_else(|| panic!("color id {id} not in table"))
    }

    pub fn name(&self, id: ColorId) -> &str {
        &self.entry(id).name
    }

    pub fn rgb(&self, id: ColorId) -> Rgb {
        self.entry(id).rgb
    }

    pub fn ids(&self) -> impl Iterator<Item = ColorId> + '_ {
        self.entries.iter().map(|e| e.id)
    }
}

/// Parses `id,name,r,g,b` lines. Blank lines and `#` comments are skipped.
pub fn parse_color_table(text: &str) -> Result<Vec<ColorEntry>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: &str| Error::format("color table", format!("line {}: {msg}", lineno + 1));
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 5 {
            return Err(bad("expected 5 comma-separated fields"));
        }
        let id: u16 = fields[0].parse().map_err(|_| bad("bad id"))?;
        let mut rgb = [0u8; 3];
        for (slot, field) in rgb.iter_mut().zip(&fields[2..]) {
            *slot = field.parse().map_err(|_| bad("bad channel"))?;
        }
        out.push(ColorEntry {
            id: ColorId(id),
            name: fields[1].to_string(),
            rgb: Rgb(rgb),
        });
    }
    Ok(out)
}

/// Checks the table invariants against `threshold` and returns it indexed by id.
pub fn validate_color_table(entries: Vec<ColorEntry>, threshold: f64) -> Result<ColorTable> {
    if !(threshold > 0.0) {
        return Err(Error::Config(format!(
            "white-distance threshold must be positive, got {threshold}"
        )));
    }
    let passing = entries
        .iter()
        .filter(|e| e.rgb.distance(WHITE) >= threshold)
        .count();
    if passing < COLOR_COUNT || entries.len() != COLOR_COUNT {
        return Err(Error::Config(format!(
            "color table needs {COLOR_COUNT} colors at distance >= {threshold} from white; \
             {passing} of {} pass",
            entries.len()
        )));
    }
    let mut names = HashSet::new();
    let mut rgbs = HashSet::new();
    for (index, e) in entries.iter().enumerate() {
        if usize::from(e.id.0) != index {
            return Err(Error::Config(format!(
                "color ids must be 0..{COLOR_COUNT} in order; found {} at position {index}",
                e.id
            )));
        }
        if e.name.eq_ignore_ascii_case("white") {
            return Err(Error::Config("color table must not contain White".into()));
        }
        if e.rgb == INK || e.rgb == GRID {
            return Err(Error::Config(format!(
                "color {} collides with a reserved ink color",
                e.name
            )));
        }
        if !names.insert(e.name.as_str()) {
            return Err(Error::Config(format!("duplicate color name {}", e.name)));
        }
        if !rgbs.insert(e.rgb) {
            return Err(Error::Config(format!("duplicate rgb for {}", e.name)));
        }
    }
    Ok(ColorTable { entries })
}

/// Loads and validates the embedded table.
pub fn build_color_table(threshold: f64) -> Result<ColorTable> {
    validate_color_table(parse_color_table(COLOR_TABLE_SOURCE)?, threshold)
}

/// The embedded table at the default threshold.
pub fn default_color_table() -> ColorTable {
    build_color_table(DEFAULT_WHITE_DISTANCE).expect("embedded color table is valid")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeMode {
    Training,
    Alternated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subset {
    A,
    B,
}

impl Subset {
    fn swapped(self) -> Self {
        match self {
            Subset::A => Subset::B,
            Subset::B => Subset::A,
        }
    }
}

/// Subset a figure type draws from in the given mode.
pub fn subset_for(figure_type: FigureType, mode: SchemeMode) -> Subset {
    let training = match figure_type {
        FigureType::VerticalBar | FigureType::Line | FigureType::Pie => Subset::A,
        FigureType::HorizontalBar | FigureType::DotLine => Subset::B,
    };
    match mode {
        SchemeMode::Training => training,
        SchemeMode::Alternated => training.swapped(),
    }
}

/// Disjoint 50/50 partition of the color ids plus the active mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorScheme {
    pub subset_a: Vec<ColorId>,
    pub subset_b: Vec<ColorId>,
    pub mode: SchemeMode,
}

impl ColorScheme {
    pub fn with_mode(&self, mode: SchemeMode) -> Self {
        ColorScheme {
            mode,
            ..self.clone()
        }
    }

    pub fn subset(&self, subset: Subset) -> &[ColorId] {
        match subset {
            Subset::A => &self.subset_a,
            Subset::B => &self.subset_b,
        }
    }

    /// Ids a figure of this type may use under the scheme's mode, ascending.
    pub fn colors_for(&self, figure_type: FigureType) -> &[ColorId] {
        self.subset(subset_for(figure_type, self.mode))
    }

    pub fn validate(&self) -> Result<()> {
        let a: HashSet<_> = self.subset_a.iter().collect();
        let b: HashSet<_> = self.subset_b.iter().collect();
        let ok = a.len() == SUBSET_SIZE
            && b.len() == SUBSET_SIZE
            && self.subset_a.len() == SUBSET_SIZE
            && self.subset_b.len() == SUBSET_SIZE
            && a.is_disjoint(&b)
            && a.union(&b).all(|id| usize::from(id.0) < COLOR_COUNT);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(
                "color scheme must split 100 ids into two disjoint sets of 50".into(),
            ))
        }
    }
}

/// Seeded partition of the table into subsets A and B (mode `Training`).
pub fn split_colors(table: &ColorTable, seed: u64) -> Result<ColorScheme> {
    if table.len() != COLOR_COUNT {
        return Err(Error::InvalidInput(format!(
            "expected {COLOR_COUNT} colors, got {}",
            table.len()
        )));
    }
    let mut ids: Vec<ColorId> = table.ids().collect();
    ids.shuffle(&mut seed::rng(seed::hash64(seed, seed::tag::COLOR_SPLIT)));
    let (a, b) = ids.split_at(SUBSET_SIZE);
    let mut subset_a = a.to_vec();
    let mut subset_b = b.to_vec();
    subset_a.sort_unstable();
    subset_b.sort_unstable();
    Ok(ColorScheme {
        subset_a,
        subset_b,
        mode: SchemeMode::Training,
    })
}
