//! Figure source-data sampling.
//!
//! A [`FigureSpec`] is a pure function of `(figure type, figure id, color
//! scheme, master seed, attempt)`. Bar charts and pies store one [`Series`]
//! per bar or slice, each holding a single point; line charts store one
//! series per curve, all on a shared x-grid.

use std::ops::RangeInclusive;

use rand::seq::index;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::color::{ColorId, ColorScheme};
use crate::qa::metrics::{self, pairwise_separated};
use crate::{seed, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FigureType {
    VerticalBar,
    HorizontalBar,
    Line,
    DotLine,
    Pie,
}

impl FigureType {
    pub const ALL: [FigureType; 5] = [
        FigureType::VerticalBar,
        FigureType::HorizontalBar,
        FigureType::Line,
        FigureType::DotLine,
        FigureType::Pie,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureType::VerticalBar => "vertical_bar",
            FigureType::HorizontalBar => "horizontal_bar",
            FigureType::Line => "line",
            FigureType::DotLine => "dot_line",
            FigureType::Pie => "pie",
        }
    }

    pub fn is_bar(self) -> bool {
        matches!(self, FigureType::VerticalBar | FigureType::HorizontalBar)
    }

    pub fn is_line(self) -> bool {
        matches!(self, FigureType::Line | FigureType::DotLine)
    }

    /// Shapes this type may be sampled with.
    pub fn shapes(self) -> &'static [ShapeFunction] {
        use ShapeFunction::*;
        match self {
            FigureType::VerticalBar | FigureType::HorizontalBar => &[UniformRandom, Linear, BellShape],
            FigureType::Line | FigureType::DotLine => &[Linear, LinearNoise, Quadratic],
            FigureType::Pie => &[None],
        }
    }

    /// Number of [`Series`]: colored bars for bar types, curves, or slices.
    pub fn series_range(self) -> RangeInclusive<usize> {
        if self.is_bar() {
            2..=10
        } else {
            2..=7
        }
    }

    /// Points per series.
    pub fn point_range(self) -> RangeInclusive<usize> {
        if self.is_line() {
            5..=20
        } else {
            1..=1
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeFunction {
    UniformRandom,
    Linear,
    BellShape,
    LinearNoise,
    Quadratic,
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub color_id: ColorId,
    pub x_values: Vec<f64>,
    pub y_values: Vec<f64>,
}

/// Number of selectable font sizes.
pub const FONT_SIZES: u8 = 4;
/// Number of line dash patterns.
pub const LINE_STYLES: u8 = 5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StyleParams {
    pub width_to_height: f64,
    pub font_size_index: u8,
    pub gridlines: bool,
    pub legend_inside: bool,
    /// Side used when the legend goes outside the plot area: right if set, else below.
    pub legend_right: bool,
    /// One dash pattern per series; empty for bar and pie figures.
    pub line_style_ids: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FigureSpec {
    pub figure_id: u64,
    pub figure_type: FigureType,
    pub series: Vec<Series>,
    pub shape: ShapeFunction,
    /// Scale applied to the base value range [1, 10].
    pub magnitude: f64,
    pub style: StyleParams,
    pub seed: u64,
}

impl FigureSpec {
    pub fn color_ids(&self) -> impl Iterator<Item = ColorId> + '_ {
        self.series.iter().map(|s| s.color_id)
    }

    /// Per-series scalar for bar and pie figures.
    pub fn values(&self) -> Vec<f64> {
        self.series.iter().map(|s| s.y_values[0]).collect()
    }

    /// Structural invariant violations, empty when the spec is well formed.
    pub fn structural_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let t = self.figure_type;
        if !t.series_range().contains(&self.series.len()) {
            out.push(format!(
                "{} series outside {:?} for {}",
                self.series.len(),
                t.series_range(),
                t.name()
            ));
        }
        if !t.shapes().contains(&self.shape) {
            out.push(format!("shape {:?} not admissible for {}", self.shape, t.name()));
        }
        let mut ids: Vec<_> = self.color_ids().collect();
        ids.sort();
        ids.dedup();
        if ids.len() != self.series.len() {
            out.push("color ids repeat within the figure".into());
        }
        for s in &self.series {
            if s.x_values.len() != s.y_values.len() {
                out.push(format!("series {} has mismatched x/y lengths", s.color_id));
            }
            if !t.point_range().contains(&s.y_values.len()) {
                out.push(format!(
                    "series {} has {} points outside {:?}",
                    s.color_id,
                    s.y_values.len(),
                    t.point_range()
                ));
            }
            if s.x_values.windows(2).any(|w| !(w[1] > w[0])) {
                out.push(format!("series {} x-values not increasing", s.color_id));
            }
            if s.y_values.iter().any(|v| !v.is_finite()) {
                out.push(format!("series {} has non-finite values", s.color_id));
            }
        }
        if t.is_line() {
            if let Some(first) = self.series.first() {
                if self.series.iter().any(|s| s.x_values != first.x_values) {
                    out.push("curves do not share one x-grid".into());
                }
            }
            if self.style.line_style_ids.len() != self.series.len()
                || self.style.line_style_ids.iter().any(|&id| id >= LINE_STYLES)
            {
                out.push("line style ids missing or out of range".into());
            }
        }
        if t == FigureType::Pie {
            let sum: f64 = self.series.iter().map(|s| s.y_values[0]).sum();
            if (sum - 1.0).abs() > 1e-9 {
                out.push(format!("pie fractions sum to {sum}"));
            }
            if self
                .series
                .iter()
                .any(|s| s.y_values[0] < MIN_PIE_FRACTION - 1e-12)
            {
                out.push("pie slice below minimum fraction".into());
            }
        }
        let st = &self.style;
        if !(1.0..=2.0).contains(&st.width_to_height) {
            out.push(format!("width/height ratio {} outside [1, 2]", st.width_to_height));
        }
        if st.font_size_index >= FONT_SIZES {
            out.push(format!("font size index {}", st.font_size_index));
        }
        out
    }

    /// Colors outside the subset the scheme assigns to this figure type.
    pub fn scheme_violations(&self, scheme: &ColorScheme) -> Vec<ColorId> {
        let allowed = scheme.colors_for(self.figure_type);
        self.color_ids().filter(|id| !allowed.contains(id)).collect()
    }
}

/// Base range of sampled values before the magnitude factor.
pub const BASE_VALUE_RANGE: (f64, f64) = (1.0, 10.0);
pub const MIN_PIE_FRACTION: f64 = 0.03;
const MAX_POINTS: usize = 20;
const MAX_DATA_DRAWS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ValueRange {
    pub min: f64,
    pub max: f64,
}

impl ValueRange {
    pub fn scaled(factor: f64) -> Self {
        ValueRange {
            min: BASE_VALUE_RANGE.0 * factor,
            max: BASE_VALUE_RANGE.1 * factor,
        }
    }

    pub fn span(&self) -> f64 {
        self.max - self.min
    }

    fn clip(&self, v: f64) -> f64 {
        v.clamp(self.min, self.max)
    }
}

/// Draws `n_points` values of the given shape on an equally spaced grid.
pub fn sample_shape(
    shape: ShapeFunction,
    n_points: usize,
    range: ValueRange,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<f64>> {
    if !(2..=MAX_POINTS).contains(&n_points) {
        return Err(Error::InvalidInput(format!(
            "shape sampling needs 2..={MAX_POINTS} points, got {n_points}"
        )));
    }
    if !(range.max > range.min) {
        return Err(Error::InvalidInput("empty value range".into()));
    }
    let t = |i: usize| i as f64 / (n_points - 1) as f64;
    let r = range.span();
    let values: Vec<f64> = match shape {
        ShapeFunction::UniformRandom => (0..n_points)
            .map(|_| rng.gen_range(range.min..=range.max))
            .collect(),
        ShapeFunction::Linear => {
            let start = rng.gen_range(range.min..=range.max);
            let end = rng.gen_range(range.min..=range.max);
            (0..n_points).map(|i| start + (end - start) * t(i)).collect()
        }
        ShapeFunction::BellShape => {
            let mu = rng.gen_range(0.0..=1.0);
            let sigma = rng.gen_range(0.1..=0.5);
            let base = rng.gen_range(range.min..=range.min + 0.3 * r);
            let amp = rng.gen_range(0.3..=1.0) * (range.max - base);
            (0..n_points)
                .map(|i| {
                    let d = t(i) - mu;
                    base + amp * (-(d * d) / (2.0 * sigma * sigma)).exp()
                })
                .collect()
        }
        ShapeFunction::LinearNoise => {
            let lo = range.min + 0.1 * r;
            let hi = range.max - 0.1 * r;
            let start = rng.gen_range(lo..=hi);
            let end = rng.gen_range(lo..=hi);
            (0..n_points)
                .map(|i| start + (end - start) * t(i) + rng.gen_range(-0.1 * r..=0.1 * r))
                .collect()
        }
        ShapeFunction::Quadratic => {
            // Parabola through three uniform values at t = 0, 1/2, 1.
            let q0 = rng.gen_range(range.min..=range.max);
            let q1 = rng.gen_range(range.min..=range.max);
            let q2 = rng.gen_range(range.min..=range.max);
            let a = 2.0 * (q2 - 2.0 * q1 + q0);
            let b = q2 - q0 - a;
            let c = q0;
            let p = |t: f64| a * t * t + b * t + c;
            // Extremes over [0, 1] decide an affine squeeze around the range centre.
            let mut lo = q0.min(q2);
            let mut hi = q0.max(q2);
            if a != 0.0 {
                let vertex = -b / (2.0 * a);
                if (0.0..=1.0).contains(&vertex) {
                    lo = lo.min(p(vertex));
                    hi = hi.max(p(vertex));
                }
            }
            let mid = (range.min + range.max) / 2.0;
            let mut k: f64 = 1.0;
            if hi > range.max {
                k = k.min((range.max - mid) / (hi - mid));
            }
            if lo < range.min {
                k = k.min((mid - range.min) / (mid - lo));
            }
            (0..n_points).map(|i| mid + k * (p(t(i)) - mid)).collect()
        }
        ShapeFunction::None => {
            return Err(Error::InvalidInput("shape None has no values".into()));
        }
    };
    Ok(values.into_iter().map(|v| range.clip(v)).collect())
}

/// Sampling knobs that are part of the corpus configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub magnitude_factors: Vec<f64>,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            magnitude_factors: vec![1.0, 10.0, 100.0],
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        if self.magnitude_factors.is_empty()
            || self
                .magnitude_factors
                .iter()
                .any(|f| !(f.is_finite() && *f > 0.0))
        {
            return Err(Error::Config(
                "magnitude_factors must be a non-empty list of positive numbers".into(),
            ));
        }
        Ok(())
    }
}

/// Samples a figure with the default configuration on its first attempt.
pub fn sample_figure(
    figure_type: FigureType,
    figure_id: u64,
    scheme: &ColorScheme,
    master_seed: u64,
) -> Result<FigureSpec> {
    sample_figure_with(&SynthConfig::default(), figure_type, figure_id, scheme, master_seed, 0)
}

/// Samples a figure. `attempt` selects an independent redraw of the same figure id.
pub fn sample_figure_with(
    config: &SynthConfig,
    figure_type: FigureType,
    figure_id: u64,
    scheme: &ColorScheme,
    master_seed: u64,
    attempt: u32,
) -> Result<FigureSpec> {
    config.validate()?;
    scheme.validate()?;
    let fig_seed = seed::attempt_seed(master_seed, figure_id, attempt);
    let mut rng = seed::rng(fig_seed);

    let magnitude = config.magnitude_factors[rng.gen_range(0..config.magnitude_factors.len())];
    let range = ValueRange::scaled(magnitude);
    let n_series = rng.gen_range(figure_type.series_range());
    let shapes = figure_type.shapes();
    let shape = shapes[rng.gen_range(0..shapes.len())];

    let pool = scheme.colors_for(figure_type);
    let colors: Vec<ColorId> = index::sample(&mut rng, pool.len(), n_series)
        .into_iter()
        .map(|i| pool[i])
        .collect();

    let mut series = None;
    for _ in 0..MAX_DATA_DRAWS {
        let candidate = sample_data(figure_type, shape, range, &colors, &mut rng)?;
        if answers_unambiguous(figure_type, shape, &candidate) {
            series = Some(candidate);
            break;
        }
    }
    let series = series.ok_or_else(|| Error::Generation {
        figure_id,
        seed: fig_seed,
        attempts: attempt + 1,
        reason: "could not draw data with distinct derived values".into(),
    })?;

    let style = StyleParams {
        width_to_height: rng.gen_range(1.0..=2.0),
        font_size_index: rng.gen_range(0..FONT_SIZES),
        gridlines: rng.gen_bool(0.5),
        legend_inside: rng.gen_bool(0.5),
        legend_right: rng.gen_bool(0.5),
        line_style_ids: if figure_type.is_line() {
            (0..n_series).map(|_| rng.gen_range(0..LINE_STYLES)).collect()
        } else {
            Vec::new()
        },
    };

    Ok(FigureSpec {
        figure_id,
        figure_type,
        series,
        shape,
        magnitude,
        style,
        seed: fig_seed,
    })
}

fn sample_data(
    figure_type: FigureType,
    shape: ShapeFunction,
    range: ValueRange,
    colors: &[ColorId],
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Series>> {
    let single = |(i, (&color_id, value)): (usize, (&ColorId, f64))| Series {
        color_id,
        x_values: vec![i as f64],
        y_values: vec![value],
    };
    Ok(match figure_type {
        FigureType::VerticalBar | FigureType::HorizontalBar => {
            let values = sample_shape(shape, colors.len(), range, rng)?;
            colors.iter().zip(values).enumerate().map(single).collect()
        }
        FigureType::Pie => {
            let weights: Vec<f64> = colors.iter().map(|_| rng.gen_range(0.0..1.0)).collect();
            let total: f64 = weights.iter().sum::<f64>().max(f64::MIN_POSITIVE);
            let free = 1.0 - MIN_PIE_FRACTION * colors.len() as f64;
            let fractions = weights.iter().map(|w| MIN_PIE_FRACTION + free * w / total);
            colors.iter().zip(fractions).enumerate().map(single).collect()
        }
        FigureType::Line | FigureType::DotLine => {
            let n_points = rng.gen_range(figure_type.point_range());
            let start = rng.gen_range(0.0..=100.0);
            let span = rng.gen_range(10.0..=100.0);
            let x: Vec<f64> = (0..n_points)
                .map(|i| start + span * i as f64 / (n_points - 1) as f64)
                .collect();
            let mut out = Vec::with_capacity(colors.len());
            for &color_id in colors {
                out.push(Series {
                    color_id,
                    x_values: x.clone(),
                    y_values: sample_shape(shape, n_points, range, rng)?,
                });
            }
            out
        }
    })
}

/// Every derived quantity a question compares must be distinct across elements.
///
/// Linear curves all have zero roughness; smoothness questions are skipped
/// for them instead (see [`crate::qa::roughness_questions_apply`]).
fn answers_unambiguous(figure_type: FigureType, shape: ShapeFunction, series: &[Series]) -> bool {
    if !figure_type.is_line() {
        let values: Vec<f64> = series.iter().map(|s| s.y_values[0]).collect();
        return pairwise_separated(&values);
    }
    let summaries: Vec<_> = series.iter().map(metrics::summarize).collect();
    let collect = |f: fn(&metrics::ElementSummary) -> f64| -> Vec<f64> {
        summaries.iter().map(f).collect()
    };
    let ok = pairwise_separated(&collect(|s| s.auc.unwrap_or(f64::NAN)))
        && pairwise_separated(&collect(|s| s.min_y))
        && pairwise_separated(&collect(|s| s.max_y));
    ok && (shape == ShapeFunction::Linear
        || pairwise_separated(&collect(|s| s.roughness.unwrap_or(f64::NAN))))
}
