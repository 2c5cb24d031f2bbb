//! Rasterizes a [`FigureSpec`] into a PNG plus one tight bounding box per
//! visible element.
//!
//! Layout, top to bottom: title, plot area with axes and tick labels, x-axis
//! label, and the legend either inside the plot area or outside it (right or
//! below). Paint order is gridlines, data, axes, tick labels, axis labels,
//! title, legend, so boxes reflect what remains visible.

mod canvas;
mod font;
mod legend;
mod png;
mod ticks;

pub use canvas::{BoundingBox, Canvas, ElementClass};
pub use font::{BitmapFont, FONT_ASSET_VERSION, FONT_PIXEL_SIZES};
pub use legend::{
    anchor, place_legend, LegendSize, Occupancy, Orientation, Placement, Side, INSIDE_MAX_OCCUPANCY,
};
pub use png::{decode_png, encode_png};
pub use ticks::{compute_ticks, format_tick, NiceStep, Ticks};

use serde::{Deserialize, Serialize};

use canvas::{DashState, ElementId, Surface, DASH_PATTERNS};
use legend::{LegendLayout, LegendMetrics, LEGEND_PAD, ROW_GAP, TOKEN_GAP};

use crate::color::{ColorTable, Rgb, GRID, INK};
use crate::synth::{FigureSpec, FigureType};
use crate::{Error, Result};

pub const DEFAULT_BASE_HEIGHT: u32 = 256;
/// Marker radius per font size index.
pub const MARKER_RADII: [i64; 4] = [2, 2, 3, 3];
pub const LINE_WIDTH: i64 = 2;
/// Smallest plot area side, in pixels, that a layout may produce.
pub const MIN_PLOT_SIZE: u32 = 40;
pub const TITLE_TEXT: &str = "title";
pub const X_LABEL_TEXT: &str = "xaxis_label";
pub const Y_LABEL_TEXT: &str = "yaxis_label";

const PAD: u32 = 4;
const GAP: u32 = 3;
const TICK_LEN: u32 = 4;
const MAX_TICKS: usize = 8;
/// Bar thickness as a fraction of its slot.
const BAR_FILL: f64 = 0.7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct RenderOptions {
    pub base_height: u32,
    /// Also emit one `LineSegment` box per visible polyline segment.
    pub per_segment_boxes: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            base_height: DEFAULT_BASE_HEIGHT,
            per_segment_boxes: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderResult {
    pub png: Vec<u8>,
    pub boxes: Vec<BoundingBox>,
    pub width: u32,
    pub height: u32,
    pub legend: Placement,
}

/// Canvas width for a height and width/height ratio.
pub fn canvas_width(height: u32, ratio: f64) -> u32 {
    (f64::from(height) * ratio).round() as u32
}

pub fn render(spec: &FigureSpec, table: &ColorTable, font: &BitmapFont, opts: &RenderOptions) -> Result<RenderResult> {
    let (canvas, boxes, legend) = render_canvas(spec, table, font, opts)?;
    Ok(RenderResult {
        png: encode_png(&canvas),
        width: canvas.width(),
        height: canvas.height(),
        boxes,
        legend,
    })
}

/// Unencoded variant of [`render`].
pub fn render_canvas(
    spec: &FigureSpec,
    table: &ColorTable,
    font: &BitmapFont,
    opts: &RenderOptions,
) -> Result<(Canvas, Vec<BoundingBox>, Placement)> {
    let problems = spec.structural_violations();
    if !problems.is_empty() {
        return Err(Error::InvalidInput(format!(
            "figure {} is malformed: {}",
            spec.figure_id,
            problems.join("; ")
        )));
    }
    if let Some(s) = spec.series.iter().find(|s| table.get(s.color_id).is_none()) {
        return Err(Error::InvalidInput(format!("color {} is not in the color table", s.color_id)));
    }
    if opts.base_height == 0 {
        return Err(Error::Config("base height must be positive".into()));
    }
    let fig = Figure::new(spec, table, font, opts);

    if spec.style.legend_inside {
        let layout = fig.layout(None)?;
        let mut surface = Surface::new(fig.width, fig.height);
        fig.paint_data(&mut surface, &layout);
        let plot = layout.plot;
        let occupancy = Occupancy::new(
            plot.width(),
            plot.height(),
            surface.data_mask(plot.x0, plot.y0, plot.x1, plot.y1),
        );
        let metrics = fig.legend_metrics(fig.size);
        let vertical = metrics.vertical(font);
        let horizontal = metrics.horizontal(font, plot.width().saturating_sub(2 * legend::INSET));
        let size = LegendSize {
            vertical: (vertical.width, vertical.height),
            horizontal: horizontal.as_ref().map(|l| (l.width, l.height)),
        };
        let placement = place_legend(&spec.style, &occupancy, &size);
        if let Placement::Inside { cell, orientation } = placement {
            let legend = match orientation {
                Orientation::Vertical => vertical,
                Orientation::Horizontal => horizontal.expect("placement checked the horizontal layout"),
            };
            let (ax, ay) = anchor(&occupancy, cell, legend.width, legend.height)
                .expect("placement checked the anchor");
            fig.paint_frame(&mut surface, &layout);
            fig.paint_legend(&mut surface, &metrics, &legend, plot.x0 + ax, plot.y0 + ay);
            let (canvas, boxes) = surface.finish()?;
            return Ok((canvas, boxes, placement));
        }
    }

    let (layout, metrics, legend_layout, placement) = fig.outside_layout()?;
    let mut surface = Surface::new(fig.width, fig.height);
    fig.paint_data(&mut surface, &layout);
    fig.paint_frame(&mut surface, &layout);
    let (lx, ly) = layout.legend_origin.expect("outside layout reserves the legend");
    fig.paint_legend(&mut surface, &metrics, &legend_layout, lx, ly);
    let (canvas, boxes) = surface.finish()?;
    Ok((canvas, boxes, placement))
}

/// Inclusive pixel rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Rect {
    x0: u32,
    y0: u32,
    x1: u32,
    y1: u32,
}

impl Rect {
    fn width(&self) -> u32 {
        self.x1 - self.x0 + 1
    }

    fn height(&self) -> u32 {
        self.y1 - self.y0 + 1
    }
}

#[derive(Clone, Debug)]
enum Scale {
    Numeric(Ticks),
    Categorical,
}

impl Scale {
    fn ticks(&self) -> Option<&Ticks> {
        match self {
            Scale::Numeric(t) => Some(t),
            Scale::Categorical => None,
        }
    }
}

#[derive(Clone, Debug)]
struct Layout {
    plot: Rect,
    /// `None` for pies.
    axes: Option<(Scale, Scale)>,
    legend_origin: Option<(u32, u32)>,
}

/// Linear map of `v` from `[lo, hi]` onto the pixel range `[a, b]`.
fn project(v: f64, lo: f64, hi: f64, a: u32, b: u32) -> i64 {
    let t = (v - lo) / (hi - lo);
    (f64::from(a) + t * (f64::from(b) - f64::from(a))).round() as i64
}

struct Figure<'a> {
    spec: &'a FigureSpec,
    table: &'a ColorTable,
    font: &'a BitmapFont,
    opts: &'a RenderOptions,
    width: u32,
    height: u32,
    size: usize,
}

impl<'a> Figure<'a> {
    fn new(spec: &'a FigureSpec, table: &'a ColorTable, font: &'a BitmapFont, opts: &'a RenderOptions) -> Self {
        Figure {
            spec,
            table,
            font,
            opts,
            width: canvas_width(opts.base_height, spec.style.width_to_height),
            height: opts.base_height,
            size: usize::from(spec.style.font_size_index),
        }
    }

    fn text_size(&self) -> u32 {
        FONT_PIXEL_SIZES[self.size]
    }

    fn rgb(&self, i: usize) -> Rgb {
        self.table.rgb(self.spec.series[i].color_id)
    }

    /// Data extents along the value axis and, for curves, the x axis.
    fn value_range(&self) -> (f64, f64) {
        let ys = self.spec.series.iter().flat_map(|s| s.y_values.iter().copied());
        let (lo, hi) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
        if self.spec.figure_type.is_bar() {
            (0.0, hi)
        } else {
            (lo, hi)
        }
    }

    fn x_range(&self) -> (f64, f64) {
        let x = &self.spec.series[0].x_values;
        (x[0], x[x.len() - 1])
    }

    fn legend_metrics(&self, size: usize) -> LegendMetrics<'a> {
        let s = FONT_PIXEL_SIZES[size];
        LegendMetrics {
            names: self.spec.series.iter().map(|x| self.table.name(x.color_id)).collect(),
            token_width: if self.spec.figure_type.is_line() { 2 * s } else { s },
            text_size: s,
        }
    }

    /// Outside legend: preferred side first, then the other side, shrinking
    /// the legend text until the plot area keeps its minimum size.
    #[allow(clippy::type_complexity)]
    fn outside_layout(&self) -> Result<(Layout, LegendMetrics<'a>, LegendLayout, Placement)> {
        let right_first = self.spec.style.legend_right;
        let mut last_err = None;
        for size in (0..=self.size).rev() {
            let metrics = self.legend_metrics(size);
            for right in [right_first, !right_first] {
                let legend = if right {
                    Some(metrics.vertical(self.font))
                } else {
                    metrics.horizontal(self.font, self.width - 2 * PAD)
                };
                let Some(legend) = legend else { continue };
                let side = if right { Side::Right } else { Side::Below };
                match self.layout(Some((side, legend.width, legend.height))) {
                    Ok(layout) => return Ok((layout, metrics, legend, legend::outside(right))),
                    Err(e) => last_err = Some(e),
                }
            }
        }
        Err(last_err.unwrap_or_else(|| Error::Render("legend does not fit beside the plot".into())))
    }

    fn layout(&self, reserve: Option<(Side, u32, u32)>) -> Result<Layout> {
        let s = self.text_size();
        let (w, h) = (self.width, self.height);
        let (reserve_right, reserve_below) = match reserve {
            Some((Side::Right, lw, _)) => (lw + GAP, 0),
            Some((Side::Below, _, lh)) => (0, lh + GAP),
            None => (0, 0),
        };
        let too_small = || {
            Error::Render(format!(
                "plot area below {MIN_PLOT_SIZE}px for figure {}",
                self.spec.figure_id
            ))
        };
        let top = PAD + s + GAP;
        let ft = self.spec.figure_type;

        if ft == FigureType::Pie {
            let right = (w - 1).checked_sub(PAD + reserve_right).ok_or_else(too_small)?;
            let bottom = (h - 1).checked_sub(PAD + reserve_below).ok_or_else(too_small)?;
            let plot = Rect { x0: PAD, y0: top, x1: right, y1: bottom };
            if right < PAD + MIN_PLOT_SIZE - 1 || bottom < top + MIN_PLOT_SIZE - 1 {
                return Err(too_small());
            }
            return Ok(Layout {
                plot,
                axes: None,
                legend_origin: self.outside_origin(reserve, top),
            });
        }

        let x_numeric = ft != FigureType::VerticalBar;
        let y_numeric = ft != FigureType::HorizontalBar;
        let x_ticks_h = if x_numeric { TICK_LEN + GAP + s } else { 0 };
        // axis row + tick marks/labels + gap + axis label + padding + reserved legend
        let below = 1 + x_ticks_h + GAP + s + PAD + reserve_below;
        let bottom = h.checked_sub(below + 1).ok_or_else(too_small)?;
        if bottom < top + MIN_PLOT_SIZE - 1 {
            return Err(too_small());
        }
        let plot_h = bottom - top + 1;

        let y_scale = if y_numeric {
            let (lo, hi) = self.value_range();
            Scale::Numeric(self.fit_ticks(lo, hi, plot_h, |_| s + 2)?)
        } else {
            Scale::Categorical
        };
        let y_label_w = y_scale
            .ticks()
            .map(|t| t.labels().iter().map(|l| self.font.text_width(l, s)).max().unwrap_or(0) + GAP + TICK_LEN)
            .unwrap_or(0);
        let left = PAD + s + GAP + y_label_w + 1;

        let (x_lo, x_hi) = if ft.is_bar() { self.value_range() } else { self.x_range() };
        let mut overhang = if x_numeric { 2 * s } else { 0 };
        let mut x_scale = Scale::Categorical;
        let mut right = 0;
        // The last x label hangs past the plot edge; settle its margin in two passes.
        for _ in 0..2 {
            right = (w - 1)
                .checked_sub(PAD + reserve_right + overhang)
                .filter(|&r| r >= left + MIN_PLOT_SIZE - 1)
                .ok_or_else(too_small)?;
            if !x_numeric {
                break;
            }
            let ticks = self.fit_ticks(x_lo, x_hi, right - left + 1, |t| {
                t.labels().iter().map(|l| self.font.text_width(l, s)).max().unwrap_or(0) + s
            })?;
            let last = ticks.labels().last().map(|l| self.font.text_width(l, s)).unwrap_or(0);
            overhang = last.div_ceil(2);
            x_scale = Scale::Numeric(ticks);
        }
        let _ = right.checked_sub(left).ok_or_else(too_small)?;
        Ok(Layout {
            plot: Rect { x0: left, y0: top, x1: right, y1: bottom },
            axes: Some((x_scale, y_scale)),
            legend_origin: self.outside_origin(reserve, top),
        })
    }

    fn outside_origin(&self, reserve: Option<(Side, u32, u32)>, top: u32) -> Option<(u32, u32)> {
        reserve.map(|(side, lw, lh)| match side {
            Side::Right => (self.width - PAD - lw, top),
            Side::Below => ((self.width - lw) / 2, self.height - PAD - lh),
        })
    }

    /// Most ticks (up to [`MAX_TICKS`]) whose spacing over `extent` pixels
    /// leaves room for labels of the given footprint.
    fn fit_ticks(&self, lo: f64, hi: f64, extent: u32, footprint: impl Fn(&Ticks) -> u32) -> Result<Ticks> {
        for max_ticks in (2..=MAX_TICKS).rev() {
            let ticks = compute_ticks(lo, hi, max_ticks)?;
            let spacing = f64::from(extent - 1) / (ticks.values.len() - 1) as f64;
            if spacing >= f64::from(footprint(&ticks)) {
                return Ok(ticks);
            }
        }
        Err(Error::Render(format!(
            "no tick layout fits [{lo}, {hi}] in {extent}px for figure {}",
            self.spec.figure_id
        )))
    }

    fn paint_data(&self, surface: &mut Surface, layout: &Layout) {
        let plot = layout.plot;
        let Some((x_scale, y_scale)) = &layout.axes else {
            self.paint_pie(surface, plot);
            return;
        };
        if self.spec.style.gridlines {
            if let Some(t) = y_scale.ticks() {
                for &v in &t.values[1..] {
                    let y = project(v, t.lo(), t.hi(), plot.y1, plot.y0);
                    let id = surface.element(ElementClass::GridLine, None);
                    surface.fill_rect(i64::from(plot.x0), y, i64::from(plot.x1), y, id, GRID);
                }
            }
            if let Some(t) = x_scale.ticks() {
                for &v in &t.values[1..] {
                    let x = project(v, t.lo(), t.hi(), plot.x0, plot.x1);
                    let id = surface.element(ElementClass::GridLine, None);
                    surface.fill_rect(x, i64::from(plot.y0), x, i64::from(plot.y1), id, GRID);
                }
            }
        }
        match self.spec.figure_type {
            FigureType::VerticalBar | FigureType::HorizontalBar => self.paint_bars(surface, plot, x_scale, y_scale),
            _ => self.paint_lines(surface, plot, x_scale, y_scale),
        }
    }

    fn paint_bars(&self, surface: &mut Surface, plot: Rect, x_scale: &Scale, y_scale: &Scale) {
        let vertical = self.spec.figure_type == FigureType::VerticalBar;
        let n = self.spec.series.len();
        let (slot_start, slot_extent) = if vertical {
            (plot.x0, plot.width())
        } else {
            (plot.y0, plot.height())
        };
        let slot = f64::from(slot_extent) / n as f64;
        for (i, series) in self.spec.series.iter().enumerate() {
            let center = f64::from(slot_start) + slot * (i as f64 + 0.5);
            let half = slot * BAR_FILL / 2.0;
            let a = (center - half).round() as i64;
            let b = ((center + half).round() as i64 - 1).max(a);
            let v = series.y_values[0];
            let id = surface.element(ElementClass::Bar, Some(series.color_id));
            let rgb = self.rgb(i);
            if vertical {
                let t = y_scale.ticks().expect("vertical bars have a numeric y axis");
                let top = project(v, t.lo(), t.hi(), plot.y1, plot.y0).min(i64::from(plot.y1));
                surface.fill_rect(a, top, b, i64::from(plot.y1), id, rgb);
            } else {
                let t = x_scale.ticks().expect("horizontal bars have a numeric x axis");
                let end = project(v, t.lo(), t.hi(), plot.x0, plot.x1).max(i64::from(plot.x0));
                surface.fill_rect(i64::from(plot.x0), a, end, b, id, rgb);
            }
        }
    }

    fn paint_lines(&self, surface: &mut Surface, plot: Rect, x_scale: &Scale, y_scale: &Scale) {
        let (Some(xt), Some(yt)) = (x_scale.ticks(), y_scale.ticks()) else {
            unreachable!("curves have numeric axes")
        };
        let dots = self.spec.figure_type == FigureType::DotLine;
        // The square brush extends right and down from the anchor pixel.
        let (x1, y1) = (plot.x1 - (LINE_WIDTH as u32 - 1), plot.y1 - (LINE_WIDTH as u32 - 1));
        for (i, series) in self.spec.series.iter().enumerate() {
            let points: Vec<(i64, i64)> = series
                .x_values
                .iter()
                .zip(&series.y_values)
                .map(|(&x, &y)| {
                    (
                        project(x, xt.lo(), xt.hi(), plot.x0, x1),
                        project(y, yt.lo(), yt.hi(), y1, plot.y0),
                    )
                })
                .collect();
            let rgb = self.rgb(i);
            let group = surface.element(ElementClass::LineSegmentGroup, Some(series.color_id));
            let pattern = DASH_PATTERNS[usize::from(self.spec.style.line_style_ids[i])];
            let mut dash = DashState::default();
            for (k, seg) in points.windows(2).enumerate() {
                let id = if self.opts.per_segment_boxes {
                    surface.child(group, ElementClass::LineSegment, Some(series.color_id))
                } else {
                    group
                };
                surface.stroke_segment(seg[0], seg[1], LINE_WIDTH, pattern, &mut dash, k > 0, id, rgb);
            }
            if dots {
                let radius = MARKER_RADII[self.size];
                let markers = surface.element(ElementClass::DotMarkerGroup, Some(series.color_id));
                for &(x, y) in &points {
                    surface.fill_circle(x, y, radius, markers, rgb);
                }
            }
        }
    }

    fn paint_pie(&self, surface: &mut Surface, plot: Rect) {
        let cx = f64::from(plot.x0) + f64::from(plot.width()) / 2.0;
        let cy = f64::from(plot.y0) + f64::from(plot.height()) / 2.0;
        let radius = f64::from(plot.width().min(plot.height())) / 2.0 - 1.0;
        let wedges: Vec<(f64, ElementId, Rgb)> = self
            .spec
            .series
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let id = surface.element(ElementClass::PieSlice, Some(s.color_id));
                (s.y_values[0], id, self.rgb(i))
            })
            .collect();
        surface.fill_pie(cx, cy, radius, &wedges);
    }

    /// Axes, tick labels, axis labels and title.
    fn paint_frame(&self, surface: &mut Surface, layout: &Layout) {
        let s = self.text_size();
        let plot = layout.plot;
        let (x0, y0, x1, y1) = (
            i64::from(plot.x0),
            i64::from(plot.y0),
            i64::from(plot.x1),
            i64::from(plot.y1),
        );
        let tick = i64::from(TICK_LEN);
        let (w, h) = (i64::from(self.width), i64::from(self.height));
        let text = |surface: &mut Surface, class, label: &str, x: i64, y: i64, rotated| {
            let id = surface.element(class, None);
            surface.draw_text(self.font, label, s, x, y, rotated, id, INK);
        };
        let title_w = i64::from(self.font.text_width(TITLE_TEXT, s));
        // Centered over the plot so a right-hand legend never collides with it.
        let title_x = (x0 + (i64::from(plot.width()) - title_w) / 2).clamp(0, (w - title_w).max(0));
        text(surface, ElementClass::Title, TITLE_TEXT, title_x, i64::from(PAD), false);

        let Some((x_scale, y_scale)) = &layout.axes else { return };
        let x_axis = surface.element(ElementClass::XAxis, None);
        surface.fill_rect(x0 - 1, y1 + 1, x1, y1 + 1, x_axis, INK);
        if let Some(t) = x_scale.ticks() {
            for &v in &t.values {
                let x = project(v, t.lo(), t.hi(), plot.x0, plot.x1);
                surface.fill_rect(x, y1 + 2, x, y1 + 1 + tick, x_axis, INK);
            }
        }
        let y_axis = surface.element(ElementClass::YAxis, None);
        surface.fill_rect(x0 - 1, y0, x0 - 1, y1 + 1, y_axis, INK);
        if let Some(t) = y_scale.ticks() {
            for &v in &t.values {
                let y = project(v, t.lo(), t.hi(), plot.y1, plot.y0);
                surface.fill_rect(x0 - 1 - tick, y, x0 - 2, y, y_axis, INK);
            }
        }

        let size = i64::from(s);
        if let Some(t) = x_scale.ticks() {
            for (v, label) in t.values.iter().zip(t.labels()) {
                let lw = i64::from(self.font.text_width(&label, s));
                let x = project(*v, t.lo(), t.hi(), plot.x0, plot.x1) - lw / 2;
                let y = y1 + 2 + tick + i64::from(GAP);
                text(surface, ElementClass::TickLabel, &label, x.clamp(0, w - lw), y, false);
            }
        }
        if let Some(t) = y_scale.ticks() {
            for (v, label) in t.values.iter().zip(t.labels()) {
                let lw = i64::from(self.font.text_width(&label, s));
                let x = x0 - 1 - tick - i64::from(GAP) - lw;
                let y = project(*v, t.lo(), t.hi(), plot.y1, plot.y0) - size / 2;
                text(surface, ElementClass::TickLabel, &label, x, y.clamp(0, h - size), false);
            }
        }

        let x_ticks_h = if x_scale.ticks().is_some() { tick + i64::from(GAP) + size } else { 0 };
        let xl_w = i64::from(self.font.text_width(X_LABEL_TEXT, s));
        let xl_y = y1 + 2 + x_ticks_h + i64::from(GAP);
        text(surface, ElementClass::AxisLabel, X_LABEL_TEXT, x0 + (i64::from(plot.width()) - xl_w) / 2, xl_y, false);
        let yl_h = i64::from(self.font.text_width(Y_LABEL_TEXT, s));
        let yl_y = (y0 + (i64::from(plot.height()) - yl_h) / 2).clamp(0, (h - yl_h).max(0));
        text(surface, ElementClass::AxisLabel, Y_LABEL_TEXT, i64::from(PAD), yl_y, true);
    }

    /// White background, gray frame, then one token and one label per series.
    fn paint_legend(&self, surface: &mut Surface, metrics: &LegendMetrics, legend: &LegendLayout, x: u32, y: u32) {
        let (x, y) = (i64::from(x), i64::from(y));
        let (x1, y1) = (x + i64::from(legend.width) - 1, y + i64::from(legend.height) - 1);
        surface.clear_rect(x, y, x1, y1);
        for px in x..=x1 {
            surface.paint_unowned(px, y, GRID);
            surface.paint_unowned(px, y1, GRID);
        }
        for py in y..=y1 {
            surface.paint_unowned(x, py, GRID);
            surface.paint_unowned(x1, py, GRID);
        }
        let s = i64::from(legend.text_size);
        let tw = i64::from(legend.token_width);
        let pad = i64::from(LEGEND_PAD);
        // Draw tokens and labels in series order regardless of wrapping.
        let mut slots = vec![(0i64, 0i64); self.spec.series.len()];
        for (r, row) in legend.rows.iter().enumerate() {
            let ry = y + pad + r as i64 * (s + i64::from(ROW_GAP));
            for (&i, off) in row.iter().zip(metrics.entry_offsets(self.font, row)) {
                slots[i] = (x + pad + i64::from(off), ry);
            }
        }
        for (i, series) in self.spec.series.iter().enumerate() {
            let (ex, ey) = slots[i];
            let rgb = self.rgb(i);
            let token = surface.element(ElementClass::LegendToken, Some(series.color_id));
            if self.spec.figure_type.is_line() {
                let cy = ey + s / 2 - LINE_WIDTH / 2;
                let pattern = DASH_PATTERNS[usize::from(self.spec.style.line_style_ids[i])];
                let mut dash = DashState::default();
                let end = ex + tw - LINE_WIDTH;
                surface.stroke_segment((ex, cy), (end, cy), LINE_WIDTH, pattern, &mut dash, false, token, rgb);
                if self.spec.figure_type == FigureType::DotLine {
                    let radius = MARKER_RADII[legend_size_index(legend.text_size)];
                    surface.fill_circle(ex + tw / 2, cy, radius, token, rgb);
                }
            } else {
                surface.fill_rect(ex + 1, ey + 1, ex + s - 2, ey + s - 2, token, rgb);
            }
            let label = surface.element(ElementClass::LegendLabel, Some(series.color_id));
            let name = metrics.names[i];
            surface.draw_text(self.font, name, legend.text_size, ex + tw + i64::from(TOKEN_GAP), ey, false, label, INK);
        }
    }
}

fn legend_size_index(text_size: u32) -> usize {
    FONT_PIXEL_SIZES.iter().position(|&s| s == text_size).unwrap_or(0)
}
