//! Pixel buffer and the painting primitives used by the renderer.

use serde::{Deserialize, Serialize};

use super::font::BitmapFont;
use crate::color::{ColorId, Rgb, WHITE};
use crate::{Error, Result};

/// Row-major 8-bit RGB image, initialised to white.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canvas {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
}

impl Canvas {
    pub fn new(width: u32, height: u32) -> Self {
        let len = width as usize * height as usize * 3;
        Canvas {
            width,
            height,
            pixels: vec![255; len],
        }
    }

    /// Wraps raw RGB bytes.
    pub fn from_rgb(width: u32, height: u32, pixels: Vec<u8>) -> Result<Self> {
        if pixels.len() != width as usize * height as usize * 3 {
            return Err(Error::InvalidInput(format!(
                "{} bytes do not form a {width}x{height} RGB image",
                pixels.len()
            )));
        }
        Ok(Canvas {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: u32, y: u32) -> Rgb {
        let i = (y as usize * self.width as usize + x as usize) * 3;
        Rgb([self.pixels[i], self.pixels[i + 1], self.pixels[i + 2]])
    }

    pub fn set(&mut self, x: u32, y: u32, rgb: Rgb) {
        let i = (y as usize * self.width as usize + x as usize) * 3;
        self.pixels[i..i + 3].copy_from_slice(&rgb.0);
    }

    pub fn row(&self, y: u32) -> &[u8] {
        let stride = self.width as usize * 3;
        let start = y as usize * stride;
        &self.pixels[start..start + stride]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementClass {
    Bar,
    LineSegmentGroup,
    /// Single polyline segment; only emitted when per-segment boxes are enabled.
    LineSegment,
    DotMarkerGroup,
    PieSlice,
    XAxis,
    YAxis,
    TickLabel,
    AxisLabel,
    Title,
    LegendToken,
    LegendLabel,
    GridLine,
}

impl ElementClass {
    /// Plotted data, excluding the legend.
    pub fn is_plotted_data(self) -> bool {
        matches!(
            self,
            ElementClass::Bar
                | ElementClass::LineSegmentGroup
                | ElementClass::LineSegment
                | ElementClass::DotMarkerGroup
                | ElementClass::PieSlice
        )
    }

    /// Elements painted in their series color.
    pub fn is_data(self) -> bool {
        matches!(
            self,
            ElementClass::Bar
                | ElementClass::LineSegmentGroup
                | ElementClass::LineSegment
                | ElementClass::DotMarkerGroup
                | ElementClass::PieSlice
                | ElementClass::LegendToken
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub element_class: ElementClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color_id: Option<ColorId>,
    pub x: u32,
    pub y: u32,
    pub w: u32,
    pub h: u32,
}

impl BoundingBox {
    pub fn contains(&self, x: u32, y: u32) -> bool {
        x >= self.x && y >= self.y && x < self.x + self.w && y < self.y + self.h
    }
}

/// Handle of a registered element; pixels remember the last element that painted them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct ElementId(u32);

struct Element {
    class: ElementClass,
    color_id: Option<ColorId>,
    /// Group element whose box is the union of its children.
    parent: Option<ElementId>,
}

/// Dash patterns as alternating on/off run lengths in brush steps; empty is solid.
pub(crate) const DASH_PATTERNS: [&[u32]; 5] = [&[], &[6, 4], &[2, 3], &[6, 3, 2, 3], &[12, 4]];

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct DashState {
    index: usize,
    consumed: u32,
}

impl DashState {
    /// Whether the current step is drawn; advances one step.
    fn step(&mut self, pattern: &[u32]) -> bool {
        if pattern.is_empty() {
            return true;
        }
        let on = self.index % 2 == 0;
        self.consumed += 1;
        if self.consumed >= pattern[self.index] {
            self.consumed = 0;
            self.index = (self.index + 1) % pattern.len();
        }
        on
    }
}

/// Canvas plus per-pixel element ownership. Boxes are derived from the
/// final ownership map, so they are tight over visible pixels.
pub(crate) struct Surface {
    canvas: Canvas,
    owner: Vec<u32>,
    elements: Vec<Element>,
}

impl Surface {
    pub fn new(width: u32, height: u32) -> Self {
        Surface {
            canvas: Canvas::new(width, height),
            owner: vec![0; width as usize * height as usize],
            elements: Vec::new(),
        }
    }

    pub fn element(&mut self, class: ElementClass, color_id: Option<ColorId>) -> ElementId {
        self.push(class, color_id, None)
    }

    pub fn child(&mut self, parent: ElementId, class: ElementClass, color_id: Option<ColorId>) -> ElementId {
        self.push(class, color_id, Some(parent))
    }

    fn push(&mut self, class: ElementClass, color_id: Option<ColorId>, parent: Option<ElementId>) -> ElementId {
        self.elements.push(Element {
            class,
            color_id,
            parent,
        });
        ElementId(self.elements.len() as u32)
    }

    pub fn plot(&mut self, x: i64, y: i64, id: ElementId, rgb: Rgb) {
        if x < 0 || y < 0 || x >= i64::from(self.canvas.width) || y >= i64::from(self.canvas.height) {
            return;
        }
        let (x, y) = (x as u32, y as u32);
        self.canvas.set(x, y, rgb);
        self.owner[y as usize * self.canvas.width as usize + x as usize] = id.0;
    }

    /// Resets a rectangle to unowned white.
    pub fn clear_rect(&mut self, x0: i64, y0: i64, x1: i64, y1: i64) {
        for y in y0.max(0)..=y1.min(i64::from(self.canvas.height) - 1) {
            for x in x0.max(0)..=x1.min(i64::from(self.canvas.width) - 1) {
                self.canvas.set(x as u32, y as u32, WHITE);
                self.owner[y as usize * self.canvas.width as usize + x as usize] = 0;
            }
        }
    }

    /// Paints without taking ownership (decorations that get no box).
    pub fn paint_unowned(&mut self, x: i64, y: i64, rgb: Rgb) {
        if x < 0 || y < 0 || x >= i64::from(self.canvas.width) || y >= i64::from(self.canvas.height) {
            return;
        }
        self.canvas.set(x as u32, y as u32, rgb);
        self.owner[y as usize * self.canvas.width as usize + x as usize] = 0;
    }

    /// Inclusive rectangle.
    pub fn fill_rect(&mut self, x0: i64, y0: i64, x1: i64, y1: i64, id: ElementId, rgb: Rgb) {
        for y in y0..=y1 {
            for x in x0..=x1 {
                self.plot(x, y, id, rgb);
            }
        }
    }

    fn brush(&mut self, x: i64, y: i64, width: i64, id: ElementId, rgb: Rgb) {
        for dy in 0..width {
            for dx in 0..width {
                self.plot(x + dx, y + dy, id, rgb);
            }
        }
    }

    /// Bresenham segment with a square brush. The dash state carries over
    /// between segments of one polyline; `skip_first` avoids restamping a
    /// shared vertex.
    #[allow(clippy::too_many_arguments)]
    pub fn stroke_segment(
        &mut self,
        from: (i64, i64),
        to: (i64, i64),
        width: i64,
        pattern: &[u32],
        dash: &mut DashState,
        skip_first: bool,
        id: ElementId,
        rgb: Rgb,
    ) {
        let (mut x, mut y) = from;
        let dx = (to.0 - x).abs();
        let dy = -(to.1 - y).abs();
        let sx = if x < to.0 { 1 } else { -1 };
        let sy = if y < to.1 { 1 } else { -1 };
        let mut err = dx + dy;
        let mut first = true;
        loop {
            if !(first && skip_first) && dash.step(pattern) {
                self.brush(x, y, width, id, rgb);
            }
            first = false;
            if x == to.0 && y == to.1 {
                break;
            }
            let e2 = 2 * err;
            if e2 >= dy {
                err += dy;
                x += sx;
            }
            if e2 <= dx {
                err += dx;
                y += sy;
            }
        }
    }

    pub fn fill_circle(&mut self, cx: i64, cy: i64, radius: i64, id: ElementId, rgb: Rgb) {
        let limit = radius * radius + radius;
        for dy in -radius..=radius {
            for dx in -radius..=radius {
                if dx * dx + dy * dy <= limit {
                    self.plot(cx + dx, cy + dy, id, rgb);
                }
            }
        }
    }

    /// Disk split into wedges by cumulative fraction, counter-clockwise from
    /// the positive x-axis. The last wedge absorbs rounding.
    pub fn fill_pie(&mut self, cx: f64, cy: f64, radius: f64, wedges: &[(f64, ElementId, Rgb)]) {
        let mut bounds = Vec::with_capacity(wedges.len());
        let mut acc = 0.0;
        for (fraction, _, _) in wedges {
            acc += fraction;
            bounds.push(acc * std::f64::consts::TAU);
        }
        let r2 = radius * radius;
        let x0 = (cx - radius).floor() as i64;
        let x1 = (cx + radius).ceil() as i64;
        let y0 = (cy - radius).floor() as i64;
        let y1 = (cy + radius).ceil() as i64;
        for y in y0..=y1 {
            for x in x0..=x1 {
                let dx = x as f64 + 0.5 - cx;
                let dy = y as f64 + 0.5 - cy;
                if dx * dx + dy * dy > r2 {
                    continue;
                }
                let angle = (-dy).atan2(dx).rem_euclid(std::f64::consts::TAU);
                let k = bounds
                    .iter()
                    .position(|&b| angle < b)
                    .unwrap_or(wedges.len() - 1);
                let (_, id, rgb) = wedges[k];
                self.plot(x, y, id, rgb);
            }
        }
    }

    /// Draws text with its top-left corner at `(x, y)`. Rotated text reads
    /// bottom to top and `(x, y)` is the top-left of its rotated extent.
    #[allow(clippy::too_many_arguments)]
    pub fn draw_text(
        &mut self,
        font: &BitmapFont,
        text: &str,
        size: u32,
        x: i64,
        y: i64,
        rotated: bool,
        id: ElementId,
        rgb: Rgb,
    ) {
        let width = i64::from(font.text_width(text, size));
        for (tx, ty) in font.rasterize(text, size) {
            let (tx, ty) = (i64::from(tx), i64::from(ty));
            if rotated {
                self.plot(x + ty, y + (width - 1 - tx), id, rgb);
            } else {
                self.plot(x + tx, y + ty, id, rgb);
            }
        }
    }

    /// Row-major mask of the inclusive rectangle, true where plotted data owns the pixel.
    pub fn data_mask(&self, x0: u32, y0: u32, x1: u32, y1: u32) -> Vec<bool> {
        let mut mask = Vec::with_capacity(((x1 - x0 + 1) * (y1 - y0 + 1)) as usize);
        for y in y0..=y1 {
            for x in x0..=x1 {
                let owner = self.owner[y as usize * self.canvas.width as usize + x as usize];
                mask.push(owner != 0 && self.elements[owner as usize - 1].class.is_plotted_data());
            }
        }
        mask
    }

    /// Final canvas and one box per element with visible pixels, in
    /// registration order. Fails if a data or legend element ended up hidden.
    pub fn finish(self) -> Result<(Canvas, Vec<BoundingBox>)> {
        let n = self.elements.len();
        // (min_x, min_y, max_x, max_y)
        let mut extents: Vec<Option<(u32, u32, u32, u32)>> = vec![None; n + 1];
        let w = self.canvas.width;
        for (i, &owner) in self.owner.iter().enumerate() {
            if owner == 0 {
                continue;
            }
            let x = (i % w as usize) as u32;
            let y = (i / w as usize) as u32;
            grow(&mut extents[owner as usize], (x, y, x, y));
        }
        for (i, element) in self.elements.iter().enumerate() {
            if let (Some(parent), Some(ext)) = (element.parent, extents[i + 1]) {
                grow(&mut extents[parent.0 as usize], ext);
            }
        }
        let mut boxes = Vec::with_capacity(n);
        for (i, element) in self.elements.iter().enumerate() {
            match extents[i + 1] {
                Some((x0, y0, x1, y1)) => boxes.push(BoundingBox {
                    element_class: element.class,
                    color_id: element.color_id,
                    x: x0,
                    y: y0,
                    w: x1 - x0 + 1,
                    h: y1 - y0 + 1,
                }),
                None if required(element.class) => {
                    return Err(Error::Render(format!(
                        "{:?} element for color {:?} has no visible pixels",
                        element.class, element.color_id
                    )));
                }
                // Hidden per-segment boxes and decorations are simply omitted.
                None => {}
            }
        }
        Ok((self.canvas, boxes))
    }
}

/// Classes that must stay visible; a dash gap may legitimately swallow a short segment.
fn required(class: ElementClass) -> bool {
    (class.is_data() && class != ElementClass::LineSegment) || class == ElementClass::LegendLabel
}

fn grow(slot: &mut Option<(u32, u32, u32, u32)>, (x0, y0, x1, y1): (u32, u32, u32, u32)) {
    *slot = Some(match *slot {
        None => (x0, y0, x1, y1),
        Some((a, b, c, d)) => (a.min(x0), b.min(y0), c.max(x1), d.max(y1)),
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    const RED: Rgb = Rgb([255, 0, 0]);
    const BLUE: Rgb = Rgb([0, 0, 255]);

    #[test]
    fn overdraw_moves_ownership() {
        let mut s = Surface::new(10, 10);
        let a = s.element(ElementClass::Bar, Some(ColorId(1)));
        let b = s.element(ElementClass::Bar, Some(ColorId(2)));
        s.fill_rect(0, 0, 5, 5, a, RED);
        s.fill_rect(3, 0, 9, 5, b, BLUE);
        let (canvas, boxes) = s.finish().unwrap();
        assert_eq!(boxes[0], BoundingBox { element_class: ElementClass::Bar, color_id: Some(ColorId(1)), x: 0, y: 0, w: 3, h: 6 });
        assert_eq!(boxes[1].x, 3);
        assert_eq!(boxes[1].w, 7);
        assert_eq!(canvas.get(3, 0), BLUE);
        assert_eq!(canvas.get(0, 9), WHITE);
    }

    #[test]
    fn hidden_data_element_is_an_error() {
        let mut s = Surface::new(4, 4);
        let a = s.element(ElementClass::Bar, Some(ColorId(1)));
        let b = s.element(ElementClass::Bar, Some(ColorId(2)));
        s.fill_rect(0, 0, 1, 1, a, RED);
        s.fill_rect(0, 0, 3, 3, b, BLUE);
        assert!(matches!(s.finish(), Err(Error::Render(_))));
    }

    #[test]
    fn group_box_is_union_of_children() {
        let mut s = Surface::new(20, 20);
        let g = s.element(ElementClass::LineSegmentGroup, Some(ColorId(0)));
        let c1 = s.child(g, ElementClass::LineSegment, Some(ColorId(0)));
        let c2 = s.child(g, ElementClass::LineSegment, Some(ColorId(0)));
        let mut dash = DashState::default();
        s.stroke_segment((1, 1), (5, 3), 1, &[], &mut dash, false, c1, RED);
        s.stroke_segment((5, 3), (12, 15), 1, &[], &mut dash, true, c2, RED);
        let (_, boxes) = s.finish().unwrap();
        assert_eq!((boxes[0].x, boxes[0].y, boxes[0].w, boxes[0].h), (1, 1, 12, 15));
        assert_eq!((boxes[1].x, boxes[1].y), (1, 1));
    }

    #[test]
    fn dashes_alternate() {
        let mut d = DashState::default();
        let pattern = [2, 3];
        let steps: Vec<bool> = (0..10).map(|_| d.step(&pattern)).collect();
        assert_eq!(steps, [true, true, false, false, false, true, true, false, false, false]);
    }

    #[test]
    fn pie_covers_disk_with_all_wedges() {
        let mut s = Surface::new(41, 41);
        let a = s.element(ElementClass::PieSlice, Some(ColorId(0)));
        let b = s.element(ElementClass::PieSlice, Some(ColorId(1)));
        s.fill_pie(20.5, 20.5, 18.0, &[(0.25, a, RED), (0.75, b, BLUE)]);
        let (canvas, boxes) = s.finish().unwrap();
        assert_eq!(boxes.len(), 2);
        // First quarter is the upper-right quadrant.
        assert_eq!(canvas.get(30, 10), RED);
        assert_eq!(canvas.get(10, 30), BLUE);
        assert_eq!(canvas.get(0, 0), WHITE);
    }
}
