//! Legend sizing and placement on a 3x3 occupancy grid over the plot area.

use serde::{Deserialize, Serialize};

use super::font::BitmapFont;
use crate::synth::StyleParams;

/// Cells whose data coverage reaches this fraction never host the legend.
pub const INSIDE_MAX_OCCUPANCY: f64 = 0.05;

/// Padding between the legend frame and its entries.
pub(crate) const LEGEND_PAD: u32 = 3;
pub(crate) const ROW_GAP: u32 = 2;
/// Space between a token and its label.
pub(crate) const TOKEN_GAP: u32 = 3;
/// Keeps an inside legend off the axes.
pub(crate) const INSET: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Vertical,
    Horizontal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Right,
    Below,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Placement {
    /// `cell` is row-major, 0 = top-left.
    Inside { cell: usize, orientation: Orientation },
    Outside { side: Side, orientation: Orientation },
}

/// Data coverage of the plot area, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occupancy {
    width: u32,
    height: u32,
    mask: Vec<bool>,
}

impl Occupancy {
    pub fn new(width: u32, height: u32, mask: Vec<bool>) -> Self {
        assert_eq!(mask.len(), width as usize * height as usize, "mask size");
        Occupancy { width, height, mask }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Inclusive pixel bounds of a 3x3 cell.
    pub fn cell_bounds(&self, cell: usize) -> (u32, u32, u32, u32) {
        let (row, col) = ((cell / 3) as u32, (cell % 3) as u32);
        let x0 = col * self.width / 3;
        let x1 = (col + 1) * self.width / 3;
        let y0 = row * self.height / 3;
        let y1 = (row + 1) * self.height / 3;
        (x0, y0, x1.max(x0 + 1) - 1, y1.max(y0 + 1) - 1)
    }

    /// Covered fraction of the inclusive rectangle.
    pub fn fraction(&self, x0: u32, y0: u32, x1: u32, y1: u32) -> f64 {
        let mut covered = 0u64;
        for y in y0..=y1.min(self.height - 1) {
            let row = &self.mask[(y * self.width) as usize..((y + 1) * self.width) as usize];
            covered += row[x0 as usize..=x1.min(self.width - 1) as usize]
                .iter()
                .filter(|&&b| b)
                .count() as u64;
        }
        covered as f64 / (f64::from(x1 - x0 + 1) * f64::from(y1 - y0 + 1))
    }

    pub fn cell_fractions(&self) -> [f64; 9] {
        std::array::from_fn(|c| {
            let (x0, y0, x1, y1) = self.cell_bounds(c);
            self.fraction(x0, y0, x1, y1)
        })
    }
}

/// Legend extents in both orientations. `horizontal` is `None` when some
/// entry is wider than the available width.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LegendSize {
    pub vertical: (u32, u32),
    pub horizontal: Option<(u32, u32)>,
}

/// Top-left of a `w`x`h` legend anchored in `cell`, relative to the plot area.
/// Columns align left/center/right and rows top/middle/bottom.
pub fn anchor(occupancy: &Occupancy, cell: usize, w: u32, h: u32) -> Option<(u32, u32)> {
    let place = |slot: usize, extent: u32, size: u32| -> Option<u32> {
        if size + 2 * INSET > extent {
            return None;
        }
        Some(match slot {
            0 => INSET,
            1 => (extent - size) / 2,
            _ => extent - INSET - size,
        })
    };
    Some((
        place(cell % 3, occupancy.width, w)?,
        place(cell / 3, occupancy.height, h)?,
    ))
}

/// Chooses where the legend goes.
///
/// Inside legends try cells from least to most occupied (lowest index on
/// ties). A cell qualifies when its coverage is under [`INSIDE_MAX_OCCUPANCY`]
/// and the legend anchored there hides no data pixel at all (thin curves
/// barely register in cell coverage). The legend stacks vertically if that
/// fits the cell height, else flows horizontally. Outside placement is the
/// fallback.
pub fn place_legend(style: &StyleParams, occupancy: &Occupancy, size: &LegendSize) -> Placement {
    if style.legend_inside {
        let fractions = occupancy.cell_fractions();
        let mut cells: Vec<usize> = (0..9).collect();
        cells.sort_by(|&a, &b| fractions[a].total_cmp(&fractions[b]).then(a.cmp(&b)));
        for cell in cells {
            if fractions[cell] >= INSIDE_MAX_OCCUPANCY {
                break;
            }
            let (_, cy0, _, cy1) = occupancy.cell_bounds(cell);
            let orientation = if size.vertical.1 <= cy1 - cy0 + 1 {
                Orientation::Vertical
            } else {
                Orientation::Horizontal
            };
            let dims = match orientation {
                Orientation::Vertical => Some(size.vertical),
                Orientation::Horizontal => size.horizontal,
            };
            let Some((w, h)) = dims else { continue };
            let Some((x, y)) = anchor(occupancy, cell, w, h) else { continue };
            if occupancy.fraction(x, y, x + w - 1, y + h - 1) == 0.0 {
                return Placement::Inside { cell, orientation };
            }
        }
    }
    outside(style.legend_right)
}

pub(crate) fn outside(right: bool) -> Placement {
    if right {
        Placement::Outside {
            side: Side::Right,
            orientation: Orientation::Vertical,
        }
    } else {
        Placement::Outside {
            side: Side::Below,
            orientation: Orientation::Horizontal,
        }
    }
}

/// Legend rows as entry indices, plus the framed extent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct LegendLayout {
    pub rows: Vec<Vec<usize>>,
    pub width: u32,
    pub height: u32,
    pub text_size: u32,
    pub token_width: u32,
}

pub(crate) struct LegendMetrics<'a> {
    pub names: Vec<&'a str>,
    pub token_width: u32,
    pub text_size: u32,
}

impl LegendMetrics<'_> {
    fn entry_width(&self, font: &BitmapFont, i: usize) -> u32 {
        self.token_width + TOKEN_GAP + font.text_width(self.names[i], self.text_size)
    }

    fn framed(&self, rows: Vec<Vec<usize>>, content_width: u32) -> LegendLayout {
        let n = rows.len() as u32;
        LegendLayout {
            width: content_width + 2 * LEGEND_PAD,
            height: n * self.text_size + (n - 1) * ROW_GAP + 2 * LEGEND_PAD,
            rows,
            text_size: self.text_size,
            token_width: self.token_width,
        }
    }

    pub fn vertical(&self, font: &BitmapFont) -> LegendLayout {
        let widest = (0..self.names.len()).map(|i| self.entry_width(font, i)).max().unwrap_or(0);
        self.framed((0..self.names.len()).map(|i| vec![i]).collect(), widest)
    }

    /// Entries flow left to right, wrapping to stay within `max_width`.
    pub fn horizontal(&self, font: &BitmapFont, max_width: u32) -> Option<LegendLayout> {
        let limit = max_width.checked_sub(2 * LEGEND_PAD)?;
        let spacing = self.text_size;
        let mut rows: Vec<Vec<usize>> = Vec::new();
        let mut row_width = 0;
        let mut widest = 0;
        for i in 0..self.names.len() {
            let w = self.entry_width(font, i);
            if w > limit {
                return None;
            }
            match rows.last_mut() {
                Some(row) if row_width + spacing + w <= limit => {
                    row.push(i);
                    row_width += spacing + w;
                }
                _ => {
                    rows.push(vec![i]);
                    row_width = w;
                }
            }
            widest = widest.max(row_width);
        }
        Some(self.framed(rows, widest))
    }

    /// Left offset of each entry within its row, relative to the content origin.
    pub fn entry_offsets(&self, font: &BitmapFont, row: &[usize]) -> Vec<u32> {
        let mut x = 0;
        row.iter()
            .map(|&i| {
                let at = x;
                x += self.entry_width(font, i) + self.text_size;
                at
            })
            .collect()
    }
}
