//! Embedded 8x8 bitmap font, scaled by nearest neighbour to four pixel sizes.
//!
//! Asset layout (`BMF1`): magic, version, first code point, glyph count,
//! glyph width, glyph height, then one byte per glyph row with bit 0 as the
//! leftmost pixel.

use std::sync::OnceLock;

use crate::{Error, Result};

pub const FONT_ASSET: &[u8] = include_bytes!("../../assets/font8x8.bmf");
pub const FONT_ASSET_VERSION: u8 = 1;

/// Glyph cell size in pixels for each font size index.
pub const FONT_PIXEL_SIZES: [u32; 4] = [8, 10, 12, 14];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitmapFont {
    first: u8,
    glyph_height: u8,
    rows: Vec<u8>,
}

impl BitmapFont {
    pub fn parse(bytes: &[u8]) -> Result<Self> {
        let bad = |m: &str| Error::format("bitmap font", m);
        if bytes.len() < 9 || &bytes[..4] != b"BMF1" {
            return Err(bad("missing BMF1 header"));
        }
        let (version, first, count, gw, gh) = (bytes[4], bytes[5], bytes[6], bytes[7], bytes[8]);
        if version != FONT_ASSET_VERSION {
            return Err(bad(&format!("unsupported version {version}")));
        }
        if gw != 8 || gh == 0 {
            return Err(bad("glyphs must be 8 pixels wide"));
        }
        let rows = &bytes[9..];
        if rows.len() != usize::from(count) * usize::from(gh) {
            return Err(bad("glyph data length does not match header"));
        }
        Ok(BitmapFont {
            first,
            glyph_height: gh,
            rows: rows.to_vec(),
        })
    }

    pub fn embedded() -> &'static BitmapFont {
        static FONT: OnceLock<BitmapFont> = OnceLock::new();
        FONT.get_or_init(|| BitmapFont::parse(FONT_ASSET).expect("embedded font asset is valid"))
    }

    fn glyph(&self, ch: char) -> &[u8] {
        let gh = usize::from(self.glyph_height);
        let count = self.rows.len() / gh;
        let index = |c: u32| {
            c.checked_sub(u32::from(self.first))
                .map(|i| i as usize)
                .filter(|&i| i < count)
        };
        let i = index(ch as u32).or_else(|| index('?' as u32)).unwrap_or(0);
        &self.rows[i * gh..(i + 1) * gh]
    }

    /// Advance is one square cell per character.
    pub fn text_width(&self, text: &str, size: u32) -> u32 {
        text.chars().count() as u32 * size
    }

    /// Lit pixels of `text` in text-local coordinates.
    pub fn rasterize(&self, text: &str, size: u32) -> Vec<(u32, u32)> {
        let gh = u32::from(self.glyph_height);
        let mut out = Vec::new();
        for (i, ch) in text.chars().enumerate() {
            let glyph = self.glyph(ch);
            for py in 0..size {
                let row = glyph[(py * gh / size) as usize];
                for px in 0..size {
                    if row >> (px * 8 / size) & 1 == 1 {
                        out.push((i as u32 * size + px, py));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_font_covers_printable_ascii() {
        let font = BitmapFont::embedded();
        for c in ' '..='~' {
            let lit = font.rasterize(&c.to_string(), 8);
            assert_eq!(lit.is_empty(), c == ' ', "glyph {c:?}");
        }
    }

    #[test]
    fn sizes_scale_extent() {
        let font = BitmapFont::embedded();
        for size in FONT_PIXEL_SIZES {
            let lit = font.rasterize("W", size);
            assert!(lit.iter().all(|&(x, y)| x < size && y < size));
            assert_eq!(font.text_width("abc", size), 3 * size);
        }
    }

    #[test]
    fn corrupt_asset_rejected() {
        assert!(BitmapFont::parse(b"nope").is_err());
        let mut bytes = FONT_ASSET.to_vec();
        bytes.pop();
        assert!(BitmapFont::parse(&bytes).is_err());
    }
}
