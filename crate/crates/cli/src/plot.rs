//! Minimal raster plotting on top of `image`: data-coordinate panels with
//! polylines, shaded spans and heatmaps. Deliberately label-free; the CSV
//! files next to the images carry the numbers.

use image::{Rgb, RgbImage};
use std::path::Path;

use crate::error::CliError;

pub const BG: Rgb<u8> = Rgb([255, 255, 255]);
pub const AXIS: Rgb<u8> = Rgb([60, 60, 60]);
pub const BAND: Rgb<u8> = Rgb([255, 230, 200]);

/// One plotting panel mapping a data rectangle onto a pixel rectangle.
pub struct Panel {
    pub px: u32,
    pub py: u32,
    pub width: u32,
    pub height: u32,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
}

impl Panel {
    fn to_pixel(&self, x: f64, y: f64) -> (i64, i64) {
        let fx = (x - self.x_range.0) / (self.x_range.1 - self.x_range.0);
        let fy = (y - self.y_range.0) / (self.y_range.1 - self.y_range.0);
        (
            self.px as i64 + (fx * (self.width - 1) as f64).round() as i64,
            // Pixel rows grow downward.
            self.py as i64 + ((1.0 - fy) * (self.height - 1) as f64).round() as i64,
        )
    }

    fn put(&self, img: &mut RgbImage, px: i64, py: i64, color: Rgb<u8>) {
        let inside = px >= self.px as i64
            && px < (self.px + self.width) as i64
            && py >= self.py as i64
            && py < (self.py + self.height) as i64;
        if inside {
            img.put_pixel(px as u32, py as u32, color);
        }
    }

    /// Vertical span `x in [x0, x1]` filled across the panel height.
    pub fn shade_span(&self, img: &mut RgbImage, x0: f64, x1: f64, color: Rgb<u8>) {
        let (p0, _) = self.to_pixel(x0, self.y_range.0);
        let (p1, _) = self.to_pixel(x1, self.y_range.0);
        for px in p0.min(p1)..=p0.max(p1) {
            for py in self.py..self.py + self.height {
                self.put(img, px, py as i64, color);
            }
        }
    }

    pub fn line(&self, img: &mut RgbImage, a: (f64, f64), b: (f64, f64), color: Rgb<u8>) {
        let (x0, y0) = self.to_pixel(a.0, a.1);
        let (x1, y1) = self.to_pixel(b.0, b.1);
        let steps = (x1 - x0).abs().max((y1 - y0).abs()).max(1);
        for s in 0..=steps {
            let t = s as f64 / steps as f64;
            let px = x0 + ((x1 - x0) as f64 * t).round() as i64;
            let py = y0 + ((y1 - y0) as f64 * t).round() as i64;
            self.put(img, px, py, color);
        }
    }

    pub fn polyline(&self, img: &mut RgbImage, points: &[(f64, f64)], color: Rgb<u8>) {
        for pair in points.windows(2) {
            // Skip segments with non-finite ends (masked data).
            if pair.iter().all(|p| p.0.is_finite() && p.1.is_finite()) {
                self.line(img, pair[0], pair[1], color);
            }
        }
    }

    /// Axis frame plus the y = 0 line when visible.
    pub fn frame(&self, img: &mut RgbImage) {
        for px in self.px..self.px + self.width {
            self.put(img, px as i64, self.py as i64, AXIS);
            self.put(img, px as i64, (self.py + self.height - 1) as i64, AXIS);
        }
        for py in self.py..self.py + self.height {
            self.put(img, self.px as i64, py as i64, AXIS);
            self.put(img, (self.px + self.width - 1) as i64, py as i64, AXIS);
        }
        if self.y_range.0 < 0.0 && self.y_range.1 > 0.0 {
            self.line(
                img,
                (self.x_range.0, 0.0),
                (self.x_range.1, 0.0),
                Rgb([200, 200, 200]),
            );
        }
    }
}

pub fn new_canvas(width: u32, height: u32) -> RgbImage {
    RgbImage::from_pixel(width, height, BG)
}

/// Heatmap of `values` (row-major, `rows` rows of `cols`) into the panel,
/// white for zero through dark red for `max`.
pub fn heatmap(
    panel: &Panel,
    img: &mut RgbImage,
    values: &[f64],
    cols: usize,
    rows: usize,
    max: f64,
) {
    for py in 0..panel.height {
        for px in 0..panel.width {
            let i = (px as usize * cols) / panel.width as usize;
            let j = rows - 1 - (py as usize * rows) / panel.height as usize;
            let v = if max > 0.0 { (values[j * cols + i] / max).clamp(0.0, 1.0) } else { 0.0 };
            let shade = (255.0 * (1.0 - v)) as u8;
            img.put_pixel(panel.px + px, panel.py + py, Rgb([255, shade, shade]));
        }
    }
}

pub fn save(img: &RgbImage, path: &Path) -> Result<(), CliError> {
    img.save(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
