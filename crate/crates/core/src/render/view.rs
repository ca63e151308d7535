use num_complex::Complex64;

use crate::error::{Error, Result};

/// An axis-aligned window of the plane. Pixel `(col, row)` of a `w × h`
/// raster samples the center of its cell; row 0 is the top edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ViewRect {
    center: Complex64,
    width: f64,
    height: f64,
}

impl ViewRect {
    pub fn new(center: Complex64, width: f64, height: f64) -> Result<Self> {
        if !(center.re.is_finite() && center.im.is_finite()) {
            return Err(Error::InvalidParams(format!("view center must be finite, got {center}")));
        }
        if !(width > 0.0 && height > 0.0 && width.is_finite() && height.is_finite()) {
            return Err(Error::InvalidParams(format!("view size must be positive, got {width} x {height}")));
        }
        Ok(ViewRect { center, width, height })
    }

    pub fn from_bounds(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        Self::new(
            Complex64::new(0.5 * (re_min + re_max), 0.5 * (im_min + im_max)),
            re_max - re_min,
            im_max - im_min,
        )
    }

    /// `|Re t|, |Im t| <= 2.5`.
    pub fn default_parameter_window() -> Self {
        Self::from_bounds(-2.5, 2.5, -2.5, 2.5).expect("constant window")
    }

    /// `-0.2 < Re < 0.25`, `-0.25 < Im < 0.25`.
    pub fn detail_window() -> Self {
        Self::from_bounds(-0.2, 0.25, -0.25, 0.25).expect("constant window")
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    /// Top-left corner.
    pub fn top_left(&self) -> Complex64 {
        self.center + Complex64::new(-0.5 * self.width, 0.5 * self.height)
    }

    /// Cell size `(dx, dy)` for a `w × h` raster.
    pub fn pitch(&self, w: usize, h: usize) -> (f64, f64) {
        (self.width / w as f64, self.height / h as f64)
    }

    pub fn pixel_center(&self, col: usize, row: usize, w: usize, h: usize) -> Complex64 {
        let (dx, dy) = self.pitch(w, h);
        self.top_left() + Complex64::new((col as f64 + 0.5) * dx, -(row as f64 + 0.5) * dy)
    }

    /// Inverse of [`pixel_center`](Self::pixel_center); `None` outside the view.
    pub fn pixel_of(&self, z: Complex64, w: usize, h: usize) -> Option<(usize, usize)> {
        let (dx, dy) = self.pitch(w, h);
        let off = z - self.top_left();
        let col = (off.re / dx).floor();
        let row = (-off.im / dy).floor();
        if col < 0.0 || row < 0.0 || col >= w as f64 || row >= h as f64 {
            return None;
        }
        Some((col as usize, row as usize))
    }
}
