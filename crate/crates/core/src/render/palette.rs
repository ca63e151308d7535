//! Fixed color lookup table.
//!
//! Each class tag owns a base color. Shaded classes darken it in
//! `SHADE_LEVELS` steps from full brightness down to 40%. The ramps never
//! meet, so a pixel's color identifies its class. The unit-circle overlay is
//! pure white, which no ramp reaches.

use crate::orbit::ClassTag;

pub type Rgb = [u8; 3];

pub const SHADE_LEVELS: u8 = 16;

/// Escape levels (smoothed iteration counts) at or beyond this are drawn darkest.
pub const LEVEL_RANGE: f64 = 40.0;

pub const OVERLAY: Rgb = [255, 255, 255];

const BASE: [(ClassTag, Rgb); 11] = [
    (ClassTag::AlphaEscape, [230, 120, 40]),
    (ClassTag::BetaEscape, [40, 150, 230]),
    (ClassTag::AlphaResidual, [110, 70, 40]),
    (ClassTag::BetaResidual, [40, 90, 110]),
    (ClassTag::AlphaCycle, [200, 40, 160]),
    (ClassTag::BetaCycle, [120, 40, 220]),
    (ClassTag::BothEscape, [240, 210, 60]),
    (ClassTag::BasinZero, [230, 90, 90]),
    (ClassTag::BasinInfinity, [70, 200, 120]),
    (ClassTag::Cycle, [160, 100, 240]),
    (ClassTag::Undecided, [0, 0, 0]),
];

/// Rendering options.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PaletteSpec {
    /// Shade escape classes by their smoothed level.
    pub shading: bool,
    /// Draw `|t| = 1` (parameter planes) or `|z| = 1` (dynamical planes).
    pub unit_circle: bool,
}

impl Default for PaletteSpec {
    fn default() -> Self {
        PaletteSpec { shading: true, unit_circle: false }
    }
}

pub fn base_color(tag: ClassTag) -> Rgb {
    BASE.iter().find(|(t, _)| *t == tag).map(|(_, c)| *c).expect("every tag has a color")
}

/// Quantizes a smoothed level to `0..SHADE_LEVELS`.
pub fn shade_level(level: f64) -> u8 {
    if level.is_nan() {
        return SHADE_LEVELS - 1;
    }
    let s = (level.clamp(0.0, LEVEL_RANGE) / LEVEL_RANGE).sqrt();
    ((s * (SHADE_LEVELS - 1) as f64).round() as u8).min(SHADE_LEVELS - 1)
}

pub fn shaded(tag: ClassTag, shade: u8) -> Rgb {
    let base = base_color(tag);
    let k = 1.0 - 0.6 * shade.min(SHADE_LEVELS - 1) as f64 / (SHADE_LEVELS - 1) as f64;
    base.map(|c| (c as f64 * k).round() as u8)
}
