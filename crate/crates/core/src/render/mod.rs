//! Rasterized parameter and dynamical planes.

mod components;
mod palette;
mod ppm;
mod view;

use num_complex::Complex64;

pub use components::count_components;
pub use palette::{base_color, shade_level, shaded, PaletteSpec, Rgb, LEVEL_RANGE, OVERLAY, SHADE_LEVELS};
pub use ppm::{encode_ppm, write_image};
pub use view::ViewRect;

use crate::error::Result;
use crate::family::{self, FamilyParams, PcParams, TrapDisc, DEFAULT_THETA};
use crate::orbit::{
    self, ClassTag, Dynamics, FamilyMap, OrbitFate, OrbitSettings, ParamClass, PcMap, PointClass,
};
use crate::sphere::ExtComplex;

/// Row-major RGB pixels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RasterImage {
    pub width_px: usize,
    pub height_px: usize,
    pub pixels: Vec<Rgb>,
}

impl RasterImage {
    pub fn get(&self, col: usize, row: usize) -> Rgb {
        self.pixels[row * self.width_px + col]
    }
}

/// Anything with a [`ClassTag`].
pub trait Classified {
    fn tag(&self) -> ClassTag;
}

impl Classified for ParamClass {
    fn tag(&self) -> ClassTag {
        ParamClass::tag(self)
    }
}

impl Classified for PointClass {
    fn tag(&self) -> ClassTag {
        PointClass::tag(self)
    }
}

/// Row-major class of every pixel, same shape as the image.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassGrid<C> {
    pub width_px: usize,
    pub height_px: usize,
    pub cells: Vec<C>,
}

impl<C> ClassGrid<C> {
    pub fn get(&self, col: usize, row: usize) -> &C {
        &self.cells[row * self.width_px + col]
    }
}

/// How pixels are distributed over threads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rows are split across a rayon pool; `None` uses the global pool.
    #[cfg(feature = "parallel")]
    Parallel(Option<usize>),
}

impl Default for Execution {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Execution::Parallel(None)
        }
        #[cfg(not(feature = "parallel"))]
        {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// The default, with the worker count capped by `RENDER_THREADS` if set.
    pub fn from_env() -> Self {
        let threads = std::env::var("RENDER_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok());
        match threads {
            Some(1) => Execution::Sequential,
            #[cfg(feature = "parallel")]
            Some(k) if k > 1 => Execution::Parallel(Some(k)),
            _ => Execution::default(),
        }
    }

    fn map_pixels<T, F>(self, w: usize, h: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize, usize) -> T + Sync,
    {
        match self {
            Execution::Sequential => (0..h).flat_map(|row| (0..w).map(move |col| (col, row))).map(|(c, r)| f(c, r)).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel(threads) => {
                use rayon::prelude::*;
                let run = || {
                    (0..h)
                        .into_par_iter()
                        .flat_map_iter(|row| (0..w).map(move |col| (col, row)))
                        .map(|(c, r)| f(c, r))
                        .collect()
                };
                match threads.and_then(|k| rayon::ThreadPoolBuilder::new().num_threads(k).build().ok()) {
                    Some(pool) => pool.install(run),
                    None => run(),
                }
            }
        }
    }
}

/// Everything a render call needs besides the scene itself.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderSettings {
    pub width_px: usize,
    pub height_px: usize,
    pub budget: usize,
    pub palette: PaletteSpec,
    pub execution: Execution,
}

impl RenderSettings {
    pub fn new(width_px: usize, height_px: usize, budget: usize) -> Self {
        RenderSettings {
            width_px: width_px.max(1),
            height_px: height_px.max(1),
            budget,
            palette: PaletteSpec::default(),
            execution: Execution::from_env(),
        }
    }

    pub fn with_palette(mut self, palette: PaletteSpec) -> Self {
        self.palette = palette;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }
}

/// Smoothed iteration count from the last orbit point: `k - log_m(log|z| / log r)`
/// where `r` is the radius that stopped the orbit. Equals `-log_m` of the
/// Green's function up to a constant.
fn smooth_level(fate: &OrbitFate, degree: f64, radius: f64) -> f64 {
    let k = fate.iterations as f64;
    let lz = fate.last.norm().ln();
    let lr = radius.ln();
    if !lz.is_finite() || lr == 0.0 {
        return k;
    }
    k - ((lz / lr).max(1.0)).ln() / degree.ln()
}

fn point_color<D: Dynamics>(fate: &OrbitFate, map: &D, local_degree: f64, palette: &PaletteSpec) -> Rgb {
    let tag = fate.outcome.tag();
    if !palette.shading {
        return base_color(tag);
    }
    let level = match fate.outcome {
        PointClass::BasinZero { .. } => smooth_level(fate, local_degree, map.trap_radius()),
        PointClass::BasinInfinity { .. } => smooth_level(fate, local_degree, map.escape_radius()),
        _ => return base_color(tag),
    };
    shaded(tag, shade_level(level))
}

fn overlay_circle(palette: &PaletteSpec, z: Complex64, pitch: (f64, f64)) -> bool {
    palette.unit_circle && (z.norm() - 1.0).abs() < 0.5 * pitch.0.max(pitch.1)
}

/// Classifies every pixel center `t` of `view` and colors it by class. Escape
/// classes are shaded by the smoothed level of the orbit that decided them.
pub fn render_parameter_plane(
    m: u32,
    n: u32,
    view: &ViewRect,
    settings: &RenderSettings,
) -> Result<(RasterImage, ClassGrid<ParamClass>)> {
    let trap = family::trap_disc(m, n, DEFAULT_THETA)?;
    let orbit_settings = OrbitSettings::with_budget(settings.budget);
    let (w, h) = (settings.width_px, settings.height_px);
    let pitch = view.pitch(w, h);
    let palette = settings.palette;
    let cells = settings.execution.map_pixels(w, h, |col, row| {
        let t = view.pixel_center(col, row, w, h);
        parameter_pixel(&trap, t, &orbit_settings, &palette, pitch)
    });
    Ok(split(w, h, cells))
}

fn parameter_pixel(
    trap: &TrapDisc,
    t: Complex64,
    settings: &OrbitSettings,
    palette: &PaletteSpec,
    pitch: (f64, f64),
) -> (Rgb, ParamClass) {
    // t = 0 is degenerate; it only happens at an exact pixel center
    let Ok(r) = orbit::classify_parameter_with(trap, t, settings) else {
        return (base_color(ClassTag::Undecided), ParamClass::Undecided);
    };
    let mut color = base_color(r.class.tag());
    if palette.shading {
        let p = FamilyParams::new(trap.m, trap.n, t).expect("classified above");
        let map = FamilyMap::new(p, trap);
        let m = trap.m as f64;
        let level = match r.class {
            ParamClass::AlphaEscape(_) | ParamClass::AlphaResidual => Some(smooth_level(&r.alpha, m, map.trap_radius())),
            ParamClass::BetaEscape(_) | ParamClass::BetaResidual => Some(smooth_level(&r.beta, m, map.escape_radius())),
            ParamClass::BothEscape { .. } => Some(smooth_level(&r.alpha, m, map.trap_radius())),
            _ => None,
        };
        if let Some(level) = level {
            color = shaded(r.class.tag(), shade_level(level));
        }
    }
    if overlay_circle(palette, t, pitch) {
        color = OVERLAY;
    }
    (color, r.class)
}

/// Classifies the free critical orbit of `P_c` (seed `-m/(m+n)`) at every
/// pixel center `c`: escape to infinity, attracting cycle, or undecided.
/// Orbits absorbed by 0 are reported as [`PointClass::BasinZero`].
pub fn render_pc_parameter_plane(
    m: u32,
    n: u32,
    view: &ViewRect,
    settings: &RenderSettings,
) -> Result<(RasterImage, ClassGrid<PointClass>)> {
    PcParams::new(m, n, Complex64::new(1.0, 0.0))?;
    Ok(render_pc_with(m, n, view, settings, Some))
}

/// The `P_c` plane drawn in `t` coordinates through `c = -(t + 2 + 1/t)/2`,
/// for `(m, n) = (2, 1)`. The overlay marks `|t| = 1`.
pub fn render_pc_over_t(view: &ViewRect, settings: &RenderSettings) -> Result<(RasterImage, ClassGrid<PointClass>)> {
    family::c_of_t(2, 1, Complex64::new(1.0, 0.0))?;
    Ok(render_pc_with(2, 1, view, settings, |t| family::c_of_t(2, 1, t).ok()))
}

fn render_pc_with<F>(m: u32, n: u32, view: &ViewRect, settings: &RenderSettings, to_c: F) -> (RasterImage, ClassGrid<PointClass>)
where
    F: Fn(Complex64) -> Option<Complex64> + Sync,
{
    let orbit_settings = OrbitSettings::with_budget(settings.budget);
    let (w, h) = (settings.width_px, settings.height_px);
    let pitch = view.pitch(w, h);
    let palette = settings.palette;
    let cells = settings.execution.map_pixels(w, h, |col, row| {
        let x = view.pixel_center(col, row, w, h);
        let Some(params) = to_c(x).and_then(|c| PcParams::new(m, n, c).ok()) else {
            return (base_color(ClassTag::Undecided), PointClass::Undecided);
        };
        let map = PcMap::new(params);
        let fate = orbit::orbit_fate(&map, ExtComplex::real(params.free_critical_point()), &orbit_settings);
        let degree = if matches!(fate.outcome, PointClass::BasinZero { .. }) { m } else { m + n };
        let mut color = point_color(&fate, &map, degree as f64, &palette);
        if overlay_circle(&palette, x, pitch) {
            color = OVERLAY;
        }
        (color, fate.outcome)
    });
    split(w, h, cells)
}

/// Classifies every pixel center `z` of `view` under `f_t`.
pub fn render_dynamical_plane(
    p: &FamilyParams,
    view: &ViewRect,
    settings: &RenderSettings,
) -> Result<(RasterImage, ClassGrid<PointClass>)> {
    let trap = family::trap_disc(p.m(), p.n(), DEFAULT_THETA)?;
    let map = FamilyMap::new(*p, &trap);
    let orbit_settings = OrbitSettings::with_budget(settings.budget);
    let (w, h) = (settings.width_px, settings.height_px);
    let pitch = view.pitch(w, h);
    let palette = settings.palette;
    let cells = settings.execution.map_pixels(w, h, |col, row| {
        let z = view.pixel_center(col, row, w, h);
        let fate = orbit::orbit_fate(&map, ExtComplex::Finite(z), &orbit_settings);
        let mut color = point_color(&fate, &map, p.m() as f64, &palette);
        if overlay_circle(&palette, z, pitch) {
            color = OVERLAY;
        }
        (color, fate.outcome)
    });
    Ok(split(w, h, cells))
}

fn split<C>(w: usize, h: usize, cells: Vec<(Rgb, C)>) -> (RasterImage, ClassGrid<C>) {
    let (pixels, classes): (Vec<Rgb>, Vec<C>) = cells.into_iter().unzip();
    (
        RasterImage { width_px: w, height_px: h, pixels },
        ClassGrid { width_px: w, height_px: h, cells: classes },
    )
}
