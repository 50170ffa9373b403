//! Figures: escape-time rasters of 𝓜 and 𝓜₂ with overlaid leaf curves, and
//! the lamination disk as SVG.
//!
//! Every raster is sampled at pixel centers and computed row-parallel; rows
//! are assembled in order, so output does not depend on the thread count.
//! PNG files get a JSON sidecar holding the full [`RenderConfig`].

mod disk;
mod draw;
mod overlay;

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circle::Angle;
use crate::dynamics::{in_m2, in_mandelbrot, EscapeResult, EscapeStatus, LeafCurve};
use crate::error::{Error, Result};

pub use disk::{render_lamination_disk, DiskDrawing};
pub use overlay::{render_dynamical_overlay, render_m1_overlay, wake_polygon};

/// Axis-aligned rectangle of the complex plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Viewport {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Viewport> {
        let v = Viewport {
            re_min,
            re_max,
            im_min,
            im_max,
        };
        v.validate()?;
        Ok(v)
    }

    /// The square `[−r, r] × [−r, r]`.
    pub fn square(r: f64) -> Result<Viewport> {
        Viewport::new(-r, r, -r, r)
    }

    fn validate(&self) -> Result<()> {
        let ok = [self.re_min, self.re_max, self.im_min, self.im_max]
            .iter()
            .all(|x| x.is_finite())
            && self.re_min < self.re_max
            && self.im_min < self.im_max;
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("degenerate viewport {self:?}")))
        }
    }

    /// Center of pixel `(x, y)`; row 0 is the top (largest imaginary part).
    pub fn pixel_center(&self, width: u32, height: u32, x: u32, y: u32) -> Complex64 {
        self.sample(width, height, x as f64 + 0.5, y as f64 + 0.5)
    }

    /// Point at fractional pixel coordinates.
    pub fn sample(&self, width: u32, height: u32, x: f64, y: f64) -> Complex64 {
        Complex64::new(
            self.re_min + x / width as f64 * (self.re_max - self.re_min),
            self.im_max - y / height as f64 * (self.im_max - self.im_min),
        )
    }

    /// Inverse of [`Viewport::sample`].
    pub fn to_pixel(&self, width: u32, height: u32, z: Complex64) -> (f64, f64) {
        (
            (z.re - self.re_min) / (self.re_max - self.re_min) * width as f64,
            (self.im_max - z.im) / (self.im_max - self.im_min) * height as f64,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Palette {
    /// Black members on white, escaped pixels in gray levels.
    Gray,
    /// Black members, escaped pixels in a blue-to-yellow ramp.
    Ember,
}

impl Palette {
    pub fn parse(s: &str) -> Result<Palette> {
        match s {
            "gray" => Ok(Palette::Gray),
            "ember" => Ok(Palette::Ember),
            _ => Err(Error::Config(format!("unknown palette {s:?} (gray|ember)"))),
        }
    }

    fn color(self, r: &EscapeResult, max_iter: u32) -> [u8; 3] {
        if r.status != EscapeStatus::Escaped {
            return [0, 0, 0];
        }
        // log scale so the bulk of fast escapes is not washed out
        let s = ((r.iterations as f64).ln_1p() / (max_iter as f64).ln_1p()).clamp(0.0, 1.0);
        match self {
            Palette::Gray => {
                let v = (255.0 - 200.0 * s).round() as u8;
                [v, v, v]
            }
            Palette::Ember => {
                let r = (40.0 + 215.0 * s).round() as u8;
                let g = (30.0 + 190.0 * s * s).round() as u8;
                let b = (120.0 * (1.0 - s) + 30.0).round() as u8;
                [r, g, b]
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RenderConfig {
    pub width: u32,
    pub height: u32,
    pub viewport: Viewport,
    pub max_iter: u32,
    /// Escape radius for 𝓜 and dynamical planes.
    pub escape_radius: f64,
    /// Basin-entry threshold for 𝓜₂ (see `in_m2`).
    pub eps: f64,
    pub palette: Palette,
    /// Draw leaves of depth ≤ this; none draws no leaves.
    pub lamination_depth: Option<u32>,
    /// Shade the Basilica wake, the parameters beyond the ⟨1/3,2/3⟩ curve.
    pub shade_wake: bool,
    /// Extra rays to draw, as exact angles.
    pub ray_angles: Vec<Angle>,
    /// Potential of the equipotential joining the two rays of a leaf curve.
    pub leaf_height: f64,
    /// Average 2×2 subpixel samples per pixel.
    pub supersample: bool,
}

impl RenderConfig {
    pub fn m1() -> RenderConfig {
        RenderConfig {
            width: 1000,
            height: 1000,
            viewport: Viewport::new(-2.2, 1.2, -1.7, 1.7).unwrap(),
            max_iter: 500,
            escape_radius: 2.0,
            eps: 1e-6,
            palette: Palette::Gray,
            lamination_depth: Some(3),
            shade_wake: true,
            ray_angles: Vec::new(),
            leaf_height: 0.02,
            supersample: false,
        }
    }

    pub fn m2() -> RenderConfig {
        RenderConfig {
            width: 512,
            height: 512,
            viewport: Viewport::square(8.0).unwrap(),
            lamination_depth: None,
            shade_wake: false,
            ..RenderConfig::m1()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.viewport.validate()?;
        if self.width == 0 || self.height == 0 || self.max_iter < 2 {
            return Err(Error::Config("width, height must be ≥ 1 and max_iter ≥ 2".into()));
        }
        if !(self.escape_radius >= 2.0) || !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::Config("need escape_radius ≥ 2 and 0 < eps < 1".into()));
        }
        if !(self.leaf_height > 0.0) {
            return Err(Error::Config("leaf_height must be positive".into()));
        }
        Ok(())
    }
}

/// A rendered raster: escape data per pixel plus the final colors.
#[derive(Clone, Debug, PartialEq)]
pub struct ImageGrid {
    pub width: u32,
    pub height: u32,
    pub viewport: Viewport,
    pub cells: Vec<EscapeResult>,
    pub rgb: Vec<[u8; 3]>,
    /// Things worth knowing about this image: excluded points, broken traces.
    pub notes: Vec<String>,
    /// Leaf curves drawn over the raster, in the order they were drawn.
    pub curves: Vec<LeafCurve>,
    pub config: RenderConfig,
}

impl ImageGrid {
    pub fn cell(&self, x: u32, y: u32) -> &EscapeResult {
        &self.cells[(y * self.width + x) as usize]
    }

    /// Cell of the pixel containing `z`, if it is in view.
    pub fn cell_at(&self, z: Complex64) -> Option<&EscapeResult> {
        let (x, y) = self.viewport.to_pixel(self.width, self.height, z);
        if x < 0.0 || y < 0.0 || x >= self.width as f64 || y >= self.height as f64 {
            return None;
        }
        Some(self.cell(x as u32, y as u32))
    }

    pub fn member_count(&self) -> usize {
        self.cells
            .iter()
            .filter(|r| r.status != EscapeStatus::Escaped)
            .count()
    }

    pub fn to_png_bytes(&self) -> Result<Vec<u8>> {
        let mut raw = Vec::with_capacity(self.rgb.len() * 3);
        for px in &self.rgb {
            raw.extend_from_slice(px);
        }
        let img = image::RgbImage::from_raw(self.width, self.height, raw)
            .ok_or_else(|| Error::Internal("pixel buffer size mismatch".into()))?;
        let mut out = std::io::Cursor::new(Vec::new());
        img.write_to(&mut out, image::ImageFormat::Png)?;
        Ok(out.into_inner())
    }

    pub fn sidecar_json(&self) -> Result<String> {
        let v = serde_json::json!({
            "format_version": crate::FORMAT_VERSION,
            "config": self.config,
            "member_pixels": self.member_count(),
            "broken_leaves": self.curves.iter().filter(|c| c.broken.is_some()).count(),
            "notes": self.notes,
        });
        Ok(serde_json::to_string_pretty(&v)?)
    }

    /// Writes `path` and its sidecar `path.json`; returns the sidecar path.
    pub fn write_png(&self, path: &Path) -> Result<PathBuf> {
        fs::write(path, self.to_png_bytes()?)?;
        let side = sidecar_path(path);
        fs::write(&side, self.sidecar_json()?)?;
        Ok(side)
    }
}

/// `image.png` → `image.png.json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Evaluates `f` at every pixel center (or 2×2 subpixels), rows in parallel.
pub(crate) fn raster(cfg: &RenderConfig, f: impl Fn(Complex64) -> Result<EscapeResult> + Sync) -> Result<Vec<EscapeResult>> {
    let (w, h) = (cfg.width, cfg.height);
    let rows: Vec<Result<Vec<EscapeResult>>> = (0..h)
        .into_par_iter()
        .map(|y| {
            (0..w)
                .map(|x| {
                    if !cfg.supersample {
                        return f(cfg.viewport.pixel_center(w, h, x, y));
                    }
                    // majority of four subpixels decides membership; the
                    // iteration count is their mean
                    let mut members = 0;
                    let mut iters = 0u64;
                    let mut last = None;
                    for (dx, dy) in [(0.25, 0.25), (0.75, 0.25), (0.25, 0.75), (0.75, 0.75)] {
                        let r = f(cfg.viewport.sample(w, h, x as f64 + dx, y as f64 + dy))?;
                        members += (r.status != EscapeStatus::Escaped) as u32;
                        iters += r.iterations as u64;
                        last = Some(r);
                    }
                    let mut r = last.unwrap();
                    r.status = if members >= 2 {
                        EscapeStatus::Member
                    } else {
                        EscapeStatus::Escaped
                    };
                    r.iterations = (iters / 4) as u32;
                    Ok(r)
                })
                .collect()
        })
        .collect();
    let mut cells = Vec::with_capacity((w * h) as usize);
    for row in rows {
        cells.extend(row?);
    }
    Ok(cells)
}

pub(crate) fn colorize(cfg: &RenderConfig, cells: &[EscapeResult]) -> Vec<[u8; 3]> {
    cells.iter().map(|r| cfg.palette.color(r, cfg.max_iter)).collect()
}

/// Escape-time picture of the Mandelbrot set.
pub fn render_m1(cfg: &RenderConfig) -> Result<ImageGrid> {
    cfg.validate()?;
    let cells = raster(cfg, |c| in_mandelbrot(c, cfg.max_iter, cfg.escape_radius))?;
    Ok(ImageGrid {
        width: cfg.width,
        height: cfg.height,
        viewport: cfg.viewport,
        rgb: colorize(cfg, &cells),
        cells,
        notes: Vec::new(),
        curves: Vec::new(),
        config: cfg.clone(),
    })
}

/// The slice 𝓜₂: black where −1 stays out of the basin of {0, ∞}, escaped
/// parameters shaded by the iteration at which basin entry was certified.
pub fn render_m2(cfg: &RenderConfig) -> Result<ImageGrid> {
    cfg.validate()?;
    let zero = Complex64::new(0.0, 0.0);
    let cells = raster(cfg, |a| {
        if a == zero {
            return Ok(EscapeResult {
                status: EscapeStatus::Escaped,
                iterations: 0,
                final_modulus: f64::INFINITY,
            });
        }
        in_m2(a, cfg.max_iter, cfg.eps)
    })?;
    let mut notes = Vec::new();
    let (x, y) = cfg.viewport.to_pixel(cfg.width, cfg.height, zero);
    if x >= 0.0 && y >= 0.0 && x < cfg.width as f64 && y < cfg.height as f64 {
        let center = cfg.viewport.pixel_center(cfg.width, cfg.height, x as u32, y as u32);
        if center == zero {
            notes.push(format!("pixel ({}, {}) is a = 0, excluded; drawn as escaped", x as u32, y as u32));
        }
    }
    Ok(ImageGrid {
        width: cfg.width,
        height: cfg.height,
        viewport: cfg.viewport,
        rgb: colorize(cfg, &cells),
        cells,
        notes,
        curves: Vec::new(),
        config: cfg.clone(),
    })
}

/// Runs `f` on a pool of `threads` workers (all cores for none).
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(Error::Config("thread count must be ≥ 1".into()));
        }
        b = b.num_threads(n);
    }
    let pool = b
        .build()
        .map_err(|e| Error::Config(format!("cannot start thread pool: {e}")))?;
    Ok(pool.install(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pixel_mapping_round_trips() {
        let v = Viewport::new(-2.2, 1.2, -1.7, 1.7).unwrap();
        let z = v.pixel_center(1000, 1000, 0, 0);
        assert!((z - c(-2.2 + 0.0017, 1.7 - 0.0017)).norm() < 1e-12);
        let (x, y) = v.to_pixel(1000, 1000, z);
        assert!((x - 0.5).abs() < 1e-9 && (y - 0.5).abs() < 1e-9);
        assert!(Viewport::new(1.0, 1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn m1_pixels() {
        let cfg = RenderConfig {
            width: 341,
            height: 341,
            lamination_depth: None,
            ..RenderConfig::m1()
        };
        let g = render_m1(&cfg).unwrap();
        assert_eq!(g.cell_at(c(0.0, 0.0)).unwrap().status, EscapeStatus::Member);
        // orbit 0, 2, 6: beyond radius 2 at the second iterate
        let far = render_m1(&RenderConfig {
            viewport: Viewport::new(1.9, 2.1, -0.1, 0.1).unwrap(),
            width: 3,
            height: 3,
            ..cfg
        })
        .unwrap();
        let r = far.cell_at(c(2.0, 0.0)).unwrap();
        assert_eq!((r.status, r.iterations), (EscapeStatus::Escaped, 2));
    }

    #[test]
    fn m2_symmetry_and_oracles() {
        let cfg = RenderConfig {
            width: 64,
            height: 64,
            max_iter: 200,
            ..RenderConfig::m2()
        };
        let g = render_m2(&cfg).unwrap();
        assert_eq!(g.cell_at(c(1.0, 0.0)).unwrap().status, EscapeStatus::Member);
        assert_eq!(g.cell_at(c(-4.0, 0.0)).unwrap().status, EscapeStatus::Escaped);
        for y in 0..32 {
            for x in 0..64 {
                assert_eq!(g.cell(x, y).status, g.cell(x, 63 - y).status);
            }
        }
    }

    #[test]
    fn m2_flags_the_excluded_point() {
        let cfg = RenderConfig {
            width: 5,
            height: 5,
            viewport: Viewport::square(1.0).unwrap(),
            ..RenderConfig::m2()
        };
        let g = render_m2(&cfg).unwrap();
        assert_eq!(g.cell(2, 2).status, EscapeStatus::Escaped);
        assert_eq!(g.notes.len(), 1);
    }

    #[test]
    fn thread_count_does_not_change_pixels() {
        let cfg = RenderConfig {
            width: 48,
            height: 40,
            max_iter: 100,
            ..RenderConfig::m2()
        };
        let one = with_threads(Some(1), || render_m2(&cfg)).unwrap().unwrap();
        let many = with_threads(Some(4), || render_m2(&cfg)).unwrap().unwrap();
        assert_eq!(one.to_png_bytes().unwrap(), many.to_png_bytes().unwrap());
    }
}
