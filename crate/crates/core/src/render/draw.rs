//! Raster primitives on an RGB buffer: polylines, markers, polygon tint.

use num_complex::Complex64;
use rayon::prelude::*;

use super::{ImageGrid, Viewport};

const DASH: f64 = 6.0;

pub(crate) struct Canvas<'a> {
    pub rgb: &'a mut [[u8; 3]],
    pub width: u32,
    pub height: u32,
    pub viewport: Viewport,
}

impl<'a> Canvas<'a> {
    pub fn of(g: &'a mut ImageGrid) -> Canvas<'a> {
        Canvas {
            rgb: &mut g.rgb,
            width: g.width,
            height: g.height,
            viewport: g.viewport,
        }
    }

    fn put(&mut self, x: i64, y: i64, color: [u8; 3]) {
        if x >= 0 && y >= 0 && x < self.width as i64 && y < self.height as i64 {
            self.rgb[(y as u32 * self.width + x as u32) as usize] = color;
        }
    }

    fn px(&self, z: Complex64) -> (f64, f64) {
        self.viewport.to_pixel(self.width, self.height, z)
    }

    /// Polyline through complex points; `dashed` leaves every other
    /// `DASH`-pixel stretch blank.
    pub fn polyline(&mut self, pts: &[Complex64], color: [u8; 3], dashed: bool) {
        let lim = 4.0 * (self.width + self.height) as f64;
        let mut run = 0.0;
        for w in pts.windows(2) {
            let (x0, y0) = self.px(w[0]);
            let (x1, y1) = self.px(w[1]);
            // segments far outside the frame are skipped rather than clipped
            if [x0, y0, x1, y1].iter().any(|v| !v.is_finite() || v.abs() > lim) {
                continue;
            }
            let len = (x1 - x0).hypot(y1 - y0);
            let n = len.ceil().max(1.0) as usize;
            for k in 0..=n {
                let s = k as f64 / n as f64;
                let d = run + s * len;
                if dashed && (d / DASH) as u64 % 2 == 1 {
                    continue;
                }
                self.put((x0 + s * (x1 - x0)).floor() as i64, (y0 + s * (y1 - y0)).floor() as i64, color);
            }
            run += len;
        }
    }

    /// A small cross at `z`.
    pub fn marker(&mut self, z: Complex64, color: [u8; 3]) {
        let (x, y) = self.px(z);
        if !x.is_finite() || !y.is_finite() {
            return;
        }
        let (x, y) = (x.floor() as i64, y.floor() as i64);
        for d in -3..=3 {
            self.put(x + d, y, color);
            self.put(x, y + d, color);
        }
    }

    /// Blends `color` into every pixel whose center lies inside `poly`
    /// (even-odd rule).
    pub fn tint(&mut self, poly: &[Complex64], color: [u8; 3], alpha: f64) {
        let (w, h, v) = (self.width, self.height, self.viewport);
        self.rgb
            .par_chunks_mut(w as usize)
            .enumerate()
            .for_each(|(y, row)| {
                for (x, px) in row.iter_mut().enumerate() {
                    if inside(poly, v.pixel_center(w, h, x as u32, y as u32)) {
                        for i in 0..3 {
                            let mixed = (1.0 - alpha) * px[i] as f64 + alpha * color[i] as f64;
                            px[i] = mixed.round() as u8;
                        }
                    }
                }
            });
    }
}

pub(crate) fn inside(poly: &[Complex64], z: Complex64) -> bool {
    let mut odd = false;
    let n = poly.len();
    for i in 0..n {
        let (p, q) = (poly[i], poly[(i + 1) % n]);
        if (p.im > z.im) != (q.im > z.im) {
            let x = p.re + (z.im - p.im) / (q.im - p.im) * (q.re - p.re);
            if z.re < x {
                odd = !odd;
            }
        }
    }
    odd
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_odd_square() {
        let sq: Vec<Complex64> = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
            .iter()
            .map(|&(x, y)| Complex64::new(x, y))
            .collect();
        assert!(inside(&sq, Complex64::new(0.5, 0.5)));
        assert!(!inside(&sq, Complex64::new(1.5, 0.5)));
        assert!(!inside(&sq, Complex64::new(0.5, -0.1)));
    }
}
