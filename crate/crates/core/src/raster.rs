//! Grid renderers: dynamical planes, parameter spaces, root-pair basins and
//! stability regions, plus bit-exact PPM/CSV encoding.
//!
//! Per-pixel work is pure and independent; rows are partitioned across
//! rayon workers and the output buffer is assembled by index, so the degree
//! of parallelism can never affect the output bytes.

use crate::analysis::{
    ratio_critical_seed, ratio_map_fixed_points, root_pair_fixed_points, stability_min,
    CriticalChoice, PointKind, StabilityClass,
};
use crate::operators::{ratio_map, root_pair_map, RatioParam};
use crate::orbits::{iterate_orbit, iterate_to_targets, OrbitConfig, OrbitStatus};
use crate::sphere::SpherePoint;
use num_complex::Complex64;
use rayon::prelude::*;

/// A rectangular window of the complex plane sampled at pixel centers.
/// Row 0 is the top of the image (maximum imaginary part).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderRegion {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub width: u32,
    pub height: u32,
}

impl RenderRegion {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64, width: u32, height: u32) -> Self {
        assert!(re_min < re_max && im_min < im_max, "empty render region");
        assert!(width > 0 && height > 0, "empty grid");
        RenderRegion {
            re_min,
            re_max,
            im_min,
            im_max,
            width,
            height,
        }
    }

    /// The `[-5, 5] x [-5, 5]` window used throughout.
    pub fn default_square(width: u32, height: u32) -> Self {
        Self::new(-5.0, 5.0, -5.0, 5.0, width, height)
    }

    /// Complex coordinate of the center of pixel `(i, j)`.
    pub fn pixel_center(&self, i: u32, j: u32) -> Complex64 {
        let re = self.re_min + (i as f64 + 0.5) * (self.re_max - self.re_min) / self.width as f64;
        let im = self.im_max - (j as f64 + 0.5) * (self.im_max - self.im_min) / self.height as f64;
        Complex64::new(re, im)
    }

    pub fn pixel_count(&self) -> usize {
        self.width as usize * self.height as usize
    }
}

/// Legend classes: red for the first root basin, green for the second,
/// yellow for strange attractors, black for no convergence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PixelClass {
    Red,
    Green,
    Yellow,
    Black,
}

impl PixelClass {
    pub fn letter(self) -> char {
        match self {
            PixelClass::Red => 'R',
            PixelClass::Green => 'G',
            PixelClass::Yellow => 'Y',
            PixelClass::Black => 'B',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pixel {
    pub class: PixelClass,
    pub iters: u32,
}

/// A rendered grid of pixel classifications with iteration counts.
#[derive(Debug, Clone, PartialEq)]
pub struct RasterGrid {
    pub region: RenderRegion,
    pub max_iters: u32,
    pub pixels: Vec<Pixel>,
}

impl RasterGrid {
    pub fn pixel(&self, i: u32, j: u32) -> Pixel {
        self.pixels[j as usize * self.region.width as usize + i as usize]
    }

    pub fn class_fraction(&self, class: PixelClass) -> f64 {
        let n = self.pixels.iter().filter(|p| p.class == class).count();
        n as f64 / self.pixels.len() as f64
    }
}

fn render_grid<F>(region: &RenderRegion, max_iters: u32, per_pixel: F) -> RasterGrid
where
    F: Fn(u32, u32) -> Pixel + Sync,
{
    let width = region.width as usize;
    let mut pixels = vec![
        Pixel {
            class: PixelClass::Black,
            iters: 0
        };
        region.pixel_count()
    ];
    pixels
        .par_chunks_mut(width)
        .enumerate()
        .for_each(|(j, row)| {
            for (i, px) in row.iter_mut().enumerate() {
                *px = per_pixel(i as u32, j as u32);
            }
        });
    RasterGrid {
        region: *region,
        max_iters,
        pixels,
    }
}

fn attracting_strange(reports: &[crate::analysis::FixedPointReport]) -> Vec<SpherePoint> {
    reports
        .iter()
        .filter(|r| {
            r.kind == PointKind::Strange
                && matches!(
                    r.class,
                    StabilityClass::Attracting | StabilityClass::Superattracting
                )
        })
        .map(|r| r.location)
        .collect()
}

/// Dynamical plane of the ratio operator: classify every pixel seed against
/// the basins of 0 (red), infinity (green) and any attracting strange fixed
/// points (yellow); black marks no convergence within budget.
pub fn dynamical_plane(k: &RatioParam, region: &RenderRegion, cfg: &OrbitConfig) -> RasterGrid {
    let map = ratio_map(k);
    let strange = attracting_strange(&ratio_map_fixed_points(k));
    render_grid(region, cfg.max_iters, |i, j| {
        let seed = SpherePoint::Finite(region.pixel_center(i, j));
        let out = iterate_orbit(&map, seed, cfg, &strange);
        let class = match out.status {
            OrbitStatus::ToZero => PixelClass::Red,
            OrbitStatus::ToInfinity => PixelClass::Green,
            OrbitStatus::ToStrange(_) => PixelClass::Yellow,
            OrbitStatus::NoConvergence => PixelClass::Black,
        };
        Pixel {
            class,
            iters: out.iters,
        }
    })
}

/// Parameter space: each pixel is a parameter value K, colored by the fate
/// of the chosen critical point's orbit under that parameter's operator.
/// Three-color legend: red to 0, green to infinity, black otherwise
/// (including landings on attracting strange points). Pixels where the
/// requested critical point does not exist are black with zero iterations.
pub fn parameter_space(
    choice: CriticalChoice,
    region: &RenderRegion,
    cfg: &OrbitConfig,
) -> RasterGrid {
    render_grid(region, cfg.max_iters, |i, j| {
        let kv = region.pixel_center(i, j);
        let black = Pixel {
            class: PixelClass::Black,
            iters: 0,
        };
        let Ok(k) = RatioParam::new(kv) else {
            return black;
        };
        let Some(seed) = ratio_critical_seed(&k, choice) else {
            return black;
        };
        let map = ratio_map(&k);
        let out = iterate_orbit(&map, SpherePoint::from_complex(seed), cfg, &[]);
        match out.status {
            OrbitStatus::ToZero => Pixel {
                class: PixelClass::Red,
                iters: out.iters,
            },
            OrbitStatus::ToInfinity => Pixel {
                class: PixelClass::Green,
                iters: out.iters,
            },
            _ => Pixel {
                class: PixelClass::Black,
                iters: cfg.max_iters,
            },
        }
    })
}

/// Basins of attraction of the root-pair operator. The attractor set is
/// {1, -1}: red for the root at 1, green for the root at -1, yellow for
/// attracting strange points (which may include infinity), black otherwise.
pub fn root_pair_basins(k: &RatioParam, region: &RenderRegion, cfg: &OrbitConfig) -> RasterGrid {
    let map = root_pair_map(k);
    let mut targets = vec![SpherePoint::finite(1.0, 0.0), SpherePoint::finite(-1.0, 0.0)];
    targets.extend(attracting_strange(&root_pair_fixed_points(k)));
    render_grid(region, cfg.max_iters, |i, j| {
        let seed = SpherePoint::Finite(region.pixel_center(i, j));
        let out = iterate_to_targets(&map, seed, cfg, &targets);
        let class = match out.target {
            Some(0) => PixelClass::Red,
            Some(1) => PixelClass::Green,
            Some(_) => PixelClass::Yellow,
            None => PixelClass::Black,
        };
        Pixel {
            class,
            iters: out.iters,
        }
    })
}

/// Which stability function a stability-region render plots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityTarget {
    /// The strange fixed point at z = 1.
    Z1,
    /// The `+` branch of the strange pair.
    Z2,
    /// The `-` branch of the strange pair.
    Z3,
}

/// A field of clamped stability values over parameter space.
/// `None` marks parameters where the function is undefined.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityGrid {
    pub region: RenderRegion,
    pub values: Vec<Option<f64>>,
}

impl StabilityGrid {
    pub fn value(&self, i: u32, j: u32) -> Option<f64> {
        self.values[j as usize * self.region.width as usize + i as usize]
    }

    /// Binary PPM: attraction zones are drawn in red fading to white as the
    /// clamped stability value rises to 1 (intensity `255 (1 - value)`);
    /// undefined parameters are black.
    pub fn encode_ppm(&self) -> Vec<u8> {
        let mut out = ppm_header(self.region.width, self.region.height);
        for v in &self.values {
            match v {
                None => out.extend_from_slice(&[0, 0, 0]),
                Some(v) => {
                    let intensity = (255.0 * (1.0 - v.clamp(0.0, 1.0))).floor() as u8;
                    out.extend_from_slice(&[255, 255 - intensity, 255 - intensity]);
                }
            }
        }
        out
    }
}

/// Stability regions over parameter space: per pixel K, the clamped
/// stability function of the chosen strange fixed point.
pub fn stability_regions(which: StabilityTarget, region: &RenderRegion) -> StabilityGrid {
    let width = region.width as usize;
    let mut values = vec![None; region.pixel_count()];
    values
        .par_chunks_mut(width)
        .enumerate()
        .for_each(|(j, row)| {
            for (i, slot) in row.iter_mut().enumerate() {
                let kv = region.pixel_center(i as u32, j as u32);
                let (one, pair) = stability_min(kv);
                *slot = match which {
                    StabilityTarget::Z1 => one,
                    StabilityTarget::Z2 => Some(pair[0]),
                    StabilityTarget::Z3 => Some(pair[1]),
                };
            }
        });
    StabilityGrid {
        region: *region,
        values,
    }
}

fn ppm_header(width: u32, height: u32) -> Vec<u8> {
    format!("P6\n{} {}\n255\n", width, height).into_bytes()
}

/// Binary PPM of a classified grid. Channel rule: red `(c,0,0)`, green
/// `(0,c,0)`, yellow `(c,c,0)`, black `(0,0,0)`, with
/// `c = 255 - floor(200 * iters / max_iters)` so that faster convergence is
/// brighter and converged pixels never fade into black.
pub fn encode_ppm(grid: &RasterGrid) -> Vec<u8> {
    let mut out = ppm_header(grid.region.width, grid.region.height);
    let max = grid.max_iters.max(1);
    for px in &grid.pixels {
        let c = 255 - (200 * px.iters.min(max) / max) as u8;
        let rgb = match px.class {
            PixelClass::Red => [c, 0, 0],
            PixelClass::Green => [0, c, 0],
            PixelClass::Yellow => [c, c, 0],
            PixelClass::Black => [0, 0, 0],
        };
        out.extend_from_slice(&rgb);
    }
    out
}

/// CSV sidecar: one `i,j,class,iters` line per pixel, row-major from the
/// top row.
pub fn encode_csv(grid: &RasterGrid) -> String {
    let mut out = String::with_capacity(grid.pixels.len() * 12);
    for j in 0..grid.region.height {
        for i in 0..grid.region.width {
            let px = grid.pixel(i, j);
            out.push_str(&format!("{},{},{},{}\n", i, j, px.class.letter(), px.iters));
        }
    }
    out
}
