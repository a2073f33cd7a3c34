//! Command-line front end: fixed/critical point reports, plane renderers
//! and the oracle suite, with reproducible defaults.
//!
//! Exit codes: 0 success, 1 domain error (e.g. a degenerate parameter),
//! 2 usage error, 3 I/O failure.

use chebydyn_core::analysis::{
    discrepancies, ratio_map_critical_points, ratio_map_fixed_points, CriticalChoice,
};
use chebydyn_core::operators::RatioParam;
use chebydyn_core::orbits::OrbitConfig;
use chebydyn_core::raster::{
    dynamical_plane, encode_csv, encode_ppm, parameter_space, root_pair_basins,
    stability_regions, RasterGrid, RenderRegion, StabilityTarget,
};
use chebydyn_core::sphere::format_complex;
use chebydyn_core::verify;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use std::path::{Path, PathBuf};

/// Fallback for `--workers` when the flag is absent.
pub const WORKERS_ENV: &str = "CHEBYDYN_WORKERS";

#[derive(Debug, Parser)]
#[command(
    name = "chebydyn",
    version,
    about = "Dynamics of the modified Chebyshev iteration family: stability reports, escape-time renders, numerical oracles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report the fixed points of the ratio operator at K with their
    /// multipliers and stability classes
    FixedPoints {
        /// Multiplicity ratio as "RE,IM" (e.g. "2,0" or "0,-0.2")
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        k: Complex64,
    },
    /// Report the critical points of the ratio operator at K
    CriticalPoints {
        /// Multiplicity ratio as "RE,IM"
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        k: Complex64,
    },
    /// Render the dynamical plane of the ratio operator (basins of 0 and
    /// infinity; yellow marks attracting strange points)
    RenderPlane {
        /// Multiplicity ratio as "RE,IM"
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        k: Complex64,
        #[command(flatten)]
        render: RenderArgs,
        /// Maximum iterations per seed
        #[arg(long, default_value_t = 50)]
        iters: u32,
        /// Capture radius around finite attractors
        #[arg(long, default_value_t = 1e-4, value_parser = parse_tol)]
        tol: f64,
        /// Escape modulus for convergence to infinity (default 1/tol)
        #[arg(long, value_parser = parse_inf, allow_hyphen_values = true)]
        inf_threshold: Option<f64>,
        /// Output PPM path
        #[arg(long, default_value = "plane.ppm")]
        out: PathBuf,
    },
    /// Render a parameter-space plane by iterating a chosen critical point
    RenderParam {
        /// Which critical point seeds the orbits
        #[arg(long, value_enum, default_value_t = CriticalArg::C1)]
        critical: CriticalArg,
        #[command(flatten)]
        render: RenderArgs,
        #[arg(long, default_value_t = 50)]
        iters: u32,
        #[arg(long, default_value_t = 1e-2, value_parser = parse_tol)]
        tol: f64,
        #[arg(long, value_parser = parse_inf, allow_hyphen_values = true)]
        inf_threshold: Option<f64>,
        #[arg(long, default_value = "param.ppm")]
        out: PathBuf,
    },
    /// Render basins of attraction of the root-pair operator (roots +-1)
    RenderBasins {
        /// Multiplicity ratio as "RE,IM"
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        k: Complex64,
        #[command(flatten)]
        render: RenderArgs,
        #[arg(long, default_value_t = 30)]
        iters: u32,
        #[arg(long, default_value_t = 1e-5, value_parser = parse_tol)]
        tol: f64,
        #[arg(long, value_parser = parse_inf, allow_hyphen_values = true)]
        inf_threshold: Option<f64>,
        #[arg(long, default_value = "basins.ppm")]
        out: PathBuf,
    },
    /// Render a stability-region plane (attraction zones of the strange
    /// fixed points over parameter space)
    RenderStability {
        /// Which strange fixed point's stability function to plot
        #[arg(long, value_enum, default_value_t = WhichArg::Z1)]
        which: WhichArg,
        #[command(flatten)]
        render: RenderArgs,
        #[arg(long, default_value = "stability.ppm")]
        out: PathBuf,
    },
    /// Run the oracle suite and print the report table
    Verify {
        /// Sampling seed (runs are reproducible for a fixed seed)
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        /// Also write the reports as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// Flags shared by every renderer. The window default is a tool choice,
/// not a published convention; adjust freely.
#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Window as "re_min,re_max,im_min,im_max"
    #[arg(long, value_parser = parse_region, default_value = "-5,5,-5,5", allow_hyphen_values = true)]
    pub region: RegionArg,
    /// Grid size as "WxH"
    #[arg(long, value_parser = parse_grid, default_value = "200x200")]
    pub grid: GridArg,
    /// Optional CSV sidecar path (one i,j,class,iters line per pixel)
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Worker threads (never affects output bytes; falls back to
    /// CHEBYDYN_WORKERS, then to available parallelism)
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriticalArg {
    C1,
    C2,
    C3,
}

impl From<CriticalArg> for CriticalChoice {
    fn from(c: CriticalArg) -> Self {
        match c {
            CriticalArg::C1 => CriticalChoice::C1,
            CriticalArg::C2 => CriticalChoice::C2,
            CriticalArg::C3 => CriticalChoice::C3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WhichArg {
    Z1,
    Z2,
    Z3,
}

impl From<WhichArg> for StabilityTarget {
    fn from(w: WhichArg) -> Self {
        match w {
            WhichArg::Z1 => StabilityTarget::Z1,
            WhichArg::Z2 => StabilityTarget::Z2,
            WhichArg::Z3 => StabilityTarget::Z3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionArg {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridArg {
    pub width: u32,
    pub height: u32,
}

/// Parse "RE,IM" into a complex value. Decimal only.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected RE,IM, got {s:?}"))?;
    let re: f64 = re.trim().parse().map_err(|_| format!("bad real part {re:?}"))?;
    let im: f64 = im.trim().parse().map_err(|_| format!("bad imaginary part {im:?}"))?;
    Ok(Complex64::new(re, im))
}

pub fn parse_region(s: &str) -> Result<RegionArg, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("expected re_min,re_max,im_min,im_max, got {s:?}"));
    }
    let mut v = [0.0f64; 4];
    for (slot, part) in v.iter_mut().zip(&parts) {
        *slot = part.trim().parse().map_err(|_| format!("bad number {part:?}"))?;
    }
    if v[0] >= v[1] || v[2] >= v[3] {
        return Err("region bounds must satisfy re_min < re_max and im_min < im_max".into());
    }
    Ok(RegionArg {
        re_min: v[0],
        re_max: v[1],
        im_min: v[2],
        im_max: v[3],
    })
}

pub fn parse_grid(s: &str) -> Result<GridArg, String> {
    let (w, h) = s
        .split_once('x')
        .ok_or_else(|| format!("expected WxH, got {s:?}"))?;
    let width: u32 = w.parse().map_err(|_| format!("bad width {w:?}"))?;
    let height: u32 = h.parse().map_err(|_| format!("bad height {h:?}"))?;
    if width == 0 || height == 0 {
        return Err("grid dimensions must be positive".into());
    }
    Ok(GridArg { width, height })
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("bad tolerance {s:?}"))?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err("tolerance must lie in (0, 1)".into())
    }
}

fn parse_inf(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("bad threshold {s:?}"))?;
    if v > 1.0 {
        Ok(v)
    } else {
        Err("escape threshold must exceed 1".into())
    }
}

fn to_render_region(r: RegionArg, g: GridArg) -> RenderRegion {
    RenderRegion::new(r.re_min, r.re_max, r.im_min, r.im_max, g.width, g.height)
}

fn orbit_config(iters: u32, tol: f64, inf: Option<f64>) -> OrbitConfig {
    let cfg = OrbitConfig::new(iters, tol);
    match inf {
        Some(v) => cfg.with_inf_threshold(v),
        None => cfg,
    }
}

fn worker_count(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| {
        std::env::var(WORKERS_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
    })
}

fn with_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        builder = builder.num_threads(n);
    }
    match builder.build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), i32> {
    std::fs::write(path, bytes).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        3
    })
}

fn write_outputs(
    grid: &RasterGrid,
    out: &Path,
    csv: Option<&PathBuf>,
) -> Result<(), i32> {
    write_file(out, &encode_ppm(grid))?;
    if let Some(csv) = csv {
        write_file(csv, encode_csv(grid).as_bytes())?;
    }
    Ok(())
}

fn ratio_param(k: Complex64) -> Result<RatioParam, i32> {
    RatioParam::new(k).map_err(|e| {
        eprintln!("error: {e}");
        1
    })
}

/// Execute a parsed invocation; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::FixedPoints { k } => {
            let param = match ratio_param(k) {
                Ok(p) => p,
                Err(code) => return code,
            };
            for report in ratio_map_fixed_points(&param) {
                println!("{}", report.line(param.value()));
            }
            for d in discrepancies(&param) {
                println!("{}", d.line(param.value()));
            }
            0
        }
        Command::CriticalPoints { k } => {
            let param = match ratio_param(k) {
                Ok(p) => p,
                Err(code) => return code,
            };
            for (point, multiplicity) in ratio_map_critical_points(&param).points {
                println!(
                    "K={} z={} multiplicity={}",
                    format_complex(param.value()),
                    point,
                    multiplicity
                );
            }
            0
        }
        Command::RenderPlane {
            k,
            render,
            iters,
            tol,
            inf_threshold,
            out,
        } => {
            let param = match ratio_param(k) {
                Ok(p) => p,
                Err(code) => return code,
            };
            let region = to_render_region(render.region, render.grid);
            let cfg = orbit_config(iters, tol, inf_threshold);
            let grid = with_pool(worker_count(render.workers), || {
                dynamical_plane(&param, &region, &cfg)
            });
            match write_outputs(&grid, &out, render.csv.as_ref()) {
                Ok(()) => 0,
                Err(code) => code,
            }
        }
        Command::RenderParam {
            critical,
            render,
            iters,
            tol,
            inf_threshold,
            out,
        } => {
            let region = to_render_region(render.region, render.grid);
            let cfg = orbit_config(iters, tol, inf_threshold);
            let grid = with_pool(worker_count(render.workers), || {
                parameter_space(critical.into(), &region, &cfg)
            });
            match write_outputs(&grid, &out, render.csv.as_ref()) {
                Ok(()) => 0,
                Err(code) => code,
            }
        }
        Command::RenderBasins {
            k,
            render,
            iters,
            tol,
            inf_threshold,
            out,
        } => {
            let param = match ratio_param(k) {
                Ok(p) => p,
                Err(code) => return code,
            };
            let region = to_render_region(render.region, render.grid);
            let cfg = orbit_config(iters, tol, inf_threshold);
            let grid = with_pool(worker_count(render.workers), || {
                root_pair_basins(&param, &region, &cfg)
            });
            match write_outputs(&grid, &out, render.csv.as_ref()) {
                Ok(()) => 0,
                Err(code) => code,
            }
        }
        Command::RenderStability { which, render, out } => {
            let region = to_render_region(render.region, render.grid);
            let grid = with_pool(worker_count(render.workers), || {
                stability_regions(which.into(), &region)
            });
            if let Err(code) = write_file(&out, &grid.encode_ppm()) {
                return code;
            }
            0
        }
        Command::Verify { seed, csv } => {
            let reports = verify::run_all(seed);
            print!("{}", verify::render_table(&reports));
            if let Some(csv) = csv {
                if let Err(code) = write_file(&csv, verify::render_csv(&reports).as_bytes()) {
                    return code;
                }
            }
            if verify::suite_consistent(&reports) {
                0
            } else {
                eprintln!("error: oracle suite reported unexpected outcomes");
                1
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    #[test]
    fn parses_complex_forms() {
        assert_eq!(parse_complex("0.6,0").unwrap(), Complex64::new(0.6, 0.0));
        assert_eq!(parse_complex("0,-0.2").unwrap(), Complex64::new(0.0, -0.2));
        assert_eq!(parse_complex("-2,0").unwrap(), Complex64::new(-2.0, 0.0));
        assert!(parse_complex("2").is_err());
        assert!(parse_complex("a,b").is_err());
    }

    #[test]
    fn parses_region_and_grid() {
        let r = parse_region("-5,5,-5,5").unwrap();
        assert_eq!(r.re_min, -5.0);
        assert!(parse_region("5,-5,-5,5").is_err());
        let g = parse_grid("200x100").unwrap();
        assert_eq!((g.width, g.height), (200, 100));
        assert!(parse_grid("200").is_err());
        assert!(parse_grid("0x10").is_err());
    }

    #[test]
    fn defaults_fill_in() {
        let cli = Cli::try_parse_from(["chebydyn", "render-plane", "--k", "0.6,0", "--grid", "200x200"]).unwrap();
        match cli.command {
            Command::RenderPlane { k, render, iters, tol, .. } => {
                assert_eq!(k, Complex64::new(0.6, 0.0));
                assert_eq!(render.region, parse_region("-5,5,-5,5").unwrap());
                assert_eq!(iters, 50);
                assert_eq!(tol, 1e-4);
            }
            _ => panic!("wrong subcommand"),
        }
    }

    #[test]
    fn basins_flags_match_reference_configuration() {
        let cli = Cli::try_parse_from([
            "chebydyn",
            "render-basins",
            "--k",
            "1.5,0",
            "--iters",
            "30",
            "--tol",
            "1e-5",
        ])
        .unwrap();
        match cli.command {
            Command::RenderBasins { iters, tol, .. } => {
                assert_eq!(iters, 30);
                assert_eq!(tol, 1e-5);
            }
            _ => panic!("wrong subcommand"),
        }
    }

    #[test]
    fn unknown_flags_are_rejected() {
        assert!(Cli::try_parse_from(["chebydyn", "verify", "--bogus"]).is_err());
    }
}
