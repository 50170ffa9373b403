//! The `lamin-mate` command line.
//!
//! Angles cross this boundary only as exact `p/q` strings and complex
//! numbers as `re,im`. Exit codes: 0 on success, 1 on a domain error or a
//! failed verification, 2 on a usage error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::circle::Angle;
use crate::combinat::{
    boundedness, boundedness_table, pair_periodic_angles, pinch_pairs, strip_angles, write_boundedness_csv,
    WakePair,
};
use crate::dynamics::{
    in_m2, in_mandelbrot, misiurewicz_solve, trace_bubble_ray, trace_dynamic_ray, trace_parameter_ray,
    NewtonOptions, RayOptions, RayTrace,
};
use crate::error::{Error, Result};
use crate::lamination::generate;
use crate::render::{
    render_dynamical_overlay, render_lamination_disk, render_m1_overlay, render_m2, with_threads, Palette,
    RenderConfig, Viewport,
};
use crate::verify::{verify, Suite, VerifyOptions};

pub const THREADS_ENV: &str = "LAMIN_MATE_THREADS";

fn parse_angle(s: &str) -> std::result::Result<Angle, String> {
    s.parse::<Angle>().map_err(|e| e.to_string())
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"re,im\", got {s:?}"))?;
    let re: f64 = re.trim().parse().map_err(|_| format!("bad real part in {s:?}"))?;
    let im: f64 = im.trim().parse().map_err(|_| format!("bad imaginary part in {s:?}"))?;
    if !re.is_finite() || !im.is_finite() {
        return Err(format!("{s:?} is not finite"));
    }
    Ok(Complex64::new(re, im))
}

fn parse_viewport(s: &str) -> std::result::Result<Viewport, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| format!("expected re_min,re_max,im_min,im_max, got {s:?}"))?;
    if v.len() != 4 {
        return Err(format!("expected four numbers, got {s:?}"));
    }
    Viewport::new(v[0], v[1], v[2], v[3]).map_err(|e| e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "lamin-mate", version, about = "Basilica lamination, Mandelbrot-copy combinatorics, rays and the V₂ slice")]
pub struct Cli {
    /// Worker threads for rendering and tracing (default: all cores); the
    /// LAMIN_MATE_THREADS environment variable takes precedence.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate the Basilica lamination and write it as JSON.
    Lamination {
        /// Maximum leaf depth, 0..=30; depth d gives 2^(d+1) leaves.
        #[arg(long)]
        depth: u32,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Boundedness of a copy of 𝓜 from the side of the Basilica wake.
    Bounded {
        /// First wake angle, periodic, as p/q.
        #[arg(long, value_parser = parse_angle, requires = "phi2")]
        phi1: Option<Angle>,
        /// Second wake angle, same period as phi1.
        #[arg(long, value_parser = parse_angle)]
        phi2: Option<Angle>,
        /// Instead of one pair, tabulate every pair up to this period (1..=20).
        #[arg(long, conflicts_with = "phi1")]
        max_period: Option<u32>,
        /// CSV output for the table (default: stdout).
        #[arg(long, requires = "max_period")]
        out: Option<PathBuf>,
    },
    /// Renormalization strip angles of a wake.
    Strip {
        #[arg(long, value_parser = parse_angle)]
        phi1: Angle,
        #[arg(long, value_parser = parse_angle)]
        phi2: Angle,
    },
    /// Angle pairs identified in the Basilica (leaves of depth ≥ 0).
    Pinch {
        /// Lamination depth, 0..=30.
        #[arg(long)]
        depth: u32,
    },
    /// Lavaurs pairing of the periodic angles of one period.
    Pair {
        /// Exact period, 1..=20.
        #[arg(long)]
        period: u32,
    },
    /// Preperiod, period and 𝔅-level of an angle under doubling.
    Classify {
        #[arg(long, value_parser = parse_angle)]
        angle: Angle,
    },
    /// Trace an external ray and estimate its landing point.
    Ray {
        #[arg(long, value_enum)]
        kind: RayKindArg,
        #[arg(long, value_parser = parse_angle)]
        angle: Angle,
        /// Parameter c of f_c for dynamic rays, as re,im.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        c: Option<Complex64>,
        #[command(flatten)]
        trace: TraceArgs,
        /// CSV trace (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the trace as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Trace a ray in bubbles for g_a(z) = a/(z² + 2z).
    BubbleRay {
        /// Parameter a ≠ 0, as re,im.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        a: Complex64,
        #[arg(long, value_parser = parse_angle)]
        angle: Angle,
        /// Depth of the lamination the bubble chain is read from.
        #[arg(long, default_value_t = 10)]
        depth: u32,
        /// Bubbles to trace, E_∞ included.
        #[arg(long, default_value_t = 6)]
        max_bubbles: usize,
        #[command(flatten)]
        trace: TraceArgs,
        /// CSV trace, t = bubble index (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Membership in 𝓜 (m1) or in the V₂ slice 𝓜₂ (m2).
    Member {
        #[arg(value_enum)]
        set: SetArg,
        /// The parameter, as re,im.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        at: Complex64,
        #[arg(long, default_value_t = 1000)]
        max_iter: u32,
        /// Escape radius for m1 (≥ 2).
        #[arg(long, default_value_t = 2.0)]
        radius: f64,
        /// Basin threshold for m2, in (0, 1).
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
    },
    /// Solve for a Misiurewicz parameter by Newton.
    Misiurewicz {
        /// Preperiod ≥ 1.
        #[arg(long)]
        preperiod: u32,
        /// Period ≥ 1.
        #[arg(long)]
        period: u32,
        /// Starting point, as re,im.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        seed: Complex64,
    },
    /// Render a figure: PNG with a JSON sidecar, or SVG for the disk.
    Render {
        #[arg(value_enum)]
        figure: FigureArg,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        opts: RenderArgs,
    },
    /// Run a verification suite and report each check.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Write the report(s) as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Override the Newton tolerance of every trace (a loose value is a
        /// negative control: the numerics suite must then fail).
        #[arg(long)]
        newton_tol: Option<f64>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct TraceArgs {
    /// Potential of the first node (> tend).
    #[arg(long, default_value_t = 10.0)]
    tstart: f64,
    /// Potential of the last node (> 0).
    #[arg(long, default_value_t = 1e-7)]
    tend: f64,
    /// Nodes per halving of the potential (≥ 1).
    #[arg(long, default_value_t = 24)]
    steps: u32,
}

impl TraceArgs {
    fn options(&self) -> RayOptions {
        RayOptions {
            t_start: self.tstart,
            t_end: self.tend,
            steps: self.steps,
            ..RayOptions::default()
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct RenderArgs {
    #[arg(long)]
    width: Option<u32>,
    #[arg(long)]
    height: Option<u32>,
    /// re_min,re_max,im_min,im_max
    #[arg(long, value_parser = parse_viewport, allow_hyphen_values = true)]
    viewport: Option<Viewport>,
    #[arg(long)]
    max_iter: Option<u32>,
    /// Leaves of depth ≤ this are drawn (disk, m1, overlay).
    #[arg(long)]
    depth: Option<u32>,
    /// gray | ember
    #[arg(long, value_parser = |s: &str| Palette::parse(s).map_err(|e| e.to_string()))]
    palette: Option<Palette>,
    /// Do not tint the Basilica wake (m1).
    #[arg(long)]
    no_wake: bool,
    /// Extra rays to draw, comma-separated p/q.
    #[arg(long, value_delimiter = ',', value_parser = parse_angle)]
    rays: Vec<Angle>,
    /// Potential at which leaf curves turn around (> 0).
    #[arg(long)]
    leaf_height: Option<f64>,
    /// 2×2 samples per pixel.
    #[arg(long)]
    supersample: bool,
    /// Parameter of the dynamical plane (overlay), as re,im.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "-1,0")]
    c: Complex64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum RayKindArg {
    Dynamic,
    Parameter,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum SetArg {
    M1,
    M2,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FigureArg {
    M1,
    M2,
    Disk,
    Overlay,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum SuiteArg {
    Lamination,
    Combinat,
    Numerics,
    Render,
    All,
}

fn usage_error(e: &Error) -> bool {
    matches!(e, Error::Config(_) | Error::AngleParse(_) | Error::ZeroDenominator)
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => match v.parse::<usize>() {
            Ok(n) => Some(n),
            Err(_) => {
                let _ = writeln!(err, "error: {THREADS_ENV}={v:?} is not a thread count");
                return 2;
            }
        },
        Err(_) => cli.threads,
    };
    // the pool closure must be Send, so output is buffered and flushed after
    let (result, o, e) = match with_threads(threads, || {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let r = execute(cli.command, &mut o, &mut e);
        (r, o, e)
    }) {
        Ok(t) => t,
        Err(e) => (Err(e), Vec::new(), Vec::new()),
    };
    let _ = out.write_all(&o);
    let _ = err.write_all(&e);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if usage_error(&e) {
                2
            } else {
                1
            }
        }
    }
}

fn write_or_print(path: &Option<PathBuf>, data: &[u8], out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, data)?,
        None => out.write_all(data)?,
    }
    Ok(())
}

fn fmt_c(z: Complex64) -> String {
    format!("{:.15},{:.15}", z.re, z.im)
}

fn check_depth(depth: u32) -> Result<()> {
    if depth > crate::lamination::MAX_DEPTH {
        return Err(Error::Config(format!(
            "depth {depth} outside 0..={}",
            crate::lamination::MAX_DEPTH
        )));
    }
    Ok(())
}

fn report_trace(trace: &RayTrace, path: &Option<PathBuf>, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let mut csv = Vec::new();
    trace.write_csv(&mut csv)?;
    write_or_print(path, &csv, out)?;
    // keep stdout pure CSV when the trace goes there
    let summary: &mut dyn Write = if path.is_some() { out } else { err };
    match trace.landing_estimate {
        Some(z) => writeln!(summary, "landing estimate: {}", fmt_c(z))?,
        None => writeln!(summary, "landing estimate: none (tail at {})", fmt_c(trace.tail().unwrap_or_default()))?,
    }
    Ok(())
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Lamination { depth, out: path } => {
            check_depth(depth)?;
            let lam = generate(depth)?;
            let mut json = lam.to_json()?;
            json.push('\n');
            write_or_print(&path, json.as_bytes(), out)?;
            if path.is_some() {
                writeln!(out, "{} leaves through depth {depth}", lam.len())?;
            }
        }
        Command::Bounded {
            phi1,
            phi2,
            max_period,
            out: path,
        } => {
            if let Some(p) = max_period {
                let rows = boundedness_table(p)?;
                let mut csv = Vec::new();
                write_boundedness_csv(&rows, &mut csv)?;
                write_or_print(&path, &csv, out)?;
            } else {
                let (Some(phi1), Some(phi2)) = (phi1, phi2) else {
                    return Err(Error::Config("give --phi1 and --phi2, or --max-period".into()));
                };
                let r = boundedness(&WakePair::new(phi1, phi2)?)?;
                let cell = |w: Option<u32>| w.map_or("none".to_string(), |n| format!("n={n}"));
                writeln!(out, "phi1: {}, phi2: {}", cell(r.witness_phi1), cell(r.witness_phi2))?;
            }
        }
        Command::Strip { phi1, phi2 } => {
            let s = strip_angles(&WakePair::new(phi1, phi2)?)?;
            writeln!(out, "phi1 {}\npsi1 {}\npsi2 {}\nphi2 {}", s.phi1, s.psi1, s.psi2, s.phi2)?;
        }
        Command::Pinch { depth } => {
            check_depth(depth)?;
            let pp = pinch_pairs(&generate(depth)?);
            for (x, y) in &pp.pairs {
                writeln!(out, "{x} {y}")?;
            }
            writeln!(err, "{} pairs; limb boundary ({}, {})", pp.pairs.len(), pp.limb_boundary.0, pp.limb_boundary.1)?;
        }
        Command::Pair { period } => {
            for w in pair_periodic_angles(period)? {
                writeln!(out, "{} {}", w.phi1, w.phi2)?;
            }
        }
        Command::Classify { angle } => {
            let c = angle.classify();
            write!(out, "angle {angle}\npreperiod {}\nperiod {}\n", c.preperiod, c.period)?;
            match angle.b_angle_level() {
                Some(k) => writeln!(out, "b-angle level {k}")?,
                None => writeln!(out, "b-angle no")?,
            }
        }
        Command::Ray {
            kind,
            angle,
            c,
            trace,
            out: path,
            json,
        } => {
            let opts = trace.options();
            let t = match kind {
                RayKindArg::Dynamic => {
                    let c = c.ok_or_else(|| Error::Config("dynamic rays need --c re,im".into()))?;
                    trace_dynamic_ray(c, &angle, &opts)?
                }
                RayKindArg::Parameter => trace_parameter_ray(&angle, &opts)?,
            };
            if let Some(j) = json {
                fs::write(j, t.to_json()?)?;
            }
            report_trace(&t, &path, out, err)?;
        }
        Command::BubbleRay {
            a,
            angle,
            depth,
            max_bubbles,
            trace,
            out: path,
        } => {
            check_depth(depth)?;
            let lam = generate(depth)?;
            let b = trace_bubble_ray(a, &angle, &lam, max_bubbles, &trace.options())?;
            for (k, step) in b.plan.steps.iter().enumerate().take(max_bubbles) {
                let show = |s: &Option<Angle>| s.as_ref().map_or("-".to_string(), |a| a.to_string());
                writeln!(
                    err,
                    "bubble {k}: generation {}, entry {}, exit {}",
                    step.generation,
                    show(&step.entry_angle),
                    show(&step.exit_angle)
                )?;
            }
            report_trace(&b.trace, &path, out, err)?;
        }
        Command::Member {
            set,
            at,
            max_iter,
            radius,
            eps,
        } => {
            let r = match set {
                SetArg::M1 => in_mandelbrot(at, max_iter, radius)?,
                SetArg::M2 => in_m2(at, max_iter, eps)?,
            };
            writeln!(
                out,
                "{} after {} iterations (|z| = {:e})",
                serde_json::to_value(r.status)?.as_str().unwrap_or("?"),
                r.iterations,
                r.final_modulus
            )?;
        }
        Command::Misiurewicz {
            preperiod,
            period,
            seed,
        } => {
            let c = misiurewicz_solve(preperiod, period, seed, &NewtonOptions::default())?;
            writeln!(out, "{}", fmt_c(c))?;
        }
        Command::Render { figure, out: path, opts } => render(figure, &path, &opts, out, err)?,
        Command::Verify {
            suite,
            json,
            newton_tol,
        } => {
            let mut vo = VerifyOptions::default();
            if let Some(tol) = newton_tol {
                if !(tol > 0.0) {
                    return Err(Error::Config("--newton-tol must be positive".into()));
                }
                vo.rays.newton.tol = tol;
            }
            let suites: Vec<Suite> = match suite {
                SuiteArg::Lamination => vec![Suite::Lamination],
                SuiteArg::Combinat => vec![Suite::Combinat],
                SuiteArg::Numerics => vec![Suite::Numerics],
                SuiteArg::Render => vec![Suite::Render],
                SuiteArg::All => Suite::ALL.to_vec(),
            };
            let reports: Vec<_> = suites.into_iter().map(|s| verify(s, &vo)).collect();
            for r in &reports {
                writeln!(out, "== {}", r.suite.name())?;
                write!(out, "{}", r.to_text())?;
            }
            if let Some(j) = json {
                fs::write(j, serde_json::to_string_pretty(&reports)?)?;
            }
            if !reports.iter().all(|r| r.passed()) {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn render(figure: FigureArg, path: &PathBuf, a: &RenderArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let base = match figure {
        FigureArg::M2 => RenderConfig::m2(),
        FigureArg::Overlay => RenderConfig {
            viewport: Viewport::new(-1.8, 1.8, -1.2, 1.2)?,
            width: 900,
            height: 600,
            leaf_height: 0.05,
            shade_wake: false,
            ..RenderConfig::m1()
        },
        _ => RenderConfig::m1(),
    };
    let cfg = RenderConfig {
        width: a.width.unwrap_or(base.width),
        height: a.height.unwrap_or(base.height),
        viewport: a.viewport.unwrap_or(base.viewport),
        max_iter: a.max_iter.unwrap_or(base.max_iter),
        palette: a.palette.unwrap_or(base.palette),
        lamination_depth: a.depth.or(base.lamination_depth),
        shade_wake: base.shade_wake && !a.no_wake,
        ray_angles: a.rays.clone(),
        leaf_height: a.leaf_height.unwrap_or(base.leaf_height),
        supersample: a.supersample,
        ..base
    };
    let opts = RayOptions::default();
    let lam_depth = cfg.lamination_depth.unwrap_or(0);
    check_depth(lam_depth)?;
    let img = match figure {
        FigureArg::Disk => {
            let lam = generate(lam_depth)?;
            let d = render_lamination_disk(&lam, lam_depth)?;
            fs::write(path, &d.svg)?;
            writeln!(out, "wrote {} ({} chords)", path.display(), d.chords.len())?;
            return Ok(());
        }
        FigureArg::M1 => render_m1_overlay(&cfg, &generate(lam_depth)?, &opts)?,
        FigureArg::M2 => render_m2(&cfg)?,
        FigureArg::Overlay => render_dynamical_overlay(a.c, &cfg, &generate(lam_depth)?, &opts)?,
    };
    let side = img.write_png(path)?;
    for n in &img.notes {
        writeln!(err, "note: {n}")?;
    }
    writeln!(
        out,
        "wrote {} and {} ({} member pixels)",
        path.display(),
        side.display(),
        img.member_count()
    )?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("lamin-mate").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn complex_and_viewport_parsing() {
        assert_eq!(parse_complex("-1,0.5").unwrap(), Complex64::new(-1.0, 0.5));
        assert!(parse_complex("1").is_err());
        assert!(parse_complex("nan,0").is_err());
        assert!(parse_viewport("-2,1,-1,1").is_ok());
        assert!(parse_viewport("1,1,0,1").is_err());
    }

    #[test]
    fn bounded_example() {
        let (code, out, _) = run_str(&["bounded", "--phi1", "3/15", "--phi2", "4/15"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "phi1: none, phi2: n=2");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["classify", "--angle", "1/0"]).0, 2);
        assert_eq!(run_str(&["classify", "--angle", "x"]).0, 2);
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["lamination", "--depth", "31"]).0, 2);
        // a domain error: not a pair of equal period
        assert_eq!(run_str(&["bounded", "--phi1", "1/3", "--phi2", "1/7"]).0, 1);
        assert_eq!(run_str(&["member", "m2", "--at", "0,0"]).0, 1);
    }
}
