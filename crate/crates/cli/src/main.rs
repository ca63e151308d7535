use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use bicrit::boettcher::{self, EKind};
use bicrit::error::Error;
use bicrit::family::FamilyParams;
use bicrit::orbit::{self, PointClass};
use bicrit::render::{self, PaletteSpec, RenderSettings, ViewRect};
use bicrit::sphere::ExtComplex;
use bicrit::verify::{self, Suite};

/// Critical orbits, Boettcher coordinates and parameter planes of
/// f_t(z) = t z^m ((1-z)/(1+z))^n.
#[derive(Parser, Debug)]
#[command(name = "bicrit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Render the t-parameter plane of f_t, classified by both critical orbits.
    RenderParam(RenderArgs),
    /// Render the c-parameter plane of P_c(z) = c z^m (z+1)^n.
    RenderPc {
        #[command(flatten)]
        render: RenderArgs,
        /// Use t coordinates, c = -(t + 2 + 1/t)/2; (m, n) = (2, 1) only.
        #[arg(long)]
        t_plane: bool,
    },
    /// Render the dynamical plane of f_t.
    RenderDyn {
        #[command(flatten)]
        render: RenderArgs,
        #[command(flatten)]
        t: TArg,
    },
    /// Classify a parameter t.
    Classify {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        t: TArg,
        #[arg(long, default_value_t = orbit::DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print an orbit of f_t.
    Orbit {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        t: TArg,
        /// Starting point; defaults to the alpha critical value.
        #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true)]
        z: Option<Vec<f64>>,
        /// Start at the beta critical value instead.
        #[arg(long, conflicts_with = "z")]
        beta: bool,
        #[arg(long, default_value_t = orbit::DEFAULT_BUDGET)]
        budget: usize,
        /// Number of orbit points to print.
        #[arg(long, default_value_t = 20)]
        limit: usize,
    },
    /// Boettcher coordinate and Green's function at z, or one of E0, Ek, Eres at t.
    Boettcher {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        t: TArg,
        /// Point in the basin of 0.
        #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true, required_unless_present = "e")]
        z: Option<Vec<f64>>,
        #[arg(long, value_enum, conflicts_with = "z")]
        e: Option<EArg>,
        /// k for Ek.
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = orbit::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Run a self-check suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct FamilyArgs {
    #[arg(long, default_value_t = 2)]
    m: u32,
    #[arg(long, default_value_t = 1)]
    n: u32,
}

#[derive(Args, Debug, Clone)]
struct TArg {
    /// Parameter t as real and imaginary parts.
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true, required = true)]
    t: Vec<f64>,
}

impl TArg {
    fn value(&self) -> Complex64 {
        Complex64::new(self.t[0], self.t[1])
    }
}

#[derive(Args, Debug, Clone)]
struct RenderArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// View center; defaults to 0 for f_t planes and -2 for the P_c plane.
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true)]
    center: Option<Vec<f64>>,
    /// View width; defaults to 5 (t plane), 12 (c plane) or 4 (z plane).
    #[arg(long)]
    width: Option<f64>,
    /// View height; defaults to the width scaled by the pixel aspect ratio.
    #[arg(long)]
    height: Option<f64>,
    /// Image size as WIDTH [HEIGHT]; a single value gives a square image.
    #[arg(long, num_args = 1..=2, value_names = ["W", "H"], default_values_t = [400])]
    px: Vec<usize>,
    #[arg(long, default_value_t = orbit::DEFAULT_BUDGET)]
    budget: usize,
    /// Output file (binary PPM).
    #[arg(long)]
    out: PathBuf,
    /// Draw the unit circle.
    #[arg(long)]
    unit_circle: bool,
    /// Flat class colors without shading.
    #[arg(long)]
    flat: bool,
}

impl RenderArgs {
    fn settings(&self) -> RenderSettings {
        let w = self.px[0];
        let h = self.px.get(1).copied().unwrap_or(w);
        RenderSettings::new(w, h, self.budget).with_palette(PaletteSpec { shading: !self.flat, unit_circle: self.unit_circle })
    }

    fn view(&self, center: Complex64, width: f64) -> Result<ViewRect, Error> {
        let s = self.settings();
        let center = self.center.as_ref().map(|c| Complex64::new(c[0], c[1])).unwrap_or(center);
        let width = self.width.unwrap_or(width);
        let height = self.height.unwrap_or(width * s.height_px as f64 / s.width_px as f64);
        ViewRect::new(center, width, height)
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum EArg {
    E0,
    Ek,
    Eres,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum SuiteArg {
    Lemma1,
    Symmetry,
    Resultants,
    Critical,
    Greens,
    Easymptotic,
    Qkorder,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Lemma1 => vec![Suite::Lemma1],
            SuiteArg::Symmetry => vec![Suite::Symmetry],
            SuiteArg::Resultants => vec![Suite::Resultants],
            SuiteArg::Critical => vec![Suite::Critical],
            SuiteArg::Greens => vec![Suite::Greens],
            SuiteArg::Easymptotic => vec![Suite::EAsymptotic],
            SuiteArg::Qkorder => vec![Suite::QkOrder],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

#[derive(Serialize)]
struct ClassifyRecord {
    m: u32,
    n: u32,
    t_re: f64,
    t_im: f64,
    class: &'static str,
    level_or_period: Option<usize>,
    iterations: usize,
    alpha_outcome: String,
    beta_outcome: String,
}

enum Failure {
    Usage(String),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParams(_) | Error::Unsupported(_) | Error::Parse(_) | Error::SizeGuard { .. } => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Failed(other.to_string()),
        }
    }
}

fn complex(re: f64, im: f64) -> String {
    format!("{re} {im}")
}

fn ext(z: &ExtComplex) -> String {
    match z.finite() {
        Some(z) => complex(z.re, z.im),
        None => "inf".into(),
    }
}

fn write_render(img: &render::RasterImage, path: &std::path::Path, undecided: usize) -> Result<(), Failure> {
    render::write_image(img, path)?;
    println!("out={}", path.display());
    println!("width_px={}", img.width_px);
    println!("height_px={}", img.height_px);
    println!("undecided={undecided}");
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::RenderParam(args) => {
            let view = args.view(Complex64::new(0.0, 0.0), 5.0)?;
            let (img, grid) = render::render_parameter_plane(args.family.m, args.family.n, &view, &args.settings())?;
            let undecided = grid.cells.iter().filter(|c| c.tag() == orbit::ClassTag::Undecided).count();
            write_render(&img, &args.out, undecided)
        }
        Command::RenderPc { render: args, t_plane } => {
            let (img, grid) = if t_plane {
                if (args.family.m, args.family.n) != (2, 1) {
                    return Err(Failure::Usage("--t-plane needs --m 2 --n 1".into()));
                }
                let d = ViewRect::detail_window();
                let view = match (&args.center, args.width) {
                    (None, None) if args.height.is_none() => d,
                    _ => args.view(d.center(), d.width())?,
                };
                render::render_pc_over_t(&view, &args.settings())?
            } else {
                let view = args.view(Complex64::new(-2.0, 0.0), 12.0)?;
                render::render_pc_parameter_plane(args.family.m, args.family.n, &view, &args.settings())?
            };
            let undecided = grid.cells.iter().filter(|c| **c == PointClass::Undecided).count();
            write_render(&img, &args.out, undecided)
        }
        Command::RenderDyn { render: args, t } => {
            let p = FamilyParams::new(args.family.m, args.family.n, t.value())?;
            let view = args.view(Complex64::new(0.0, 0.0), 4.0)?;
            let (img, grid) = render::render_dynamical_plane(&p, &view, &args.settings())?;
            let undecided = grid.cells.iter().filter(|c| **c == PointClass::Undecided).count();
            write_render(&img, &args.out, undecided)
        }
        Command::Classify { family, t, budget, format } => {
            let tv = t.value();
            let r = orbit::classify_parameter(family.m, family.n, tv, budget)?;
            let rec = ClassifyRecord {
                m: family.m,
                n: family.n,
                t_re: tv.re,
                t_im: tv.im,
                class: r.class.name(),
                level_or_period: r.class.level_or_period(),
                iterations: r.iterations(),
                alpha_outcome: r.alpha.outcome.label(),
                beta_outcome: r.beta.outcome.label(),
            };
            match format {
                Format::Json => println!("{}", serde_json::to_string(&rec).expect("plain record")),
                Format::Text => {
                    println!("m={}", rec.m);
                    println!("n={}", rec.n);
                    println!("t_re={}", rec.t_re);
                    println!("t_im={}", rec.t_im);
                    println!("class={}", rec.class);
                    match rec.level_or_period {
                        Some(k) => println!("level_or_period={k}"),
                        None => println!("level_or_period=none"),
                    }
                    println!("iterations={}", rec.iterations);
                    println!("alpha_outcome={}", rec.alpha_outcome);
                    println!("beta_outcome={}", rec.beta_outcome);
                }
            }
            Ok(())
        }
        Command::Orbit { family, t, z, beta, budget, limit } => {
            let p = FamilyParams::new(family.m, family.n, t.value())?;
            let seed = match (z, beta) {
                (Some(z), _) => ExtComplex::new(z[0], z[1]),
                (None, true) => p.v_beta(),
                (None, false) => p.v_alpha(),
            };
            let trap = bicrit::family::trap_disc(family.m, family.n, bicrit::family::DEFAULT_THETA)?;
            let rec = orbit::iterate_orbit(&p, seed, budget, &trap);
            println!("outcome={}", rec.outcome.label());
            if let PointClass::Cycle(c) = rec.outcome {
                println!("multiplier={}", complex(c.multiplier.re, c.multiplier.im));
                println!("representative={}", ext(&c.representative));
            }
            println!("length={}", rec.points.len());
            for (k, z) in rec.points.iter().take(limit).enumerate() {
                println!("z[{k}]={}", ext(z));
            }
            Ok(())
        }
        Command::Boettcher { family, t, z, e, k, budget } => {
            let tv = t.value();
            if let Some(e) = e {
                let kind = match e {
                    EArg::E0 => EKind::E0,
                    EArg::Ek => EKind::Ek(k),
                    EArg::Eres => EKind::Eres,
                };
                let v = boettcher::e_value(family.m, family.n, tv, kind, budget)?;
                println!("value={}", complex(v.value.re, v.value.im));
                println!("abs={}", v.value.norm());
                println!("branch_warnings={}", v.branch_warnings);
                return Ok(());
            }
            let z = z.expect("required unless --e");
            let p = FamilyParams::new(family.m, family.n, tv)?;
            let z = ExtComplex::new(z[0], z[1]);
            let phi = boettcher::boettcher_coordinate(&p, z, budget)?;
            let g = boettcher::green_zero(&p, z, 1e-15)?;
            println!("phi={}", ext(&phi.value));
            println!("abs={}", phi.value.norm());
            println!("green={}", g.value);
            println!("branch_warnings={}", phi.branch_warnings);
            Ok(())
        }
        Command::Verify { suite } => {
            let mut failed = vec![];
            for s in suite.suites() {
                let rep = verify::run_suite(s)?;
                for line in &rep.output {
                    println!("{line}");
                }
                for c in &rep.checks {
                    println!("{}: {} [{}] {}", s, if c.passed { "ok" } else { "FAILED" }, c.name, c.detail);
                }
                failed.extend(rep.failures().map(|c| format!("{s}: {}", c.name)));
            }
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Failed(format!("{} check(s) failed: {}", failed.len(), failed.join("; "))))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
