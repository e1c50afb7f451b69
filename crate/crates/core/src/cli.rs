//! Command-line surface: file I/O, seeding and plot-data emission around the
//! library pipeline.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::classify::{self, ModuliPoint3};
use crate::construct::{build_sphere, verify_sphere, SphereFrame, VerifyReport};
use crate::error::{Error, Result};
use crate::existence::{build_existence_matrix, ExistenceSpec};
use crate::geometry::{geometry_report, grid_points, homogeneity_test};
use crate::linalg::{svd_with, takagi_with, ComplexMatrix, Tolerances, C64, DEFAULT_CLUSTER_TOL, DEFAULT_TOL};
use crate::quadrics::{is_member_s, random_kernel_element, SymmetricQuadric};

#[derive(Debug, Parser)]
#[command(name = "qs", version, about = "Constantly curved minimal 2-spheres in the complex hyperquadric")]
pub struct Cli {
    /// Relative residual tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Singular value clustering tolerance.
    #[arg(long = "cluster-tol", global = true, default_value_t = DEFAULT_CLUSTER_TOL)]
    pub cluster_tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Takagi factorization `S = ᵗU Σ U` of a complex symmetric matrix.
    Takagi {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Builds the frame `E` of the sphere attached to a member `S`.
    Construct {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long, default_value_t = 0)]
        p: usize,
        /// Matrix JSON of `S`; `d` is its size minus one.
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-verifies a frame file.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Builds a linearly full member of `S_{d,n}` for `(n-1)/2 < d <= n-2`.
    Existence {
        #[arg(short, long)]
        d: usize,
        #[arg(short, long)]
        n: usize,
        #[arg(short, long, default_value_t = 0)]
        p: usize,
        /// Existence parameters; defaults are used when absent.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Output for the matrix `S`.
        #[arg(long = "s-out")]
        s_out: Option<PathBuf>,
        /// Output for the frame.
        #[arg(long = "frame-out")]
        frame_out: Option<PathBuf>,
    },
    /// Degree-3 chart: region of `(y, z)` or the boundary curve as CSV.
    Classify3 {
        #[arg(long, required_unless_present = "curve_csv", allow_negative_numbers = true)]
        y: Option<f64>,
        #[arg(long, required_unless_present = "curve_csv", allow_negative_numbers = true)]
        z: Option<f64>,
        #[arg(long = "curve-csv", conflicts_with_all = ["y", "z"])]
        curve_csv: Option<PathBuf>,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Geometry report of a frame on an `N x N` grid.
    Geometry {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 9)]
        grid: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Catalog of random members of `S_{d,n,p}` with spectra and verdicts.
    Sample(SampleArgs),
    /// Replays the degree-3 worked example `(y, z) = (1/3, 1/2)`.
    Example {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(short, long)]
    pub d: usize,
    #[arg(short, long)]
    pub n: usize,
    #[arg(short, long, default_value_t = 0)]
    pub p: usize,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, env = "QS_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

impl Cli {
    pub fn tolerances(&self) -> Result<Tolerances> {
        for (name, v) in [("--tol", self.tol), ("--cluster-tol", self.cluster_tol)] {
            if !(v.is_finite() && v > 0.0 && v < 1.0) {
                return Err(Error::invalid(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        Ok(Tolerances {
            rel: self.tol,
            cluster: self.cluster_tol,
        })
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Writes `text` to `path`, or to `out` when no path is given.
fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn fmt_values(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.15}")).collect();
    format!("[{}]", parts.join(", "))
}

fn read_quadric(path: &Path) -> Result<SymmetricQuadric> {
    let m: ComplexMatrix = read_json(path)?;
    if !m.is_square() {
        return Err(Error::invalid(format!("S must be square, got {}x{}", m.rows(), m.cols())));
    }
    SymmetricQuadric::new(m.rows() - 1, m)
}

fn verify_summary(out: &mut dyn Write, r: &VerifyReport) -> Result<()> {
    writeln!(
        out,
        "verify: passed={} full={} orthonormality={:.3e} containment={:.3e} samples={} one_multiplicity={}/{}",
        r.passed,
        r.full,
        r.orthonormality_residual,
        r.max_containment_residual,
        r.samples,
        r.one_multiplicity,
        r.required_one_multiplicity
    )?;
    Ok(())
}

fn construct_checked(s: &SymmetricQuadric, n: usize, p: usize, tol: &Tolerances) -> Result<SphereFrame> {
    let report = is_member_s(s, n, p, tol)?;
    if !report.member {
        return Err(Error::Rejected(format!(
            "S is not in S_{{{},{},{}}}: {}",
            s.d(),
            n,
            p,
            report.failures.join("; ")
        )));
    }
    build_sphere(s, n, p, tol)
}

/// Runs one parsed command, writing summaries to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let tol = cli.tolerances()?;
    match &cli.command {
        Command::Takagi { input, output } => {
            let m: ComplexMatrix = read_json(input)?;
            let t = takagi_with(&m, &tol)?;
            let residual = (&t.reconstruct() - &m).frobenius_norm() / m.frobenius_norm().max(1.0);
            writeln!(out, "singular values: {}", fmt_values(&t.spectrum.values))?;
            writeln!(out, "reconstruction residual: {residual:.3e}")?;
            if let Some(p) = output {
                fs::write(p, to_json(&t)?)?;
            }
        }
        Command::Construct { n, p, input, output } => {
            let s = read_quadric(input)?;
            let frame = construct_checked(&s, *n, *p, &tol)?;
            let report = verify_sphere(&frame, &tol)?;
            verify_summary(out, &report)?;
            emit(out, output.as_deref(), &to_json(&frame)?)?;
            if !report.passed {
                return Err(Error::numeric("constructed frame failed verification", report.max_containment_residual));
            }
        }
        Command::Verify { input } => {
            let frame: SphereFrame = read_json(input)?;
            let report = verify_sphere(&frame, &tol)?;
            verify_summary(out, &report)?;
            if !report.passed {
                return Err(Error::Rejected("frame does not describe a sphere in the quadric".into()));
            }
        }
        Command::Existence { d, n, p, spec, s_out, frame_out } => {
            if *p != 0 {
                return Err(Error::invalid("the existence construction is for p = 0"));
            }
            let spec = match spec {
                Some(path) => {
                    let s: ExistenceSpec = read_json(path)?;
                    if (s.d, s.n) != (*d, *n) {
                        return Err(Error::invalid(format!(
                            "spec file is for (d, n) = ({}, {}), not ({d}, {n})",
                            s.d, s.n
                        )));
                    }
                    s
                }
                None => ExistenceSpec::default_for(*d, *n)?,
            };
            let ex = build_existence_matrix(&spec, &tol)?;
            writeln!(
                out,
                "existence: d={d} n={n} l={} r={} m={} one_multiplicity={} next_below_one={:.6} lambda={:.6}",
                ex.l, ex.r, ex.m, ex.one_multiplicity, ex.next_below_one, ex.lambda
            )?;
            writeln!(out, "singular values: {}", fmt_values(&ex.spectrum))?;
            let frame = build_sphere(&ex.quadric, *n, 0, &tol)?;
            let report = verify_sphere(&frame, &tol)?;
            verify_summary(out, &report)?;
            if let Some(path) = s_out {
                fs::write(path, to_json(ex.quadric.matrix())?)?;
            }
            if let Some(path) = frame_out {
                fs::write(path, to_json(&frame)?)?;
            }
            if !(report.passed && report.full) {
                return Err(Error::numeric("existence frame failed verification", report.max_containment_residual));
            }
        }
        Command::Classify3 { y, z, curve_csv, samples } => {
            if let Some(path) = curve_csv {
                if *samples < 2 {
                    return Err(Error::invalid("--samples must be at least 2"));
                }
                let pts = classify::eta_curve(*samples)?;
                fs::write(path, classify::eta_csv(&pts))?;
                let worst = pts.iter().map(|p| p.quartic.abs()).fold(0.0, f64::max);
                writeln!(out, "eta curve: {} points, max quartic residual {worst:.3e}", pts.len())?;
            } else {
                let (y, z) = (y.expect("clap requires y"), z.expect("clap requires z"));
                let m = ModuliPoint3::new(y, z)?;
                let sigma = classify::deg3_singular_values(m)?;
                let region = classify::deg3_region(m)?;
                writeln!(out, "{}", region.label())?;
                writeln!(out, "singular values: {}", fmt_values(&sigma))?;
            }
        }
        Command::Geometry { input, grid, output, csv } => {
            let frame: SphereFrame = read_json(input)?;
            let report = geometry_report(&frame, &grid_points(*grid), &tol)?;
            let verdict = if report.homogeneity.constant { "constant" } else { "non-constant" };
            writeln!(
                out,
                "geometry: K={:.12} cos_theta={:.12} tau_x in [{:.6e}, {:.6e}] ‖B‖² spread {:.3e}",
                report.curvature, report.cos_kahler, report.tau_x_min, report.tau_x_max, report.b_norm_spread
            )?;
            writeln!(out, "{verdict} ‖B‖² ({})", report.homogeneity.method)?;
            if let Some(p) = output {
                fs::write(p, to_json(&report)?)?;
            }
            if let Some(p) = csv {
                fs::write(p, report.to_csv())?;
            }
        }
        Command::Sample(args) => {
            let catalog = sample_catalog(args, &tol)?;
            let passed = catalog.iter().filter(|r| r.verified).count();
            writeln!(out, "sample: {} rows, {passed} verified", catalog.len())?;
            emit(out, args.output.as_deref(), &to_json(&catalog)?)?;
        }
        Command::Example { output } => {
            let ex = worked_example(&tol)?;
            writeln!(out, "singular values: {}", fmt_values(&ex.spectrum))?;
            writeln!(out, "closed form deviation: {:.3e}", ex.closed_form_deviation)?;
            writeln!(out, "region: {}", ex.region)?;
            verify_summary(out, &ex.verify)?;
            writeln!(out, "homogeneous: {}", ex.homogeneous)?;
            if let Some(p) = output {
                fs::write(p, to_json(&ex)?)?;
            }
        }
    }
    Ok(())
}

/// One row of a `sample` catalog.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogRow {
    pub index: usize,
    pub s: ComplexMatrix,
    pub spectrum: Vec<f64>,
    pub one_multiplicity: usize,
    pub verified: bool,
    pub full: bool,
    pub homogeneous: bool,
}

/// Random kernel elements scaled into membership.
///
/// For `n = 2d+1` the largest singular value is drawn uniformly from
/// `(0, 1]`; for `n = 2d` it is scaled to exactly 1. Smaller `n` needs a
/// repeated singular value 1, which random kernel elements do not have.
pub fn sample_catalog(args: &SampleArgs, tol: &Tolerances) -> Result<Vec<CatalogRow>> {
    let (d, n, p) = (args.d, args.n, args.p);
    if n + 1 < 2 * d + 1 || n > 2 * d + 1 {
        return Err(Error::invalid(format!("sampling needs n in {{2d, 2d+1}} = {{{}, {}}}, got {n}", 2 * d, 2 * d + 1)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut rows = Vec::with_capacity(args.count);
    for index in 0..args.count {
        let k = random_kernel_element(d, p, &mut rng)?;
        let top = svd_with(k.matrix(), tol)?.spectrum.max();
        if top == 0.0 {
            return Err(Error::Degenerate(format!("the p = {p} kernel for d = {d} is trivial")));
        }
        let target = if n == 2 * d + 1 { 1.0 - rng.gen::<f64>() } else { 1.0 };
        let s = k.scale(C64::new(target / top, 0.0));
        let frame = build_sphere(&s, n, p, tol)?;
        let report = verify_sphere(&frame, tol)?;
        let homogeneous = homogeneity_test(&frame, tol)?.constant;
        rows.push(CatalogRow {
            index,
            s: s.into_matrix(),
            spectrum: report.spectrum.clone(),
            one_multiplicity: report.one_multiplicity,
            verified: report.passed,
            full: report.full,
            homogeneous,
        });
    }
    Ok(rows)
}

/// End-to-end replay of the degree-3 example.
#[derive(Debug, Clone, Serialize)]
pub struct WorkedExample {
    pub y: f64,
    pub z: f64,
    pub s: ComplexMatrix,
    pub spectrum: Vec<f64>,
    pub closed_form: [f64; 4],
    pub closed_form_deviation: f64,
    pub recovered: ModuliPoint3,
    pub region: &'static str,
    pub frame: SphereFrame,
    pub verify: VerifyReport,
    pub homogeneous: bool,
}

pub fn worked_example(tol: &Tolerances) -> Result<WorkedExample> {
    let m = ModuliPoint3::new(1.0 / 3.0, 0.5)?;
    let s = classify::deg3_matrix(m);
    let t = takagi_with(s.matrix(), tol)?;
    let r = 19f64.sqrt() / 12.0;
    let closed_form = [r - 1.0 / 3.0, 0.5, 2.0 / 3.0, r + 1.0 / 3.0];
    let dev = t.spectrum.max_abs_diff(&closed_form);
    let sigma: [f64; 4] = t.spectrum.values[..4].try_into().expect("four singular values");
    let recovered = classify::deg3_recover(&sigma)?;
    let region = classify::deg3_region(m)?.label();
    let frame = build_sphere(&s, 7, 0, tol)?;
    let verify = verify_sphere(&frame, tol)?;
    let homogeneous = homogeneity_test(&frame, tol)?.constant;
    Ok(WorkedExample {
        y: m.y,
        z: m.z,
        s: s.into_matrix(),
        spectrum: t.spectrum.values,
        closed_form,
        closed_form_deviation: dev,
        recovered,
        region,
        frame,
        verify,
        homogeneous,
    })
}
