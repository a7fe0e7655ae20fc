//! Command-line front end.
//!
//! Exit codes: 0 success, 1 negative verdict or insufficient mesh, 2 usage or
//! input error, 3 I/O error.

use crate::color::MAX_COLORS;
use crate::geometry::Mesh;
use crate::homogenizer::bounds::{
    bound_lemma31, bound_lemma33, bound_main, bound_rainbow, bound_uniform, polynomial_gap, printed_polynomial,
};
use crate::homogenizer::{homogeneous_wall, uniform_mesh, Outcome, PipelineResult, RainbowMesh};
use crate::instance::{
    gen_adversarial, gen_all_colored, gen_random, parse_instance, write_instance, AdversarialMode, HostInstance,
};
use crate::render::{parse_packings, render_svg};
use crate::verifier::{verify_homogeneous_wall, verify_rainbow_row, verify_tangle_truncation, verify_uniform, Verdict};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "homwall", version, about = "Homogeneous walls in colorful grid instances")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated instance in CMI format.
    Generate(GenerateArgs),
    /// Build a homogeneous wall or uniform mesh from an instance.
    Homogenize(HomogenizeArgs),
    /// Check a mesh file against an instance.
    Verify(VerifyArgs),
    /// Evaluate extent bounds.
    Bounds(BoundsArgs),
    /// Draw an instance, optionally with a mesh and packings, as SVG.
    Render(RenderArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GeneratorMode {
    Random,
    PerimeterHeavy,
    BufferStripe,
    SingleTile,
    AllColored,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Grid side length.
    #[arg(long)]
    pub size: usize,
    /// Palette size q.
    #[arg(long)]
    pub colors: usize,
    /// Instance generator.
    #[arg(long, value_enum, default_value = "random")]
    pub mode: GeneratorMode,
    /// Generator seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fraction of faces given a bridge (random mode).
    #[arg(long, default_value_t = 0.05)]
    pub face_density: f64,
    /// Probability of each color in a bridge palette (random mode).
    #[arg(long, default_value_t = 0.5)]
    pub palette_density: f64,
    /// Output CMI file.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("target").required(true))]
pub struct HomogenizeArgs {
    /// Input CMI file.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Side k of the homogeneous wall to build.
    #[arg(long, group = "target")]
    pub target_wall: Option<usize>,
    /// Side l of the uniform mesh to build.
    #[arg(long, group = "target")]
    pub target_mesh: Option<usize>,
    /// Where to write the decision trace.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Output mesh file.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Input CMI file.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Mesh file to check.
    #[arg(long)]
    pub mesh: PathBuf,
    /// One of `uniform`, `rainbow`, `wall`, `tangle:<old mesh file>` or
    /// `tangle:base` for the host grid.
    #[arg(long)]
    pub suite: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    /// Sorting stage: q r p b x.
    #[value(name = "31")]
    Sort,
    /// Tile confinement: q p b r.
    #[value(name = "33")]
    Tiles,
    /// Rainbow mesh: n m q.
    Rainbow,
    /// Uniform mesh: l q.
    Uniform,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Palette size q for the end-to-end bound.
    #[arg(long, requires = "k", conflicts_with = "lemma")]
    pub q: Option<u128>,
    /// Wall side k for the end-to-end bound.
    #[arg(long, requires = "q")]
    pub k: Option<u128>,
    /// Evaluate a single stage bound on the positional arguments.
    #[arg(long, value_enum)]
    pub lemma: Option<BoundKind>,
    /// Stage bound arguments.
    #[arg(requires = "lemma")]
    pub args: Vec<u128>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Input CMI file.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Mesh file to draw.
    #[arg(long)]
    pub mesh: Option<PathBuf>,
    /// Trace file whose `PACKING` lines give the strips to shade.
    #[arg(long)]
    pub packings: Option<PathBuf>,
    /// Output SVG file.
    #[arg(long)]
    pub out: PathBuf,
}

/// A failed command with its exit code and message.
struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, msg: msg.into() }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure { code: EXIT_IO, msg: format!("{}: {e}", path.display()) })
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure { code: EXIT_IO, msg: format!("{}: {e}", path.display()) })
}

fn load_instance(path: &Path) -> Result<HostInstance, Failure> {
    parse_instance(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_mesh(path: &Path, inst: &HostInstance) -> Result<Mesh, Failure> {
    let mesh = Mesh::from_text(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if !mesh.fits(inst) {
        return Err(usage(format!(
            "{}: mesh has vertices outside the {}x{} grid",
            path.display(),
            inst.d_r(),
            inst.d_c()
        )));
    }
    Ok(mesh)
}

fn generate(a: &GenerateArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if a.colors > MAX_COLORS {
        return Err(usage(format!("--colors {} exceeds the cap of {MAX_COLORS}", a.colors)));
    }
    if a.size < 2 {
        return Err(usage("--size must be at least 2"));
    }
    for (name, v) in [("--face-density", a.face_density), ("--palette-density", a.palette_density)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(usage(format!("{name} must lie in [0, 1]")));
        }
    }
    let inst = match a.mode {
        GeneratorMode::Random => gen_random(a.size, a.colors, a.face_density, a.palette_density, a.seed),
        GeneratorMode::PerimeterHeavy => gen_adversarial(a.size, a.colors, AdversarialMode::PerimeterHeavy, a.seed),
        GeneratorMode::BufferStripe => gen_adversarial(a.size, a.colors, AdversarialMode::BufferStripe, a.seed),
        GeneratorMode::SingleTile => gen_adversarial(a.size, a.colors, AdversarialMode::SingleTile, a.seed),
        GeneratorMode::AllColored => gen_all_colored(a.size, a.colors),
    };
    write(&a.out, &write_instance(&inst))?;
    let _ = writeln!(out, "wrote {}x{} instance with {} bridges", inst.d_r(), inst.d_c(), inst.bridges().len());
    Ok(EXIT_OK)
}

fn report(res: &PipelineResult, started: Instant, err: &mut dyn Write) {
    for s in &res.stats {
        let _ = writeln!(err, "stage {}: {} ({:.3}s)", s.stage, s.detail, s.elapsed.as_secs_f64());
    }
    let _ = writeln!(err, "discarded colors: {}", res.discarded);
    let _ = writeln!(err, "runtime: {:.3}s", started.elapsed().as_secs_f64());
}

fn homogenize(a: &HomogenizeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let inst = load_instance(&a.input)?;
    let started = Instant::now();
    let res = match (a.target_wall, a.target_mesh) {
        (Some(k), _) => homogeneous_wall(&inst, k),
        (_, Some(l)) => uniform_mesh(&inst, l),
        _ => unreachable!("clap requires one target"),
    }
    .map_err(|e| usage(e.to_string()))?;
    report(&res, started, err);
    if let Some(path) = &a.trace {
        write(path, &res.trace.to_text())?;
    }
    match &res.outcome {
        Outcome::Success(mesh) => {
            write(&a.out, &mesh.to_text())?;
            let _ = writeln!(out, "SUCCESS mesh={}x{}", mesh.n(), mesh.m());
            Ok(EXIT_OK)
        }
        Outcome::InsufficientMesh { stage, missing } => {
            let _ = writeln!(out, "INSUFFICIENT stage=\"{stage}\" missing={missing}");
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let inst = load_instance(&a.input)?;
    let mesh = load_mesh(&a.mesh, &inst)?;
    let verdict = match a.suite.as_str() {
        "uniform" => verify_uniform(&inst, &mesh),
        "wall" => verify_homogeneous_wall(&inst, &mesh),
        "rainbow" => match RainbowMesh::from_mesh(&inst, mesh) {
            Ok(rm) => verify_rainbow_row(&inst, &rm),
            Err(v) => Verdict::from_violations(vec![crate::verifier::Violation {
                property: "mesh".into(),
                witness: v.to_string(),
            }]),
        },
        other => match other.strip_prefix("tangle:") {
            Some("base") => verify_tangle_truncation(&inst, &Mesh::base(&inst), &mesh),
            Some(path) => {
                let old = load_mesh(Path::new(path), &inst)?;
                verify_tangle_truncation(&inst, &old, &mesh)
            }
            None => return Err(usage(format!("unknown suite `{other}`"))),
        },
    };
    let _ = write!(out, "{verdict}");
    Ok(if verdict.is_ok() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn bounds(a: &BoundsArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let fail = |e: crate::homogenizer::bounds::BoundError| usage(e.to_string());
    if let (Some(q), Some(k)) = (a.q, a.k) {
        if k < 1 {
            return Err(usage("--k must be at least 1"));
        }
        let composed = bound_main(q, k).map_err(fail)?;
        let (qi, ki) = (
            i128::try_from(q).map_err(|_| usage("q too large"))?,
            i128::try_from(k).map_err(|_| usage("k too large"))?,
        );
        let _ = writeln!(out, "composed {composed}");
        let _ = writeln!(out, "printed {}", printed_polynomial(qi, ki));
        let _ = writeln!(out, "difference {}", polynomial_gap(qi, ki));
        return Ok(EXIT_OK);
    }
    let Some(kind) = a.lemma else { return Err(usage("give --q and --k, or --lemma")) };
    let want = match kind {
        BoundKind::Sort => 5,
        BoundKind::Tiles => 4,
        BoundKind::Rainbow => 3,
        BoundKind::Uniform => 2,
    };
    if a.args.len() != want {
        return Err(usage(format!("this bound takes {want} arguments, got {}", a.args.len())));
    }
    let v = &a.args;
    let value = match kind {
        BoundKind::Sort => {
            if v[4] < 1 {
                return Err(usage("x must be at least 1"));
            }
            bound_lemma31(v[0], v[1], v[2], v[3], v[4])
        }
        BoundKind::Tiles => bound_lemma33(v[0], v[1], v[2], v[3]),
        BoundKind::Rainbow => {
            if v[0] < 2 || v[1] < 2 {
                return Err(usage("n and m must be at least 2"));
            }
            bound_rainbow(v[0], v[1], v[2])
        }
        BoundKind::Uniform => {
            if v[0] < 2 {
                return Err(usage("l must be at least 2"));
            }
            bound_uniform(v[0], v[1])
        }
    }
    .map_err(fail)?;
    let _ = writeln!(out, "{value}");
    Ok(EXIT_OK)
}

fn render(a: &RenderArgs) -> Result<i32, Failure> {
    let inst = load_instance(&a.input)?;
    let mesh = a.mesh.as_deref().map(|p| load_mesh(p, &inst)).transpose()?;
    let packings = match &a.packings {
        Some(p) => parse_packings(&read(p)?).map_err(|e| usage(format!("{}: {e}", p.display())))?,
        None => Vec::new(),
    };
    write(&a.out, &render_svg(&inst, mesh.as_ref(), &packings))?;
    Ok(EXIT_OK)
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Generate(a) => generate(a, out),
        Command::Homogenize(a) => homogenize(a, out, err),
        Command::Verify(a) => verify(a, out),
        Command::Bounds(a) => bounds(a, out),
        Command::Render(a) => render(a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}
