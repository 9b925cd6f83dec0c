//! The `lkpolar` command line: scene files in, reports out.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad input, 3 numerical
//! failure. `LKPOLAR_THREADS` caps the worker count; results do not depend
//! on it.

pub mod report;
pub mod scene;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::angle::AngleConfig;
use crate::crofton::McConfig;
use crate::error::Error;
use crate::numkit::RngStream;
use crate::polycone::{random_pointed_generators, ConvexCone, DEFAULT_TOL};
use report::{
    invariants_csv, invariants_json, invariants_table, matrix_text, object_invariants, polytope_table, verify_json,
    verify_object, verify_table,
};
use scene::{load_scene, Geometry, LoadedObject, ObjectData, ObjectKind, SceneError, SceneFile, SceneObject};

pub const THREADS_ENV: &str = "LKPOLAR_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "lkpolar",
    version,
    about = "Local Lipschitz-Killing curvatures and polar invariants of polyhedral germs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// σ_*, Λ^loc_*, face contributions and the angle-sum residual.
    Invariants {
        file: PathBuf,
        #[arg(long)]
        object: Option<String>,
        #[arg(long, default_value_t = 200_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Closed forms against the Monte Carlo oracles, with z-scores.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 200_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Entries of the transfer matrix taking σ_* to Λ^loc_*.
    Matrix {
        #[arg(long)]
        dim: usize,
    },
    /// Intrinsic volumes and Steiner coefficients of a polytope.
    Polytope {
        file: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Random pointed cones with Gaussian generators, as a scene file.
    Sample {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        generators: usize,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Scene(#[from] SceneError),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Compute(#[from] Error),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn angle_config(samples: usize, seed: u64) -> AngleConfig {
    AngleConfig { samples, stream: RngStream::new(seed).substream(0), force_mc: false }
}

fn mc_config(samples: usize, seed: u64) -> McConfig {
    McConfig { samples, seed, ..McConfig::default() }
}

fn select<'a>(objects: &'a [LoadedObject], name: Option<&str>) -> CliResult<Vec<&'a LoadedObject>> {
    match name {
        None => Ok(objects.iter().collect()),
        Some(n) => match objects.iter().find(|o| o.name == n) {
            Some(o) => Ok(vec![o]),
            None => Err(CliError::Usage(format!("no object named {n:?}"))),
        },
    }
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn sample_scene(dim: usize, generators: usize, count: usize, seed: u64) -> CliResult<SceneFile> {
    if dim == 0 || generators == 0 {
        return Err(CliError::Usage("--dim and --generators must be positive".into()));
    }
    let root = RngStream::new(seed);
    let objects = (0..count)
        .map(|k| {
            let mut rng = root.substream(k as u64).rng();
            let gens = loop {
                let g = random_pointed_generators(&mut rng, dim, generators);
                let cone = ConvexCone::from_generators(&g, dim, DEFAULT_TOL)?;
                if cone.is_pointed() && (generators < dim || cone.is_full_dim()) {
                    break g;
                }
            };
            Ok(SceneObject {
                name: format!("cone_{k:03}"),
                kind: ObjectKind::Cone,
                ambient_dim: dim,
                data: ObjectData {
                    generators: Some(gens.into_iter().map(|v| v.into_inner()).collect()),
                    ..Default::default()
                },
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(SceneFile { version: scene::SCENE_VERSION, objects })
}

fn dispatch(command: Command, out: &mut String) -> CliResult<i32> {
    match command {
        Command::Invariants { file, object, samples, seed, format } => {
            let (_, objects) = load_scene(&file)?;
            let chosen = select(&objects, object.as_deref())?;
            let angles = angle_config(samples, seed);
            let mc = mc_config(samples, seed);
            let mut items = Vec::new();
            for (idx, obj) in chosen.iter().enumerate() {
                let a = angles.with_stream(angles.stream.substream(idx as u64));
                match object_invariants(obj, &a, &McConfig { seed: seed.wrapping_add(idx as u64), ..mc.clone() })? {
                    Some(item) => items.push(item),
                    None if object.is_some() => {
                        return Err(CliError::Usage(format!(
                            "{:?} is a polytope; use the polytope subcommand",
                            obj.name
                        )))
                    }
                    None => {}
                }
            }
            out.push_str(&match format {
                Format::Json => invariants_json(&items),
                Format::Csv => invariants_csv(&items),
                Format::Table => invariants_table(&items),
            });
            Ok(0)
        }
        Command::Verify { file, samples, seed, report } => {
            let (_, objects) = load_scene(&file)?;
            let angles = angle_config(samples, seed);
            let mc = mc_config(samples, seed);
            let mut lines = Vec::new();
            for (idx, obj) in objects.iter().enumerate() {
                lines.extend(verify_object(obj, idx, &angles, &mc)?);
            }
            out.push_str(&verify_table(&lines));
            if let Some(path) = report {
                write_file(&path, &verify_json(&lines, samples, seed))?;
            }
            Ok(if lines.iter().all(|c| c.pass) { 0 } else { 1 })
        }
        Command::Matrix { dim } => {
            out.push_str(&matrix_text(dim)?);
            Ok(0)
        }
        Command::Polytope { file, object } => {
            let (_, objects) = load_scene(&file)?;
            let obj = select(&objects, Some(&object))?[0];
            match &obj.geometry {
                Geometry::Polytope(p) => {
                    out.push_str(&polytope_table(&obj.name, p, &AngleConfig::default())?);
                    Ok(0)
                }
                _ => Err(CliError::Usage(format!("{:?} is not a polytope", obj.name))),
            }
        }
        Command::Sample { dim, generators, count, seed, out: path } => {
            let scene = sample_scene(dim, generators, count, seed)?;
            scene.save(&path)?;
            out.push_str(&format!("wrote {count} cones to {}\n", path.display()));
            Ok(0)
        }
    }
}

fn thread_cap() -> CliResult<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
    }
}

/// Parses `args` (program name first), runs the command and writes its
/// report to `stdout`. Returns the process exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut out = String::new();
    let result = thread_cap().and_then(|cap| match cap {
        None => dispatch(cli.command, &mut out),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot start {n} workers: {e}")))?;
            pool.install(|| dispatch(cli.command, &mut out))
        }
    });
    let _ = stdout.write_all(out.as_bytes());
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
