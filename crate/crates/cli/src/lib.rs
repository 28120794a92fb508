//! Command layer of the `isogrow` binary: volume generation, reconstruction,
//! side-by-side comparison, mesh checks and the benchmark harness.
//!
//! Every command is a plain function returning a serialisable record so the
//! acceptance tests can drive them without spawning a process.

mod args;
mod bench;
mod error;
mod input;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use isogrow::growth::{EdgeGrowth, GrowthStats, SeedRegion};
use isogrow::interp::{InterpMode, InterpParams};
use isogrow::mc::extract_mc;
use isogrow::mesh::{
    area_and_count_stats, read_obj, to_obj_string, to_stl_bytes, topology_report, weld,
    TopologyReport, TriangleMesh,
};
use isogrow::volume::{write_raw, Endianness, Generator, RawDescriptor, ValueKind, Volume};

pub use args::{Algo, Cli, Command, InterpChoice, MeshFormat};
pub use bench::{cmd_bench, BenchRecord, BenchSuite, SuiteDataset};
pub use error::CliError;
pub use input::{default_size, parse_dims, InputSpec};

/// Everything needed to reconstruct one surface.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: InputSpec,
    pub threshold: f64,
    pub algo: Algo,
    pub interp: InterpMode,
    /// Only meaningful for edge growth.
    pub seeds: SeedRegion,
    pub out: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub format: MeshFormat,
}

impl RunConfig {
    pub fn new(input: InputSpec, threshold: f64, algo: Algo) -> Self {
        RunConfig {
            input,
            threshold,
            algo,
            interp: algo.default_interp(),
            seeds: SeedRegion::default(),
            out: None,
            report: None,
            format: MeshFormat::Obj,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub dataset: String,
    pub algo: Algo,
    pub interp: String,
    pub threshold: f64,
    pub time_s: f64,
    pub triangles: usize,
    pub vertices: usize,
    pub area: f64,
    /// Zero for marching cubes.
    pub peak_queue: usize,
    pub report: TopologyReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub growth: Option<GrowthStats>,
}

/// Runs one algorithm on an already loaded volume. Only the extraction
/// itself is timed.
pub fn run_algorithm(
    v: &Volume,
    dataset: &str,
    threshold: f64,
    algo: Algo,
    interp: InterpMode,
    seeds: &SeedRegion,
) -> Result<(TriangleMesh, RunReport), CliError> {
    let start = Instant::now();
    let (mesh, growth) = match algo {
        Algo::Mc => (extract_mc(v, threshold, interp), None),
        Algo::EdgeGrowth => {
            let out = EdgeGrowth::new(v, threshold, interp).run(seeds)?;
            (out.mesh, Some(out.stats))
        }
    };
    let time_s = start.elapsed().as_secs_f64();
    let stats = area_and_count_stats(&mesh);
    log::info!(
        "{dataset}: {algo} produced {} triangles in {time_s:.4}s",
        stats.triangles
    );
    let report = RunReport {
        dataset: dataset.to_string(),
        algo,
        interp: interp.to_string(),
        threshold,
        time_s,
        triangles: stats.triangles,
        vertices: stats.vertices,
        area: stats.area,
        peak_queue: growth.as_ref().map_or(0, |g| g.peak_queue),
        report: topology_report(&mesh),
        growth,
    };
    Ok((mesh, report))
}

pub fn mesh_bytes(mesh: &TriangleMesh, format: MeshFormat) -> Vec<u8> {
    match format {
        MeshFormat::Obj => to_obj_string(mesh).into_bytes(),
        MeshFormat::Stl => to_stl_bytes(mesh),
    }
}

fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn cmd_reconstruct(cfg: &RunConfig) -> Result<RunReport, CliError> {
    let v = cfg.input.load()?;
    let (mesh, report) = run_algorithm(
        &v,
        &cfg.input.to_string(),
        cfg.threshold,
        cfg.algo,
        cfg.interp,
        &cfg.seeds,
    )?;
    if let Some(out) = &cfg.out {
        fs::write(out, mesh_bytes(&mesh, cfg.format))?;
    }
    if let Some(path) = &cfg.report {
        write_json(&report, path)?;
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub mc: RunReport,
    pub edge_growth: RunReport,
    /// Edge growth minus marching cubes.
    pub triangle_delta: i64,
    pub component_delta: i64,
    /// `(mc, edge_growth)`.
    pub watertight: (bool, bool),
}

/// Runs both algorithms on the same volume. `cfg.algo` is ignored;
/// `cfg.interp` applies to both.
pub fn cmd_compare(cfg: &RunConfig) -> Result<CompareReport, CliError> {
    let v = cfg.input.load()?;
    let name = cfg.input.to_string();
    let (_, mc) = run_algorithm(&v, &name, cfg.threshold, Algo::Mc, cfg.interp, &cfg.seeds)?;
    let (mesh, eg) = run_algorithm(&v, &name, cfg.threshold, Algo::EdgeGrowth, cfg.interp, &cfg.seeds)?;
    if let Some(out) = &cfg.out {
        fs::write(out, mesh_bytes(&mesh, cfg.format))?;
    }
    let report = CompareReport {
        triangle_delta: eg.triangles as i64 - mc.triangles as i64,
        component_delta: eg.report.component_count as i64 - mc.report.component_count as i64,
        watertight: (mc.report.watertight, eg.report.watertight),
        mc,
        edge_growth: eg,
    };
    if let Some(path) = &cfg.report {
        write_json(&report, path)?;
    }
    Ok(report)
}

/// Topology of an OBJ file. Coincident vertices are merged first.
pub fn cmd_check(path: &Path) -> Result<TopologyReport, CliError> {
    let mesh = read_obj(path)?;
    Ok(topology_report(&weld(&mesh, 0.0)))
}

/// Writes the generated volume as a raw file plus a JSON descriptor at
/// `out`. The raw file sits next to the descriptor with a `.raw` extension.
pub fn cmd_gen(generator: &Generator, out: &Path, kind: ValueKind) -> Result<RawDescriptor, CliError> {
    let v = generator.build()?;
    let raw = out.with_extension("raw");
    write_raw(&v, &raw, kind, Endianness::Little)?;
    let desc = RawDescriptor {
        data_file: PathBuf::from(raw.file_name().expect("path has a file name")),
        dims: v.dims(),
        value_type: kind,
        endianness: Endianness::Little,
        spacing: v.spacing(),
    };
    desc.save(out)?;
    Ok(desc)
}

/// A closed stdout (e.g. piped into `head`) is not an error.
fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    let text = serde_json::to_string_pretty(value)? + "\n";
    match out.write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

/// Runs the chosen command and prints its record as JSON. `bench` only
/// writes its CSV.
pub fn run_cli(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen(a) => {
            let generator = a.generator()?;
            let desc = cmd_gen(&generator, &a.out, a.value_type)?;
            print_json(&desc)?;
        }
        Command::Reconstruct(a) => {
            let report = cmd_reconstruct(&a.config()?)?;
            print_json(&report)?;
        }
        Command::Compare(a) => {
            let report = cmd_compare(&a.config()?)?;
            print_json(&report)?;
        }
        Command::Check(a) => {
            let report = cmd_check(&a.mesh)?;
            print_json(&report)?;
        }
        Command::Bench(a) => {
            let suite = BenchSuite::read(&a.suite)?;
            let reps = a.repetitions.or(suite.repetitions).unwrap_or(3);
            let records = cmd_bench(&suite, reps, &a.out, a.report_dir.as_deref())?;
            log::info!("wrote {} records to {}", records.len(), a.out.display());
        }
    }
    Ok(())
}

/// Interpolation from the CLI choice, with `params` only allowed for
/// three-segment.
pub fn interp_mode(
    choice: Option<InterpChoice>,
    params: Option<InterpParams>,
    algo: Algo,
) -> Result<InterpMode, CliError> {
    let mode = match choice {
        None => match (algo.default_interp(), params) {
            (InterpMode::ThreeSegment(_), Some(p)) => InterpMode::ThreeSegment(p),
            (m, _) => m,
        },
        Some(InterpChoice::Linear) => InterpMode::Linear,
        Some(InterpChoice::Midpoint) => InterpMode::Midpoint,
        Some(InterpChoice::ThreeSegment) => InterpMode::ThreeSegment(params.unwrap_or_default()),
    };
    if params.is_some() && !matches!(mode, InterpMode::ThreeSegment(_)) {
        return Err(CliError::Usage(
            "--interp-params needs --interp three-segment".into(),
        ));
    }
    Ok(mode)
}
