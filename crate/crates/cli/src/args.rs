use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use isogrow::growth::SeedRegion;
use isogrow::interp::{InterpMode, InterpParams};
use isogrow::volume::{Generator, ValueKind};

use crate::input::{default_size, parse_dims, InputSpec};
use crate::{interp_mode, CliError, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    Mc,
    EdgeGrowth,
}

impl Algo {
    /// Marching cubes interpolates linearly, edge growth snaps.
    pub fn default_interp(self) -> InterpMode {
        match self {
            Algo::Mc => InterpMode::Linear,
            Algo::EdgeGrowth => InterpMode::default(),
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algo::Mc => "mc",
            Algo::EdgeGrowth => "edge-growth",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InterpChoice {
    Linear,
    Midpoint,
    ThreeSegment,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum MeshFormat {
    #[default]
    Obj,
    Stl,
}

/// Iso-surface reconstruction by marching cubes or edge growth.
///
/// Log verbosity comes from `ISOGROW_LOG` (e.g. `ISOGROW_LOG=info`).
#[derive(Debug, Parser)]
#[command(name = "isogrow", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic test volume as raw data plus a JSON descriptor.
    Gen(GenArgs),
    /// Extract a surface and write the mesh and a JSON report.
    Reconstruct(RunArgs),
    /// Run marching cubes and edge growth on the same volume.
    Compare(RunArgs),
    /// Topology report for an OBJ mesh.
    Check(CheckArgs),
    /// Time a dataset/algorithm matrix and write a CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// mc-example, sphere, two-spheres or shell.
    pub name: String,
    /// Grid size, `N` or `nx,ny,nz`. Ignored by mc-example.
    #[arg(long)]
    pub dims: Option<String>,
    /// Inside value of mc-example.
    #[arg(long, default_value_t = 100.0)]
    pub a: f32,
    #[arg(long = "type", default_value = "u8")]
    pub value_type: ValueKind,
    /// Descriptor path; the raw file is written next to it.
    #[arg(long)]
    pub out: PathBuf,
}

impl GenArgs {
    pub fn generator(&self) -> Result<Generator, CliError> {
        let dims = match &self.dims {
            Some(d) => parse_dims(d)?,
            None => [default_size(&self.name); 3],
        };
        let mut g = Generator::named(&self.name, dims[0], self.a)?;
        match &mut g {
            Generator::Sphere { dims: d, .. }
            | Generator::TwoSpheres { dims: d, .. }
            | Generator::Shell { dims: d, .. } => *d = dims,
            Generator::McExample { .. } => {}
        }
        Ok(g)
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// `gen:<name>[:<n>]`, a `.json` descriptor, a directory of PNG slices,
    /// or a raw file together with `--dims` and `--type`.
    #[arg(long)]
    pub input: String,
    #[arg(long)]
    pub dims: Option<String>,
    #[arg(long = "type")]
    pub value_type: Option<ValueKind>,
    /// Iso-value Y; a sample is inside when its value is above Y.
    #[arg(long, allow_negative_numbers = true)]
    pub threshold: f64,
    #[arg(long, value_enum, default_value_t = Algo::EdgeGrowth)]
    pub algo: Algo,
    /// Defaults to linear for mc and three-segment for edge-growth.
    #[arg(long, value_enum)]
    pub interp: Option<InterpChoice>,
    /// Three-segment parameters `q,m,n,p`.
    #[arg(long)]
    pub interp_params: Option<InterpParams>,
    /// `middle` or a cube layer index along z.
    #[arg(long, conflicts_with = "seed_region")]
    pub seed_layer: Option<String>,
    /// Cube box `x0,x1,y0,y1,z0,z1`, half-open: `x0 <= x < x1`.
    #[arg(long)]
    pub seed_region: Option<String>,
    /// Mesh output path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON report path.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = MeshFormat::Obj)]
    pub format: MeshFormat,
}

impl RunArgs {
    /// Validates the flag combination. `compare` always runs edge growth,
    /// so seed flags are accepted there regardless of `--algo`.
    pub fn config(&self) -> Result<RunConfig, CliError> {
        let dims = self.dims.as_deref().map(parse_dims).transpose()?;
        let input = InputSpec::parse(&self.input, dims, self.value_type)?;
        let seeds = match (&self.seed_layer, &self.seed_region) {
            (Some(s), None) | (None, Some(s)) => Some(
                s.parse::<SeedRegion>()
                    .map_err(|e| CliError::Usage(e.to_string()))?,
            ),
            (None, None) => None,
            (Some(_), Some(_)) => {
                return Err(CliError::Usage(
                    "--seed-layer and --seed-region are exclusive".into(),
                ))
            }
        };
        if self.algo == Algo::Mc && seeds.is_some() {
            return Err(CliError::Usage(
                "seed options need --algo edge-growth".into(),
            ));
        }
        if !self.threshold.is_finite() {
            return Err(CliError::Usage("--threshold must be finite".into()));
        }
        Ok(RunConfig {
            input,
            threshold: self.threshold,
            algo: self.algo,
            interp: interp_mode(self.interp, self.interp_params, self.algo)?,
            seeds: seeds.unwrap_or_default(),
            out: self.out.clone(),
            report: self.report.clone(),
            format: self.format,
        })
    }
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub mesh: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Suite JSON; see the README for the schema.
    pub suite: PathBuf,
    /// Overrides the suite's repetition count.
    #[arg(long)]
    pub repetitions: Option<usize>,
    /// CSV output path.
    #[arg(long)]
    pub out: PathBuf,
    /// Directory for one JSON report per dataset and algorithm.
    #[arg(long)]
    pub report_dir: Option<PathBuf>,
}
