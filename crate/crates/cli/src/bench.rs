use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use isogrow::growth::SeedRegion;
use isogrow::volume::ValueKind;

use crate::input::{parse_dims, InputSpec};
use crate::{run_algorithm, Algo, CliError, RunReport};

/// One CSV row: median wall time over the repetitions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub dataset: String,
    pub algo: Algo,
    pub time_s: f64,
    pub triangles: usize,
    pub peak_queue: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteDataset {
    pub id: String,
    /// Same forms as `--input`; paths are relative to the suite file.
    pub input: String,
    pub threshold: f64,
    /// Seed region for edge growth, in `--seed-region`/`--seed-layer` form.
    #[serde(default)]
    pub seed: Option<String>,
    #[serde(default)]
    pub dims: Option<String>,
    #[serde(default)]
    pub value_type: Option<ValueKind>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchSuite {
    pub datasets: Vec<SuiteDataset>,
    /// Defaults to both algorithms.
    #[serde(default)]
    pub algos: Option<Vec<Algo>>,
    #[serde(default)]
    pub repetitions: Option<usize>,
    #[serde(skip)]
    pub base: PathBuf,
}

impl BenchSuite {
    pub fn read(path: &Path) -> Result<BenchSuite, CliError> {
        let mut suite: BenchSuite = serde_json::from_str(&fs::read_to_string(path)?)?;
        suite.base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(suite)
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

/// Runs every dataset with every algorithm `repetitions` times, in order,
/// and writes the CSV to `out`. With `report_dir`, each pair also gets
/// `<id>-<algo>.json` holding the last run's report with the median time.
pub fn cmd_bench(
    suite: &BenchSuite,
    repetitions: usize,
    out: &Path,
    report_dir: Option<&Path>,
) -> Result<Vec<BenchRecord>, CliError> {
    if repetitions == 0 {
        return Err(CliError::Usage("repetitions must be at least 1".into()));
    }
    let algos = suite
        .algos
        .clone()
        .unwrap_or_else(|| vec![Algo::Mc, Algo::EdgeGrowth]);
    if let Some(dir) = report_dir {
        fs::create_dir_all(dir)?;
    }
    let mut records = Vec::new();
    for d in &suite.datasets {
        let dims = d.dims.as_deref().map(parse_dims).transpose()?;
        let input = InputSpec::parse(&d.input, dims, d.value_type)?.relative_to(&suite.base);
        let seeds = match &d.seed {
            Some(s) => s
                .parse::<SeedRegion>()
                .map_err(|e| CliError::Usage(format!("dataset {}: {e}", d.id)))?,
            None => SeedRegion::default(),
        };
        let v = input.load()?;
        for &algo in &algos {
            let mut times = Vec::with_capacity(repetitions);
            let mut last: Option<RunReport> = None;
            for _ in 0..repetitions {
                let (_, r) =
                    run_algorithm(&v, &d.id, d.threshold, algo, algo.default_interp(), &seeds)?;
                times.push(r.time_s);
                if let Some(prev) = &last {
                    if prev.triangles != r.triangles {
                        return Err(CliError::Core(isogrow::Error::Internal(format!(
                            "{} {algo}: triangle count changed between repetitions",
                            d.id
                        ))));
                    }
                }
                last = Some(r);
            }
            let mut report = last.expect("at least one repetition");
            report.time_s = median(times);
            if let Some(dir) = report_dir {
                let text = serde_json::to_string_pretty(&report)? + "\n";
                fs::write(dir.join(format!("{}-{algo}.json", d.id)), text)?;
            }
            records.push(BenchRecord {
                dataset: d.id.clone(),
                algo,
                time_s: report.time_s,
                triangles: report.triangles,
                peak_queue: report.peak_queue,
            });
        }
    }
    let mut w = csv::Writer::from_path(out)?;
    for r in &records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_of_odd_and_even() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn suite_rejects_unknown_keys() {
        let ok = r#"{"datasets":[{"id":"s","input":"gen:sphere:8","threshold":50}]}"#;
        assert!(serde_json::from_str::<BenchSuite>(ok).is_ok());
        let bad = r#"{"datasets":[],"reps":3}"#;
        assert!(serde_json::from_str::<BenchSuite>(bad).is_err());
    }
}
