use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use isogrow::volume::{load_raw, load_slices, read_descriptor, Endianness, Generator, ValueKind, Volume};

use crate::CliError;

/// Where a volume comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum InputSpec {
    /// JSON descriptor next to a raw blob.
    Descriptor(PathBuf),
    Raw {
        path: PathBuf,
        dims: [usize; 3],
        kind: ValueKind,
        endianness: Endianness,
    },
    /// Directory of grayscale PNG slices, stacked in file-name order.
    Slices(PathBuf),
    Generator(Generator),
}

/// `N` for a cube or `nx,ny,nz`.
pub fn parse_dims(s: &str) -> Result<[usize; 3], CliError> {
    let bad = || CliError::Usage(format!("bad dims `{s}`: expected N or nx,ny,nz"));
    let v: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    match v[..] {
        [n] => Ok([n; 3]),
        [x, y, z] => Ok([x, y, z]),
        _ => Err(bad()),
    }
}

pub fn default_size(generator: &str) -> usize {
    match generator {
        "two-spheres" => 30,
        "shell" => 24,
        _ => 20,
    }
}

impl InputSpec {
    /// Interprets `--input`: `gen:<name>[:<n>]`, a `.json` descriptor, a
    /// slice directory, or a raw file (which needs `dims` and `kind`).
    pub fn parse(
        input: &str,
        dims: Option<[usize; 3]>,
        kind: Option<ValueKind>,
    ) -> Result<InputSpec, CliError> {
        if let Some(rest) = input.strip_prefix("gen:") {
            let (name, size) = match rest.split_once(':') {
                Some((name, n)) => {
                    let n = n
                        .parse::<usize>()
                        .map_err(|_| CliError::Usage(format!("bad generator size in `{input}`")))?;
                    (name, n)
                }
                None => (rest, default_size(rest)),
            };
            return Ok(InputSpec::Generator(Generator::named(name, size, 100.0)?));
        }
        let path = PathBuf::from(input);
        if path.extension().is_some_and(|e| e == "json") {
            return Ok(InputSpec::Descriptor(path));
        }
        if path.is_dir() {
            return Ok(InputSpec::Slices(path));
        }
        match (dims, kind) {
            (Some(dims), Some(kind)) => Ok(InputSpec::Raw {
                path,
                dims,
                kind,
                endianness: Endianness::Little,
            }),
            _ => Err(CliError::Usage(format!(
                "raw input `{input}` needs --dims and --type"
            ))),
        }
    }

    pub fn load(&self) -> Result<Volume, CliError> {
        match self {
            InputSpec::Descriptor(p) | InputSpec::Raw { path: p, .. } | InputSpec::Slices(p)
                if !p.exists() =>
            {
                return Err(CliError::MissingInput(p.clone()))
            }
            _ => {}
        }
        Ok(match self {
            InputSpec::Descriptor(p) => read_descriptor(p)?.1,
            InputSpec::Raw {
                path,
                dims,
                kind,
                endianness,
            } => load_raw(path, *dims, *kind, *endianness)?,
            InputSpec::Slices(dir) => load_slices(&slice_files(dir)?)?,
            InputSpec::Generator(g) => g.build()?,
        })
    }

    /// Resolves relative paths against `base`.
    pub fn relative_to(self, base: &Path) -> InputSpec {
        let join = |p: PathBuf| if p.is_relative() { base.join(p) } else { p };
        match self {
            InputSpec::Descriptor(p) => InputSpec::Descriptor(join(p)),
            InputSpec::Raw {
                path,
                dims,
                kind,
                endianness,
            } => InputSpec::Raw {
                path: join(path),
                dims,
                kind,
                endianness,
            },
            InputSpec::Slices(p) => InputSpec::Slices(join(p)),
            g => g,
        }
    }
}

fn slice_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e.eq_ignore_ascii_case("png")))
        .collect();
    files.sort();
    Ok(files)
}

impl fmt::Display for InputSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputSpec::Descriptor(p) | InputSpec::Raw { path: p, .. } | InputSpec::Slices(p) => {
                let stem = p.file_stem().unwrap_or(p.as_os_str());
                write!(f, "{}", stem.to_string_lossy())
            }
            InputSpec::Generator(g) => f.write_str(g.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims() {
        assert_eq!(parse_dims("20").unwrap(), [20; 3]);
        assert_eq!(parse_dims("2,3,4").unwrap(), [2, 3, 4]);
        assert!(parse_dims("2,3").is_err());
        assert!(parse_dims("x").is_err());
    }

    #[test]
    fn specs() {
        assert_eq!(
            InputSpec::parse("gen:sphere", None, None).unwrap(),
            InputSpec::Generator(Generator::sphere(20))
        );
        assert_eq!(
            InputSpec::parse("gen:shell:16", None, None).unwrap(),
            InputSpec::Generator(Generator::shell(16))
        );
        assert!(InputSpec::parse("gen:cube", None, None).is_err());
        assert!(matches!(
            InputSpec::parse("v.json", None, None).unwrap(),
            InputSpec::Descriptor(_)
        ));
        assert!(matches!(InputSpec::parse("v.raw", None, None), Err(CliError::Usage(_))));
        assert!(matches!(
            InputSpec::parse("v.raw", Some([2; 3]), Some(ValueKind::U8)).unwrap(),
            InputSpec::Raw { .. }
        ));
    }
}
