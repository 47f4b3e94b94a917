use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;

pub const MIN_POINTS: usize = 64;
pub const MAX_POINTS: usize = 4096;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{}: {source}", path.display())]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {msg}", path.display())]
    Parse { path: PathBuf, msg: String },
    #[error("{axis} points must be a power of two in {MIN_POINTS}..={MAX_POINTS}, got {n}")]
    GridSize { axis: char, n: usize },
    #[error("{axis} range must be finite and increasing, got [{lo}, {hi}]")]
    Range { axis: char, lo: f64, hi: f64 },
    #[error("tolerance must be finite and non-negative, got {0}")]
    Tolerance(f64),
    #[error("`{command}` cannot write {format} output")]
    Format { command: Command, format: Format },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Text,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Text => "text",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Derive,
    Check,
    Sample,
    FreeParticle,
    Report,
}

impl Command {
    fn default_format(self) -> Format {
        match self {
            Command::Derive | Command::FreeParticle => Format::Text,
            Command::Check | Command::Report => Format::Json,
            Command::Sample => Format::Csv,
        }
    }

    fn accepts(self, f: Format) -> bool {
        match self {
            Command::Sample => f == Format::Csv,
            Command::Report => f == Format::Json,
            _ => f != Format::Csv,
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Derive => "derive",
            Command::Check => "check",
            Command::Sample => "sample",
            Command::FreeParticle => "free-particle",
            Command::Report => "report",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridOverrides {
    pub x: Option<[f64; 2]>,
    pub p: Option<[f64; 2]>,
    pub nx: Option<usize>,
    pub np: Option<usize>,
}

/// Settings from one source; unset fields fall through to the next source.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    pub system: Option<String>,
    pub suite: Option<String>,
    pub case: Option<String>,
    pub energy: Option<f64>,
    pub n: Option<u32>,
    #[serde(default)]
    pub grid: GridOverrides,
    pub tolerance: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl Overrides {
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| ConfigError::Parse {
            path: path.to_path_buf(),
            msg: e.to_string(),
        })
    }

    /// Fields set here win over `base`.
    pub fn over(self, base: Overrides) -> Overrides {
        Overrides {
            system: self.system.or(base.system),
            suite: self.suite.or(base.suite),
            case: self.case.or(base.case),
            energy: self.energy.or(base.energy),
            n: self.n.or(base.n),
            grid: GridOverrides {
                x: self.grid.x.or(base.grid.x),
                p: self.grid.p.or(base.grid.p),
                nx: self.grid.nx.or(base.grid.nx),
                np: self.grid.np.or(base.grid.np),
            },
            tolerance: self.tolerance.or(base.tolerance),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub x: (f64, f64),
    pub p: (f64, f64),
    pub nx: usize,
    pub np: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            x: (-8.0, 8.0),
            p: (-8.0, 8.0),
            nx: 256,
            np: 256,
        }
    }
}

/// Fully resolved settings for one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub system: Option<String>,
    pub suite: Option<String>,
    pub case: Option<String>,
    pub energy: Option<f64>,
    pub n: Option<u32>,
    pub grid: GridSpec,
    pub tolerance: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

fn check_points(axis: char, n: usize) -> Result<usize, ConfigError> {
    if n.is_power_of_two() && (MIN_POINTS..=MAX_POINTS).contains(&n) {
        Ok(n)
    } else {
        Err(ConfigError::GridSize { axis, n })
    }
}

fn check_range(axis: char, r: [f64; 2]) -> Result<(f64, f64), ConfigError> {
    let [lo, hi] = r;
    if lo.is_finite() && hi.is_finite() && lo < hi {
        Ok((lo, hi))
    } else {
        Err(ConfigError::Range { axis, lo, hi })
    }
}

impl RunConfig {
    /// Command-line flags over the config file over defaults.
    pub fn resolve(command: Command, flags: Overrides, file: Option<Overrides>) -> Result<Self, ConfigError> {
        let o = flags.over(file.unwrap_or_default());
        let d = GridSpec::default();
        let grid = GridSpec {
            x: o.grid.x.map_or(Ok(d.x), |r| check_range('x', r))?,
            p: o.grid.p.map_or(Ok(d.p), |r| check_range('p', r))?,
            nx: check_points('x', o.grid.nx.unwrap_or(d.nx))?,
            np: check_points('p', o.grid.np.unwrap_or(d.np))?,
        };
        if let Some(t) = o.tolerance {
            if !(t.is_finite() && t >= 0.0) {
                return Err(ConfigError::Tolerance(t));
            }
        }
        let format = o.format.unwrap_or(command.default_format());
        if !command.accepts(format) {
            return Err(ConfigError::Format { command, format });
        }
        Ok(RunConfig {
            command,
            system: o.system,
            suite: o.suite,
            case: o.case,
            energy: o.energy,
            n: o.n,
            grid,
            tolerance: o.tolerance,
            out: o.out,
            format,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_beat_file_beat_defaults() {
        let file: Overrides =
            serde_json::from_str(r#"{"tolerance": 1e-3, "grid": {"nx": 128, "np": 512}, "case": "wall"}"#).unwrap();
        let flags = Overrides {
            tolerance: Some(1e-5),
            grid: GridOverrides {
                nx: Some(64),
                ..Default::default()
            },
            ..Default::default()
        };
        let c = RunConfig::resolve(Command::Sample, flags, Some(file)).unwrap();
        assert_eq!(c.tolerance, Some(1e-5));
        assert_eq!((c.grid.nx, c.grid.np), (64, 512));
        assert_eq!(c.case.as_deref(), Some("wall"));
        assert_eq!(c.grid.x, (-8.0, 8.0));
        assert_eq!(c.format, Format::Csv);
    }

    #[test]
    fn grid_sizes_bounded_powers_of_two() {
        for (n, ok) in [(32, false), (64, true), (100, false), (4096, true), (8192, false)] {
            let flags = Overrides {
                grid: GridOverrides {
                    np: Some(n),
                    ..Default::default()
                },
                ..Default::default()
            };
            assert_eq!(RunConfig::resolve(Command::Sample, flags, None).is_ok(), ok, "{n}");
        }
    }

    #[test]
    fn rejects_bad_ranges_tolerances_and_formats() {
        let bad = [
            Overrides {
                grid: GridOverrides {
                    x: Some([1.0, -1.0]),
                    ..Default::default()
                },
                ..Default::default()
            },
            Overrides {
                tolerance: Some(-1.0),
                ..Default::default()
            },
            Overrides {
                format: Some(Format::Csv),
                ..Default::default()
            },
        ];
        for o in bad {
            assert!(RunConfig::resolve(Command::Check, o, None).is_err());
        }
    }

    #[test]
    fn unknown_config_keys_rejected() {
        assert!(serde_json::from_str::<Overrides>(r#"{"tolerence": 1e-3}"#).is_err());
    }
}
