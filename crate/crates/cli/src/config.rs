//! Run configuration: command-line flags over a TOML file over defaults.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use entrobound::modulus::UniversalConstant;
use entrobound::LogBase;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SEED_ENV: &str = "ENTROBOUND_SEED";
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Trace distance / total variation ε.
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<f64>,
    /// Mean or energy bound E.
    #[arg(long = "E", value_name = "E", allow_hyphen_values = true)]
    pub energy: Option<f64>,
    /// Entropy order(s) α, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Vec<f64>,
    /// Weight exponent(s) β, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub beta: Vec<f64>,
    /// Master seed [default: $ENTROBOUND_SEED, then 20240601].
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Truncation dimension(s), comma separated.
    #[arg(long, value_delimiter = ',')]
    pub dim: Vec<usize>,
    /// `EPS_LO:EPS_HI:N,E_LO:E_HI:N`.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// `e`, `bits` or a numeric base.
    #[arg(long)]
    pub log_base: Option<String>,
    /// Operator Hölder constant c.
    #[arg(long, allow_hyphen_values = true)]
    pub constant_c: Option<f64>,
    /// TOML file with any of the keys above (snake_case, `E` for the energy).
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.n - 1) as f64;
        (0..self.n).map(|k| if k + 1 == self.n { self.hi } else { self.lo + step * k as f64 }).collect()
    }

    pub fn fixed(v: f64) -> Self {
        Axis { lo: v, hi: v, n: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub eps: Axis,
    pub energy: Axis,
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, n] = parts.as_slice() else {
            return Err(format!("axis {s:?} is not LO:HI:N"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("bad number {t:?} in axis {s:?}"));
        let (lo, hi) = (num(lo)?, num(hi)?);
        let n: usize = n.trim().parse().map_err(|_| format!("bad count {n:?} in axis {s:?}"))?;
        if n == 0 {
            return Err(format!("axis {s:?} needs at least one point"));
        }
        if !(lo.is_finite() && hi.is_finite()) || (n > 1 && !(hi > lo)) {
            return Err(format!("axis {s:?} needs finite LO < HI"));
        }
        Ok(Axis { lo, hi, n })
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (e, en) = s
            .split_once(',')
            .ok_or_else(|| format!("grid {s:?} is not EPS_LO:EPS_HI:N,E_LO:E_HI:N"))?;
        Ok(Grid {
            eps: e.parse()?,
            energy: en.parse()?,
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(v) => v,
        }
    }
}

/// Keys accepted in the config file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    eps: Option<f64>,
    #[serde(rename = "E")]
    energy: Option<f64>,
    alpha: Option<OneOrMany<f64>>,
    beta: Option<OneOrMany<f64>>,
    seed: Option<u64>,
    trials: Option<usize>,
    dim: Option<OneOrMany<usize>>,
    grid: Option<String>,
    out: Option<PathBuf>,
    format: Option<Format>,
    log_base: Option<String>,
    constant_c: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        toml::from_str(&text).map_err(|e| CliError::ConfigFile {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }
}

/// Fully resolved settings. Unset optional fields fall back to
/// subcommand-specific defaults.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: Option<usize>,
    pub dims: Vec<usize>,
    pub grid: Option<Grid>,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub log_base: LogBase,
    pub constant_c: f64,
    pub eps: Option<f64>,
    pub energy: Option<f64>,
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
}

fn non_empty<T>(v: Vec<T>) -> Option<Vec<T>> {
    (!v.is_empty()).then_some(v)
}

impl RunConfig {
    /// Applies the precedence flags > file > (`ENTROBOUND_SEED` for the
    /// seed) > defaults.
    pub fn resolve(args: &CommonArgs, file: Option<FileConfig>, env_seed: Option<&str>) -> CliResult<Self> {
        let file = file.unwrap_or_default();
        let env_seed = match env_seed {
            Some(s) => Some(
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| CliError::Usage(format!("{SEED_ENV}={s:?} is not an unsigned 64-bit integer")))?,
            ),
            None => None,
        };
        let grid_text = args.grid.clone().or(file.grid);
        let grid = grid_text
            .map(|g| g.parse::<Grid>().map_err(CliError::Usage))
            .transpose()?;
        let log_base = match args.log_base.clone().or(file.log_base) {
            Some(s) => LogBase::parse(&s)?,
            None => LogBase::Natural,
        };
        let constant_c = args.constant_c.or(file.constant_c).unwrap_or(1.0);
        UniversalConstant::new(constant_c)?;
        let cfg = RunConfig {
            seed: args.seed.or(file.seed).or(env_seed).unwrap_or(DEFAULT_SEED),
            trials: args.trials.or(file.trials),
            dims: non_empty(args.dim.clone())
                .or(file.dim.map(OneOrMany::into_vec))
                .unwrap_or_default(),
            grid,
            output_path: args.out.clone().or(file.out),
            format: args.format.or(file.format).unwrap_or_default(),
            log_base,
            constant_c,
            eps: args.eps.or(file.eps),
            energy: args.energy.or(file.energy),
            alphas: non_empty(args.alpha.clone())
                .or(file.alpha.map(OneOrMany::into_vec))
                .unwrap_or_default(),
            betas: non_empty(args.beta.clone())
                .or(file.beta.map(OneOrMany::into_vec))
                .unwrap_or_default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads the config file named by `--config` and the seed variable.
    pub fn from_args(args: &CommonArgs) -> CliResult<Self> {
        let file = args.config.as_deref().map(FileConfig::load).transpose()?;
        let env = std::env::var(SEED_ENV).ok();
        Self::resolve(args, file, env.as_deref())
    }

    fn validate(&self) -> CliResult<()> {
        if self.trials == Some(0) {
            return Err(CliError::Usage("trials must be >= 1".into()));
        }
        if self.dims.contains(&0) {
            return Err(CliError::Usage("dimensions must be >= 1".into()));
        }
        Ok(())
    }

    pub fn trials_or(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }

    pub fn dim_or(&self, default: usize) -> usize {
        self.dims.first().copied().unwrap_or(default)
    }

    pub fn alphas_or(&self, default: &[f64]) -> Vec<f64> {
        if self.alphas.is_empty() {
            default.to_vec()
        } else {
            self.alphas.clone()
        }
    }

    pub fn betas_or(&self, default: &[f64]) -> Vec<f64> {
        if self.betas.is_empty() {
            default.to_vec()
        } else {
            self.betas.clone()
        }
    }

    pub fn constant(&self) -> UniversalConstant {
        UniversalConstant::new(self.constant_c).expect("validated in resolve")
    }

    pub fn require_eps(&self) -> CliResult<f64> {
        self.eps.ok_or_else(|| CliError::Usage("--eps is required".into()))
    }

    pub fn require_energy(&self) -> CliResult<f64> {
        self.energy.ok_or_else(|| CliError::Usage("--E is required".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let file: FileConfig = toml::from_str("seed = 5\ntrials = 7\nalpha = [0.1, 0.2]\nE = 2.0").unwrap();
        let mut args = CommonArgs::default();
        let cfg = RunConfig::resolve(&args, Some(file.clone()), Some("9")).unwrap();
        assert_eq!(cfg.seed, 5);
        assert_eq!(cfg.trials, Some(7));
        assert_eq!(cfg.alphas, vec![0.1, 0.2]);
        assert_eq!(cfg.energy, Some(2.0));

        args.seed = Some(3);
        args.alpha = vec![0.4];
        let cfg = RunConfig::resolve(&args, Some(file), Some("9")).unwrap();
        assert_eq!(cfg.seed, 3);
        assert_eq!(cfg.alphas, vec![0.4]);

        let cfg = RunConfig::resolve(&CommonArgs::default(), None, Some("9")).unwrap();
        assert_eq!(cfg.seed, 9);
        let cfg = RunConfig::resolve(&CommonArgs::default(), None, None).unwrap();
        assert_eq!(cfg.seed, DEFAULT_SEED);
        assert!(RunConfig::resolve(&CommonArgs::default(), None, Some("x")).is_err());
    }

    #[test]
    fn grid_parsing() {
        let g: Grid = "0.045:0.9:20,0.25:8:20".parse().unwrap();
        let e = g.eps.values();
        assert_eq!(e.len(), 20);
        assert_eq!(e[0], 0.045);
        assert_eq!(e[19], 0.9);
        assert!("0.1:0.2".parse::<Grid>().is_err());
        assert!("0.2:0.1:3,1:2:2".parse::<Grid>().is_err());
        assert!("0.1:0.2:0,1:2:2".parse::<Grid>().is_err());
        assert_eq!(Axis::fixed(2.0).values(), vec![2.0]);
    }

    #[test]
    fn unknown_file_keys_rejected() {
        assert!(toml::from_str::<FileConfig>("sead = 1").is_err());
    }
}
