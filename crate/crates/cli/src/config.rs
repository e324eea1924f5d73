//! Run configuration: command-line flags, optionally backed by a flat
//! `key = value` file. Keys are the long flag names without dashes
//! (`gamma-min`, `tmax`, ...); explicit flags win over file values.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qwsearch::bipartite::{InitialStateKind, Mode};
use qwsearch::evolve::WalkKind;
use qwsearch::exec::Execution;
use qwsearch::graph::{BipartiteSpec, Graph};

use crate::error::CliError;

/// Largest vertex count accepted for full-space evolution.
pub const FULL_MODE_LIMIT: usize = 2000;
pub const DEFAULT_SAMPLES: usize = 2000;
pub const DEFAULT_GAMMA_COUNT: usize = 200;

#[derive(Debug, Parser)]
#[command(name = "qwsearch", version, about = "Quantum walk search on graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Success probability versus time
    Simulate(RunConfig),
    /// Peak success probability versus jumping rate
    SweepGamma(RunConfig),
    /// Eigenvector overlaps with the start state and the marked classes
    Overlaps(RunConfig),
    /// Analytic runtimes and the fastest walk, optionally swept over k1 or k2
    Runtimes(RunConfig),
    /// Check the spin-network to quantum-walk correspondence
    VerifySpin(RunConfig),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepAxis {
    K1,
    K2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Spacing {
    #[default]
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    /// Paw graph 0-1, 1-2, 1-3, 2-3 plus an isolated vertex 4
    Paw,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunConfig {
    /// key=value file supplying defaults for any flag
    #[arg(long)]
    pub config: Option<PathBuf>,

    #[arg(long)]
    pub n1: Option<usize>,
    #[arg(long)]
    pub n2: Option<usize>,
    #[arg(long)]
    pub k1: Option<usize>,
    #[arg(long)]
    pub k2: Option<usize>,

    /// Edge-list file: a "n m" header, then one "i j" pair per line
    #[arg(long, conflicts_with = "builtin")]
    pub graph: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub builtin: Option<Builtin>,
    /// Comma-separated marked vertices for --graph
    #[arg(long, value_delimiter = ',')]
    pub marked: Option<Vec<usize>>,

    /// laplacian | adjacency | signless
    #[arg(long)]
    pub walk: Option<WalkKind>,
    /// s | sa | sq
    #[arg(long)]
    pub init: Option<InitialStateKind>,
    /// reduced | full
    #[arg(long)]
    pub mode: Option<Mode>,

    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub gamma_min: Option<f64>,
    #[arg(long)]
    pub gamma_max: Option<f64>,
    #[arg(long)]
    pub gamma_count: Option<usize>,
    #[arg(long, value_enum)]
    pub gamma_spacing: Option<Spacing>,

    #[arg(long)]
    pub tmax: Option<f64>,
    /// Number of time points, endpoints included
    #[arg(long)]
    pub samples: Option<usize>,

    #[arg(long, value_enum)]
    pub sweep: Option<SweepAxis>,
    #[arg(long)]
    pub from: Option<usize>,
    #[arg(long)]
    pub to: Option<usize>,

    /// jz / jx for verify-spin
    #[arg(long, allow_hyphen_values = true)]
    pub jz_ratio: Option<f64>,

    /// Run sweeps on one thread
    #[arg(long)]
    pub sequential: bool,

    /// Output file (stdout if absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_value<T: FromStr>(key: &str, value: &str, line: usize) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| CliError::Usage(format!("config line {line}: bad value for '{key}': {e}")))
}

fn parse_enum<T: ValueEnum>(key: &str, value: &str, line: usize) -> Result<T, CliError> {
    T::from_str(value, true)
        .map_err(|e| CliError::Usage(format!("config line {line}: bad value for '{key}': {e}")))
}

fn fill<T>(slot: &mut Option<T>, value: T) {
    if slot.is_none() {
        *slot = Some(value);
    }
}

impl RunConfig {
    /// Loads `--config` if given and fills every unset field from it.
    pub fn resolve(mut self) -> Result<Self, CliError> {
        if let Some(path) = self.config.clone() {
            let text = fs::read_to_string(&path).map_err(|e| {
                CliError::Usage(format!("cannot read config {}: {e}", path.display()))
            })?;
            self.merge_file(&text)?;
        }
        Ok(self)
    }

    pub fn merge_file(&mut self, text: &str) -> Result<(), CliError> {
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {line}: expected key=value"))
            })?;
            let key = key.trim().replace('_', "-");
            let value = value.trim();
            let k = key.as_str();
            match k {
                "n1" => fill(&mut self.n1, parse_value(k, value, line)?),
                "n2" => fill(&mut self.n2, parse_value(k, value, line)?),
                "k1" => fill(&mut self.k1, parse_value(k, value, line)?),
                "k2" => fill(&mut self.k2, parse_value(k, value, line)?),
                "graph" => fill(&mut self.graph, PathBuf::from(value)),
                "builtin" => fill(&mut self.builtin, parse_enum(k, value, line)?),
                "marked" => {
                    let list = value
                        .split(',')
                        .map(|v| parse_value(k, v.trim(), line))
                        .collect::<Result<Vec<usize>, _>>()?;
                    fill(&mut self.marked, list)
                }
                "walk" => fill(&mut self.walk, parse_value(k, value, line)?),
                "init" => fill(&mut self.init, parse_value(k, value, line)?),
                "mode" => fill(&mut self.mode, parse_value(k, value, line)?),
                "gamma" => fill(&mut self.gamma, parse_value(k, value, line)?),
                "gamma-min" => fill(&mut self.gamma_min, parse_value(k, value, line)?),
                "gamma-max" => fill(&mut self.gamma_max, parse_value(k, value, line)?),
                "gamma-count" => fill(&mut self.gamma_count, parse_value(k, value, line)?),
                "gamma-spacing" => fill(&mut self.gamma_spacing, parse_enum(k, value, line)?),
                "tmax" => fill(&mut self.tmax, parse_value(k, value, line)?),
                "samples" => fill(&mut self.samples, parse_value(k, value, line)?),
                "sweep" => fill(&mut self.sweep, parse_enum(k, value, line)?),
                "from" => fill(&mut self.from, parse_value(k, value, line)?),
                "to" => fill(&mut self.to, parse_value(k, value, line)?),
                "jz-ratio" => fill(&mut self.jz_ratio, parse_value(k, value, line)?),
                "sequential" => self.sequential |= parse_value::<bool>(k, value, line)?,
                "out" => fill(&mut self.out, PathBuf::from(value)),
                _ => {
                    return Err(CliError::Usage(format!(
                        "config line {line}: unknown key '{key}'"
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        }
    }

    pub fn has_spec(&self) -> bool {
        self.n1.is_some() || self.n2.is_some()
    }

    pub fn spec(&self) -> Result<BipartiteSpec, CliError> {
        match (self.n1, self.n2) {
            (Some(n1), Some(n2)) => Ok(BipartiteSpec::new(
                n1,
                n2,
                self.k1.unwrap_or(0),
                self.k2.unwrap_or(0),
            )?),
            _ => Err(CliError::Usage(
                "a bipartite instance needs --n1 and --n2".into(),
            )),
        }
    }

    pub fn walk(&self) -> WalkKind {
        self.walk.unwrap_or(WalkKind::SignlessLaplacian)
    }

    pub fn init(&self) -> InitialStateKind {
        self.init.unwrap_or(InitialStateKind::UniformS)
    }

    pub fn mode(&self) -> Mode {
        self.mode.unwrap_or_default()
    }

    /// Graph from `--graph` or `--builtin`.
    pub fn graph(&self) -> Result<Option<Graph>, CliError> {
        if let Some(b) = self.builtin {
            return Ok(Some(match b {
                Builtin::Paw => Graph::spin_example(),
            }));
        }
        match &self.graph {
            None => Ok(None),
            Some(path) => read_graph(path).map(Some),
        }
    }

    pub fn single_gamma(&self) -> Result<f64, CliError> {
        let g = self
            .gamma
            .ok_or_else(|| CliError::Usage("--gamma is required".into()))?;
        check_gamma(g)?;
        Ok(g)
    }

    /// `--gamma` alone gives one point; otherwise a grid over
    /// `[gamma-min, gamma-max]`, falling back to `default_range`.
    pub fn gamma_grid(&self, default_range: Option<(f64, f64)>) -> Result<Vec<f64>, CliError> {
        if self.gamma_min.is_none() && self.gamma_max.is_none() {
            if let Some(g) = self.gamma {
                check_gamma(g)?;
                return Ok(vec![g]);
            }
        }
        let (lo, hi) = match (self.gamma_min, self.gamma_max, default_range) {
            (Some(lo), Some(hi), _) => (lo, hi),
            (lo, hi, Some((dlo, dhi))) => (lo.unwrap_or(dlo), hi.unwrap_or(dhi)),
            _ => {
                return Err(CliError::Usage(
                    "--gamma-min and --gamma-max are required".into(),
                ))
            }
        };
        check_gamma(lo)?;
        check_gamma(hi)?;
        if lo > hi {
            return Err(CliError::Usage(format!(
                "empty jumping-rate range [{lo}, {hi}]"
            )));
        }
        let count = self.gamma_count.unwrap_or(DEFAULT_GAMMA_COUNT);
        if count == 0 {
            return Err(CliError::Usage("--gamma-count must be at least 1".into()));
        }
        if count == 1 || lo == hi {
            return Ok(vec![lo]);
        }
        let spacing = self.gamma_spacing.unwrap_or_default();
        if spacing == Spacing::Log && lo <= 0.0 {
            return Err(CliError::Usage("log spacing needs --gamma-min > 0".into()));
        }
        let step = |i: usize| i as f64 / (count - 1) as f64;
        Ok((0..count)
            .map(|i| match (i, spacing) {
                (0, _) => lo,
                (i, _) if i == count - 1 => hi,
                (i, Spacing::Linear) => lo + (hi - lo) * step(i),
                (i, Spacing::Log) => (lo.ln() + (hi.ln() - lo.ln()) * step(i)).exp(),
            })
            .collect())
    }

    pub fn time_grid(&self, default_tmax: f64) -> Result<Vec<f64>, CliError> {
        let tmax = self.tmax.unwrap_or(default_tmax);
        if !(tmax.is_finite() && tmax > 0.0) {
            return Err(CliError::Usage(format!(
                "--tmax must be positive, got {tmax}"
            )));
        }
        let samples = self.samples.unwrap_or(DEFAULT_SAMPLES);
        if samples < 2 {
            return Err(CliError::Usage("--samples must be at least 2".into()));
        }
        Ok(qwsearch::evolve::time_grid(tmax, samples))
    }
}

fn check_gamma(g: f64) -> Result<(), CliError> {
    if g.is_finite() && g >= 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "jumping rate must be finite and non-negative, got {g}"
        )))
    }
}

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read graph {}: {e}", path.display())))?;
    Ok(Graph::from_edge_list(&text)?)
}

pub fn check_full_size(n: usize) -> Result<(), CliError> {
    if n > FULL_MODE_LIMIT {
        return Err(qwsearch::Error::SizeLimit {
            what: "vertex count for full-space evolution",
            actual: n,
            limit: FULL_MODE_LIMIT,
        }
        .into());
    }
    Ok(())
}
