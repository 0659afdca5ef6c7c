//! Run configuration: command-line flags merged over an optional TOML file.

use std::path::{Path, PathBuf};

use clap::Args;
use coldstandby::model::{ModelKind, PatienceFamily};
use coldstandby::optimizer::GridScale;
use coldstandby::{Costs, KernelMode, ModelSpec, Patience, RateParams, SimConfig, SweepGrid};
use serde::Deserialize;

use crate::CliError;

/// Every setting a command can take. The same keys (in kebab-case) are
/// accepted in the config file; a flag given on the command line wins.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Params {
    /// Key-value TOML file with defaults for any of the other options.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    /// Comma-separated subset of mre-rpt, sre-rpt, mre-dpt, sre-dpt, or `all`.
    #[arg(long)]
    pub model: Option<String>,
    /// Failure rate of the operating unit.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Rate of the random patience time.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Repair rate of the regular repairer.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Repair rate of the expert.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Deterministic patience time T.
    #[arg(long)]
    pub patience: Option<f64>,

    /// Revenue per unit uptime, net of operating cost.
    #[arg(long)]
    pub net_revenue: Option<f64>,
    /// Gross revenue per unit uptime; needs --op-cost.
    #[arg(long)]
    pub revenue: Option<f64>,
    /// Operating cost per unit uptime; needs --revenue.
    #[arg(long)]
    pub op_cost: Option<f64>,
    /// Regular repairer cost rate.
    #[arg(long)]
    pub cr: Option<f64>,
    /// Expert cost rate.
    #[arg(long)]
    pub ce: Option<f64>,
    /// Expert trip charge per visit.
    #[arg(long)]
    pub cl: Option<f64>,

    /// start:stop:points[:log]
    #[arg(long)]
    pub grid: Option<String>,

    /// Number of cold-standby spares in the simulation.
    #[arg(long)]
    pub spares: Option<u32>,
    /// Simulated time per replication.
    #[arg(long)]
    pub horizon: Option<f64>,
    /// Completed cycles per replication (instead of --horizon).
    #[arg(long)]
    pub cycles: Option<u64>,
    /// Simulated time discarded at the start of each replication.
    #[arg(long)]
    pub warmup: Option<f64>,
    /// Independent replications.
    #[arg(long)]
    pub reps: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// paper_faithful or physical.
    #[arg(long)]
    pub kernel_mode: Option<String>,

    /// max-omega, equal-availability, profit-crossings, expert-threshold or t-star.
    #[arg(long)]
    pub objective: Option<String>,

    /// Output file (a directory for repro-paper).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

macro_rules! overlay {
    ($top:ident, $base:ident; $($field:ident),* $(,)?) => {
        Params {
            config: $top.config,
            $($field: $top.$field.or($base.$field),)*
        }
    };
}

impl Params {
    /// Loads the config file, if one was named, and lays the flags over it.
    pub fn resolve(self) -> Result<Params, CliError> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let file = read_config(&path)?;
        Ok(overlay!(self, file;
            model, lambda, alpha, beta, gamma, patience,
            net_revenue, revenue, op_cost, cr, ce, cl,
            grid, spares, horizon, cycles, warmup, reps, seed, kernel_mode,
            objective, out,
        ))
    }

    /// Selected models in the fixed order mre-rpt, sre-rpt, mre-dpt, sre-dpt.
    pub fn models(&self) -> Result<Vec<ModelKind>, CliError> {
        let Some(list) = self.model.as_deref() else {
            return Ok(ModelKind::ALL.to_vec());
        };
        let mut chosen = [false; 4];
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if item.eq_ignore_ascii_case("all") {
                chosen = [true; 4];
                continue;
            }
            let kind: ModelKind = item
                .parse()
                .map_err(|e: String| CliError::Config(format!("model: {e}")))?;
            let idx = ModelKind::ALL.iter().position(|&k| k == kind).unwrap_or(0);
            chosen[idx] = true;
        }
        let models: Vec<ModelKind> = ModelKind::ALL
            .iter()
            .zip(chosen)
            .filter_map(|(&k, c)| c.then_some(k))
            .collect();
        if models.is_empty() {
            return Err(CliError::Config("model: no model selected".into()));
        }
        Ok(models)
    }

    pub fn rates(&self) -> Result<RateParams, CliError> {
        let rates = RateParams::new(
            required(self.lambda, "lambda")?,
            required(self.beta, "beta")?,
            required(self.gamma, "gamma")?,
        );
        rates.validate().map_err(CliError::from)?;
        Ok(rates)
    }

    pub fn alpha(&self) -> Result<f64, CliError> {
        required(self.alpha, "alpha")
    }

    pub fn patience_time(&self) -> Result<f64, CliError> {
        required(self.patience, "patience")
    }

    /// Full model specification for a single parameter point.
    pub fn spec(&self, kind: ModelKind) -> Result<ModelSpec, CliError> {
        let patience = match kind.family() {
            PatienceFamily::Rpt => Patience::Random { alpha: self.alpha()? },
            PatienceFamily::Dpt => Patience::Deterministic {
                duration: self.patience_time()?,
            },
        };
        let spec = ModelSpec::new(self.rates()?, patience, kind.expert());
        coldstandby::validate(spec).map_err(CliError::from)
    }

    pub fn costs(&self) -> Result<Costs, CliError> {
        let net = match (self.net_revenue, self.revenue, self.op_cost) {
            (Some(net), None, None) => net,
            (None, Some(rev), Some(op)) => rev - op,
            (None, Some(_), None) => return Err(missing("op-cost")),
            (None, None, Some(_)) => return Err(missing("revenue")),
            (None, None, None) => return Err(missing("net-revenue")),
            (Some(_), _, _) => {
                return Err(CliError::Config(
                    "net-revenue: give either --net-revenue or --revenue/--op-cost, not both".into(),
                ))
            }
        };
        let costs = Costs::new(
            net,
            required(self.cr, "cr")?,
            required(self.ce, "ce")?,
            required(self.cl, "cl")?,
        );
        costs.validate().map_err(CliError::from)?;
        Ok(costs)
    }

    pub fn grid(&self) -> Result<SweepGrid, CliError> {
        parse_grid(self.grid.as_deref().ok_or_else(|| missing("grid"))?)
    }

    /// The grid if one was given, else `default`.
    pub fn grid_or(&self, default: SweepGrid) -> Result<SweepGrid, CliError> {
        match self.grid.as_deref() {
            Some(text) => parse_grid(text),
            None => Ok(default),
        }
    }

    pub fn sim_config(&self) -> Result<SimConfig, CliError> {
        let reps = self.reps.unwrap_or(10);
        let seed = self.seed.unwrap_or(0);
        let mut config = match (self.horizon, self.cycles) {
            (Some(h), None) => SimConfig::with_horizon(h, reps, seed),
            (None, Some(n)) => SimConfig::with_cycles(n, reps, seed),
            (None, None) => return Err(CliError::Config("horizon: give one of --horizon or --cycles".into())),
            (Some(_), Some(_)) => {
                return Err(CliError::Config(
                    "horizon: --horizon and --cycles are mutually exclusive".into(),
                ))
            }
        };
        config = config.spares(self.spares.unwrap_or(2));
        if let Some(mode) = self.kernel_mode.as_deref() {
            let mode: KernelMode = mode
                .parse()
                .map_err(|e: String| CliError::Config(format!("kernel-mode: {e}")))?;
            config = config.kernel_mode(mode);
        }
        if let Some(w) = self.warmup {
            config = config.warmup(w);
        }
        config.validate().map_err(CliError::from)?;
        Ok(config)
    }
}

fn read_config(path: &Path) -> Result<Params, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Config(format!("config {}: {e}", path.display())))
}

pub(crate) fn required(value: Option<f64>, name: &'static str) -> Result<f64, CliError> {
    value.ok_or_else(|| missing(name))
}

fn missing(name: &str) -> CliError {
    CliError::Config(format!("missing required parameter `{name}`"))
}

/// Parses `start:stop:points` with an optional trailing `:log`.
pub fn parse_grid(text: &str) -> Result<SweepGrid, CliError> {
    let bad = |why: &str| CliError::Config(format!("grid `{text}`: {why}"));
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    let scale = match parts.as_slice() {
        [_, _, _] => GridScale::Linear,
        [_, _, _, "log"] => GridScale::Log,
        [_, _, _, "lin" | "linear"] => GridScale::Linear,
        _ => return Err(bad("expected start:stop:points[:log]")),
    };
    let start: f64 = parts[0].parse().map_err(|_| bad("start is not a number"))?;
    let stop: f64 = parts[1].parse().map_err(|_| bad("stop is not a number"))?;
    let points: usize = parts[2].parse().map_err(|_| bad("points is not a positive integer"))?;
    SweepGrid::new(start, stop, points, scale).map_err(|e| bad(&e.to_string()))
}
