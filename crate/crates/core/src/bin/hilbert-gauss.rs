use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use hilbert_gauss::error::{Error, Result};
use hilbert_gauss::estimators::{est_functional, est_mean, est_variance};
use hilbert_gauss::harness::{derive_stream, run_experiment, ExperimentConfig, ModelSpec};
use hilbert_gauss::inference::{ci_known, ci_unknown, test_subspace, Interval};
use hilbert_gauss::io::{load_design, load_vector, parse_reals, parse_sparse, parse_subspace};
use hilbert_gauss::processes::{eval_vector, Grid};
use hilbert_gauss::regression::{ci_beta_known, ci_beta_unknown, test_beta, DesignOperator};
use hilbert_gauss::sampling::{sample, GaussianLaw};
use hilbert_gauss::{HVector, SpectralModel, Subspace};

#[derive(Parser)]
#[command(name = "hilbert-gauss", version, about = "Inference for Gaussian random elements of a Hilbert space")]
struct Cli {
    /// `wiener:N`, `bridge:N`, or a model file
    #[arg(long, global = true)]
    model: Option<String>,
    /// Experiment or settings file (TOML or JSON)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file; stdout when absent
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Draw sample paths of Y
    Simulate {
        #[arg(long, default_value_t = 0.25)]
        sigma: f64,
        /// Mean as `mode:value,...`
        #[arg(long)]
        zeta: Option<String>,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Grid size for evaluating paths of analytic models
        #[arg(long, default_value_t = 512)]
        points: usize,
    },
    /// Mean, variance and functional estimates from one observation
    Estimate {
        #[command(flatten)]
        data: DataArgs,
    },
    /// Confidence interval for <b, zeta>; known-sigma when --sigma is given
    Ci {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Test of zeta in U0 against zeta in U
    Test {
        #[command(flatten)]
        data: DataArgs,
        /// Mode list or subspace file
        #[arg(long)]
        u0: Option<String>,
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Least squares with a design file
    Regress {
        #[arg(long)]
        design: PathBuf,
        #[arg(long)]
        obs: PathBuf,
        /// Functional `c` on the parameter space, comma separated
        #[arg(long)]
        c: Option<String>,
        /// Null hypothesis vectors, `;` between vectors
        #[arg(long)]
        g0: Option<String>,
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        use_tail: bool,
    },
    /// Run a Monte Carlo experiment from --config
    Mc {
        #[arg(long)]
        replicates: Option<usize>,
        /// Run replicates on one thread
        #[arg(long)]
        serial: bool,
        /// Write per-replicate values to this CSV file
        #[arg(long)]
        raw: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct DataArgs {
    /// Observation: JSON coefficients or a `t,y` CSV trajectory
    #[arg(long)]
    obs: PathBuf,
    /// Mode list such as `1,2,3` or a subspace file
    #[arg(long)]
    u: Option<String>,
    /// Functional as `mode:value,...`
    #[arg(long)]
    b: Option<String>,
    /// Include the analytic tail trace in tau
    #[arg(long)]
    use_tail: bool,
}

/// Settings shared by the single-observation commands: flags override the
/// config file.
struct Settings {
    model: SpectralModel,
    base: ExperimentConfig,
}

impl Settings {
    fn load(cli: &Cli) -> Result<Self> {
        let mut base = match &cli.config {
            Some(path) => ExperimentConfig::from_path(path)?,
            None => ExperimentConfig::from_toml_str("")?,
        };
        if let Some(spec) = &cli.model {
            base.model = ModelSpec::Named(spec.clone());
        }
        if let Some(seed) = cli.seed {
            base.seed = seed;
        }
        let model = base.model.build()?;
        Ok(Self { model, base })
    }

    fn u(&self, flag: &Option<String>) -> Result<Subspace> {
        match flag {
            Some(text) => parse_subspace(text, &self.model),
            None if !self.base.u.is_empty() => Subspace::modes(self.model.dim(), &self.base.u),
            None => Err(Error::Config("no subspace U given (--u)".into())),
        }
    }

    fn u0(&self, flag: &Option<String>) -> Result<Subspace> {
        match (flag, &self.base.u0) {
            (Some(text), _) => parse_subspace(text, &self.model),
            (None, Some(modes)) => Subspace::modes(self.model.dim(), modes),
            (None, None) => Err(Error::Config("no null subspace U0 given (--u0)".into())),
        }
    }

    fn b(&self, flag: &Option<String>) -> Result<Option<HVector>> {
        let entries = match flag {
            Some(text) => Some(parse_sparse(text)?),
            None => self.base.b.clone(),
        };
        entries.map(|e| HVector::from_modes(self.model.dim(), &e)).transpose()
    }

    fn alpha(&self, flag: Option<f64>) -> f64 {
        flag.unwrap_or(self.base.alpha)
    }
}

fn interval_json(i: &Interval) -> Value {
    json!({
        "center": i.center,
        "half_width": i.half_width,
        "level": i.level,
        "lower": i.lower(),
        "upper": i.upper(),
    })
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| flatten(&key(k), v, rows)),
        Value::Array(items) => items
            .iter()
            .enumerate()
            .for_each(|(i, v)| flatten(&key(&i.to_string()), v, rows)),
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

fn write_value(cli: &Cli, value: &Value) -> Result<()> {
    let mut out = sink(cli)?;
    match cli.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(value)?)?,
        Format::Csv => {
            let mut rows = Vec::new();
            flatten("", value, &mut rows);
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["key", "value"])?;
            for (k, v) in rows {
                w.write_record([k, v])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn sink(cli: &Cli) -> Result<Box<dyn Write>> {
    Ok(match &cli.out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn simulate(cli: &Cli, sigma: f64, zeta: &Option<String>, count: usize, points: usize) -> Result<()> {
    let settings = Settings::load(cli)?;
    let model = &settings.model;
    let mean = match zeta {
        Some(text) => HVector::from_modes(model.dim(), &parse_sparse(text)?)?,
        None => HVector::from_modes(model.dim(), &settings.base.zeta)?,
    };
    let law = GaussianLaw::new(model, mean, sigma)?;
    let draws: Vec<HVector> = (0..count)
        .map(|i| sample(&law, &mut derive_stream(settings.base.seed, i as u64)))
        .collect();
    let grid = Grid::uniform(points.max(2))?;
    let paths = if model.basis().is_analytic() {
        Some(draws.iter().map(|y| eval_vector(model, y, &grid)).collect::<Result<Vec<_>>>()?)
    } else {
        None
    };
    match (cli.format, &paths) {
        (Format::Csv, Some(paths)) => {
            let mut w = csv::Writer::from_writer(sink(cli)?);
            let header: Vec<String> = std::iter::once("t".to_string())
                .chain((0..count).map(|i| format!("y{i}")))
                .collect();
            w.write_record(&header)?;
            for (j, t) in grid.points().iter().enumerate() {
                w.write_record(std::iter::once(t.to_string()).chain(paths.iter().map(|p| p[j].to_string())))?;
            }
            w.flush()?;
            Ok(())
        }
        (Format::Csv, None) => {
            let mut w = csv::Writer::from_writer(sink(cli)?);
            for y in &draws {
                w.write_record(y.coeffs().iter().map(f64::to_string))?;
            }
            w.flush()?;
            Ok(())
        }
        (Format::Json, _) => {
            let mut v = json!({
                "seed": settings.base.seed,
                "sigma": sigma,
                "coefficients": draws.iter().map(|y| y.coeffs().to_vec()).collect::<Vec<_>>(),
            });
            if let Some(paths) = paths {
                v["grid"] = json!(grid.points());
                v["paths"] = json!(paths);
            }
            write_value(cli, &v)
        }
    }
}

fn estimate(cli: &Cli, data: &DataArgs) -> Result<()> {
    let s = Settings::load(cli)?;
    let y = load_vector(&data.obs, &s.model)?;
    let u = s.u(&data.u)?;
    let use_tail = data.use_tail || s.base.use_tail;
    let mut v = Map::new();
    v.insert("zeta_hat".into(), json!(est_mean(&y, &u)?.coeffs()));
    match est_variance(&y, &s.model, &u, use_tail) {
        Ok(s2) => v.insert("s2".into(), json!(s2)),
        Err(Error::ZeroOperator(_)) => v.insert("s2".into(), Value::Null),
        Err(e) => return Err(e),
    };
    if let Some(b) = s.b(&data.b)? {
        v.insert("functional".into(), json!(est_functional(&b, &y, &u)?));
    }
    write_value(cli, &Value::Object(v))
}

fn ci(cli: &Cli, data: &DataArgs, sigma: Option<f64>, alpha: Option<f64>) -> Result<()> {
    let s = Settings::load(cli)?;
    let y = load_vector(&data.obs, &s.model)?;
    let u = s.u(&data.u)?;
    let b = s
        .b(&data.b)?
        .ok_or_else(|| Error::Config("no functional b given (--b)".into()))?;
    let alpha = s.alpha(alpha);
    let interval = match sigma {
        Some(sigma) => ci_known(&b, &y, &s.model, &u, sigma, alpha)?,
        None => ci_unknown(&b, &y, &s.model, &u, alpha, data.use_tail || s.base.use_tail)?,
    };
    write_value(
        cli,
        &json!({ "known_sigma": sigma.is_some(), "interval": interval_json(&interval) }),
    )
}

fn test(cli: &Cli, data: &DataArgs, u0: &Option<String>, alpha: Option<f64>) -> Result<()> {
    let s = Settings::load(cli)?;
    let y = load_vector(&data.obs, &s.model)?;
    let result = test_subspace(&y, &s.model, &s.u(&data.u)?, &s.u0(u0)?, s.alpha(alpha))?;
    write_value(cli, &serde_json::to_value(result)?)
}

fn parse_g0(text: &str) -> Result<Vec<Vec<f64>>> {
    text.split(';').map(parse_reals).collect()
}

#[allow(clippy::too_many_arguments)]
fn regress(
    cli: &Cli,
    design: &Path,
    obs: &Path,
    c: &Option<String>,
    g0: &Option<String>,
    sigma: Option<f64>,
    alpha: Option<f64>,
    use_tail: bool,
) -> Result<()> {
    let s = Settings::load(cli)?;
    let a = DesignOperator::new(&s.model, load_design(design)?)?;
    let y = load_vector(obs, &s.model)?;
    let alpha = s.alpha(alpha);
    let mut v = Map::new();
    v.insert("beta".into(), json!(a.lse(&y)?));
    if let Some(c) = c {
        let c = parse_reals(c)?;
        let interval = match sigma {
            Some(sigma) => ci_beta_known(&c, &a, &y, &s.model, sigma, alpha)?,
            None => ci_beta_unknown(&c, &a, &y, &s.model, alpha, use_tail)?,
        };
        v.insert("interval".into(), interval_json(&interval));
    }
    if let Some(g0) = g0 {
        let result = test_beta(&y, &a, &parse_g0(g0)?, &s.model, alpha)?;
        v.insert("test".into(), serde_json::to_value(result)?);
    }
    write_value(cli, &Value::Object(v))
}

fn mc(cli: &Cli, replicates: Option<usize>, serial: bool, raw: &Option<PathBuf>) -> Result<bool> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("mc needs --config".into()))?;
    let mut config = ExperimentConfig::from_path(path)?;
    if let Some(spec) = &cli.model {
        config.model = ModelSpec::Named(spec.clone());
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(m) = replicates {
        config.replicates = m;
    }
    if serial {
        config.parallel = false;
    }
    let report = run_experiment(&config)?;
    if let Some(path) = raw {
        report.raw.write_csv(File::create(path)?)?;
    }
    match cli.format {
        Format::Json => writeln!(sink(cli)?, "{}", report.to_json()?)?,
        Format::Csv => report.write_csv(sink(cli)?)?,
    }
    for check in &report.checks {
        eprintln!(
            "{} {}: estimate {:.6} target {:.6} tolerance {:.6}",
            if check.pass { "PASS" } else { "FAIL" },
            check.name,
            check.estimate,
            check.target,
            check.tolerance
        );
    }
    Ok(report.pass)
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Simulate { sigma, zeta, count, points } => simulate(cli, *sigma, zeta, *count, *points)?,
        Command::Estimate { data } => estimate(cli, data)?,
        Command::Ci { data, sigma, alpha } => ci(cli, data, *sigma, *alpha)?,
        Command::Test { data, u0, alpha } => test(cli, data, u0, *alpha)?,
        Command::Regress { design, obs, c, g0, sigma, alpha, use_tail } => {
            regress(cli, design, obs, c, g0, *sigma, *alpha, *use_tail)?
        }
        Command::Mc { replicates, serial, raw } => return mc(cli, *replicates, *serial, raw),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
