//! The `dlpp-lab` command line.
//!
//! Exit codes: 0 success, 2 usage error, 3 malformed config, 4 unwritable
//! output, 5 rejected parameter, 6 unreadable or malformed input.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use dlpp_core::chains::max_chain_length;
use dlpp_core::network::{build_network, NetworkOptions};
use dlpp_core::sampling::{sample_rect, sample_triangle};
use dlpp_core::spectral::{cdf_table, LengthLaw};
use dlpp_core::Point;

use crate::config::{ExperimentConfig, Mode};
use crate::experiments::{branching_experiment, density_experiment, length_samples};
use crate::exponent::{estimate_exponent, means_by_t};
use crate::io;
use crate::svg::{render_svg, Viewport};
use crate::{LabError, Result};

#[derive(Parser, Debug)]
#[command(name = "dlpp-lab", version, about = "Longest chains and maximizer networks in a planar Poisson field")]
pub struct Cli {
    /// JSON experiment configuration; command-line flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for replicated experiments.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a Poisson field and write it as a point file.
    Sample(SampleArgs),
    /// Longest chain lengths.
    Length(LengthArgs),
    /// Maximizer network to U_t as an edge list.
    Network(NetworkArgs),
    /// Last branching points for two nearby endpoints.
    Branch(BranchArgs),
    /// Crossing counts N_t(t - t^mu).
    Density(DensityArgs),
    /// Power-law fit of a column against t.
    Exponent(ExponentArgs),
    /// Exact distribution function P(L(t) < a).
    Cdf(CdfArgs),
    /// SVG drawing of a maximizer network.
    Render(RenderArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Time parameter(s), comma separated.
    #[arg(long, value_delimiter = ',')]
    t: Vec<f64>,
    /// Seed (master seed for replicated commands).
    #[arg(long)]
    seed: Option<u64>,
    /// Replicas per t.
    #[arg(long)]
    replicas: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    common: Common,
    /// Rectangle lo1,lo2,hi1,hi2 instead of the triangle below U_t.
    #[arg(long)]
    rect: Option<String>,
    /// Points per unit area.
    #[arg(long, default_value_t = 1.0)]
    intensity: f64,
}

#[derive(Args, Debug)]
struct LengthArgs {
    #[command(flatten)]
    common: Common,
    /// Point file; without it squares [0,t]^2 are sampled.
    #[arg(long)]
    input: Option<PathBuf>,
    /// End point x1,x2 for --input (default: upper corner of its region).
    #[arg(long)]
    end: Option<String>,
}

#[derive(Args, Debug)]
struct NetworkArgs {
    #[command(flatten)]
    common: Common,
    /// Point file used instead of sampling the triangle.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Leave out the origin apex of endpoints that dominate no point.
    #[arg(long)]
    no_origin_apexes: bool,
}

#[derive(Args, Debug)]
struct BranchArgs {
    #[command(flatten)]
    common: Common,
    /// Endpoint separation exponent.
    #[arg(long)]
    nu: Option<f64>,
    /// Endpoint separation prefactor.
    #[arg(long)]
    y: Option<f64>,
    #[arg(long)]
    mode: Option<ModeArg>,
}

#[derive(Args, Debug)]
struct DensityArgs {
    #[command(flatten)]
    common: Common,
    /// Depth exponent of the section t - t^mu.
    #[arg(long)]
    mu: Option<f64>,
    /// Leave out the origin apex of endpoints that dominate no point.
    #[arg(long)]
    no_origin_apexes: bool,
}

#[derive(Args, Debug)]
struct ExponentArgs {
    /// CSV with a `t` column.
    #[arg(long)]
    input: PathBuf,
    /// Column holding the statistic.
    #[arg(long, default_value = "count")]
    column: String,
    /// Fit per-t means or every row.
    #[arg(long, value_enum, default_value_t = Aggregate::Mean)]
    aggregate: Aggregate,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CdfArgs {
    #[arg(long, value_delimiter = ',')]
    t: Vec<f64>,
    /// First argument a; default is the lower end of the effective support.
    #[arg(long)]
    from: Option<i64>,
    /// Last argument a.
    #[arg(long)]
    to: Option<i64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[command(flatten)]
    common: Common,
    /// Point file used instead of sampling the triangle.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Viewport u_min,u_max,v_min,v_max in rotated coordinates.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// Image width in pixels.
    #[arg(long, default_value_t = 1200)]
    width: u32,
    /// Leave out the origin apex of endpoints that dominate no point.
    #[arg(long)]
    no_origin_apexes: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Geometric,
    Poisson,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Aggregate {
    Mean,
    None,
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("dlpp-lab: {e}");
            e.exit_code()
        }
    }
}

fn base_config(cli: &Cli) -> Result<ExperimentConfig> {
    let mut cfg = match &cli.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    if cli.workers.is_some() {
        cfg.workers = cli.workers;
    }
    Ok(cfg)
}

fn apply(cfg: &mut ExperimentConfig, c: &Common) {
    if !c.t.is_empty() {
        cfg.t_list = c.t.clone();
    }
    if let Some(s) = c.seed {
        cfg.master_seed = s;
    }
    if let Some(r) = c.replicas {
        cfg.replicas = r;
    }
    if c.out.is_some() {
        cfg.output = c.out.clone();
    }
}

fn single_t(cfg: &ExperimentConfig) -> Result<f64> {
    match cfg.t_list[..] {
        [t] => Ok(t),
        _ => Err(LabError::Invalid("this command takes a single --t".into())),
    }
}

fn parse_numbers(s: &str, n: usize, what: &str) -> Result<Vec<f64>> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| LabError::Invalid(format!("bad {what} {s:?}")))?;
    if v.len() != n {
        return Err(LabError::Invalid(format!("{what} needs {n} numbers, got {s:?}")));
    }
    Ok(v)
}

fn network_input(cfg: &ExperimentConfig, input: Option<&Path>) -> Result<(dlpp_core::PointConfiguration, f64)> {
    let t = single_t(cfg)?;
    let config = match input {
        Some(p) => io::read_points(p)?,
        None => sample_triangle(t, cfg.master_seed)?,
    };
    Ok((config, t))
}

fn execute(cli: Cli) -> Result<()> {
    let mut cfg = base_config(&cli)?;
    match cli.command {
        Command::Sample(a) => {
            apply(&mut cfg, &a.common);
            cfg.validate()?;
            let config = match &a.rect {
                Some(r) => {
                    let v = parse_numbers(r, 4, "rectangle")?;
                    sample_rect(Point::new(v[0], v[1])?, Point::new(v[2], v[3])?, a.intensity, cfg.master_seed)?
                }
                None => {
                    if a.intensity != 1.0 {
                        return Err(LabError::Invalid("the triangle sampler has unit intensity".into()));
                    }
                    sample_triangle(single_t(&cfg)?, cfg.master_seed)?
                }
            };
            io::write_points(cfg.output.as_deref(), &config)
        }
        Command::Length(a) => {
            apply(&mut cfg, &a.common);
            cfg.validate()?;
            match &a.input {
                Some(p) => {
                    let config = io::read_points(p)?;
                    let e = match &a.end {
                        Some(s) => {
                            let v = parse_numbers(s, 2, "end point")?;
                            Point::new(v[0], v[1])?
                        }
                        None => match config.region() {
                            dlpp_core::Region::Rectangle { hi, .. } => hi,
                            dlpp_core::Region::Triangle { t } => Point { x1: t, x2: t },
                        },
                    };
                    let l = max_chain_length(&config, Point::ORIGIN, e)?;
                    io::emit_csv(
                        cfg.output.as_deref(),
                        &["ex1", "ex2", "length"],
                        [[e.x1.to_string(), e.x2.to_string(), l.to_string()]],
                    )
                }
                None => {
                    let rows = length_samples(&cfg)?;
                    io::emit_csv(
                        cfg.output.as_deref(),
                        &["t", "seed", "length"],
                        rows.iter().map(|(t, s, l)| [t.to_string(), s.to_string(), l.to_string()]),
                    )
                }
            }
        }
        Command::Network(a) => {
            apply(&mut cfg, &a.common);
            cfg.validate()?;
            let (config, t) = network_input(&cfg, a.input.as_deref())?;
            let options = NetworkOptions {
                origin_apexes: cfg.origin_apexes && !a.no_origin_apexes,
            };
            let net = build_network(&config, t, options)?;
            io::write_network(cfg.output.as_deref(), &net)
        }
        Command::Branch(a) => {
            apply(&mut cfg, &a.common);
            if let Some(nu) = a.nu {
                cfg.nu = nu;
            }
            if let Some(y) = a.y {
                cfg.y = y;
            }
            if let Some(m) = a.mode {
                cfg.mode = match m {
                    ModeArg::Geometric => Mode::Geometric,
                    ModeArg::Poisson => Mode::Poisson,
                };
            }
            let out = branching_experiment(&cfg)?;
            for d in &out.diagnostics {
                eprintln!("dlpp-lab: skipped replica: {d}");
            }
            if out.records.is_empty() && !out.diagnostics.is_empty() {
                return Err(LabError::Invalid("every replica was rejected".into()));
            }
            io::write_branching(cfg.output.as_deref(), &out.records)
        }
        Command::Density(a) => {
            apply(&mut cfg, &a.common);
            if let Some(mu) = a.mu {
                cfg.mu = mu;
            }
            if a.no_origin_apexes {
                cfg.origin_apexes = false;
            }
            let rows = density_experiment(&cfg)?;
            io::write_density(cfg.output.as_deref(), &rows)
        }
        Command::Exponent(a) => {
            let rows = io::read_series(&a.input, &a.column)?;
            let data = if a.aggregate == Aggregate::Mean { means_by_t(&rows) } else { rows };
            let fit = estimate_exponent(&data)?;
            io::emit_csv(
                a.out.as_deref(),
                &["slope", "intercept", "stderr"],
                [[fit.slope.to_string(), fit.intercept.to_string(), fit.stderr.to_string()]],
            )
        }
        Command::Cdf(a) => {
            if !a.t.is_empty() {
                cfg.t_list = a.t.clone();
            }
            let out = a.out.clone().or(cfg.output.clone());
            let mut rows = Vec::new();
            for &t in &cfg.t_list {
                match (a.from, a.to) {
                    (None, None) if t >= 1.0 => rows.extend(cdf_table(t)?.into_iter().map(|(x, p)| (t, x, p))),
                    _ => {
                        let law = LengthLaw::new(t, a.from.unwrap_or(1))?;
                        let from = a.from.unwrap_or(0);
                        let to = a.to.unwrap_or(law.window().hi + 1);
                        if to < from {
                            return Err(LabError::Invalid("--to must not be below --from".into()));
                        }
                        let mut warned = false;
                        for x in from..=to {
                            let v = law.evaluate(x)?;
                            if v.beyond_window && !warned {
                                eprintln!(
                                    "dlpp-lab: t = {t}: a >= {x} lies past the kernel window, remaining mass below resolution"
                                );
                                warned = true;
                            }
                            rows.push((t, x, v.p));
                        }
                    }
                }
            }
            io::write_cdf(out.as_deref(), &rows)
        }
        Command::Render(a) => {
            apply(&mut cfg, &a.common);
            cfg.validate()?;
            let vp = match &a.window {
                Some(w) => w.parse::<Viewport>()?,
                None => Viewport::full(),
            };
            let (config, t) = network_input(&cfg, a.input.as_deref())?;
            let options = NetworkOptions {
                origin_apexes: cfg.origin_apexes && !a.no_origin_apexes,
            };
            let net = build_network(&config, t, options)?;
            let out = a.common.out.clone().or(cfg.svg_output.clone()).or(cfg.output.clone());
            io::emit_text(out.as_deref(), &render_svg(&net, vp, a.width))
        }
    }
}
