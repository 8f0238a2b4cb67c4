use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use photon_add::config::Config;
use photon_add::params::{evaluate, parse_orders, Param, ParamSet, Scheme, WitnessChoice};
use photon_add::sweep::{Axis, SweepSpec};
use photon_add::verify::{self, DEFAULT_SEED, DEFAULT_TOLERANCE};
use photon_add::{report, CliError};

/// Higher-order nonclassicality witnesses of photon-added coherent and
/// thermal states.
#[derive(Debug, Parser)]
#[command(name = "photon-add", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a witness at one parameter point.
    Witness(WitnessArgs),
    /// Evaluate a witness over a one- or two-axis grid and write CSV.
    Sweep(SweepArgs),
    /// Cross-check every closed form against the truncated Fock-space oracle.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct PointArgs {
    /// Flat key = value file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    scheme: Option<Scheme>,
    #[arg(long, value_enum)]
    witness: Option<WitnessChoice>,
    /// Comma-separated orders, e.g. 1,2,3.
    #[arg(long)]
    orders: Option<String>,
    /// Real coherent amplitude.
    #[arg(long)]
    alpha: Option<f64>,
    /// Thermal mean photon number.
    #[arg(long)]
    nbar: Option<f64>,
    /// Inverse thermal mean photon number.
    #[arg(long)]
    nbar_inv: Option<f64>,
    /// Beam-splitter reflectance R = sin²θ.
    #[arg(long)]
    reflectance: Option<f64>,
    /// Detector or overall efficiency.
    #[arg(long)]
    eta: Option<f64>,
    /// Single-photon source purity.
    #[arg(long)]
    ps: Option<f64>,
}

#[derive(Debug, Args)]
struct WitnessArgs {
    #[command(flatten)]
    point: PointArgs,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Outer axis, name=start:stop:step.
    #[arg(long)]
    axis1: Option<String>,
    /// Inner axis, name=start:stop:step.
    #[arg(long)]
    axis2: Option<String>,
    /// CSV destination.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Largest accepted relative error.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Seed of the random-state suite.
    #[arg(long)]
    seed: Option<u64>,
}

const POINT_KEYS: [&str; 9] = [
    "scheme",
    "witness",
    "orders",
    "alpha",
    "nbar",
    "nbar_inv",
    "reflectance",
    "eta",
    "ps",
];
const SWEEP_KEYS: [&str; 3] = ["axis1", "axis2", "output"];
const VERIFY_KEYS: [&str; 2] = ["tolerance", "seed"];

fn load_config(path: Option<&PathBuf>, allowed: &[&str]) -> Result<Config, CliError> {
    let config = match path {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Some(k) = config.keys().find(|k| !allowed.contains(k)) {
        return Err(CliError::invalid(format!("unknown config key `{k}`")));
    }
    Ok(config)
}

fn pick<T: std::str::FromStr>(
    flag: Option<T>,
    config: &Config,
    key: &str,
) -> Result<Option<T>, CliError> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => config.parsed(key),
    }
}

struct Point {
    scheme: Scheme,
    witness: WitnessChoice,
    orders: Vec<u32>,
    params: ParamSet,
}

fn resolve_point(args: &PointArgs, config: &Config) -> Result<Point, CliError> {
    let scheme = pick(args.scheme, config, "scheme")?
        .ok_or_else(|| CliError::invalid("--scheme is required"))?;
    let witness = pick(args.witness, config, "witness")?
        .ok_or_else(|| CliError::invalid("--witness is required"))?;
    let orders = match pick(args.orders.clone(), config, "orders")? {
        Some(s) => parse_orders(&s)?,
        None => vec![1],
    };
    let mut params = ParamSet::default();
    let flags = [
        (Param::Alpha, args.alpha),
        (Param::Reflectance, args.reflectance),
        (Param::Eta, args.eta),
        (Param::Ps, args.ps),
    ];
    for (p, flag) in flags {
        if let Some(v) = pick(flag, config, p.name())? {
            params.set(p, v);
        }
    }
    // the thermal input comes from one source: flags first, then the config
    let thermal = match (args.nbar, args.nbar_inv) {
        (Some(_), Some(_)) => {
            return Err(CliError::invalid("give either nbar or nbar_inv, not both"))
        }
        (Some(v), None) => Some((Param::Nbar, v)),
        (None, Some(v)) => Some((Param::NbarInv, v)),
        (None, None) => match (
            config.parsed::<f64>("nbar")?,
            config.parsed::<f64>("nbar_inv")?,
        ) {
            (Some(_), Some(_)) => {
                return Err(CliError::invalid("config gives both nbar and nbar_inv"))
            }
            (Some(v), None) => Some((Param::Nbar, v)),
            (None, Some(v)) => Some((Param::NbarInv, v)),
            (None, None) => None,
        },
    };
    if let Some((p, v)) = thermal {
        p.check(scheme, v)?;
        params.set(p, v);
    }
    Ok(Point {
        scheme,
        witness,
        orders,
        params,
    })
}

fn run_witness(args: &WitnessArgs) -> Result<String, CliError> {
    let config = load_config(args.point.config.as_ref(), &POINT_KEYS)?;
    let point = resolve_point(&args.point, &config)?;
    let evals = evaluate(point.scheme, point.witness, &point.params, &point.orders)?;
    Ok(report::render(point.scheme, &point.params, &evals))
}

fn run_sweep(args: &SweepArgs) -> Result<String, CliError> {
    let allowed: Vec<&str> = POINT_KEYS.iter().chain(&SWEEP_KEYS).copied().collect();
    let config = load_config(args.point.config.as_ref(), &allowed)?;
    let point = resolve_point(&args.point, &config)?;
    let axis1: Axis = pick(args.axis1.clone(), &config, "axis1")?
        .ok_or_else(|| CliError::invalid("--axis1 is required"))?
        .parse()?;
    let axis2 = pick(args.axis2.clone(), &config, "axis2")?
        .map(|s| s.parse::<Axis>())
        .transpose()?;
    let output = pick(args.output.clone(), &config, "output")?
        .ok_or_else(|| CliError::invalid("--output is required"))?;
    // a swept parameter must not also be fixed
    let mut fixed = point.params;
    for axis in std::iter::once(&axis1).chain(axis2.as_ref()) {
        let fixed_value = fixed.get(axis.param);
        if fixed_value.is_some() {
            return Err(CliError::invalid(format!(
                "{} is both fixed and swept",
                axis.param
            )));
        }
        if axis.param == Param::NbarInv {
            fixed.nbar = None;
        }
    }
    let spec = SweepSpec {
        scheme: point.scheme,
        witness: point.witness,
        orders: point.orders,
        axis1,
        axis2,
        fixed,
        output,
    };
    let rows = spec.run()?;
    Ok(format!("wrote {rows} rows to {}\n", spec.output.display()))
}

fn run_verify(args: &VerifyArgs) -> Result<String, CliError> {
    let config = load_config(args.config.as_ref(), &VERIFY_KEYS)?;
    let tolerance = pick(args.tolerance, &config, "tolerance")?.unwrap_or(DEFAULT_TOLERANCE);
    let seed = pick(args.seed, &config, "seed")?.unwrap_or(DEFAULT_SEED);
    let report = verify::run(tolerance, seed)?;
    print!("{}", report.render());
    match report.failures() {
        0 => Ok(String::new()),
        n => Err(CliError::Verification(n)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Witness(a) => run_witness(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
