use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sqres_cli::config::{parse_family, parse_topology, ConfigFile, Method, RunConfig};
use sqres_cli::figures::{preset, Preset, FIGURE_IDS};
use sqres_cli::observables;
use sqres_cli::runs::{run_evolve, run_selftest, run_steady, run_sweep, SweepParam, SweepSpec};
use sqres_cli::CliError;

/// Squeezed-reservoir entanglement dynamics: evolutions, sweeps, figure
/// datasets, and steady-state reports, emitted as deterministic CSV.
#[derive(Parser)]
#[command(name = "sqres", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve one configuration and emit the observable table.
    Evolve(#[command(flatten)] RunArgs),
    /// Sweep one parameter, one evolution per grid point.
    Sweep {
        /// Swept parameter: m_mag, theta, alpha, or n_mean.
        #[arg(long)]
        param: String,
        /// First grid value.
        #[arg(long)]
        from: f64,
        /// Last grid value.
        #[arg(long)]
        to: f64,
        /// Number of grid points.
        #[arg(long, default_value_t = 60)]
        points: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Emit the dataset behind a named figure preset.
    Figure {
        /// Figure id (2a, 2b, 3a, 3b, 4a, 4b, 5a, 5b, 6, 7a, 7b, 8a, 8b, 9).
        id: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Single-mode steady-state report: populations, ratios, regime.
    Steady {
        /// Reservoir mean photon number.
        #[arg(long = "N", default_value_t = 0.0)]
        n_mean: f64,
        /// Squeezing correlation magnitude |M|.
        #[arg(long = "M", default_value_t = 0.0)]
        m_mag: f64,
        /// Squeezing phase.
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        /// Decay rate.
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        /// Fock cutoff.
        #[arg(long, default_value_t = 12)]
        nmax: usize,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in oracle and invariant suite.
    Selftest,
}

/// Flags shared by evolve, sweep, and figure. Every value is optional so a
/// JSON config document (and figure presets) can fill the gaps; explicit
/// flags always win.
#[derive(Args)]
struct RunArgs {
    /// Reservoir topology: separate or common.
    #[arg(long)]
    topology: Option<String>,
    /// Initial state family: noon or epr.
    #[arg(long)]
    init: Option<String>,
    /// Excitation number (1 or 2).
    #[arg(long)]
    n: Option<usize>,
    /// Superposition mixing angle in radians.
    #[arg(long)]
    alpha: Option<f64>,
    /// Initial-state phase in radians.
    #[arg(long)]
    psi: Option<f64>,
    /// Reservoir mean photon number.
    #[arg(long = "N")]
    n_mean: Option<f64>,
    /// Squeezing correlation magnitude |M|.
    #[arg(long = "M")]
    m_mag: Option<f64>,
    /// Squeezing phase in radians.
    #[arg(long)]
    theta: Option<f64>,
    /// Decay rate (time axis is always reported as its product with t).
    #[arg(long)]
    kappa: Option<f64>,
    /// Horizon in units of inverse decay rate.
    #[arg(long)]
    tmax: Option<f64>,
    /// RK4 step size.
    #[arg(long)]
    step: Option<f64>,
    /// Number of sample intervals on the time grid.
    #[arg(long)]
    samples: Option<usize>,
    /// Integrator: rk4 or expm.
    #[arg(long)]
    method: Option<String>,
    /// Per-mode Fock cutoff.
    #[arg(long)]
    nmax: Option<usize>,
    /// Comma-separated observable list.
    #[arg(long)]
    observables: Option<String>,
    /// JSON configuration document (flags override its values).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads for sweeps (0 = available parallelism).
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    /// Names of the flags given explicitly, for the override header line.
    fn given(&self) -> Vec<&'static str> {
        let mut names = Vec::new();
        macro_rules! note {
            ($field:ident, $name:literal) => {
                if self.$field.is_some() {
                    names.push($name);
                }
            };
        }
        note!(topology, "topology");
        note!(init, "init");
        note!(n, "n");
        note!(alpha, "alpha");
        note!(psi, "psi");
        note!(n_mean, "N");
        note!(m_mag, "M");
        note!(theta, "theta");
        note!(kappa, "kappa");
        note!(tmax, "tmax");
        note!(step, "step");
        note!(samples, "samples");
        note!(method, "method");
        note!(nmax, "nmax");
        note!(observables, "observables");
        names
    }

    /// Apply config file then flags on top of `config`.
    fn apply(&self, config: &mut RunConfig) -> Result<(), CliError> {
        if let Some(path) = &self.config {
            ConfigFile::load(path)?.apply(config)?;
        }
        if let Some(s) = &self.topology {
            config.topology = parse_topology(s)?;
        }
        if let Some(s) = &self.init {
            config.family = parse_family(s)?;
        }
        if let Some(v) = self.n {
            config.n = v;
        }
        if let Some(v) = self.alpha {
            config.alpha = v;
        }
        if let Some(v) = self.psi {
            config.psi = v;
        }
        if let Some(v) = self.n_mean {
            config.n_mean = v;
        }
        if let Some(v) = self.m_mag {
            config.m_mag = v;
        }
        if let Some(v) = self.theta {
            config.theta = v;
        }
        if let Some(v) = self.kappa {
            config.kappa = v;
        }
        if let Some(v) = self.tmax {
            config.t_max = v;
        }
        if let Some(v) = self.step {
            config.step = v;
        }
        if let Some(v) = self.samples {
            config.samples = v;
        }
        if let Some(s) = &self.method {
            config.method = Method::parse(s)?;
        }
        if let Some(v) = self.nmax {
            config.n_max = v;
        }
        if let Some(csv) = &self.observables {
            config.observables = observables::parse_list(csv)?;
        }
        Ok(())
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Evolve(args) => {
            let mut config = RunConfig::default();
            args.apply(&mut config)?;
            let dataset = run_evolve(&config)?;
            dataset.write(args.out.as_deref())
        }
        Command::Sweep {
            param,
            from,
            to,
            points,
            run: args,
        } => {
            let mut config = RunConfig::default();
            args.apply(&mut config)?;
            let spec = SweepSpec {
                param: SweepParam::parse(&param)?,
                from,
                to,
                points,
                base: config,
            };
            let dataset = run_sweep(&spec, args.threads)?;
            dataset.write(args.out.as_deref())
        }
        Command::Figure { id, run: args } => {
            let overrides = args.given();
            let mut dataset = match preset(&id)? {
                Preset::Evolve(mut config) => {
                    args.apply(&mut config)?;
                    run_evolve(&config)?
                }
                Preset::Sweep(mut spec) => {
                    args.apply(&mut spec.base)?;
                    run_sweep(&spec, args.threads)?
                }
            };
            dataset
                .metadata
                .insert(0, ("figure".into(), id.clone()));
            if !overrides.is_empty() {
                dataset
                    .metadata
                    .push(("overrides".into(), overrides.join(",")));
            }
            debug_assert!(FIGURE_IDS.contains(&id.as_str()));
            dataset.write(args.out.as_deref())
        }
        Command::Steady {
            n_mean,
            m_mag,
            theta,
            kappa,
            nmax,
            out,
        } => {
            let report = run_steady(n_mean, m_mag, theta, kappa, nmax)?;
            match out {
                Some(path) => std::fs::write(&path, report)
                    .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display()))),
                None => {
                    print!("{report}");
                    Ok(())
                }
            }
        }
        Command::Selftest => {
            let lines = run_selftest()?;
            for line in lines {
                println!("{line}");
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
