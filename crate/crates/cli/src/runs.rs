//! The run drivers behind the subcommands: single evolutions, parameter
//! sweeps, steady-state reports, and the self-test suite.

use rayon::prelude::*;

use sqres_core::fock::{build_initial_state, Mode};
use sqres_core::lindblad::{classify_regime, liouvillian, liouvillian_single_mode, RegimeClass};
use sqres_core::propagator::{
    evolve_expm_grid, evolve_rk4, mode_populations, recurrence_residual, steady_state,
    RecurrenceForm, Trajectory,
};
use sqres_core::{Error, Result};

use crate::config::{Method, RunConfig};
use crate::output::{cell, Dataset, VERSION_LINE};

fn trajectory(config: &RunConfig) -> Result<Trajectory> {
    let reservoir = config.reservoir()?;
    let basis = config.basis()?;
    let l = liouvillian(&reservoir, &basis)?;
    let rho0 = build_initial_state(&config.initial()?, &basis)?;
    let t_end = config.kappa * config.t_max;
    match config.method {
        Method::Expm => evolve_expm_grid(&l, &rho0, t_end, config.samples),
        Method::Rk4 => {
            let steps = (t_end / config.step).round().max(1.0) as usize;
            let stride = (steps / config.samples).max(1);
            evolve_rk4(&l, &rho0, t_end, config.step, stride)
        }
    }
}

fn observable_header(config: &RunConfig) -> Result<Vec<String>> {
    let basis = config.basis()?;
    let space = sqres_core::fock::StateSpace::TwoMode(basis);
    let mut header = vec!["t".to_string()];
    for obs in &config.observables {
        header.extend(obs.headers(&space));
    }
    Ok(header)
}

fn observable_rows(config: &RunConfig, traj: &Trajectory) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::with_capacity(traj.len());
    for (k, state) in traj.states.iter().enumerate() {
        // The time column reports the dimensionless product of decay rate
        // and time regardless of kappa.
        let mut row = vec![traj.times[k]];
        for obs in &config.observables {
            obs.eval(state, &mut row)?;
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Evolve one configuration and collect the observable table.
pub fn run_evolve(config: &RunConfig) -> Result<Dataset> {
    config.validate()?;
    let traj = trajectory(config)?;
    Ok(Dataset {
        metadata: config.metadata(),
        header: observable_header(config)?,
        rows: observable_rows(config, &traj)?,
    })
}

/// Parameter swept in a 2-D dataset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParam {
    MMag,
    Theta,
    Alpha,
    NMean,
}

impl SweepParam {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "m_mag" => SweepParam::MMag,
            "theta" => SweepParam::Theta,
            "alpha" => SweepParam::Alpha,
            "n_mean" => SweepParam::NMean,
            other => {
                return Err(Error::Invalid(format!(
                    "unknown sweep parameter '{other}' (m_mag, theta, alpha, n_mean)"
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::MMag => "m_mag",
            SweepParam::Theta => "theta",
            SweepParam::Alpha => "alpha",
            SweepParam::NMean => "n_mean",
        }
    }

    fn apply(&self, config: &mut RunConfig, value: f64) {
        match self {
            SweepParam::MMag => config.m_mag = value,
            SweepParam::Theta => config.theta = value,
            SweepParam::Alpha => config.alpha = value,
            SweepParam::NMean => config.n_mean = value,
        }
    }
}

/// A sweep: a base configuration plus one varied parameter.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    pub base: RunConfig,
}

impl SweepSpec {
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|k| {
                if n == 1 {
                    self.from
                } else {
                    self.from + (self.to - self.from) * k as f64 / (n - 1) as f64
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.points < 1 {
            return Err(Error::Invalid("sweep needs at least one point".into()));
        }
        // Every grid point must yield a valid configuration; checking the
        // whole grid up front keeps failures ahead of any computation.
        for v in self.values() {
            let mut config = self.base.clone();
            self.param.apply(&mut config, v);
            config.validate()?;
        }
        Ok(())
    }
}

/// Run a sweep on `threads` workers (0 = available parallelism). Points are
/// computed independently and written in deterministic order, so the thread
/// count never changes the output bytes.
pub fn run_sweep(spec: &SweepSpec, threads: usize) -> Result<Dataset> {
    spec.validate()?;
    let values = spec.values();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    let per_point: Vec<Vec<Vec<f64>>> = pool.install(|| {
        values
            .par_iter()
            .map(|&v| {
                let mut config = spec.base.clone();
                spec.param.apply(&mut config, v);
                let traj = trajectory(&config)?;
                let rows = observable_rows(&config, &traj)?;
                Ok(rows
                    .into_iter()
                    .map(|mut row| {
                        row.insert(0, v);
                        row
                    })
                    .collect())
            })
            .collect::<Result<_>>()
    })?;

    let mut header = vec![spec.param.name().to_string()];
    header.extend(observable_header(&spec.base)?);
    let mut metadata = spec.base.metadata();
    metadata.push(("sweep_param".into(), spec.param.name().into()));
    metadata.push(("sweep_from".into(), cell(spec.from)));
    metadata.push(("sweep_to".into(), cell(spec.to)));
    metadata.push(("sweep_points".into(), spec.points.to_string()));
    Ok(Dataset {
        metadata,
        header,
        rows: per_point.into_iter().flatten().collect(),
    })
}

/// Single-mode steady-state report: populations, ratios, regime, and the
/// recurrence residuals in both forms.
pub fn run_steady(
    n_mean: f64,
    m_mag: f64,
    theta: f64,
    kappa: f64,
    n_max: usize,
) -> Result<String> {
    let spec = sqres_core::lindblad::ReservoirSpec::symmetric(
        sqres_core::lindblad::Topology::SeparateReservoirs,
        kappa,
        n_mean,
        m_mag,
        theta,
    )?;
    let l = liouvillian_single_mode(&spec, n_max)?;
    let ss = steady_state(&l)?;
    let pops = mode_populations(&ss, Mode::A)?;
    let regime = classify_regime(n_mean, m_mag)?;
    let regime_name = match regime {
        RegimeClass::Vacuum => "vacuum",
        RegimeClass::Thermal => "thermal",
        RegimeClass::ClassicalSqueezing => "classical_squeezing",
        RegimeClass::QuantumSqueezing => "quantum_squeezing",
    };

    let mut out = String::new();
    out.push_str(&format!("# {VERSION_LINE}\n"));
    out.push_str(&format!("# N = {}\n", cell(n_mean)));
    out.push_str(&format!("# M = {}\n", cell(m_mag)));
    out.push_str(&format!("# theta = {}\n", cell(theta)));
    out.push_str(&format!("# kappa = {}\n", cell(kappa)));
    out.push_str(&format!("# nmax = {n_max}\n"));
    out.push_str(&format!("# regime = {regime_name}\n"));
    if n_max >= 3 {
        for n in 1..=n_max - 2 {
            let published = recurrence_residual(&ss, &spec, n, RecurrenceForm::AsPublished)?;
            let corrected = recurrence_residual(&ss, &spec, n, RecurrenceForm::SignCorrected)?;
            out.push_str(&format!(
                "# residual_n{n} = {} (as published), {} (sign corrected)\n",
                cell(published),
                cell(corrected)
            ));
        }
    }
    out.push_str("n,P_n,R_n\n");
    let p0 = pops[0];
    for (n, &p) in pops.iter().enumerate() {
        let ratio = if n == 0 { 1.0 } else { p / p0 };
        out.push_str(&format!("{n},{},{}\n", cell(p), cell(ratio)));
    }
    Ok(out)
}

/// Quick oracle and invariant suite behind `sqres selftest`: each check
/// prints one line; any failure aborts with an error.
pub fn run_selftest() -> Result<Vec<String>> {
    use sqres_core::fock::{InitialStateSpec, ModeBasis, StateFamily};
    use sqres_core::lindblad::{liouvillian_separate, max_m, ReservoirSpec, Topology};
    use sqres_core::measures::{concurrence_general, concurrence_x_state, log_negativity};
    use sqres_core::oracles;
    use std::f64::consts::FRAC_PI_4;

    let mut lines = Vec::new();
    let mut check = |name: &str, pass: bool, detail: String| -> Result<()> {
        if pass {
            lines.push(format!("ok - {name}"));
            Ok(())
        } else {
            Err(Error::Numerical(format!("selftest '{name}' failed: {detail}")))
        }
    };

    // Vacuum decay oracle, both families, n = 1.
    let basis = ModeBasis::symmetric(1).unwrap();
    let vac = ReservoirSpec::symmetric(Topology::SeparateReservoirs, 1.0, 0.0, 0.0, 0.0)?;
    let l = liouvillian_separate(&vac, &basis)?;
    let mut worst = 0.0f64;
    for family in [StateFamily::Noon, StateFamily::Epr] {
        let init = InitialStateSpec::new(family, 1, 0.9, 0.4)?;
        let rho0 = build_initial_state(&init, &basis)?;
        let traj = evolve_expm_grid(&l, &rho0, 5.0, 50)?;
        for (k, state) in traj.states.iter().enumerate() {
            let snap = match family {
                StateFamily::Noon => oracles::vacuum_noon_n1(0.9, 0.4, traj.times[k]),
                StateFamily::Epr => oracles::vacuum_epr_n1(0.9, 0.4, traj.times[k]),
            };
            for i in 1..=4 {
                for j in 1..=4 {
                    let diff = (state.labeled_element(i, j, 1)? - snap.element(i, j)).norm();
                    worst = worst.max(diff);
                }
            }
        }
    }
    check(
        "vacuum element oracle (n=1)",
        worst < 1e-10,
        format!("max deviation {worst:.3e}"),
    )?;

    // Concurrence formulas agree along a squeezed trajectory.
    let spec = ReservoirSpec::symmetric(Topology::SeparateReservoirs, 1.0, 0.1, max_m(0.1), 0.7)?;
    let l = liouvillian_separate(&spec, &basis)?;
    let init = InitialStateSpec::new(StateFamily::Noon, 1, FRAC_PI_4, 0.3)?;
    let rho0 = build_initial_state(&init, &basis)?;
    let traj = evolve_expm_grid(&l, &rho0, 5.0, 100)?;
    let mut worst = 0.0f64;
    for state in &traj.states {
        let x = concurrence_x_state(state)?.value;
        let w = concurrence_general(state)?.value;
        worst = worst.max((x - w).abs());
    }
    check(
        "concurrence cross-validation",
        worst < 1e-10,
        format!("max deviation {worst:.3e}"),
    )?;

    // Negativity eigenvalue oracle on the two-excitation vacuum family.
    let basis2 = ModeBasis::symmetric(2).unwrap();
    let l = liouvillian_separate(&vac, &basis2)?;
    let init = InitialStateSpec::new(StateFamily::Noon, 2, FRAC_PI_4, 0.0)?;
    let rho0 = build_initial_state(&init, &basis2)?;
    let traj = evolve_expm_grid(&l, &rho0, 5.0, 50)?;
    let mut worst = 0.0f64;
    for (k, state) in traj.states.iter().enumerate() {
        let mu = oracles::vacuum_noon_n2_eigen(FRAC_PI_4, 0.0, traj.times[k])
            .eigenvalue
            .unwrap();
        let ln = log_negativity(state)?.value;
        let expect = (1.0 - 2.0 * mu).log2();
        worst = worst.max((ln - expect).abs());
    }
    check(
        "negativity eigenvalue oracle (n=2)",
        worst < 1e-9,
        format!("max deviation {worst:.3e}"),
    )?;

    // Steady state: thermal geometric law.
    let th = ReservoirSpec::symmetric(Topology::SeparateReservoirs, 1.0, 0.1, 0.0, 0.0)?;
    let l = liouvillian_single_mode(&th, 12)?;
    let ss = steady_state(&l)?;
    let pops = mode_populations(&ss, Mode::A)?;
    let mut worst = 0.0f64;
    for n in 1..=4 {
        worst = worst.max((pops[n] / pops[0] - (1.0f64 / 11.0).powi(n as i32)).abs());
    }
    check(
        "thermal steady-state law",
        worst < 1e-10,
        format!("max deviation {worst:.3e}"),
    )?;

    // Trace preservation along an RK4 run.
    let l = liouvillian_separate(&spec, &basis)?;
    let init = InitialStateSpec::new(StateFamily::Epr, 1, FRAC_PI_4, 0.0)?;
    let rho0 = build_initial_state(&init, &basis)?;
    let traj = evolve_rk4(&l, &rho0, 5.0, 1e-3, 500)?;
    let mut worst = 0.0f64;
    for state in &traj.states {
        worst = worst.max((state.trace().re - 1.0).abs());
    }
    check(
        "trace preservation (rk4)",
        worst < 1e-10,
        format!("max drift {worst:.3e}"),
    )?;

    Ok(lines)
}
