//! Run configuration: defaults, JSON documents, and CLI flag overrides.

use serde::Deserialize;

use sqres_core::fock::{InitialStateSpec, ModeBasis, StateFamily};
use sqres_core::lindblad::{ReservoirSpec, Topology};
use sqres_core::{Error, Result};

use crate::observables::{self, Observable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Rk4,
    Expm,
}

impl Method {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "rk4" => Ok(Method::Rk4),
            "expm" => Ok(Method::Expm),
            other => Err(Error::Invalid(format!(
                "unknown method '{other}' (rk4 or expm)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Method::Rk4 => "rk4",
            Method::Expm => "expm",
        }
    }
}

/// Fully resolved configuration of a single evolution run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub topology: Topology,
    pub family: StateFamily,
    pub n: usize,
    pub alpha: f64,
    pub psi: f64,
    pub n_mean: f64,
    pub m_mag: f64,
    pub theta: f64,
    pub kappa: f64,
    pub t_max: f64,
    pub step: f64,
    pub samples: usize,
    pub method: Method,
    pub n_max: usize,
    pub observables: Vec<Observable>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            topology: Topology::SeparateReservoirs,
            family: StateFamily::Noon,
            n: 1,
            alpha: std::f64::consts::FRAC_PI_4,
            psi: 0.0,
            n_mean: 0.0,
            m_mag: 0.0,
            theta: 0.0,
            kappa: 1.0,
            t_max: 5.0,
            step: 1e-3,
            samples: 500,
            method: Method::Expm,
            n_max: 1,
            observables: vec![Observable::Concurrence],
        }
    }
}

impl RunConfig {
    pub fn reservoir(&self) -> Result<ReservoirSpec> {
        ReservoirSpec::symmetric(self.topology, self.kappa, self.n_mean, self.m_mag, self.theta)
    }

    pub fn initial(&self) -> Result<InitialStateSpec> {
        InitialStateSpec::new(self.family, self.n, self.alpha, self.psi)
    }

    pub fn basis(&self) -> Result<ModeBasis> {
        ModeBasis::symmetric(self.n_max)
    }

    pub fn validate(&self) -> Result<()> {
        self.reservoir()?;
        self.initial()?;
        let basis = self.basis()?;
        if basis.n_max_a() < self.n {
            return Err(Error::Invalid(format!(
                "cutoff {} below excitation number {}",
                self.n_max, self.n
            )));
        }
        if self.observables.is_empty() {
            return Err(Error::Invalid("no observables requested".into()));
        }
        if !(self.t_max >= 0.0) {
            return Err(Error::Invalid(format!("tmax must be >= 0, got {}", self.t_max)));
        }
        if self.samples < 1 {
            return Err(Error::Invalid("samples must be >= 1".into()));
        }
        if !(self.step > 0.0) {
            return Err(Error::Invalid(format!("step must be > 0, got {}", self.step)));
        }
        Ok(())
    }

    /// Metadata lines recorded in the CSV header.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let topology = match self.topology {
            Topology::SeparateReservoirs => "separate",
            Topology::CommonReservoir => "common",
        };
        let family = match self.family {
            StateFamily::Noon => "noon",
            StateFamily::Epr => "epr",
        };
        vec![
            ("topology".into(), topology.into()),
            ("init".into(), family.into()),
            ("n".into(), self.n.to_string()),
            ("alpha".into(), format!("{:.16e}", self.alpha)),
            ("psi".into(), format!("{:.16e}", self.psi)),
            ("N".into(), format!("{:.16e}", self.n_mean)),
            ("M".into(), format!("{:.16e}", self.m_mag)),
            ("theta".into(), format!("{:.16e}", self.theta)),
            ("kappa".into(), format!("{:.16e}", self.kappa)),
            ("tmax".into(), format!("{:.16e}", self.t_max)),
            ("step".into(), format!("{:.16e}", self.step)),
            ("samples".into(), self.samples.to_string()),
            ("method".into(), self.method.name().into()),
            ("nmax".into(), self.n_max.to_string()),
            (
                "observables".into(),
                self.observables
                    .iter()
                    .map(|o| o.name())
                    .collect::<Vec<_>>()
                    .join(","),
            ),
        ]
    }
}

/// JSON configuration document: a flat map with optional keys named after
/// the RunConfig fields. CLI flags take precedence over file values.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub topology: Option<String>,
    pub family: Option<String>,
    pub n: Option<usize>,
    pub alpha: Option<f64>,
    pub psi: Option<f64>,
    pub n_mean: Option<f64>,
    pub m_mag: Option<f64>,
    pub theta: Option<f64>,
    pub kappa: Option<f64>,
    pub t_max: Option<f64>,
    pub step: Option<f64>,
    pub samples: Option<usize>,
    pub method: Option<String>,
    pub n_max: Option<usize>,
    pub observables: Option<Vec<String>>,
}

pub fn parse_topology(s: &str) -> Result<Topology> {
    match s {
        "separate" => Ok(Topology::SeparateReservoirs),
        "common" => Ok(Topology::CommonReservoir),
        other => Err(Error::Invalid(format!(
            "unknown topology '{other}' (separate or common)"
        ))),
    }
}

pub fn parse_family(s: &str) -> Result<StateFamily> {
    match s {
        "noon" => Ok(StateFamily::Noon),
        "epr" => Ok(StateFamily::Epr),
        other => Err(Error::Invalid(format!(
            "unknown initial family '{other}' (noon or epr)"
        ))),
    }
}

impl ConfigFile {
    pub fn load(path: &std::path::Path) -> std::result::Result<Self, crate::CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| crate::CliError::Io(format!("reading {}: {e}", path.display())))?;
        let file: ConfigFile = serde_json::from_str(&text)
            .map_err(|e| crate::CliError::Usage(format!("parsing {}: {e}", path.display())))?;
        Ok(file)
    }

    /// Fold the file values into a config (file overrides defaults; flags
    /// are applied by the caller afterwards and override both).
    pub fn apply(&self, config: &mut RunConfig) -> Result<()> {
        if let Some(s) = &self.topology {
            config.topology = parse_topology(s)?;
        }
        if let Some(s) = &self.family {
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
        if let Some(v) = self.t_max {
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
        if let Some(v) = self.n_max {
            config.n_max = v;
        }
        if let Some(names) = &self.observables {
            config.observables = names
                .iter()
                .map(|n| observables::Observable::parse(n))
                .collect::<Result<_>>()?;
        }
        Ok(())
    }
}
