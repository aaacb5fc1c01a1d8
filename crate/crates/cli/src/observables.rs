//! Observable registry: the named quantities that can be sampled along a
//! trajectory and emitted as CSV columns.

use sqres_core::fock::{DensityMatrix, Mode, StateSpace};
use sqres_core::measures;
use sqres_core::propagator::mode_populations;
use sqres_core::{Error, Result};

/// A named observable from the registry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Observable {
    Concurrence,
    LogNegativity,
    Rho14,
    Rho23,
    Rho15,
    Rho19,
    Rho37,
    Populations,
    Trace,
    MinEigenvalue,
}

pub const ALL_NAMES: [&str; 10] = [
    "concurrence",
    "log_negativity",
    "rho14",
    "rho23",
    "rho15",
    "rho19",
    "rho37",
    "populations",
    "trace",
    "min_eigenvalue",
];

impl Observable {
    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "concurrence" => Observable::Concurrence,
            "log_negativity" => Observable::LogNegativity,
            "rho14" => Observable::Rho14,
            "rho23" => Observable::Rho23,
            "rho15" => Observable::Rho15,
            "rho19" => Observable::Rho19,
            "rho37" => Observable::Rho37,
            "populations" => Observable::Populations,
            "trace" => Observable::Trace,
            "min_eigenvalue" => Observable::MinEigenvalue,
            other => {
                return Err(Error::Invalid(format!(
                    "unknown observable '{other}' (known: {})",
                    ALL_NAMES.join(", ")
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Observable::Concurrence => "concurrence",
            Observable::LogNegativity => "log_negativity",
            Observable::Rho14 => "rho14",
            Observable::Rho23 => "rho23",
            Observable::Rho15 => "rho15",
            Observable::Rho19 => "rho19",
            Observable::Rho37 => "rho37",
            Observable::Populations => "populations",
            Observable::Trace => "trace",
            Observable::MinEigenvalue => "min_eigenvalue",
        }
    }

    /// Labels and label-set size for matrix-element observables: rho14 and
    /// rho23 address the single-excitation labels, rho15/rho19/rho37 the
    /// double-excitation ones.
    fn element_labels(&self) -> Option<(usize, usize, usize)> {
        match self {
            Observable::Rho14 => Some((1, 4, 1)),
            Observable::Rho23 => Some((2, 3, 1)),
            Observable::Rho15 => Some((1, 5, 2)),
            Observable::Rho19 => Some((1, 9, 2)),
            Observable::Rho37 => Some((3, 7, 2)),
            _ => None,
        }
    }

    /// Column headers this observable contributes, given the state space.
    pub fn headers(&self, space: &StateSpace) -> Vec<String> {
        let name = self.name();
        match self {
            Observable::Concurrence
            | Observable::LogNegativity
            | Observable::Trace
            | Observable::MinEigenvalue => vec![name.to_string()],
            Observable::Rho14
            | Observable::Rho23
            | Observable::Rho15
            | Observable::Rho19
            | Observable::Rho37 => vec![
                format!("re_{name}"),
                format!("im_{name}"),
                format!("abs_{name}"),
            ],
            Observable::Populations => {
                let mut cols = Vec::new();
                match space {
                    StateSpace::TwoMode(b) => {
                        for n in 0..=b.n_max_a() {
                            cols.push(format!("pop_a{n}"));
                        }
                        for n in 0..=b.n_max_b() {
                            cols.push(format!("pop_b{n}"));
                        }
                    }
                    StateSpace::SingleMode { n_max } => {
                        for n in 0..=*n_max {
                            cols.push(format!("pop{n}"));
                        }
                    }
                }
                cols
            }
        }
    }

    /// Evaluate on a state, appending one value per header column.
    pub fn eval(&self, rho: &DensityMatrix, out: &mut Vec<f64>) -> Result<()> {
        match self {
            Observable::Concurrence => {
                out.push(measures::concurrence_x_state(rho)?.value);
            }
            Observable::LogNegativity => {
                out.push(measures::log_negativity(rho)?.value);
            }
            Observable::Trace => out.push(rho.trace().re),
            Observable::MinEigenvalue => out.push(rho.min_eigenvalue()?),
            Observable::Populations => match rho.space() {
                StateSpace::TwoMode(_) => {
                    out.extend(mode_populations(rho, Mode::A)?);
                    out.extend(mode_populations(rho, Mode::B)?);
                }
                StateSpace::SingleMode { .. } => {
                    out.extend(mode_populations(rho, Mode::A)?);
                }
            },
            _ => {
                let (i, j, n) = self.element_labels().unwrap();
                let z = rho.labeled_element(i, j, n)?;
                out.push(z.re);
                out.push(z.im);
                out.push(z.norm());
            }
        }
        Ok(())
    }
}

/// Parse a comma-separated observable list, rejecting unknown names before
/// any computation starts.
pub fn parse_list(csv: &str) -> Result<Vec<Observable>> {
    let names: Vec<&str> = csv
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if names.is_empty() {
        return Err(Error::Invalid("observable list is empty".into()));
    }
    names.iter().map(|n| Observable::parse(n)).collect()
}
