//! Figure presets: named dataset configurations for the entanglement
//! surfaces and coherence traces. Concurrence datasets use the
//! single-excitation cutoff (the measure's domain); negativity and
//! coherence datasets use the two-excitation cutoff.

use std::f64::consts::{FRAC_PI_4, TAU};

use sqres_core::fock::StateFamily;
use sqres_core::lindblad::{max_m, Topology};
use sqres_core::{Error, Result};

use crate::config::RunConfig;
use crate::observables::Observable;
use crate::runs::{SweepParam, SweepSpec};

pub const FIGURE_IDS: [&str; 14] = [
    "2a", "2b", "3a", "3b", "4a", "4b", "5a", "5b", "6", "7a", "7b", "8a", "8b", "9",
];

/// A preset is either a single evolution or a one-parameter sweep.
pub enum Preset {
    Evolve(RunConfig),
    Sweep(SweepSpec),
}

const N_MEAN: f64 = 0.1;
const SWEEP_POINTS: usize = 60;

fn base(topology: Topology, family: StateFamily, n: usize, n_max: usize) -> RunConfig {
    RunConfig {
        topology,
        family,
        n,
        alpha: FRAC_PI_4,
        psi: 0.0,
        n_mean: N_MEAN,
        m_mag: 0.0,
        theta: 0.0,
        n_max,
        ..RunConfig::default()
    }
}

fn m_sweep(base: RunConfig, observable: Observable) -> Preset {
    let mut base = base;
    base.observables = vec![observable];
    Preset::Sweep(SweepSpec {
        param: SweepParam::MMag,
        from: 0.0,
        to: max_m(N_MEAN),
        points: SWEEP_POINTS,
        base,
    })
}

fn theta_sweep(base: RunConfig, observable: Observable) -> Preset {
    let mut base = base;
    base.m_mag = max_m(N_MEAN);
    base.observables = vec![observable];
    Preset::Sweep(SweepSpec {
        param: SweepParam::Theta,
        from: 0.0,
        to: TAU,
        points: SWEEP_POINTS,
        base,
    })
}

/// Build the preset for a figure id.
pub fn preset(id: &str) -> Result<Preset> {
    use Observable::{Concurrence, LogNegativity, Rho14, Rho15, Rho19, Rho23, Rho37};
    use StateFamily::{Epr, Noon};
    use Topology::{CommonReservoir as Common, SeparateReservoirs as Separate};
    Ok(match id {
        // Concurrence vs (t, |M|), separate reservoirs, one excitation.
        "2a" => m_sweep(base(Separate, Noon, 1, 1), Concurrence),
        "2b" => m_sweep(base(Separate, Epr, 1, 1), Concurrence),
        // Concurrence vs (t, theta) at the physical |M| bound.
        "3a" => theta_sweep(base(Separate, Noon, 1, 1), Concurrence),
        "3b" => theta_sweep(base(Separate, Epr, 1, 1), Concurrence),
        // Log negativity vs (t, |M|) for the doubly excited states.
        "4a" => m_sweep(base(Separate, Noon, 2, 2), LogNegativity),
        "4b" => m_sweep(base(Separate, Epr, 2, 2), LogNegativity),
        // Concurrence vs (t, |M|), common reservoir.
        "5a" => m_sweep(base(Common, Noon, 1, 1), Concurrence),
        "5b" => m_sweep(base(Common, Epr, 1, 1), Concurrence),
        // Concurrence vs (t, theta), common reservoir, EPR.
        "6" => theta_sweep(base(Common, Epr, 1, 1), Concurrence),
        // Coherence traces, common reservoir, one excitation.
        "7a" => {
            let mut config = base(Common, Noon, 1, 2);
            config.m_mag = max_m(N_MEAN);
            config.observables = vec![Rho14, Rho23];
            Preset::Evolve(config)
        }
        "7b" => {
            let mut config = base(Common, Epr, 1, 2);
            config.m_mag = max_m(N_MEAN);
            config.observables = vec![Rho14, Rho23];
            Preset::Evolve(config)
        }
        // Log negativity vs (t, |M|), common reservoir, double excitation.
        "8a" => m_sweep(base(Common, Noon, 2, 2), LogNegativity),
        "8b" => m_sweep(base(Common, Epr, 2, 2), LogNegativity),
        // Coherence traces of the doubly excited superposition.
        "9" => {
            let mut config = base(Common, Noon, 2, 2);
            config.m_mag = max_m(N_MEAN);
            config.observables = vec![Rho15, Rho19, Rho37];
            Preset::Evolve(config)
        }
        other => {
            return Err(Error::Invalid(format!(
                "unknown figure id '{other}' (known: {})",
                FIGURE_IDS.join(", ")
            )))
        }
    })
}
