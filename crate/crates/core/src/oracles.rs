//! Closed-form solutions used as independent ground truth for the numerical
//! engine: exact vacuum-reservoir trajectories of the two initial-state
//! families, the negative partial-transpose eigenvalues for two excitations,
//! the squeezed-reservoir coherence laws, and the disentanglement time.
//!
//! Element maps are keyed by the 1-based product-state labels of
//! [`crate::fock::label_index`] and list every nonzero element on or above
//! the diagonal; elements not listed are exactly zero.

use std::collections::BTreeMap;

use crate::C64;

/// A closed-form state snapshot at a fixed scaled time `kt`.
#[derive(Clone, Debug)]
pub struct AnalyticSnapshot {
    /// Scaled time `kappa * t`.
    pub time: f64,
    /// Nonzero matrix elements, keyed by 1-based label pairs `(i, j)` with
    /// `i <= j`.
    pub elements: BTreeMap<(usize, usize), C64>,
    /// Concurrence where the family admits one, otherwise `None`.
    pub measure: Option<f64>,
    /// Negative partial-transpose eigenvalue where derived, otherwise `None`.
    pub eigenvalue: Option<f64>,
}

impl AnalyticSnapshot {
    pub fn element(&self, i: usize, j: usize) -> C64 {
        let key = if i <= j { (i, j) } else { (j, i) };
        let z = self
            .elements
            .get(&key)
            .copied()
            .unwrap_or(C64::new(0.0, 0.0));
        if i <= j {
            z
        } else {
            z.conj()
        }
    }
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Vacuum reservoirs, one excitation shared between the modes:
/// `cos a |01> + e^{-i psi} sin a |10>` decays with
/// `rho_11 = 1 - e^{-kt}` and concurrence `|sin 2a| e^{-kt}`.
pub fn vacuum_noon_n1(alpha: f64, psi: f64, kt: f64) -> AnalyticSnapshot {
    let e = (-kt).exp();
    let (s, c) = alpha.sin_cos();
    let mut elements = BTreeMap::new();
    elements.insert((1, 1), re(1.0 - e));
    elements.insert((2, 2), re(e * c * c));
    elements.insert((3, 3), re(e * s * s));
    elements.insert((2, 3), C64::from_polar(e * c * s, psi));
    AnalyticSnapshot {
        time: kt,
        elements,
        measure: Some((2.0 * alpha).sin().abs() * e),
        eigenvalue: None,
    }
}

/// Vacuum reservoirs, one excitation per mode:
/// `cos a |00> + e^{-i psi} sin a |11>`, with concurrence
/// `max(0, [|sin 2a| - 2 (1 - e^{-kt}) sin^2 a] e^{-kt})`.
pub fn vacuum_epr_n1(alpha: f64, psi: f64, kt: f64) -> AnalyticSnapshot {
    let e = (-kt).exp();
    let (s, c) = alpha.sin_cos();
    let s2 = s * s;
    let mut elements = BTreeMap::new();
    elements.insert((1, 1), re(c * c + (1.0 - e) * (1.0 - e) * s2));
    elements.insert((2, 2), re(e * (1.0 - e) * s2));
    elements.insert((3, 3), re(e * (1.0 - e) * s2));
    elements.insert((4, 4), re(e * e * s2));
    elements.insert((1, 4), C64::from_polar(e * c * s, psi));
    let raw = ((2.0 * alpha).sin().abs() - 2.0 * (1.0 - e) * s2) * e;
    AnalyticSnapshot {
        time: kt,
        elements,
        measure: Some(raw.max(0.0)),
        eigenvalue: None,
    }
}

/// Vacuum reservoirs, two excitations in one mode:
/// `cos a |02> + e^{-i psi} sin a |20>`. The snapshot carries the negative
/// partial-transpose eigenvalue
/// `mu_1 = [rho_11 - sqrt(rho_11^2 + 4 |rho_37|^2)] / 2`.
pub fn vacuum_noon_n2_eigen(alpha: f64, psi: f64, kt: f64) -> AnalyticSnapshot {
    let e = (-kt).exp();
    let (s, c) = alpha.sin_cos();
    let p1 = (1.0 - e) * (1.0 - e);
    let mut elements = BTreeMap::new();
    elements.insert((1, 1), re(p1));
    elements.insert((2, 2), re(2.0 * e * (1.0 - e) * c * c));
    elements.insert((3, 3), re(e * e * c * c));
    elements.insert((4, 4), re(2.0 * e * (1.0 - e) * s * s));
    elements.insert((7, 7), re(e * e * s * s));
    elements.insert((3, 7), C64::from_polar(e * e * c * s, psi));
    let coh = e * e * c * s;
    let mu = 0.5 * (p1 - (p1 * p1 + 4.0 * coh * coh).sqrt());
    AnalyticSnapshot {
        time: kt,
        elements,
        measure: None,
        eigenvalue: Some(mu),
    }
}

/// The same eigenvalue with the coherence entering as `|rho_37|^2` instead
/// of `4 |rho_37|^2`. Kept for comparison: at `kt = 0`, `alpha = pi/4` it
/// gives a negativity of `log2(1.5)` instead of 1 for the maximally
/// entangled state, so [`vacuum_noon_n2_eigen`] is the form used everywhere
/// else.
pub fn vacuum_noon_n2_eigen_single_weight(alpha: f64, kt: f64) -> f64 {
    let e = (-kt).exp();
    let (s, c) = alpha.sin_cos();
    let p1 = (1.0 - e) * (1.0 - e);
    let coh = e * e * c * s;
    0.5 * (p1 - (p1 * p1 + coh * coh).sqrt())
}

/// Vacuum reservoirs, two excitations per mode:
/// `cos a |00> + e^{-i psi} sin a |22>`. Carries the partial-transpose
/// eigenvalue `mu_2 = [(1 - e^{-kt})^2 sin^2 a - |sin 2a| / 2] e^{-2 kt}`;
/// the state is entangled iff `mu_2 < 0`.
pub fn vacuum_epr_n2_eigen(alpha: f64, psi: f64, kt: f64) -> AnalyticSnapshot {
    let e = (-kt).exp();
    let (s, c) = alpha.sin_cos();
    let s2 = s * s;
    let d = 1.0 - e;
    let mut elements = BTreeMap::new();
    elements.insert((1, 1), re(c * c + d * d * d * d * s2));
    elements.insert((2, 2), re(2.0 * e * d * d * d * s2));
    elements.insert((4, 4), re(2.0 * e * d * d * d * s2));
    elements.insert((3, 3), re(e * e * d * d * s2));
    elements.insert((7, 7), re(e * e * d * d * s2));
    elements.insert((5, 5), re(4.0 * e * e * d * d * s2));
    elements.insert((6, 6), re(2.0 * e * e * e * d * s2));
    elements.insert((8, 8), re(2.0 * e * e * e * d * s2));
    elements.insert((9, 9), re(e * e * e * e * s2));
    elements.insert((1, 9), C64::from_polar(e * e * c * s, psi));
    let mu = (d * d * s2 - 0.5 * (2.0 * alpha).sin().abs()) * e * e;
    AnalyticSnapshot {
        time: kt,
        elements,
        measure: None,
        eigenvalue: Some(mu),
    }
}

/// Inner coherence `rho_23` of the single-excitation superposition in
/// separate squeezed reservoirs with mean photon number `N` and correlation
/// magnitude `|M|`; independent of the squeezing phase.
pub fn separate_squeezed_rho23(
    alpha: f64,
    psi: f64,
    n_mean: f64,
    m_mag: f64,
    kt: f64,
) -> C64 {
    let envelope = 0.5 * (2.0 * alpha).sin()
        * (2.0 * m_mag * kt).cosh()
        * (-(4.0 * n_mean + 1.0) * kt).exp();
    C64::from_polar(1.0, psi) * envelope
}

/// Outer coherence `rho_14` of the one-photon-per-mode superposition in
/// separate squeezed reservoirs; depends on the squeezing phase through
/// `theta + psi`.
pub fn separate_squeezed_rho14(
    alpha: f64,
    psi: f64,
    theta: f64,
    n_mean: f64,
    m_mag: f64,
    kt: f64,
) -> C64 {
    let ch = (m_mag * kt).cosh();
    let sh = (m_mag * kt).sinh();
    let bracket = C64::new(ch * ch, 0.0)
        + C64::from_polar(sh * sh, -2.0 * (theta + psi));
    C64::from_polar(
        0.5 * (2.0 * alpha).sin() * (-(4.0 * n_mean + 1.0) * kt).exp(),
        psi,
    ) * bracket
}

/// Disentanglement time of the one-photon-per-mode superposition in vacuum:
/// `kt* = -ln(1 - cot a)` for `a > pi/4`; `None` when the concurrence stays
/// positive for all times. Defined for `alpha` in `(0, pi/2)`.
pub fn esd_time_vacuum_epr_n1(alpha: f64) -> Option<f64> {
    if alpha <= std::f64::consts::FRAC_PI_4 {
        return None;
    }
    Some(-(1.0 - 1.0 / alpha.tan()).ln())
}
