//! Liouvillian superoperators for cavity modes damped by squeezed vacuum
//! reservoirs, in the two coupling topologies: each mode to its own
//! single-mode-squeezed reservoir, or both modes to one common
//! two-mode-squeezed reservoir.

use crate::fock::{self, Mode, ModeBasis, StateSpace};
use crate::linalg;
use crate::{C64, CMat, Error, Result};

/// Reservoir coupling topology.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Topology {
    SeparateReservoirs,
    CommonReservoir,
}

/// Squeezing regime of a reservoir with mean photon number `N` and
/// correlation magnitude `|M|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegimeClass {
    Vacuum,
    Thermal,
    ClassicalSqueezing,
    QuantumSqueezing,
}

/// Reservoir parameters shared by both topologies.
///
/// The correlation is `M = |M| exp(-i theta)`; physical squeezing requires
/// `|M| <= sqrt(N (N + 1))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReservoirSpec {
    pub topology: Topology,
    pub kappa: f64,
    pub n_mean_a: f64,
    pub n_mean_b: f64,
    pub m_mag: f64,
    pub theta: f64,
}

/// Largest physical correlation magnitude for mean photon number `n`.
pub fn max_m(n_mean: f64) -> f64 {
    (n_mean * (n_mean + 1.0)).sqrt()
}

const PHYSICALITY_SLACK: f64 = 1e-12;

impl ReservoirSpec {
    pub fn new(
        topology: Topology,
        kappa: f64,
        n_mean_a: f64,
        n_mean_b: f64,
        m_mag: f64,
        theta: f64,
    ) -> Result<Self> {
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(Error::Invalid(format!("decay rate must be > 0, got {kappa}")));
        }
        if n_mean_a < 0.0 || n_mean_b < 0.0 {
            return Err(Error::Invalid("mean photon numbers must be >= 0".into()));
        }
        if m_mag < 0.0 {
            return Err(Error::Invalid("correlation magnitude must be >= 0".into()));
        }
        let bound = max_m(n_mean_a.min(n_mean_b));
        if m_mag > bound + PHYSICALITY_SLACK {
            return Err(Error::Unphysical(format!(
                "|M| = {m_mag} exceeds sqrt(N(N+1)) = {bound}"
            )));
        }
        Ok(Self {
            topology,
            kappa,
            n_mean_a,
            n_mean_b,
            m_mag,
            theta,
        })
    }

    /// Equal mean photon number in both reservoir channels.
    pub fn symmetric(
        topology: Topology,
        kappa: f64,
        n_mean: f64,
        m_mag: f64,
        theta: f64,
    ) -> Result<Self> {
        Self::new(topology, kappa, n_mean, n_mean, m_mag, theta)
    }

    /// Complex correlation parameter `|M| exp(-i theta)`.
    pub fn m(&self) -> C64 {
        C64::from_polar(self.m_mag, -self.theta)
    }
}

/// Classify the squeezing regime; the boundary `|M| = N` counts as
/// classical squeezing.
pub fn classify_regime(n_mean: f64, m_mag: f64) -> Result<RegimeClass> {
    if n_mean < 0.0 || m_mag < 0.0 {
        return Err(Error::Invalid("regime parameters must be >= 0".into()));
    }
    if m_mag > max_m(n_mean) + PHYSICALITY_SLACK {
        return Err(Error::Unphysical(format!(
            "|M| = {m_mag} exceeds sqrt(N(N+1)) = {}",
            max_m(n_mean)
        )));
    }
    Ok(if m_mag == 0.0 {
        if n_mean == 0.0 {
            RegimeClass::Vacuum
        } else {
            RegimeClass::Thermal
        }
    } else if m_mag <= n_mean {
        RegimeClass::ClassicalSqueezing
    } else {
        RegimeClass::QuantumSqueezing
    })
}

/// Mean photon number and correlation magnitude of a pure squeezed vacuum
/// with squeezing parameter `r`: `N = sinh^2 r`, `M = sinh r cosh r`.
pub fn squeezing_from_r(r: f64) -> (f64, f64) {
    let sh = r.sinh();
    (sh * sh, sh * r.cosh())
}

/// One Lindblad-style contribution `c (2 X rho Y - YX rho - rho YX)`.
struct Term {
    coeff: C64,
    x: CMat,
    y: CMat,
    yx: CMat,
}

impl Term {
    fn new(coeff: C64, x: CMat, y: CMat) -> Self {
        let yx = y.dot(&x);
        Self { coeff, x, y, yx }
    }
}

/// The Liouvillian: a linear map on density matrices with matrix-free
/// application and, on demand, a dense vectorized (column-stacking) form.
pub struct Superoperator {
    space: StateSpace,
    spec: ReservoirSpec,
    terms: Vec<Term>,
}

impl Superoperator {
    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn spec(&self) -> &ReservoirSpec {
        &self.spec
    }

    /// Matrix-free evaluation of `d rho / dt`.
    pub fn apply(&self, rho: &CMat) -> Result<CMat> {
        let d = self.dim();
        if rho.nrows() != d || rho.ncols() != d {
            return Err(Error::Dimension(format!(
                "state is {}x{} but the Liouvillian acts on dimension {d}",
                rho.nrows(),
                rho.ncols()
            )));
        }
        let mut out = CMat::zeros((d, d));
        for term in &self.terms {
            let sandwich = term.x.dot(rho).dot(&term.y);
            let left = term.yx.dot(rho);
            let right = rho.dot(&term.yx);
            out = out + (sandwich * C64::new(2.0, 0.0) - left - right) * term.coeff;
        }
        Ok(out)
    }

    /// Dense `d^2 x d^2` matrix acting on column-stacked states.
    pub fn dense(&self) -> CMat {
        let d = self.dim();
        let eye = CMat::eye(d);
        let mut l = CMat::zeros((d * d, d * d));
        for term in &self.terms {
            let yt = term.y.t().to_owned();
            let yxt = term.yx.t().to_owned();
            let part = linalg::kron(&yt, &term.x) * C64::new(2.0, 0.0)
                - linalg::kron(&eye, &term.yx)
                - linalg::kron(&yxt, &eye);
            l = l + part * term.coeff;
        }
        l
    }
}

/// Per-mode damping, pumping and single-mode squeezing terms of the
/// separate-reservoirs master equation.
fn push_mode_terms(
    terms: &mut Vec<Term>,
    a: &CMat,
    adag: &CMat,
    kappa: f64,
    n_mean: f64,
    m: Option<C64>,
) {
    let half = 0.5 * kappa;
    terms.push(Term::new(
        C64::new(half * (n_mean + 1.0), 0.0),
        a.clone(),
        adag.clone(),
    ));
    if n_mean > 0.0 {
        terms.push(Term::new(
            C64::new(half * n_mean, 0.0),
            adag.clone(),
            a.clone(),
        ));
    }
    if let Some(m) = m {
        if m.norm() > 0.0 {
            terms.push(Term::new(-half * m, a.clone(), a.clone()));
            terms.push(Term::new(-half * m.conj(), adag.clone(), adag.clone()));
        }
    }
}

/// Liouvillian for two modes each damped by its own squeezed reservoir.
pub fn liouvillian_separate(spec: &ReservoirSpec, basis: &ModeBasis) -> Result<Superoperator> {
    if spec.topology != Topology::SeparateReservoirs {
        return Err(Error::Invalid(
            "separate-reservoir Liouvillian requires the separate topology".into(),
        ));
    }
    let mut terms = Vec::new();
    for (mode, n_mean) in [(Mode::A, spec.n_mean_a), (Mode::B, spec.n_mean_b)] {
        let a = fock::embed(&fock::annihilation(basis.n_max(mode))?, mode, basis)?;
        let adag = linalg::dagger(&a);
        push_mode_terms(&mut terms, &a, &adag, spec.kappa, n_mean, Some(spec.m()));
    }
    Ok(Superoperator {
        space: StateSpace::TwoMode(*basis),
        spec: *spec,
        terms,
    })
}

/// Liouvillian for two modes damped by one common squeezed reservoir. The
/// squeezing correlation appears only between different modes.
pub fn liouvillian_common(spec: &ReservoirSpec, basis: &ModeBasis) -> Result<Superoperator> {
    if spec.topology != Topology::CommonReservoir {
        return Err(Error::Invalid(
            "common-reservoir Liouvillian requires the common topology".into(),
        ));
    }
    let a_a = fock::embed(&fock::annihilation(basis.n_max(Mode::A))?, Mode::A, basis)?;
    let a_b = fock::embed(&fock::annihilation(basis.n_max(Mode::B))?, Mode::B, basis)?;
    let adag_a = linalg::dagger(&a_a);
    let adag_b = linalg::dagger(&a_b);

    let mut terms = Vec::new();
    push_mode_terms(&mut terms, &a_a, &adag_a, spec.kappa, spec.n_mean_a, None);
    push_mode_terms(&mut terms, &a_b, &adag_b, spec.kappa, spec.n_mean_b, None);

    let m = spec.m();
    if m.norm() > 0.0 {
        let half = 0.5 * spec.kappa;
        // Cross terms summed over ordered pairs (i, j) with i != j:
        // -M (2 a_j rho a_i - a_i a_j rho - rho a_i a_j) and its conjugate.
        for (a_i, a_j) in [(&a_a, &a_b), (&a_b, &a_a)] {
            terms.push(Term::new(-half * m, (*a_j).clone(), (*a_i).clone()));
            terms.push(Term::new(
                -half * m.conj(),
                linalg::dagger(a_j),
                linalg::dagger(a_i),
            ));
        }
    }
    Ok(Superoperator {
        space: StateSpace::TwoMode(*basis),
        spec: *spec,
        terms,
    })
}

/// Liouvillian for one truncated mode in a squeezed reservoir; used for
/// photon-statistics and steady-state studies at larger cutoffs.
pub fn liouvillian_single_mode(spec: &ReservoirSpec, n_max: usize) -> Result<Superoperator> {
    let a = fock::annihilation(n_max)?;
    let adag = linalg::dagger(&a);
    let mut terms = Vec::new();
    push_mode_terms(&mut terms, &a, &adag, spec.kappa, spec.n_mean_a, Some(spec.m()));
    Ok(Superoperator {
        space: StateSpace::SingleMode { n_max },
        spec: *spec,
        terms,
    })
}

/// Liouvillian for the topology recorded in the spec.
pub fn liouvillian(spec: &ReservoirSpec, basis: &ModeBasis) -> Result<Superoperator> {
    match spec.topology {
        Topology::SeparateReservoirs => liouvillian_separate(spec, basis),
        Topology::CommonReservoir => liouvillian_common(spec, basis),
    }
}
