//! Time evolution of the master equation: fixed-step RK4 and exact
//! matrix-exponential propagation, steady-state solution, photon statistics
//! and the steady-state recurrence-relation diagnostic.

use crate::fock::{DensityMatrix, Mode, StateSpace};
use crate::linalg;
use crate::lindblad::{ReservoirSpec, Superoperator};
use crate::{C64, CMat, CVec, Error, Result};

/// Snapshots of a state along a time grid (times in units of `1/kappa`).
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

fn check_space(l: &Superoperator, rho0: &DensityMatrix) -> Result<()> {
    if l.space() != rho0.space() {
        return Err(Error::Dimension(
            "state and Liouvillian live on different spaces".into(),
        ));
    }
    Ok(())
}

/// Classical RK4 on the matrix-valued equation of motion. No trace
/// renormalization is applied; trace drift is left visible as a diagnostic.
/// A snapshot is stored every `stride` steps (and always at t = 0 and at the
/// final time).
pub fn evolve_rk4(
    l: &Superoperator,
    rho0: &DensityMatrix,
    t_end: f64,
    step: f64,
    stride: usize,
) -> Result<Trajectory> {
    check_space(l, rho0)?;
    if !(step > 0.0) {
        return Err(Error::Invalid(format!("step must be > 0, got {step}")));
    }
    if t_end < 0.0 {
        return Err(Error::Invalid(format!("t_end must be >= 0, got {t_end}")));
    }
    let stride = stride.max(1);
    let n_steps = (t_end / step).round() as usize;

    let mut rho = rho0.entries().clone();
    let mut times = vec![0.0];
    let mut states = vec![rho0.clone()];
    for k in 0..n_steps {
        let k1 = l.apply(&rho)?;
        let k2 = l.apply(&(&rho + &(&k1 * (0.5 * step))))?;
        let k3 = l.apply(&(&rho + &(&k2 * (0.5 * step))))?;
        let k4 = l.apply(&(&rho + &(&k3 * step)))?;
        rho = rho + (&k1 + &(&k2 * 2.0) + &(&k3 * 2.0) + &k4) * (step / 6.0);
        if rho.iter().any(|z| !z.is_finite()) {
            return Err(Error::Numerical(format!(
                "non-finite state at step {} (t = {})",
                k + 1,
                (k + 1) as f64 * step
            )));
        }
        if (k + 1) % stride == 0 || k + 1 == n_steps {
            times.push((k + 1) as f64 * step);
            states.push(DensityMatrix::new(*rho0.space(), rho.clone())?);
        }
    }
    Ok(Trajectory { times, states })
}

/// Exact propagation `exp(t L)` applied to the vectorized state.
pub fn evolve_expm(l: &Superoperator, rho0: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
    check_space(l, rho0)?;
    let dense = l.dense();
    evolve_expm_with_dense(&dense, rho0, t)
}

/// Same as [`evolve_expm`] but reusing a precomputed dense Liouvillian.
pub fn evolve_expm_with_dense(
    dense: &CMat,
    rho0: &DensityMatrix,
    t: f64,
) -> Result<DensityMatrix> {
    let d = rho0.dim();
    let v = linalg::vec_mat(rho0.entries());
    let out = linalg::expm_apply(dense, t, &v)?;
    DensityMatrix::new(*rho0.space(), linalg::unvec(&out, d))
}

/// Exact propagation sampled on a uniform grid of `samples + 1` points over
/// `[0, t_end]`, stepping with a single precomputed `exp(dt L)`.
pub fn evolve_expm_grid(
    l: &Superoperator,
    rho0: &DensityMatrix,
    t_end: f64,
    samples: usize,
) -> Result<Trajectory> {
    check_space(l, rho0)?;
    if samples == 0 {
        return Err(Error::Invalid("need at least one sample interval".into()));
    }
    if t_end < 0.0 {
        return Err(Error::Invalid(format!("t_end must be >= 0, got {t_end}")));
    }
    let d = rho0.dim();
    let dt = t_end / samples as f64;
    let propagator = linalg::expm(&l.dense().mapv(|z| z * dt))?;
    let mut v = linalg::vec_mat(rho0.entries());
    let mut times = vec![0.0];
    let mut states = vec![rho0.clone()];
    for k in 1..=samples {
        v = propagator.dot(&v);
        times.push(k as f64 * dt);
        states.push(DensityMatrix::new(*rho0.space(), linalg::unvec(&v, d))?);
    }
    Ok(Trajectory { times, states })
}

/// Steady state of the flow: the unit-trace null vector of the vectorized
/// Liouvillian, Hermitized and validated.
pub fn steady_state(l: &Superoperator) -> Result<DensityMatrix> {
    let d = l.dim();
    let dense = l.dense();
    let mut trace_fn = CVec::zeros(d * d);
    for i in 0..d {
        trace_fn[i * d + i] = C64::new(1.0, 0.0);
    }
    let x = linalg::nullspace_unit_trace(&dense, &trace_fn)?;
    let m = linalg::unvec(&x, d);
    let herm = (&m + &linalg::dagger(&m)) * C64::new(0.5, 0.0);
    DensityMatrix::new(*l.space(), herm)
}

/// Single-mode diagonal populations `P_n` of the requested mode.
pub fn mode_populations(rho: &DensityMatrix, mode: Mode) -> Result<Vec<f64>> {
    match rho.space() {
        StateSpace::SingleMode { n_max } => Ok((0..=*n_max)
            .map(|n| rho.element(n, n).re)
            .collect()),
        StateSpace::TwoMode(basis) => {
            let n_max = basis.n_max(mode);
            let other_max = match mode {
                Mode::A => basis.n_max_b(),
                Mode::B => basis.n_max_a(),
            };
            let mut pops = vec![0.0; n_max + 1];
            for n in 0..=n_max {
                for m in 0..=other_max {
                    let idx = match mode {
                        Mode::A => basis.index(n, m)?,
                        Mode::B => basis.index(m, n)?,
                    };
                    pops[n] += rho.element(idx, idx).re;
                }
            }
            Ok(pops)
        }
    }
}

/// Population ratios `R_n = P_n / P_0` for `n = 1..=up_to`.
pub fn photon_ratios(rho: &DensityMatrix, mode: Mode, up_to: usize) -> Result<Vec<f64>> {
    let pops = mode_populations(rho, mode)?;
    if up_to >= pops.len() {
        return Err(Error::Invalid(format!(
            "requested ratios up to n = {up_to} but cutoff is {}",
            pops.len() - 1
        )));
    }
    let p0 = pops[0];
    if p0 <= 1e-14 {
        return Err(Error::Numerical(format!(
            "vacuum population {p0:.3e} too small for ratios"
        )));
    }
    Ok((1..=up_to).map(|n| pops[n] / p0).collect())
}

/// Form of the steady-state population recurrence to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecurrenceForm {
    /// The relation with the mixed sign on the two-below coherence pair,
    /// evaluated exactly as published.
    AsPublished,
    /// The same relation with that pair summed instead of differenced, which
    /// is what the diagonal of the master equation actually produces.
    SignCorrected,
}

/// Residual of the steady-state recurrence relation
/// `n N P_{n-1} - (2nN + N + n) P_n + (N+1)(n+1) P_{n+1} + M C_n`
/// for a single-mode steady state; returns its absolute value.
pub fn recurrence_residual(
    rho_ss: &DensityMatrix,
    spec: &ReservoirSpec,
    n: usize,
    form: RecurrenceForm,
) -> Result<f64> {
    let n_max = match rho_ss.space() {
        StateSpace::SingleMode { n_max } => *n_max,
        StateSpace::TwoMode(_) => {
            return Err(Error::Dimension(
                "recurrence diagnostic requires a single-mode state".into(),
            ))
        }
    };
    if n < 1 || n + 2 > n_max {
        return Err(Error::Invalid(format!(
            "recurrence index n = {n} outside safe range 1..={}",
            n_max.saturating_sub(2)
        )));
    }
    let nf = n as f64;
    let nn = spec.n_mean_a;
    let p = |k: usize| rho_ss.element(k, k).re;
    let r = |i: usize, j: usize| rho_ss.element(i, j);

    let mut c_n = ((nf + 1.0) * (nf + 2.0)).sqrt() * (r(n + 2, n) + r(n, n + 2))
        - 2.0 * (nf * (nf + 1.0)).sqrt() * (r(n + 1, n - 1) + r(n - 1, n + 1));
    if n >= 2 {
        let w = (nf * (nf - 1.0)).sqrt();
        c_n += match form {
            RecurrenceForm::AsPublished => w * (r(n - 2, n) - r(n, n - 2)),
            RecurrenceForm::SignCorrected => w * (r(n - 2, n) + r(n, n - 2)),
        };
    }
    c_n *= 0.5;

    let value = nf * nn * p(n - 1) - (2.0 * nf * nn + nn + nf) * p(n)
        + (nn + 1.0) * (nf + 1.0) * p(n + 1)
        + spec.m_mag * c_n;
    Ok(value.norm())
}

/// First time at which `measure` falls below `threshold`, refined by
/// bisection between the bracketing grid samples to `t_tol`. Returns `None`
/// if the measure stays above the threshold on the whole grid.
pub fn first_vanishing_time<F>(
    l: &Superoperator,
    rho0: &DensityMatrix,
    t_end: f64,
    samples: usize,
    threshold: f64,
    t_tol: f64,
    measure: F,
) -> Result<Option<f64>>
where
    F: Fn(&DensityMatrix) -> Result<f64>,
{
    check_space(l, rho0)?;
    let dense = l.dense();
    let traj = evolve_expm_grid(l, rho0, t_end, samples)?;
    let mut bracket = None;
    for k in 1..traj.len() {
        if measure(&traj.states[k])? < threshold {
            bracket = Some((traj.times[k - 1], traj.times[k]));
            break;
        }
    }
    let Some((mut lo, mut hi)) = bracket else {
        return Ok(None);
    };
    while hi - lo > t_tol {
        let mid = 0.5 * (lo + hi);
        let state = evolve_expm_with_dense(&dense, rho0, mid)?;
        if measure(&state)? < threshold {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{build_initial_state, InitialStateSpec, ModeBasis, StateFamily};
    use crate::linalg::max_abs;
    use crate::lindblad::{
        self, liouvillian_separate, liouvillian_single_mode, max_m, ReservoirSpec, Topology,
    };
    use std::f64::consts::FRAC_PI_4;

    fn vacuum_separate(n_max: usize) -> (ModeBasis, Superoperator) {
        let basis = ModeBasis::symmetric(n_max).unwrap();
        let spec =
            ReservoirSpec::symmetric(Topology::SeparateReservoirs, 1.0, 0.0, 0.0, 0.0).unwrap();
        let l = liouvillian_separate(&spec, &basis).unwrap();
        (basis, l)
    }

    #[test]
    fn zero_horizon_returns_initial_state() {
        let (basis, l) = vacuum_separate(1);
        let init = InitialStateSpec::new(StateFamily::Noon, 1, FRAC_PI_4, 0.0).unwrap();
        let rho0 = build_initial_state(&init, &basis).unwrap();
        let traj = evolve_rk4(&l, &rho0, 0.0, 1e-3, 1).unwrap();
        assert_eq!(traj.len(), 1);
        let diff = traj.states[0].entries() - rho0.entries();
        assert!(max_abs(&diff) == 0.0);

        let same = evolve_expm(&l, &rho0, 0.0).unwrap();
        let diff = same.entries() - rho0.entries();
        assert!(max_abs(&diff) < 1e-15);
    }

    #[test]
    fn vacuum_noon_population_matches_exponential_decay() {
        let (basis, l) = vacuum_separate(1);
        let init = InitialStateSpec::new(StateFamily::Noon, 1, FRAC_PI_4, 0.0).unwrap();
        let rho0 = build_initial_state(&init, &basis).unwrap();
        let traj = evolve_rk4(&l, &rho0, 1.0, 1e-3, 1000).unwrap();
        let last = traj.states.last().unwrap();
        let p = last.labeled_element(2, 2, 1).unwrap().re;
        assert!((p - 0.5 * (-1.0f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn vacuum_epr_expm_value() {
        let (basis, l) = vacuum_separate(1);
        let init = InitialStateSpec::new(StateFamily::Epr, 1, FRAC_PI_4, 0.0).unwrap();
        let rho0 = build_initial_state(&init, &basis).unwrap();
        let t = 2f64.ln();
        let state = evolve_expm(&l, &rho0, t).unwrap();
        let p44 = state.labeled_element(4, 4, 1).unwrap().re;
        assert!((p44 - 0.125).abs() < 1e-13);
    }

    #[test]
    fn rk4_matches_expm_and_converges_at_order_four() {
        let basis = ModeBasis::symmetric(1).unwrap();
        let spec = ReservoirSpec::symmetric(
            Topology::SeparateReservoirs,
            1.0,
            0.1,
            max_m(0.1),
            0.0,
        )
        .unwrap();
        let l = liouvillian_separate(&spec, &basis).unwrap();
        let init = InitialStateSpec::new(StateFamily::Noon, 1, FRAC_PI_4, 0.0).unwrap();
        let rho0 = build_initial_state(&init, &basis).unwrap();

        let t_end = 1.0;
        let exact = evolve_expm(&l, &rho0, t_end).unwrap();
        let err_at = |step: f64| {
            let traj = evolve_rk4(&l, &rho0, t_end, step, usize::MAX).unwrap();
            let diff = traj.states.last().unwrap().entries() - exact.entries();
            max_abs(&diff)
        };
        let coarse = err_at(1e-2);
        let fine = err_at(5e-3);
        assert!(coarse / fine >= 12.0, "convergence factor {}", coarse / fine);
        assert!(err_at(1e-4) < 1e-10);
    }

    #[test]
    fn vacuum_steady_state_is_dark() {
        let spec =
            ReservoirSpec::symmetric(Topology::SeparateReservoirs, 1.0, 0.0, 0.0, 0.0).unwrap();
        let l = liouvillian_single_mode(&spec, 6).unwrap();
        let ss = steady_state(&l).unwrap();
        assert!((ss.element(0, 0) - C64::new(1.0, 0.0)).norm() < 1e-12);
        for n in 1..=6 {
            assert!(ss.element(n, n).norm() < 1e-12);
        }
    }

    #[test]
    fn thermal_steady_state_is_geometric() {
        let n_mean = 0.1;
        let spec =
            ReservoirSpec::symmetric(Topology::SeparateReservoirs, 1.0, n_mean, 0.0, 0.0)
                .unwrap();
        let l = liouvillian_single_mode(&spec, 12).unwrap();
        let ss = steady_state(&l).unwrap();
        let ratios = photon_ratios(&ss, Mode::A, 4).unwrap();
        let q = n_mean / (n_mean + 1.0);
        for (k, r) in ratios.iter().enumerate() {
            assert!((r - q.powi(k as i32 + 1)).abs() < 1e-10);
        }
        assert!((ratios[0] - 0.090909).abs() < 1e-5);
    }

    #[test]
    fn squeezed_steady_state_ratios() {
        // At the physical bound |M| = sqrt(N(N+1)) the steady state is the
        // pure squeezed vacuum: odd populations vanish and the even ones
        // follow the squeezed-vacuum distribution, R2 = tanh^2(r)/2 and
        // R4 = 3 tanh^4(r)/8 with sinh^2(r) = N.
        let n_mean = 0.1;
        let spec = ReservoirSpec::symmetric(
            Topology::SeparateReservoirs,
            1.0,
            n_mean,
            max_m(n_mean),
            0.0,
        )
        .unwrap();
        let l = liouvillian_single_mode(&spec, 12).unwrap();
        let ss = steady_state(&l).unwrap();
        let ratios = photon_ratios(&ss, Mode::A, 4).unwrap();
        let t2 = n_mean / (n_mean + 1.0); // tanh^2(r)
        assert!(ratios[0].abs() < 1e-10);
        assert!((ratios[1] - 0.5 * t2).abs() < 1e-10);
        assert!(ratios[2].abs() < 1e-10);
        assert!((ratios[3] - 0.375 * t2 * t2).abs() < 1e-8);
        // Positivity of the squeezed steady state at the physical boundary.
        assert!(ss.min_eigenvalue().unwrap() >= -1e-8);

        // At the classical-squeezing boundary |M| = N the first ratio
        // reaches the reported near-thermal value 0.083.
        let spec =
            ReservoirSpec::symmetric(Topology::SeparateReservoirs, 1.0, n_mean, n_mean, 0.0)
                .unwrap();
        let l = liouvillian_single_mode(&spec, 12).unwrap();
        let ss = steady_state(&l).unwrap();
        let ratios = photon_ratios(&ss, Mode::A, 3).unwrap();
        assert!((ratios[0] - 0.083).abs() < 1e-3);
    }

    #[test]
    fn steady_state_is_long_time_limit() {
        let basis = ModeBasis::symmetric(2).unwrap();
        let spec = ReservoirSpec::symmetric(
            Topology::CommonReservoir,
            1.0,
            0.1,
            max_m(0.1),
            0.3,
        )
        .unwrap();
        let l = lindblad::liouvillian_common(&spec, &basis).unwrap();
        let init = InitialStateSpec::new(StateFamily::Epr, 1, FRAC_PI_4, 0.0).unwrap();
        let rho0 = build_initial_state(&init, &basis).unwrap();
        let late = evolve_expm(&l, &rho0, 50.0).unwrap();
        let ss = steady_state(&l).unwrap();
        let diff = late.entries() - ss.entries();
        assert!(max_abs(&diff) < 1e-8);
    }

    #[test]
    fn recurrence_residuals() {
        // Thermal: detailed balance makes every residual vanish.
        let thermal =
            ReservoirSpec::symmetric(Topology::SeparateReservoirs, 1.0, 0.1, 0.0, 0.0).unwrap();
        let l = liouvillian_single_mode(&thermal, 12).unwrap();
        let ss = steady_state(&l).unwrap();
        for n in 1..=10 {
            let r = recurrence_residual(&ss, &thermal, n, RecurrenceForm::AsPublished).unwrap();
            assert!(r < 1e-12, "thermal residual at n = {n}: {r:.3e}");
        }

        // Vacuum: identically zero.
        let vacuum =
            ReservoirSpec::symmetric(Topology::SeparateReservoirs, 1.0, 0.0, 0.0, 0.0).unwrap();
        let l = liouvillian_single_mode(&vacuum, 6).unwrap();
        let ss = steady_state(&l).unwrap();
        for n in 1..=4 {
            let r = recurrence_residual(&ss, &vacuum, n, RecurrenceForm::AsPublished).unwrap();
            assert!(r < 1e-14);
        }

        // Squeezed: the published mixed sign cancels the two-below pair, so
        // only n = 1 (where that pair is absent) vanishes as published; the
        // sign-corrected form satisfies the relation at every n.
        let squeezed = ReservoirSpec::symmetric(
            Topology::SeparateReservoirs,
            1.0,
            0.1,
            max_m(0.1),
            0.0,
        )
        .unwrap();
        let l = liouvillian_single_mode(&squeezed, 12).unwrap();
        let ss = steady_state(&l).unwrap();
        let r1 = recurrence_residual(&ss, &squeezed, 1, RecurrenceForm::AsPublished).unwrap();
        assert!(r1 < 1e-8, "n = 1 as-published residual: {r1:.3e}");
        for n in 1..=9 {
            let r = recurrence_residual(&ss, &squeezed, n, RecurrenceForm::SignCorrected).unwrap();
            assert!(r < 1e-10, "sign-corrected residual at n = {n}: {r:.3e}");
        }
        let r2 = recurrence_residual(&ss, &squeezed, 2, RecurrenceForm::AsPublished).unwrap();
        assert!(r2 > 1e-8, "published form expected to miss at n = 2, got {r2:.3e}");
    }

    #[test]
    fn recurrence_index_range_enforced() {
        let spec =
            ReservoirSpec::symmetric(Topology::SeparateReservoirs, 1.0, 0.1, 0.0, 0.0).unwrap();
        let l = liouvillian_single_mode(&spec, 5).unwrap();
        let ss = steady_state(&l).unwrap();
        assert!(recurrence_residual(&ss, &spec, 0, RecurrenceForm::AsPublished).is_err());
        assert!(recurrence_residual(&ss, &spec, 4, RecurrenceForm::AsPublished).is_err());
    }

    #[test]
    fn trace_and_hermiticity_drift_bounds() {
        let basis = ModeBasis::symmetric(2).unwrap();
        let spec = ReservoirSpec::symmetric(
            Topology::SeparateReservoirs,
            1.0,
            0.1,
            max_m(0.1),
            0.5,
        )
        .unwrap();
        let l = liouvillian_separate(&spec, &basis).unwrap();
        let init = InitialStateSpec::new(StateFamily::Epr, 1, FRAC_PI_4, 0.0).unwrap();
        let rho0 = build_initial_state(&init, &basis).unwrap();
        let traj = evolve_rk4(&l, &rho0, 5.0, 1e-3, 250).unwrap();
        for state in &traj.states {
            assert!((state.trace() - C64::new(1.0, 0.0)).norm() <= 1e-10);
            assert!(crate::linalg::hermiticity_deviation(state.entries()) <= 1e-11);
        }
    }
}
