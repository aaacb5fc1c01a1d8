//! Truncated Fock-space machinery: bases, ladder operators, tensor
//! embedding, product-state labels and initial entangled states.

use crate::linalg;
use crate::{C64, CMat, Error, Result};

/// Which cavity mode an operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    A,
    B,
}

/// Truncated two-mode Fock basis.
///
/// Internal ordering is row-major in the occupations: the state
/// `|n_A, n_B>` sits at index `n_A * (n_max_b + 1) + n_B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModeBasis {
    n_max_a: usize,
    n_max_b: usize,
    dim: usize,
}

impl ModeBasis {
    pub fn new(n_max_a: usize, n_max_b: usize) -> Result<Self> {
        if n_max_a < 1 || n_max_b < 1 {
            return Err(Error::Invalid(format!(
                "per-mode cutoffs must be >= 1, got ({n_max_a}, {n_max_b})"
            )));
        }
        Ok(Self {
            n_max_a,
            n_max_b,
            dim: (n_max_a + 1) * (n_max_b + 1),
        })
    }

    /// Equal cutoff on both modes.
    pub fn symmetric(n_max: usize) -> Result<Self> {
        Self::new(n_max, n_max)
    }

    pub fn n_max_a(&self) -> usize {
        self.n_max_a
    }

    pub fn n_max_b(&self) -> usize {
        self.n_max_b
    }

    pub fn n_max(&self, mode: Mode) -> usize {
        match mode {
            Mode::A => self.n_max_a,
            Mode::B => self.n_max_b,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Index of `|n_a, n_b>`.
    pub fn index(&self, n_a: usize, n_b: usize) -> Result<usize> {
        if n_a > self.n_max_a || n_b > self.n_max_b {
            return Err(Error::Invalid(format!(
                "occupation ({n_a}, {n_b}) outside cutoffs ({}, {})",
                self.n_max_a, self.n_max_b
            )));
        }
        Ok(n_a * (self.n_max_b + 1) + n_b)
    }

    /// Occupations `(n_a, n_b)` of a basis index.
    pub fn occupations(&self, idx: usize) -> Result<(usize, usize)> {
        if idx >= self.dim {
            return Err(Error::Invalid(format!(
                "index {idx} outside basis of dimension {}",
                self.dim
            )));
        }
        Ok((idx / (self.n_max_b + 1), idx % (self.n_max_b + 1)))
    }
}

/// State space a density matrix lives on: the two-mode product basis used by
/// the dynamics, or a single truncated mode for photon-statistics studies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateSpace {
    TwoMode(ModeBasis),
    SingleMode { n_max: usize },
}

impl StateSpace {
    pub fn dim(&self) -> usize {
        match self {
            StateSpace::TwoMode(b) => b.dim(),
            StateSpace::SingleMode { n_max } => n_max + 1,
        }
    }

    pub fn two_mode(&self) -> Result<&ModeBasis> {
        match self {
            StateSpace::TwoMode(b) => Ok(b),
            StateSpace::SingleMode { .. } => Err(Error::Dimension(
                "operation requires a two-mode state".into(),
            )),
        }
    }
}

/// Bosonic annihilation operator truncated at `n_max`:
/// `<m| a |m+1> = sqrt(m + 1)`.
pub fn annihilation(n_max: usize) -> Result<CMat> {
    if n_max < 1 {
        return Err(Error::Invalid(format!(
            "cutoff must be >= 1, got {n_max}"
        )));
    }
    let d = n_max + 1;
    let mut a = CMat::zeros((d, d));
    for m in 0..n_max {
        a[(m, m + 1)] = C64::new(((m + 1) as f64).sqrt(), 0.0);
    }
    Ok(a)
}

/// Creation operator truncated at `n_max`.
pub fn creation(n_max: usize) -> Result<CMat> {
    Ok(linalg::dagger(&annihilation(n_max)?))
}

/// Lift a single-mode operator to the two-mode space, acting as identity on
/// the other mode.
pub fn embed(op: &CMat, mode: Mode, basis: &ModeBasis) -> Result<CMat> {
    let expect = basis.n_max(mode) + 1;
    if op.nrows() != expect || op.ncols() != expect {
        return Err(Error::Dimension(format!(
            "operator is {}x{} but mode cutoff implies {expect}x{expect}",
            op.nrows(),
            op.ncols()
        )));
    }
    let out = match mode {
        Mode::A => linalg::kron(op, &CMat::eye(basis.n_max_b + 1)),
        Mode::B => linalg::kron(&CMat::eye(basis.n_max_a + 1), op),
    };
    Ok(out)
}

/// Index of the ket `|label>` in the conventional 1-based enumeration of
/// two-mode product states with `n` excitations per mode at most: labels run
/// row-major over `(n_A, n_B)` with `n_A, n_B <= n`, so e.g. for `n = 1` the
/// labels 1..4 are `|00>, |01>, |10>, |11>` and for `n = 2` the labels 1..9
/// run `|00>, |01>, |02>, |10>, ..., |22>`.
pub fn label_index(label: usize, n: usize, basis: &ModeBasis) -> Result<usize> {
    let (n_a, n_b) = label_occupations(label, n)?;
    if basis.n_max_a < n || basis.n_max_b < n {
        return Err(Error::Invalid(format!(
            "basis cutoffs ({}, {}) too small for {n}-excitation labels",
            basis.n_max_a, basis.n_max_b
        )));
    }
    basis.index(n_a, n_b)
}

/// Occupations `(n_A, n_B)` named by a 1-based product-state label.
pub fn label_occupations(label: usize, n: usize) -> Result<(usize, usize)> {
    if !(n == 1 || n == 2) {
        return Err(Error::Invalid(format!("labels defined for n in {{1, 2}}, got {n}")));
    }
    let count = (n + 1) * (n + 1);
    if label < 1 || label > count {
        return Err(Error::Invalid(format!(
            "label {label} out of range 1..={count} for n = {n}"
        )));
    }
    let k = label - 1;
    Ok((k / (n + 1), k % (n + 1)))
}

/// Inverse of [`label_index`]: the 1-based label of a basis index, if the
/// occupations are within the `n`-excitation label set.
pub fn index_label(idx: usize, n: usize, basis: &ModeBasis) -> Result<usize> {
    let (n_a, n_b) = basis.occupations(idx)?;
    if n_a > n || n_b > n {
        return Err(Error::Invalid(format!(
            "occupation ({n_a}, {n_b}) has no {n}-excitation label"
        )));
    }
    Ok(n_a * (n + 1) + n_b + 1)
}

/// Families of initial entangled states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateFamily {
    /// `cos(alpha) |0, n> + e^{-i psi} sin(alpha) |n, 0>`
    Noon,
    /// `cos(alpha) |0, 0> + e^{-i psi} sin(alpha) |n, n>`
    Epr,
}

/// Parameters of the initial pure entangled state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InitialStateSpec {
    pub family: StateFamily,
    pub n: usize,
    pub alpha: f64,
    pub psi: f64,
}

impl InitialStateSpec {
    pub fn new(family: StateFamily, n: usize, alpha: f64, psi: f64) -> Result<Self> {
        if !(n == 1 || n == 2) {
            return Err(Error::Invalid(format!("excitation number must be 1 or 2, got {n}")));
        }
        if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&alpha) {
            return Err(Error::Invalid(format!(
                "mixing angle must lie in [0, pi/2], got {alpha}"
            )));
        }
        if !(0.0..std::f64::consts::TAU).contains(&psi) {
            return Err(Error::Invalid(format!(
                "phase must lie in [0, 2 pi), got {psi}"
            )));
        }
        Ok(Self { family, n, alpha, psi })
    }
}

/// Hermitian, unit-trace, positive-semidefinite state on a truncated space.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    space: StateSpace,
    entries: CMat,
}

/// Validation tolerances for [`DensityMatrix`].
pub const HERMITICITY_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-10;
pub const POSITIVITY_TOL: f64 = 1e-8;

impl DensityMatrix {
    /// Validate and wrap a state matrix.
    pub fn new(space: StateSpace, entries: CMat) -> Result<Self> {
        let d = space.dim();
        if entries.nrows() != d || entries.ncols() != d {
            return Err(Error::Dimension(format!(
                "state is {}x{} but the space has dimension {d}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let dev = linalg::hermiticity_deviation(&entries);
        if dev > HERMITICITY_TOL {
            return Err(Error::BadState(format!(
                "Hermiticity deviation {dev:.3e} exceeds {HERMITICITY_TOL:.1e}"
            )));
        }
        let tr = linalg::trace(&entries);
        if (tr - C64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::BadState(format!(
                "trace {tr} deviates from 1 beyond {TRACE_TOL:.1e}"
            )));
        }
        let min_eig = linalg::hermitian_eigenvalues(&symmetrized(&entries))?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -POSITIVITY_TOL {
            return Err(Error::BadState(format!(
                "smallest eigenvalue {min_eig:.3e} below -{POSITIVITY_TOL:.1e}"
            )));
        }
        Ok(Self { space, entries })
    }

    /// Wrap without validation; for internal intermediates whose invariants
    /// are established by construction or checked elsewhere.
    pub fn from_parts_unchecked(space: StateSpace, entries: CMat) -> Self {
        Self { space, entries }
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn basis(&self) -> Result<&ModeBasis> {
        self.space.two_mode()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn entries(&self) -> &CMat {
        &self.entries
    }

    pub fn element(&self, i: usize, j: usize) -> C64 {
        self.entries[(i, j)]
    }

    /// Matrix element addressed by 1-based product-state labels.
    pub fn labeled_element(&self, label_i: usize, label_j: usize, n: usize) -> Result<C64> {
        let basis = self.space.two_mode()?;
        let i = label_index(label_i, n, basis)?;
        let j = label_index(label_j, n, basis)?;
        Ok(self.entries[(i, j)])
    }

    pub fn trace(&self) -> C64 {
        linalg::trace(&self.entries)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(linalg::hermitian_eigenvalues(&symmetrized(&self.entries))?
            .into_iter()
            .fold(f64::INFINITY, f64::min))
    }
}

fn symmetrized(m: &CMat) -> CMat {
    (m + &linalg::dagger(m)) * C64::new(0.5, 0.0)
}

/// Pure-state projector of the requested initial superposition.
pub fn build_initial_state(spec: &InitialStateSpec, basis: &ModeBasis) -> Result<DensityMatrix> {
    if basis.n_max_a < spec.n || basis.n_max_b < spec.n {
        return Err(Error::Invalid(format!(
            "basis cutoffs ({}, {}) smaller than excitation number {}",
            basis.n_max_a, basis.n_max_b, spec.n
        )));
    }
    let mut amp = vec![C64::new(0.0, 0.0); basis.dim()];
    let c0 = C64::new(spec.alpha.cos(), 0.0);
    let c1 = C64::from_polar(spec.alpha.sin(), -spec.psi);
    match spec.family {
        StateFamily::Noon => {
            amp[basis.index(0, spec.n)?] = c0;
            amp[basis.index(spec.n, 0)?] = c1;
        }
        StateFamily::Epr => {
            amp[basis.index(0, 0)?] = c0;
            amp[basis.index(spec.n, spec.n)?] = c1;
        }
    }
    let d = basis.dim();
    let mut rho = CMat::zeros((d, d));
    for i in 0..d {
        for j in 0..d {
            rho[(i, j)] = amp[i] * amp[j].conj();
        }
    }
    DensityMatrix::new(StateSpace::TwoMode(*basis), rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    #[test]
    fn annihilation_qubit_ladder() {
        let a = annihilation(1).unwrap();
        assert_eq!(a[(0, 1)], C64::new(1.0, 0.0));
        assert_eq!(a[(0, 0)], C64::new(0.0, 0.0));
        assert_eq!(a[(1, 0)], C64::new(0.0, 0.0));
        assert_eq!(a[(1, 1)], C64::new(0.0, 0.0));
    }

    #[test]
    fn annihilation_three_level() {
        let a = annihilation(2).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = match (i, j) {
                    (0, 1) => 1.0,
                    (1, 2) => 2f64.sqrt(),
                    _ => 0.0,
                };
                assert!((a[(i, j)] - C64::new(expect, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn number_operator_on_fock_state() {
        let a = annihilation(4).unwrap();
        let num = linalg::dagger(&a).dot(&a);
        let mut v = crate::CVec::zeros(5);
        v[3] = C64::new(1.0, 0.0);
        let out = num.dot(&v);
        for i in 0..5 {
            let expect = if i == 3 { 3.0 } else { 0.0 };
            assert!((out[i] - C64::new(expect, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn annihilation_rejects_zero_cutoff() {
        assert!(annihilation(0).is_err());
    }

    #[test]
    fn embed_identity_is_identity() {
        let basis = ModeBasis::new(2, 1).unwrap();
        for mode in [Mode::A, Mode::B] {
            let d = basis.n_max(mode) + 1;
            let out = embed(&CMat::eye(d), mode, &basis).unwrap();
            assert_eq!(out, CMat::eye(basis.dim()));
        }
    }

    #[test]
    fn operators_on_different_modes_commute() {
        let basis = ModeBasis::symmetric(2).unwrap();
        let a_a = embed(&annihilation(2).unwrap(), Mode::A, &basis).unwrap();
        let adag_b = embed(&creation(2).unwrap(), Mode::B, &basis).unwrap();
        let lhs = a_a.dot(&adag_b);
        let rhs = adag_b.dot(&a_a);
        for i in 0..basis.dim() {
            for j in 0..basis.dim() {
                assert!((lhs[(i, j)] - rhs[(i, j)]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn embed_matrix_element() {
        let basis = ModeBasis::symmetric(2).unwrap();
        let a_a = embed(&annihilation(2).unwrap(), Mode::A, &basis).unwrap();
        let row = basis.index(1, 0).unwrap();
        let col = basis.index(2, 0).unwrap();
        assert!((a_a[(row, col)] - C64::new(2f64.sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn embed_rejects_mismatched_dims() {
        let basis = ModeBasis::new(2, 1).unwrap();
        assert!(embed(&CMat::eye(2), Mode::A, &basis).is_err());
    }

    #[test]
    fn truncated_commutator_identity_below_top_level() {
        // [a, a^dagger] = 1 except on the top Fock level, where truncation
        // replaces the diagonal entry by -n_max.
        let n_max = 4;
        let a = annihilation(n_max).unwrap();
        let comm = a.dot(&creation(n_max).unwrap()) - creation(n_max).unwrap().dot(&a);
        for i in 0..n_max {
            for j in 0..=n_max {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((comm[(i, j)] - C64::new(expect, 0.0)).norm() < 1e-15);
            }
        }
        assert!((comm[(n_max, n_max)] - C64::new(-(n_max as f64), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn labels_single_excitation() {
        let basis = ModeBasis::symmetric(1).unwrap();
        assert_eq!(label_index(1, 1, &basis).unwrap(), basis.index(0, 0).unwrap());
        assert_eq!(label_index(3, 1, &basis).unwrap(), basis.index(1, 0).unwrap());
        assert!(label_index(5, 1, &basis).is_err());
    }

    #[test]
    fn labels_double_excitation() {
        let basis = ModeBasis::symmetric(2).unwrap();
        assert_eq!(label_index(7, 2, &basis).unwrap(), basis.index(2, 0).unwrap());
        assert_eq!(label_index(9, 2, &basis).unwrap(), basis.index(2, 2).unwrap());
        assert!(label_index(10, 2, &basis).is_err());
        // Labels with n = 1 still resolve inside a larger basis.
        let idx = label_index(3, 1, &basis).unwrap();
        assert_eq!(basis.occupations(idx).unwrap(), (1, 0));
    }

    #[test]
    fn label_roundtrip() {
        let basis = ModeBasis::symmetric(2).unwrap();
        for n in [1usize, 2] {
            for label in 1..=(n + 1) * (n + 1) {
                let idx = label_index(label, n, &basis).unwrap();
                assert_eq!(index_label(idx, n, &basis).unwrap(), label);
            }
        }
    }

    #[test]
    fn noon_state_elements() {
        let basis = ModeBasis::symmetric(1).unwrap();
        let spec = InitialStateSpec::new(StateFamily::Noon, 1, FRAC_PI_4, 0.0).unwrap();
        let rho = build_initial_state(&spec, &basis).unwrap();
        for (li, lj, expect) in [
            (2, 2, 0.5),
            (3, 3, 0.5),
            (2, 3, 0.5),
            (3, 2, 0.5),
            (1, 1, 0.0),
            (4, 4, 0.0),
            (1, 4, 0.0),
        ] {
            let v = rho.labeled_element(li, lj, 1).unwrap();
            assert!((v - C64::new(expect, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn epr_alpha_zero_is_vacuum() {
        let basis = ModeBasis::symmetric(1).unwrap();
        let spec = InitialStateSpec::new(StateFamily::Epr, 1, 0.0, 0.0).unwrap();
        let rho = build_initial_state(&spec, &basis).unwrap();
        let v = rho.labeled_element(1, 1, 1).unwrap();
        assert!((v - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((rho.trace() - C64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn epr_double_excitation_coherence() {
        let basis = ModeBasis::symmetric(2).unwrap();
        let spec = InitialStateSpec::new(StateFamily::Epr, 2, FRAC_PI_3, FRAC_PI_2).unwrap();
        let rho = build_initial_state(&spec, &basis).unwrap();
        let v = rho.labeled_element(1, 9, 2).unwrap();
        let expect = C64::from_polar(FRAC_PI_3.cos() * FRAC_PI_3.sin(), FRAC_PI_2);
        assert!((v - expect).norm() < 1e-15);
        assert!((v - C64::new(0.0, 0.43301270189221935)).norm() < 1e-12);
    }

    #[test]
    fn initial_states_are_projectors() {
        let basis = ModeBasis::symmetric(2).unwrap();
        for family in [StateFamily::Noon, StateFamily::Epr] {
            for n in [1usize, 2] {
                for alpha in [0.0, 0.3, FRAC_PI_4, 1.2] {
                    let spec = InitialStateSpec::new(family, n, alpha, 0.7).unwrap();
                    let rho = build_initial_state(&spec, &basis).unwrap();
                    let sq = rho.entries().dot(rho.entries());
                    for i in 0..basis.dim() {
                        for j in 0..basis.dim() {
                            assert!((sq[(i, j)] - rho.element(i, j)).norm() < 1e-12);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cutoff_too_small_rejected() {
        let basis = ModeBasis::symmetric(1).unwrap();
        let spec = InitialStateSpec::new(StateFamily::Noon, 2, FRAC_PI_4, 0.0).unwrap();
        assert!(build_initial_state(&spec, &basis).is_err());
    }
}
