//! Entanglement measures: concurrence (X-state closed form and the general
//! two-qubit formula) and logarithmic negativity via the partial transpose.

use crate::fock::{label_index, DensityMatrix, StateSpace};
use crate::linalg;
use crate::{C64, CMat, Error, Result};

/// Which measure a value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasureKind {
    ConcurrenceXState,
    ConcurrenceGeneral,
    LogNegativity,
}

/// A computed measure together with its raw (unclamped) value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureValue {
    pub kind: MeasureKind,
    /// The measure itself, clamped to its physical range.
    pub value: f64,
    /// The signed quantity before clamping at zero; negative values show how
    /// far below the threshold the state sits.
    pub raw: f64,
}

/// Entries allowed to be nonzero in an X-form state on the single-excitation
/// sector, as 1-based label pairs (upper triangle).
const X_FORM_OFFDIAG: [(usize, usize); 2] = [(1, 4), (2, 3)];
const X_FORM_TOL: f64 = 1e-10;

fn require_two_qubit(rho: &DensityMatrix) -> Result<()> {
    match rho.space() {
        StateSpace::TwoMode(b) if b.n_max_a() == 1 && b.n_max_b() == 1 => Ok(()),
        _ => Err(Error::Dimension(format!(
            "concurrence requires the dimension-4 single-excitation space, got dimension {}",
            rho.dim()
        ))),
    }
}

/// Verify the state is in X form: only the diagonal and the two
/// anti-diagonal coherences may be nonzero.
fn check_x_form(rho: &DensityMatrix) -> Result<()> {
    let basis = rho.basis()?;
    let allowed: Vec<(usize, usize)> = X_FORM_OFFDIAG
        .iter()
        .map(|&(li, lj)| {
            Ok((
                label_index(li, 1, basis)?,
                label_index(lj, 1, basis)?,
            ))
        })
        .collect::<Result<_>>()?;
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if allowed.contains(&(i, j)) || allowed.contains(&(j, i)) {
                continue;
            }
            worst = worst.max(rho.element(i, j).norm());
        }
    }
    if worst > X_FORM_TOL {
        return Err(Error::NotXForm(worst));
    }
    Ok(())
}

/// Concurrence of a two-qubit X state:
/// `max(0, 2(|rho_23| - sqrt(rho_11 rho_44)), 2(|rho_14| - sqrt(rho_22 rho_33)))`.
pub fn concurrence_x_state(rho: &DensityMatrix) -> Result<MeasureValue> {
    require_two_qubit(rho)?;
    check_x_form(rho)?;
    let p = |l: usize| rho.labeled_element(l, l, 1).map(|z| z.re.max(0.0));
    let c = |li: usize, lj: usize| rho.labeled_element(li, lj, 1).map(|z| z.norm());
    let branch_inner = 2.0 * (c(2, 3)? - (p(1)? * p(4)?).sqrt());
    let branch_outer = 2.0 * (c(1, 4)? - (p(2)? * p(3)?).sqrt());
    let raw = branch_inner.max(branch_outer);
    Ok(MeasureValue {
        kind: MeasureKind::ConcurrenceXState,
        value: raw.max(0.0),
        raw,
    })
}

/// Spin-flip matrix `sigma_y (x) sigma_y` in the product basis.
fn spin_flip() -> CMat {
    let mut y = CMat::zeros((4, 4));
    // (sigma_y)_{01} = -i, (sigma_y)_{10} = i; the Kronecker product has
    // entries on the anti-diagonal with signs (-1, 1, 1, -1).
    y[(0, 3)] = C64::new(-1.0, 0.0);
    y[(1, 2)] = C64::new(1.0, 0.0);
    y[(2, 1)] = C64::new(1.0, 0.0);
    y[(3, 0)] = C64::new(-1.0, 0.0);
    y
}

/// Concurrence of an arbitrary two-qubit state. The Wootters roots
/// `sqrt(lambda_i)` are computed as the singular values of
/// `sqrt(rho)^T Y sqrt(rho)` with `Y = sigma_y (x) sigma_y`, which stays
/// accurate near pure states where the eigenvalues of `rho rho~` cluster
/// at zero.
pub fn concurrence_general(rho: &DensityMatrix) -> Result<MeasureValue> {
    require_two_qubit(rho)?;
    let sqrt_rho = linalg::sqrt_psd(rho.entries())?;
    let b = sqrt_rho.t().to_owned().dot(&spin_flip()).dot(&sqrt_rho);
    let mut s = linalg::singular_values(&b)?;
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let raw = s[0] - s[1] - s[2] - s[3];
    Ok(MeasureValue {
        kind: MeasureKind::ConcurrenceGeneral,
        value: raw.max(0.0),
        raw,
    })
}

/// Partial transpose on mode B.
pub fn partial_transpose_b(rho: &DensityMatrix) -> Result<CMat> {
    let basis = rho.basis()?;
    let d = basis.dim();
    let mut out = CMat::zeros((d, d));
    for i in 0..d {
        let (ia, ib) = basis.occupations(i)?;
        for j in 0..d {
            let (ja, jb) = basis.occupations(j)?;
            let r = basis.index(ia, jb)?;
            let c = basis.index(ja, ib)?;
            out[(r, c)] = rho.element(i, j);
        }
    }
    Ok(out)
}

/// Clamp below which a tiny negative negativity argument is treated as zero.
const NEGATIVITY_CLAMP: f64 = 1e-12;

/// Logarithmic negativity `log2(1 + 2 |sum of negative eigenvalues|)` of the
/// partial transpose with respect to mode B.
pub fn log_negativity(rho: &DensityMatrix) -> Result<MeasureValue> {
    let pt = partial_transpose_b(rho)?;
    let eigs = linalg::hermitian_eigenvalues(&pt)?;
    let neg_sum: f64 = eigs.iter().filter(|&&e| e < 0.0).sum();
    let mut mag = -neg_sum;
    if mag < NEGATIVITY_CLAMP {
        mag = 0.0;
    }
    let value = (1.0 + 2.0 * mag).log2();
    Ok(MeasureValue {
        kind: MeasureKind::LogNegativity,
        value,
        raw: value,
    })
}
