//! Pairwise entanglement, partial-transpose separability and the bounds
//! `τ_tot ≤ E ≤ C̃` on the total entanglement of a Dicke mixture.

use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;

use crate::asymptotics::binomial;
use crate::correlations::{rescaled_qcd, DickeMixture};
use crate::{Error, Result};

/// Largest atom number for the dense partial-transpose test.
pub const PPT_MAX_ATOMS: usize = 12;
/// Eigenvalues below `-PPT_TOL` witness entanglement.
pub const PPT_TOL: f64 = 1e-10;
/// Allowed negativity of a pair state before it is rejected.
pub const PSD_TOL: f64 = 1e-12;
/// Eigenvalues of a pair state below this are treated as exact zeros.
pub const RANK_TOL: f64 = 1e-14;

/// Two-qubit reduced state in the basis `{ee, eg, ge, gg}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairState {
    pub rho: Matrix4<Complex64>,
}

impl PairState {
    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.rho
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

/// Reduced state of any two qubits of a Dicke mixture.
///
/// With `N = M(M − 1)` the nonzero entries are
/// `ρ_ee = Σ p_n n(n − 1)/N`, `ρ_gg = Σ p_n (M − n)(M − n − 1)/N`, and
/// `ρ_eg,eg = ρ_ge,ge = ρ_eg,ge = Σ p_n n(M − n)/N`.
pub fn pair_reduction(mix: &DickeMixture) -> Result<PairState> {
    let m = mix.m();
    if m < 2 {
        return Err(Error::TooFewAtoms {
            measure: "pair reduction",
            min: 2,
            m,
        });
    }
    let norm = (m * (m - 1)) as f64;
    let (mut ee, mut gg, mut mixed) = (0.0, 0.0, 0.0);
    for (n, &p) in mix.weights().iter().enumerate() {
        let excited = n as f64;
        let ground = (m - n) as f64;
        ee += p * excited * (excited - 1.0) / norm;
        gg += p * ground * (ground - 1.0) / norm;
        mixed += p * excited * ground / norm;
    }
    let mut rho = Matrix4::zeros();
    rho[(0, 0)] = Complex64::new(ee, 0.0);
    rho[(1, 1)] = Complex64::new(mixed, 0.0);
    rho[(2, 2)] = Complex64::new(mixed, 0.0);
    rho[(1, 2)] = Complex64::new(mixed, 0.0);
    rho[(2, 1)] = Complex64::new(mixed, 0.0);
    rho[(3, 3)] = Complex64::new(gg, 0.0);
    Ok(PairState { rho })
}

/// Wootters concurrence `max(0, √μ1 − √μ2 − √μ3 − √μ4)`, with `μ_i` the
/// eigenvalues of `ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)` in descending order.
///
/// The `√μ_i` are the singular values of `√ρ (σ_y⊗σ_y) √ρ*`, which avoids
/// taking square roots of eigenvalues that are zero up to rounding.
pub fn concurrence(pair: &PairState) -> Result<f64> {
    let eigen = pair.rho.symmetric_eigen();
    let min = eigen.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -PSD_TOL {
        return Err(Error::NotPositive { min_eigenvalue: min });
    }
    let roots = eigen.eigenvalues.map(|v| {
        let v = if v < RANK_TOL { 0.0 } else { v };
        Complex64::new(v.sqrt(), 0.0)
    });
    let sqrt_rho = eigen.eigenvectors * Matrix4::from_diagonal(&roots) * eigen.eigenvectors.adjoint();
    let x = sqrt_rho * spin_flip() * sqrt_rho.conjugate();
    let mut sv: Vec<f64> = x.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    Ok((sv[0] - sv[1] - sv[2] - sv[3]).max(0.0))
}

/// `σ_y ⊗ σ_y`, real in this basis.
fn spin_flip() -> Matrix4<Complex64> {
    let mut flip = Matrix4::zeros();
    flip[(0, 3)] = Complex64::new(-1.0, 0.0);
    flip[(3, 0)] = Complex64::new(-1.0, 0.0);
    flip[(1, 2)] = Complex64::new(1.0, 0.0);
    flip[(2, 1)] = Complex64::new(1.0, 0.0);
    flip
}

/// Total two-tangle per qubit, `(M − 1) C²` for permutation-symmetric states.
pub fn total_two_tangle(mix: &DickeMixture) -> Result<f64> {
    let c = concurrence(&pair_reduction(mix)?)?;
    Ok((mix.m() - 1) as f64 * c * c)
}

/// Outcome of the partial-transpose test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PptVerdict {
    pub min_eigenvalue: f64,
    /// `min_eigenvalue < -PPT_TOL`.
    pub entangled: bool,
    /// Negative but within tolerance; reported as separable.
    pub marginal: bool,
}

/// Dense `2^M` matrix of the mixture with the first `⌊M/2⌋` qubits
/// transposed. Qubit 0 is the most significant bit; bit value 1 means
/// excited.
pub fn partial_transpose_dense(mix: &DickeMixture) -> Result<DMatrix<f64>> {
    let m = mix.m();
    if m > PPT_MAX_ATOMS {
        return Err(Error::DimensionCap {
            dim: 1 << m.min(63),
            cap: 1 << PPT_MAX_ATOMS,
        });
    }
    let dim = 1usize << m;
    let b_bits = m - m / 2;
    let b_mask = (1usize << b_bits) - 1;
    // ρ_{ij} = p_n / C(M, n) when both indices carry n excitations
    let entry: Vec<f64> = mix
        .weights()
        .iter()
        .enumerate()
        .map(|(n, p)| p / binomial(m, n))
        .collect();
    let mut out = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        let (a, b) = (i >> b_bits, i & b_mask);
        for j in 0..dim {
            let (a2, b2) = (j >> b_bits, j & b_mask);
            // ρ^Γ[(a,b),(a2,b2)] = ρ[(a2,b),(a,b2)]
            let row = (a2.count_ones() + b.count_ones()) as usize;
            let col = (a.count_ones() + b2.count_ones()) as usize;
            if row == col {
                out[(i, j)] = entry[row];
            }
        }
    }
    Ok(out)
}

/// Partial-transpose test across the `⌊M/2⌋ | ⌈M/2⌉` cut.
pub fn ppt_verdict(mix: &DickeMixture) -> Result<PptVerdict> {
    let min_eigenvalue = partial_transpose_dense(mix)?
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    Ok(PptVerdict {
        min_eigenvalue,
        entangled: min_eigenvalue < -PPT_TOL,
        marginal: (-PPT_TOL..0.0).contains(&min_eigenvalue),
    })
}

pub fn ppt_entangled(mix: &DickeMixture) -> Result<bool> {
    Ok(ppt_verdict(mix)?.entangled)
}

/// `(τ_tot, C̃)`, lower and upper bounds on the total entanglement.
pub fn entanglement_bounds(mix: &DickeMixture) -> Result<(f64, f64)> {
    Ok((total_two_tangle(mix)?, rescaled_qcd(mix)?))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntanglementReport {
    pub concurrence: f64,
    pub tau_tot: f64,
    pub ppt: Option<PptVerdict>,
    pub lower_bound: f64,
    pub upper_bound: f64,
}

/// Pairwise measures and bounds; the dense PPT test only when requested.
pub fn entanglement_report(mix: &DickeMixture, with_ppt: bool) -> Result<EntanglementReport> {
    let c = concurrence(&pair_reduction(mix)?)?;
    let tau_tot = (mix.m() - 1) as f64 * c * c;
    Ok(EntanglementReport {
        concurrence: c,
        tau_tot,
        ppt: if with_ppt { Some(ppt_verdict(mix)?) } else { None },
        lower_bound: tau_tot,
        upper_bound: rescaled_qcd(mix)?,
    })
}
