//! Brute-force reference computations.
//!
//! Everything here works in the explicit product space of a truncated
//! photon mode and `M` distinguishable qubits, with no use of the sector
//! decomposition or of Dicke-basis shortcuts. Basis index
//! `photons · 2^M + bits`, where qubit `μ` is bit `M − 1 − μ` and a set bit
//! means the qubit is excited.

use faer::{Mat, Side};
use nalgebra::{DMatrix, Matrix3, Matrix4};
use num_complex::Complex64;

use crate::asymptotics::approx_kstar;
use crate::correlations::{DickeMixture, PauliAxis};
use crate::model::ModelParams;
use crate::{Error, Result};

/// Largest full-space dimension `(n_ph_max + 1) · 2^M` accepted.
pub const FULL_DIM_CAP: usize = 5000;
/// Largest qubit count for the literal QCD definition.
pub const QCD_MAX_ATOMS: usize = 10;
/// Allowed negativity of an input density matrix.
pub const DENSITY_PSD_TOL: f64 = 1e-10;

/// Dense Hamiltonian on the truncated photon ⊗ spin space.
#[derive(Clone, Debug)]
pub struct FullSpace {
    pub params: ModelParams,
    pub n_ph_max: usize,
    /// `H`, real symmetric.
    pub hamiltonian: Mat<f64>,
    /// Diagonal of `H_I = ω_c (a†a + S_3)`.
    pub conserved: Vec<f64>,
}

impl FullSpace {
    pub fn m(&self) -> usize {
        self.params.m()
    }

    pub fn dim(&self) -> usize {
        self.conserved.len()
    }

    /// `H_I` as a dense matrix.
    pub fn conserved_matrix(&self) -> Mat<f64> {
        Mat::from_fn(self.dim(), self.dim(), |i, j| if i == j { self.conserved[i] } else { 0.0 })
    }

    /// U(1) generator `T = H − H_I + (Δ M / 2) I`.
    pub fn symmetry_generator(&self) -> Mat<f64> {
        let shift = self.params.delta() * self.m() as f64 / 2.0;
        Mat::from_fn(self.dim(), self.dim(), |i, j| {
            let mut v = self.hamiltonian[(i, j)];
            if i == j {
                v += shift - self.conserved[i];
            }
            v
        })
    }

    /// Index of the state with no photons and every qubit in `|g⟩`.
    pub fn vacuum_index(&self) -> usize {
        0
    }

    /// Total excitation number of a basis index.
    pub fn excitations(&self, index: usize) -> usize {
        let spins = 1usize << self.m();
        index / spins + (index % spins).count_ones() as usize
    }
}

/// Builds `H = ω_c a†a + ω_z S_3 − (λ/√M)(a†S_− + aS_+)` with photon
/// numbers `0..=n_ph_max`.
pub fn build_full(params: &ModelParams, n_ph_max: usize) -> Result<FullSpace> {
    let m = params.m();
    let spins = 1usize
        .checked_shl(m as u32)
        .filter(|_| m < usize::BITS as usize)
        .ok_or(Error::DimensionCap {
            dim: usize::MAX,
            cap: FULL_DIM_CAP,
        })?;
    let dim = (n_ph_max + 1).saturating_mul(spins);
    if dim > FULL_DIM_CAP {
        return Err(Error::DimensionCap {
            dim,
            cap: FULL_DIM_CAP,
        });
    }
    let mut h = Mat::<f64>::zeros(dim, dim);
    let mut conserved = vec![0.0; dim];
    let coupling = params.lambda() / (m as f64).sqrt();
    for photons in 0..=n_ph_max {
        for bits in 0..spins {
            let i = photons * spins + bits;
            let s3 = bits.count_ones() as f64 - m as f64 / 2.0;
            h[(i, i)] = params.omega_c() * photons as f64 + params.omega_z() * s3;
            conserved[i] = params.omega_c() * (photons as f64 + s3);
            if photons == n_ph_max {
                continue;
            }
            // a† σ_−^μ: de-excite qubit μ, add a photon
            for bit in 0..m {
                if bits >> bit & 1 == 1 {
                    let j = (photons + 1) * spins + (bits ^ (1 << bit));
                    let amp = -coupling * ((photons + 1) as f64).sqrt();
                    h[(j, i)] += amp;
                    h[(i, j)] += amp;
                }
            }
        }
    }
    Ok(FullSpace {
        params: *params,
        n_ph_max,
        hamiltonian: h,
        conserved,
    })
}

/// Cutoff `max(4 k̃*, 12)` used when the oracle stands in for the sector
/// solver.
pub fn default_cutoff(params: &ModelParams) -> usize {
    ((4.0 * approx_kstar(params)).ceil() as usize).max(12)
}

/// Frobenius norm of `AB − BA`.
pub fn commutator_norm(a: &Mat<f64>, b: &Mat<f64>) -> f64 {
    (a * b - b * a).norm_l2()
}

pub fn frobenius(a: &Mat<f64>) -> f64 {
    a.norm_l2()
}

/// All eigenvalues of the truncated Hamiltonian, ascending.
pub fn full_spectrum(full: &FullSpace) -> Vec<f64> {
    full.hamiltonian
        .self_adjoint_eigenvalues(Side::Lower)
        .expect("symmetric eigenvalue decomposition converges")
}

/// Lowest eigenvalue and a unit eigenvector of the truncated Hamiltonian.
pub fn full_ground(full: &FullSpace) -> (f64, Vec<f64>) {
    let evd = full
        .hamiltonian
        .self_adjoint_eigen(Side::Lower)
        .expect("symmetric eigendecomposition converges");
    let energy = evd.S().column_vector()[0];
    let u = evd.U();
    let vector = (0..full.dim()).map(|i| u[(i, 0)]).collect();
    (energy, vector)
}

/// `tr_ph |ψ⟩⟨ψ|` as a `2^M × 2^M` matrix.
pub fn reduce_atoms_full(full: &FullSpace, state: &[f64]) -> Result<DMatrix<Complex64>> {
    let norm_sq: f64 = state.iter().map(|x| x * x).sum();
    if (norm_sq - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { norm_sq });
    }
    let spins = 1usize << full.m();
    let mut rho = DMatrix::<Complex64>::zeros(spins, spins);
    for block in state.chunks(spins) {
        for i in 0..spins {
            if block[i] == 0.0 {
                continue;
            }
            for j in 0..spins {
                rho[(i, j)] += Complex64::new(block[i] * block[j], 0.0);
            }
        }
    }
    Ok(rho)
}

/// `|D^M_n⟩` built by summing over every placement of `n` excitations.
pub fn dicke_vector(m: usize, n: usize) -> Vec<f64> {
    let spins = 1usize << m;
    let count = (0..spins).filter(|b| b.count_ones() as usize == n).count();
    let amp = 1.0 / (count as f64).sqrt();
    (0..spins)
        .map(|b| if b.count_ones() as usize == n { amp } else { 0.0 })
        .collect()
}

/// Dense `Σ p_n |D^M_n⟩⟨D^M_n|`.
pub fn dicke_mixture_matrix(mix: &DickeMixture) -> DMatrix<Complex64> {
    let m = mix.m();
    let spins = 1usize << m;
    let mut rho = DMatrix::<Complex64>::zeros(spins, spins);
    for (n, &p) in mix.weights().iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let d = dicke_vector(m, n);
        for i in 0..spins {
            for j in 0..spins {
                rho[(i, j)] += Complex64::new(p * d[i] * d[j], 0.0);
            }
        }
    }
    rho
}

/// Dicke populations `⟨D_n|ρ|D_n⟩` and the Frobenius norm of everything
/// that a Dicke mixture with those populations fails to capture.
pub fn dicke_projection(rho: &DMatrix<Complex64>, m: usize) -> (Vec<f64>, f64) {
    let vectors: Vec<Vec<f64>> = (0..=m).map(|n| dicke_vector(m, n)).collect();
    let weights: Vec<f64> = vectors
        .iter()
        .map(|d| {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..d.len() {
                for j in 0..d.len() {
                    acc += rho[(i, j)] * d[i] * d[j];
                }
            }
            acc.re
        })
        .collect();
    let mut residual = rho.clone();
    for (d, &p) in vectors.iter().zip(&weights) {
        for i in 0..d.len() {
            for j in 0..d.len() {
                residual[(i, j)] -= Complex64::new(p * d[i] * d[j], 0.0);
            }
        }
    }
    (weights, residual.norm())
}

/// `σ^μ_axis |bits⟩ = phase · |image⟩`.
fn pauli_action(bits: usize, qubit: usize, m: usize, axis: PauliAxis) -> (usize, Complex64) {
    let mask = 1usize << (m - 1 - qubit);
    let excited = bits & mask != 0;
    match axis {
        PauliAxis::X => (bits ^ mask, Complex64::new(1.0, 0.0)),
        // σ_y|e⟩ = i|g⟩, σ_y|g⟩ = −i|e⟩
        PauliAxis::Y => (
            bits ^ mask,
            if excited {
                Complex64::new(0.0, 1.0)
            } else {
                Complex64::new(0.0, -1.0)
            },
        ),
        PauliAxis::Z => (bits, Complex64::new(if excited { 1.0 } else { -1.0 }, 0.0)),
    }
}

/// `ρ σ^μ_axis`.
fn times_pauli(rho: &DMatrix<Complex64>, qubit: usize, m: usize, axis: PauliAxis) -> DMatrix<Complex64> {
    let dim = rho.nrows();
    let mut out = DMatrix::<Complex64>::zeros(dim, dim);
    for b in 0..dim {
        let (c, phase) = pauli_action(b, qubit, m, axis);
        for a in 0..dim {
            out[(a, b)] = rho[(a, c)] * phase;
        }
    }
    out
}

/// `A^μ_ij = tr[ρ σ^μ_i ρ σ^μ_j]`.
pub fn correlation_matrix(rho: &DMatrix<Complex64>, qubit: usize, m: usize) -> Matrix3<Complex64> {
    let products: Vec<DMatrix<Complex64>> = PauliAxis::ALL
        .iter()
        .map(|&axis| times_pauli(rho, qubit, m, axis))
        .collect();
    let dim = rho.nrows();
    Matrix3::from_fn(|i, j| {
        let mut acc = Complex64::new(0.0, 0.0);
        for a in 0..dim {
            for b in 0..dim {
                acc += products[i][(a, b)] * products[j][(b, a)];
            }
        }
        acc
    })
}

/// Literal-definition QCD values.
#[derive(Clone, Debug)]
pub struct GeneralQcd {
    pub qcd: f64,
    pub rescaled_qcd: f64,
    /// `A^μ(ρ)` for every qubit.
    pub a_matrices: Vec<Matrix3<Complex64>>,
    /// `A^μ(√ρ)` for every qubit.
    pub a_matrices_sqrt: Vec<Matrix3<Complex64>>,
}

fn hermitian_max_eigenvalue(a: &Matrix3<Complex64>) -> f64 {
    let h = (a + a.adjoint()) * Complex64::new(0.5, 0.0);
    h.symmetric_eigenvalues().iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn qcd_literal(rho: &DMatrix<Complex64>, m: usize) -> (f64, Vec<Matrix3<Complex64>>) {
    let purity = (rho * rho).trace().re;
    let mats: Vec<Matrix3<Complex64>> = (0..m).map(|mu| correlation_matrix(rho, mu, m)).collect();
    let mean_max = mats.iter().map(hermitian_max_eigenvalue).sum::<f64>() / m as f64;
    (purity - mean_max, mats)
}

/// Eigenvalues of a density matrix below this are treated as exact zeros.
pub const RANK_TOL: f64 = 1e-14;

/// Principal square root of a PSD Hermitian matrix; eigenvalues under
/// [`RANK_TOL`] are set to zero.
pub fn psd_sqrt(rho: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    let eigen = rho.clone().symmetric_eigen();
    let min = eigen.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -DENSITY_PSD_TOL {
        return Err(Error::NotPositive { min_eigenvalue: min });
    }
    let roots = eigen
        .eigenvalues
        .map(|v| Complex64::new(if v < RANK_TOL { 0.0 } else { v.sqrt() }, 0.0));
    Ok(&eigen.eigenvectors * DMatrix::from_diagonal(&roots) * eigen.eigenvectors.adjoint())
}

/// `C(ρ)` and `C(√ρ)` straight from the definitions, for any `M`-qubit
/// density matrix with `M ≤ QCD_MAX_ATOMS`.
pub fn qcd_general(rho: &DMatrix<Complex64>, m: usize) -> Result<GeneralQcd> {
    if m == 0 || m > QCD_MAX_ATOMS || rho.nrows() != 1 << m || !rho.is_square() {
        return Err(Error::DimensionCap {
            dim: rho.nrows(),
            cap: 1 << QCD_MAX_ATOMS,
        });
    }
    let root = psd_sqrt(rho)?;
    let (qcd, a_matrices) = qcd_literal(rho, m);
    let (rescaled_qcd, a_matrices_sqrt) = qcd_literal(&root, m);
    Ok(GeneralQcd {
        qcd,
        rescaled_qcd,
        a_matrices,
        a_matrices_sqrt,
    })
}

/// Explicit partial trace onto qubits `(first, second)`, basis
/// `{ee, eg, ge, gg}`.
pub fn pair_reduction_full(rho: &DMatrix<Complex64>, m: usize, first: usize, second: usize) -> Matrix4<Complex64> {
    assert!(first != second && first < m && second < m);
    let (mask1, mask2) = (1usize << (m - 1 - first), 1usize << (m - 1 - second));
    let label = |bits: usize| 2 * usize::from(bits & mask1 == 0) + usize::from(bits & mask2 == 0);
    let rest = |bits: usize| bits & !(mask1 | mask2);
    let dim = rho.nrows();
    let mut out = Matrix4::<Complex64>::zeros();
    for i in 0..dim {
        for j in 0..dim {
            if rest(i) == rest(j) {
                out[(label(i), label(j))] += rho[(i, j)];
            }
        }
    }
    out
}

/// `1 − (1/M) Σ_μ Σ_j |⟨ψ|σ^μ_j|ψ⟩|²` for a state vector on `M` qubits.
pub fn ed_state_vector(psi: &[Complex64], m: usize) -> Result<f64> {
    let norm_sq: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    if (norm_sq - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { norm_sq });
    }
    let mut total = 0.0;
    for mu in 0..m {
        for axis in PauliAxis::ALL {
            let mut expect = Complex64::new(0.0, 0.0);
            for (b, amp) in psi.iter().enumerate() {
                let (c, phase) = pauli_action(b, mu, m, axis);
                expect += psi[c].conj() * phase * amp;
            }
            total += expect.norm_sqr();
        }
    }
    Ok(1.0 - total / m as f64)
}

/// Ground state computed entirely by the oracle.
#[derive(Clone, Debug)]
pub struct ReferenceGround {
    pub energy: f64,
    /// Excitation number read off `⟨H_I⟩`.
    pub kstar: usize,
    pub cutoff: usize,
    pub atoms: DMatrix<Complex64>,
}

/// Ground state on the [`default_cutoff`] space.
pub fn reference_ground(params: &ModelParams) -> Result<ReferenceGround> {
    let cutoff = default_cutoff(params);
    let full = build_full(params, cutoff)?;
    let (energy, vector) = full_ground(&full);
    let mean_k: f64 = vector
        .iter()
        .enumerate()
        .map(|(i, a)| a * a * full.excitations(i) as f64)
        .sum();
    Ok(ReferenceGround {
        energy,
        kstar: mean_k.round() as usize,
        cutoff,
        atoms: reduce_atoms_full(&full, &vector)?,
    })
}
