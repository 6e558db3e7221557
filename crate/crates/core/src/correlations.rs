//! Dicke-basis utilities and the quantum correlation distance (QCD).
//!
//! Tracing the photons out of a sector eigenvector leaves a mixture of
//! Dicke states `ρ = Σ p_n |D^M_n⟩⟨D^M_n|`: each atomic excitation number
//! `n` is tagged by its own photon number `k − n`, so no coherences survive.
//! On such mixtures the correlation matrices
//! `A^μ_ij = tr[ρ σ^μ_i ρ σ^μ_j]` are diagonal, equal for every qubit `μ`,
//! and have the doubly degenerate spectrum `(λ12, λ12, λ3)`. Everything here
//! works on the `M + 1` weights; [`crate::oracle`] checks it against the
//! literal `2^M`-dimensional definitions.

use num_complex::Complex64;

use crate::model::ModelFamily;
use crate::spectral::{ground_state, SectorEigenpair};
use crate::{Error, Result};

/// Tolerance on `Σ p_n = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-12;
/// QCD values in `[-CLAMP_TOL, 0)` are rounding noise and reported as zero.
pub const CLAMP_TOL: f64 = 1e-14;
/// Bisection tolerance in `g` for [`qcd_crossover`].
pub const CROSSOVER_TOL: f64 = 1e-8;

/// Atomic state diagonal in the Dicke basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DickeMixture {
    m: usize,
    weights: Vec<f64>,
}

impl DickeMixture {
    /// `weights[n]` is the probability of `|D^M_n⟩`; missing trailing
    /// entries are zero.
    pub fn new(m: usize, mut weights: Vec<f64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidWeights("a mixture needs at least one atom".into()));
        }
        if weights.len() > m + 1 {
            return Err(Error::InvalidWeights(format!(
                "{} weights for {} Dicke states",
                weights.len(),
                m + 1
            )));
        }
        if let Some(bad) = weights.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidWeights(format!("negative or non-finite weight {bad}")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidWeights(format!("weights sum to {total}")));
        }
        weights.resize(m + 1, 0.0);
        Ok(Self { m, weights })
    }

    /// The pure Dicke state `|D^M_n⟩`.
    pub fn pure(m: usize, n: usize) -> Result<Self> {
        if n > m {
            return Err(Error::IndexOutOfRange { index: n, m });
        }
        let mut w = vec![0.0; m + 1];
        w[n] = 1.0;
        Self::new(m, w)
    }

    /// Reduced atomic state of a sector eigenvector: `p_n = a_n²`.
    pub fn from_eigenpair(pair: &SectorEigenpair, m: usize) -> Result<Self> {
        Self::new(m, pair.amplitudes.iter().map(|a| a * a).collect())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Index of the single populated Dicke state, if the mixture is pure.
    pub fn pure_index(&self) -> Option<usize> {
        self.weights.iter().position(|&p| p == 1.0)
    }
}

/// Alias matching the operation name used in the rest of the crate.
pub fn reduce_to_dicke_mixture(pair: &SectorEigenpair, m: usize) -> Result<DickeMixture> {
    DickeMixture::from_eigenpair(pair, m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

    /// Axis from its conventional index 1, 2 or 3.
    pub fn from_index(i: usize) -> Option<Self> {
        match i {
            1 => Some(Self::X),
            2 => Some(Self::Y),
            3 => Some(Self::Z),
            _ => None,
        }
    }
}

/// `⟨D^M_n| σ^μ_axis |D^M_n'⟩`, the same for every qubit `μ`.
///
/// Qubit states are `σ_3|e⟩ = |e⟩`, `σ_3|g⟩ = −|g⟩`.
pub fn pauli_dicke_element(m: usize, n: usize, nprime: usize, axis: PauliAxis) -> Result<Complex64> {
    for index in [n, nprime] {
        if index > m {
            return Err(Error::IndexOutOfRange { index, m });
        }
    }
    let mf = m as f64;
    // amplitude for lowering |D_{n+1}⟩ → |D_n⟩ (and its transpose)
    let ladder = |low: usize| (((m - low) * (low + 1)) as f64).sqrt() / mf;
    let value = match axis {
        PauliAxis::X if n + 1 == nprime => Complex64::new(ladder(n), 0.0),
        PauliAxis::X if nprime + 1 == n => Complex64::new(ladder(nprime), 0.0),
        PauliAxis::Y if n + 1 == nprime => Complex64::new(0.0, ladder(n)),
        PauliAxis::Y if nprime + 1 == n => Complex64::new(0.0, -ladder(nprime)),
        PauliAxis::Z if n == nprime => Complex64::new(2.0 * n as f64 / mf - 1.0, 0.0),
        _ => Complex64::new(0.0, 0.0),
    };
    Ok(value)
}

/// How the weights enter the correlation-matrix eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightMode {
    /// `ρ` itself.
    Linear,
    /// `√ρ`, i.e. `p_n → √p_n`.
    Sqrt,
}

/// Distinct eigenvalues of the single-qubit correlation matrix `A^μ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AEigenvalues {
    /// Doubly degenerate transverse eigenvalue.
    pub lambda12: f64,
    /// Longitudinal eigenvalue.
    pub lambda3: f64,
}

impl AEigenvalues {
    pub fn max(&self) -> f64 {
        self.lambda12.max(self.lambda3)
    }
}

/// `λ12 = 2 Σ q_n q_{n+1} (M − n)(n + 1)/M²` and `λ3 = Σ q_n² (2n/M − 1)²`
/// with `q = p` or `q = √p`.
pub fn a_matrix_eigenvalues(mix: &DickeMixture, mode: WeightMode) -> AEigenvalues {
    let m = mix.m;
    let mf = m as f64;
    let q: Vec<f64> = match mode {
        WeightMode::Linear => mix.weights.clone(),
        WeightMode::Sqrt => mix.weights.iter().map(|p| p.sqrt()).collect(),
    };
    let lambda12 = 2.0
        * (0..m)
            .map(|n| q[n] * q[n + 1] * ((m - n) * (n + 1)) as f64 / (mf * mf))
            .sum::<f64>();
    let lambda3 = q
        .iter()
        .enumerate()
        .map(|(n, qn)| qn * qn * (2.0 * n as f64 / mf - 1.0).powi(2))
        .sum();
    AEigenvalues { lambda12, lambda3 }
}

/// `tr ρ² = Σ p_n²`.
pub fn purity(mix: &DickeMixture) -> f64 {
    mix.weights.iter().map(|p| p * p).sum()
}

fn clamp_correlation(value: f64) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -CLAMP_TOL {
        Ok(0.0)
    } else {
        Err(Error::NegativeCorrelation(value))
    }
}

/// QCD per qubit: `tr ρ² − max(λ12, λ3)`.
pub fn qcd(mix: &DickeMixture) -> Result<f64> {
    clamp_correlation(purity(mix) - a_matrix_eigenvalues(mix, WeightMode::Linear).max())
}

/// Rescaled QCD `C(√ρ) = 1 − max(λ12, λ3)` in the square-root mode.
pub fn rescaled_qcd(mix: &DickeMixture) -> Result<f64> {
    // tr (√ρ)² = Σ p_n
    let trace: f64 = mix.weights.iter().sum();
    clamp_correlation(trace - a_matrix_eigenvalues(mix, WeightMode::Sqrt).max())
}

/// Purity-normalized QCD `C(ρ) / tr ρ²`, kept for comparison with the
/// rescaled measure.
pub fn naive_qcd(mix: &DickeMixture) -> Result<f64> {
    Ok(qcd(mix)? / purity(mix))
}

/// A pure `M`-qubit state, described either as a Dicke state or through
/// the Bloch vectors `⟨σ^μ⟩` of its qubits.
#[derive(Clone, Debug, PartialEq)]
pub enum PureState {
    Dicke { m: usize, n: usize },
    Bloch(Vec<[f64; 3]>),
}

/// Entanglement distance `1 − (1/M) Σ_μ |⟨σ^μ⟩|²` of a pure state.
pub fn ed_pure(state: &PureState) -> Result<f64> {
    match *state {
        PureState::Dicke { m, n } => {
            if m == 0 || n > m {
                return Err(Error::IndexOutOfRange { index: n, m });
            }
            Ok(dicke_ed(m, n))
        }
        PureState::Bloch(ref vectors) => {
            if vectors.is_empty() {
                return Err(Error::TooFewAtoms {
                    measure: "entanglement distance",
                    min: 1,
                    m: 0,
                });
            }
            let mut total = 0.0;
            for v in vectors {
                let len2 = v.iter().map(|x| x * x).sum::<f64>();
                if !len2.is_finite() || len2 > 1.0 + 1e-12 {
                    return Err(Error::NotNormalized { norm_sq: len2 });
                }
                total += len2.min(1.0);
            }
            Ok(1.0 - total / vectors.len() as f64)
        }
    }
}

/// `4 (n/M)(1 − n/M)`, the entanglement distance of `|D^M_n⟩`.
pub fn dicke_ed(m: usize, n: usize) -> f64 {
    let x = n as f64 / m as f64;
    4.0 * x * (1.0 - x)
}

/// `Σ p_n E(|D^M_n⟩)`: mean entanglement of the states in the mixture.
pub fn average_entanglement(mix: &DickeMixture) -> f64 {
    mix.weights
        .iter()
        .enumerate()
        .map(|(n, p)| p * dicke_ed(mix.m, n))
        .sum()
}

/// Correlation measures of one Dicke mixture.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationReport {
    pub purity: f64,
    pub lambda12: f64,
    pub lambda3: f64,
    pub qcd: f64,
    pub rescaled_qcd: f64,
}

pub fn correlation_report(mix: &DickeMixture) -> Result<CorrelationReport> {
    let a = a_matrix_eigenvalues(mix, WeightMode::Linear);
    Ok(CorrelationReport {
        purity: purity(mix),
        lambda12: a.lambda12,
        lambda3: a.lambda3,
        qcd: qcd(mix)?,
        rescaled_qcd: rescaled_qcd(mix)?,
    })
}

/// Reduced atomic ground state at coupling `g`.
pub fn ground_mixture(family: &ModelFamily, g: f64) -> Result<DickeMixture> {
    let gs = ground_state(&family.at(g)?);
    DickeMixture::from_eigenpair(&gs.eigenpair, family.m())
}

/// `λ12 − λ3` of the ground-state mixture at `g`.
pub fn eigenvalue_gap(family: &ModelFamily, g: f64, mode: WeightMode) -> Result<f64> {
    let a = a_matrix_eigenvalues(&ground_mixture(family, g)?, mode);
    Ok(a.lambda12 - a.lambda3)
}

/// Where the dominant correlation eigenvalue switches from `λ3` to `λ12`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Crossover {
    pub g: f64,
    /// `λ12 − λ3` at [`Crossover::g`].
    pub gap: f64,
    /// Ground-state sectors just below and just above the bracketed point.
    pub sectors: (usize, usize),
}

impl Crossover {
    /// The sign change happened inside one sector rather than at a jump
    /// between sectors.
    pub fn is_continuous(&self) -> bool {
        self.sectors.0 == self.sectors.1
    }
}

/// Bisects `λ12(g) − λ3(g)` along the ground-state path down to
/// [`CROSSOVER_TOL`] in `g`.
///
/// The ground state changes sector at each level crossing, so the gap is
/// only piecewise continuous; [`Crossover::sectors`] tells the two cases
/// apart.
pub fn qcd_crossover(family: &ModelFamily, bracket: (f64, f64), mode: WeightMode) -> Result<Crossover> {
    let (mut lo, mut hi) = bracket;
    let no_root = Error::NoCrossover { lo, hi };
    if lo >= hi || lo.is_nan() || hi.is_nan() {
        return Err(no_root);
    }
    let f_lo = eigenvalue_gap(family, lo, mode)?;
    let f_hi = eigenvalue_gap(family, hi, mode)?;
    if f_lo.signum() == f_hi.signum() || f_lo == 0.0 || f_hi == 0.0 {
        if f_lo == 0.0 || f_hi == 0.0 {
            let g = if f_lo == 0.0 { lo } else { hi };
            let k = ground_state(&family.at(g)?).kstar;
            return Ok(Crossover { g, gap: 0.0, sectors: (k, k) });
        }
        return Err(no_root);
    }
    let lo_sign = f_lo.signum();
    while hi - lo > CROSSOVER_TOL {
        let mid = 0.5 * (lo + hi);
        let f = eigenvalue_gap(family, mid, mode)?;
        if f.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let g = 0.5 * (lo + hi);
    let sectors = (
        ground_state(&family.at(lo)?).kstar,
        ground_state(&family.at(hi)?).kstar,
    );
    Ok(Crossover {
        g,
        gap: eigenvalue_gap(family, g, mode)?,
        sectors,
    })
}
