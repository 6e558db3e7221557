//! Closed forms: the first excited multiplet exactly, and the `k ≫ M`
//! regime where the sector Hamiltonian reduces to a rotated spin `M/2`.
//!
//! None of these functions check that the asymptotic regime applies; they
//! return raw formula values everywhere.

use std::f64::consts::FRAC_PI_2;

use crate::model::{ModelFamily, ModelParams};

/// A mixing angle in `[0, π]`.
///
/// `degenerate` is set when the angle is undefined (resonance with zero
/// coupling); the angle is then reported as `π/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixingAngle {
    pub beta: f64,
    pub degenerate: bool,
}

impl MixingAngle {
    /// `(1 − 1/η) / √((1 − 1/η)² + x)` with `x` the coupling term.
    fn from_terms(detuning: f64, coupling: f64) -> Self {
        let radius = (detuning * detuning + coupling).sqrt();
        if radius == 0.0 {
            return Self {
                beta: FRAC_PI_2,
                degenerate: true,
            };
        }
        Self {
            beta: (detuning / radius).clamp(-1.0, 1.0).acos(),
            degenerate: false,
        }
    }

    /// `cos(β/2)`.
    pub fn c(&self) -> f64 {
        (0.5 * self.beta).cos()
    }

    /// `sin(β/2)`.
    pub fn s(&self) -> f64 {
        (0.5 * self.beta).sin()
    }
}

fn reduced_detuning(eta: f64) -> f64 {
    1.0 - 1.0 / eta
}

/// Exact lowest energy of the one-excitation sector.
pub fn energy_e1_closed(params: &ModelParams) -> f64 {
    let (eta, g) = (params.eta(), params.g());
    let wz = params.omega_z();
    let d = reduced_detuning(eta);
    params.omega_c() / 2.0 + wz / 2.0 * (1.0 - params.m() as f64)
        - wz / 2.0 * (d * d + 4.0 * g * g / eta).sqrt()
}

/// Mixing angle `β` of the one-excitation ground state
/// `s|0, 1 − M/2⟩ − c|1, −M/2⟩`.
pub fn mixing_angle_beta1(params: &ModelParams) -> MixingAngle {
    let (eta, g) = (params.eta(), params.g());
    MixingAngle::from_terms(reduced_detuning(eta), 4.0 * g * g / eta)
}

/// Mixing angle `β_k` of the asymptotic sector-`k` ground state.
pub fn mixing_angle_betak(params: &ModelParams, k: usize) -> MixingAngle {
    let (eta, g) = (params.eta(), params.g());
    let m = params.m() as f64;
    MixingAngle::from_terms(reduced_detuning(eta), 4.0 * g * g * k as f64 / (eta * m))
}

/// `Ẽ_k`: lowest level of the large-`k` approximate Hamiltonian.
pub fn approx_energy(params: &ModelParams, k: usize) -> f64 {
    let (eta, g) = (params.eta(), params.g());
    let m = params.m() as f64;
    let d = reduced_detuning(eta);
    params.omega_c() * (k as f64 - m / 2.0)
        - params.omega_z() * m / 2.0 * (d * d + 4.0 * g * g * k as f64 / (eta * m)).sqrt()
}

/// Large-`k` ground state of one sector: a spin coherent state whose
/// Dicke weights are binomial.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticGround {
    pub k: usize,
    pub angle: MixingAngle,
    /// `α_kn = C(M, n) c_k^{2(M−n)} s_k^{2n}` for `n = 0..=M`.
    pub weights: Vec<f64>,
    pub energy: f64,
}

pub fn approx_weights(params: &ModelParams, k: usize) -> AsymptoticGround {
    let angle = mixing_angle_betak(params, k);
    let m = params.m();
    let (c2, s2) = (angle.c().powi(2), angle.s().powi(2));
    let weights = (0..=m)
        .map(|n| binomial(m, n) * c2.powi((m - n) as i32) * s2.powi(n as i32))
        .collect();
    AsymptoticGround {
        k,
        angle,
        weights,
        energy: approx_energy(params, k),
    }
}

/// `g̃_k`, where `Ẽ_k` and `Ẽ_{k+1}` cross.
///
/// Evaluated as `√(x + √(x² + (1 − 1/η)²))` with `x = 2k/(ηM)`, which is
/// algebraically the usual form and stays finite at `k = 0`.
pub fn approx_crossing(family: &ModelFamily, k: usize) -> f64 {
    let eta = family.eta();
    let x = 2.0 * k as f64 / (eta * family.m() as f64);
    let d = reduced_detuning(eta);
    (x + (x * x + d * d).sqrt()).sqrt()
}

/// `k̃* = g²ηM/4`, unrounded.
pub fn approx_kstar(params: &ModelParams) -> f64 {
    let g = params.g();
    g * g * params.eta() * params.m() as f64 / 4.0
}

/// Large-`k` QCD from binomial weights:
/// `min{Σ α²β_n, Σ α²γ_n}` with `β_n = 4(n/M)(1 − n/M)` and
/// `γ_n = 1 − 2 (s/c)² ((M − n)/M)²`.
pub fn approx_qcd(params: &ModelParams, k: usize) -> f64 {
    let ground = approx_weights(params, k);
    let m = params.m() as f64;
    let t2 = (ground.angle.s() / ground.angle.c()).powi(2);
    let (mut first, mut second) = (0.0, 0.0);
    for (n, &a) in ground.weights.iter().enumerate() {
        let x = n as f64 / m;
        first += a * a * 4.0 * x * (1.0 - x);
        second += a * a * (1.0 - 2.0 * t2 * (1.0 - x).powi(2));
    }
    first.min(second)
}

/// Large-`k` rescaled QCD: `min{Σ α β_n, Σ α γ'_n}` with
/// `γ'_n = 1 − 2 (s/c) ((M − n)/M)^{3/2} ((n + 1)/M)^{1/2}`.
pub fn approx_rescaled_qcd(params: &ModelParams, k: usize) -> f64 {
    let ground = approx_weights(params, k);
    let mf = params.m() as f64;
    let t = ground.angle.s() / ground.angle.c();
    let (mut first, mut second) = (0.0, 0.0);
    for (n, &a) in ground.weights.iter().enumerate() {
        let x = n as f64 / mf;
        first += a * 4.0 * x * (1.0 - x);
        second += a * (1.0 - 2.0 * t * (1.0 - x).powf(1.5) * ((n as f64 + 1.0) / mf).sqrt());
    }
    first.min(second)
}

pub(crate) fn binomial(m: usize, n: usize) -> f64 {
    if n > m {
        return 0.0;
    }
    let n = n.min(m - n);
    (0..n).fold(1.0, |acc, i| acc * (m - i) as f64 / (i + 1) as f64)
}
