//! Model parameters and the Hamiltonian restricted to one excitation sector.
//!
//! The Hamiltonian is
//!
//! ```text
//! H = ω_c a†a + ω_z S_3 − (λ/√M)(a† S_− + a S_+)
//! ```
//!
//! and commutes with `H_I = ω_c (a†a + S_3)`. The eigenspace of `H_I` with
//! `k` total excitations is spanned by `|k − n photons, M_3 = n − M/2⟩` for
//! `n = 0..=min(k, M)`, where `n` counts excited atoms. Sector matrices are
//! always stored in that ascending-`n` order.

use crate::tridiag::SymTridiag;
use crate::{Error, Result};

/// Physical couplings of the model plus the derived dimensionless ratios.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    omega_c: f64,
    omega_z: f64,
    lambda: f64,
    m: usize,
}

impl ModelParams {
    /// Validates and stores `(ω_c, ω_z, λ, M)`.
    pub fn new(omega_c: f64, omega_z: f64, lambda: f64, m: usize) -> Result<Self> {
        check_positive("omega_c", omega_c)?;
        check_positive("omega_z", omega_z)?;
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda,
                reason: "coupling must be finite and non-negative",
            });
        }
        if m < 1 {
            return Err(Error::InvalidParameter {
                name: "M",
                value: m as f64,
                reason: "at least one atom is required",
            });
        }
        Ok(Self {
            omega_c,
            omega_z,
            lambda,
            m,
        })
    }

    /// Builds parameters from `ω_c`, `η = ω_z/ω_c` and the dimensionless
    /// coupling `g = λ/√(ω_c ω_z)`.
    pub fn from_dimensionless(omega_c: f64, eta: f64, g: f64, m: usize) -> Result<Self> {
        ModelFamily::from_eta(omega_c, eta, m)?.at(g)
    }

    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }

    pub fn omega_z(&self) -> f64 {
        self.omega_z
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Number of atoms.
    pub fn m(&self) -> usize {
        self.m
    }

    /// `η = ω_z / ω_c`.
    pub fn eta(&self) -> f64 {
        self.omega_z / self.omega_c
    }

    /// `g = λ / √(ω_c ω_z)`.
    pub fn g(&self) -> f64 {
        self.lambda / (self.omega_c * self.omega_z).sqrt()
    }

    /// Detuning `Δ = ω_z − ω_c`.
    pub fn delta(&self) -> f64 {
        self.omega_z - self.omega_c
    }

    /// The coupling-free part of the parameters.
    pub fn family(&self) -> ModelFamily {
        ModelFamily {
            omega_c: self.omega_c,
            omega_z: self.omega_z,
            m: self.m,
        }
    }
}

/// Model parameters with the coupling left open, for scans over `g`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelFamily {
    omega_c: f64,
    omega_z: f64,
    m: usize,
}

impl ModelFamily {
    pub fn new(omega_c: f64, omega_z: f64, m: usize) -> Result<Self> {
        ModelParams::new(omega_c, omega_z, 0.0, m).map(|p| p.family())
    }

    pub fn from_eta(omega_c: f64, eta: f64, m: usize) -> Result<Self> {
        check_positive("eta", eta)?;
        Self::new(omega_c, eta * omega_c, m)
    }

    /// Fixes the dimensionless coupling `g`.
    pub fn at(&self, g: f64) -> Result<ModelParams> {
        if !g.is_finite() || g < 0.0 {
            return Err(Error::InvalidParameter {
                name: "g",
                value: g,
                reason: "coupling must be finite and non-negative",
            });
        }
        ModelParams::new(
            self.omega_c,
            self.omega_z,
            g * (self.omega_c * self.omega_z).sqrt(),
            self.m,
        )
    }

    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }

    pub fn omega_z(&self) -> f64 {
        self.omega_z
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn eta(&self) -> f64 {
        self.omega_z / self.omega_c
    }
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and strictly positive",
        })
    }
}

/// Dimension of the excitation-`k` sector: `min(k + 1, M + 1)`.
pub fn sector_dim(k: usize, m: usize) -> usize {
    k.min(m) + 1
}

/// Basis of the excitation-`k` sector; index `n` is the number of excited
/// atoms and the photon number is `k − n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SectorBasis {
    pub k: usize,
    pub m: usize,
}

impl SectorBasis {
    pub fn new(k: usize, m: usize) -> Self {
        Self { k, m }
    }

    pub fn dim(&self) -> usize {
        sector_dim(self.k, self.m)
    }

    pub fn photons(&self, n: usize) -> usize {
        debug_assert!(n < self.dim());
        self.k - n
    }

    /// Twice the `S_3` eigenvalue of basis vector `n`, i.e. `2n − M`.
    pub fn twice_m3(&self, n: usize) -> i64 {
        2 * n as i64 - self.m as i64
    }
}

/// Real symmetric tridiagonal matrix of `H` on one excitation sector.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorHamiltonian {
    pub basis: SectorBasis,
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl SectorHamiltonian {
    pub fn as_tridiag(&self) -> SymTridiag<'_> {
        SymTridiag::new(&self.diag, &self.offdiag)
    }
}

/// Assembles `H` on the sector with `k` excitations.
///
/// `diag[n] = ω_c (k − M/2) + Δ (n − M/2)` and the coupling between `n` and
/// `n + 1` is `−(λ/√M) √((k − n)(M − n)(n + 1))`.
pub fn build_sector_hamiltonian(params: &ModelParams, k: usize) -> SectorHamiltonian {
    let basis = SectorBasis::new(k, params.m);
    let m = params.m;
    let dim = basis.dim();
    let level = params.omega_c * (2.0 * k as f64 - m as f64) / 2.0;
    let delta = params.delta();
    let diag = (0..dim)
        .map(|n| level + delta * basis.twice_m3(n) as f64 / 2.0)
        .collect();
    let scale = params.lambda / (m as f64).sqrt();
    let offdiag = (0..dim.saturating_sub(1))
        .map(|n| {
            let product = (k - n) as u128 * (m - n) as u128 * (n + 1) as u128;
            -scale * (product as f64).sqrt()
        })
        .collect();
    SectorHamiltonian {
        basis,
        diag,
        offdiag,
    }
}
