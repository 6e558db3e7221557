//! Sector ground states, the global ground state, and level crossings.

use crate::asymptotics;
use crate::model::{build_sector_hamiltonian, ModelFamily, ModelParams, SectorHamiltonian};
use crate::{Error, Result};

/// Absolute tolerance in `g` for level-crossing bisection.
pub const CROSSING_TOL: f64 = 1e-10;

/// Lowest eigenpair of one excitation sector.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorEigenpair {
    pub k: usize,
    pub energy: f64,
    /// Unit-norm amplitudes over the sector basis, ascending in the number
    /// of excited atoms.
    pub amplitudes: Vec<f64>,
}

/// Lowest eigenpair of a sector matrix; amplitudes are positive whenever
/// the coupling is non-zero.
pub fn lowest_eigenpair(h: &SectorHamiltonian) -> SectorEigenpair {
    let (energy, amplitudes) = h.as_tridiag().lowest_eigenpair();
    SectorEigenpair {
        k: h.basis.k,
        energy,
        amplitudes,
    }
}

/// `E_k(g)`: lowest energy on the excitation-`k` sector.
pub fn sector_ground_energy(params: &ModelParams, k: usize) -> f64 {
    build_sector_hamiltonian(params, k)
        .as_tridiag()
        .lowest_eigenvalue()
}

pub fn sector_ground_state(params: &ModelParams, k: usize) -> SectorEigenpair {
    lowest_eigenpair(&build_sector_hamiltonian(params, k))
}

/// Global ground state found by scanning sectors `0..=scan_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroundState {
    pub params: ModelParams,
    pub kstar: usize,
    pub scan_max: usize,
    pub eigenpair: SectorEigenpair,
}

impl GroundState {
    pub fn energy(&self) -> f64 {
        self.eigenpair.energy
    }

    /// True when the minimum sits on the edge of the scan window, so a
    /// larger window might find a lower sector.
    pub fn saturated(&self) -> bool {
        self.kstar == self.scan_max
    }
}

/// Default sector scan window: `max(⌈2 · g²ηM/4⌉, M + 10)`.
pub fn default_scan_window(params: &ModelParams) -> usize {
    let guess = (2.0 * asymptotics::approx_kstar(params)).ceil() as usize;
    guess.max(params.m() + 10)
}

/// Minimum of `E_k` over `k = 0..=k_max`, ties going to the smaller `k`.
pub fn global_ground(params: &ModelParams, k_max: usize) -> GroundState {
    let mut kstar = 0;
    let mut best = sector_ground_energy(params, 0);
    for k in 1..=k_max {
        let e = sector_ground_energy(params, k);
        if e < best {
            best = e;
            kstar = k;
        }
    }
    if kstar == k_max && k_max > 0 {
        log::warn!(
            "ground state at the edge of the scan window (k* = {kstar}, g = {}, M = {})",
            params.g(),
            params.m()
        );
    }
    GroundState {
        params: *params,
        kstar,
        scan_max: k_max,
        eigenpair: sector_ground_state(params, kstar),
    }
}

/// [`global_ground`] over the [`default_scan_window`].
pub fn ground_state(params: &ModelParams) -> GroundState {
    global_ground(params, default_scan_window(params))
}

/// `E_{k+1}(g) − E_k(g)`; positive below the crossing `g_k`.
pub fn crossing_gap(family: &ModelFamily, k: usize, g: f64) -> Result<f64> {
    let p = family.at(g)?;
    Ok(sector_ground_energy(&p, k + 1) - sector_ground_energy(&p, k))
}

/// Bracket `[g̃_k / 2, 1.5 g̃_k + 1]` around the approximate crossing.
pub fn default_crossing_bracket(family: &ModelFamily, k: usize) -> (f64, f64) {
    let approx = asymptotics::approx_crossing(family, k);
    (0.5 * approx, 1.5 * approx + 1.0)
}

/// Coupling `g_k` at which `E_k` and `E_{k+1}` cross, by bisection.
pub fn find_level_crossing(family: &ModelFamily, k: usize, bracket: (f64, f64)) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    let no_root = Error::NoSignChange { k, lo, hi };
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(no_root);
    }
    let f_lo = crossing_gap(family, k, lo)?;
    let f_hi = crossing_gap(family, k, hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(no_root);
    }
    let lo_sign = f_lo.signum();
    while hi - lo > CROSSING_TOL {
        let mid = 0.5 * (lo + hi);
        let f = crossing_gap(family, k, mid)?;
        if f == 0.0 {
            return Ok(mid);
        }
        if f.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Crossings `g_0 .. g_{k_max − 1}` with the default brackets.
///
/// Fails if any crossing cannot be bracketed or if the sequence is not
/// strictly increasing, which would signal a second root inside a bracket.
pub fn crossing_table(family: &ModelFamily, k_max: usize) -> Result<Vec<(usize, f64)>> {
    let mut table: Vec<(usize, f64)> = Vec::with_capacity(k_max);
    for k in 0..k_max {
        let g_k = find_level_crossing(family, k, default_crossing_bracket(family, k))?;
        if let Some(&(_, g_prev)) = table.last() {
            if g_k <= g_prev {
                return Err(Error::NonMonotoneCrossings { k, g_k, g_prev });
            }
        }
        table.push((k, g_k));
    }
    Ok(table)
}

/// Ground-state excitation number along a coupling grid.
pub fn excitation_staircase(family: &ModelFamily, g_grid: &[f64]) -> Result<Vec<(f64, usize)>> {
    g_grid
        .iter()
        .map(|&g| {
            let p = family.at(g)?;
            Ok((g, ground_state(&p).kstar))
        })
        .collect()
}
