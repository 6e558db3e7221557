use tclab::asymptotics::{approx_energy, approx_kstar, approx_qcd, approx_rescaled_qcd};
use tclab::correlations::{naive_qcd, purity, qcd, rescaled_qcd, DickeMixture};
use tclab::entanglement::{concurrence, pair_reduction, ppt_verdict};
use tclab::model::{ModelFamily, ModelParams};
use tclab::oracle;
use tclab::spectral::ground_state;

use crate::table::Cell;
use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Observable {
    Energy,
    Kstar,
    KstarPerM,
    Qcd,
    RescaledQcd,
    NaiveQcd,
    Purity,
    TauTot,
    Concurrence,
    Ppt,
    Bounds,
    Asymptotics,
}

/// Below this many excitations per atom the large-`k` formulas are flagged.
pub const ASYMPTOTIC_RATIO: f64 = 10.0;

impl Observable {
    pub const ALL: [Observable; 12] = [
        Observable::Energy,
        Observable::Kstar,
        Observable::KstarPerM,
        Observable::Qcd,
        Observable::RescaledQcd,
        Observable::NaiveQcd,
        Observable::Purity,
        Observable::TauTot,
        Observable::Concurrence,
        Observable::Ppt,
        Observable::Bounds,
        Observable::Asymptotics,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Observable::Energy => "energy",
            Observable::Kstar => "kstar",
            Observable::KstarPerM => "kstar_per_M",
            Observable::Qcd => "qcd",
            Observable::RescaledQcd => "rescaled_qcd",
            Observable::NaiveQcd => "naive_qcd",
            Observable::Purity => "purity",
            Observable::TauTot => "tau_tot",
            Observable::Concurrence => "concurrence",
            Observable::Ppt => "ppt",
            Observable::Bounds => "bounds",
            Observable::Asymptotics => "asymptotics",
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Observable::Ppt => &["ppt_entangled", "ppt_min_eigenvalue", "ppt_marginal"],
            Observable::Bounds => &["lower_bound", "upper_bound"],
            Observable::Asymptotics => &[
                "kstar_approx",
                "energy_approx",
                "qcd_approx",
                "rescaled_qcd_approx",
                "regime",
            ],
            Observable::Energy => &["energy"],
            Observable::Kstar => &["kstar"],
            Observable::KstarPerM => &["kstar_per_M"],
            Observable::Qcd => &["qcd"],
            Observable::RescaledQcd => &["rescaled_qcd"],
            Observable::NaiveQcd => &["naive_qcd"],
            Observable::Purity => &["purity"],
            Observable::TauTot => &["tau_tot"],
            Observable::Concurrence => &["concurrence"],
        }
    }

    pub fn parse_list(raw: &str) -> Result<Vec<Observable>, Failure> {
        let mut out = Vec::new();
        for name in raw.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let obs = Observable::ALL
                .into_iter()
                .find(|o| o.name() == name)
                .ok_or_else(|| Failure::usage(format!("unknown observable '{name}'")))?;
            if !out.contains(&obs) {
                out.push(obs);
            }
        }
        if out.is_empty() {
            return Err(Failure::usage("no observables requested"));
        }
        Ok(out)
    }

    /// Needs the two-qubit reduced state.
    pub fn uses_pairs(self) -> bool {
        matches!(
            self,
            Observable::TauTot | Observable::Concurrence | Observable::Bounds
        )
    }
}

pub fn header(observables: &[Observable]) -> Vec<String> {
    let mut cols = vec!["M".to_string(), "g".to_string()];
    for obs in observables {
        cols.extend(obs.columns().iter().map(|c| c.to_string()));
    }
    cols
}

/// Ground-state quantities shared by every observable of one cell.
struct Ground {
    params: ModelParams,
    energy: f64,
    kstar: usize,
    mix: DickeMixture,
    /// `(qcd, rescaled_qcd, naive_qcd)` from the literal definitions, when
    /// routed through the reference implementation.
    literal: Option<Result<(f64, f64, f64), String>>,
}

fn fast_ground(params: ModelParams) -> Result<Ground, String> {
    let gs = ground_state(&params);
    let mix = DickeMixture::from_eigenpair(&gs.eigenpair, params.m()).map_err(|e| e.to_string())?;
    Ok(Ground {
        params,
        energy: gs.energy(),
        kstar: gs.kstar,
        mix,
        literal: None,
    })
}

fn reference_ground(params: ModelParams) -> Result<Ground, String> {
    let m = params.m();
    let rg = oracle::reference_ground(&params).map_err(|e| e.to_string())?;
    let (weights, _) = oracle::dicke_projection(&rg.atoms, m);
    let mix = DickeMixture::new(m, weights).map_err(|e| e.to_string())?;
    let literal = oracle::qcd_general(&rg.atoms, m)
        .map(|q| {
            let purity = (&rg.atoms * &rg.atoms).trace().re;
            (q.qcd, q.rescaled_qcd, q.qcd / purity)
        })
        .map_err(|e| e.to_string());
    Ok(Ground {
        params,
        energy: rg.energy,
        kstar: rg.kstar,
        mix,
        literal: Some(literal),
    })
}

fn num<E: std::fmt::Display>(value: Result<f64, E>, what: &str, m: usize, g: f64) -> Cell {
    match value {
        Ok(v) => Cell::Num(v),
        Err(e) => {
            log::warn!("{what} at M={m}, g={g}: {e}");
            Cell::Err
        }
    }
}

/// One output row for atom number `m` at coupling `g`.
pub fn evaluate_row(family: &ModelFamily, g: f64, observables: &[Observable], reference: bool) -> Vec<Cell> {
    let m = family.m();
    let width: usize = observables.iter().map(|o| o.columns().len()).sum();
    let mut row = vec![Cell::Int(m as i64), Cell::Num(g)];
    let ground = family
        .at(g)
        .map_err(|e| e.to_string())
        .and_then(|p| if reference { reference_ground(p) } else { fast_ground(p) });
    let ground = match ground {
        Ok(ground) => ground,
        Err(e) => {
            log::warn!("ground state at M={m}, g={g}: {e}");
            row.extend(std::iter::repeat_n(Cell::Err, width));
            return row;
        }
    };
    let mix = &ground.mix;
    let literal = |pick: fn(&(f64, f64, f64)) -> f64| -> Option<Cell> {
        ground.literal.as_ref().map(|lit| match lit {
            Ok(values) => Cell::Num(pick(values)),
            Err(e) => {
                log::warn!("literal QCD at M={m}, g={g}: {e}");
                Cell::Err
            }
        })
    };
    for obs in observables {
        match obs {
            Observable::Energy => row.push(Cell::Num(ground.energy)),
            Observable::Kstar => row.push(Cell::Int(ground.kstar as i64)),
            Observable::KstarPerM => row.push(Cell::Num(ground.kstar as f64 / m as f64)),
            Observable::Qcd => {
                row.push(literal(|v| v.0).unwrap_or_else(|| num(qcd(mix), "qcd", m, g)))
            }
            Observable::RescaledQcd => row.push(
                literal(|v| v.1).unwrap_or_else(|| num(rescaled_qcd(mix), "rescaled_qcd", m, g)),
            ),
            Observable::NaiveQcd => {
                row.push(literal(|v| v.2).unwrap_or_else(|| num(naive_qcd(mix), "naive_qcd", m, g)))
            }
            Observable::Purity => row.push(Cell::Num(purity(mix))),
            Observable::TauTot | Observable::Concurrence | Observable::Bounds => {
                let c = pair_reduction(mix)
                    .and_then(|p| concurrence(&p))
                    .map_err(|e| e.to_string());
                let tau = c.clone().map(|c| (m - 1) as f64 * c * c);
                match obs {
                    Observable::Concurrence => row.push(num(c, "concurrence", m, g)),
                    Observable::TauTot => row.push(num(tau, "tau_tot", m, g)),
                    _ => {
                        row.push(num(tau, "lower bound", m, g));
                        row.push(num(rescaled_qcd(mix), "upper bound", m, g));
                    }
                }
            }
            Observable::Ppt => match ppt_verdict(mix) {
                Ok(v) => row.extend([
                    Cell::Bool(v.entangled),
                    Cell::Num(v.min_eigenvalue),
                    Cell::Bool(v.marginal),
                ]),
                Err(e) => {
                    log::warn!("ppt at M={m}, g={g}: {e}");
                    row.extend([Cell::Err, Cell::Err, Cell::Err]);
                }
            },
            Observable::Asymptotics => {
                let p = &ground.params;
                let k = ground.kstar;
                let regime = if k as f64 >= ASYMPTOTIC_RATIO * m as f64 {
                    "asymptotic"
                } else {
                    "pre-asymptotic"
                };
                row.extend([
                    Cell::Num(approx_kstar(p)),
                    Cell::Num(approx_energy(p, k)),
                    Cell::Num(approx_qcd(p, k)),
                    Cell::Num(approx_rescaled_qcd(p, k)),
                    Cell::Text(regime.to_string()),
                ]);
            }
        }
    }
    row
}
