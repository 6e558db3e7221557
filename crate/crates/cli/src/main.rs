//! `tclab`: ground-state sweeps of the Tavis-Cummings model.

mod observables;
mod settings;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use tclab::asymptotics::approx_crossing;
use tclab::correlations::{ground_mixture, rescaled_qcd};
use tclab::entanglement::{entanglement_report, pair_reduction};
use tclab::model::ModelFamily;
use tclab::oracle;
use tclab::spectral::{default_crossing_bracket, find_level_crossing, ground_state, sector_ground_energy};

use observables::{evaluate_row, header};
use settings::{Flags, Settings};
use table::{json_number, Cell, Table};

#[derive(Parser, Debug)]
#[command(name = "tclab", version, about = "Tavis-Cummings ground states and atomic correlations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lowest energy of each excitation sector `k = 0..=k_max` along the grid.
    Spectrum(Flags),
    /// Level crossings `g_k` for `k < k_max` against their closed form.
    Crossings(Flags),
    /// Ground-state observables for every `(M, g)` on the grid.
    Sweep(Flags),
    /// Separability report for a single coupling `--g`.
    Separability(Flags),
}

#[derive(Debug)]
pub struct Failure {
    kind: &'static str,
    message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            kind: "usage",
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            kind: "io",
            message: message.into(),
        }
    }

    fn model(err: tclab::Error) -> Self {
        Self {
            kind: "model",
            message: err.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(err: io::Error) -> Self {
        Failure::io(err.to_string())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("{}", json!({ "error": failure.kind, "message": failure.message }));
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Spectrum(flags) => {
            let s = Settings::resolve(&flags)?;
            let table = spectrum(&s)?;
            emit(&s, |out| table.write(out, s.format, s.precision))
        }
        Command::Crossings(flags) => {
            let s = Settings::resolve(&flags)?;
            let table = crossings(&s)?;
            emit(&s, |out| table.write(out, s.format, s.precision))
        }
        Command::Sweep(flags) => {
            let s = Settings::resolve(&flags)?;
            let table = sweep(&s)?;
            emit(&s, |out| table.write(out, s.format, s.precision))
        }
        Command::Separability(flags) => {
            let s = Settings::resolve(&flags)?;
            let report = separability(&s)?;
            emit(&s, |out| {
                serde_json::to_writer_pretty(&mut *out, &report)?;
                writeln!(out)
            })
        }
    }
}

fn emit(s: &Settings, write: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<(), Failure> {
    match &s.out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| Failure::io(format!("cannot create {}: {e}", path.display())))?;
            let mut out = BufWriter::new(file);
            write(&mut out)?;
            out.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            write(&mut out)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn pool(s: &Settings) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(s.threads)
        .build()
        .map_err(|e| Failure::usage(format!("thread pool: {e}")))
}

fn family(s: &Settings, m: usize) -> Result<ModelFamily, Failure> {
    ModelFamily::from_eta(s.omega_c, s.eta, m).map_err(Failure::model)
}

fn spectrum(s: &Settings) -> Result<Table, Failure> {
    let f = family(s, s.single_atom_number()?)?;
    let k_max = s.k_max.unwrap_or(50);
    let grid = s.g_grid();
    let blocks: Vec<Vec<Vec<Cell>>> = pool(s)?.install(|| {
        grid.par_iter()
            .map(|&g| {
                let p = f.at(g).map_err(Failure::model)?;
                Ok((0..=k_max)
                    .map(|k| {
                        vec![
                            Cell::Num(g),
                            Cell::Int(k as i64),
                            Cell::Num(sector_ground_energy(&p, k)),
                        ]
                    })
                    .collect())
            })
            .collect::<Result<_, Failure>>()
    })?;
    let mut table = Table::new(vec!["g".into(), "k".into(), "E_k".into()]);
    table.rows = blocks.into_iter().flatten().collect();
    Ok(table)
}

fn crossings(s: &Settings) -> Result<Table, Failure> {
    let f = family(s, s.single_atom_number()?)?;
    let k_max = s.k_max.unwrap_or(200);
    let rows: Vec<(Option<f64>, Vec<Cell>)> = pool(s)?.install(|| {
        (0..k_max)
            .into_par_iter()
            .map(|k| {
                let approx = approx_crossing(&f, k);
                match find_level_crossing(&f, k, default_crossing_bracket(&f, k)) {
                    Ok(g_k) => (
                        Some(g_k),
                        vec![
                            Cell::Int(k as i64),
                            Cell::Num(g_k),
                            Cell::Num(approx),
                            Cell::Num((approx - g_k) / g_k),
                            Cell::Text(String::new()),
                        ],
                    ),
                    Err(e) => {
                        log::warn!("crossing k={k}: {e}");
                        (
                            None,
                            vec![
                                Cell::Int(k as i64),
                                Cell::Err,
                                Cell::Num(approx),
                                Cell::Err,
                                Cell::Text(e.to_string()),
                            ],
                        )
                    }
                }
            })
            .collect()
    });
    let found: Vec<(usize, f64)> = rows
        .iter()
        .enumerate()
        .filter_map(|(k, (g, _))| g.map(|g| (k, g)))
        .collect();
    for w in found.windows(2) {
        if w[1].1 <= w[0].1 {
            log::warn!("crossings not increasing: g_{} = {} after g_{} = {}", w[1].0, w[1].1, w[0].0, w[0].1);
        }
    }
    let mut table = Table::new(
        ["k", "g_k", "g_tilde_k", "rel_gap", "error"]
            .map(String::from)
            .to_vec(),
    );
    table.rows = rows.into_iter().map(|(_, row)| row).collect();
    Ok(table)
}

/// Largest `M` for which the tripwire builds the dense `2^M` state.
const TRIPWIRE_MAX_ATOMS: usize = 10;
const TRIPWIRE_TOL: f64 = 1e-12;

/// Checks once per run that the closed-form pair state agrees with explicit
/// partial traces onto qubits `(0, 1)` and `(0, M − 1)`.
fn pair_tripwire(s: &Settings) -> Result<(), Failure> {
    let Some(&m) = s
        .atoms
        .iter()
        .find(|&&m| (3..=TRIPWIRE_MAX_ATOMS).contains(&m))
        .or_else(|| s.atoms.iter().find(|&&m| m == 2))
    else {
        return Ok(());
    };
    let g = s.g.unwrap_or(s.g_max);
    let mix = ground_mixture(&family(s, m)?, g).map_err(Failure::model)?;
    let rho = oracle::dicke_mixture_matrix(&mix);
    let closed = pair_reduction(&mix).map_err(Failure::model)?.rho;
    let near = oracle::pair_reduction_full(&rho, m, 0, 1);
    let far = oracle::pair_reduction_full(&rho, m, 0, m - 1);
    let gap = (near - closed).norm().max((far - closed).norm());
    if gap > TRIPWIRE_TOL {
        return Err(Failure {
            kind: "tripwire",
            message: format!("pair reductions disagree by {gap:e} at M={m}, g={g}"),
        });
    }
    log::info!("pair tripwire passed at M={m}, g={g} ({gap:e})");
    Ok(())
}

fn sweep(s: &Settings) -> Result<Table, Failure> {
    if s.observables.iter().any(|o| o.uses_pairs()) {
        pair_tripwire(s)?;
    }
    let families: Vec<ModelFamily> = s
        .atoms
        .iter()
        .map(|&m| family(s, m))
        .collect::<Result<_, _>>()?;
    let grid = s.g_grid();
    let cells: Vec<(&ModelFamily, f64)> = families
        .iter()
        .flat_map(|f| grid.iter().map(move |&g| (f, g)))
        .collect();
    let rows = pool(s)?.install(|| {
        cells
            .par_iter()
            .map(|&(f, g)| evaluate_row(f, g, &s.observables, s.reference))
            .collect()
    });
    let mut table = Table::new(header(&s.observables));
    table.rows = rows;
    Ok(table)
}

fn separability(s: &Settings) -> Result<serde_json::Value, Failure> {
    let m = s.single_atom_number()?;
    let g = s
        .g
        .ok_or_else(|| Failure::usage("separability needs --g"))?;
    pair_tripwire(s)?;
    let f = family(s, m)?;
    let p = f.at(g).map_err(Failure::model)?;
    let gs = ground_state(&p);
    let mix = tclab::correlations::DickeMixture::from_eigenpair(&gs.eigenpair, m).map_err(Failure::model)?;
    let report = entanglement_report(&mix, true).map_err(Failure::model)?;
    let ppt = report.ppt.expect("requested");
    let digits = s.precision;
    Ok(json!({
        "M": m,
        "g": json_number(g, digits),
        "kstar": gs.kstar,
        "weights": mix.weights().iter().map(|&w| json_number(w, digits)).collect::<Vec<_>>(),
        "ppt_entangled": ppt.entangled,
        "ppt_min_eigenvalue": json_number(ppt.min_eigenvalue, digits),
        "ppt_marginal": ppt.marginal,
        "tau_tot": json_number(report.tau_tot, digits),
        "rescaled_qcd": json_number(rescaled_qcd(&mix).map_err(Failure::model)?, digits),
        "bounds": {
            "lower": json_number(report.lower_bound, digits),
            "upper": json_number(report.upper_bound, digits),
        },
    }))
}
