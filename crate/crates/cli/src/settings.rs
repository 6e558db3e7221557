//! Run settings: command-line flags layered over an optional `key=value`
//! file layered over defaults.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;

use crate::observables::Observable;
use crate::table::Format;
use crate::Failure;

#[derive(Args, Clone, Debug, Default)]
pub struct Flags {
    /// Atom number: a single value, an inclusive range `a..b`, or a comma list.
    #[arg(long = "M", value_name = "M")]
    pub atoms: Option<String>,
    /// Frequency ratio ω_z/ω_c.
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long)]
    pub omega_c: Option<f64>,
    #[arg(long)]
    pub g_min: Option<f64>,
    #[arg(long)]
    pub g_max: Option<f64>,
    /// Number of grid intervals; the grid has `g_steps + 1` points.
    #[arg(long)]
    pub g_steps: Option<usize>,
    /// Single coupling for `separability`.
    #[arg(long)]
    pub g: Option<f64>,
    #[arg(long)]
    pub k_max: Option<usize>,
    /// Comma-separated observables for `sweep`.
    #[arg(long)]
    pub observables: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Significant digits in the output.
    #[arg(long)]
    pub precision: Option<usize>,
    /// Worker threads; 0 lets the pool pick.
    #[arg(long, env = "TCLAB_THREADS")]
    pub threads: Option<usize>,
    /// Compute through the brute-force reference implementation.
    #[arg(long)]
    pub reference: bool,
    /// `key=value` file with defaults for any of the flags above.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub atoms: Vec<usize>,
    pub eta: f64,
    pub omega_c: f64,
    pub g_min: f64,
    pub g_max: f64,
    pub g_steps: usize,
    pub g: Option<f64>,
    pub k_max: Option<usize>,
    pub observables: Vec<Observable>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub precision: usize,
    pub threads: usize,
    pub reference: bool,
}

pub const DEFAULT_ATOMS: &str = "2..9";
pub const DEFAULT_OBSERVABLES: &str =
    "energy,kstar,kstar_per_M,qcd,rescaled_qcd,naive_qcd,purity,tau_tot,concurrence,bounds";

impl Settings {
    pub fn resolve(flags: &Flags) -> Result<Self, Failure> {
        let file = match &flags.config {
            Some(path) => read_config(path)?,
            None => HashMap::new(),
        };
        let pick = |flag: Option<String>, key: &str| flag.or_else(|| file.get(key).cloned());
        let parsed = |flag: Option<String>, key: &str, default: &str| -> String {
            pick(flag, key).unwrap_or_else(|| default.to_string())
        };
        let num = |key: &str, flag: Option<f64>, default: f64| -> Result<f64, Failure> {
            match flag {
                Some(v) => Ok(v),
                None => file.get(key).map_or(Ok(default), |s| parse_value(key, s)),
            }
        };
        let count = |key: &str, flag: Option<usize>| -> Result<Option<usize>, Failure> {
            match flag {
                Some(v) => Ok(Some(v)),
                None => file.get(key).map(|s| parse_value(key, s)).transpose(),
            }
        };

        let settings = Settings {
            atoms: parse_atoms(&parsed(flags.atoms.clone(), "M", DEFAULT_ATOMS))?,
            eta: num("eta", flags.eta, 10.0)?,
            omega_c: num("omega-c", flags.omega_c, 1.0)?,
            g_min: num("g-min", flags.g_min, 0.0)?,
            g_max: num("g-max", flags.g_max, 5.0)?,
            g_steps: count("g-steps", flags.g_steps)?.unwrap_or(500),
            g: match flags.g {
                Some(v) => Some(v),
                None => file.get("g").map(|s| parse_value("g", s)).transpose()?,
            },
            k_max: count("k-max", flags.k_max)?,
            observables: Observable::parse_list(&parsed(
                flags.observables.clone(),
                "observables",
                DEFAULT_OBSERVABLES,
            ))?,
            out: flags
                .out
                .clone()
                .or_else(|| file.get("out").map(PathBuf::from)),
            format: match flags.format {
                Some(f) => f,
                None => file.get("format").map_or(Ok(Format::Csv), |s| parse_value("format", s))?,
            },
            precision: count("precision", flags.precision)?.unwrap_or(12),
            threads: count("threads", flags.threads)?.unwrap_or(0),
            reference: flags.reference
                || file
                    .get("reference")
                    .map_or(Ok(false), |s| parse_value("reference", s))?,
        };
        settings.validate()?;
        Ok(settings)
    }

    fn validate(&self) -> Result<(), Failure> {
        if self.g_min >= self.g_max || self.g_min.is_nan() || self.g_max.is_nan() {
            return Err(Failure::usage(format!(
                "g-min ({}) must be below g-max ({})",
                self.g_min, self.g_max
            )));
        }
        if self.g_min < 0.0 {
            return Err(Failure::usage("g-min must be non-negative"));
        }
        if self.g_steps < 2 {
            return Err(Failure::usage("g-steps must be at least 2"));
        }
        if self.precision == 0 || self.precision > 17 {
            return Err(Failure::usage("precision must be between 1 and 17"));
        }
        Ok(())
    }

    /// `g_steps + 1` evenly spaced couplings from `g_min` to `g_max`.
    pub fn g_grid(&self) -> Vec<f64> {
        (0..=self.g_steps)
            .map(|i| self.g_min + (self.g_max - self.g_min) * i as f64 / self.g_steps as f64)
            .collect()
    }

    pub fn single_atom_number(&self) -> Result<usize, Failure> {
        match self.atoms.as_slice() {
            [m] => Ok(*m),
            _ => Err(Failure::usage("this command takes a single value of --M")),
        }
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, raw: &str) -> Result<T, Failure>
where
    T::Err: std::fmt::Display,
{
    raw.trim()
        .parse()
        .map_err(|e| Failure::usage(format!("bad value '{raw}' for {key}: {e}")))
}

pub fn parse_atoms(raw: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::usage(format!("bad atom number specification '{raw}'"));
    let mut atoms = Vec::new();
    for part in raw.split(',') {
        let part = part.trim();
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: usize = lo.trim().parse().map_err(|_| bad())?;
            let hi: usize = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            atoms.extend(lo..=hi);
        } else {
            atoms.push(part.parse().map_err(|_| bad())?);
        }
    }
    if atoms.is_empty() || atoms.contains(&0) {
        return Err(bad());
    }
    Ok(atoms)
}

const CONFIG_KEYS: &[&str] = &[
    "M", "eta", "omega-c", "g-min", "g-max", "g-steps", "g", "k-max", "observables", "out",
    "format", "precision", "threads", "reference",
];

pub fn read_config(path: &Path) -> Result<HashMap<String, String>, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::io(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<HashMap<String, String>, Failure> {
    let mut map = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Failure::usage(format!("config line {}: expected key=value", lineno + 1))
        })?;
        let key = key.trim().replace('_', "-");
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(Failure::usage(format!(
                "config line {}: unknown key '{key}'",
                lineno + 1
            )));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atom_specifications() {
        assert_eq!(parse_atoms("8").unwrap(), vec![8]);
        assert_eq!(parse_atoms("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_atoms("2..=3,7").unwrap(), vec![2, 3, 7]);
        assert!(parse_atoms("5..2").is_err());
        assert!(parse_atoms("0").is_err());
        assert!(parse_atoms("x").is_err());
    }

    #[test]
    fn config_lines() {
        let map = parse_config("# run\nM = 4\ng_max=2\n\neta=2\n").unwrap();
        assert_eq!(map["M"], "4");
        assert_eq!(map["g-max"], "2");
        assert!(parse_config("nonsense").is_err());
        assert!(parse_config("colour=blue").is_err());
    }

    #[test]
    fn defaults_and_grid() {
        let s = Settings::resolve(&Flags::default()).unwrap();
        assert_eq!(s.atoms, (2..=9).collect::<Vec<_>>());
        assert_eq!(s.eta, 10.0);
        let grid = s.g_grid();
        assert_eq!(grid.len(), 501);
        assert_eq!(grid[100], 1.0);
        assert_eq!(*grid.last().unwrap(), 5.0);
    }

    #[test]
    fn rejects_bad_ranges() {
        let flags = Flags {
            g_min: Some(2.0),
            g_max: Some(1.0),
            ..Flags::default()
        };
        assert!(Settings::resolve(&flags).is_err());
        let flags = Flags {
            g_steps: Some(1),
            ..Flags::default()
        };
        assert!(Settings::resolve(&flags).is_err());
    }
}
