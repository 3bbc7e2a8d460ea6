//! Flat `section.key=value` configuration.
//!
//! Blank lines and `#` comments are ignored. Every key has a default, so an
//! empty file describes the default twin experiment. Unknown keys are
//! rejected so that typos surface as errors.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::reference::{Profile, ReferenceSolution};
use crate::solver::{Boundary, Grid1D, DEFAULT_CFL};
use crate::thermo::{AuditConfig, Boltzmann, GasModel, MonatomicDegenerate, StructuralPressure};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScenarioKind {
    Audit,
    Twin,
    Sweep,
    Perturb,
}

impl FromStr for ScenarioKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "audit" => Ok(ScenarioKind::Audit),
            "twin" => Ok(ScenarioKind::Twin),
            "sweep" => Ok(ScenarioKind::Sweep),
            "perturb" => Ok(ScenarioKind::Perturb),
            other => Err(Error::config(
                "scenario.kind",
                format!("expected audit|twin|sweep|perturb, got `{other}`"),
            )),
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScenarioKind::Audit => "audit",
            ScenarioKind::Twin => "twin",
            ScenarioKind::Sweep => "sweep",
            ScenarioKind::Perturb => "perturb",
        })
    }
}

/// Time stepping of a scenario run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeConfig {
    pub t_end: f64,
    pub cfl: f64,
    /// Ledger sampling stride in steps; `0` picks about 100 samples.
    pub output_every: usize,
}

/// Settings of the `plot` command.
#[derive(Clone, Debug, PartialEq)]
pub struct PlotConfig {
    pub csv: Option<PathBuf>,
    pub x: String,
    pub y: Vec<String>,
    pub out: Option<PathBuf>,
    pub log_y: bool,
    pub title: String,
}

#[derive(Clone, Debug)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    pub model: GasModel,
    pub reference: ReferenceSolution,
    pub n: usize,
    pub length: f64,
    pub bc: Boundary,
    pub time: TimeConfig,
    /// Perturbation amplitude of the initial data, `>= 0`.
    pub eps: f64,
    /// Grids of a sweep.
    pub sweep_ns: Vec<usize>,
    pub audit: AuditConfig,
    pub seed: u64,
    pub output_dir: PathBuf,
    pub plot: PlotConfig,
    /// Normalised `key=value` lines after overrides, sorted by key.
    pub canonical: String,
}

const KEYS: &[&str] = &[
    "scenario.kind",
    "scenario.seed",
    "scenario.eps",
    "output.dir",
    "model.a",
    "model.mu0",
    "model.mu1",
    "model.kappa0",
    "model.kappa2",
    "model.kappa3",
    "model.family",
    "model.family_params",
    "ref.L",
    "ref.rho.offset",
    "ref.rho.modes",
    "ref.theta.offset",
    "ref.theta.modes",
    "ref.u.offset",
    "ref.u.modes",
    "grid.n",
    "grid.L",
    "grid.bc",
    "time.t_end",
    "time.cfl",
    "time.output_every",
    "sweep.n",
    "audit.samples",
    "audit.rho_min",
    "audit.rho_max",
    "audit.theta_min",
    "audit.theta_max",
    "plot.csv",
    "plot.x",
    "plot.y",
    "plot.out",
    "plot.log_y",
    "plot.title",
];

/// Parses `key=value` lines into a map, later lines winning.
pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = split_pair(line).map_err(|m| Error::config(format!("line {}", lineno + 1), m))?;
        map.insert(key, value);
    }
    Ok(map)
}

fn split_pair(s: &str) -> std::result::Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let k = k.trim();
    if k.is_empty() {
        return Err(format!("empty key in `{s}`"));
    }
    Ok((k.to_string(), v.trim().to_string()))
}

struct Lookup<'a>(&'a BTreeMap<String, String>);

impl Lookup<'_> {
    fn get<T: FromStr>(&self, key: &str, default: T) -> Result<T>
    where
        T::Err: fmt::Display,
    {
        match self.0.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|e| Error::config(key, format!("cannot parse `{v}`: {e}"))),
        }
    }

    fn str(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }
}

fn family_from(name: &str, params: &str) -> Result<Arc<dyn StructuralPressure>> {
    match name {
        MonatomicDegenerate::NAME => {
            let b = if params.is_empty() {
                1.0
            } else {
                params
                    .parse::<f64>()
                    .map_err(|e| Error::config("model.family_params", format!("`{params}`: {e}")))?
            };
            if !(b > 0.0) {
                return Err(Error::config("model.family_params", format!("b must be positive, got {b}")));
            }
            Ok(Arc::new(MonatomicDegenerate { b }))
        }
        Boltzmann::NAME => Ok(Arc::new(Boltzmann)),
        other => Err(Error::config(
            "model.family",
            format!("unknown family `{other}` (known: default, boltzmann)"),
        )),
    }
}

fn profile(l: &Lookup, name: &str, default: &Profile) -> Result<Profile> {
    let offset = l.get(&format!("ref.{name}.offset"), default.offset)?;
    let key = format!("ref.{name}.modes");
    let modes = match l.str(&key) {
        None => default.modes.clone(),
        Some(s) => Profile::parse_modes(s).map_err(|m| Error::config(key, m))?,
    };
    Ok(Profile { offset, modes })
}

impl ScenarioConfig {
    pub fn from_file(path: &Path, overrides: &[String]) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config("--config", format!("cannot read {}: {e}", path.display())))?;
        Self::from_str_with_overrides(&text, overrides)
    }

    /// Parses `text`, then applies `key=value` overrides in order.
    pub fn from_str_with_overrides(text: &str, overrides: &[String]) -> Result<Self> {
        let mut map = parse_pairs(text)?;
        for o in overrides {
            let (k, v) = split_pair(o).map_err(|m| Error::config("--override", m))?;
            map.insert(k, v);
        }
        Self::from_map(&map)
    }

    pub fn from_map(map: &BTreeMap<String, String>) -> Result<Self> {
        if let Some(k) = map.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(Error::config(k.clone(), "unknown key"));
        }
        let l = Lookup(map);

        let defaults = GasModel::default();
        let family = family_from(
            l.str("model.family").unwrap_or(MonatomicDegenerate::NAME),
            l.str("model.family_params").unwrap_or(""),
        )?;
        let model = GasModel {
            a: l.get("model.a", defaults.a)?,
            mu0: l.get("model.mu0", defaults.mu0)?,
            mu1: l.get("model.mu1", defaults.mu1)?,
            kappa0: l.get("model.kappa0", defaults.kappa0)?,
            kappa2: l.get("model.kappa2", defaults.kappa2)?,
            kappa3: l.get("model.kappa3", defaults.kappa3)?,
            family,
        };
        model.validate()?;

        let dref = ReferenceSolution::default();
        let length = l.get("ref.L", dref.length)?;
        let reference = ReferenceSolution::new(
            length,
            profile(&l, "rho", &dref.rho)?,
            profile(&l, "theta", &dref.theta)?,
            profile(&l, "u", &dref.u)?,
        )?;

        let n = l.get("grid.n", 128usize)?;
        let grid_length = l.get("grid.L", reference.length)?;
        let bc: Boundary = l.get("grid.bc", Boundary::Periodic)?;
        Grid1D::new(n, grid_length, bc)?;

        let time = TimeConfig {
            t_end: l.get("time.t_end", 1.0)?,
            cfl: l.get("time.cfl", DEFAULT_CFL)?,
            output_every: l.get("time.output_every", 0usize)?,
        };
        if !(time.t_end > 0.0) {
            return Err(Error::config("time.t_end", format!("must be positive, got {}", time.t_end)));
        }
        if !(time.cfl > 0.0 && time.cfl <= 1.0) {
            return Err(Error::config("time.cfl", format!("must lie in (0, 1], got {}", time.cfl)));
        }

        let eps: f64 = l.get("scenario.eps", 0.0)?;
        if !(eps >= 0.0 && eps.is_finite()) {
            return Err(Error::config("scenario.eps", format!("must be >= 0, got {eps}")));
        }

        let sweep_ns = match l.str("sweep.n") {
            None => vec![64, 128, 256, 512],
            Some(s) => s
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::config("sweep.n", format!("`{v}`: {e}")))
                })
                .collect::<Result<Vec<_>>>()?,
        };
        if sweep_ns.len() < 2 {
            return Err(Error::config("sweep.n", "need at least two grids"));
        }
        for &m in &sweep_ns {
            Grid1D::new(m, grid_length, bc).map_err(|_| Error::config("sweep.n", format!("invalid grid size {m}")))?;
        }

        let seed = l.get("scenario.seed", 0u64)?;
        let da = AuditConfig::default();
        let audit = AuditConfig {
            rho_range: (l.get("audit.rho_min", da.rho_range.0)?, l.get("audit.rho_max", da.rho_range.1)?),
            theta_range: (
                l.get("audit.theta_min", da.theta_range.0)?,
                l.get("audit.theta_max", da.theta_range.1)?,
            ),
            samples: l.get("audit.samples", da.samples)?,
            seed,
            ..da
        };

        let plot = PlotConfig {
            csv: l.str("plot.csv").map(PathBuf::from),
            x: l.get("plot.x", "t".to_string())?,
            y: l
                .str("plot.y")
                .unwrap_or("I")
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect(),
            out: l.str("plot.out").map(PathBuf::from),
            log_y: l.get("plot.log_y", false)?,
            title: l.get("plot.title", String::new())?,
        };

        let canonical = map.iter().map(|(k, v)| format!("{k}={v}\n")).collect();

        Ok(Self {
            kind: l.get("scenario.kind", ScenarioKind::Twin)?,
            model,
            reference,
            n,
            length: grid_length,
            bc,
            time,
            eps,
            sweep_ns,
            audit,
            seed,
            output_dir: PathBuf::from(l.str("output.dir").unwrap_or("out")),
            plot,
            canonical,
        })
    }

    pub fn grid(&self, n: usize) -> Result<Grid1D> {
        Grid1D::new(n, self.length, self.bc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_default_twin() {
        let c = ScenarioConfig::from_str_with_overrides("", &[]).unwrap();
        assert_eq!(c.kind, ScenarioKind::Twin);
        assert_eq!(c.n, 128);
        assert_eq!(c.reference, ReferenceSolution::default());
        assert_eq!(c.sweep_ns, vec![64, 128, 256, 512]);
    }

    #[test]
    fn comments_overrides_and_errors() {
        let text = "# experiment\nscenario.kind = sweep  # trailing\ngrid.n=64\n\nref.rho.modes=0.05:2:0:1\n";
        let c = ScenarioConfig::from_str_with_overrides(text, &["grid.n=32".into()]).unwrap();
        assert_eq!(c.kind, ScenarioKind::Sweep);
        assert_eq!(c.n, 32);
        assert_eq!(c.reference.rho.modes.len(), 1);
        assert!(c.canonical.contains("grid.n=32\n"));

        let err = ScenarioConfig::from_str_with_overrides("grid.nn=3", &[]).unwrap_err();
        assert!(err.to_string().contains("grid.nn"));
        let err = ScenarioConfig::from_str_with_overrides("model.mu0=-1", &[]).unwrap_err();
        assert!(err.to_string().contains("model.mu0"));
        let err = ScenarioConfig::from_str_with_overrides("grid.n=abc", &[]).unwrap_err();
        assert!(err.to_string().contains("grid.n"));
        assert!(ScenarioConfig::from_str_with_overrides("no equals sign", &[]).is_err());
        assert!(ScenarioConfig::from_str_with_overrides("", &["scenario.eps=-0.1".into()]).is_err());
    }

    #[test]
    fn family_selection() {
        let c = ScenarioConfig::from_str_with_overrides("model.family=boltzmann", &[]).unwrap();
        assert_eq!(c.model.family.name(), "boltzmann");
        assert!(ScenarioConfig::from_str_with_overrides("model.family=vdw", &[]).is_err());
        let c = ScenarioConfig::from_str_with_overrides("model.family_params=2", &[]).unwrap();
        assert_eq!(c.model.family.params(), "2");
    }
}
