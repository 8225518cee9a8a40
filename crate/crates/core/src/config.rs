//! TOML model configuration.
//!
//! ```toml
//! kappa = 0.0
//! gamma = 0.15
//!
//! [[levels]]
//! name = "g"
//! energy = 0.0
//! manifold = "ground"
//!
//! [[levels]]
//! name = "e1"
//! energy = 1.5
//! manifold = "single"
//!
//! [[modes]]
//! frequency = 1.0
//! displacements = { e1 = 0.4 }
//!
//! [[dipoles]]
//! between = ["g", "e1"]
//! value = 1.0            # g -> e1 coupling, or [re, im]; the reverse is conjugated
//!
//! [bath]
//! weights = { e1 = 1.0 }
//! density = { kind = "ohmic", eta = 0.05, cutoff = 2.0 }
//! ```
//!
//! Levels omitted from `displacements` are undisplaced. Without a `dipoles`
//! list every ground-single and single-double transition has unit dipole;
//! with one, only the listed pairs couple.

use std::collections::{BTreeMap, HashMap};
use std::ops::Range;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Deserialize;
use toml::Spanned;

use crate::bath::{parse_density_table, Bath, SpectralDensity};
use crate::error::{Error, Result};
use crate::model::{Level, Manifold, Mode, VibronicModel};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    kappa: Option<Spanned<f64>>,
    #[serde(default)]
    gamma: Option<Spanned<f64>>,
    levels: Vec<RawLevel>,
    modes: Vec<RawMode>,
    #[serde(default)]
    dipoles: Option<Vec<RawDipole>>,
    #[serde(default)]
    bath: Option<RawBath>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLevel {
    name: Spanned<String>,
    energy: Spanned<f64>,
    manifold: Spanned<String>,
    #[serde(default)]
    kappa: Option<Spanned<toml::Value>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMode {
    #[serde(default = "unit")]
    frequency: Spanned<f64>,
    displacements: Spanned<BTreeMap<String, f64>>,
}

fn unit() -> Spanned<f64> {
    Spanned::new(0..0, 1.0)
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawComplex {
    Real(f64),
    Pair([f64; 2]),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDipole {
    between: Spanned<[String; 2]>,
    value: RawComplex,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum RawDensity {
    Ohmic {
        eta: f64,
        cutoff: f64,
    },
    PowerLaw {
        eta: f64,
        power: f64,
        cutoff: f64,
    },
    Table {
        #[serde(default)]
        points: Option<Vec<[f64; 2]>>,
        #[serde(default)]
        file: Option<String>,
    },
    Discrete {
        points: Vec<[f64; 2]>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    first: Spanned<[String; 2]>,
    second: Spanned<[String; 2]>,
    density: Spanned<RawDensity>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBath {
    #[serde(default)]
    weights: Option<Spanned<BTreeMap<String, f64>>>,
    #[serde(default)]
    density: Option<Spanned<RawDensity>>,
    #[serde(default)]
    pairs: Vec<RawPair>,
}

/// A loaded configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub model: VibronicModel,
    pub bath: Option<Bath>,
}

/// 1-based line and column of a byte offset.
pub fn line_column(src: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(src.len());
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let start = before.rfind('\n').map_or(0, |i| i + 1);
    (line, before[start..].chars().count() + 1)
}

fn at(src: &str, span: Range<usize>, msg: impl Into<String>) -> Error {
    let (line, column) = line_column(src, span.start);
    Error::Parse {
        line,
        column,
        msg: msg.into(),
    }
}

impl Config {
    pub fn from_path(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::Model(format!("cannot read {}: {e}", path.display())))?;
        Self::parse_with_base(&src, path.parent())
    }

    pub fn parse(src: &str) -> Result<Self> {
        Self::parse_with_base(src, None)
    }

    /// Parses a config; relative table files resolve against `base`.
    pub fn parse_with_base(src: &str, base: Option<&Path>) -> Result<Self> {
        let raw: RawConfig = toml::from_str(src).map_err(|e| {
            let span = e.span().unwrap_or(0..0);
            at(src, span, e.message().trim().to_string())
        })?;
        let mut levels = Vec::with_capacity(raw.levels.len());
        let mut index = HashMap::new();
        for l in &raw.levels {
            if let Some(k) = &l.kappa {
                return Err(at(
                    src,
                    k.span(),
                    "relaxation rates are shared by all levels; set `kappa` at top level",
                ));
            }
            let manifold = match l.manifold.get_ref().as_str() {
                "ground" => Manifold::Ground,
                "single" => Manifold::Single,
                "double" => Manifold::Double,
                other => {
                    return Err(at(
                        src,
                        l.manifold.span(),
                        format!("unknown manifold '{other}', expected ground, single or double"),
                    ))
                }
            };
            let name = l.name.get_ref().clone();
            if index.insert(name.clone(), levels.len()).is_some() {
                return Err(at(
                    src,
                    l.name.span(),
                    format!("duplicate level name '{name}'"),
                ));
            }
            levels.push(Level {
                name,
                energy: *l.energy.get_ref(),
                manifold,
            });
        }
        if levels.is_empty() {
            return Err(at(src, 0..0, "at least one level is required"));
        }
        if levels[0].manifold != Manifold::Ground {
            return Err(at(
                src,
                raw.levels[0].manifold.span(),
                "the first level must be the ground level",
            ));
        }
        if levels[0].energy != 0.0 {
            return Err(at(
                src,
                raw.levels[0].energy.span(),
                "ground energy must be 0",
            ));
        }
        let lookup = |name: &str, span: Range<usize>| -> Result<usize> {
            index
                .get(name)
                .copied()
                .ok_or_else(|| at(src, span, format!("unknown level '{name}'")))
        };

        let mut modes = Vec::with_capacity(raw.modes.len());
        for m in &raw.modes {
            let mut z = vec![0.0; levels.len()];
            for (name, &d) in m.displacements.get_ref() {
                let i = lookup(name, m.displacements.span())?;
                if i == 0 && d != 0.0 {
                    return Err(at(
                        src,
                        m.displacements.span(),
                        "the ground level cannot be displaced",
                    ));
                }
                z[i] = d;
            }
            let frequency = *m.frequency.get_ref();
            if !(frequency > 0.0 && frequency.is_finite()) {
                return Err(at(
                    src,
                    m.frequency.span(),
                    "mode frequency must be positive",
                ));
            }
            modes.push(Mode {
                frequency,
                displacements: z,
            });
        }

        let dipoles = match &raw.dipoles {
            None => None,
            Some(list) => {
                let n = levels.len();
                let mut d = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
                for p in list {
                    let [a, b] = p.between.get_ref();
                    let (a, b) = (lookup(a, p.between.span())?, lookup(b, p.between.span())?);
                    let v = match p.value {
                        RawComplex::Real(x) => Complex64::new(x, 0.0),
                        RawComplex::Pair([re, im]) => Complex64::new(re, im),
                    };
                    d[(b, a)] = v;
                    d[(a, b)] = v.conj();
                }
                Some(d)
            }
        };

        let kappa = raw.kappa.as_ref().map_or(0.0, |k| *k.get_ref());
        if let Some(k) = &raw.kappa {
            if !(kappa >= 0.0 && kappa.is_finite()) {
                return Err(at(src, k.span(), "kappa must be nonnegative"));
            }
        }
        let gamma = raw.gamma.as_ref().map_or(0.0, |g| *g.get_ref());
        if let Some(g) = &raw.gamma {
            if !(gamma >= 0.0 && gamma.is_finite()) {
                return Err(at(src, g.span(), "gamma must be nonnegative"));
            }
        }
        let model = VibronicModel::new(levels, modes, dipoles, kappa, gamma)
            .map_err(|e| at(src, 0..0, e.to_string()))?;

        let bath = match &raw.bath {
            None => None,
            Some(b) => Some(build_bath(src, b, &index, base)?),
        };
        Ok(Config { model, bath })
    }
}

fn density(src: &str, d: &Spanned<RawDensity>, base: Option<&Path>) -> Result<SpectralDensity> {
    let sd = match d.get_ref() {
        RawDensity::Ohmic { eta, cutoff } => SpectralDensity::Ohmic {
            eta: *eta,
            cutoff: *cutoff,
        },
        RawDensity::PowerLaw { eta, power, cutoff } => SpectralDensity::PowerLaw {
            eta: *eta,
            power: *power,
            cutoff: *cutoff,
        },
        RawDensity::Discrete { points } => {
            SpectralDensity::Discrete(points.iter().map(|p| (p[0], p[1])).collect())
        }
        RawDensity::Table { points, file } => match (points, file) {
            (Some(p), None) => SpectralDensity::Tabulated(p.iter().map(|p| (p[0], p[1])).collect()),
            (None, Some(f)) => {
                let path = base.map_or_else(|| Path::new(f).to_path_buf(), |b| b.join(f));
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    at(
                        src,
                        d.span(),
                        format!("cannot read {}: {e}", path.display()),
                    )
                })?;
                parse_density_table(&text).map_err(|e| match e {
                    Error::Parse { line, column, msg } => Error::Parse {
                        line,
                        column,
                        msg: format!("{}: {msg}", path.display()),
                    },
                    other => other,
                })?
            }
            _ => {
                return Err(at(
                    src,
                    d.span(),
                    "a table density needs exactly one of `points` or `file`",
                ))
            }
        },
    };
    sd.validate()
        .map_err(|e| at(src, d.span(), e.to_string()))?;
    Ok(sd)
}

fn build_bath(
    src: &str,
    b: &RawBath,
    index: &HashMap<String, usize>,
    base: Option<&Path>,
) -> Result<Bath> {
    let lookup = |name: &str, span: Range<usize>| -> Result<usize> {
        index
            .get(name)
            .copied()
            .ok_or_else(|| at(src, span, format!("unknown level '{name}'")))
    };
    match (&b.weights, &b.density, b.pairs.is_empty()) {
        (Some(w), Some(d), true) => {
            let mut weights = vec![0.0; index.len()];
            for (name, &x) in w.get_ref() {
                weights[lookup(name, w.span())?] = x;
            }
            Ok(Bath::Scaled {
                shape: density(src, d, base)?,
                weights,
            })
        }
        (None, None, false) => {
            let mut map = BTreeMap::new();
            for p in &b.pairs {
                let tr = |s: &Spanned<[String; 2]>| -> Result<(usize, usize)> {
                    let [a, c] = s.get_ref();
                    Ok((lookup(a, s.span())?, lookup(c, s.span())?))
                };
                let Some((key, sign)) = crate::bath::canonical_pair(tr(&p.first)?, tr(&p.second)?)
                else {
                    return Err(at(
                        src,
                        p.first.span(),
                        "a transition must join two different levels",
                    ));
                };
                if sign < 0.0 {
                    return Err(at(
                        src,
                        p.first.span(),
                        "write transitions low-to-high (or flip both) so the density keeps its sign",
                    ));
                }
                if map.insert(key, density(src, &p.density, base)?).is_some() {
                    return Err(at(src, p.first.span(), "duplicate density for this pair"));
                }
            }
            Ok(Bath::Pairs(map))
        }
        _ => Err(at(
            src,
            0..0,
            "[bath] takes either `weights` with `density`, or a list of `pairs`",
        )),
    }
}
