//! Electronic levels, vibrational modes and dipoles of a displaced-oscillator system.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Which excitation manifold a level belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Manifold {
    Ground,
    Single,
    Double,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    pub name: String,
    /// Energy in units of the first mode frequency.
    pub energy: f64,
    pub manifold: Manifold,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mode {
    pub frequency: f64,
    /// One displacement per level; entry 0 is the ground level and must vanish.
    pub displacements: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VibronicModel {
    pub levels: Vec<Level>,
    pub modes: Vec<Mode>,
    /// `dipoles[(a, b)]` couples level `b` to level `a`.
    pub dipoles: DMatrix<Complex64>,
    pub kappa: f64,
    pub gamma: f64,
}

impl VibronicModel {
    /// Builds and validates a model. Missing dipoles default to unit coupling
    /// on ground-single and single-double transitions.
    pub fn new(
        levels: Vec<Level>,
        modes: Vec<Mode>,
        dipoles: Option<DMatrix<Complex64>>,
        kappa: f64,
        gamma: f64,
    ) -> Result<Self> {
        let dipoles = match dipoles {
            Some(d) => d,
            None => default_dipoles(&levels),
        };
        let model = Self {
            levels,
            modes,
            dipoles,
            kappa,
            gamma,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.levels.len();
        if n == 0 {
            return Err(Error::Model("at least one level is required".into()));
        }
        let g = &self.levels[0];
        if g.energy != 0.0 {
            return Err(Error::Model("ground level energy must be exactly 0".into()));
        }
        if g.manifold != Manifold::Ground {
            return Err(Error::Model("level 0 must be tagged ground".into()));
        }
        if self.levels[1..]
            .iter()
            .any(|l| l.manifold == Manifold::Ground)
        {
            return Err(Error::Model("only level 0 may be tagged ground".into()));
        }
        for (i, l) in self.levels.iter().enumerate() {
            if !l.energy.is_finite() {
                return Err(Error::Model(format!("level {i} has non-finite energy")));
            }
            if self.levels[..i].iter().any(|o| o.name == l.name) {
                return Err(Error::Model(format!("duplicate level name '{}'", l.name)));
            }
        }
        if self.modes.is_empty() {
            return Err(Error::Model("at least one mode is required".into()));
        }
        for (x, m) in self.modes.iter().enumerate() {
            if !(m.frequency > 0.0 && m.frequency.is_finite()) {
                return Err(Error::Model(format!("mode {x} frequency must be positive")));
            }
            if m.displacements.len() != n {
                return Err(Error::Model(format!(
                    "mode {x} has {} displacements for {n} levels",
                    m.displacements.len()
                )));
            }
            if m.displacements[0] != 0.0 {
                return Err(Error::Model(format!(
                    "mode {x}: ground displacement must be exactly 0"
                )));
            }
            if m.displacements.iter().any(|z| !z.is_finite()) {
                return Err(Error::Model(format!(
                    "mode {x} has non-finite displacement"
                )));
            }
        }
        if self.dipoles.nrows() != n || self.dipoles.ncols() != n {
            return Err(Error::Model(format!("dipole matrix must be {n}x{n}")));
        }
        if !(self.kappa >= 0.0 && self.kappa.is_finite()) {
            return Err(Error::Model("kappa must be nonnegative".into()));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(Error::Model("gamma must be nonnegative".into()));
        }
        Ok(())
    }

    pub fn n_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn energy(&self, level: usize) -> f64 {
        self.levels[level].energy
    }

    pub fn mu(&self, to: usize, from: usize) -> Complex64 {
        self.dipoles[(to, from)]
    }

    /// Displacements of every level for one mode.
    pub fn z(&self, mode: usize) -> &[f64] {
        &self.modes[mode].displacements
    }

    pub fn omega(&self, mode: usize) -> f64 {
        self.modes[mode].frequency
    }

    pub fn manifold(&self, m: Manifold) -> Vec<usize> {
        (0..self.levels.len())
            .filter(|&i| self.levels[i].manifold == m)
            .collect()
    }

    pub fn singles(&self) -> Vec<usize> {
        self.manifold(Manifold::Single)
    }

    pub fn doubles(&self) -> Vec<usize> {
        self.manifold(Manifold::Double)
    }

    pub fn level_index(&self, name: &str) -> Option<usize> {
        self.levels.iter().position(|l| l.name == name)
    }

    pub fn check_level(&self, level: usize) -> Result<()> {
        if level < self.levels.len() {
            Ok(())
        } else {
            Err(Error::LevelIndex(level))
        }
    }

    /// Single-mode model with unit frequency and default dipoles.
    ///
    /// `spec` lists `(energy, manifold, z)` for the excited levels; the ground
    /// level is prepended.
    pub fn simple(spec: &[(f64, Manifold, f64)]) -> Self {
        let mut levels = vec![Level {
            name: "g".into(),
            energy: 0.0,
            manifold: Manifold::Ground,
        }];
        let mut z = vec![0.0];
        for (i, &(e, m, d)) in spec.iter().enumerate() {
            levels.push(Level {
                name: format!("e{}", i + 1),
                energy: e,
                manifold: m,
            });
            z.push(d);
        }
        Self::new(
            levels,
            vec![Mode {
                frequency: 1.0,
                displacements: z,
            }],
            None,
            0.0,
            0.0,
        )
        .expect("simple model is valid")
    }

    /// Two-level system with displacement `z1`.
    pub fn two_level(e1: f64, z1: f64) -> Self {
        Self::simple(&[(e1, Manifold::Single, z1)])
    }

    /// Ground level plus two singly excited levels.
    pub fn v_scheme(e: [f64; 2], z: [f64; 2]) -> Self {
        Self::simple(&[
            (e[0], Manifold::Single, z[0]),
            (e[1], Manifold::Single, z[1]),
        ])
    }

    /// Ladder of ground, one single and one double level.
    pub fn xi_scheme(e: [f64; 2], z: [f64; 2]) -> Self {
        Self::simple(&[
            (e[0], Manifold::Single, z[0]),
            (e[1], Manifold::Double, z[1]),
        ])
    }
}

pub fn default_dipoles(levels: &[Level]) -> DMatrix<Complex64> {
    let n = levels.len();
    DMatrix::from_fn(n, n, |a, b| {
        use Manifold::*;
        match (levels[a].manifold, levels[b].manifold) {
            (Ground, Single) | (Single, Ground) | (Single, Double) | (Double, Single) => {
                Complex64::new(1.0, 0.0)
            }
            _ => Complex64::new(0.0, 0.0),
        }
    })
}
