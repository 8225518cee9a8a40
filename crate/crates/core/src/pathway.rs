//! Double-sided pathways and the eight standard third-order contributions.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::VibronicModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Ket,
    Bra,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Ket => "ket",
            Side::Bra => "bra",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interaction {
    pub side: Side,
    pub from: usize,
    pub to: usize,
}

impl Interaction {
    pub fn ket(from: usize, to: usize) -> Self {
        Self {
            side: Side::Ket,
            from,
            to,
        }
    }

    pub fn bra(from: usize, to: usize) -> Self {
        Self {
            side: Side::Bra,
            from,
            to,
        }
    }
}

/// A validated sequence of field interactions acting on `|0><0|`.
/// Interaction `i` opens waiting time `t_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pathway {
    interactions: Vec<Interaction>,
}

impl Pathway {
    pub fn new(interactions: Vec<Interaction>) -> Result<Self> {
        if interactions.is_empty() {
            return Err(Error::Pathway(
                "a pathway needs at least one interaction".into(),
            ));
        }
        let (mut ket, mut bra) = (0usize, 0usize);
        for (i, it) in interactions.iter().enumerate() {
            let cur = match it.side {
                Side::Ket => &mut ket,
                Side::Bra => &mut bra,
            };
            if it.from != *cur {
                return Err(Error::Pathway(format!(
                    "interaction {} departs {} level {} but the {} is in level {}",
                    i + 1,
                    it.side,
                    it.from,
                    it.side,
                    cur
                )));
            }
            if it.from == it.to {
                return Err(Error::Pathway(format!(
                    "interaction {} does not change level",
                    i + 1
                )));
            }
            *cur = it.to;
        }
        Ok(Self { interactions })
    }

    pub fn interactions(&self) -> &[Interaction] {
        &self.interactions
    }

    pub fn order(&self) -> usize {
        self.interactions.len()
    }

    /// Ket level during each waiting time.
    pub fn ket_levels(&self) -> Vec<usize> {
        self.side_levels(Side::Ket)
    }

    /// Bra level during each waiting time.
    pub fn bra_levels(&self) -> Vec<usize> {
        self.side_levels(Side::Bra)
    }

    fn side_levels(&self, side: Side) -> Vec<usize> {
        let mut cur = 0;
        self.interactions
            .iter()
            .map(|it| {
                if it.side == side {
                    cur = it.to;
                }
                cur
            })
            .collect()
    }

    /// Final `(bra, ket)` levels, the coherence that radiates the signal.
    pub fn detection(&self) -> (usize, usize) {
        let m = self.order() - 1;
        (self.bra_levels()[m], self.ket_levels()[m])
    }

    pub fn bra_count(&self) -> usize {
        self.interactions
            .iter()
            .filter(|i| i.side == Side::Bra)
            .count()
    }

    pub fn max_level(&self) -> usize {
        self.interactions
            .iter()
            .map(|i| i.from.max(i.to))
            .max()
            .unwrap_or(0)
    }

    pub fn check_against(&self, model: &VibronicModel) -> Result<()> {
        let top = self.max_level();
        if top >= model.n_levels() {
            return Err(Error::Pathway(format!(
                "pathway visits level {top} but the model has {} levels",
                model.n_levels()
            )));
        }
        Ok(())
    }

    /// `exp(-i sum_i (e_ket_i - e_bra_i) t_i)`.
    pub fn electronic_phase(&self, model: &VibronicModel, times: &[f64]) -> Complex64 {
        let (k, b) = (self.ket_levels(), self.bra_levels());
        let arg: f64 = times
            .iter()
            .enumerate()
            .map(|(i, t)| (model.energy(k[i]) - model.energy(b[i])) * t)
            .sum();
        Complex64::from_polar(1.0, -arg)
    }

    /// Dipole and sign constant built from the interactions: `i^M (-1)^{n_bra}`
    /// times the ket dipoles, the bra dipoles and the emission dipole.
    pub fn dipole_constant(&self, model: &VibronicModel) -> Complex64 {
        let mut c = Complex64::i().powu(self.order() as u32);
        if self.bra_count() % 2 == 1 {
            c = -c;
        }
        for it in &self.interactions {
            c *= match it.side {
                Side::Ket => model.mu(it.to, it.from),
                Side::Bra => model.mu(it.from, it.to),
            };
        }
        let (b, k) = self.detection();
        c * model.mu(b, k)
    }

    pub fn electronic_prefactor(&self, model: &VibronicModel, times: &[f64]) -> Complex64 {
        self.dipole_constant(model) * self.electronic_phase(model, times)
    }
}

impl fmt::Display for Pathway {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for it in &self.interactions {
            writeln!(f, "{} {}->{}", it.side, it.from, it.to)?;
        }
        Ok(())
    }
}

/// The eight third-order contributions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// Stimulated emission, rephasing.
    SeR = 1,
    /// Ground-state bleaching, rephasing.
    GsbR = 2,
    /// Excited-state absorption, rephasing.
    EsaR = 3,
    /// Stimulated emission, non-rephasing.
    SeNr = 4,
    /// Ground-state bleaching, non-rephasing.
    GsbNr = 5,
    /// Excited-state absorption, non-rephasing.
    EsaNr = 6,
    /// Double-quantum coherence, first component.
    Dqc1 = 7,
    /// Double-quantum coherence, second component.
    Dqc2 = 8,
}

impl Kind {
    pub const ALL: [Kind; 8] = [
        Kind::SeR,
        Kind::GsbR,
        Kind::EsaR,
        Kind::SeNr,
        Kind::GsbNr,
        Kind::EsaNr,
        Kind::Dqc1,
        Kind::Dqc2,
    ];

    pub fn from_number(n: u8) -> Result<Self> {
        Kind::ALL
            .get((n as usize).wrapping_sub(1))
            .copied()
            .ok_or(Error::Kind(n))
    }

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn preset(self) -> &'static str {
        match self {
            Kind::SeR => "se-r",
            Kind::GsbR => "gsb-r",
            Kind::EsaR => "esa-r",
            Kind::SeNr => "se-nr",
            Kind::GsbNr => "gsb-nr",
            Kind::EsaNr => "esa-nr",
            Kind::Dqc1 => "dqc-1",
            Kind::Dqc2 => "dqc-2",
        }
    }

    pub fn from_preset(name: &str) -> Option<Self> {
        Kind::ALL.iter().copied().find(|k| k.preset() == name)
    }

    pub fn needs_double(self) -> bool {
        matches!(self, Kind::EsaR | Kind::EsaNr | Kind::Dqc1 | Kind::Dqc2)
    }

    /// Interactions of this kind for levels `j`, `k` and (when used) `l`.
    pub fn interactions(self, j: usize, k: usize, l: usize) -> [Interaction; 3] {
        use Interaction as I;
        match self {
            Kind::SeR => [I::bra(0, j), I::ket(0, k), I::bra(j, 0)],
            Kind::GsbR => [I::bra(0, j), I::bra(j, 0), I::ket(0, k)],
            Kind::EsaR => [I::bra(0, j), I::ket(0, k), I::ket(k, l)],
            Kind::SeNr => [I::ket(0, j), I::bra(0, k), I::bra(k, 0)],
            Kind::GsbNr => [I::ket(0, j), I::ket(j, 0), I::ket(0, k)],
            Kind::EsaNr => [I::ket(0, j), I::bra(0, k), I::ket(j, l)],
            Kind::Dqc1 => [I::ket(0, j), I::ket(j, l), I::bra(0, k)],
            Kind::Dqc2 => [I::ket(0, j), I::ket(j, l), I::ket(l, k)],
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.preset())
    }
}

/// One third-order pathway: a kind with its level labels. `l` is 0 for kinds
/// that do not reach the doubly excited manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Contribution {
    pub kind: Kind,
    pub j: usize,
    pub k: usize,
    pub l: usize,
}

impl Contribution {
    pub fn new(kind: Kind, j: usize, k: usize, l: usize) -> Self {
        Self {
            kind,
            j,
            k,
            l: if kind.needs_double() { l } else { 0 },
        }
    }

    pub fn pathway(&self) -> Pathway {
        Pathway::new(self.kind.interactions(self.j, self.k, self.l).to_vec())
            .expect("third-order kinds are consistent")
    }

    pub fn check_against(&self, model: &VibronicModel) -> Result<()> {
        for &x in &[self.j, self.k, self.l] {
            model.check_level(x)?;
        }
        if self.j == 0 || self.k == 0 || (self.kind.needs_double() && self.l == 0) {
            return Err(Error::Pathway(
                "excited labels must differ from the ground level".into(),
            ));
        }
        if self.kind.needs_double() && (self.l == self.j || self.l == self.k) {
            return Err(Error::Pathway("l must differ from j and k".into()));
        }
        Ok(())
    }

    /// Dipole constant for this kind.
    pub fn constant(&self, model: &VibronicModel) -> Complex64 {
        let (j, k, l) = (self.j, self.k, self.l);
        let i3 = Complex64::new(0.0, -1.0);
        let mu = |a, b| model.mu(a, b);
        match self.kind {
            Kind::SeR | Kind::GsbR | Kind::SeNr | Kind::GsbNr => {
                i3 * mu(0, j).norm_sqr() * mu(0, k).norm_sqr()
            }
            Kind::EsaR => -i3 * mu(0, j).norm_sqr() * mu(k, 0) * mu(l, k),
            // Kind 7 uses the same dipole combination as kind 6.
            Kind::EsaNr | Kind::Dqc1 => -i3 * mu(0, k).norm_sqr() * mu(j, 0) * mu(l, j),
            Kind::Dqc2 => i3 * mu(j, 0) * mu(l, j) * mu(l, k) * mu(k, 0),
        }
    }

    pub fn electronic_prefactor(&self, model: &VibronicModel, times: [f64; 3]) -> Complex64 {
        self.constant(model) * self.pathway().electronic_phase(model, &times)
    }
}

/// All pathways of one kind over the model's manifolds.
pub fn enumerate_third_order(model: &VibronicModel, kind: Kind) -> Result<Vec<Contribution>> {
    let singles = model.singles();
    let doubles = model.doubles();
    if kind.needs_double() && doubles.is_empty() {
        return Err(Error::ManifoldRequired(kind.number()));
    }
    let mut out = Vec::new();
    for &j in &singles {
        for &k in &singles {
            if kind.needs_double() {
                for &l in &doubles {
                    out.push(Contribution::new(kind, j, k, l));
                }
            } else {
                out.push(Contribution::new(kind, j, k, 0));
            }
        }
    }
    Ok(out)
}
