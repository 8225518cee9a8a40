//! Vibrational relaxation through a damped oscillator frequency `w - i k/2`.
//!
//! The kinematic path (relaxed [`evolve`](crate::coherent::evolve)) is the
//! reference. The per-kind tables below substitute complex phases into the
//! third-order term tables and multiply by fixed decay prefactors; they are
//! kept as a separate layer so the two can be compared.

use num_complex::Complex64;

use crate::coherent::{log_decay, run_pathway, Ladder, Oscillator};
use crate::error::{Error, Result};
use crate::model::VibronicModel;
use crate::pathway::{Contribution, Kind, Pathway};
use crate::third_order::{h, terms, LambdaIndex};

/// How a phase enters a relaxed table term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Substitution {
    /// `Lambda -> (w + i k/2) sum p t`.
    Tilde,
    /// `Lambda -> (w - i k/2) sum p t`.
    TildeConj,
    /// Left undamped.
    Plain,
}

/// Phase `p . t` at complex frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxedLambda {
    pub index: LambdaIndex,
    pub omega: f64,
    pub kappa: f64,
    pub substitution: Substitution,
}

impl RelaxedLambda {
    pub fn value(&self, times: [f64; 3]) -> Complex64 {
        let s = self.index.lambda(times, 1.0);
        let w = match self.substitution {
            Substitution::Tilde => Complex64::new(self.omega, 0.5 * self.kappa),
            Substitution::TildeConj => Complex64::new(self.omega, -0.5 * self.kappa),
            Substitution::Plain => Complex64::new(self.omega, 0.0),
        };
        w * s
    }
}

/// Substitution applied to each of the six table terms of a kind.
pub fn substitutions(kind: Kind) -> [Substitution; 6] {
    let ts = terms(&Contribution::new(kind, 1, 1, 2), &[0.0, 1.0, 1.0]);
    let mut out = [Substitution::Tilde; 6];
    for (o, t) in out.iter_mut().zip(ts.iter()) {
        *o = if t.sign > 0 {
            Substitution::Tilde
        } else {
            Substitution::TildeConj
        };
        if kind == Kind::GsbNr && t.index == LambdaIndex::new(1, 1, 1) {
            *o = Substitution::Plain;
        }
    }
    out
}

/// `f_x(t, a) = exp[-|a + z_x|^2 (1 - e^{-k t}) / 2]`.
pub fn f_factor(alpha: Complex64, z: f64, t: f64, kappa: f64) -> f64 {
    log_decay(alpha, z, t, kappa).exp()
}

/// One factor of a tabulated decay prefactor: displacement slot
/// (0 ground, 1 `j`, 2 `k`, 3 `l`), waiting-time window, ladder side and
/// ladder index of the starting amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FSpec {
    pub slot: usize,
    pub times: &'static [usize],
    pub bra: bool,
    pub step: usize,
}

const fn fs(slot: usize, times: &'static [usize], bra: bool, step: usize) -> FSpec {
    FSpec {
        slot,
        times,
        bra,
        step,
    }
}

/// Decay prefactor of each kind as tabulated.
pub fn f_table(kind: Kind) -> &'static [FSpec] {
    const F1: [FSpec; 3] = [
        fs(2, &[2, 3], false, 1),
        fs(1, &[1, 2], true, 0),
        fs(0, &[3], false, 2),
    ];
    const F2: [FSpec; 3] = [
        fs(2, &[3], false, 2),
        fs(1, &[1], true, 0),
        fs(0, &[2, 3], true, 1),
    ];
    const F3: [FSpec; 3] = [
        fs(2, &[2], false, 1),
        fs(3, &[3], false, 2),
        fs(1, &[1, 2, 3], true, 0),
    ];
    const F4: [FSpec; 2] = [fs(1, &[1, 2, 3], false, 0), fs(2, &[2], true, 1)];
    const F5: [FSpec; 3] = [
        fs(1, &[1], false, 0),
        fs(0, &[2], false, 1),
        fs(2, &[3], false, 2),
    ];
    const F6: [FSpec; 3] = [
        fs(1, &[1, 2], false, 0),
        fs(3, &[3], false, 2),
        fs(2, &[2, 3], true, 1),
    ];
    const F7: [FSpec; 3] = [
        fs(1, &[1], false, 0),
        fs(3, &[2, 2], false, 1),
        fs(2, &[3], true, 2),
    ];
    const F8: [FSpec; 3] = [
        fs(1, &[1], false, 0),
        fs(3, &[2], false, 1),
        fs(2, &[3], true, 2),
    ];
    match kind {
        Kind::SeR => &F1,
        Kind::GsbR => &F2,
        Kind::EsaR => &F3,
        Kind::SeNr => &F4,
        Kind::GsbNr => &F5,
        Kind::EsaNr => &F6,
        Kind::Dqc1 => &F7,
        Kind::Dqc2 => &F8,
    }
}

fn slot_levels(c: &Contribution) -> [usize; 4] {
    [0, c.j, c.k, if c.kind.needs_double() { c.l } else { 0 }]
}

/// Tabulated decay prefactor evaluated on the relaxed ladder.
pub fn table_f(c: &Contribution, ladder: &Ladder, z: &[f64], times: [f64; 3], kappa: f64) -> f64 {
    let lv = slot_levels(c);
    f_table(c.kind)
        .iter()
        .map(|s| {
            let a = if s.bra {
                ladder.bra[s.step].alpha
            } else {
                ladder.ket[s.step].alpha
            };
            let t: f64 = s.times.iter().map(|&i| times[i - 1]).sum();
            f_factor(a, z[lv[s.slot]], t, kappa)
        })
        .product()
}

/// Decay prefactor accumulated along both sides of the ladder.
pub fn ladder_f(ladder: &Ladder) -> f64 {
    let (k, b) = ladder.final_states();
    (k.log_magnitude + b.log_magnitude).exp()
}

fn check_kappa(kappa: f64) -> Result<()> {
    if !kappa.is_finite() || kappa < 0.0 {
        return Err(Error::Model(format!(
            "relaxation rate must be finite and nonnegative, got {kappa}"
        )));
    }
    Ok(())
}

/// Relaxed third-order response of one mode by propagation.
pub fn relaxed_r_v3(
    c: &Contribution,
    z: &[f64],
    osc: Oscillator,
    times: [f64; 3],
) -> Result<Complex64> {
    relaxed_general(&c.pathway(), z, osc, &times)
}

/// Relaxed response of any pathway for one mode.
pub fn relaxed_general(
    pathway: &Pathway,
    z: &[f64],
    osc: Oscillator,
    times: &[f64],
) -> Result<Complex64> {
    check_kappa(osc.kappa)?;
    Ok(run_pathway(pathway, z, osc, times, Complex64::new(0.0, 0.0))?.response())
}

/// Product over the model's modes, all sharing the model's rate.
pub fn relaxed_multimode(
    model: &VibronicModel,
    pathway: &Pathway,
    times: &[f64],
) -> Result<Complex64> {
    pathway.check_against(model)?;
    let mut r = Complex64::new(1.0, 0.0);
    for x in 0..model.modes.len() {
        r *= relaxed_general(
            pathway,
            model.z(x),
            Oscillator::new(model.omega(x), model.kappa),
            times,
        )?;
    }
    Ok(r)
}

/// Relaxed third-order response from the substituted term table times its
/// tabulated decay prefactor.
pub fn table_r_v3(
    c: &Contribution,
    z: &[f64],
    osc: Oscillator,
    times: [f64; 3],
) -> Result<Complex64> {
    check_kappa(osc.kappa)?;
    let ladder = run_pathway(&c.pathway(), z, osc, &times, Complex64::new(0.0, 0.0))?;
    let mut f = Complex64::new(-h(c, z), 0.0);
    for (t, s) in terms(c, z).iter().zip(substitutions(c.kind)) {
        let lam = RelaxedLambda {
            index: t.index,
            omega: osc.omega,
            kappa: osc.kappa,
            substitution: s,
        };
        f += t.coeff * (Complex64::new(0.0, t.sign as f64) * lam.value(times)).exp();
    }
    Ok(table_f(c, &ladder, z, times, osc.kappa) * f.exp())
}
